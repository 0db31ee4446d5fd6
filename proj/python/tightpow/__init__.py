"""Python access to the tightpow core library."""

from ._core import (  # noqa: F401
    KGraph,
    __version__,
    complete_host,
    contains_power_hamilton,
    count_labelled_copies,
    first_moment_log,
    g_edges,
    graph_union,
    is_power_hamilton_cycle,
    log_expected_copies,
    log_phi,
    power_cycle,
    power_path,
    read_graph_file,
    run_pipeline,
    sample_gnp,
    split_host,
    split_probability,
    threshold_exponent,
    write_graph_file,
)
