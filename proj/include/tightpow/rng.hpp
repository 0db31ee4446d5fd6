#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace tightpow {

/// Philox-4x32-10 block: 128-bit counter and 64-bit key to 128 random bits.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

/// Counter-based stream. Word i of stream (seed, stream_id) is a pure function of
/// (seed, stream_id, i): the key is the seed and the 128-bit Philox counter is
/// (i/2 low, i/2 high, stream low, stream high); each block yields two words, low
/// half first. No state is shared between streams, so trials can run anywhere.
class RngStream {
public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_(stream_id) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_; }
    std::uint64_t position() const { return counter_; }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() { return next_u64(); }

    std::uint64_t next_u64();
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform on (0, 1].
    double uniform_open0() { return 1.0 - uniform(); }
    /// Uniform integer in [0, bound), unbiased (Lemire's method). bound > 0.
    std::uint64_t below(std::uint64_t bound);
    bool bernoulli(double p) { return uniform() < p; }

    /// Independent child stream: same seed, stream id mixed with `tag`.
    RngStream derive(std::uint64_t tag) const;

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
    std::uint64_t spare_ = 0;
    bool has_spare_ = false;
};

/// SplitMix64 finalizer; used to mix stream tags.
std::uint64_t mix64(std::uint64_t x);

/// FNV-1a over the bytes of a string, then mixed.
std::uint64_t hash_string(std::string_view s);

}  // namespace tightpow
