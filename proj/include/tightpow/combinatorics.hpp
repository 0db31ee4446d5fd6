#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

namespace tightpow {

using Vertex = std::uint32_t;

/// Largest uniformity supported by the fixed-size scratch buffers.
inline constexpr int kMaxUniformity = 8;

/// C(n, k) with overflow detection. Returns 0 for k > n.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// ln C(n, k) via lgamma; usable far beyond the 64-bit range.
double log_binomial(double n, double k);

/// ln of the falling factorial (n)_b = n (n-1) ... (n-b+1).
double log_falling_factorial(std::uint64_t n, std::uint64_t b);

/// Calls f(indices) for every b-subset of {0..m-1}, indices ascending.
/// Stops early when f returns false.
template <typename F>
bool for_each_combination(int m, int b, F&& f) {
    if (b < 0 || b > m) return true;
    std::vector<int> idx(b);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        if (!f(std::span<const int>(idx))) return false;
        int i = b - 1;
        while (i >= 0 && idx[i] == m - b + i) --i;
        if (i < 0) return true;
        ++idx[i];
        for (int j = i + 1; j < b; ++j) idx[j] = idx[j - 1] + 1;
    }
}

/// Pascal table of C(a, j) for 0 <= a <= n, 0 <= j <= k; the backbone of
/// colex ranking. Entries that overflow 64 bits are a construction error.
class BinomialTable {
public:
    BinomialTable() = default;
    BinomialTable(std::uint32_t n, int k);

    std::uint64_t operator()(std::uint32_t a, int j) const {
        return table_[static_cast<std::size_t>(a) * (k_ + 1) + j];
    }
    std::uint32_t n() const { return n_; }
    int k() const { return k_; }

    /// Colex rank of a strictly increasing k-tuple: sum_i C(a_i, i+1).
    std::uint64_t rank(const Vertex* sorted) const {
        std::uint64_t r = 0;
        for (int i = 0; i < k_; ++i) r += (*this)(sorted[i], i + 1);
        return r;
    }
    void unrank(std::uint64_t rank, Vertex* out) const;

private:
    std::uint32_t n_ = 0;
    int k_ = 0;
    std::vector<std::uint64_t> table_;
};

/// Exact nonnegative-denominator rational on 64-bit integers.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }
    friend std::ostream& operator<<(std::ostream& os, const Rational& q);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

Rational min(const Rational& a, const Rational& b);

}  // namespace tightpow
