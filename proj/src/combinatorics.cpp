#include "tightpow/combinatorics.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace tightpow {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > std::numeric_limits<std::uint64_t>::max())
            throw std::overflow_error("binomial(" + std::to_string(n) + ", " +
                                      std::to_string(k) + ") exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(r);
}

double log_binomial(double n, double k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}

double log_falling_factorial(std::uint64_t n, std::uint64_t b) {
    if (b > n) return -std::numeric_limits<double>::infinity();
    // Direct summation is exact enough for small b and avoids lgamma
    // cancellation when n is huge.
    if (b <= 64) {
        double s = 0.0;
        for (std::uint64_t i = 0; i < b; ++i) s += std::log(static_cast<double>(n - i));
        return s;
    }
    return std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(n - b) + 1);
}

BinomialTable::BinomialTable(std::uint32_t n, int k) : n_(n), k_(k) {
    if (k < 0 || k > kMaxUniformity) throw std::invalid_argument("uniformity out of range");
    table_.assign(static_cast<std::size_t>(n + 1) * (k + 1), 0);
    for (std::uint32_t a = 0; a <= n; ++a) {
        table_[static_cast<std::size_t>(a) * (k + 1)] = 1;
        for (int j = 1; j <= k; ++j) {
            if (a == 0) continue;
            std::uint64_t x = (*this)(a - 1, j - 1);
            std::uint64_t y = (*this)(a - 1, j);
            if (x > std::numeric_limits<std::uint64_t>::max() - y)
                throw std::overflow_error("colex table overflows 64 bits");
            table_[static_cast<std::size_t>(a) * (k + 1) + j] = x + y;
        }
    }
}

void BinomialTable::unrank(std::uint64_t rank, Vertex* out) const {
    // Greedy from the top coordinate: a_i is the largest c with C(c, i) <= rank.
    std::uint32_t hi = n_;
    for (int i = k_; i >= 1; --i) {
        std::uint32_t lo = static_cast<std::uint32_t>(i - 1);
        std::uint32_t top = hi;  // exclusive
        while (top - lo > 1) {
            std::uint32_t mid = lo + (top - lo) / 2;
            if ((*this)(mid, i) <= rank)
                lo = mid;
            else
                top = mid;
        }
        out[i - 1] = lo;
        rank -= (*this)(lo, i);
        hi = lo;
    }
}

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g == 0) g = 1;
    num_ = num / g;
    den_ = den / g;
}

std::ostream& operator<<(std::ostream& os, const Rational& q) {
    os << q.num_;
    if (q.den_ != 1) os << '/' << q.den_;
    return os;
}

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }

}  // namespace tightpow
