#pragma once

#include "ffprime/rational.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ffprime {

// L(X) = a + bX over Z, primitive (gcd(|a|,|b|) = 1), b != 0.
struct IntegerLinear {
    long long a = 0;
    long long b = 1;

    IntegerLinear(long long a_, long long b_);
    static IntegerLinear parse(std::string_view s);  // "a,b" low-to-high
    long long apply(long long h) const;              // overflow-checked
    std::string to_string() const;
};

// a_i b_j != a_j b_i for all i < j
bool strongly_distinct_int(std::span<const IntegerLinear> ls);

std::uint64_t euler_phi(std::uint64_t b);  // trial-division totient; b >= 1

// #{h in [0,p) : prod_i L_i(h) = 0 mod p}, by enumeration; p must be prime
std::uint64_t nu_p(std::span<const IntegerLinear> ls, std::uint64_t p);

struct SingularSeries {
    Rational exact;      // the truncated product, exact
    double value = 0.0;  // to_double(exact)
};

// prod_{p <= P} (1 - nu(p)/p)/(1 - 1/p)^n, exact rational arithmetic.
// nu(p) = p collapses the whole product to 0. Requires strong distinctness.
SingularSeries singular_series(std::span<const IntegerLinear> ls, std::uint64_t P);

// |b|/phi(|b|): the closed form the n = 1 truncation stabilizes to
Rational singular_series_single(const IntegerLinear& l);

// primality bitmap for [x, x+u] inclusive (bitmap[i] <=> x+i prime);
// segmented sieve, segments sieved in parallel. 2 <= x, 1 <= u <= 10^8.
std::vector<std::uint8_t> sieve_window(std::uint64_t x, std::uint64_t u, int workers = 0);

// single-threaded whole-window reference implementation
std::vector<std::uint8_t> sieve_window_serial(std::uint64_t x, std::uint64_t u);

struct HeuristicReport {
    std::uint64_t x = 0;
    std::uint64_t u = 0;
    std::uint64_t observed = 0;
    double predicted = 0.0;  // S * u / prod_i log(L_i(x))
    double ratio = 0.0;      // observed/predicted; NaN when predicted = 0
    double singular_series_value = 0.0;
    Rational singular_series_exact;
    std::uint64_t truncation_P = 0;
};

// #{h in [x, x+u] : all L_i(h) prime} against the singular-series prediction.
// Each image window is sieved once. b < 0 images must stay > 1 on the window.
HeuristicReport count_window(std::span<const IntegerLinear> ls, std::uint64_t x,
                             std::uint64_t u, std::uint64_t P = 10000, int workers = 0);

// floor(x^eps) by exact integer root extraction; guards u <= 10^8
std::uint64_t window_from_epsilon(std::uint64_t x, const Rational& eps);

}  // namespace ffprime
