#include "ffprime/int_heuristics.hpp"

#include "ffprime/field.hpp"  // is_prime_u64

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ffprime {

namespace {

constexpr std::uint64_t kWindowLimit = 100'000'000;

long long checked_image(long long a, long long b, std::uint64_t h) {
    __int128 v = static_cast<__int128>(b) * static_cast<__int128>(h) + a;
    if (v > static_cast<__int128>(INT64_MAX) || v < -static_cast<__int128>(INT64_MAX))
        throw std::overflow_error("integer linear image exceeds 63-bit range");
    return static_cast<long long>(v);
}

std::uint64_t isqrt_u64(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
    std::vector<std::uint8_t> is(n + 1, 1);
    is[0] = 0;
    if (n >= 1) is[1] = 0;
    for (std::uint64_t i = 2; i * i <= n; ++i)
        if (is[i])
            for (std::uint64_t j = i * i; j <= n; j += i) is[j] = 0;
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 2; i <= n; ++i)
        if (is[i]) out.push_back(i);
    return out;
}

void check_window_bounds(std::uint64_t x, std::uint64_t u) {
    if (x < 2) throw std::invalid_argument("window: x must be >= 2");
    if (u < 1) throw std::invalid_argument("window: u must be >= 1");
    if (u > kWindowLimit) throw std::invalid_argument("window: u exceeds the 10^8 guard");
    if (x > static_cast<std::uint64_t>(INT64_MAX) - u)
        throw std::invalid_argument("window: x + u exceeds the 63-bit range");
}

void mark_segment(std::vector<std::uint8_t>& bits, std::uint64_t x, std::uint64_t lo,
                  std::uint64_t hi, const std::vector<std::uint64_t>& base) {
    // marks composites among values [lo, hi] (absolute), bits indexed by v - x
    for (std::uint64_t p : base) {
        if (p * p > hi) break;
        std::uint64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
        for (std::uint64_t v = start; v <= hi; v += p) bits[v - x] = 0;
    }
}

}  // namespace

IntegerLinear::IntegerLinear(long long a_, long long b_) : a(a_), b(b_) {
    if (b == 0) throw std::invalid_argument("integer linear: b must be nonzero");
    unsigned long long aa = a < 0 ? 0ull - static_cast<unsigned long long>(a)
                                  : static_cast<unsigned long long>(a);
    unsigned long long bb = b < 0 ? 0ull - static_cast<unsigned long long>(b)
                                  : static_cast<unsigned long long>(b);
    if (std::gcd(aa, bb) != 1)
        throw std::invalid_argument("integer linear: gcd(a,b) = " +
                                    std::to_string(std::gcd(aa, bb)) + ", not primitive");
}

IntegerLinear IntegerLinear::parse(std::string_view s) {
    auto comma = s.find(',');
    if (comma == std::string_view::npos)
        throw std::invalid_argument("integer linear: expected \"a,b\", got '" +
                                    std::string(s) + "'");
    auto parse_ll = [](std::string_view tok) {
        while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        long long v = 0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || p != tok.data() + tok.size())
            throw std::invalid_argument("integer linear: bad integer '" + std::string(tok) +
                                        "'");
        return v;
    };
    return IntegerLinear(parse_ll(s.substr(0, comma)), parse_ll(s.substr(comma + 1)));
}

long long IntegerLinear::apply(long long h) const {
    return checked_image(a, b, static_cast<std::uint64_t>(h));
}

std::string IntegerLinear::to_string() const {
    return std::to_string(a) + "," + std::to_string(b);
}

bool strongly_distinct_int(std::span<const IntegerLinear> ls) {
    for (std::size_t i = 0; i < ls.size(); ++i)
        for (std::size_t j = i + 1; j < ls.size(); ++j) {
            __int128 lhs = static_cast<__int128>(ls[i].a) * ls[j].b;
            __int128 rhs = static_cast<__int128>(ls[j].a) * ls[i].b;
            if (lhs == rhs) return false;
        }
    return true;
}

std::uint64_t euler_phi(std::uint64_t b) {
    if (b < 1) throw std::invalid_argument("euler_phi: b must be >= 1");
    std::uint64_t result = b;
    for (std::uint64_t p = 2; p * p <= b; ++p) {
        if (b % p != 0) continue;
        while (b % p == 0) b /= p;
        result -= result / p;
    }
    if (b > 1) result -= result / b;
    return result;
}

std::uint64_t nu_p(std::span<const IntegerLinear> ls, std::uint64_t p) {
    if (!is_prime_u64(p)) throw std::invalid_argument("nu_p: p must be prime");
    std::uint64_t count = 0;
    for (std::uint64_t h = 0; h < p; ++h) {
        bool zero = false;
        for (const auto& l : ls) {
            __int128 v = (static_cast<__int128>(l.b) * h + l.a) % static_cast<__int128>(p);
            if (v == 0) {
                zero = true;
                break;
            }
        }
        if (zero) ++count;
    }
    return count;
}

namespace {

std::uint64_t pow_mod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = static_cast<std::uint64_t>(static_cast<__int128>(r) * b % m);
        b = static_cast<std::uint64_t>(static_cast<__int128>(b) * b % m);
        e >>= 1;
    }
    return r;
}

// Closed-form nu(p) for linear functions: each L_i with p not dividing b_i
// contributes the single root -a_i / b_i; with p | b_i there is no root since
// gcd(a_i, b_i) = 1. Equals the enumeration in nu_p (pinned by tests), but
// costs O(n log p) instead of O(n p).
std::uint64_t nu_p_linear(std::span<const IntegerLinear> ls, std::uint64_t p) {
    std::vector<std::uint64_t> roots;
    roots.reserve(ls.size());
    for (const auto& l : ls) {
        auto bm = static_cast<std::uint64_t>(((l.b % static_cast<long long>(p)) + p) % p);
        if (bm == 0) continue;
        auto am = static_cast<std::uint64_t>(((l.a % static_cast<long long>(p)) + p) % p);
        std::uint64_t root = static_cast<std::uint64_t>(
            static_cast<__int128>((p - am) % p) * pow_mod_u64(bm, p - 2, p) % p);
        if (std::find(roots.begin(), roots.end(), root) == roots.end())
            roots.push_back(root);
    }
    return roots.size();
}

}  // namespace

SingularSeries singular_series(std::span<const IntegerLinear> ls, std::uint64_t P) {
    if (ls.empty()) throw std::invalid_argument("singular_series: need at least one line");
    if (P < 2) throw std::invalid_argument("singular_series: need P >= 2");
    if (!strongly_distinct_int(ls))
        throw std::invalid_argument("singular_series: lines must be strongly distinct");
    const auto n = static_cast<unsigned>(ls.size());
    // Raw numerator/denominator accumulation with one reduction at the end.
    // Reducing per prime re-runs gcd on a multi-thousand-digit fraction each
    // step, which is quadratic in P and dominates everything else.
    BigInt num = 1, den = 1;
    for (std::uint64_t p : primes_up_to(P)) {
        std::uint64_t nu = nu_p_linear(ls, p);
        if (nu == p) return {Rational(0), 0.0};
        // (1 - nu/p)/(1 - 1/p)^n = (p - nu) p^(n-1) / (p-1)^n
        num *= BigInt(p - nu) * big_pow(p, n - 1);
        den *= big_pow(p - 1, n);
    }
    Rational prod(num, den);
    return {prod, to_double(prod)};
}

Rational singular_series_single(const IntegerLinear& l) {
    std::uint64_t babs = l.b < 0 ? 0ull - static_cast<unsigned long long>(l.b)
                                 : static_cast<unsigned long long>(l.b);
    return Rational(babs, euler_phi(babs));
}

std::vector<std::uint8_t> sieve_window(std::uint64_t x, std::uint64_t u, int workers) {
    check_window_bounds(x, u);
    auto base = primes_up_to(isqrt_u64(x + u));
    std::vector<std::uint8_t> bits(u + 1, 1);

    constexpr std::uint64_t kSegment = 1u << 16;
    const auto nseg = static_cast<std::int64_t>((u + kSegment) / kSegment);
#ifdef _OPENMP
    if (workers > 0) omp_set_num_threads(workers);
#else
    (void)workers;
#endif
#pragma omp parallel for schedule(static)
    for (std::int64_t s = 0; s < nseg; ++s) {
        std::uint64_t lo = x + static_cast<std::uint64_t>(s) * kSegment;
        std::uint64_t hi = std::min(x + u, lo + kSegment - 1);
        mark_segment(bits, x, lo, hi, base);
    }
    return bits;
}

std::vector<std::uint8_t> sieve_window_serial(std::uint64_t x, std::uint64_t u) {
    check_window_bounds(x, u);
    auto base = primes_up_to(isqrt_u64(x + u));
    std::vector<std::uint8_t> bits(u + 1, 1);
    mark_segment(bits, x, x, x + u, base);
    return bits;
}

HeuristicReport count_window(std::span<const IntegerLinear> ls, std::uint64_t x,
                             std::uint64_t u, std::uint64_t P, int workers) {
    check_window_bounds(x, u);
    if (ls.empty()) throw std::invalid_argument("count_window: need at least one line");

    HeuristicReport rep;
    rep.x = x;
    rep.u = u;
    rep.truncation_P = P;

    struct ImageWindow {
        long long lo = 0;
        std::vector<std::uint8_t> bits;
    };
    std::vector<ImageWindow> windows;
    double log_product = 1.0;
    for (const auto& l : ls) {
        long long at_x = checked_image(l.a, l.b, x);
        long long at_end = checked_image(l.a, l.b, x + u);
        long long lo = std::min(at_x, at_end), hi = std::max(at_x, at_end);
        if (lo <= 1) {
            if (l.b < 0)
                throw std::invalid_argument("count_window: image of " + l.to_string() +
                                            " drops to " + std::to_string(lo) +
                                            " <= 1 inside the window");
            throw std::invalid_argument("count_window: image of " + l.to_string() +
                                        " starts at " + std::to_string(lo) + " <= 1");
        }
        if (static_cast<std::uint64_t>(hi - lo) > kWindowLimit)
            throw std::invalid_argument("count_window: image window of " + l.to_string() +
                                        " exceeds the 10^8 guard");
        windows.push_back(
            {lo, sieve_window(static_cast<std::uint64_t>(lo),
                              static_cast<std::uint64_t>(hi - lo), workers)});
        log_product *= std::log(static_cast<double>(at_x));
    }

    for (std::uint64_t h = x; h <= x + u; ++h) {
        bool all = true;
        for (std::size_t i = 0; i < ls.size(); ++i) {
            long long v = checked_image(ls[i].a, ls[i].b, h);
            if (!windows[i].bits[static_cast<std::uint64_t>(v - windows[i].lo)]) {
                all = false;
                break;
            }
        }
        if (all) ++rep.observed;
    }

    SingularSeries ss = singular_series(ls, P);
    rep.singular_series_value = ss.value;
    rep.singular_series_exact = ss.exact;
    rep.predicted = ss.value * static_cast<double>(u) / log_product;
    rep.ratio = rep.predicted == 0.0
                    ? std::numeric_limits<double>::quiet_NaN()
                    : static_cast<double>(rep.observed) / rep.predicted;
    return rep;
}

std::uint64_t window_from_epsilon(std::uint64_t x, const Rational& eps) {
    if (eps <= 0 || eps >= 1)
        throw std::invalid_argument("window_from_epsilon: eps must lie in (0,1)");
    BigInt num = numerator(eps), den = denominator(eps);
    if (den > 64)
        throw std::invalid_argument("window_from_epsilon: denominator of eps too large");
    BigInt power = big_pow(x, static_cast<unsigned>(num));
    // largest r with r^den <= power
    BigInt lo = 1, hi = 1;
    while (big_pow_big(hi, static_cast<unsigned>(den)) <= power) hi <<= 1;
    while (lo + 1 < hi) {
        BigInt mid = (lo + hi) / 2;
        if (big_pow_big(mid, static_cast<unsigned>(den)) <= power)
            lo = mid;
        else
            hi = mid;
    }
    if (lo > kWindowLimit)
        throw std::invalid_argument("window_from_epsilon: u exceeds the 10^8 guard");
    return static_cast<std::uint64_t>(lo);
}

}  // namespace ffprime
