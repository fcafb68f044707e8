#pragma once

#include "ffprime/poly.hpp"
#include "ffprime/rational.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace ffprime {

// Primitive linear map L(X) = f(t) + g(t)X with gcd(f,g) = 1, g != 0.
class LinearFunction {
public:
    // throws unless g != 0 and gcd(f,g) = 1
    LinearFunction(Poly f, Poly g);

    // "f;g" with either polynomial syntax on each side, e.g. "0;1" or "t;1"
    static LinearFunction parse(const FieldPtr& field, std::string_view s);

    const Poly& f() const { return f_; }
    const Poly& g() const { return g_; }
    int height() const { return std::max(f_.degree(), g_.degree()); }

    Poly apply(const Poly& x) const;  // f + g*x; field mismatch throws

    std::string to_string() const;  // "f;g" comma form

private:
    Poly f_, g_;
};

// f1*g2 - f2*g1 != 0; the non-proportionality the correlation argument needs
bool strongly_distinct(const LinearFunction& a, const LinearFunction& b);

// Short interval around a monic f0: all f with deg(f - f0) <= m, m = floor(eps*deg f0),
// exactly q^(m+1) members enumerated in odometer order (a_0 fastest).
class Interval {
public:
    // throws unless f0 is monic of degree >= 1 and 0 < eps < 1
    Interval(Poly f0, Rational eps);

    const Poly& f0() const { return f0_; }
    const Rational& epsilon() const { return eps_; }
    unsigned k() const { return static_cast<unsigned>(f0_.degree()); }
    unsigned m() const { return m_; }
    BigInt size() const;                       // q^(m+1)
    std::uint64_t size_u64() const;            // throws if size exceeds 2^63

    Poly member(std::uint64_t idx) const;      // idx in [0, size)
    bool contains(const Poly& f) const;

private:
    Poly f0_;
    Rational eps_;
    unsigned m_;
};

}  // namespace ffprime
