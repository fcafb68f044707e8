#pragma once

#include "ffprime/field.hpp"
#include "ffprime/rational.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ffprime {

// Element of F_q[t] in canonical form: no trailing zero coefficients, the
// zero polynomial has an empty coefficient vector. Immutable value type.
class Poly {
public:
    // degree() of the zero polynomial; compares below every true degree.
    static constexpr int kZeroDeg = -1;

    explicit Poly(FieldPtr field) : field_(std::move(field)) {}
    static Poly zero(FieldPtr f) { return Poly(std::move(f)); }
    static Poly constant(FieldPtr f, Fe c);
    static Poly one(FieldPtr f) { return constant(std::move(f), 1); }
    static Poly var(FieldPtr f);  // the polynomial t
    static Poly from_coeffs(FieldPtr f, std::vector<Fe> coeffs);
    // integer coefficients reduced into the prime subfield (low to high)
    static Poly from_int_coeffs(FieldPtr f, std::span<const long long> coeffs);
    // monomial c * t^k
    static Poly monomial(FieldPtr f, Fe c, unsigned k);

    const FieldPtr& field() const { return field_; }
    const Field& F() const { return *field_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    Fe lc() const { return c_.empty() ? 0 : c_.back(); }
    Fe coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(i)] : 0;
    }
    std::span<const Fe> coeffs() const { return c_; }

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator-() const;
    Poly scaled(Fe c) const;            // c * this
    Poly shifted(unsigned k) const;     // this * t^k
    bool operator==(const Poly& o) const { return field_->same(*o.field_) && c_ == o.c_; }

    Poly derivative() const;
    Fe eval(Fe x) const;
    Poly monic() const;                 // throws on zero

    // ||f|| = q^deg f, ||0|| = 0
    BigInt norm() const;

    std::string to_string() const;      // canonical comma form, "0" for zero
    std::string to_symbolic() const;    // pretty "t^2+1" form (prime fields)

    // Accepts the comma form ("1,0,1", "[1 2],[0 1]") and, for integer
    // coefficients, the symbolic form ("t^2+1", "2t+1", "t^4-3").
    static Poly parse(FieldPtr f, std::string_view s);

private:
    void trim();
    FieldPtr field_;
    std::vector<Fe> c_;
};

// quotient/remainder with deg(remainder) < deg(divisor); divisor nonzero
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);
Poly poly_mod(const Poly& a, const Poly& b);
Poly poly_div_exact(const Poly& a, const Poly& b);  // throws if remainder != 0

// monic gcd; gcd(f, 0) = monic(f); both zero is an error
Poly poly_gcd(const Poly& a, const Poly& b);

// base^exponent mod modulus by square-and-multiply; modulus nonzero
Poly poly_powmod(const Poly& base, std::uint64_t exponent, const Poly& modulus);

// Res(f,g) with the convention Res(f,g) = lc(f)^deg(g) * prod g(alpha) over
// the roots of f (with multiplicity), computed by the Euclidean subresultant
// recurrence. Inputs nonzero.
Fe resultant(const Poly& f, const Poly& g);

// disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f); 0 when f' = 0 (inseparable
// degenerate case); constant input is an error.
Fe discriminant(const Poly& f);

// Newton interpolation: the unique polynomial of degree < xs.size() through
// (xs[i], ys[i]); nodes must be pairwise distinct.
Poly poly_interpolate(const FieldPtr& f, std::span<const Fe> xs, std::span<const Fe> ys);

}  // namespace ffprime
