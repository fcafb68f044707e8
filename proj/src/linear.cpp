#include "ffprime/linear.hpp"

#include <stdexcept>

namespace ffprime {

LinearFunction::LinearFunction(Poly f, Poly g) : f_(std::move(f)), g_(std::move(g)) {
    if (!f_.field()->same(*g_.field()))
        throw std::invalid_argument("linear function: f and g over different fields");
    if (g_.is_zero()) throw std::invalid_argument("linear function: g must be nonzero");
    Poly d = poly_gcd(f_, g_);
    if (!d.is_constant())
        throw std::invalid_argument("linear function: not primitive, gcd(f,g) = " +
                                    d.to_string());
}

LinearFunction LinearFunction::parse(const FieldPtr& field, std::string_view s) {
    auto sep = s.find(';');
    if (sep == std::string_view::npos)
        throw std::invalid_argument("linear function: expected \"f;g\", got '" +
                                    std::string(s) + "'");
    return LinearFunction(Poly::parse(field, s.substr(0, sep)),
                          Poly::parse(field, s.substr(sep + 1)));
}

Poly LinearFunction::apply(const Poly& x) const {
    if (!x.field()->same(*f_.field()))
        throw std::invalid_argument("linear apply: field mismatch");
    return f_ + g_ * x;
}

std::string LinearFunction::to_string() const {
    return f_.to_string() + ";" + g_.to_string();
}

bool strongly_distinct(const LinearFunction& a, const LinearFunction& b) {
    return !(a.f() * b.g() - b.f() * a.g()).is_zero();
}

Interval::Interval(Poly f0, Rational eps) : f0_(std::move(f0)), eps_(std::move(eps)) {
    if (f0_.degree() < 1 || !f0_.is_monic())
        throw std::invalid_argument("interval: f0 must be monic of degree >= 1");
    if (eps_ <= 0 || eps_ >= 1)
        throw std::invalid_argument("interval: epsilon must lie in (0,1)");
    // m = floor(eps * k), exact integer arithmetic
    BigInt num = numerator(eps_) * f0_.degree();
    BigInt den = denominator(eps_);
    m_ = static_cast<unsigned>(num / den);
}

BigInt Interval::size() const { return big_pow(f0_.F().q(), m_ + 1); }

std::uint64_t Interval::size_u64() const {
    BigInt s = size();
    if (s > BigInt(1) << 63) throw std::overflow_error("interval: size exceeds 2^63");
    return static_cast<std::uint64_t>(s);
}

Poly Interval::member(std::uint64_t idx) const {
    const std::uint64_t q = f0_.F().q();
    std::vector<Fe> c(f0_.coeffs().begin(), f0_.coeffs().end());
    for (unsigned j = 0; j <= m_; ++j) {
        c[j] = f0_.F().add(c[j], static_cast<Fe>(idx % q));
        idx /= q;
    }
    if (idx != 0) throw std::out_of_range("interval member index out of range");
    return Poly::from_coeffs(f0_.field(), std::move(c));
}

bool Interval::contains(const Poly& f) const {
    if (!f.field()->same(f0_.F())) return false;
    return (f - f0_).degree() <= static_cast<int>(m_);
}

}  // namespace ffprime
