#include "ffprime/poly.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>

namespace ffprime {

namespace {
void require_same_field(const Poly& a, const Poly& b) {
    if (!a.field()->same(*b.field()))
        throw std::invalid_argument("field mismatch: " + a.field()->to_string() + " vs " +
                                    b.field()->to_string());
}
}  // namespace

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(FieldPtr f, Fe c) {
    Poly r(std::move(f));
    if (c) r.c_ = {c};
    return r;
}

Poly Poly::var(FieldPtr f) {
    Poly r(std::move(f));
    r.c_ = {0, 1};
    return r;
}

Poly Poly::from_coeffs(FieldPtr f, std::vector<Fe> coeffs) {
    for (Fe c : coeffs)
        if (c >= f->q()) throw std::invalid_argument("coefficient out of range");
    Poly r(std::move(f));
    r.c_ = std::move(coeffs);
    r.trim();
    return r;
}

Poly Poly::from_int_coeffs(FieldPtr f, std::span<const long long> coeffs) {
    std::vector<Fe> v(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) v[i] = f->from_int(coeffs[i]);
    return from_coeffs(std::move(f), std::move(v));
}

Poly Poly::monomial(FieldPtr f, Fe c, unsigned k) {
    Poly r(std::move(f));
    if (c) {
        r.c_.assign(k + 1, 0);
        r.c_[k] = c;
    }
    return r;
}

Poly operator+(const Poly& a, const Poly& b) {
    require_same_field(a, b);
    const Field& F = a.F();
    Poly r(a.field_);
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = F.add(a.coeff(int(i)), b.coeff(int(i)));
    r.trim();
    return r;
}

Poly operator-(const Poly& a, const Poly& b) {
    require_same_field(a, b);
    const Field& F = a.F();
    Poly r(a.field_);
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = F.sub(a.coeff(int(i)), b.coeff(int(i)));
    r.trim();
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    require_same_field(a, b);
    if (a.is_zero() || b.is_zero()) return Poly(a.field_);
    const Field& F = a.F();
    Poly r(a.field_);
    r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (!a.c_[i]) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            r.c_[i + j] = F.add(r.c_[i + j], F.mul(a.c_[i], b.c_[j]));
    }
    return r;  // leading product of nonzero lcs is nonzero over a field
}

Poly Poly::operator-() const {
    Poly r(field_);
    r.c_.resize(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = F().neg(c_[i]);
    return r;
}

Poly Poly::scaled(Fe c) const {
    if (!c) return Poly(field_);
    Poly r(field_);
    r.c_.resize(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = F().mul(c_[i], c);
    return r;
}

Poly Poly::shifted(unsigned k) const {
    if (is_zero() || k == 0) {
        Poly r = *this;
        return r;
    }
    Poly r(field_);
    r.c_.assign(c_.size() + k, 0);
    std::copy(c_.begin(), c_.end(), r.c_.begin() + k);
    return r;
}

Poly Poly::derivative() const {
    Poly r(field_);
    if (c_.size() <= 1) return r;
    const Field& F = *field_;
    r.c_.resize(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) {
        Fe m = F.from_int(static_cast<long long>(i % F.p()));
        r.c_[i - 1] = F.mul(c_[i], m);
    }
    r.trim();
    return r;
}

Fe Poly::eval(Fe x) const {
    const Field& F = *field_;
    Fe acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = F.add(F.mul(acc, x), c_[i]);
    return acc;
}

Poly Poly::monic() const {
    if (is_zero()) throw std::invalid_argument("monic() of zero polynomial");
    if (lc() == 1) return *this;
    return scaled(F().inv(lc()));
}

BigInt Poly::norm() const {
    if (is_zero()) return 0;
    return big_pow(field_->q(), static_cast<unsigned>(degree()));
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
    require_same_field(a, b);
    if (b.is_zero()) throw std::invalid_argument("division by zero polynomial");
    const Field& F = a.F();
    if (a.degree() < b.degree()) return {Poly(a.field()), a};

    std::vector<Fe> rem(a.coeffs().begin(), a.coeffs().end());
    int db = b.degree();
    Fe lcinv = F.inv(b.lc());
    std::vector<Fe> quot(static_cast<std::size_t>(a.degree() - db) + 1, 0);
    for (int k = a.degree() - db; k >= 0; --k) {
        Fe c = F.mul(rem[static_cast<std::size_t>(k + db)], lcinv);
        quot[static_cast<std::size_t>(k)] = c;
        if (!c) continue;
        for (int j = 0; j <= db; ++j) {
            auto idx = static_cast<std::size_t>(k + j);
            rem[idx] = F.sub(rem[idx], F.mul(c, b.coeff(j)));
        }
    }
    rem.resize(static_cast<std::size_t>(std::max(db, 0)));
    return {Poly::from_coeffs(a.field(), std::move(quot)), Poly::from_coeffs(a.field(), std::move(rem))};
}

Poly poly_mod(const Poly& a, const Poly& b) { return poly_divmod(a, b).second; }

Poly poly_div_exact(const Poly& a, const Poly& b) {
    auto [q, r] = poly_divmod(a, b);
    if (!r.is_zero()) throw std::logic_error("poly_div_exact: nonzero remainder");
    return q;
}

Poly poly_gcd(const Poly& a, const Poly& b) {
    require_same_field(a, b);
    if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcd(0, 0) undefined");
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = poly_mod(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

Poly poly_powmod(const Poly& base, std::uint64_t exponent, const Poly& modulus) {
    require_same_field(base, modulus);
    if (modulus.is_zero()) throw std::invalid_argument("powmod with zero modulus");
    Poly r = poly_mod(Poly::one(base.field()), modulus);
    Poly b = poly_mod(base, modulus);
    while (exponent) {
        if (exponent & 1) r = poly_mod(r * b, modulus);
        b = poly_mod(b * b, modulus);
        exponent >>= 1;
    }
    return r;
}

Fe resultant(const Poly& f, const Poly& g) {
    require_same_field(f, g);
    if (f.is_zero() || g.is_zero()) throw std::invalid_argument("resultant of zero polynomial");
    const Field& F = f.F();
    // Euclidean recurrence: Res(f,g) = (-1)^(df*dg) lc(g)^(df-dr) Res(g, r)
    Fe acc = 1;
    Poly a = f, b = g;
    bool negate = false;
    while (true) {
        int da = a.degree(), db = b.degree();
        if (db == 0) {
            acc = F.mul(acc, F.pow_u64(b.lc(), static_cast<std::uint64_t>(da)));
            break;
        }
        if (da == 0) {
            acc = F.mul(acc, F.pow_u64(a.lc(), static_cast<std::uint64_t>(db)));
            break;
        }
        if (da < db) {
            if ((da & 1) && (db & 1)) negate = !negate;
            std::swap(a, b);
            continue;
        }
        Poly r = poly_mod(a, b);
        if (r.is_zero()) return 0;
        if ((da & 1) && (db & 1)) negate = !negate;
        acc = F.mul(acc, F.pow_u64(b.lc(), static_cast<std::uint64_t>(da - r.degree())));
        a = std::move(b);
        b = std::move(r);
    }
    return negate ? F.neg(acc) : acc;
}

Fe discriminant(const Poly& f) {
    if (f.degree() < 1) throw std::invalid_argument("discriminant of constant polynomial");
    Poly df = f.derivative();
    if (df.is_zero()) return 0;
    const Field& F = f.F();
    Fe res = resultant(f, df);
    Fe d = F.div(res, f.lc());
    auto dd = static_cast<unsigned>(f.degree());
    return (dd * (dd - 1) / 2) % 2 ? F.neg(d) : d;
}

Poly poly_interpolate(const FieldPtr& f, std::span<const Fe> xs, std::span<const Fe> ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("interpolation size mismatch");
    const Field& F = *f;
    const std::size_t n = xs.size();
    // Newton divided differences (exact over a field)
    std::vector<Fe> dd(ys.begin(), ys.end());
    for (std::size_t level = 1; level < n; ++level) {
        for (std::size_t i = n - 1; i >= level; --i) {
            Fe denom = F.sub(xs[i], xs[i - level]);
            if (!denom) throw std::invalid_argument("interpolation nodes not distinct");
            dd[i] = F.div(F.sub(dd[i], dd[i - 1]), denom);
            if (i == level) break;
        }
    }
    Poly result = Poly::zero(f);
    Poly basis = Poly::one(f);
    for (std::size_t i = 0; i < n; ++i) {
        result = result + basis.scaled(dd[i]);
        basis = basis * (Poly::var(f) - Poly::constant(f, xs[i]));
    }
    return result;
}

std::string Poly::to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) s += ',';
        s += field_->fe_to_string(c_[i]);
    }
    return s;
}

std::string Poly::to_symbolic() const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
        Fe c = coeff(i);
        if (!c) continue;
        if (!s.empty()) s += "+";
        if (i == 0 || c != 1) s += field_->fe_to_string(c);
        if (i >= 1) {
            s += "t";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

namespace {

// symbolic form: sum of [coeff][t[^k]] terms with integer coefficients
Poly parse_symbolic(const FieldPtr& f, std::string_view s) {
    auto fail = [&] { throw std::invalid_argument("bad polynomial: '" + std::string(s) + "'"); };
    Poly acc = Poly::zero(f);
    std::size_t i = 0;
    bool any = false;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i >= s.size()) break;
        long long sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = (s[i] == '-') ? -1 : 1;
            ++i;
            while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        } else if (any) {
            fail();
        }
        long long coeff = 1;
        bool have_digits = false;
        if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            coeff = 0;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                coeff = coeff * 10 + (s[i] - '0');
                ++i;
            }
            have_digits = true;
        }
        if (i < s.size() && s[i] == '*') ++i;
        unsigned k = 0;
        if (i < s.size() && (s[i] == 't' || s[i] == 'T' || s[i] == 'x' || s[i] == 'X')) {
            ++i;
            k = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) fail();
                k = 0;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                    k = k * 10 + static_cast<unsigned>(s[i] - '0');
                    ++i;
                }
            }
        } else if (!have_digits) {
            fail();
        }
        acc = acc + Poly::monomial(f, f->from_int(sign * coeff), k);
        any = true;
    }
    if (!any) fail();
    return acc;
}

std::vector<std::string_view> split_top_level_commas(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '[') ++depth;
        else if (s[i] == ']') --depth;
        else if (s[i] == ',' && depth == 0) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    out.push_back(s.substr(start));
    return out;
}

}  // namespace

Poly Poly::parse(FieldPtr f, std::string_view s) {
    // trim
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) throw std::invalid_argument("empty polynomial");
    bool symbolic = s.find_first_of("tTxX^") != std::string_view::npos;
    if (symbolic) return parse_symbolic(f, s);
    std::vector<Fe> coeffs;
    for (auto part : split_top_level_commas(s)) {
        while (!part.empty() && std::isspace(static_cast<unsigned char>(part.front()))) part.remove_prefix(1);
        while (!part.empty() && std::isspace(static_cast<unsigned char>(part.back()))) part.remove_suffix(1);
        if (part.empty()) throw std::invalid_argument("bad polynomial: '" + std::string(s) + "'");
        if (part.front() == '[') {
            coeffs.push_back(f->fe_parse(part));
        } else {
            long long v = 0;
            auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
            if (ec != std::errc() || ptr != part.data() + part.size())
                throw std::invalid_argument("bad polynomial: '" + std::string(s) + "'");
            coeffs.push_back(f->from_int(v));
        }
    }
    return from_coeffs(std::move(f), std::move(coeffs));
}

}  // namespace ffprime
