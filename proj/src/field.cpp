#include "ffprime/field.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace ffprime {

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::pair<std::uint64_t, unsigned> factor_prime_power(std::uint64_t q) {
    if (q < 2) throw std::invalid_argument("not a prime power: " + std::to_string(q));
    std::uint64_t p = q;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    unsigned e = 0;
    std::uint64_t r = q;
    while (r % p == 0) {
        r /= p;
        ++e;
    }
    if (r != 1) throw std::invalid_argument("not a prime power: " + std::to_string(q));
    return {p, e};
}

namespace {

// Coordinate-vector arithmetic over F_p, used to build extension-field tables
// and as the fallback path for untabulated fields.
using Coords = std::vector<std::uint32_t>;

Coords idx_to_coords(std::uint64_t v, std::uint64_t p, unsigned e) {
    Coords c(e);
    for (unsigned i = 0; i < e; ++i) {
        c[i] = static_cast<std::uint32_t>(v % p);
        v /= p;
    }
    return c;
}

std::uint64_t coords_to_idx(const Coords& c, std::uint64_t p) {
    std::uint64_t v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * p + c[i];
    return v;
}

// product mod the monic modulus (degree e), everything over F_p
Coords coord_mul(const Coords& a, const Coords& b, const Coords& modulus,
                 std::uint64_t p, unsigned e) {
    std::vector<std::uint64_t> prod(2 * e - 1, 0);
    for (unsigned i = 0; i < e; ++i) {
        if (!a[i]) continue;
        for (unsigned j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + std::uint64_t(a[i]) * b[j]) % p;
    }
    // reduce: t^e = -(modulus lower part)
    for (unsigned d = 2 * e - 2; d >= e; --d) {
        std::uint64_t c = prod[d];
        if (c) {
            prod[d] = 0;
            for (unsigned j = 0; j < e; ++j) {
                std::uint64_t sub = c * modulus[j] % p;
                prod[d - e + j] = (prod[d - e + j] + p - sub) % p;
            }
        }
        if (d == e) break;
    }
    Coords r(e);
    for (unsigned i = 0; i < e; ++i) r[i] = static_cast<std::uint32_t>(prod[i]);
    return r;
}

// Irreducibility of a monic degree-e polynomial over F_p by exhaustive
// divisor scan; only used on tiny inputs during field construction.
bool monic_irreducible_over_fp(const Coords& poly, std::uint64_t p, unsigned e) {
    if (e == 1) return true;
    // trial division by every monic polynomial of degree d <= e/2
    for (unsigned d = 1; 2 * d <= e; ++d) {
        std::uint64_t count = 1;
        for (unsigned i = 0; i < d; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            Coords div = idx_to_coords(idx, p, d + 1);
            div[d] = 1;
            // long division remainder check
            std::vector<std::uint64_t> rem(poly.begin(), poly.end());
            for (int k = int(e) - int(d); k >= 0; --k) {
                std::uint64_t lead = rem[k + d];
                if (!lead) continue;
                for (unsigned j = 0; j <= d; ++j)
                    rem[k + j] = (rem[k + j] + p - lead * div[j] % p) % p;
            }
            bool zero = true;
            for (unsigned j = 0; j < d; ++j)
                if (rem[j]) { zero = false; break; }
            if (zero) return false;
        }
    }
    return true;
}

}  // namespace

FieldPtr Field::make(std::uint64_t p, unsigned e,
                     const std::vector<std::uint32_t>* modulus, bool allow_char2) {
    if (!is_prime_u64(p)) throw std::invalid_argument("p is not prime: " + std::to_string(p));
    if (p == 2 && !allow_char2)
        throw std::invalid_argument("characteristic 2 rejected (pass the override to explore)");
    if (p > kMaxP) throw std::invalid_argument("p too large");
    if (e < 1) throw std::invalid_argument("extension degree must be >= 1");

    std::uint64_t q = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (q > kMaxP / p) throw std::invalid_argument("q = p^e too large");
        q *= p;
    }

    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = p;
    f->e_ = e;
    f->q_ = q;
    f->char2_override_ = (p == 2);

    if (e > 1) {
        if (modulus) {
            if (modulus->size() != e + 1 || (*modulus)[e] != 1)
                throw std::invalid_argument("modulus must be monic of degree e");
            for (auto c : *modulus)
                if (c >= p) throw std::invalid_argument("modulus coefficient out of range");
            if (!monic_irreducible_over_fp(*modulus, p, e))
                throw std::invalid_argument("modulus is reducible over F_p");
            f->modulus_ = *modulus;
        } else {
            // deterministic auto-selection: smallest (c_0,...,c_{e-1}) in
            // low-degree-first lexicographic order
            std::uint64_t count = 1;
            for (unsigned i = 0; i < e; ++i) count *= p;
            bool found = false;
            for (std::uint64_t idx = 1; idx < count && !found; ++idx) {
                Coords cand = idx_to_coords(idx, p, e + 1);
                cand[e] = 1;
                if (monic_irreducible_over_fp(cand, p, e)) {
                    f->modulus_ = cand;
                    found = true;
                }
            }
            if (!found) throw std::logic_error("no irreducible modulus found");
        }
    }

    f->build_tables();
    return f;
}

FieldPtr Field::parse(std::string_view spec, bool allow_char2) {
    auto caret = spec.find('^');
    auto parse_u64 = [&](std::string_view s) {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size())
            throw std::invalid_argument("bad field spec: '" + std::string(spec) + "'");
        return v;
    };
    if (caret == std::string_view::npos) {
        // accept a plain prime power: "9" means 3^2
        std::uint64_t q = parse_u64(spec);
        auto [p, e] = factor_prime_power(q);
        return make(p, e, nullptr, allow_char2);
    }
    std::uint64_t p = parse_u64(spec.substr(0, caret));
    std::uint64_t e = parse_u64(spec.substr(caret + 1));
    if (e < 1 || e > 16) throw std::invalid_argument("bad field spec: '" + std::string(spec) + "'");
    return make(p, static_cast<unsigned>(e), nullptr, allow_char2);
}

void Field::build_tables() {
    if (q_ > kTableLimit) {
        // direct-arithmetic field; still precompute the quadratic-residue table
        // lazily via is_square's pow path
        return;
    }
    const std::size_t q = q_;
    add_tab_.resize(q * q);
    mul_tab_.resize(q * q);
    neg_tab_.resize(q);
    inv_tab_.assign(q, 0);
    sqr_tab_.assign(q, 0);

    if (e_ == 1) {
        for (std::size_t a = 0; a < q; ++a) {
            for (std::size_t b = 0; b < q; ++b) {
                add_tab_[a * q + b] = static_cast<std::uint16_t>((a + b) % q);
                mul_tab_[a * q + b] = static_cast<std::uint16_t>(a * b % q);
            }
        }
    } else {
        std::vector<Coords> cs(q);
        for (std::size_t a = 0; a < q; ++a) cs[a] = idx_to_coords(a, p_, e_);
        for (std::size_t a = 0; a < q; ++a) {
            for (std::size_t b = 0; b < q; ++b) {
                Coords s(e_);
                for (unsigned i = 0; i < e_; ++i) s[i] = static_cast<std::uint32_t>((cs[a][i] + cs[b][i]) % p_);
                add_tab_[a * q + b] = static_cast<std::uint16_t>(coords_to_idx(s, p_));
                mul_tab_[a * q + b] =
                    static_cast<std::uint16_t>(coords_to_idx(coord_mul(cs[a], cs[b], modulus_, p_, e_), p_));
            }
        }
    }
    for (std::size_t a = 0; a < q; ++a) {
        for (std::size_t b = 0; b < q; ++b) {
            if (add_tab_[a * q + b] == 0) neg_tab_[a] = static_cast<std::uint16_t>(b);
            if (a && mul_tab_[a * q + b] == 1) inv_tab_[a] = static_cast<std::uint16_t>(b);
        }
        sqr_tab_[mul_tab_[a * q + a]] = 1;
    }
}

Fe Field::add_slow(Fe a, Fe b) const {
    if (e_ == 1) return static_cast<Fe>((std::uint64_t(a) + b) % q_);
    Coords ca = idx_to_coords(a, p_, e_), cb = idx_to_coords(b, p_, e_);
    for (unsigned i = 0; i < e_; ++i) ca[i] = static_cast<std::uint32_t>((std::uint64_t(ca[i]) + cb[i]) % p_);
    return static_cast<Fe>(coords_to_idx(ca, p_));
}

Fe Field::neg_slow(Fe a) const {
    if (e_ == 1) return a ? static_cast<Fe>(q_ - a) : 0;
    Coords c = idx_to_coords(a, p_, e_);
    for (auto& x : c) x = x ? static_cast<std::uint32_t>(p_ - x) : 0;
    return static_cast<Fe>(coords_to_idx(c, p_));
}

Fe Field::mul_slow(Fe a, Fe b) const {
    if (e_ == 1) return static_cast<Fe>(std::uint64_t(a) * b % q_);
    Coords ca = idx_to_coords(a, p_, e_), cb = idx_to_coords(b, p_, e_);
    return static_cast<Fe>(coords_to_idx(coord_mul(ca, cb, modulus_, p_, e_), p_));
}

Fe Field::inv(Fe a) const {
    if (a == 0) throw std::invalid_argument("division by zero in " + to_string());
    if (!inv_tab_.empty()) return inv_tab_[a];
    return pow_u64(a, q_ - 2);
}

Fe Field::pow_u64(Fe a, std::uint64_t n) const {
    Fe r = 1, b = a;
    while (n) {
        if (n & 1) r = mul(r, b);
        b = mul(b, b);
        n >>= 1;
    }
    return r;
}

Fe Field::pth_root(Fe a) const {
    Fe r = a;
    for (unsigned i = 0; i + 1 < e_; ++i) r = frobenius(r);
    return r;
}

bool Field::is_square(Fe a) const {
    if (!sqr_tab_.empty()) return sqr_tab_[a] != 0;
    if (a == 0) return true;
    if (p_ == 2) return true;  // squaring is a bijection in characteristic 2
    return pow_u64(a, (q_ - 1) / 2) == 1;
}

std::optional<Fe> Field::sqrt(Fe a) const {
    if (a == 0) return Fe{0};
    if (!is_square(a)) return std::nullopt;
    if (q_ <= kTableLimit) {
        for (Fe b = 1; b < q_; ++b)
            if (mul(b, b) == a) return b;
        return std::nullopt;
    }
    // large fields: deterministic scan is too slow only in principle; the
    // desk-scale fields used here are all below the table limit
    for (Fe b = 1; b < q_; ++b)
        if (mul(b, b) == a) return b;
    return std::nullopt;
}

Fe Field::from_int(long long v) const {
    long long m = static_cast<long long>(p_);
    long long r = v % m;
    if (r < 0) r += m;
    return static_cast<Fe>(r);
}

std::vector<std::uint32_t> Field::coords(Fe a) const { return idx_to_coords(a, p_, e_); }

Fe Field::from_coords(std::span<const std::uint32_t> c) const {
    if (c.size() != e_) throw std::invalid_argument("coordinate count != e");
    Coords v(c.begin(), c.end());
    for (auto x : v)
        if (x >= p_) throw std::invalid_argument("coordinate out of range");
    return static_cast<Fe>(coords_to_idx(v, p_));
}

std::string Field::fe_to_string(Fe a) const {
    if (e_ == 1) return std::to_string(a);
    auto c = coords(a);
    std::string s = "[";
    for (unsigned i = 0; i < e_; ++i) {
        if (i) s += ' ';
        s += std::to_string(c[i]);
    }
    return s + "]";
}

Fe Field::fe_parse(std::string_view s) const {
    auto fail = [&] { throw std::invalid_argument("bad field element: '" + std::string(s) + "'"); };
    if (!s.empty() && s.front() == '[') {
        if (s.back() != ']') fail();
        std::istringstream in{std::string(s.substr(1, s.size() - 2))};
        Coords c;
        long long v;
        while (in >> v) c.push_back(static_cast<std::uint32_t>(from_int(v)));
        if (!in.eof() || c.size() > e_) fail();
        c.resize(e_, 0);
        return from_coords(c);
    }
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) fail();
    return from_int(v);
}

std::string Field::to_string() const {
    if (e_ == 1) return std::to_string(p_);
    return std::to_string(p_) + "^" + std::to_string(e_);
}

bool Field::same(const Field& other) const {
    return p_ == other.p_ && e_ == other.e_ && modulus_ == other.modulus_;
}

}  // namespace ffprime
