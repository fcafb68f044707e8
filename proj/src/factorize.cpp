#include "ffprime/factorize.hpp"

#include <algorithm>
#include <stdexcept>

namespace ffprime {

namespace {

std::vector<unsigned> prime_divisors(unsigned n) {
    std::vector<unsigned> out;
    for (unsigned r = 2; r * r <= n; ++r) {
        if (n % r == 0) {
            out.push_back(r);
            while (n % r == 0) n /= r;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// f = h^p with h recovered coefficient-wise: h_i = pth_root(f_{p*i}).
Poly pth_root_poly(const Poly& f) {
    const Field& F = f.F();
    const auto p = static_cast<unsigned>(F.p());
    std::vector<Fe> h;
    h.reserve(static_cast<std::size_t>(f.degree()) / p + 1);
    for (int i = 0; i <= f.degree(); ++i) {
        if (i % static_cast<int>(p) != 0) {
            if (f.coeff(i) != 0)
                throw std::logic_error("pth_root_poly: input is not a p-th power");
            continue;
        }
        h.push_back(F.pth_root(f.coeff(i)));
    }
    return Poly::from_coeffs(f.field(), std::move(h));
}

void squarefree_rec(const Poly& f, unsigned outer_mult,
                    std::vector<std::pair<Poly, unsigned>>& out) {
    if (f.is_constant()) return;
    const auto p = static_cast<unsigned>(f.F().p());
    Poly fp = f.derivative();
    if (fp.is_zero()) {
        squarefree_rec(pth_root_poly(f), outer_mult * p, out);
        return;
    }
    Poly c = poly_gcd(f, fp);
    Poly w = poly_div_exact(f, c);
    // w carries one copy of each factor whose multiplicity is prime to p;
    // peel them off in multiplicity order.
    unsigned i = 1;
    while (!w.is_constant()) {
        Poly y = poly_gcd(w, c);
        Poly fac = poly_div_exact(w, y);
        if (!fac.is_constant()) out.emplace_back(fac, i * outer_mult);
        w = std::move(y);
        c = poly_div_exact(c, w);
        ++i;
    }
    // c now holds exactly the factors with multiplicity divisible by p.
    if (!c.is_constant()) squarefree_rec(pth_root_poly(c), outer_mult * p, out);
}

}  // namespace

std::vector<std::pair<Poly, unsigned>> squarefree_decompose(const Poly& f) {
    if (f.is_zero()) throw std::invalid_argument("squarefree_decompose: zero polynomial");
    std::vector<std::pair<Poly, unsigned>> out;
    if (f.is_constant()) return out;
    squarefree_rec(f.monic(), 1, out);
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    return out;
}

bool is_prime_poly(const Poly& f, bool associate) {
    if (f.is_zero()) throw std::invalid_argument("is_prime_poly: zero polynomial");
    if (f.is_constant()) return false;
    if (!associate && !f.is_monic()) return false;
    const unsigned n = static_cast<unsigned>(f.degree());
    if (n == 1) return true;
    const Poly m = f.monic();
    const std::uint64_t q = f.F().q();
    const Poly t = poly_mod(Poly::var(f.field()), m);

    // u[j] = t^(q^j) mod m
    std::vector<Poly> u;
    u.reserve(n + 1);
    u.push_back(t);
    for (unsigned j = 1; j <= n; ++j) u.push_back(poly_powmod(u.back(), q, m));
    if (!(u[n] == t)) return false;
    for (unsigned r : prime_divisors(n)) {
        Poly d = poly_gcd(m, u[n / r] - t);
        if (!d.is_constant()) return false;
    }
    return true;
}

std::map<unsigned, unsigned> distinct_degree_profile(const Poly& f) {
    if (f.degree() < 1)
        throw std::invalid_argument("distinct_degree_profile: need degree >= 1");
    Poly fp = f.derivative();
    if (fp.is_zero() || !poly_gcd(f, fp).is_constant())
        throw std::invalid_argument("distinct_degree_profile: input is not squarefree");

    const std::uint64_t q = f.F().q();
    std::map<unsigned, unsigned> profile;

    Poly g = f.monic();
    Poly t = poly_mod(Poly::var(f.field()), g);
    Poly h = t;
    for (unsigned d = 1; !g.is_constant(); ++d) {
        // all factors left in g have degree >= d; if g is too small to split
        // further it is itself irreducible
        if (static_cast<unsigned>(g.degree()) < 2 * d) {
            profile[static_cast<unsigned>(g.degree())] += 1;
            break;
        }
        h = poly_powmod(h, q, g);
        Poly fac = poly_gcd(g, h - t);
        if (!fac.is_constant()) {
            profile[d] = static_cast<unsigned>(fac.degree()) / d;
            g = poly_div_exact(g, fac);
            h = poly_mod(h, g);
            t = poly_mod(Poly::var(f.field()), g);
        }
    }
    return profile;
}

Partition cycle_type(const Poly& f) {
    if (f.degree() < 1) throw std::invalid_argument("cycle_type: need degree >= 1");
    const unsigned k = static_cast<unsigned>(f.degree());
    std::vector<std::uint32_t> mults(k, 0);
    for (const auto& [g, m] : squarefree_decompose(f))
        for (const auto& [d, count] : distinct_degree_profile(g))
            mults[d - 1] += m * count;
    return Partition(k, std::move(mults));
}

BigInt gauss_irreducible_count(std::uint64_t q, unsigned n) {
    if (n == 0) throw std::invalid_argument("gauss_irreducible_count: n must be positive");
    BigInt acc = 0;
    for (unsigned d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        // mu(d)
        int mu = 1;
        unsigned rest = d;
        for (unsigned r = 2; r * r <= rest; ++r) {
            if (rest % r != 0) continue;
            rest /= r;
            if (rest % r == 0) { mu = 0; break; }
            mu = -mu;
        }
        if (mu != 0 && rest > 1) mu = -mu;
        if (mu == 0) continue;
        acc += mu * big_pow(q, n / d);
    }
    return acc / n;
}

}  // namespace ffprime
