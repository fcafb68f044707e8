#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ffprime/field.hpp"
#include "ffprime/oracles.hpp"
#include "ffprime/poly.hpp"

#include <set>

using namespace ffprime;

namespace {

// deterministic stream for property tests
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t x = state;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }
    Fe fe(const Field& F) { return static_cast<Fe>(next() % F.q()); }
    Poly poly(const FieldPtr& f, int maxdeg, bool nonzero = false) {
        for (;;) {
            std::vector<Fe> c(static_cast<std::size_t>(next() % (maxdeg + 1)) + 1);
            for (auto& v : c) v = fe(*f);
            Poly p = Poly::from_coeffs(f, std::move(c));
            if (!nonzero || !p.is_zero()) return p;
        }
    }
};

}  // namespace

TEST_CASE("prime field construction and arithmetic") {
    auto f5 = Field::make(5);
    CHECK(f5->p() == 5);
    CHECK(f5->e() == 1);
    CHECK(f5->q() == 5);
    for (Fe a = 0; a < 5; ++a)
        for (Fe b = 0; b < 5; ++b) {
            CHECK(f5->add(a, b) == (a + b) % 5);
            CHECK(f5->mul(a, b) == (a * b) % 5);
        }
    CHECK(f5->neg(0) == 0);
    CHECK(f5->neg(2) == 3);
    CHECK(f5->inv(2) == 3);
    CHECK(f5->inv(4) == 4);
    CHECK_THROWS(f5->inv(0));
    CHECK(f5->sub(1, 3) == 3);
    CHECK(f5->div(3, 4) == f5->mul(3, 4));
    CHECK(f5->pow_u64(2, 0) == 1);
    CHECK(f5->pow_u64(2, 10) == 4);  // 1024 mod 5
    CHECK(f5->from_int(-1) == 4);
    CHECK(f5->from_int(12) == 2);
}

TEST_CASE("field parse and characteristic-2 policy") {
    CHECK(Field::parse("7")->q() == 7);
    CHECK(Field::parse("3^2")->q() == 9);
    CHECK_THROWS(Field::parse("4"));        // char 2 without override
    CHECK_THROWS(Field::parse("2"));
    CHECK_THROWS(Field::parse("6"));        // not a prime power
    CHECK_THROWS(Field::parse("1"));
    auto f4 = Field::parse("4", true);
    CHECK(f4->q() == 4);
    CHECK(f4->char2_override());
    CHECK_FALSE(Field::parse("9")->char2_override());
}

TEST_CASE("extension field F9 uses the smallest modulus") {
    auto f9 = Field::make(3, 2);
    // lexicographically first monic irreducible quadratic over F_3 is t^2+1
    CHECK(f9->modulus() == std::vector<std::uint32_t>{1, 0, 1});
    // element 3 has coordinates (0,1): the residue of t
    Fe t = f9->from_coords(std::vector<std::uint32_t>{0, 1});
    CHECK(t == 3);
    // t^2 = -1 = 2
    CHECK(f9->mul(t, t) == 2);
    CHECK(f9->fe_to_string(t) == "[0 1]");
    CHECK(f9->fe_parse("[0 1]") == t);
    CHECK(f9->fe_parse("2") == 2);
}

TEST_CASE("reducible modulus is rejected") {
    // t^2+1 factors over F_5 as (t+2)(t+3)
    std::vector<std::uint32_t> mod{1, 0, 1};
    CHECK_THROWS(Field::make(5, 2, &mod));
    std::vector<std::uint32_t> good{2, 0, 1};  // t^2+2 irreducible over F_5
    CHECK(Field::make(5, 2, &good)->q() == 25);
}

TEST_CASE("field axioms hold on every element of small fields") {
    for (auto spec : {std::pair<std::uint64_t, unsigned>{7, 1}, {3, 2}, {5, 2}}) {
        auto f = Field::make(spec.first, spec.second);
        const auto q = f->q();
        for (Fe a = 0; a < q; ++a) {
            CHECK(f->add(a, f->neg(a)) == 0);
            CHECK(f->add(a, 0) == a);
            CHECK(f->mul(a, 1) == a);
            if (a != 0) CHECK(f->mul(a, f->inv(a)) == 1);
            CHECK(f->pow_u64(a, q) == a);  // x^q = x
            CHECK(f->frobenius(f->pth_root(a)) == a);
            CHECK(f->pth_root(f->frobenius(a)) == a);
            for (Fe b = 0; b < q; ++b) {
                CHECK(f->add(a, b) == f->add(b, a));
                CHECK(f->mul(a, b) == f->mul(b, a));
                // Frobenius is additive
                CHECK(f->frobenius(f->add(a, b)) ==
                      f->add(f->frobenius(a), f->frobenius(b)));
            }
        }
    }
}

TEST_CASE("squares and square roots") {
    for (auto spec : {std::pair<std::uint64_t, unsigned>{7, 1}, {11, 1}, {3, 2}}) {
        auto f = Field::make(spec.first, spec.second);
        const auto q = f->q();
        std::uint64_t squares = 0;
        for (Fe a = 0; a < q; ++a) {
            bool sq = f->is_square(a);
            auto root = f->sqrt(a);
            CHECK(sq == root.has_value());
            if (root) CHECK(f->mul(*root, *root) == a);
            squares += sq;
        }
        // 0 plus (q-1)/2 nonzero squares in odd characteristic
        CHECK(squares == (q + 1) / 2);
    }
}

TEST_CASE("prime power factoring") {
    CHECK(factor_prime_power(9) == std::pair<std::uint64_t, unsigned>{3, 2});
    CHECK(factor_prime_power(125) == std::pair<std::uint64_t, unsigned>{5, 3});
    CHECK(factor_prime_power(101) == std::pair<std::uint64_t, unsigned>{101, 1});
    CHECK(factor_prime_power(1024) == std::pair<std::uint64_t, unsigned>{2, 10});
    CHECK_THROWS(factor_prime_power(12));
    CHECK_THROWS(factor_prime_power(1));
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(97));
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64(91));  // 7*13
}

TEST_CASE("polynomial canonical form") {
    auto f5 = Field::make(5);
    Poly z = Poly::zero(f5);
    CHECK(z.degree() == Poly::kZeroDeg);
    CHECK(z.is_zero());
    CHECK(z.to_string() == "0");
    // trailing zeros trim away
    Poly p = Poly::from_coeffs(f5, {2, 0, 0});
    CHECK(p.degree() == 0);
    CHECK(p == Poly::constant(f5, 2));
    Poly q = Poly::from_int_coeffs(f5, std::vector<long long>{-1, 6});
    CHECK(q.coeff(0) == 4);
    CHECK(q.coeff(1) == 1);
    CHECK(q.is_monic());
    CHECK(Poly::monomial(f5, 3, 4).degree() == 4);
    CHECK(Poly::monomial(f5, 0, 4).is_zero());
    CHECK(Poly::var(f5) == Poly::from_coeffs(f5, {0, 1}));
}

TEST_CASE("polynomial parse round-trips") {
    auto f5 = Field::make(5);
    CHECK(Poly::parse(f5, "t^3") == Poly::monomial(f5, 1, 3));
    CHECK(Poly::parse(f5, "t^4-3") == Poly::from_int_coeffs(f5, std::vector<long long>{-3, 0, 0, 0, 1}));
    CHECK(Poly::parse(f5, "2t+1") == Poly::from_coeffs(f5, {1, 2}));
    CHECK(Poly::parse(f5, "1,0,1") == Poly::from_coeffs(f5, {1, 0, 1}));
    Poly p = Poly::parse(f5, "3+2t^2");
    CHECK(Poly::parse(f5, p.to_string()) == p);
    CHECK(Poly::parse(f5, p.to_symbolic()) == p);
    auto f9 = Field::make(3, 2);
    Poly ext = Poly::from_coeffs(f9, {5, 0, 7});
    CHECK(Poly::parse(f9, ext.to_string()) == ext);
    CHECK_THROWS(Poly::parse(f5, ""));
    CHECK_THROWS(Poly::parse(f5, "t^"));
    CHECK_THROWS(Poly::parse(f5, "1,,2"));
}

TEST_CASE("ring operations agree with evaluation") {
    Rng rng(11);
    for (auto spec : {std::pair<std::uint64_t, unsigned>{7, 1}, {3, 2}, {13, 1}}) {
        auto f = Field::make(spec.first, spec.second);
        for (int rep = 0; rep < 50; ++rep) {
            Poly a = rng.poly(f, 6), b = rng.poly(f, 6);
            Poly s = a + b, d = a - b, m = a * b;
            for (Fe x = 0; x < f->q(); ++x) {
                CHECK(s.eval(x) == f->add(a.eval(x), b.eval(x)));
                CHECK(d.eval(x) == f->sub(a.eval(x), b.eval(x)));
                CHECK(m.eval(x) == f->mul(a.eval(x), b.eval(x)));
            }
            if (!a.is_zero() && !b.is_zero())
                CHECK(m.degree() == a.degree() + b.degree());
            CHECK((a + (-a)).is_zero());
            CHECK(a.shifted(3) == a * Poly::monomial(f, 1, 3));
            CHECK(a.scaled(2) == a * Poly::constant(f, 2));
        }
    }
}

TEST_CASE("derivative is linear and Leibniz") {
    Rng rng(23);
    auto f7 = Field::make(7);
    for (int rep = 0; rep < 40; ++rep) {
        Poly a = rng.poly(f7, 5), b = rng.poly(f7, 5);
        CHECK((a + b).derivative() == a.derivative() + b.derivative());
        CHECK((a * b).derivative() == a.derivative() * b + a * b.derivative());
    }
    // char-p collapse: (t^7)' = 0 over F_7
    CHECK(Poly::monomial(f7, 1, 7).derivative().is_zero());
}

TEST_CASE("division with remainder") {
    Rng rng(37);
    for (auto spec : {std::pair<std::uint64_t, unsigned>{5, 1}, {3, 2}}) {
        auto f = Field::make(spec.first, spec.second);
        for (int rep = 0; rep < 60; ++rep) {
            Poly a = rng.poly(f, 8);
            Poly b = rng.poly(f, 4, true);
            auto [q, r] = poly_divmod(a, b);
            CHECK(a == q * b + r);
            CHECK(r.degree() < b.degree());
            CHECK(poly_mod(a, b) == r);
            if (r.is_zero())
                CHECK(poly_div_exact(a, b) == q);
            else
                CHECK_THROWS(poly_div_exact(a, b));
        }
        CHECK_THROWS(poly_divmod(rng.poly(f, 3), Poly::zero(f)));
    }
}

TEST_CASE("gcd is the monic greatest common divisor") {
    Rng rng(41);
    auto f7 = Field::make(7);
    for (int rep = 0; rep < 40; ++rep) {
        Poly u = rng.poly(f7, 3, true), v = rng.poly(f7, 3, true);
        if (!poly_gcd(u, v).is_constant()) continue;  // want coprime u, v
        Poly w = rng.poly(f7, 3, true);
        Poly g = poly_gcd(u * w, v * w);
        CHECK(g == w.monic());
    }
    Poly p = Poly::parse(f7, "t^2+1");
    CHECK(poly_gcd(p, Poly::zero(f7)) == p);
    CHECK(poly_gcd(Poly::zero(f7), p.scaled(3)) == p);
    CHECK_THROWS(poly_gcd(Poly::zero(f7), Poly::zero(f7)));
}

TEST_CASE("powmod matches repeated multiplication") {
    Rng rng(53);
    auto f9 = Field::make(3, 2);
    Poly mod = Poly::parse(f9, "0,1,0,0,1");  // t^4 + t
    for (int rep = 0; rep < 20; ++rep) {
        Poly base = rng.poly(f9, 3);
        Poly acc = poly_mod(Poly::one(f9), mod);
        for (unsigned e = 0; e <= 12; ++e) {
            CHECK(poly_powmod(base, e, mod) == acc);
            acc = poly_mod(acc * base, mod);
        }
    }
}

TEST_CASE("resultant against the Sylvester determinant") {
    Rng rng(67);
    int checked = 0;
    for (auto spec : {std::pair<std::uint64_t, unsigned>{3, 1}, {7, 1}, {3, 2}, {5, 2}}) {
        auto f = Field::make(spec.first, spec.second);
        for (int rep = 0; rep < 125; ++rep) {
            Poly a = rng.poly(f, 5, true), b = rng.poly(f, 5, true);
            Fe r = resultant(a, b);
            CHECK(r == oracles::sylvester_resultant(a, b));
            CHECK((r == 0) == !poly_gcd(a, b).is_constant());
            ++checked;
        }
    }
    CHECK(checked == 500);
}

TEST_CASE("resultant algebra") {
    auto f5 = Field::make(5);
    // roots of t^2+1 over F_5 are 2 and 3; Res(f,g) = lc(f)^deg g * prod g(root)
    Poly f = Poly::parse(f5, "t^2+1");
    CHECK(resultant(f, Poly::parse(f5, "t+1")) == 2);  // 3*4 = 12 = 2
    CHECK(resultant(f, Poly::parse(f5, "t+2")) == 0);  // shares the root 3
    Rng rng(71);
    auto f7 = Field::make(7);
    for (int rep = 0; rep < 30; ++rep) {
        Poly a = rng.poly(f7, 4, true), b = rng.poly(f7, 3, true), c = rng.poly(f7, 3, true);
        CHECK(resultant(a, b * c) == f7->mul(resultant(a, b), resultant(a, c)));
        // swap symmetry: Res(f,g) = (-1)^(deg f deg g) Res(g,f)
        Fe swapped = resultant(b, a);
        if ((a.degree() * b.degree()) % 2 != 0) swapped = f7->neg(swapped);
        CHECK(resultant(a, b) == swapped);
    }
}

TEST_CASE("discriminant closed forms") {
    auto f7 = Field::make(7);
    // deg 2: disc(t^2+bt+c) = b^2-4c
    for (Fe b = 0; b < 7; ++b)
        for (Fe c = 0; c < 7; ++c) {
            Poly p = Poly::from_coeffs(f7, {c, b, 1});
            Fe want = f7->sub(f7->mul(b, b), f7->mul(4, c));
            CHECK(discriminant(p) == want);
        }
    // deg 3: disc(t^3+pt+q) = -4p^3-27q^2
    for (Fe a = 0; a < 7; ++a)
        for (Fe b = 0; b < 7; ++b) {
            Poly p = Poly::from_coeffs(f7, {b, a, 0, 1});
            Fe want = f7->sub(f7->mul(f7->from_int(-4), f7->pow_u64(a, 3)),
                              f7->mul(f7->from_int(27), f7->mul(b, b)));
            CHECK(discriminant(p) == want);
        }
    // disc(t^4+c) = 256 c^3 = -27*Res-style check at a bigger prime
    auto f101 = Field::make(101);
    for (Fe c = 1; c < 101; c += 7) {
        Poly p = Poly::from_coeffs(f101, {c, 0, 0, 0, 1});
        CHECK(discriminant(p) == f101->mul(f101->from_int(256), f101->pow_u64(c, 3)));
    }
    // inseparable degenerate case: f' = 0 over F_3
    auto f3 = Field::make(3);
    CHECK(discriminant(Poly::parse(f3, "t^3+1")) == 0);
    CHECK_THROWS(discriminant(Poly::constant(f3, 2)));
}

TEST_CASE("discriminant vanishes exactly on repeated roots") {
    for (std::uint64_t pq : {3ull, 5ull}) {
        auto f = Field::make(pq);
        for (unsigned n = 2; n <= 3; ++n)
            for (const auto& p : oracles::all_monic_of_degree(f, n)) {
                if (p.derivative().is_zero()) continue;  // convention: disc = 0
                bool repeated = false;
                for (const auto& [fac, mult] : oracles::factor_naive(p))
                    if (mult > 1) repeated = true;
                CHECK((discriminant(p) == 0) == repeated);
            }
    }
}

TEST_CASE("discriminant definition via resultant") {
    Rng rng(83);
    auto f11 = Field::make(11);
    for (int rep = 0; rep < 50; ++rep) {
        Poly p = rng.poly(f11, 5, true);
        if (p.is_constant() || p.derivative().is_zero()) continue;
        unsigned d = static_cast<unsigned>(p.degree());
        Fe res = oracles::sylvester_resultant(p, p.derivative());
        Fe want = f11->div(res, p.lc());
        if ((d * (d - 1) / 2) % 2 != 0) want = f11->neg(want);
        CHECK(discriminant(p) == want);
    }
}

TEST_CASE("interpolation recovers the polynomial") {
    Rng rng(97);
    for (auto spec : {std::pair<std::uint64_t, unsigned>{7, 1}, {3, 2}}) {
        auto f = Field::make(spec.first, spec.second);
        std::vector<Fe> xs;
        for (Fe x = 0; x < f->q(); ++x) xs.push_back(x);
        for (int rep = 0; rep < 30; ++rep) {
            Poly p = rng.poly(f, static_cast<int>(f->q()) - 1);
            std::vector<Fe> ys;
            for (Fe x : xs) ys.push_back(p.eval(x));
            CHECK(poly_interpolate(f, xs, ys) == p);
        }
    }
    auto f5 = Field::make(5);
    std::vector<Fe> bad{1, 1};
    std::vector<Fe> ys{0, 1};
    CHECK_THROWS(poly_interpolate(f5, bad, ys));
}

TEST_CASE("norm is q to the degree") {
    auto f9 = Field::make(3, 2);
    CHECK(Poly::zero(f9).norm() == 0);
    CHECK(Poly::constant(f9, 4).norm() == 1);
    CHECK(Poly::parse(f9, "0,0,0,1").norm() == 729);
}
