#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ffprime/factorize.hpp"
#include "ffprime/oracles.hpp"

#include <map>
#include <set>

using namespace ffprime;

namespace {

Poly pow_poly(const Poly& base, unsigned e) {
    Poly acc = Poly::one(base.field());
    for (unsigned i = 0; i < e; ++i) acc = acc * base;
    return acc;
}

}  // namespace

TEST_CASE("primality matches trial division exhaustively") {
    struct Grid { std::uint64_t p; unsigned e, maxdeg; };
    for (Grid g : {Grid{3, 1, 5}, Grid{5, 1, 4}, Grid{3, 2, 3}}) {
        auto f = Field::make(g.p, g.e);
        for (unsigned n = 1; n <= g.maxdeg; ++n)
            for (const auto& poly : oracles::all_monic_of_degree(f, n))
                CHECK(is_prime_poly(poly) == oracles::is_irreducible_naive(poly));
    }
}

TEST_CASE("primality edge cases and the associate flag") {
    auto f5 = Field::make(5);
    CHECK_THROWS(is_prime_poly(Poly::zero(f5)));
    CHECK_FALSE(is_prime_poly(Poly::constant(f5, 3)));
    CHECK(is_prime_poly(Poly::parse(f5, "t+2")));
    Poly irr = Poly::parse(f5, "t^2+2");
    CHECK(is_prime_poly(irr));
    // 3(t^2+2) is not monic: rejected by default, accepted as associate
    Poly scaled = irr.scaled(3);
    CHECK_FALSE(is_prime_poly(scaled));
    CHECK(is_prime_poly(scaled, true));
    // associate of a reducible stays reducible
    CHECK_FALSE(is_prime_poly(Poly::parse(f5, "t^2+1").scaled(2), true));
}

TEST_CASE("squarefree decomposition invariants") {
    for (auto spec : {std::pair<std::uint64_t, unsigned>{3, 1}, {5, 1}, {3, 2}}) {
        auto f = Field::make(spec.first, spec.second);
        for (unsigned n = 1; n <= 4; ++n)
            for (const auto& poly : oracles::all_monic_of_degree(f, n)) {
                auto parts = squarefree_decompose(poly);
                Poly prod = Poly::one(f);
                unsigned prev = 0;
                for (const auto& [g, m] : parts) {
                    CHECK(m > prev);       // strictly increasing multiplicities
                    prev = m;
                    CHECK(g.is_monic());
                    CHECK(g.degree() >= 1);
                    // g squarefree: gcd(g, g') constant
                    CHECK(poly_gcd(g, g.derivative()).is_constant());
                    prod = prod * pow_poly(g, m);
                }
                // pairwise coprime
                for (std::size_t i = 0; i < parts.size(); ++i)
                    for (std::size_t j = i + 1; j < parts.size(); ++j)
                        CHECK(poly_gcd(parts[i].first, parts[j].first).is_constant());
                CHECK(prod == poly);
            }
    }
}

TEST_CASE("squarefree decomposition at p-th power multiplicities") {
    auto f3 = Field::make(3);
    // (t^2+1)^3 over F_3: derivative vanishes, needs the p-th-root path
    Poly g = Poly::parse(f3, "t^2+1");
    auto parts = squarefree_decompose(pow_poly(g, 3));
    REQUIRE(parts.size() == 1);
    CHECK(parts[0].first == g);
    CHECK(parts[0].second == 3);
    // (t+1)^9: two levels of p-th roots
    parts = squarefree_decompose(pow_poly(Poly::parse(f3, "t+1"), 9));
    REQUIRE(parts.size() == 1);
    CHECK(parts[0].first == Poly::parse(f3, "t+1"));
    CHECK(parts[0].second == 9);
    // mixed: (t+1)^2 (t+2)^3 t
    Poly mixed = pow_poly(Poly::parse(f3, "t+1"), 2) *
                 pow_poly(Poly::parse(f3, "t+2"), 3) * Poly::var(f3);
    parts = squarefree_decompose(mixed);
    REQUIRE(parts.size() == 3);
    CHECK(parts[0] == std::pair{Poly::var(f3), 1u});
    CHECK(parts[1] == std::pair{Poly::parse(f3, "t+1"), 2u});
    CHECK(parts[2] == std::pair{Poly::parse(f3, "t+2"), 3u});
    // non-monic input decomposes its monic associate
    auto f5 = Field::make(5);
    auto scaled = squarefree_decompose(Poly::parse(f5, "t^2+1").scaled(3));
    Poly prod = Poly::one(f5);
    for (const auto& [h, m] : scaled) prod = prod * pow_poly(h, m);
    CHECK(prod == Poly::parse(f5, "t^2+1"));
    CHECK_THROWS(squarefree_decompose(Poly::zero(f5)));
    CHECK(squarefree_decompose(Poly::constant(f5, 4)).empty());
}

TEST_CASE("distinct degree profile") {
    auto f5 = Field::make(5);
    // (t+1)(t+2)(t^2+2): two linear factors, one quadratic
    Poly p = Poly::parse(f5, "t+1") * Poly::parse(f5, "t+2") * Poly::parse(f5, "t^2+2");
    auto prof = distinct_degree_profile(p);
    CHECK(prof == std::map<unsigned, unsigned>{{1, 2}, {2, 1}});
    // squarefree is required
    CHECK_THROWS(distinct_degree_profile(Poly::parse(f5, "t^2+2t+1")));
    CHECK_THROWS(distinct_degree_profile(Poly::constant(f5, 1)));
    // profile of an irreducible is {deg: 1}
    CHECK(distinct_degree_profile(Poly::parse(f5, "t^2+2")) ==
          std::map<unsigned, unsigned>{{2, 1}});
}

TEST_CASE("distinct degree profile sums to the degree") {
    auto f7 = Field::make(7);
    for (unsigned n = 1; n <= 3; ++n)
        for (const auto& poly : oracles::all_monic_of_degree(f7, n)) {
            if (!poly_gcd(poly, poly.derivative()).is_constant()) continue;
            unsigned total = 0, naive_factors = 0;
            auto prof = distinct_degree_profile(poly);
            for (auto [d, c] : prof) total += d * c;
            CHECK(total == n);
            auto fac = oracles::factor_naive(poly);
            for (const auto& [g, m] : fac) {
                CHECK(m == 1);
                ++naive_factors;
                CHECK(prof[static_cast<unsigned>(g.degree())] >= 1);
            }
            unsigned prof_count = 0;
            for (auto [d, c] : prof) prof_count += c;
            CHECK(prof_count == naive_factors);
        }
}

TEST_CASE("cycle type matches trial division exhaustively") {
    struct Grid { std::uint64_t p; unsigned e, maxdeg; };
    for (Grid g : {Grid{3, 1, 5}, Grid{5, 1, 4}, Grid{3, 2, 3}}) {
        auto f = Field::make(g.p, g.e);
        for (unsigned n = 1; n <= g.maxdeg; ++n)
            for (const auto& poly : oracles::all_monic_of_degree(f, n))
                CHECK(cycle_type(poly) == oracles::cycle_type_naive(poly));
    }
    auto f5 = Field::make(5);
    CHECK_THROWS(cycle_type(Poly::constant(f5, 2)));
}

TEST_CASE("cycle type spot values") {
    auto f5 = Field::make(5);
    CHECK(cycle_type(Poly::parse(f5, "t^2+2")) == Partition::single_cycle(2));
    CHECK(cycle_type(Poly::parse(f5, "t^2+2t+1")).to_string() == "1+1");
    Poly p = Poly::parse(f5, "t+1") * Poly::parse(f5, "t+2") * Poly::parse(f5, "t^2+2");
    CHECK(cycle_type(p) == Partition::parse("2+1+1"));
    // non-monic input: cycle type of the associate
    CHECK(cycle_type(p.scaled(4)) == Partition::parse("2+1+1"));
}

TEST_CASE("irreducible counts match Gauss formula and naive counting") {
    for (std::uint64_t q : {3ull, 5ull, 9ull}) {
        auto [p, e] = factor_prime_power(q);
        auto f = Field::make(p, e);
        for (unsigned n = 1; n <= 4; ++n) {
            BigInt formula = gauss_irreducible_count(q, n);
            CHECK(formula == BigInt(oracles::count_monic_irreducible_naive(f, n)));
        }
    }
    CHECK(gauss_irreducible_count(5, 1) == 5);
    CHECK(gauss_irreducible_count(5, 3) == 40);    // (125-5)/3
    CHECK(gauss_irreducible_count(3, 4) == 18);    // (81-9)/4
    CHECK(gauss_irreducible_count(3, 5) == 48);    // (243-3)/5
    CHECK(gauss_irreducible_count(13, 2) == 78);   // (169-13)/2
    CHECK(gauss_irreducible_count(2, 6) == 9);
    CHECK_THROWS(gauss_irreducible_count(5, 0));
}

TEST_CASE("prime counts approach q^n / n") {
    // within-factor-2 sanity that the density matches 1/n
    for (std::uint64_t q : {7ull, 11ull}) {
        for (unsigned n = 2; n <= 5; ++n) {
            BigInt count = gauss_irreducible_count(q, n);
            BigInt total = big_pow(q, n);
            CHECK(count * (2 * n) >= total);
            CHECK(count * n <= total);
        }
    }
}
