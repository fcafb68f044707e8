#pragma once

#include "ffprime/partition.hpp"
#include "ffprime/poly.hpp"
#include "ffprime/rational.hpp"

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace ffprime {

// Prime = monic irreducible of degree >= 1. With associate set, monicity is
// waived: the monic associate is tested instead (unit factors carry no
// factorization data). Irreducibility via Rabin's test: f | t^{q^n} - t and
// gcd(f, t^{q^{n/r}} - t) constant for every prime r | n. Zero throws.
bool is_prime_poly(const Poly& f, bool associate = false);

// f = prod g_i^{m_i} with g_i squarefree, pairwise coprime, deg g_i >= 1,
// multiplicities strictly increasing. Returns (g_i, m_i) pairs; empty for
// constants. Char-p aware: handles f' = 0 via p-th roots. Zero throws.
std::vector<std::pair<Poly, unsigned>> squarefree_decompose(const Poly& f);

// Distinct-degree profile of a squarefree f (its monic associate): maps
// degree d to the number of irreducible factors of degree d, omitting zero
// entries. Throws if f is not squarefree or deg f < 1.
std::map<unsigned, unsigned> distinct_degree_profile(const Poly& f);

// Cycle type of f: partition of deg f whose multiplicity of j counts
// irreducible factors of degree j (with multiplicity). Requires deg f >= 1.
Partition cycle_type(const Poly& f);

// Number of monic irreducibles of degree n over F_q: (1/n) sum_{d|n} mu(d) q^{n/d}.
BigInt gauss_irreducible_count(std::uint64_t q, unsigned n);

}  // namespace ffprime
