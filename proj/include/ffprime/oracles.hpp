#pragma once

#include "ffprime/partition.hpp"
#include "ffprime/poly.hpp"

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

// Slow reference implementations, independent of the production algorithms:
// trial division instead of Rabin/DDF, Sylvester determinants instead of the
// Euclidean recurrence, explicit S_k enumeration instead of Cauchy's formula.
// Used by the test suite and the CLI selftest.
namespace ffprime::oracles {

// all q^n monic polynomials of degree n, coefficient-odometer order
std::vector<Poly> all_monic_of_degree(const FieldPtr& f, unsigned n);

// irreducibility of the monic associate by trial division over all monic
// divisors of degree <= deg/2; constants are not irreducible
bool is_irreducible_naive(const Poly& f);

// full factorization of the monic associate by repeated smallest-divisor
// search; returns (factor, multiplicity), factors sorted
std::vector<std::pair<Poly, unsigned>> factor_naive(const Poly& f);

Partition cycle_type_naive(const Poly& f);

// Res(f,g) as the determinant of the (deg f + deg g) Sylvester matrix,
// Gaussian elimination over F_q
Fe sylvester_resultant(const Poly& f, const Poly& g);

std::uint64_t count_monic_irreducible_naive(const FieldPtr& f, unsigned n);

// partition function p(k) by the bounded-part recurrence
std::uint64_t partition_count(unsigned k);

// cycle-type census of S_k by explicit enumeration of all k! permutations
std::map<Partition, std::uint64_t> symmetric_group_census(unsigned k);

// primes in [x, x+u] by trial division
std::vector<std::uint64_t> primes_in_window_naive(std::uint64_t x, std::uint64_t u);

}  // namespace ffprime::oracles
