#pragma once

#include "ffprime/linear.hpp"
#include "ffprime/poly.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ffprime {

// F_{p^e} -> F_{p^(e*s)}: coordinate map through a root of the small field's
// modulus, scanned deterministically (lowest element index wins). Gives
// disc_in_A0 enough interpolation nodes when q is small.
class Embedding {
public:
    Embedding(FieldPtr small, unsigned s);

    const FieldPtr& small() const { return small_; }
    const FieldPtr& big() const { return big_; }
    Fe fwd(Fe a) const;
    std::optional<Fe> back(Fe a) const;
    Poly fwd(const Poly& f) const;
    std::optional<Poly> back(const FieldPtr& target, const Poly& f) const;

private:
    FieldPtr small_, big_;
    std::vector<Fe> fwd_tab_;
    std::map<Fe, Fe> back_tab_;
};

// disc_t(L(f0 + a_1 t + ... + a_m t^m + A_0)) as a polynomial in A_0,
// computed by evaluation at 2D+1 nodes (D = deg of the image) and
// interpolation, switching to an extension field when q < 2D+1.
// Preconditions: 2 <= m < deg f0, |a| = m, deg(f_L + g_L*f0) > deg(g_L) + m.
Poly disc_in_A0(const LinearFunction& L, const Poly& f0, unsigned m,
                std::span<const Fe> a);

// d = e^2 for some e in F_q[t]: every squarefree multiplicity even and lc a
// square. Zero counts as a square, constants defer to the field test.
bool is_perfect_square_poly(const Poly& d);

struct DiscWitness {
    std::uint64_t trial = 0;
    std::string kind;     // "degenerate" | "coprime" | "square"
    std::string subject;  // line index or subset, e.g. "2" or "1,3"
    int sign = 0;         // square kind: +1 if d was square, -1 if -d was
    std::vector<Fe> a;    // the specialization (a_1,...,a_m)
};

struct SpecializationReport {
    std::uint64_t q = 0;
    unsigned m = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t coprime_failures = 0;              // pair mode
    std::vector<std::uint64_t> nonsquare_failures;   // pair mode, per line
    std::map<std::string, std::uint64_t> subset_failures;  // independence mode
    std::uint64_t degenerate = 0;
    std::uint64_t successes = 0;  // trials - degenerate - failed trials
    std::vector<int> ref_degrees;  // max observed deg of each d_i (degree-drop reference)
    std::vector<DiscWitness> witnesses;
};

// Samples `trials` specializations a in F_q^m (counter-based seeded RNG,
// worker-count independent): tallies gcd(d_1,d_2) nonconstant, each d_i or
// -d_i a perfect square, and degenerate draws (d_i zero or degree below the
// run's reference degree).
SpecializationReport check_pair(const LinearFunction& L1, const LinearFunction& L2,
                                const Poly& f0, unsigned m, std::uint64_t trials,
                                std::uint64_t seed, int workers = 0);

// For every non-empty subset S of lines (n <= 5): tests prod_{i in S} d_i
// for squareness (both signs), tallying failures per subset.
SpecializationReport square_independence_check(const std::vector<LinearFunction>& lines,
                                               const Poly& f0, unsigned m,
                                               std::uint64_t trials, std::uint64_t seed,
                                               int workers = 0);

}  // namespace ffprime
