#pragma once

#include "ffprime/rational.hpp"

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ffprime {

// Cycle type lambda |- k: mults[j-1] parts of size j, sum j*mults[j-1] = k.
class Partition {
public:
    Partition(unsigned k, std::vector<std::uint32_t> mults);
    static Partition single_cycle(unsigned k);
    static Partition parse(std::string_view s);  // "3+1+1"

    unsigned k() const { return k_; }
    std::uint32_t mult(unsigned j) const {
        return (j >= 1 && j <= k_) ? mults_[j - 1] : 0;
    }
    const std::vector<std::uint32_t>& mults() const { return mults_; }
    std::vector<unsigned> parts() const;  // descending
    std::string to_string() const;

    bool operator==(const Partition& o) const = default;
    auto operator<=>(const Partition& o) const = default;

private:
    unsigned k_;
    std::vector<std::uint32_t> mults_;  // length k_
};

// All partitions of k, descending-part lexicographic: (k) first, (1,...,1) last.
std::vector<Partition> partitions_of(unsigned k);

// Cauchy's formula: probability that a uniform permutation in S_k has cycle
// type lambda, prod_j 1/(j^mult_j * mult_j!). Exact.
Rational cauchy_probability(const Partition& lambda);

// prod_i p(lambda_i); non-empty input
Rational class_probability(std::span<const Partition> lambdas);

}  // namespace ffprime
