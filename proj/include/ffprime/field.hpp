#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ffprime {

// Element of F_q in canonical index form: for q = p^e the element with
// coordinates (c_0,...,c_{e-1}) over F_p has index c_0 + c_1 p + ... + c_{e-1} p^{e-1}.
using Fe = std::uint32_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// The coefficient field F_q, q = p^e. Immutable after construction; all
// operations are pure, so instances are safe to share across threads.
//
// For q <= kTableLimit full add/mul/inv tables are precomputed and every
// operation is a table lookup; larger fields fall back to direct arithmetic
// (modular for e = 1, coordinate polynomials mod the modulus otherwise).
class Field {
public:
    static constexpr std::uint64_t kTableLimit = 1024;
    static constexpr std::uint64_t kMaxP = (1ull << 31) - 1;

    // modulus, when given, is the coefficient list (low to high) of a monic
    // irreducible of degree e over F_p. When omitted for e > 1, the
    // lexicographically smallest monic irreducible is selected (coefficient
    // lists compared low-degree-first), so runs are reproducible.
    // p = 2 is rejected unless allow_char2 is set.
    static FieldPtr make(std::uint64_t p, unsigned e = 1,
                         const std::vector<std::uint32_t>* modulus = nullptr,
                         bool allow_char2 = false);

    // "5" or "3^2".
    static FieldPtr parse(std::string_view spec, bool allow_char2 = false);

    std::uint64_t p() const { return p_; }
    unsigned e() const { return e_; }
    std::uint64_t q() const { return q_; }
    bool char2_override() const { return char2_override_; }
    // monic modulus coefficients over F_p, low to high, length e+1 (e > 1 only).
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    Fe zero() const { return 0; }
    Fe one() const { return 1; }

    Fe add(Fe a, Fe b) const {
        if (!add_tab_.empty()) return add_tab_[a * q_ + b];
        return add_slow(a, b);
    }
    Fe sub(Fe a, Fe b) const { return add(a, neg(b)); }
    Fe neg(Fe a) const {
        if (!neg_tab_.empty()) return neg_tab_[a];
        return neg_slow(a);
    }
    Fe mul(Fe a, Fe b) const {
        if (!mul_tab_.empty()) return mul_tab_[a * q_ + b];
        return mul_slow(a, b);
    }
    Fe inv(Fe a) const;               // throws on a = 0
    Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }
    Fe pow_u64(Fe a, std::uint64_t n) const;
    Fe frobenius(Fe a) const { return pow_u64(a, p_); }
    Fe pth_root(Fe a) const;          // inverse of frobenius: a^(q/p)
    bool is_square(Fe a) const;       // 0 counts as a square
    std::optional<Fe> sqrt(Fe a) const;

    // integer (possibly negative) reduced into the prime subfield
    Fe from_int(long long v) const;

    std::vector<std::uint32_t> coords(Fe a) const;
    Fe from_coords(std::span<const std::uint32_t> c) const;

    // "4" for prime fields, "[1 2]" coordinate form for extensions
    std::string fe_to_string(Fe a) const;
    Fe fe_parse(std::string_view s) const;

    std::string to_string() const;    // "5" or "3^2"
    bool same(const Field& other) const;

private:
    Field() = default;
    void build_tables();
    Fe add_slow(Fe a, Fe b) const;
    Fe neg_slow(Fe a) const;
    Fe mul_slow(Fe a, Fe b) const;

    std::uint64_t p_ = 0;
    unsigned e_ = 1;
    std::uint64_t q_ = 0;
    bool char2_override_ = false;
    std::vector<std::uint32_t> modulus_;  // empty when e == 1

    std::vector<std::uint16_t> add_tab_, mul_tab_, neg_tab_, inv_tab_;
    std::vector<std::uint8_t> sqr_tab_;
};

bool is_prime_u64(std::uint64_t n);

// Factors a prime power q = p^e; throws if q is not a prime power.
std::pair<std::uint64_t, unsigned> factor_prime_power(std::uint64_t q);

}  // namespace ffprime
