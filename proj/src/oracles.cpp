#include "ffprime/oracles.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ffprime::oracles {

std::vector<Poly> all_monic_of_degree(const FieldPtr& f, unsigned n) {
    const std::uint64_t q = f->q();
    std::uint64_t total = 1;
    for (unsigned i = 0; i < n; ++i) {
        if (total > (1ull << 40) / q)
            throw std::invalid_argument("all_monic_of_degree: enumeration too large");
        total *= q;
    }
    std::vector<Poly> out;
    out.reserve(total);
    std::vector<Fe> c(n + 1, 0);
    c[n] = 1;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t v = idx;
        for (unsigned j = 0; j < n; ++j) {
            c[j] = static_cast<Fe>(v % q);
            v /= q;
        }
        out.push_back(Poly::from_coeffs(f, c));
    }
    return out;
}

bool is_irreducible_naive(const Poly& f) {
    if (f.is_constant()) return false;
    const Poly m = f.monic();
    const unsigned n = static_cast<unsigned>(m.degree());
    for (unsigned d = 1; 2 * d <= n; ++d)
        for (const Poly& g : all_monic_of_degree(f.field(), d))
            if (poly_mod(m, g).is_zero()) return false;
    return true;
}

std::vector<std::pair<Poly, unsigned>> factor_naive(const Poly& f) {
    if (f.is_zero()) throw std::invalid_argument("factor_naive: zero polynomial");
    std::vector<std::pair<Poly, unsigned>> out;
    Poly rest = f.is_constant() ? Poly::one(f.field()) : f.monic();
    while (!rest.is_constant()) {
        // smallest monic divisor of positive degree is irreducible
        Poly found = rest;
        for (unsigned d = 1; 2 * d <= static_cast<unsigned>(rest.degree()) && found == rest; ++d)
            for (const Poly& g : all_monic_of_degree(f.field(), d)) {
                if (poly_mod(rest, g).is_zero()) {
                    found = g;
                    break;
                }
            }
        unsigned mult = 0;
        while (poly_mod(rest, found).is_zero()) {
            rest = poly_div_exact(rest, found);
            ++mult;
        }
        out.emplace_back(found, mult);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        auto ca = a.first.coeffs(), cb = b.first.coeffs();
        return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
    });
    return out;
}

Partition cycle_type_naive(const Poly& f) {
    if (f.degree() < 1) throw std::invalid_argument("cycle_type_naive: need degree >= 1");
    const unsigned k = static_cast<unsigned>(f.degree());
    std::vector<std::uint32_t> mults(k, 0);
    for (const auto& [g, m] : factor_naive(f))
        mults[static_cast<unsigned>(g.degree()) - 1] += m;
    return Partition(k, std::move(mults));
}

Fe sylvester_resultant(const Poly& f, const Poly& g) {
    if (f.is_zero() || g.is_zero())
        throw std::invalid_argument("sylvester_resultant: zero input");
    const Field& F = f.F();
    const int m = f.degree(), n = g.degree();
    if (m == 0) return F.pow_u64(f.lc(), static_cast<std::uint64_t>(n));
    if (n == 0) return F.pow_u64(g.lc(), static_cast<std::uint64_t>(m));
    const int N = m + n;
    std::vector<Fe> M(static_cast<std::size_t>(N) * N, 0);
    auto at = [&](int r, int c) -> Fe& { return M[static_cast<std::size_t>(r) * N + c]; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) at(i, i + j) = f.coeff(m - j);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) at(n + i, i + j) = g.coeff(n - j);

    // determinant by elimination; row swaps flip the sign
    Fe det = F.one();
    for (int col = 0; col < N; ++col) {
        int piv = -1;
        for (int r = col; r < N; ++r)
            if (at(r, col) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return 0;
        if (piv != col) {
            for (int c = col; c < N; ++c) std::swap(at(piv, c), at(col, c));
            det = F.neg(det);
        }
        det = F.mul(det, at(col, col));
        Fe pinv = F.inv(at(col, col));
        for (int r = col + 1; r < N; ++r) {
            if (at(r, col) == 0) continue;
            Fe factor = F.mul(at(r, col), pinv);
            for (int c = col; c < N; ++c)
                at(r, c) = F.sub(at(r, c), F.mul(factor, at(col, c)));
        }
    }
    return det;
}

std::uint64_t count_monic_irreducible_naive(const FieldPtr& f, unsigned n) {
    std::uint64_t cnt = 0;
    for (const Poly& g : all_monic_of_degree(f, n))
        if (is_irreducible_naive(g)) ++cnt;
    return cnt;
}

std::uint64_t partition_count(unsigned k) {
    // table[j] = partitions of j with parts <= current cap
    std::vector<std::uint64_t> table(k + 1, 0);
    table[0] = 1;
    for (unsigned part = 1; part <= k; ++part)
        for (unsigned j = part; j <= k; ++j) table[j] += table[j - part];
    return table[k];
}

std::map<Partition, std::uint64_t> symmetric_group_census(unsigned k) {
    if (k == 0 || k > 9)
        throw std::invalid_argument("symmetric_group_census: k out of range [1,9]");
    std::map<Partition, std::uint64_t> out;
    std::vector<unsigned> perm(k);
    std::iota(perm.begin(), perm.end(), 0u);
    do {
        std::vector<std::uint32_t> mults(k, 0);
        std::vector<bool> seen(k, false);
        for (unsigned s = 0; s < k; ++s) {
            if (seen[s]) continue;
            unsigned len = 0, cur = s;
            while (!seen[cur]) {
                seen[cur] = true;
                cur = perm[cur];
                ++len;
            }
            ++mults[len - 1];
        }
        out[Partition(k, std::move(mults))] += 1;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

std::vector<std::uint64_t> primes_in_window_naive(std::uint64_t x, std::uint64_t u) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t v = x; v <= x + u; ++v) {
        if (v < 2) continue;
        bool prime = v == 2 || (v % 2 != 0);
        for (std::uint64_t d = 3; prime && d * d <= v; d += 2)
            if (v % d == 0) prime = false;
        if (prime) out.push_back(v);
    }
    return out;
}

}  // namespace ffprime::oracles
