#include "ffprime/disc_lab.hpp"

#include "ffprime/factorize.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ffprime {

namespace {

constexpr std::uint64_t kEmbedScanLimit = 1u << 20;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// counter-based per-trial draw, independent of evaluation order
Fe draw(std::uint64_t seed, std::uint64_t trial, unsigned j, std::uint64_t q) {
    return static_cast<Fe>(splitmix64(splitmix64(seed ^ (trial * 0xd1342543de82ef95ull)) +
                                      j) %
                           q);
}

}  // namespace

Embedding::Embedding(FieldPtr small, unsigned s) : small_(std::move(small)) {
    if (s < 1) throw std::invalid_argument("embedding: s must be >= 1");
    const auto p = small_->p();
    const unsigned e = small_->e();
    big_ = Field::make(p, e * s, nullptr, small_->char2_override());
    if (big_->q() > kEmbedScanLimit)
        throw std::invalid_argument("embedding: target field too large to scan");

    Fe root = 0;
    if (e == 1) {
        // prime subfield embeds index-wise; x = image of t is irrelevant
        root = 0;
    } else {
        // lowest root of the small modulus inside the big field
        const auto& mod = small_->modulus();
        bool found = false;
        for (std::uint64_t y = 0; y < big_->q() && !found; ++y) {
            Fe acc = 0;
            for (std::size_t i = mod.size(); i-- > 0;)
                acc = big_->add(big_->mul(acc, static_cast<Fe>(y)),
                                static_cast<Fe>(mod[i]));
            if (acc == 0) {
                root = static_cast<Fe>(y);
                found = true;
            }
        }
        if (!found) throw std::logic_error("embedding: modulus has no root in target");
    }

    fwd_tab_.resize(small_->q());
    for (std::uint64_t v = 0; v < small_->q(); ++v) {
        auto coords = small_->coords(static_cast<Fe>(v));
        Fe acc = 0;
        for (std::size_t i = coords.size(); i-- > 0;)
            acc = big_->add(big_->mul(acc, root), static_cast<Fe>(coords[i]));
        fwd_tab_[v] = acc;
        back_tab_[acc] = static_cast<Fe>(v);
    }
    if (back_tab_.size() != small_->q())
        throw std::logic_error("embedding: map is not injective");
}

Fe Embedding::fwd(Fe a) const { return fwd_tab_.at(a); }

std::optional<Fe> Embedding::back(Fe a) const {
    auto it = back_tab_.find(a);
    if (it == back_tab_.end()) return std::nullopt;
    return it->second;
}

Poly Embedding::fwd(const Poly& f) const {
    std::vector<Fe> c;
    c.reserve(static_cast<std::size_t>(f.degree() + 1));
    for (int i = 0; i <= f.degree(); ++i) c.push_back(fwd(f.coeff(i)));
    return Poly::from_coeffs(big_, std::move(c));
}

std::optional<Poly> Embedding::back(const FieldPtr& target, const Poly& f) const {
    std::vector<Fe> c;
    c.reserve(static_cast<std::size_t>(f.degree() + 1));
    for (int i = 0; i <= f.degree(); ++i) {
        auto v = back(f.coeff(i));
        if (!v) return std::nullopt;
        c.push_back(*v);
    }
    return Poly::from_coeffs(target, std::move(c));
}

Poly disc_in_A0(const LinearFunction& L, const Poly& f0, unsigned m,
                std::span<const Fe> a) {
    const FieldPtr& field = f0.field();
    if (!L.f().field()->same(*field))
        throw std::invalid_argument("disc_in_A0: field mismatch");
    if (m < 2 || static_cast<int>(m) >= f0.degree())
        throw std::invalid_argument("disc_in_A0: need 2 <= m < deg f0");
    if (a.size() != m)
        throw std::invalid_argument("disc_in_A0: need exactly m specialized coefficients");
    Poly ftilde = L.apply(f0);
    if (ftilde.degree() <= L.g().degree() + static_cast<int>(m))
        throw std::invalid_argument(
            "disc_in_A0: reduced condition deg(f + g*f0) > deg(g) + m fails");

    // base(t) = L(f0 + a_1 t + ... + a_m t^m); adding g*A_0 never changes deg
    std::vector<Fe> pert(m + 1, 0);
    for (unsigned j = 1; j <= m; ++j) pert[j] = a[j - 1];
    Poly base = L.apply(f0 + Poly::from_coeffs(field, std::move(pert)));
    const unsigned D = static_cast<unsigned>(base.degree());
    const unsigned nodes = 2 * D + 1;

    auto interpolate_disc = [nodes](const Poly& base_f, const Poly& g_f) {
        const FieldPtr& f = base_f.field();
        std::vector<Fe> xs(nodes), ys(nodes);
        for (unsigned i = 0; i < nodes; ++i) {
            xs[i] = static_cast<Fe>(i);
            ys[i] = discriminant(base_f + g_f.scaled(xs[i]));
        }
        return poly_interpolate(f, xs, ys);
    };

    Poly result = Poly::zero(field);
    if (field->q() >= nodes) {
        result = interpolate_disc(base, L.g());
    } else {
        unsigned s = 2;
        while (big_pow(field->q(), s) < nodes) ++s;
        Embedding emb(field, s);
        Poly big = interpolate_disc(emb.fwd(base), emb.fwd(L.g()));
        auto mapped = emb.back(field, big);
        if (!mapped)
            throw std::logic_error("disc_in_A0: coefficients escaped the base field");
        result = *mapped;
    }
    // a-priori A_0-degree bound 2D-1; one spare node checks it
    if (result.degree() > 2 * static_cast<int>(D) - 1)
        throw std::logic_error("disc_in_A0: interpolation exceeded the degree bound");
    return result;
}

bool is_perfect_square_poly(const Poly& d) {
    if (d.is_zero()) return true;
    if (d.is_constant()) return d.F().is_square(d.lc());
    if (!d.F().is_square(d.lc())) return false;
    for (const auto& [g, mult] : squarefree_decompose(d)) {
        (void)g;
        if (mult % 2 != 0) return false;
    }
    return true;
}

namespace {

struct TrialData {
    std::vector<Poly> d;  // one disc poly per line
    std::vector<Fe> a;
};

// all trials' discriminant polynomials, order-independent across workers
std::vector<TrialData> run_trials(const std::vector<LinearFunction>& lines,
                                  const Poly& f0, unsigned m, std::uint64_t trials,
                                  std::uint64_t seed, int workers) {
    const std::uint64_t q = f0.F().q();
    std::vector<TrialData> out(trials, TrialData{{}, {}});
#ifdef _OPENMP
    if (workers > 0) omp_set_num_threads(workers);
#else
    (void)workers;
#endif
#pragma omp parallel for schedule(static)
    for (std::int64_t tr = 0; tr < static_cast<std::int64_t>(trials); ++tr) {
        std::vector<Fe> a(m);
        for (unsigned j = 0; j < m; ++j)
            a[j] = draw(seed, static_cast<std::uint64_t>(tr), j, q);
        TrialData td;
        td.a = a;
        for (const auto& L : lines) td.d.push_back(disc_in_A0(L, f0, m, a));
        out[static_cast<std::size_t>(tr)] = std::move(td);
    }
    return out;
}

std::vector<int> reference_degrees(const std::vector<TrialData>& data, std::size_t n) {
    std::vector<int> ref(n, Poly::kZeroDeg);
    for (const auto& td : data)
        for (std::size_t i = 0; i < n; ++i) ref[i] = std::max(ref[i], td.d[i].degree());
    return ref;
}

bool is_degenerate(const TrialData& td, const std::vector<int>& ref) {
    for (std::size_t i = 0; i < td.d.size(); ++i)
        if (td.d[i].is_zero() || td.d[i].degree() < ref[i]) return true;
    return false;
}

// +1 if d is a square, -1 if -d is, 0 if neither
int square_sign(const Poly& d) {
    if (is_perfect_square_poly(d)) return 1;
    if (is_perfect_square_poly(-d)) return -1;
    return 0;
}

void require_disc_preconditions(const std::vector<LinearFunction>& lines, const Poly& f0,
                                unsigned m) {
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j)
            if (!strongly_distinct(lines[i], lines[j]))
                throw std::invalid_argument("disc lab: lines " + std::to_string(i + 1) +
                                            " and " + std::to_string(j + 1) +
                                            " are proportional");
    // surface precondition failures before spending trials
    std::vector<Fe> zeros(m, 0);
    for (const auto& L : lines) (void)disc_in_A0(L, f0, m, zeros);
}

}  // namespace

SpecializationReport check_pair(const LinearFunction& L1, const LinearFunction& L2,
                                const Poly& f0, unsigned m, std::uint64_t trials,
                                std::uint64_t seed, int workers) {
    std::vector<LinearFunction> lines{L1, L2};
    require_disc_preconditions(lines, f0, m);
    SpecializationReport rep;
    rep.q = f0.F().q();
    rep.m = m;
    rep.trials = trials;
    rep.seed = seed;
    rep.nonsquare_failures.assign(2, 0);
    if (trials == 0) {
        rep.ref_degrees.assign(2, Poly::kZeroDeg);
        return rep;
    }

    auto data = run_trials(lines, f0, m, trials, seed, workers);
    rep.ref_degrees = reference_degrees(data, 2);
    for (std::uint64_t tr = 0; tr < trials; ++tr) {
        const auto& td = data[tr];
        if (is_degenerate(td, rep.ref_degrees)) {
            ++rep.degenerate;
            rep.witnesses.push_back({tr, "degenerate", "", 0, td.a});
            continue;
        }
        if (!poly_gcd(td.d[0], td.d[1]).is_constant()) {
            ++rep.coprime_failures;
            rep.witnesses.push_back({tr, "coprime", "1,2", 0, td.a});
        } else {
            ++rep.successes;
        }
        for (std::size_t i = 0; i < 2; ++i) {
            int sign = square_sign(td.d[i]);
            if (sign != 0) {
                ++rep.nonsquare_failures[i];
                rep.witnesses.push_back({tr, "square", std::to_string(i + 1), sign, td.a});
            }
        }
    }
    return rep;
}

SpecializationReport square_independence_check(const std::vector<LinearFunction>& lines,
                                               const Poly& f0, unsigned m,
                                               std::uint64_t trials, std::uint64_t seed,
                                               int workers) {
    const std::size_t n = lines.size();
    if (n < 1 || n > 5)
        throw std::invalid_argument("square_independence_check: need 1 <= n <= 5 lines");
    require_disc_preconditions(lines, f0, m);

    SpecializationReport rep;
    rep.q = f0.F().q();
    rep.m = m;
    rep.trials = trials;
    rep.seed = seed;
    rep.nonsquare_failures.assign(n, 0);

    std::vector<std::string> subset_names;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::string name;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) {
                if (!name.empty()) name += ',';
                name += std::to_string(i + 1);
            }
        subset_names.push_back(name);
        rep.subset_failures[name] = 0;
    }
    if (trials == 0) {
        rep.ref_degrees.assign(n, Poly::kZeroDeg);
        return rep;
    }

    auto data = run_trials(lines, f0, m, trials, seed, workers);
    rep.ref_degrees = reference_degrees(data, n);
    for (std::uint64_t tr = 0; tr < trials; ++tr) {
        const auto& td = data[tr];
        if (is_degenerate(td, rep.ref_degrees)) {
            ++rep.degenerate;
            rep.witnesses.push_back({tr, "degenerate", "", 0, td.a});
            continue;
        }
        bool any_failure = false;
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            Poly prod = Poly::one(f0.field());
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1u << i)) prod = prod * td.d[i];
            int sign = square_sign(prod);
            if (sign != 0) {
                any_failure = true;
                const std::string& name = subset_names[mask - 1];
                ++rep.subset_failures[name];
                rep.witnesses.push_back({tr, "square", name, sign, td.a});
                if (mask != 0 && (mask & (mask - 1)) == 0) {
                    // singleton subset doubles as the per-line tally
                    for (std::size_t i = 0; i < n; ++i)
                        if (mask == (1u << i)) ++rep.nonsquare_failures[i];
                }
            }
        }
        if (!any_failure) ++rep.successes;
    }
    return rep;
}

}  // namespace ffprime
