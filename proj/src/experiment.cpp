#include "ffprime/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ffprime {

namespace {

std::optional<unsigned> image_degree(const ExperimentInstance& inst, std::size_t i) {
    Poly img = inst.lines[i].apply(inst.f0);
    if (img.degree() < 1) return std::nullopt;
    return static_cast<unsigned>(img.degree());
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start)
            .count();
    }
};

// per-chunk tallies, merged in chunk order
struct ChunkTally {
    std::uint64_t observed = 0;
    std::uint64_t degenerate = 0;
    std::map<CensusKey, std::uint64_t> census;
};

// Coefficient-buffer kernel: walks one top-digit chunk of the interval in
// odometer order, updating each image in place as digits roll (a digit change
// from u to v adds (v-u)*g_i*t^j to image i).
class ChunkWalker {
public:
    ChunkWalker(const ExperimentInstance& inst, const Interval& iv, bool census)
        : inst_(inst), F_(*inst.field), census_(census), m_(iv.m()) {
        q_ = F_.q();
        inner_total_ = 1;
        for (unsigned j = 0; j < m_; ++j) inner_total_ *= q_;
        for (std::size_t i = 0; i < inst.lines.size(); ++i) {
            const auto& L = inst_.lines[i];
            Poly img0 = L.apply(inst_.f0);
            LineState s;
            s.g.assign(L.g().coeffs().begin(), L.g().coeffs().end());
            unsigned len = std::max<unsigned>(static_cast<unsigned>(img0.degree()),
                                              static_cast<unsigned>(L.g().degree()) + m_) +
                           1;
            s.img.assign(len, 0);
            for (int c = 0; c <= img0.degree(); ++c)
                s.img[static_cast<unsigned>(c)] = img0.coeff(c);
            s.target_deg = static_cast<unsigned>(img0.degree());
            lines_.push_back(std::move(s));
        }
    }

    ChunkTally run(std::uint64_t top_digit) {
        // shift every image by top_digit * g_i * t^m, then walk the inner digits
        std::vector<LineState> ls = lines_;
        for (auto& s : ls) add_shifted(s, m_, 0, static_cast<Fe>(top_digit));
        std::vector<Fe> digits(m_, 0);
        ChunkTally tally;
        std::vector<Partition> key;
        for (std::uint64_t inner = 0;; ++inner) {
            tabulate(ls, tally, key);
            if (inner + 1 == inner_total_) break;
            // odometer step over digits a_0..a_{m-1}
            for (unsigned j = 0; j < m_; ++j) {
                Fe old = digits[j];
                Fe next = (old + 1 == q_) ? 0 : old + 1;
                for (auto& s : ls) add_shifted(s, j, old, next);
                digits[j] = next;
                if (next != 0) break;
            }
        }
        return tally;
    }

private:
    struct LineState {
        std::vector<Fe> g;
        std::vector<Fe> img;
        unsigned target_deg = 0;
    };

    // img += (new_elem - old_elem) * g * t^j
    void add_shifted(LineState& s, unsigned j, Fe old_elem, Fe new_elem) {
        Fe delta = F_.sub(new_elem, old_elem);
        if (delta == 0) return;
        for (std::size_t c = 0; c < s.g.size(); ++c)
            s.img[j + c] = F_.add(s.img[j + c], F_.mul(delta, s.g[c]));
    }

    static int buffer_degree(const std::vector<Fe>& img) {
        for (std::size_t i = img.size(); i-- > 0;)
            if (img[i] != 0) return static_cast<int>(i);
        return Poly::kZeroDeg;
    }

    void tabulate(const std::vector<LineState>& ls, ChunkTally& tally,
                  std::vector<Partition>& key) {
        if (!census_) {
            for (std::size_t i = 0; i < ls.size(); ++i) {
                int deg = buffer_degree(ls[i].img);
                if (deg != static_cast<int>(ls[i].target_deg)) return;
                Poly img = Poly::from_coeffs(inst_.field,
                                             std::vector<Fe>(ls[i].img.begin(),
                                                             ls[i].img.begin() + deg + 1));
                if (!(cycle_type(img) == inst_.targets[i])) return;
            }
            ++tally.observed;
            return;
        }
        key.clear();
        bool matched = true;
        for (std::size_t i = 0; i < ls.size(); ++i) {
            int deg = buffer_degree(ls[i].img);
            if (deg < 1) {
                ++tally.degenerate;
                return;
            }
            Poly img = Poly::from_coeffs(
                inst_.field,
                std::vector<Fe>(ls[i].img.begin(), ls[i].img.begin() + deg + 1));
            key.push_back(cycle_type(img));
            if (!(key.back() == inst_.targets[i])) matched = false;
        }
        tally.census[key] += 1;
        if (matched) ++tally.observed;
    }

    const ExperimentInstance& inst_;
    const Field& F_;
    bool census_;
    unsigned m_;
    std::uint64_t q_ = 0;
    std::uint64_t inner_total_ = 0;
    std::vector<LineState> lines_;
};

ExperimentReport make_report(const ExperimentInstance& inst, const Interval& iv) {
    ExperimentReport rep;
    rep.q = inst.field->q();
    rep.k = iv.k();
    rep.m = iv.m();
    for (std::size_t i = 0; i < inst.lines.size(); ++i)
        rep.image_degrees.push_back(*image_degree(inst, i));
    rep.main_term = Rational(iv.size()) *
                    class_probability(std::span<const Partition>(inst.targets));
    return rep;
}

void finish_report(ExperimentReport& rep) {
    Rational rel = Rational(rep.observed) / rep.main_term - 1;
    rep.rel_error = to_double(rel);
    rep.scaled_error = std::abs(rep.rel_error) * std::sqrt(static_cast<double>(rep.q));
}

void require_valid(const ExperimentInstance& inst) {
    auto errs = validate_instance(inst);
    if (errs.empty()) return;
    std::string msg = "invalid experiment instance:";
    for (const auto& e : errs) msg += "\n  - " + e;
    throw std::invalid_argument(msg);
}

}  // namespace

std::vector<std::string> validate_instance(const ExperimentInstance& inst) {
    std::vector<std::string> errs;
    if (!inst.field) {
        errs.push_back("no coefficient field");
        return errs;
    }
    const Field& F = *inst.field;
    if (F.q() % 2 == 0 && !F.char2_override())
        errs.push_back("q = " + std::to_string(F.q()) +
                       " is even; odd characteristic required (no override set)");
    if (inst.f0.degree() < 1 || !inst.f0.is_monic())
        errs.push_back("f0 must be monic of degree >= 1");
    if (inst.epsilon <= 0 || inst.epsilon >= 1)
        errs.push_back("epsilon must lie strictly between 0 and 1");

    const std::size_t n = inst.lines.size();
    if (n == 0) errs.push_back("need at least one linear function");
    if (inst.B < 1) errs.push_back("bound B must be positive");
    if (n > inst.B)
        errs.push_back("n = " + std::to_string(n) + " exceeds B = " + std::to_string(inst.B));
    if (inst.targets.size() != n)
        errs.push_back("need exactly one target partition per linear function (" +
                       std::to_string(inst.targets.size()) + " given, " + std::to_string(n) +
                       " lines)");
    if (inst.f0.degree() >= 1 && static_cast<unsigned>(inst.f0.degree()) > inst.B)
        errs.push_back("deg f0 = " + std::to_string(inst.f0.degree()) + " exceeds B = " +
                       std::to_string(inst.B));

    // m >= 2 iff eps * k >= 2
    if (inst.f0.degree() >= 1 && inst.epsilon > 0 && inst.epsilon < 1) {
        BigInt num = numerator(inst.epsilon) * inst.f0.degree();
        BigInt den = denominator(inst.epsilon);
        unsigned m = static_cast<unsigned>(num / den);
        if (m < 2)
            errs.push_back("m = " + std::to_string(m) +
                           " < 2: need deg f0 >= 2/epsilon");
    }

    for (std::size_t i = 0; i < n; ++i) {
        const auto& L = inst.lines[i];
        if (!L.f().field()->same(F)) {
            errs.push_back("line " + std::to_string(i + 1) + " lives over a different field");
            continue;
        }
        if (L.height() > static_cast<int>(inst.B))
            errs.push_back("line " + std::to_string(i + 1) + " has height " +
                           std::to_string(L.height()) + " > B = " + std::to_string(inst.B));
        auto kd = image_degree(inst, i);
        if (!kd) {
            errs.push_back("line " + std::to_string(i + 1) +
                           " maps f0 to a constant; no cycle type exists");
        } else if (i < inst.targets.size() && inst.targets[i].k() != *kd) {
            errs.push_back("target " + std::to_string(i + 1) + " partitions " +
                           std::to_string(inst.targets[i].k()) + " but deg(L_" +
                           std::to_string(i + 1) + "(f0)) = " + std::to_string(*kd));
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (inst.lines[i].f().field()->same(F) && inst.lines[j].f().field()->same(F) &&
                !strongly_distinct(inst.lines[i], inst.lines[j]))
                errs.push_back("lines " + std::to_string(i + 1) + " and " +
                               std::to_string(j + 1) + " are proportional (f_i*g_j = f_j*g_i)");
    return errs;
}

ExperimentReport count_tuples_serial(const ExperimentInstance& inst, bool census) {
    require_valid(inst);
    Timer timer;
    Interval iv(inst.f0, inst.epsilon);
    ExperimentReport rep = make_report(inst, iv);
    if (census) rep.census.emplace();

    const std::uint64_t total = iv.size_u64();
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        Poly f = iv.member(idx);
        bool matched = true;
        CensusKey key;
        bool degenerate = false;
        for (std::size_t i = 0; i < inst.lines.size(); ++i) {
            Poly img = inst.lines[i].apply(f);
            if (img.degree() < 1) {
                degenerate = true;
                matched = false;
                break;
            }
            Partition ct = cycle_type(img);
            if (!(ct == inst.targets[i])) matched = false;
            if (census) key.push_back(std::move(ct));
            if (!census && !matched) break;
        }
        if (degenerate) {
            if (census) ++rep.degenerate;
        } else if (census) {
            (*rep.census)[key] += 1;
        }
        if (matched) ++rep.observed;
    }
    finish_report(rep);
    rep.wall_ms = timer.ms();
    return rep;
}

ExperimentReport count_tuples(const ExperimentInstance& inst, bool census, int workers) {
    require_valid(inst);
    Timer timer;
    Interval iv(inst.f0, inst.epsilon);
    iv.size_u64();  // overflow guard before chunking
    ExperimentReport rep = make_report(inst, iv);
    if (census) rep.census.emplace();

    const auto q = static_cast<std::int64_t>(inst.field->q());
    std::vector<ChunkTally> tallies(static_cast<std::size_t>(q));
    ChunkWalker proto(inst, iv, census);

#ifdef _OPENMP
    if (workers > 0) omp_set_num_threads(workers);
#else
    (void)workers;
#endif
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < q; ++c) {
        ChunkWalker walker = proto;  // per-thread state
        tallies[static_cast<std::size_t>(c)] = walker.run(static_cast<std::uint64_t>(c));
    }

    for (const auto& t : tallies) {
        rep.observed += t.observed;
        rep.degenerate += t.degenerate;
        if (census)
            for (const auto& [key, cnt] : t.census) (*rep.census)[key] += cnt;
    }
    finish_report(rep);
    rep.wall_ms = timer.ms();
    return rep;
}

ExperimentReport count_prime_tuples(ExperimentInstance inst, bool census, int workers) {
    for (std::size_t i = 0; i < inst.lines.size(); ++i) {
        auto kd = image_degree(inst, i);
        if (!kd)
            throw std::invalid_argument("count_prime_tuples: line " + std::to_string(i + 1) +
                                        " maps f0 to a constant");
        if (i < inst.targets.size())
            inst.targets[i] = Partition::single_cycle(*kd);
        else
            inst.targets.push_back(Partition::single_cycle(*kd));
    }
    return count_tuples(inst, census, workers);
}

QScanResult q_scan(const QScanTemplate& tmpl, const std::vector<std::uint64_t>& qs,
                   bool census, int workers) {
    QScanResult out;
    std::vector<std::pair<double, double>> fit;
    std::vector<double> scaleds;
    for (std::uint64_t q : qs) {
        QScanRow row;
        row.q = q;
        try {
            auto [p, e] = factor_prime_power(q);
            FieldPtr field = Field::make(p, e);
            ExperimentInstance inst{field,
                                    Poly::from_int_coeffs(field, tmpl.f0),
                                    tmpl.epsilon,
                                    {},
                                    tmpl.targets,
                                    tmpl.B};
            for (const auto& [fc, gc] : tmpl.lines)
                inst.lines.emplace_back(Poly::from_int_coeffs(field, fc),
                                        Poly::from_int_coeffs(field, gc));
            row.errors = validate_instance(inst);
            if (row.errors.empty()) row.report = count_tuples(inst, census, workers);
        } catch (const std::exception& ex) {
            row.errors.push_back(ex.what());
        }
        if (row.report) {
            scaleds.push_back(row.report->scaled_error);
            if (row.report->rel_error != 0.0)
                fit.emplace_back(std::log(static_cast<double>(q)),
                                 std::log(std::abs(row.report->rel_error)));
        }
        out.rows.push_back(std::move(row));
    }
    out.summary.slope = loglog_slope(fit);
    out.summary.rows_used = static_cast<unsigned>(fit.size());
    out.summary.max_scaled = scaleds.empty() ? 0.0 : *std::max_element(scaleds.begin(),
                                                                       scaleds.end());
    out.summary.median_scaled = median_of(scaleds);
    return out;
}

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    std::size_t mid = v.size() / 2;
    if (v.size() % 2 == 1) return v[mid];
    return 0.5 * (v[mid - 1] + v[mid]);
}

double loglog_slope(const std::vector<std::pair<double, double>>& xy) {
    if (xy.size() < 2) return 0.0;
    double sx = 0, sy = 0;
    for (const auto& [x, y] : xy) {
        sx += x;
        sy += y;
    }
    const double n = static_cast<double>(xy.size());
    double mx = sx / n, my = sy / n;
    double num = 0, den = 0;
    for (const auto& [x, y] : xy) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    if (den == 0) return 0.0;
    return num / den;
}

}  // namespace ffprime
