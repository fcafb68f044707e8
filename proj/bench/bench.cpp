#include "ffprime/experiment.hpp"
#include "ffprime/int_heuristics.hpp"

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace ffprime;

double time_once(auto&& body) {
    auto t0 = std::chrono::steady_clock::now();
    body();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double best_of(int reps, auto&& body) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) best = std::min(best, time_once(body));
    return best;
}

int hw_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

bool bench_engine(std::uint64_t q, const char* f0_text, const char* eps_text,
                  const std::vector<const char*>& line_texts) {
    auto [p, e] = factor_prime_power(q);
    auto field = Field::make(p, e);
    std::vector<LinearFunction> lines;
    std::vector<Partition> targets;
    for (const char* lt : line_texts) lines.push_back(LinearFunction::parse(field, lt));
    ExperimentInstance inst{field,
                            Poly::parse(field, f0_text),
                            parse_rational(eps_text),
                            std::move(lines),
                            {},
                            8};
    for (const auto& l : inst.lines)
        targets.push_back(Partition::single_cycle(l.apply(inst.f0).degree()));
    inst.targets = std::move(targets);

    ExperimentReport serial, parallel;
    double ts = best_of(2, [&] { serial = count_tuples_serial(inst, true); });
    double tp = best_of(2, [&] { parallel = count_tuples(inst, true); });
    bool ok = serial.observed == parallel.observed && serial.census == parallel.census &&
              serial.degenerate == parallel.degenerate;
    Interval iv(inst.f0, inst.epsilon);
    std::printf("count-engine   q=%-3llu k=%u n=%zu interval=%-8llu serial %8.3fs   parallel(%d) %8.3fs   speedup %5.1fx   [%s]\n",
                static_cast<unsigned long long>(q), inst.f0.degree(), inst.lines.size(),
                static_cast<unsigned long long>(iv.size_u64()), ts, hw_threads(), tp,
                ts / tp, ok ? "match" : "MISMATCH");
    return ok;
}

bool bench_sieve(std::uint64_t x, std::uint64_t u) {
    std::vector<std::uint8_t> serial, parallel;
    double ts = best_of(2, [&] { serial = sieve_window_serial(x, u); });
    double tp = best_of(2, [&] { parallel = sieve_window(x, u); });
    bool ok = serial == parallel;
    std::printf("sieve-window   x=%.0e u=%.0e %*s serial %8.3fs   parallel(%d) %8.3fs   speedup %5.1fx   [%s]\n",
                static_cast<double>(x), static_cast<double>(u), 14, "", ts, hw_threads(),
                tp, ts / tp, ok ? "match" : "MISMATCH");
    return ok;
}

}  // namespace

int main() {
    std::printf("reference (serial) vs production (OpenMP) kernels, best of 2 runs\n\n");
    bool ok = true;
    ok &= bench_engine(9, "t^4", "3/4", {"0;1", "0,1;1"});
    ok &= bench_engine(13, "t^4", "3/4", {"0;1", "0,1;1"});
    ok &= bench_engine(25, "t^3", "7/10", {"0;1", "0,1;1", "1;0,1"});
    ok &= bench_sieve(10'000'000, 10'000'000);
    ok &= bench_sieve(1'000'000'000, 50'000'000);
    if (!ok) {
        std::printf("\nresult mismatch between engines\n");
        return 1;
    }
    return 0;
}
