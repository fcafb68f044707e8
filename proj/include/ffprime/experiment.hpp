#pragma once

#include "ffprime/factorize.hpp"
#include "ffprime/linear.hpp"
#include "ffprime/partition.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ffprime {

struct ExperimentInstance {
    FieldPtr field;
    Poly f0;                         // monic, degree k
    Rational epsilon;                // in (0,1)
    std::vector<LinearFunction> lines;
    std::vector<Partition> targets;  // targets[i] partitions deg(L_i(f0))
    unsigned B = 8;
};

// Every violated instance invariant, in a fixed order; empty when valid.
std::vector<std::string> validate_instance(const ExperimentInstance& inst);

// census key: the tuple of actual cycle types, one per line; degree-dropped
// images key under the partition of their actual degree
using CensusKey = std::vector<Partition>;

struct ExperimentReport {
    std::uint64_t q = 0;
    unsigned k = 0;                  // deg f0
    unsigned m = 0;
    std::vector<unsigned> image_degrees;  // k_i = deg(L_i(f0))
    std::uint64_t observed = 0;
    Rational main_term;              // q^(m+1) * prod_i p(lambda_i)
    double rel_error = 0.0;          // observed/main_term - 1
    double scaled_error = 0.0;       // |rel_error| * sqrt(q)
    std::optional<std::map<CensusKey, std::uint64_t>> census;
    std::uint64_t degenerate = 0;    // members with a constant image (census runs only)
    double wall_ms = 0.0;            // never serialized to JSON (determinism)
};

// Exhaustive count over the interval, parallel kernel sharded on the top
// perturbation coefficient; identical output for every worker count.
// workers <= 0 selects the library default.
ExperimentReport count_tuples(const ExperimentInstance& inst, bool census = false,
                              int workers = 0);

// Single-threaded reference engine: member-by-member enumeration through the
// plain Poly API. Same results as count_tuples, kept as the testing baseline.
ExperimentReport count_tuples_serial(const ExperimentInstance& inst, bool census = false);

// Theorem-style prime counting: replaces every target with the single-cycle
// partition of deg(L_i(f0)), then counts as usual.
ExperimentReport count_prime_tuples(ExperimentInstance inst, bool census = false,
                                    int workers = 0);

struct QScanTemplate {
    std::vector<long long> f0;       // integer coefficients, low to high
    Rational epsilon;
    // per line: integer coefficients of f and of g
    std::vector<std::pair<std::vector<long long>, std::vector<long long>>> lines;
    std::vector<Partition> targets;
    unsigned B = 8;
};

struct QScanRow {
    std::uint64_t q = 0;
    std::optional<ExperimentReport> report;
    std::vector<std::string> errors;  // validation failures for this q
};

struct QScanSummary {
    double slope = 0.0;          // least-squares slope of log|rel| vs log q
    double max_scaled = 0.0;
    double median_scaled = 0.0;
    unsigned rows_used = 0;      // rows entering the slope fit (rel != 0)
};

struct QScanResult {
    std::vector<QScanRow> rows;
    QScanSummary summary;
};

// Instantiates the template over each q (skipping invalid ones with per-q
// error lists) and aggregates the error-scaling summary.
QScanResult q_scan(const QScanTemplate& tmpl, const std::vector<std::uint64_t>& qs,
                   bool census = false, int workers = 0);

// summary statistics shared with the acceptance suite
double median_of(std::vector<double> v);                   // empty -> 0
double loglog_slope(const std::vector<std::pair<double, double>>& xy);  // <2 pts -> 0

}  // namespace ffprime
