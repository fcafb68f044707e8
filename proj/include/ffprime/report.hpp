#pragma once

#include "ffprime/disc_lab.hpp"
#include "ffprime/experiment.hpp"
#include "ffprime/int_heuristics.hpp"

#include <json.hpp>

#include <string>

namespace ffprime {

// JSON report schemas, all carrying "schema": "1" and the resolved
// configuration. Timing never enters JSON so identical configurations give
// byte-identical documents; wall_ms lives in the CSV rows only.
using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kCsvHeader =
    "q,k,m,observed,main_num,main_den,rel_error,scaled_error,wall_ms";

Json experiment_config_json(const ExperimentInstance& inst);
Json experiment_report_json(const ExperimentReport& rep);
std::string experiment_csv_row(const ExperimentReport& rep);

Json qscan_json(const QScanTemplate& tmpl, const std::vector<std::uint64_t>& qs,
                const QScanResult& result, bool census);
std::string qscan_csv(const QScanResult& result);

Json disc_report_json(const SpecializationReport& rep, const Poly& f0,
                      const std::vector<LinearFunction>& lines, const std::string& command);

Json heuristic_report_json(const HeuristicReport& rep,
                           const std::vector<IntegerLinear>& lines);

Json singular_series_json(const SingularSeries& ss,
                          const std::vector<IntegerLinear>& lines, std::uint64_t P);

// two-space indent, sorted keys, trailing newline; the byte format the
// determinism guarantee is stated over
std::string to_json_text(const Json& j);

}  // namespace ffprime
