#include "ffprime/report.hpp"

#include <cinttypes>
#include <cstdio>

namespace ffprime {

namespace {

std::string census_key_string(const CensusKey& key) {
    std::string s;
    for (const auto& p : key) {
        if (!s.empty()) s += '|';
        s += p.to_string();
    }
    return s;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

Json experiment_config_json(const ExperimentInstance& inst) {
    Json cfg;
    cfg["field"] = inst.field->to_string();
    cfg["f0"] = inst.f0.to_string();
    cfg["epsilon"] = rational_to_string(inst.epsilon);
    Json lines = Json::array(), lambdas = Json::array();
    for (const auto& l : inst.lines) lines.push_back(l.to_string());
    for (const auto& t : inst.targets) lambdas.push_back(t.to_string());
    cfg["lines"] = std::move(lines);
    cfg["lambdas"] = std::move(lambdas);
    cfg["B"] = inst.B;
    return cfg;
}

Json experiment_report_json(const ExperimentReport& rep) {
    Json j;
    j["q"] = rep.q;
    j["k"] = rep.k;
    j["m"] = rep.m;
    j["image_degrees"] = rep.image_degrees;
    j["interval_size"] = big_pow(rep.q, rep.m + 1).str();
    j["observed"] = rep.observed;
    j["main_term"] = rational_to_string(rep.main_term);
    j["main_num"] = numerator(rep.main_term).str();
    j["main_den"] = denominator(rep.main_term).str();
    j["rel_error"] = rep.rel_error;
    j["scaled_error"] = rep.scaled_error;
    if (rep.census) {
        Json c = Json::object();
        for (const auto& [key, cnt] : *rep.census) c[census_key_string(key)] = cnt;
        j["census"] = std::move(c);
        j["degenerate"] = rep.degenerate;
    }
    return j;
}

std::string experiment_csv_row(const ExperimentReport& rep) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%" PRIu64 ",%u,%u,%" PRIu64 ",%s,%s,%s,%s,%.3f", rep.q,
                  rep.k, rep.m, rep.observed, numerator(rep.main_term).str().c_str(),
                  denominator(rep.main_term).str().c_str(),
                  format_double(rep.rel_error).c_str(),
                  format_double(rep.scaled_error).c_str(), rep.wall_ms);
    return buf;
}

Json qscan_json(const QScanTemplate& tmpl, const std::vector<std::uint64_t>& qs,
                const QScanResult& result, bool census) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["command"] = "scan-q";
    Json cfg;
    cfg["f0"] = tmpl.f0;
    cfg["epsilon"] = rational_to_string(tmpl.epsilon);
    Json lines = Json::array(), lambdas = Json::array();
    for (const auto& [f, g] : tmpl.lines) {
        Json entry;
        entry["f"] = f;
        entry["g"] = g;
        lines.push_back(std::move(entry));
    }
    for (const auto& t : tmpl.targets) lambdas.push_back(t.to_string());
    cfg["lines"] = std::move(lines);
    cfg["lambdas"] = std::move(lambdas);
    cfg["B"] = tmpl.B;
    cfg["census"] = census;
    cfg["q_list"] = qs;
    j["config"] = std::move(cfg);

    Json rows = Json::array();
    for (const auto& row : result.rows) {
        Json r;
        r["q"] = row.q;
        if (row.report) r["report"] = experiment_report_json(*row.report);
        if (!row.errors.empty()) r["errors"] = row.errors;
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    Json s;
    s["slope"] = result.summary.slope;
    s["max_scaled_error"] = result.summary.max_scaled;
    s["median_scaled_error"] = result.summary.median_scaled;
    s["rows_used"] = result.summary.rows_used;
    j["summary"] = std::move(s);
    return j;
}

std::string qscan_csv(const QScanResult& result) {
    std::string out = kCsvHeader;
    out += '\n';
    for (const auto& row : result.rows) {
        if (row.report) {
            out += experiment_csv_row(*row.report);
            out += '\n';
        } else {
            out += std::to_string(row.q) + ",,,,,,,,\n";
        }
    }
    out += "# summary slope=" + format_double(result.summary.slope) +
           " max_scaled_error=" + format_double(result.summary.max_scaled) +
           " median_scaled_error=" + format_double(result.summary.median_scaled) +
           " rows_used=" + std::to_string(result.summary.rows_used) + "\n";
    return out;
}

Json disc_report_json(const SpecializationReport& rep, const Poly& f0,
                      const std::vector<LinearFunction>& lines,
                      const std::string& command) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["command"] = command;
    j["q"] = rep.q;
    j["m"] = rep.m;
    j["f0"] = f0.to_string();
    Json ls = Json::array();
    for (const auto& l : lines) ls.push_back(l.to_string());
    j["lines"] = std::move(ls);
    j["trials"] = rep.trials;
    j["seed"] = rep.seed;
    if (command == "disc-check") j["coprime_failures"] = rep.coprime_failures;
    j["nonsquare_failures"] = rep.nonsquare_failures;
    if (!rep.subset_failures.empty()) {
        Json sf = Json::object();
        for (const auto& [name, cnt] : rep.subset_failures) sf[name] = cnt;
        j["subset_failures"] = std::move(sf);
    }
    j["degenerate"] = rep.degenerate;
    j["successes"] = rep.successes;
    j["ref_degrees"] = rep.ref_degrees;
    Json ws = Json::array();
    for (const auto& w : rep.witnesses) {
        Json e;
        e["trial"] = w.trial;
        e["kind"] = w.kind;
        if (!w.subject.empty()) e["subject"] = w.subject;
        if (w.sign != 0) e["sign"] = w.sign;
        e["a"] = w.a;
        ws.push_back(std::move(e));
    }
    j["witnesses"] = std::move(ws);
    return j;
}

Json heuristic_report_json(const HeuristicReport& rep,
                           const std::vector<IntegerLinear>& lines) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["command"] = "int-window";
    Json ls = Json::array();
    for (const auto& l : lines) ls.push_back(l.to_string());
    j["lines"] = std::move(ls);
    j["x"] = rep.x;
    j["u"] = rep.u;
    j["observed"] = rep.observed;
    j["predicted"] = rep.predicted;
    j["ratio"] = rep.ratio;
    j["singular_series"] = rational_to_string(rep.singular_series_exact);
    j["singular_series_value"] = rep.singular_series_value;
    j["truncation_P"] = rep.truncation_P;
    return j;
}

Json singular_series_json(const SingularSeries& ss,
                          const std::vector<IntegerLinear>& lines, std::uint64_t P) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["command"] = "singular-series";
    Json ls = Json::array();
    for (const auto& l : lines) ls.push_back(l.to_string());
    j["lines"] = std::move(ls);
    j["exact"] = rational_to_string(ss.exact);
    j["value"] = ss.value;
    j["truncation_P"] = P;
    return j;
}

std::string to_json_text(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace ffprime
