#include "ffprime/expfile.hpp"
#include "ffprime/oracles.hpp"
#include "ffprime/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace ffprime;

// exit codes: 0 success, 1 validation error, 2 internal error
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int default_workers() {
    if (const char* env = std::getenv("FFPRIME_WORKERS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0 && v <= 1024) return static_cast<int>(v);
        std::cerr << "warning: ignoring malformed FFPRIME_WORKERS='" << env << "'\n";
    }
    return 0;  // library default
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write output file '" + out_path + "'");
    out << text;
}

// integer-coefficient polynomial for scan-q templates: "0,0,0,1" or "t^3"
std::vector<long long> parse_int_poly(const std::string& s) {
    auto has_var = s.find_first_of("tTxX") != std::string::npos;
    std::vector<long long> coeffs;
    if (!has_var) {
        std::size_t pos = 0;
        while (pos <= s.size()) {
            auto comma = s.find(',', pos);
            if (comma == std::string::npos) comma = s.size();
            std::string tok = s.substr(pos, comma - pos);
            try {
                std::size_t used = 0;
                coeffs.push_back(std::stoll(tok, &used));
                if (used != tok.size()) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw ValidationError("bad integer coefficient '" + tok + "' in '" + s + "'");
            }
            pos = comma + 1;
            if (comma == s.size()) break;
        }
        return coeffs;
    }
    // symbolic form: sum of c*t^k terms over the integers
    std::string t;
    for (char c : s)
        if (c != ' ') t += c;
    std::size_t i = 0;
    auto term_fail = [&]() {
        throw ValidationError("bad polynomial '" + s + "' near position " +
                              std::to_string(i + 1));
    };
    while (i < t.size()) {
        long long sign = 1;
        if (t[i] == '+') {
            ++i;
        } else if (t[i] == '-') {
            sign = -1;
            ++i;
        }
        if (i >= t.size()) term_fail();
        long long coeff = 1;
        bool have_digits = false;
        if (std::isdigit(static_cast<unsigned char>(t[i]))) {
            std::size_t used = 0;
            coeff = std::stoll(t.substr(i), &used);
            i += used;
            have_digits = true;
        }
        unsigned power = 0;
        if (i < t.size() && t[i] == '*') ++i;
        if (i < t.size() && (t[i] == 't' || t[i] == 'T' || t[i] == 'x' || t[i] == 'X')) {
            ++i;
            power = 1;
            if (i < t.size() && t[i] == '^') {
                ++i;
                if (i >= t.size() || !std::isdigit(static_cast<unsigned char>(t[i])))
                    term_fail();
                std::size_t used = 0;
                power = static_cast<unsigned>(std::stoul(t.substr(i), &used));
                i += used;
            }
        } else if (!have_digits) {
            term_fail();
        }
        if (coeffs.size() < power + 1) coeffs.resize(power + 1, 0);
        coeffs[power] += sign * coeff;
    }
    return coeffs;
}

std::vector<std::uint64_t> parse_q_list(const std::string& s) {
    std::vector<std::uint64_t> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        auto comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        std::string tok = s.substr(pos, comma - pos);
        try {
            std::size_t used = 0;
            unsigned long long v = std::stoull(tok, &used);
            if (used != tok.size() || v < 2) throw std::invalid_argument("");
            out.push_back(v);
        } catch (const std::exception&) {
            throw ValidationError("bad q value '" + tok + "' in q list");
        }
        pos = comma + 1;
        if (comma == s.size()) break;
    }
    if (out.empty()) throw ValidationError("empty q list");
    return out;
}

struct TupleArgs {
    std::string file;
    std::string field, f0, eps;
    std::vector<std::string> lines, lambdas;
    unsigned B = 8;
    std::string format = "json";
    std::string out;
    int workers = default_workers();
    std::uint64_t seed = 0;
    bool allow_char2 = false;
};

void add_tuple_options(CLI::App* cmd, TupleArgs& args, bool inline_only) {
    if (!inline_only)
        cmd->add_option("--file", args.file, "experiment definition file (key=value lines)");
    cmd->add_option("--field", args.field, "coefficient field, e.g. 5 or 3^2");
    cmd->add_option("--f0", args.f0, "monic interval center, e.g. t^3 or 0,0,0,1");
    cmd->add_option("--eps", args.eps, "interval exponent as a rational, e.g. 7/10");
    cmd->add_option("--line", args.lines, "linear function \"f;g\" (repeatable)");
    cmd->add_option("--lambda", args.lambdas, "target cycle type, e.g. 3+1 (repeatable)");
    cmd->add_option("--B", args.B, "height/degree bound (default 8)");
    cmd->add_option("--format", args.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", args.out, "output path (default stdout)");
    cmd->add_option("--workers", args.workers, "worker threads (default: all, or FFPRIME_WORKERS)");
    cmd->add_option("--seed", args.seed, "seed recorded in the report (default 0)");
    cmd->add_flag("--allow-char2", args.allow_char2,
                  "permit characteristic 2 (outside the theorems' scope)");
}

ExperimentInstance instance_from_args(const TupleArgs& args) {
    if (!args.file.empty()) {
        if (!args.field.empty() || !args.f0.empty() || !args.eps.empty() ||
            !args.lines.empty() || !args.lambdas.empty())
            throw ValidationError("--file excludes the inline instance flags");
        return instance_from_file(load_experiment_file(args.file), args.allow_char2);
    }
    if (args.field.empty() || args.f0.empty() || args.eps.empty() || args.lines.empty())
        throw ValidationError("need --file or all of --field, --f0, --eps, --line");
    ExperimentFile file;
    file.field = args.field;
    file.f0 = args.f0;
    file.epsilon = args.eps;
    file.lines = args.lines;
    file.lambdas = args.lambdas;
    file.B = args.B;
    return instance_from_file(file, args.allow_char2);
}

int run_count(const TupleArgs& args, bool census) {
    ExperimentInstance inst = instance_from_args(args);
    auto violations = validate_instance(inst);
    if (!violations.empty()) {
        std::cerr << "invalid experiment instance:\n";
        for (const auto& v : violations) std::cerr << "  - " << v << "\n";
        return 1;
    }
    ExperimentReport rep = count_tuples(inst, census, args.workers);
    if (args.format == "csv") {
        emit(std::string(kCsvHeader) + "\n" + experiment_csv_row(rep) + "\n", args.out);
    } else {
        Json j = experiment_report_json(rep);
        j["schema"] = kSchemaVersion;
        j["command"] = census ? "census" : "count-tuples";
        Json cfg = experiment_config_json(inst);
        cfg["seed"] = args.seed;
        j["config"] = std::move(cfg);
        emit(to_json_text(j), args.out);
    }
    return 0;
}

int run_scan(const TupleArgs& args, const std::string& q_list_text, bool census) {
    if (args.f0.empty() || args.eps.empty() || args.lines.empty())
        throw ValidationError("scan-q needs --f0, --eps and at least one --line");
    QScanTemplate tmpl;
    tmpl.f0 = parse_int_poly(args.f0);
    tmpl.epsilon = parse_rational(args.eps);
    for (const auto& l : args.lines) {
        auto sep = l.find(';');
        if (sep == std::string::npos)
            throw ValidationError("line '" + l + "': expected \"f;g\"");
        tmpl.lines.emplace_back(parse_int_poly(l.substr(0, sep)),
                                parse_int_poly(l.substr(sep + 1)));
    }
    for (const auto& l : args.lambdas) tmpl.targets.push_back(Partition::parse(l));
    tmpl.B = args.B;
    auto qs = parse_q_list(q_list_text);

    QScanResult result = q_scan(tmpl, qs, census, args.workers);
    bool any_report = false;
    for (const auto& row : result.rows)
        if (row.report) any_report = true;
    if (args.format == "csv") {
        emit(qscan_csv(result), args.out);
    } else {
        Json j = qscan_json(tmpl, qs, result, census);
        j["config"]["seed"] = args.seed;
        emit(to_json_text(j), args.out);
    }
    if (!any_report) {
        std::cerr << "scan-q: no q in the list produced a valid instance\n";
        return 1;
    }
    return 0;
}

struct DiscArgs {
    std::string field, f0;
    unsigned m = 2;
    std::vector<std::string> lines;
    std::uint64_t trials = 200;
    std::uint64_t seed = 0;
    std::string out;
    int workers = default_workers();
    bool allow_char2 = false;
};

void add_disc_options(CLI::App* cmd, DiscArgs& args) {
    cmd->add_option("--field", args.field, "coefficient field")->required();
    cmd->add_option("--f0", args.f0, "monic center polynomial")->required();
    cmd->add_option("--m", args.m, "number of specialized coefficients (default 2)");
    cmd->add_option("--line", args.lines, "linear function \"f;g\" (repeatable)")->required();
    cmd->add_option("--trials", args.trials, "specialization trials (default 200)");
    cmd->add_option("--seed", args.seed, "RNG seed (default 0)");
    cmd->add_option("--out", args.out, "output path (default stdout)");
    cmd->add_option("--workers", args.workers, "worker threads");
    cmd->add_flag("--allow-char2", args.allow_char2, "permit characteristic 2");
}

int run_disc(const DiscArgs& args, bool independence) {
    FieldPtr field = Field::parse(args.field, args.allow_char2);
    Poly f0 = Poly::parse(field, args.f0);
    std::vector<LinearFunction> lines;
    for (const auto& l : args.lines) lines.push_back(LinearFunction::parse(field, l));

    SpecializationReport rep;
    std::string command;
    if (independence) {
        command = "square-independence";
        rep = square_independence_check(lines, f0, args.m, args.trials, args.seed,
                                        args.workers);
    } else {
        command = "disc-check";
        if (lines.size() != 2)
            throw ValidationError("disc-check needs exactly two --line entries");
        rep = check_pair(lines[0], lines[1], f0, args.m, args.trials, args.seed,
                         args.workers);
    }
    emit(to_json_text(disc_report_json(rep, f0, lines, command)), args.out);
    return 0;
}

int run_selftest() {
    struct Suite {
        std::string name;
        bool ok = true;
        std::string detail;
    };
    std::vector<Suite> suites;
    auto check = [&](const std::string& name, auto&& body) {
        Suite s{name, true, ""};
        try {
            body(s);
        } catch (const std::exception& ex) {
            s.ok = false;
            s.detail = ex.what();
        }
        suites.push_back(std::move(s));
    };
    auto expect = [](Suite& s, bool cond, const std::string& what) {
        if (!cond && s.ok) {
            s.ok = false;
            s.detail = what;
        }
    };

    check("partition-function", [&](Suite& s) {
        for (unsigned k = 1; k <= 10; ++k)
            expect(s, partitions_of(k).size() == oracles::partition_count(k),
                   "partition count mismatch at k=" + std::to_string(k));
        for (unsigned k = 1; k <= 12; ++k) {
            Rational total = 0;
            for (const auto& l : partitions_of(k)) total += cauchy_probability(l);
            expect(s, total == 1, "sum of p(lambda) != 1 at k=" + std::to_string(k));
        }
    });

    check("cauchy-vs-symmetric-group", [&](Suite& s) {
        std::uint64_t fact = 1;
        for (unsigned k = 1; k <= 5; ++k) {
            fact *= k;
            auto census = oracles::symmetric_group_census(k);
            for (const auto& [lambda, count] : census)
                expect(s, cauchy_probability(lambda) == Rational(count, fact),
                       "Cauchy probability off for " + lambda.to_string());
        }
    });

    check("cycle-type-vs-trial-division", [&](Suite& s) {
        for (auto [p, maxdeg] : {std::pair<std::uint64_t, unsigned>{3, 4}, {5, 3}}) {
            auto field = Field::make(p);
            for (unsigned n = 1; n <= maxdeg; ++n)
                for (const auto& f : oracles::all_monic_of_degree(field, n))
                    expect(s, cycle_type(f) == oracles::cycle_type_naive(f),
                           "cycle type mismatch for " + f.to_string() + " over F_" +
                               std::to_string(p));
        }
    });

    check("irreducible-counts", [&](Suite& s) {
        for (std::uint64_t q : {3ull, 5ull}) {
            auto field = Field::make(q);
            for (unsigned n = 1; n <= 4; ++n) {
                std::uint64_t got = 0;
                for (const auto& f : oracles::all_monic_of_degree(field, n))
                    if (is_prime_poly(f)) ++got;
                expect(s, BigInt(got) == gauss_irreducible_count(q, n),
                       "prime count != necklace formula at q=" + std::to_string(q) +
                           ", n=" + std::to_string(n));
                expect(s, got == oracles::count_monic_irreducible_naive(field, n),
                       "prime count != naive scan at q=" + std::to_string(q) +
                           ", n=" + std::to_string(n));
            }
        }
    });

    check("resultant-vs-sylvester", [&](Suite& s) {
        for (std::uint64_t q : {3ull, 7ull, 9ull}) {
            auto [p, e] = factor_prime_power(q);
            auto field = Field::make(p, e);
            std::uint64_t state = 0x5eed + q;
            auto next = [&state]() {
                state += 0x9e3779b97f4a7c15ull;
                std::uint64_t x = state;
                x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
                x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
                return x ^ (x >> 31);
            };
            for (int rep = 0; rep < 100; ++rep) {
                auto rand_poly = [&](int maxdeg) {
                    std::vector<Fe> c(static_cast<std::size_t>(next() % (maxdeg + 1)) + 1);
                    for (auto& v : c) v = static_cast<Fe>(next() % q);
                    return Poly::from_coeffs(field, std::move(c));
                };
                Poly f = rand_poly(5), g = rand_poly(5);
                if (f.is_zero() || g.is_zero()) continue;
                expect(s, resultant(f, g) == oracles::sylvester_resultant(f, g),
                       "resultant mismatch over q=" + std::to_string(q));
                bool res_zero = resultant(f, g) == 0;
                bool gcd_nonconst = !poly_gcd(f, g).is_constant();
                expect(s, res_zero == gcd_nonconst,
                       "Res=0 vs gcd disagreement over q=" + std::to_string(q));
            }
        }
    });

    check("interval-counting", [&](Suite& s) {
        auto field = Field::make(5);
        ExperimentInstance inst{field,
                                Poly::parse(field, "t^3"),
                                parse_rational("7/10"),
                                {LinearFunction::parse(field, "0;1")},
                                {Partition::single_cycle(3)},
                                8};
        auto par = count_tuples(inst, true);
        auto ser = count_tuples_serial(inst, true);
        expect(s, BigInt(par.observed) == gauss_irreducible_count(5, 3),
               "interval prime count != Gauss count");
        expect(s, par.observed == ser.observed && *par.census == *ser.census,
               "parallel and serial engines disagree");
        std::uint64_t total = par.degenerate;
        for (const auto& [key, cnt] : *par.census) total += cnt;
        expect(s, total == 125, "census total != q^(m+1)");
    });

    check("sieve-vs-trial-division", [&](Suite& s) {
        std::uint64_t state = 0xace;
        auto next = [&state]() {
            state += 0x9e3779b97f4a7c15ull;
            std::uint64_t x = state;
            x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
            x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
            return x ^ (x >> 31);
        };
        for (int rep = 0; rep < 20; ++rep) {
            std::uint64_t x = 2 + next() % 1000000;
            std::uint64_t u = 1 + next() % 500;
            auto bits = sieve_window(x, u);
            auto naive = oracles::primes_in_window_naive(x, u);
            std::uint64_t got = 0;
            for (auto b : bits) got += b;
            expect(s, got == naive.size(),
                   "sieve window [" + std::to_string(x) + ", x+" + std::to_string(u) +
                       "] disagrees with trial division");
        }
    });

    check("singular-series-closed-form", [&](Suite& s) {
        for (long long b : {2, 3, 4, 5, 6, 10, 97}) {
            IntegerLinear l(1, b);
            std::vector<IntegerLinear> v{l};
            expect(s, singular_series(v, 100).exact == singular_series_single(l),
                   "truncated series != b/phi(b) at b=" + std::to_string(b));
        }
        std::vector<IntegerLinear> consec{IntegerLinear(0, 1), IntegerLinear(1, 1)};
        expect(s, singular_series(consec, 50).exact == 0, "S([X,X+1]) != 0");
    });

    bool all_ok = true;
    for (const auto& s : suites) {
        if (s.ok) {
            std::cout << "ok   " << s.name << "\n";
        } else {
            all_ok = false;
            std::cout << "FAIL " << s.name << ": " << s.detail << "\n";
        }
    }
    std::cout << (all_ok ? "selftest passed" : "selftest FAILED") << "\n";
    return all_ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-field prime-tuple experiments"};
    app.require_subcommand(1);

    TupleArgs count_args, census_args, scan_args;
    DiscArgs disc_args, si_args;
    std::string q_list;
    bool scan_census = false;

    auto* count_cmd = app.add_subcommand(
        "count-tuples", "count interval members whose images hit the target cycle types");
    add_tuple_options(count_cmd, count_args, false);

    auto* census_cmd = app.add_subcommand(
        "census", "count-tuples plus a full tally of every outcome tuple");
    add_tuple_options(census_cmd, census_args, false);

    auto* scan_cmd = app.add_subcommand(
        "scan-q", "run one integer-coefficient template across a ladder of prime powers");
    add_tuple_options(scan_cmd, scan_args, true);
    scan_cmd->add_option("--q", q_list, "comma-separated prime powers, e.g. 3,5,7,11")
        ->required();
    scan_cmd->add_flag("--census", scan_census, "include census tallies per q");

    auto* disc_cmd = app.add_subcommand(
        "disc-check", "sample specialized discriminant pairs for coprimality and squareness");
    add_disc_options(disc_cmd, disc_args);

    auto* si_cmd = app.add_subcommand(
        "square-independence", "test all subset products of specialized discriminants");
    add_disc_options(si_cmd, si_args);

    std::vector<std::string> int_lines;
    std::uint64_t ss_P = 10000;
    std::string ss_out;
    auto* ss_cmd = app.add_subcommand("singular-series",
                                      "truncated Hardy-Littlewood product for integer lines");
    ss_cmd->add_option("--line", int_lines, "integer linear function \"a,b\" (repeatable)")
        ->required();
    ss_cmd->add_option("--P", ss_P, "truncation bound (default 10000)");
    ss_cmd->add_option("--out", ss_out, "output path (default stdout)");

    std::vector<std::string> win_lines;
    std::uint64_t win_x = 0, win_u = 0, win_P = 10000;
    std::string win_eps, win_out;
    int win_workers = default_workers();
    auto* win_cmd = app.add_subcommand(
        "int-window", "count integers in [x, x+u] where every image is prime");
    win_cmd->add_option("--line", win_lines, "integer linear function \"a,b\" (repeatable)")
        ->required();
    win_cmd->add_option("--x", win_x, "window start (>= 2)")->required();
    win_cmd->add_option("--u", win_u, "window length");
    win_cmd->add_option("--eps", win_eps, "window length as floor(x^eps), e.g. 1/2");
    win_cmd->add_option("--P", win_P, "singular-series truncation (default 10000)");
    win_cmd->add_option("--out", win_out, "output path (default stdout)");
    win_cmd->add_option("--workers", win_workers, "worker threads");

    auto* selftest_cmd =
        app.add_subcommand("selftest", "run the built-in oracle cross-check suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (count_cmd->parsed()) return run_count(count_args, false);
        if (census_cmd->parsed()) return run_count(census_args, true);
        if (scan_cmd->parsed()) return run_scan(scan_args, q_list, scan_census);
        if (disc_cmd->parsed()) return run_disc(disc_args, false);
        if (si_cmd->parsed()) return run_disc(si_args, true);
        if (ss_cmd->parsed()) {
            std::vector<IntegerLinear> lines;
            for (const auto& l : int_lines) lines.push_back(IntegerLinear::parse(l));
            auto ss = singular_series(lines, ss_P);
            emit(to_json_text(singular_series_json(ss, lines, ss_P)), ss_out);
            return 0;
        }
        if (win_cmd->parsed()) {
            std::vector<IntegerLinear> lines;
            for (const auto& l : win_lines) lines.push_back(IntegerLinear::parse(l));
            if ((win_u == 0) == win_eps.empty())
                throw ValidationError("need exactly one of --u or --eps");
            std::uint64_t u =
                win_u != 0 ? win_u : window_from_epsilon(win_x, parse_rational(win_eps));
            auto rep = count_window(lines, win_x, u, win_P, win_workers);
            emit(to_json_text(heuristic_report_json(rep, lines)), win_out);
            return 0;
        }
        if (selftest_cmd->parsed()) return run_selftest();
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
