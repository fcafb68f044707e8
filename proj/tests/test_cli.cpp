#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

// End-to-end tests driving the installed binary named by FFPRIME_BIN.
namespace {

using Json = nlohmann::json;

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path scratch_file(const std::string& tag) {
    static int counter = 0;
    return std::filesystem::temp_directory_path() /
           ("ffprime_test_" + tag + "_" + std::to_string(counter++));
}

RunResult run(const std::string& args, const std::string& env_prefix = "") {
    const char* bin = std::getenv("FFPRIME_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "FFPRIME_BIN must point at the ffprime binary");
    auto out_path = scratch_file("stdout");
    auto err_path = scratch_file("stderr");
    std::string cmd = env_prefix + "\"" + bin + "\" " + args + " > " + out_path.string() +
                      " 2> " + err_path.string();
    int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::filesystem::remove(out_path);
    std::filesystem::remove(err_path);
    return r;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("help and argument errors") {
    auto help = run("--help");
    CHECK(help.code == 0);
    CHECK(contains(help.out, "count-tuples"));
    CHECK(contains(help.out, "scan-q"));
    CHECK(contains(help.out, "int-window"));
    CHECK(run("").code == 1);              // a subcommand is required
    CHECK(run("no-such-command").code == 1);
    auto bad_format = run("count-tuples --field 5 --f0 t^3 --eps 2/3 --line '0;1' "
                          "--lambda 3 --format yaml");
    CHECK(bad_format.code == 1);
}

TEST_CASE("count-tuples json document") {
    auto r = run("count-tuples --field 5 --f0 t^3 --eps 2/3 --line '0;1' --lambda 3");
    REQUIRE(r.code == 0);
    CHECK(r.err.empty());
    Json j = Json::parse(r.out);
    CHECK(j["schema"] == "1");
    CHECK(j["command"] == "count-tuples");
    CHECK(j["q"] == 5);
    CHECK(j["k"] == 3);
    CHECK(j["m"] == 2);
    CHECK(j["observed"] == 40);
    CHECK(j["main_term"] == "125/3");
    CHECK(j["main_num"] == "125");
    CHECK(j["main_den"] == "3");
    CHECK(j["rel_error"].get<double>() == doctest::Approx(-0.04).epsilon(1e-12));
    CHECK(j["config"]["field"] == "5");
    CHECK(j["config"]["epsilon"] == "2/3");
    CHECK(j["config"]["seed"] == 0);
    CHECK(j["config"]["lines"][0] == "0;1");
    CHECK(!contains(r.out, "wall_ms"));
    CHECK(!j.contains("census"));
    // the interval center accepts both polynomial syntaxes
    auto comma = run("count-tuples --field 5 --f0 0,0,0,1 --eps 2/3 --line '0;1' --lambda 3");
    REQUIRE(comma.code == 0);
    CHECK(Json::parse(comma.out)["observed"] == 40);
}

TEST_CASE("count-tuples csv document") {
    auto r = run("count-tuples --field 5 --f0 t^3 --eps 2/3 --line '0;1' --lambda 3 "
                 "--format csv");
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string header, row;
    REQUIRE(std::getline(lines, header));
    REQUIRE(std::getline(lines, row));
    CHECK(header == "q,k,m,observed,main_num,main_den,rel_error,scaled_error,wall_ms");
    CHECK(row.substr(0, 21) == "5,3,2,40,125,3,-0.04,");
    CHECK(contains(row, "0.0894427191"));
}

TEST_CASE("census tallies every outcome") {
    auto r = run("census --field 3 --f0 t^3 --eps 7/10 --line '0;1' --lambda 3");
    REQUIRE(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["command"] == "census");
    REQUIRE(j.contains("census"));
    std::uint64_t total = j["degenerate"].get<std::uint64_t>();
    for (const auto& [key, cnt] : j["census"].items()) total += cnt.get<std::uint64_t>();
    CHECK(total == 27);
    CHECK(j["census"].contains("3"));
    CHECK(j["census"].contains("2+1"));
    CHECK(j["census"].contains("1+1+1"));
    CHECK(j["observed"] == j["census"]["3"]);
}

TEST_CASE("invalid instances exit 1 with the violation list") {
    auto r = run("count-tuples --field 5 --f0 t^3 --eps 2/3 --line '0;1' --lambda 2+1+1");
    CHECK(r.code == 1);
    CHECK(r.out.empty());
    CHECK(contains(r.err, "invalid experiment instance"));
    CHECK(contains(r.err, "partitions 4"));
    auto even = run("count-tuples --field 4 --f0 t^3 --eps 2/3 --line '0;1' --lambda 3");
    CHECK(even.code == 1);
    CHECK(contains(even.err, "characteristic 2"));
    auto missing = run("count-tuples --field 5 --f0 t^3");
    CHECK(missing.code == 1);
    CHECK(contains(missing.err, "need --file or all of"));
}

TEST_CASE("experiment files replace inline flags") {
    auto path = scratch_file("exp");
    {
        std::ofstream f(path);
        f << "# pinned cubic experiment\n"
          << "field=5\n"
          << "f0=t^3\n"
          << "epsilon=2/3\n"
          << "line=0;1\n"
          << "lambda=3\n";
    }
    auto from_file = run("count-tuples --file " + path.string());
    auto inline_run = run("count-tuples --field 5 --f0 t^3 --eps 2/3 --line '0;1' --lambda 3");
    REQUIRE(from_file.code == 0);
    CHECK(from_file.out == inline_run.out);
    auto conflict = run("count-tuples --file " + path.string() + " --field 5");
    CHECK(conflict.code == 1);
    CHECK(contains(conflict.err, "--file excludes"));
    std::filesystem::remove(path);

    auto bad = scratch_file("badexp");
    {
        std::ofstream f(bad);
        f << "field=5\n"
          << "not a key value pair\n";
    }
    auto broken = run("count-tuples --file " + bad.string());
    CHECK(broken.code == 1);
    CHECK(contains(broken.err, "line 2"));
    CHECK(contains(broken.err, "column"));
    std::filesystem::remove(bad);
    auto absent = run("count-tuples --file /nonexistent/exp.txt");
    CHECK(absent.code == 1);
    CHECK(contains(absent.err, "cannot open"));
}

TEST_CASE("scan-q walks the q ladder and flags invalid entries") {
    const std::string base =
        "scan-q --f0 t^3 --eps 2/3 --line '0;1' --lambda 3 --q 3,4,5,7,9";
    auto csv = run(base + " --format csv");
    REQUIRE(csv.code == 0);
    std::istringstream lines(csv.out);
    std::string line;
    std::vector<std::string> rows;
    while (std::getline(lines, line)) rows.push_back(line);
    REQUIRE(rows.size() == 7);  // header + 5 rows + summary
    CHECK(rows[0] == "q,k,m,observed,main_num,main_den,rel_error,scaled_error,wall_ms");
    CHECK(rows[1].substr(0, 8) == "3,3,2,8,");
    CHECK(rows[2] == "4,,,,,,,,");
    CHECK(rows[3].substr(0, 9) == "5,3,2,40,");
    CHECK(contains(rows[6], "# summary slope="));
    CHECK(contains(rows[6], "rows_used=4"));

    auto js = run(base);
    REQUIRE(js.code == 0);
    Json j = Json::parse(js.out);
    CHECK(j["command"] == "scan-q");
    CHECK(j["rows"].size() == 5);
    CHECK(j["rows"][1]["q"] == 4);
    CHECK(!j["rows"][1].contains("report"));
    REQUIRE(j["rows"][1].contains("errors"));
    CHECK(j["summary"]["slope"].get<double>() == doctest::Approx(-2.0).epsilon(1e-6));
    CHECK(j["summary"]["rows_used"] == 4);

    auto none = run("scan-q --f0 t^3 --eps 2/3 --line '0;1' --lambda 3 --q 4,8");
    CHECK(none.code == 1);
    CHECK(contains(none.err, "no q in the list"));
    auto badq = run("scan-q --f0 t^3 --eps 2/3 --line '0;1' --lambda 3 --q 3,x");
    CHECK(badq.code == 1);
    CHECK(contains(badq.err, "bad q value"));
}

TEST_CASE("reports are byte-identical across worker counts") {
    const std::string base =
        "census --field 9 --f0 t^3 --eps 7/10 --line '0;1' --line 't;1' --lambda 2+1 "
        "--lambda 1+1+1";
    auto w1 = run(base + " --workers 1");
    auto w4 = run(base + " --workers 4");
    REQUIRE(w1.code == 0);
    REQUIRE(w4.code == 0);
    CHECK(w1.out == w4.out);
    CHECK(!w1.out.empty());
}

TEST_CASE("output lands in --out instead of stdout") {
    auto path = scratch_file("outfile");
    auto to_file =
        run("count-tuples --field 5 --f0 t^3 --eps 2/3 --line '0;1' --lambda 3 --out " +
            path.string());
    REQUIRE(to_file.code == 0);
    CHECK(to_file.out.empty());
    auto to_stdout = run("count-tuples --field 5 --f0 t^3 --eps 2/3 --line '0;1' --lambda 3");
    CHECK(slurp(path) == to_stdout.out);
    std::filesystem::remove(path);
}

TEST_CASE("singular-series command") {
    auto r = run("singular-series --line 1,3 --P 100");
    REQUIRE(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["command"] == "singular-series");
    CHECK(j["exact"] == "3/2");
    CHECK(j["value"].get<double>() == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(j["truncation_P"] == 100);
    CHECK(j["lines"][0] == "1,3");
    auto twin = run("singular-series --line 0,1 --line 2,1 --P 2000");
    REQUIRE(twin.code == 0);
    double v = Json::parse(twin.out)["value"].get<double>();
    CHECK(1.31 < v);
    CHECK(v < 1.33);
    auto obstructed = run("singular-series --line 0,1 --line 1,1");
    CHECK(Json::parse(obstructed.out)["exact"] == "0");
    auto dup = run("singular-series --line 0,1 --line 0,1");
    CHECK(dup.code == 1);
    CHECK(contains(dup.err, "strongly distinct"));
}

TEST_CASE("int-window command") {
    auto r = run("int-window --line 0,1 --x 1000000 --u 1000");
    REQUIRE(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["command"] == "int-window");
    CHECK(j["observed"] == 75);
    CHECK(j["u"] == 1000);
    CHECK(j["ratio"].get<double>() == doctest::Approx(1.0361632918473205).epsilon(1e-9));
    CHECK(j["singular_series"] == "1");
    auto eps = run("int-window --line 0,1 --x 1000000 --eps 1/2");
    REQUIRE(eps.code == 0);
    Json je = Json::parse(eps.out);
    CHECK(je["u"] == 1000);
    CHECK(je["observed"] == 75);
    auto both = run("int-window --line 0,1 --x 1000000 --u 10 --eps 1/2");
    CHECK(both.code == 1);
    CHECK(contains(both.err, "exactly one of --u or --eps"));
    auto neither = run("int-window --line 0,1 --x 1000000");
    CHECK(neither.code == 1);
}

TEST_CASE("disc-check command (pinned run)") {
    auto r = run("disc-check --field 101 --f0 t^4 --line '0;1' --line 't;1' "
                 "--trials 200 --seed 42");
    REQUIRE(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["command"] == "disc-check");
    CHECK(j["coprime_failures"] == 3);
    CHECK(j["successes"] == 197);
    CHECK(j["degenerate"] == 0);
    CHECK(j["nonsquare_failures"][0] == 0);
    CHECK(j["nonsquare_failures"][1] == 0);
    REQUIRE(j["witnesses"].size() == 3);
    CHECK(j["witnesses"][0]["trial"] == 26);
    CHECK(j["witnesses"][0]["kind"] == "coprime");
    CHECK(j["witnesses"][0]["a"][0] == 66);
    CHECK(j["witnesses"][0]["a"][1] == 15);
    auto wrong = run("disc-check --field 101 --f0 t^4 --line '0;1' --trials 5");
    CHECK(wrong.code == 1);
    CHECK(contains(wrong.err, "exactly two"));
}

TEST_CASE("square-independence command (pinned run)") {
    auto r = run("square-independence --field 7 --f0 t^3 --line '0;1' --line 't;1' "
                 "--line '1;0,1' --trials 50 --seed 7");
    REQUIRE(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["command"] == "square-independence");
    CHECK(j["successes"] == 32);
    CHECK(j["degenerate"] == 0);
    CHECK(j["subset_failures"]["1"] == 9);
    CHECK(j["subset_failures"]["2"] == 4);
    CHECK(j["subset_failures"]["3"] == 5);
    CHECK(j["subset_failures"]["1,2"] == 1);
    CHECK(j["subset_failures"]["2,3"] == 3);
    CHECK(j["subset_failures"]["1,2,3"] == 0);
    CHECK(j["nonsquare_failures"][0] == 9);
    CHECK(!j.contains("coprime_failures"));
}

TEST_CASE("malformed FFPRIME_WORKERS warns and falls back") {
    auto r = run("count-tuples --field 5 --f0 t^3 --eps 2/3 --line '0;1' --lambda 3",
                 "FFPRIME_WORKERS=abc ");
    CHECK(r.code == 0);
    CHECK(contains(r.err, "FFPRIME_WORKERS"));
    CHECK(Json::parse(r.out)["observed"] == 40);
    auto ok = run("count-tuples --field 5 --f0 t^3 --eps 2/3 --line '0;1' --lambda 3",
                  "FFPRIME_WORKERS=2 ");
    CHECK(ok.code == 0);
    CHECK(ok.err.empty());
}

TEST_CASE("selftest runs every oracle suite") {
    auto r = run("selftest");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "selftest passed"));
    CHECK(contains(r.out, "ok   partition-function"));
    CHECK(contains(r.out, "ok   resultant-vs-sylvester"));
    CHECK(contains(r.out, "ok   sieve-vs-trial-division"));
    CHECK(!contains(r.out, "FAIL"));
}
