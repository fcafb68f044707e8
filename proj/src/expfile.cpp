#include "ffprime/expfile.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ffprime {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

[[noreturn]] void fail(const std::string& source, unsigned line, std::size_t col,
                       const std::string& what) {
    throw std::invalid_argument(source + ": line " + std::to_string(line) + ", column " +
                                std::to_string(col + 1) + ": " + what);
}

}  // namespace

ExperimentFile parse_experiment_file(std::istream& in, const std::string& source) {
    ExperimentFile out;
    std::string raw;
    unsigned lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string_view sv = raw;
        if (auto hash = sv.find('#'); hash != std::string_view::npos) sv = sv.substr(0, hash);
        std::string_view stripped = trim(sv);
        if (stripped.empty()) continue;

        auto eq = stripped.find('=');
        if (eq == std::string_view::npos)
            fail(source, lineno, raw.find_first_not_of(" \t"), "expected key=value");
        std::string key{trim(stripped.substr(0, eq))};
        std::string value{trim(stripped.substr(eq + 1))};
        std::size_t value_col = raw.find('=') + 1;
        if (value.empty()) fail(source, lineno, value_col, "empty value for '" + key + "'");

        auto set_once = [&](std::string& slot) {
            if (!slot.empty())
                fail(source, lineno, 0, "duplicate key '" + key + "'");
            slot = value;
        };
        if (key == "field") {
            set_once(out.field);
        } else if (key == "f0") {
            set_once(out.f0);
        } else if (key == "epsilon") {
            set_once(out.epsilon);
        } else if (key == "line") {
            out.lines.push_back(value);
        } else if (key == "lambda") {
            out.lambdas.push_back(value);
        } else if (key == "B") {
            if (out.B) fail(source, lineno, 0, "duplicate key 'B'");
            try {
                std::size_t used = 0;
                unsigned long v = std::stoul(value, &used);
                if (used != value.size() || v == 0 || v > 64) throw std::out_of_range("");
                out.B = static_cast<unsigned>(v);
            } catch (const std::exception&) {
                fail(source, lineno, value_col, "B must be an integer in [1, 64]");
            }
        } else {
            fail(source, lineno, raw.find_first_not_of(" \t"), "unknown key '" + key + "'");
        }
    }
    if (out.field.empty()) throw std::invalid_argument(source + ": missing key 'field'");
    if (out.f0.empty()) throw std::invalid_argument(source + ": missing key 'f0'");
    if (out.epsilon.empty()) throw std::invalid_argument(source + ": missing key 'epsilon'");
    if (out.lines.empty()) throw std::invalid_argument(source + ": no 'line' entries");
    if (out.lambdas.size() != out.lines.size())
        throw std::invalid_argument(source + ": " + std::to_string(out.lines.size()) +
                                    " line entries but " + std::to_string(out.lambdas.size()) +
                                    " lambda entries");
    return out;
}

ExperimentFile load_experiment_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open experiment file '" + path + "'");
    return parse_experiment_file(in, path);
}

ExperimentInstance instance_from_file(const ExperimentFile& file, bool allow_char2) {
    FieldPtr field = Field::parse(file.field, allow_char2);
    ExperimentInstance inst{field,
                            Poly::parse(field, file.f0),
                            parse_rational(file.epsilon),
                            {},
                            {},
                            file.B.value_or(8)};
    for (const auto& l : file.lines) inst.lines.push_back(LinearFunction::parse(field, l));
    for (const auto& l : file.lambdas) inst.targets.push_back(Partition::parse(l));
    return inst;
}

}  // namespace ffprime
