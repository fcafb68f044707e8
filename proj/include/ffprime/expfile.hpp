#pragma once

#include "ffprime/experiment.hpp"

#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace ffprime {

// Parsed form of the line-oriented experiment definition format:
//   field=5          coefficient field ("p" or "p^e")
//   f0=t^3           monic center, either polynomial syntax
//   epsilon=7/10     exact rational in (0,1)
//   line=0;1         one linear function "f;g" per line= entry
//   lambda=3         one target partition per line, "3+1" syntax
//   B=8              optional bound (default 8)
// '#' starts a comment; blank lines are skipped.
struct ExperimentFile {
    std::string field;
    std::string f0;
    std::string epsilon;
    std::vector<std::string> lines;
    std::vector<std::string> lambdas;
    std::optional<unsigned> B;
};

// Throws std::invalid_argument with "line L, column C:" context on malformed
// input. `source` names the stream in error messages.
ExperimentFile parse_experiment_file(std::istream& in, const std::string& source);
ExperimentFile load_experiment_file(const std::string& path);

// Resolves the textual fields into a typed instance (field construction,
// polynomial/partition parsing). Validation is the caller's job.
ExperimentInstance instance_from_file(const ExperimentFile& file,
                                      bool allow_char2 = false);

}  // namespace ffprime
