#pragma once

#include <string>

#include "cgiter/experiments.hpp"
#include "cgiter/lp.hpp"
#include "cgiter/rational.hpp"

namespace cgiter {

// Instance file: JSON object {"n": int, "m": int, "c": [int], "A": [[int]],
// "b": [int]}.  Throws InputError with field context on malformed input.
IlpInstance instance_from_json_text(const std::string& text);
IlpInstance load_instance(const std::string& path);

ExperimentConfig load_config(const std::string& path);

// Nu specification: either a whitespace-separated list of fractions
// ("1/4 3/4") or a JSON object {"p": [int], "q": int}.  When `spec` names an
// existing file its contents are parsed instead.  Entries must lie in [0,1);
// the result is normalized to standard form.
NuForm parse_nuspec(const std::string& spec);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace cgiter
