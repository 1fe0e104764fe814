#include "cgiter/formats.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cgiter/errors.hpp"

#include "json.hpp"

namespace cgiter {

namespace {

Integer json_integer(const nlohmann::json& v, const std::string& where) {
  if (v.is_number_integer()) return Integer(static_cast<long>(v.get<long long>()));
  if (v.is_string()) {
    try {
      return Integer(v.get<std::string>(), 10);
    } catch (const std::invalid_argument&) {
    }
  }
  throw InputError("instance: " + where + " must be an integer");
}

}  // namespace

IlpInstance instance_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("instance: ") + e.what());
  }
  for (const char* key : {"n", "m", "c", "A", "b"})
    if (!j.contains(key)) throw InputError(std::string("instance: missing field '") + key + "'");
  IlpInstance inst;
  inst.n = j["n"].get<int>();
  inst.m = j["m"].get<int>();
  if (inst.n <= 0 || inst.m <= 0) throw InputError("instance: n and m must be positive");
  if (!j["c"].is_array() || static_cast<int>(j["c"].size()) != inst.n)
    throw InputError("instance: c must be an array of length n");
  for (int i = 0; i < inst.n; ++i) inst.c.push_back(json_integer(j["c"][static_cast<size_t>(i)], "c entry"));
  if (!j["A"].is_array() || static_cast<int>(j["A"].size()) != inst.m)
    throw InputError("instance: A must have m rows");
  for (int r = 0; r < inst.m; ++r) {
    const auto& row = j["A"][static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != inst.n)
      throw InputError("instance: A row " + std::to_string(r) + " must have n entries");
    IntVec out;
    for (int cidx = 0; cidx < inst.n; ++cidx)
      out.push_back(json_integer(row[static_cast<size_t>(cidx)], "A entry"));
    inst.a.push_back(std::move(out));
  }
  if (!j["b"].is_array() || static_cast<int>(j["b"].size()) != inst.m)
    throw InputError("instance: b must be an array of length m");
  for (int i = 0; i < inst.m; ++i) inst.b.push_back(json_integer(j["b"][static_cast<size_t>(i)], "b entry"));
  inst.validate();
  return inst;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write file '" + path + "'");
  out << content;
}

IlpInstance load_instance(const std::string& path) { return instance_from_json_text(read_file(path)); }

ExperimentConfig load_config(const std::string& path) {
  return ExperimentConfig::from_json_text(read_file(path));
}

NuForm parse_nuspec(const std::string& spec) {
  std::string text = spec;
  std::error_code ec;
  if (std::filesystem::exists(spec, ec)) text = read_file(spec);
  try {
    std::string trimmed = text;
    size_t first = trimmed.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw InputError("nu: empty specification");
    if (trimmed[first] == '{') {
      nlohmann::json j = nlohmann::json::parse(text);
      if (!j.contains("p") || !j.contains("q")) throw InputError("nu: JSON form needs fields p and q");
      IntVec p;
      for (const auto& v : j["p"]) p.push_back(json_integer(v, "p entry"));
      Integer q = json_integer(j["q"], "q");
      if (q <= 0) throw InputError("nu: q must be positive");
      for (const Integer& pi : p)
        if (pi < 0 || pi >= q) throw InputError("nu: entries must satisfy 0 <= p_i < q");
      return NuForm::normalized(std::move(p), std::move(q));
    }
    RatVec v = parse_rational_vector(text);
    if (v.empty()) throw InputError("nu: no entries");
    return NuForm::from_vector(v);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("nu: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("nu: ") + e.what());
  }
}

}  // namespace cgiter
