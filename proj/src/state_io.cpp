#include "mriu/state_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mriu/errors.hpp"

namespace mriu {

using nlohmann::json;

StateTensor state_from_json(const std::string& text, bool require_normalized) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("malformed state file: ") + e.what());
  }
  if (!j.is_object() || !j.contains("dims") || !j.contains("coeffs")) {
    throw DomainError("state file needs \"dims\" and \"coeffs\"");
  }
  Dims dims;
  for (const auto& d : j.at("dims")) {
    if (!d.is_number_integer() || d.get<long long>() <= 0) {
      throw DomainError("dims must be positive integers");
    }
    dims.push_back(d.get<std::size_t>());
  }
  std::vector<Complex> coeffs;
  for (const auto& c : j.at("coeffs")) {
    if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number()) {
      throw DomainError("each coefficient must be [re, im]");
    }
    coeffs.emplace_back(c[0].get<double>(), c[1].get<double>());
  }
  StateTensor t(std::move(dims), std::move(coeffs));
  if (require_normalized) t.require_normalized();
  return t;
}

std::string state_to_json(const StateTensor& c) {
  json j;
  j["dims"] = c.dims();
  json arr = json::array();
  for (const auto& z : c.coeffs()) arr.push_back({z.real(), z.imag()});
  j["coeffs"] = std::move(arr);
  return j.dump();
}

StateTensor read_state_file(const std::filesystem::path& path, bool require_normalized) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open state file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return state_from_json(ss.str(), require_normalized);
}

void write_state_file(const std::filesystem::path& path, const StateTensor& c) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write state file " + path.string());
  out << state_to_json(c) << '\n';
}

}  // namespace mriu
