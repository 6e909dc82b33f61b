#include "cf/certificate.hpp"

#include <cstdio>
#include <sstream>

namespace cf {

namespace {

void flatten(const nlohmann::ordered_json& j, const std::string& key, std::ostringstream& out) {
  if (j.is_object()) {
    if (j.empty()) out << key << ": {}\n";
    for (const auto& [k, v] : j.items()) flatten(v, key.empty() ? k : key + "." + k, out);
  } else if (j.is_array()) {
    if (j.empty()) out << key << ": []\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      flatten(j[i], key + "[" + std::to_string(i) + "]", out);
    }
  } else if (j.is_string()) {
    out << key << ": " << j.get<std::string>() << "\n";
  } else {
    out << key << ": " << j.dump() << "\n";
  }
}

std::string format_ms(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

}  // namespace

nlohmann::ordered_json Certificate::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["inputs"] = inputs;
  j["witness"] = witness;
  j["pass"] = pass;
  j["counterexample"] = counterexample;
  if (wall_time_ms) j["wall_time_ms"] = format_ms(*wall_time_ms);
  return j;
}

std::string Certificate::to_text() const {
  std::ostringstream out;
  out << "command: " << command << "\n";
  flatten(inputs, "inputs", out);
  flatten(witness, "witness", out);
  out << "pass: " << (pass ? "true" : "false") << "\n";
  if (!counterexample.empty()) out << "counterexample: " << counterexample << "\n";
  if (wall_time_ms) out << "wall_time_ms: " << format_ms(*wall_time_ms) << "\n";
  return out.str();
}

}  // namespace cf
