#pragma once

#include <optional>
#include <string>

#include <json.hpp>

namespace cf {

// One command's report. Field order is insertion order, so rendering is
// deterministic given the inputs.
struct Certificate {
  std::string command;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  nlohmann::ordered_json witness = nlohmann::ordered_json::object();
  bool pass = false;
  std::string counterexample;  // empty when pass
  std::optional<double> wall_time_ms;

  nlohmann::ordered_json to_json() const;
  // "key: value" lines; nested keys are dotted, array items indexed.
  std::string to_text() const;
};

}  // namespace cf
