#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace xc {

using json = nlohmann::ordered_json;

enum class Status { pass, fail, skipped };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "fail";
}

/// One named property check with optional counterexamples.
struct Check {
  std::string name;
  Status status = Status::pass;
  json detail = json::object();
  json counterexamples = json::array();

  bool passed() const { return status != Status::fail; }
  json to_json() const {
    json j;
    j["name"] = name;
    j["status"] = status_name(status);
    if (!detail.empty()) j["detail"] = detail;
    if (!counterexamples.empty()) j["counterexamples"] = counterexamples;
    return j;
  }
};

inline bool all_passed(const std::vector<Check>& checks) {
  for (const auto& c : checks) {
    if (!c.passed()) return false;
  }
  return true;
}

inline json checks_json(const std::vector<Check>& checks) {
  json arr = json::array();
  for (const auto& c : checks) arr.push_back(c.to_json());
  return arr;
}

}  // namespace xc
