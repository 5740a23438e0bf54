#pragma once

#include "json.hpp"

#include <string>

namespace ospc {

struct Report {
  std::string identity;
  nlohmann::json params = nlohmann::json::object();
  int trunc = 0;
  bool passed = false;
  nlohmann::json first_mismatch;  // null when passed
  nlohmann::json stats = nlohmann::json::object();
};

nlohmann::json to_json(const Report& r);
std::string to_text(const Report& r);

}  // namespace ospc
