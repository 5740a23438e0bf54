#include "ospchar/report.hpp"

#include <sstream>

namespace ospc {

nlohmann::json to_json(const Report& r) {
  nlohmann::json j = {{"identity", r.identity},
                      {"params", r.params},
                      {"trunc", r.trunc},
                      {"status", r.passed ? "pass" : "fail"},
                      {"stats", r.stats}};
  if (!r.passed) j["first_mismatch"] = r.first_mismatch;
  return j;
}

std::string to_text(const Report& r) {
  std::ostringstream os;
  os << r.identity << ": " << (r.passed ? "pass" : "fail") << "  params=" << r.params.dump()
     << " trunc=" << r.trunc;
  if (!r.passed) os << "\n  first mismatch: " << r.first_mismatch.dump();
  os << "\n";
  return os.str();
}

}  // namespace ospc
