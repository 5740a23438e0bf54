#pragma once

#include "json.hpp"
#include "ospchar/admissible.hpp"
#include "ospchar/charseries.hpp"
#include "ospchar/fusion.hpp"
#include "ospchar/qseries.hpp"
#include "ospchar/rootdata.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ospc {

// Integral coordinates become JSON integers, others "num/den" strings.
nlohmann::json weight_json(const Weight& w);
Weight weight_from_json(const nlohmann::json& j, Convention conv);
std::string weight_text(const Weight& w);  // "(1,1/2)"
std::string convention_name(Convention c);
Convention parse_convention(const std::string& s);

std::uint64_t fnv1a64(std::string_view bytes);

nlohmann::json to_json(const FormalCharacter& s);
std::string to_text(const FormalCharacter& s);
nlohmann::json to_json(const QSeries& s);
std::string to_text(const QSeries& s);

nlohmann::json weights_json(WeightSet set, int p, int q, int n, const std::vector<Weight>& ws);
std::string weights_csv(const std::vector<Weight>& ws);
std::string weights_text(const std::vector<Weight>& ws);

nlohmann::json to_json(const DecompositionTable& t);
std::string to_csv(const DecompositionTable& t);
std::string to_text(const DecompositionTable& t);

std::string label_text(const Label& l);
std::string to_csv(const FusionTable& t);
std::string to_text(const FusionTable& t);

}  // namespace ospc
