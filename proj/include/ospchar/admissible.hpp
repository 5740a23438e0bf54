#pragma once

#include "ospchar/report.hpp"
#include "ospchar/rootdata.hpp"

#include <string>
#include <utility>
#include <vector>

namespace ospc {

enum class WeightSet { PC, PB, PBQ, PCheck };
enum class LevelKind { Principal, Coprincipal };

// Level k = -h_vee + p/q of sp_2n (type C) or so_{2n+1} (type B).
struct AdmissibleLevel {
  RootType type = RootType::C;
  int n = 0;
  int p = 0;
  int q = 0;
  LevelKind kind = LevelKind::Principal;
  bool admissible = false;
  bool nondegenerate = false;  // for the principal W-algebra at this level
  bool coboundary = false;
  Rational level;
};

AdmissibleLevel classify_admissible(RootType type, int n, int p, int q);

WeightSet parse_weight_set(const std::string& name);
std::string weight_set_name(WeightSet s);

// Sorted lexicographically. PC and PCheck are C-side integer weights; PB and PBQ are B-side.
std::vector<Weight> enumerate_weights(WeightSet set, int p, int q, int n);

Report verify_bijections(int n, int p);
// Every p from n+1 through 11.
Report verify_bijections_sweep(int n);

struct DecompositionRow {
  Weight mu;      // B-side
  bool ramond = false;
  std::vector<std::pair<Weight, std::pair<Weight, Weight>>> summands;  // (lambda, W-label (lambda, mu))
};

struct DecompositionTable {
  int n = 0;
  int u = 0;
  int v = 0;
  Rational k;
  Rational ell;
  AdmissibleLevel k_level;
  AdmissibleLevel ell_level;  // type C data at the coset level
  std::string mechanism;      // "coordinate-bijection" or "fusion-generation"
  std::vector<Weight> left;   // P_C(u, v)
  std::vector<Weight> right;  // P_B alphabet of the coset level
  std::vector<DecompositionRow> rows;
};

// k = -(n+1) + u/v; ell + n + 1 = u / (2u - v).
DecompositionTable decomposition_table(int n, int u, int v);

}  // namespace ospc
