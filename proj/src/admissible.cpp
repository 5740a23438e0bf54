#include "ospchar/admissible.hpp"

#include "ospchar/error.hpp"

#include <algorithm>
#include <numeric>

namespace ospc {

namespace {

void check_rank(int n) { require(n >= 1 && n <= 6, ErrorCode::Limit, "rank must be between 1 and 6"); }

// Dominant integer vectors d_1 >= ... >= d_n >= floor with entries of the given parity class
// (parity < 0 means any) and d_1 <= top.
std::vector<IntVec> dominant_box(int n, std::int64_t top, int parity) {
  std::vector<IntVec> out;
  if (top < 0) return out;
  IntVec cur(static_cast<std::size_t>(n));
  auto ok = [&](std::int64_t v) { return parity < 0 || ((v % 2) + 2) % 2 == parity; };
  auto rec = [&](auto&& self, int i, std::int64_t bound) -> void {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (std::int64_t v = 0; v <= bound; ++v) {
      if (!ok(v)) continue;
      cur[static_cast<std::size_t>(i)] = v;
      self(self, i + 1, v);
    }
  };
  rec(rec, 0, top);
  return out;
}

std::int64_t second(const IntVec& v) { return v.size() > 1 ? v[1] : 0; }

Weight halved_b(const IntVec& d) {
  std::vector<Rational> c;
  for (auto x : d) c.push_back(make_rational(x, 2));
  return Weight(std::move(c), Convention::BSide);
}

}  // namespace

AdmissibleLevel classify_admissible(RootType type, int n, int p, int q) {
  check_rank(n);
  require(type != RootType::OSP, ErrorCode::InvalidArgument, "admissible classification is for types B and C");
  require(p >= 1 && q >= 1, ErrorCode::InvalidArgument, "p and q must be positive");
  AdmissibleLevel a;
  a.type = type;
  a.n = n;
  a.p = p;
  a.q = q;
  a.level = make_rational(p, q) - dual_coxeter(type, n);
  a.kind = q % 2 == 1 ? LevelKind::Principal : LevelKind::Coprincipal;
  const int hv = static_cast<int>(to_int64(dual_coxeter(type, n)));
  const int h = coxeter_number(n);
  if (std::gcd(p, q) != 1) return a;
  a.admissible = a.kind == LevelKind::Principal ? p >= hv : p >= h;
  if (type == RootType::C && a.admissible) {
    if (a.kind == LevelKind::Principal) {
      a.nondegenerate = q >= h;
      a.coboundary = q == h;
    } else {
      a.nondegenerate = q >= 2 * hv;
      a.coboundary = q == 2 * (2 * n - 1);
    }
  }
  return a;
}

WeightSet parse_weight_set(const std::string& name) {
  if (name == "PC" || name == "pc") return WeightSet::PC;
  if (name == "PB" || name == "pb") return WeightSet::PB;
  if (name == "PBQ" || name == "pbq") return WeightSet::PBQ;
  if (name == "PCHECK" || name == "PCheck" || name == "pcheck") return WeightSet::PCheck;
  fail(ErrorCode::InvalidArgument, "unknown weight set '" + name + "' (expected PC, PB, PBQ or PCHECK)");
}

std::string weight_set_name(WeightSet s) {
  switch (s) {
    case WeightSet::PC:
      return "PC";
    case WeightSet::PB:
      return "PB";
    case WeightSet::PBQ:
      return "PBQ";
    case WeightSet::PCheck:
      return "PCHECK";
  }
  return "?";
}

std::vector<Weight> enumerate_weights(WeightSet set, int p, int q, int n) {
  check_rank(n);
  require(p >= 1 && q >= 1 && std::gcd(p, q) == 1, ErrorCode::Domain,
          "weight sets need coprime positive p, q (got " + std::to_string(p) + ", " + std::to_string(q) + ")");
  std::vector<Weight> out;
  switch (set) {
    case WeightSet::PC: {
      auto lvl = classify_admissible(RootType::C, n, p, q);
      require(lvl.admissible, ErrorCode::Domain, "sp level with p/q = " + std::to_string(p) + "/" +
                                                     std::to_string(q) + " is not admissible");
      for (const auto& c : dominant_box(n, p, -1)) {
        bool keep = q % 2 == 1 ? c[0] <= p - n - 1 : c[0] + second(c) <= p - 2 * n;
        if (keep) out.push_back(Weight::from_ints(c));
      }
      break;
    }
    case WeightSet::PB:
    case WeightSet::PBQ: {
      // Doubled coordinates: integral weights are even vectors, spinor weights odd vectors.
      for (int parity : {0, 1}) {
        if (set == WeightSet::PBQ && parity == 1) continue;
        for (const auto& d : dominant_box(n, 2 * p, parity)) {
          bool keep = q % 2 == 1 ? d[0] + second(d) <= 2 * (p - 2 * n + 1) : d[0] <= p - 2 * n;
          if (keep) out.push_back(halved_b(d));
        }
      }
      break;
    }
    case WeightSet::PCheck: {
      require(q % 2 == 0, ErrorCode::Domain, "coweight set needs an even second parameter");
      for (int parity : {0, 1})
        for (const auto& c : dominant_box(n, p - 2 * n, parity)) out.push_back(Weight::from_ints(c));
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<Weight> retag(const std::vector<Weight>& v, Convention c) {
  std::vector<Weight> out;
  for (const auto& w : v) out.push_back(w.retagged(c));
  std::sort(out.begin(), out.end());
  return out;
}

nlohmann::json coords_json(const Weight& w) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& c : w.coords()) {
    if (is_integer(c))
      a.push_back(to_int64(c));
    else
      a.push_back(to_string(c));
  }
  return a;
}

// First element of the symmetric difference, reported with the side it is missing from.
std::optional<nlohmann::json> set_difference_witness(const std::vector<Weight>& a, const std::vector<Weight>& b) {
  std::vector<Weight> only_a, only_b;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(only_a));
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(only_b));
  if (!only_a.empty()) return nlohmann::json{{"only_in_left", coords_json(only_a.front())}};
  if (!only_b.empty()) return nlohmann::json{{"only_in_right", coords_json(only_b.front())}};
  return std::nullopt;
}

}  // namespace

Report verify_bijections(int n, int p) {
  check_rank(n);
  Report r;
  r.identity = "bijections";
  r.params = {{"n", n}, {"p", p}};
  r.passed = true;
  nlohmann::json checks = nlohmann::json::array();
  auto record = [&](const std::string& name, nlohmann::json detail, std::optional<nlohmann::json> bad) {
    detail["check"] = name;
    detail["status"] = bad ? "fail" : "pass";
    checks.push_back(detail);
    if (bad && r.passed) {
      r.passed = false;
      (*bad)["check"] = name;
      r.first_mismatch = *bad;
    }
  };

  if (p >= n + 1) {
    auto left = enumerate_weights(WeightSet::PC, p, 1, n);
    auto right = retag(enumerate_weights(WeightSet::PBQ, 2 * p - 1, 2 * p, n), Convention::CSide);
    record("PC(p,1)=PBQ(2p-1,2p)", {{"size", left.size()}}, set_difference_witness(left, right));
  }
  if (p % 2 == 1 && p >= 2 * n) {
    auto left = enumerate_weights(WeightSet::PC, p, 2, n);
    auto right = retag(enumerate_weights(WeightSet::PBQ, p - 1, p, n), Convention::CSide);
    record("PC(p,2)=PBQ(p-1,p)", {{"size", left.size()}}, set_difference_witness(left, right));
  }
  // Coweight chain for the principal coset denominators q.
  for (int q = 2 * n; q <= 2 * n + 10; ++q) {
    if (q % 2 == 0 || std::gcd(q, p) != 1) continue;
    auto check = enumerate_weights(WeightSet::PCheck, q, 2 * p, n);
    std::vector<Weight> level_set;
    for (const auto& c : dominant_box(n, q - 2 * n, -1)) level_set.push_back(Weight::from_ints(c));
    std::sort(level_set.begin(), level_set.end());
    auto pc = enumerate_weights(WeightSet::PC, q, 1, n);
    std::optional<nlohmann::json> bad;
    for (const auto& w : check)
      if (!std::binary_search(level_set.begin(), level_set.end(), w)) {
        bad = nlohmann::json{{"q", q}, {"not_in_level_set", coords_json(w)}};
        break;
      }
    if (!bad)
      for (const auto& w : level_set)
        if (!std::binary_search(pc.begin(), pc.end(), w)) {
          bad = nlohmann::json{{"q", q}, {"not_in_PC", coords_json(w)}};
          break;
        }
    // so_{2n+1} weights mu correspond to coweights c = 2 mu.
    if (!bad) {
      std::vector<Weight> doubled;
      for (const auto& w : enumerate_weights(WeightSet::PB, q, 2 * p, n))
        doubled.push_back(w.scaled(2).retagged(Convention::CSide));
      std::sort(doubled.begin(), doubled.end());
      if (auto d = set_difference_witness(check, doubled)) {
        bad = *d;
        (*bad)["q"] = q;
      }
    }
    record("PCHECK(q,2p) chain", {{"q", q}, {"size", check.size()}}, bad);
  }
  r.stats = {{"checks", checks}};
  return r;
}

Report verify_bijections_sweep(int n) {
  Report r;
  r.identity = "bijections";
  r.params = {{"n", n}, {"p_range", {n + 1, 11}}};
  r.passed = true;
  nlohmann::json runs = nlohmann::json::array();
  for (int p = n + 1; p <= 11; ++p) {
    auto one = verify_bijections(n, p);
    runs.push_back({{"p", p}, {"status", one.passed ? "pass" : "fail"}, {"checks", one.stats["checks"].size()}});
    if (!one.passed && r.passed) {
      r.passed = false;
      r.first_mismatch = one.first_mismatch;
      r.first_mismatch["p"] = p;
    }
  }
  r.stats = {{"runs", runs}};
  return r;
}

DecompositionTable decomposition_table(int n, int u, int v) {
  check_rank(n);
  require(u >= 1 && v >= 1, ErrorCode::InvalidArgument, "u and v must be positive");
  DecompositionTable t;
  t.n = n;
  t.u = u;
  t.v = v;
  t.k_level = classify_admissible(RootType::C, n, u, v);
  require(t.k_level.admissible, ErrorCode::Domain,
          "k = -(n+1) + " + std::to_string(u) + "/" + std::to_string(v) + " is not admissible");
  t.k = t.k_level.level;
  require(2 * u - v > 0, ErrorCode::Domain, "coset level is not positive-admissible (2u - v <= 0)");
  int g = std::gcd(u, 2 * u - v);
  int p = u / g, q = (2 * u - v) / g;
  t.ell_level = classify_admissible(RootType::C, n, p, q);
  require(t.ell_level.nondegenerate, ErrorCode::Domain,
          "coset level ell = -(n+1) + " + std::to_string(p) + "/" + std::to_string(q) +
              " is not nondegenerate admissible");
  t.ell = t.ell_level.level;
  t.mechanism = (v == 1 || v == 2) ? "coordinate-bijection" : "fusion-generation";
  t.left = enumerate_weights(WeightSet::PC, u, v, n);
  t.right = t.ell_level.kind == LevelKind::Principal ? enumerate_weights(WeightSet::PB, q, 2 * p, n)
                                                     : enumerate_weights(WeightSet::PB, q / 2, p, n);
  for (const auto& mu : t.right) {
    DecompositionRow row;
    row.mu = mu;
    row.ramond = !mu.is_integral();
    for (const auto& lambda : t.left) row.summands.push_back({lambda, {lambda, mu}});
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace ospc
