#include "doctest.h"

#include "ospchar/admissible.hpp"
#include "ospchar/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>

using namespace ospc;

namespace {

std::vector<IntVec> coords(const std::vector<Weight>& ws) {
  std::vector<IntVec> out;
  for (const auto& w : ws) out.push_back(w.to_ints());
  return out;
}

std::int64_t binom(std::int64_t a, std::int64_t b) {
  if (b < 0 || b > a) return 0;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

}  // namespace

TEST_SUITE("admissible") {
  TEST_CASE("weight set examples") {
    auto pc = enumerate_weights(WeightSet::PC, 4, 1, 2);
    CHECK(coords(pc) == std::vector<IntVec>{{0, 0}, {1, 0}, {1, 1}});
    for (const auto& w : pc) CHECK(w.convention() == Convention::CSide);
    CHECK(coords(enumerate_weights(WeightSet::PC, 3, 1, 2)) == std::vector<IntVec>{{0, 0}});
    auto pbq = enumerate_weights(WeightSet::PBQ, 7, 8, 2);
    CHECK(coords(pbq) == std::vector<IntVec>{{0, 0}, {1, 0}, {1, 1}});
    for (const auto& w : pbq) CHECK(w.convention() == Convention::BSide);
    // PB(7, 8) holds PBQ plus the spinor weights
    auto pb = enumerate_weights(WeightSet::PB, 7, 8, 2);
    std::size_t spinors = 0;
    for (const auto& w : pb) {
      if (w.is_integral())
        CHECK(std::find(pbq.begin(), pbq.end(), w) != pbq.end());
      else {
        CHECK(w.is_half_integral());
        ++spinors;
      }
    }
    CHECK(spinors + pbq.size() == pb.size());
  }

  TEST_CASE("PC sizes are binomial coefficients") {
    for (int n = 1; n <= 4; ++n)
      for (int p = n + 1; p <= 10; ++p)
        CHECK(static_cast<std::int64_t>(enumerate_weights(WeightSet::PC, p, 1, n).size()) == binom(p - 1, n));
  }

  TEST_CASE("sets are sorted, dominant and duplicate free") {
    for (auto set : {WeightSet::PC, WeightSet::PB, WeightSet::PBQ})
      for (int q : {1, 2, 5, 8}) {
        auto ws = enumerate_weights(set, 9, q, 3);
        CHECK(std::is_sorted(ws.begin(), ws.end()));
        CHECK(std::adjacent_find(ws.begin(), ws.end()) == ws.end());
        for (const auto& w : ws) CHECK(w.is_dominant());
      }
    auto chk = enumerate_weights(WeightSet::PCheck, 7, 8, 2);
    for (const auto& w : chk) {
      auto c = w.to_ints();
      CHECK((c[0] - c[1]) % 2 == 0);
    }
  }

  TEST_CASE("classification") {
    auto a = classify_admissible(RootType::C, 2, 4, 7);
    CHECK(a.admissible);
    CHECK(a.kind == LevelKind::Principal);
    CHECK(a.nondegenerate);
    CHECK_FALSE(a.coboundary);
    CHECK(a.level == make_rational(-17, 7));
    CHECK_FALSE(classify_admissible(RootType::C, 2, 2, 7).admissible);
    CHECK_FALSE(classify_admissible(RootType::C, 2, 4, 3).nondegenerate);
    CHECK_FALSE(classify_admissible(RootType::C, 2, 6, 9).admissible);  // gcd
    auto co = classify_admissible(RootType::C, 2, 5, 6);
    CHECK(co.kind == LevelKind::Coprincipal);
    CHECK(co.admissible);
    CHECK(co.nondegenerate);
    CHECK(co.coboundary);
    CHECK_FALSE(classify_admissible(RootType::C, 2, 3, 8).admissible);  // coprincipal needs p >= h
    CHECK(classify_admissible(RootType::B, 2, 3, 1).admissible);
    CHECK_THROWS_AS(classify_admissible(RootType::C, 2, 0, 1), Error);
  }

  TEST_CASE("bijections") {
    CHECK(coords(enumerate_weights(WeightSet::PC, 4, 1, 2)) == coords(enumerate_weights(WeightSet::PBQ, 7, 8, 2)));
    CHECK(coords(enumerate_weights(WeightSet::PC, 5, 2, 2)) == coords(enumerate_weights(WeightSet::PBQ, 4, 5, 2)));
    for (int n = 1; n <= 3; ++n)
      for (int p = n + 1; p <= 9; ++p) CHECK(verify_bijections(n, p).passed);
    auto sweep = verify_bijections_sweep(2);
    CHECK(sweep.passed);
    CHECK(sweep.stats["runs"].size() == 9);
  }

  TEST_CASE("embedding of coweights") {
    const int n = 3, p = 5;
    for (int q = 2 * n + 1; q <= 2 * n + 9; q += 2) {
      if (std::gcd(q, p) != 1) continue;
      auto small = enumerate_weights(WeightSet::PCheck, q, 2 * p, n);
      auto big = enumerate_weights(WeightSet::PC, q, 1, n);
      for (const auto& w : small) CHECK(std::binary_search(big.begin(), big.end(), w));
    }
  }

  TEST_CASE("decomposition tables") {
    auto t = decomposition_table(2, 4, 1);
    CHECK(t.k == 1);
    CHECK(t.ell == make_rational(-3) + make_rational(4, 7));
    CHECK(t.mechanism == "coordinate-bijection");
    REQUIRE(!t.rows.empty());
    CHECK(t.rows.front().mu == Weight::zero(2, Convention::BSide));
    CHECK(t.rows.front().summands.size() == 3);
    std::size_t ordinary = 0;
    std::set<Weight> ramond;
    for (const auto& r : t.rows) {
      if (r.ramond)
        ramond.insert(r.mu);
      else
        ++ordinary;
    }
    CHECK(ordinary == 3);
    std::set<Weight> complement;
    for (const auto& w : enumerate_weights(WeightSet::PB, 7, 8, 2))
      if (!w.is_integral()) complement.insert(w);
    CHECK(ramond == complement);

    auto one = decomposition_table(2, 3, 1);
    CHECK(one.k == 0);
    CHECK(one.rows.front().summands.size() == 1);

    for (int u = 3; u <= 7; ++u)
      for (int v : {1, 2}) {
        if (std::gcd(u, v) != 1) continue;
        DecompositionTable d;
        try {
          d = decomposition_table(2, u, v);
        } catch (const Error&) {
          continue;
        }
        std::size_t q_rows = 0;
        for (const auto& r : d.rows) q_rows += r.ramond ? 0 : 1;
        CHECK(q_rows == d.left.size());
      }
    CHECK(decomposition_table(2, 5, 3).mechanism == "fusion-generation");
    CHECK_THROWS_AS(decomposition_table(2, 2, 1), Error);
  }

  TEST_CASE("weight set names") {
    for (auto s : {WeightSet::PC, WeightSet::PB, WeightSet::PBQ, WeightSet::PCheck})
      CHECK(parse_weight_set(weight_set_name(s)) == s);
    CHECK_THROWS_AS(parse_weight_set("XY"), Error);
  }
}
