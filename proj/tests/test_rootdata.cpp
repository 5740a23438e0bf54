#include "doctest.h"
#include "oracles.hpp"

#include "ospchar/error.hpp"
#include "ospchar/rootdata.hpp"

#include <map>
#include <random>
#include <set>

using namespace ospc;

namespace {

Weight cw(std::initializer_list<std::int64_t> c) { return Weight::from_ints(IntVec(c)); }

Weight bw(std::initializer_list<std::int64_t> c) { return Weight::from_ints(IntVec(c), Convention::BSide); }

oracle::Signed as_signed(const WeylElement& w) {
  oracle::Signed s(static_cast<std::size_t>(w.rank()));
  for (int i = 0; i < w.rank(); ++i)
    s[static_cast<std::size_t>(i)] = w.signs()[static_cast<std::size_t>(i)] * (w.perm()[static_cast<std::size_t>(i)] + 1);
  return s;
}

}  // namespace

TEST_SUITE("rootdata") {
  TEST_CASE("simple roots and norms") {
    auto c2 = simple_roots(RootType::C, 2);
    REQUIRE(c2.size() == 2);
    CHECK(c2[0] == cw({1, -1}));
    CHECK(c2[1] == cw({0, 2}));
    CHECK(bilinear(c2[0], c2[0]) == 1);
    CHECK(bilinear(c2[1], c2[1]) == 2);

    auto osp1 = simple_roots(RootType::OSP, 1);
    REQUIRE(osp1.size() == 1);
    CHECK(osp1[0] == cw({1}));
    CHECK(bilinear(osp1[0], osp1[0]) == make_rational(1, 2));

    auto b2 = simple_roots(RootType::B, 2);
    CHECK(b2[0] == bw({1, -1}));
    CHECK(b2[1] == bw({0, 1}));
    CHECK(bilinear(b2[0], b2[0]) == 2);
    CHECK(bilinear(b2[1], b2[1]) == 1);
  }

  TEST_CASE("bilinear form") {
    CHECK(bilinear(cw({1, 0}), cw({1, 0})) == make_rational(1, 2));
    CHECK(bilinear(bw({1, 0}), bw({0, 1})) == 0);
    for (int n = 1; n <= 4; ++n) {
      auto r = rho_vectors(n);
      CHECK(bilinear(r.rho_odd, r.rho_odd) == make_rational(n, 8));
    }
    CHECK_THROWS_AS(bilinear(cw({1}), bw({1})), Error);
  }

  TEST_CASE("Weyl vectors") {
    auto r = rho_vectors(2);
    CHECK(r.rho_sp == cw({2, 1}));
    CHECK(r.rho_check == cw({3, 1}));
    CHECK(r.rho_osp == Weight({make_rational(3, 2), make_rational(1, 2)}, Convention::CSide));
    CHECK(r.rho_osp == r.rho_check.scaled(make_rational(1, 2)));
    for (int n = 1; n <= 5; ++n) {
      auto rv = rho_vectors(n);
      for (const auto& a : simple_roots(RootType::C, n)) CHECK(bilinear(rv.rho_check, a) == 1);
      // rho is half the sum of positive roots
      Weight sum = Weight::zero(n);
      for (const auto& a : positive_roots(RootType::C, n)) sum = sum + a;
      CHECK(sum.scaled(make_rational(1, 2)) == rv.rho_sp);
    }
  }

  TEST_CASE("dual Coxeter numbers") {
    CHECK(dual_coxeter(RootType::C, 2) == 3);
    CHECK(dual_coxeter(RootType::B, 2) == 3);
    CHECK(dual_coxeter(RootType::OSP, 2) == make_rational(5, 2));
    CHECK(coxeter_number(3) == 6);
  }

  TEST_CASE("Weyl group size, lengths and determinants against BFS") {
    for (int n = 1; n <= 3; ++n) {
      auto bfs = oracle::bfs_lengths(n);
      std::set<oracle::Signed> seen;
      long det_sum = 0;
      for (const auto& w : weyl_group(n)) {
        auto s = as_signed(w);
        REQUIRE(bfs.count(s) == 1);
        CHECK(w.length() == bfs.at(s));
        CHECK(w.det() == (w.length() % 2 == 0 ? 1 : -1));
        seen.insert(s);
        det_sum += w.det();
      }
      CHECK(seen.size() == bfs.size());
      CHECK(det_sum == 0);
    }
    CHECK(weyl_group(1).size() == 2);
    CHECK(weyl_group(2).size() == 8);
    CHECK(weyl_group(4).size() == 384);
    std::set<int> lengths;
    for (const auto& w : weyl_group(1)) lengths.insert(w.length());
    CHECK(lengths == std::set<int>{0, 1});
  }

  TEST_CASE("group laws") {
    const auto& g = weyl_group(3);
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
      const auto& a = g[rng() % g.size()];
      const auto& b = g[rng() % g.size()];
      const auto& c = g[rng() % g.size()];
      CHECK(a.compose(b).compose(c) == a.compose(b.compose(c)));
      CHECK(a.compose(a.inverse()) == WeylElement::identity(3));
      CHECK(a.compose(b).det() == a.det() * b.det());
      IntVec x{3, -1, 2};
      CHECK(a.compose(b).act(std::span<const std::int64_t>(x)) == a.act(b.act(std::span<const std::int64_t>(x))));
      // the action agrees with the oracle's signed permutation
      CHECK(a.act(std::span<const std::int64_t>(x)) == oracle::apply(as_signed(a), x));
    }
    CHECK(WeylElement::identity(3).length() == 0);
    CHECK(WeylElement::identity(3).det() == 1);
  }

  TEST_CASE("lazy enumeration matches the cached group") {
    std::vector<WeylElement> lazy;
    for (const auto& w : weyl_elements(3)) lazy.push_back(w);
    CHECK(lazy == weyl_group(3));
    CHECK_THROWS_AS(weyl_elements(9), Error);
  }

  TEST_CASE("dot action") {
    auto r = rho_vectors(1);
    WeylElement flip = WeylElement::simple_reflection(1, 0);
    CHECK(dot_act(flip, cw({0}), r.rho_sp) == cw({-2}));
    CHECK(dot_act(WeylElement::identity(2), cw({3, 1}), rho_vectors(2).rho_sp) == cw({3, 1}));
    for (const auto& a : weyl_group(2))
      for (const auto& b : weyl_group(2)) {
        const auto rho = rho_vectors(2).rho_sp;
        CHECK(dot_act(a.compose(b), cw({3, 1}), rho) == dot_act(a, dot_act(b, cw({3, 1}), rho), rho));
      }
    std::mt19937_64 rng(5);
    for (const auto& w : weyl_group(3))
      for (int t = 0; t < 5; ++t) {
        IntVec x{static_cast<std::int64_t>(rng() % 9) - 4, static_cast<std::int64_t>(rng() % 9) - 4,
                 static_cast<std::int64_t>(rng() % 9) - 4};
        IntVec y{static_cast<std::int64_t>(rng() % 9) - 4, static_cast<std::int64_t>(rng() % 9) - 4,
                 static_cast<std::int64_t>(rng() % 9) - 4};
        auto X = Weight::from_ints(x), Y = Weight::from_ints(y);
        CHECK(bilinear(w.act(X), w.act(Y)) == bilinear(X, Y));
      }
  }

  TEST_CASE("regularity") {
    CHECK(classify(cw({0, 0})) == Regularity::Singular);
    CHECK(classify(rho_vectors(3).rho_sp) == Regularity::Regular);
    CHECK(classify(cw({2, -2})) == Regularity::Singular);
    // dominant regular points in a box are exactly P_+ + rho
    const auto rho = rho_vectors(2).rho_sp;
    std::set<Weight> regular, shifted;
    for (std::int64_t a = 0; a <= 10; ++a)
      for (std::int64_t b = 0; b <= a; ++b) {
        auto x = cw({a, b});
        if (classify(x) == Regularity::Regular) regular.insert(x);
        auto y = x + rho;
        if (y[0] <= 10) shifted.insert(y);
      }
    CHECK(regular == shifted);
  }

  TEST_CASE("dominant representative is the minimal coset element") {
    std::mt19937_64 rng(3);
    for (int n = 1; n <= 3; ++n)
      for (int t = 0; t < 60; ++t) {
        IntVec x(static_cast<std::size_t>(n));
        for (auto& v : x) v = static_cast<std::int64_t>(rng() % 7) - 3;
        auto X = Weight::from_ints(x);
        auto [w, plus] = dominant_rep(X);
        CHECK(plus.is_dominant());
        CHECK(w.act(plus) == X);
        int best = 1 << 20;
        for (const auto& u : weyl_group(n))
          if (u.act(plus) == X) best = std::min(best, u.length());
        CHECK(w.length() == best);
      }
  }

  TEST_CASE("Freudenthal dimensions agree with the Weyl dimension formula") {
    for (int n = 1; n <= 3; ++n)
      for (std::int64_t a = 0; a <= 3; ++a)
        for (std::int64_t b = 0; b <= (n >= 2 ? a : 0); ++b)
          for (std::int64_t c = 0; c <= (n >= 3 ? b : 0); ++c) {
            IntVec lam{a, b, c};
            lam.resize(static_cast<std::size_t>(n));
            std::int64_t total = 0;
            for (const auto& [wt, m] : freudenthal_character(RootType::C, Weight::from_ints(lam))) {
              CHECK(m > 0);
              total += m;
            }
            CHECK(BigInt(total) == oracle::dim_c(lam));

            // B-side: integral and spinor weights, given doubled to the oracle
            IntVec twice = lam;
            for (auto& v : twice) v = 2 * v + 1;
            std::vector<Rational> half;
            for (auto v : twice) half.emplace_back(v, 2);
            std::int64_t tb = 0;
            for (const auto& [wt, m] : freudenthal_character(RootType::B, Weight(half, Convention::BSide))) tb += m;
            CHECK(BigInt(tb) == oracle::dim_b_doubled(twice));
          }
  }

  TEST_CASE("Freudenthal characters are Weyl invariant") {
    auto ch = freudenthal_character(RootType::C, cw({2, 1}));
    std::map<Weight, std::int64_t> m(ch.begin(), ch.end());
    for (const auto& w : weyl_group(2))
      for (const auto& [wt, mult] : m) CHECK(m[w.act(wt)] == mult);
  }

  TEST_CASE("invalid input") {
    CHECK_THROWS_AS(freudenthal_character(RootType::C, cw({0, 1})), Error);
    CHECK_THROWS_AS(cw({1}) + cw({1, 2}), Error);
    CHECK_THROWS_AS(Weight({make_rational(1, 2)}, Convention::CSide).to_ints(), Error);
  }
}
