#include "ospchar/branching.hpp"

#include "ospchar/error.hpp"
#include "ospchar/parallel.hpp"

#include <algorithm>
#include <random>

namespace ospc {

namespace {

IntVec to_vec(std::span<const std::int64_t> s) { return IntVec(s.begin(), s.end()); }

IntVec rho_sp_ints(int n) {
  IntVec r(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = n - i;
  return r;
}

void check_pair(std::span<const std::int64_t> lambda, std::span<const std::int64_t> mu) {
  require(!lambda.empty() && lambda.size() == mu.size(), ErrorCode::InvalidArgument, "weight rank mismatch");
  require(static_cast<int>(lambda.size()) <= FormalCharacter::kMaxRank, ErrorCode::Limit, "rank exceeds 6");
}

const LevelParam& checked_level(const LevelParam& lp) {
  require(!lp.bad, ErrorCode::Domain, "level k = " + to_string(lp.k) + " is a pole (k + n + 1 in {0, 1/2})");
  return lp;
}

IntVec random_dominant(std::mt19937_64& rng, int n, int max_coord) {
  IntVec v(static_cast<std::size_t>(n));
  for (auto& x : v) x = draw(rng, 0, max_coord);
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

Rational random_level(std::mt19937_64& rng, int n) {
  while (true) {
    auto den = draw(rng, 1, 7);
    auto num = draw(rng, -40, 40);
    Rational k = make_rational(num, den);
    if (!level_param(n, k).bad) return k;
  }
}

nlohmann::json series_mismatch(const QSeries::Mismatch& m) {
  return {{"exponent", to_string(m.exponent)}, {"left", to_string(m.left)}, {"right", to_string(m.right)}};
}

}  // namespace

LevelParam level_param(int n, const Rational& k) {
  require(n >= 1, ErrorCode::InvalidArgument, "rank must be at least 1");
  LevelParam lp;
  lp.n = n;
  lp.k = k;
  lp.kappa = k + n + 1;
  lp.h_sp = dual_coxeter(RootType::C, n);
  lp.h_osp = dual_coxeter(RootType::OSP, n);
  lp.bad = lp.kappa == 0 || lp.kappa * 2 == 1;
  if (!lp.bad) {
    Rational direct = Rational(1) / (Rational(2) - Rational(1) / lp.kappa) - lp.h_sp;
    Rational closed = lp.kappa / (lp.kappa * 2 - 1) - lp.h_sp;
    require(direct == closed, ErrorCode::Internal, "coset level formulas disagree");
    lp.ell = closed;
  }
  return lp;
}

Rational conformal_weight(Algebra type, const Weight& mu, const Rational& k) {
  const int n = mu.rank();
  require(mu.convention() == Convention::CSide, ErrorCode::InvalidArgument, "conformal weight expects C-side weights");
  auto rv = rho_vectors(n);
  const Weight& rho = type == Algebra::SP ? rv.rho_sp : rv.rho_osp;
  Rational h = dual_coxeter(type == Algebra::SP ? RootType::C : RootType::OSP, n);
  require(k + h != 0, ErrorCode::Domain, "critical level k = " + to_string(k));
  return bilinear(mu, mu + rho.scaled(2)) / (2 * (k + h));
}

std::int64_t b_exponent(std::span<const std::int64_t> nu) {
  std::int64_t s = 0;
  for (auto v : nu) s += v * (v + 1) / 2;
  return s;
}

QSeries b_coefficient(std::span<const std::int64_t> lambda, std::span<const std::int64_t> mu, int trunc) {
  check_pair(lambda, mu);
  IntVec nu(lambda.size());
  for (std::size_t i = 0; i < nu.size(); ++i) nu[i] = lambda[i] - mu[i];
  QSeries s{Rational(trunc)};
  s.add(Rational(b_exponent(nu)), 1);
  return s.times_partitions(static_cast<int>(lambda.size()));
}

QSeries branching_function(std::span<const std::int64_t> lambda, std::span<const std::int64_t> mu, int trunc) {
  check_pair(lambda, mu);
  const int n = static_cast<int>(lambda.size());
  const auto rho = rho_sp_ints(n);
  QSeries s{Rational(trunc)};
  for (const auto& w : weyl_group(n)) {
    auto wl = dot_act(w, lambda, rho);
    for (int i = 0; i < n; ++i) wl[static_cast<std::size_t>(i)] -= mu[static_cast<std::size_t>(i)];
    s.add(Rational(b_exponent(wl)), w.det());
  }
  return s.times_partitions(n);
}

Rational delta_exponent(std::span<const std::int64_t> lambda, std::span<const std::int64_t> mu,
                        const WeylElement& w, const Rational& k) {
  check_pair(lambda, mu);
  const int n = static_cast<int>(lambda.size());
  checked_level(level_param(n, k));
  auto nu = dot_act(w, lambda, rho_sp_ints(n));
  for (int i = 0; i < n; ++i) nu[static_cast<std::size_t>(i)] -= mu[static_cast<std::size_t>(i)];
  return conformal_weight(Algebra::OSP, Weight::from_ints(mu), k) -
         conformal_weight(Algebra::SP, Weight::from_ints(lambda), k) + b_exponent(nu);
}

Rational delta_exponent_coset(std::span<const std::int64_t> lambda, std::span<const std::int64_t> mu,
                              const WeylElement& w, const Rational& k) {
  check_pair(lambda, mu);
  const int n = static_cast<int>(lambda.size());
  const auto& lp = checked_level(level_param(n, k));
  const Rational ell_h = lp.ell + lp.h_sp;
  Weight x = Weight::from_ints(dot_act(w, lambda, rho_sp_ints(n))) - Weight::from_ints(mu).scaled(2 * ell_h);
  return conformal_weight(Algebra::SP, x, lp.ell) - bilinear(x, rho_vectors(n).rho_check);
}

QSeries w_module_character_conformal(std::span<const std::int64_t> lambda, std::span<const std::int64_t> mu,
                                     const Rational& k, int trunc) {
  check_pair(lambda, mu);
  const int n = static_cast<int>(lambda.size());
  const auto& lp = checked_level(level_param(n, k));
  const Rational ell_h = lp.ell + lp.h_sp;
  const auto rho = rho_sp_ints(n);
  const Weight mu_shift = Weight::from_ints(mu).scaled(2 * ell_h);
  // R-hat times the character of the Verma module of highest weight x is e^x; the rational
  // weight x enters through the specialization shift.
  const auto unit = FormalCharacter::monomial(IntVec(static_cast<std::size_t>(n), 0), 0, 0);
  std::optional<QSeries> acc;
  for (const auto& w : weyl_group(n)) {
    Weight x = Weight::from_ints(dot_act(w, lambda, rho)) - mu_shift;
    auto part = ds_specialize(unit, conformal_weight(Algebra::SP, x, lp.ell), trunc, x.coords());
    if (!acc) acc = QSeries(part.horizon());
    if (w.det() > 0)
      *acc += part;
    else
      *acc -= part;
  }
  return *acc;
}

QSeries w_module_character_delta(std::span<const std::int64_t> lambda, std::span<const std::int64_t> mu,
                                 const Rational& k, int trunc) {
  check_pair(lambda, mu);
  const int n = static_cast<int>(lambda.size());
  std::vector<std::pair<Rational, int>> parts;
  for (const auto& w : weyl_group(n)) parts.emplace_back(delta_exponent(lambda, mu, w, k), w.det());
  Rational lowest = parts.front().first;
  for (const auto& p : parts) lowest = std::min(lowest, p.first);
  QSeries s(lowest + trunc);
  for (const auto& [e, sign] : parts) s.add(e, sign);
  return s.times_partitions(n);
}

QSeries w_module_character(std::span<const std::int64_t> lambda, std::span<const std::int64_t> mu,
                           const Rational& k, int trunc) {
  auto a = w_module_character_conformal(lambda, mu, k, trunc);
  auto b = w_module_character_delta(lambda, mu, k, trunc);
  if (auto m = QSeries::compare(a, b))
    fail(ErrorCode::IdentityFailure, "W-module character routes disagree at q^" + to_string(m->exponent));
  return a;
}

// ---------------------------------------------------------------- identities

Report verify_branching_identity(int n, std::span<const std::int64_t> mu, int trunc,
                                 std::optional<std::int64_t> window, unsigned workers) {
  require(static_cast<int>(mu.size()) == n, ErrorCode::InvalidArgument, "mu must have n coordinates");
  require(Weight::from_ints(mu).is_dominant(), ErrorCode::InvalidArgument, "mu must be dominant");
  Report r;
  r.identity = "branching";
  const auto win = window.value_or(default_depth_window(n, trunc));
  r.params = {{"n", n}, {"mu", to_vec(mu)}, {"depth_window", win}};
  r.trunc = trunc;

  auto lhs = weyl_module_character(Algebra::OSP, mu, trunc, win);
  const auto cap = *lhs.depth_cap();

  // If |nu_p| >= m := lambda_1 - mu_1 for some coordinate of nu = w.lambda - mu (the coordinate
  // carrying +-(lambda_1 + n)), then b_exponent(nu) >= m(m-1)/2. So lambda_1 <= mu_1 + trunc + 2n
  // covers every lambda with a term of grade <= trunc.
  const std::int64_t top = mu[0] + trunc + 2 * n;
  std::vector<IntVec> lambdas;
  IntVec cur(static_cast<std::size_t>(n));
  auto rec = [&](auto&& self, int i, std::int64_t bound) -> void {
    if (i == n) {
      lambdas.push_back(cur);
      return;
    }
    for (std::int64_t v = 0; v <= bound; ++v) {
      cur[static_cast<std::size_t>(i)] = v;
      self(self, i + 1, v);
    }
  };
  rec(rec, 0, top);

  const auto rho = rho_sp_ints(n);
  auto partials = parallel_map(lambdas.size(), workers, [&](std::size_t idx) -> std::optional<FormalCharacter> {
    const auto& lambda = lambdas[idx];
    std::int64_t lowest = -1;
    for (const auto& w : weyl_group(n)) {
      auto nu = dot_act(w, lambda, rho);
      for (int i = 0; i < n; ++i) nu[static_cast<std::size_t>(i)] -= mu[static_cast<std::size_t>(i)];
      auto e = b_exponent(nu);
      if (lowest < 0 || e < lowest) lowest = e;
    }
    if (lowest > trunc) return std::nullopt;
    const std::int64_t m = lambda[0] - mu[0];
    require(m * (m - 1) / 2 <= trunc, ErrorCode::Internal, "branching enumeration bound violated");
    auto bf = branching_function(lambda, mu, trunc);
    auto num = weyl_numerator(Algebra::SP, lambda, trunc);
    FormalCharacter part(n, trunc);
    for (const auto& [e, c] : bf.terms()) {
      const int g = static_cast<int>(to_int64(e));
      part += num.shifted(IntVec(static_cast<std::size_t>(n), 0), g).scaled(c);
    }
    return part;
  });

  FormalCharacter rhs(n, trunc);
  std::size_t used = 0;
  for (auto& p : partials) {
    if (!p) continue;
    ++used;
    rhs += *p;
  }
  rhs = rhs.restricted(trunc, cap);
  apply_denominator_inverse(rhs, Algebra::SP);

  auto mm = FormalCharacter::compare(lhs, rhs, trunc, cap);
  r.passed = !mm.has_value();
  r.stats = {{"depth_cap", cap}, {"lambdas", used}, {"lhs_terms", lhs.size()}};
  if (mm)
    r.first_mismatch = {{"weight", mm->weight}, {"grade", mm->grade}, {"expected", to_string(mm->left)},
                        {"actual", to_string(mm->right)}};
  return r;
}

Report verify_singular_vanishing(int n, int box, int mu_box, int trunc, unsigned workers) {
  require(n >= 1 && n <= FormalCharacter::kMaxRank, ErrorCode::Limit, "rank must be between 1 and 6");
  require(box >= 0 && mu_box >= 0, ErrorCode::InvalidArgument, "boxes must be nonnegative");
  Report r;
  r.identity = "singular-vanishing";
  r.params = {{"n", n}, {"box", box}, {"mu_box", mu_box}};
  r.trunc = trunc;
  const auto rho = rho_sp_ints(n);

  auto enumerate = [&](std::int64_t bound) {
    std::vector<IntVec> out;
    IntVec cur(static_cast<std::size_t>(n));
    auto rec = [&](auto&& self, int i, std::int64_t b) -> void {
      if (i == n) {
        out.push_back(cur);
        return;
      }
      for (std::int64_t v = 0; v <= b; ++v) {
        cur[static_cast<std::size_t>(i)] = v;
        self(self, i + 1, v);
      }
    };
    rec(rec, 0, bound);
    return out;
  };
  // every lambda with |lambda_i| <= box and lambda + rho singular
  std::vector<IntVec> lambdas;
  {
    IntVec cur(static_cast<std::size_t>(n), -box);
    while (true) {
      IntVec s = cur;
      for (int i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] += rho[static_cast<std::size_t>(i)];
      if (classify(Weight::from_ints(s)) == Regularity::Singular) lambdas.push_back(cur);
      int i = n - 1;
      while (i >= 0 && cur[static_cast<std::size_t>(i)] == box) cur[static_cast<std::size_t>(i--)] = -box;
      if (i < 0) break;
      ++cur[static_cast<std::size_t>(i)];
    }
  }
  const auto mus = enumerate(mu_box);

  struct Outcome {
    std::size_t lambda_idx = 0, mu_idx = 0;
    std::optional<std::pair<Rational, BigInt>> witness;
  };
  const std::size_t total = lambdas.size() * mus.size();
  auto results = parallel_map(total, workers, [&](std::size_t idx) {
    Outcome o{idx / mus.size(), idx % mus.size(), std::nullopt};
    auto bf = branching_function(lambdas[o.lambda_idx], mus[o.mu_idx], trunc);
    if (!bf.is_zero()) o.witness = *bf.terms().begin();
    return o;
  });
  r.passed = true;
  for (const auto& o : results) {
    if (!o.witness) continue;
    r.passed = false;
    r.first_mismatch = {{"lambda", lambdas[o.lambda_idx]}, {"mu", mus[o.mu_idx]},
                        {"exponent", to_string(o.witness->first)}, {"coefficient", to_string(o.witness->second)}};
    break;
  }
  r.stats = {{"lambdas", lambdas.size()}, {"mus", mus.size()}, {"cases", total}};
  return r;
}

Report verify_delta_lemma(int n, int cases, std::uint64_t seed) {
  require(n >= 1 && n <= FormalCharacter::kMaxRank, ErrorCode::Limit, "rank must be between 1 and 6");
  require(cases >= 0, ErrorCode::InvalidArgument, "case count must be nonnegative");
  Report r;
  r.identity = "delta-lemma";
  r.params = {{"n", n}, {"cases", cases}, {"seed", seed}};
  std::mt19937_64 rng(seed);
  const auto& group = weyl_group(n);
  r.passed = true;
  for (int c = 0; c < cases; ++c) {
    auto lambda = random_dominant(rng, n, 5);
    auto mu = random_dominant(rng, n, 5);
    const auto& w = group[static_cast<std::size_t>(draw(rng, 0, static_cast<std::int64_t>(group.size()) - 1))];
    auto k = random_level(rng, n);
    auto a = delta_exponent(lambda, mu, w, k);
    auto b = delta_exponent_coset(lambda, mu, w, k);
    if (a != b) {
      r.passed = false;
      r.first_mismatch = {{"case", c},         {"lambda", lambda},       {"mu", mu},
                          {"perm", w.perm()},  {"signs", w.signs()},     {"k", to_string(k)},
                          {"left", to_string(a)}, {"right", to_string(b)}};
      break;
    }
  }
  return r;
}

Report verify_main_theorem(int n, int cases, std::uint64_t seed, int trunc, unsigned workers) {
  require(n >= 1 && n <= FormalCharacter::kMaxRank, ErrorCode::Limit, "rank must be between 1 and 6");
  require(cases >= 0, ErrorCode::InvalidArgument, "case count must be nonnegative");
  Report r;
  r.identity = "main-theorem";
  r.params = {{"n", n}, {"cases", cases}, {"seed", seed}};
  r.trunc = trunc;

  struct Case {
    IntVec lambda, mu;
    Rational k;
  };
  std::mt19937_64 rng(seed);
  std::vector<Case> plan;
  for (int c = 0; c < cases; ++c) {
    Case cs;
    cs.lambda = random_dominant(rng, n, 3);
    cs.mu = random_dominant(rng, n, 3);
    cs.k = random_level(rng, n);
    plan.push_back(std::move(cs));
  }

  auto outcomes = parallel_map(plan.size(), workers, [&](std::size_t idx) -> nlohmann::json {
    const auto& cs = plan[idx];
    auto a = w_module_character_conformal(cs.lambda, cs.mu, cs.k, trunc);
    auto b = w_module_character_delta(cs.lambda, cs.mu, cs.k, trunc);
    auto shift = conformal_weight(Algebra::OSP, Weight::from_ints(cs.mu), cs.k) -
                 conformal_weight(Algebra::SP, Weight::from_ints(cs.lambda), cs.k);
    std::int64_t lowest = -1;
    for (const auto& w : weyl_group(n)) {
      auto nu = dot_act(w, cs.lambda, rho_sp_ints(n));
      for (int i = 0; i < n; ++i) nu[static_cast<std::size_t>(i)] -= cs.mu[static_cast<std::size_t>(i)];
      auto e = b_exponent(nu);
      if (lowest < 0 || e < lowest) lowest = e;
    }
    auto c = branching_function(cs.lambda, cs.mu, trunc + static_cast<int>(lowest)).shifted(shift);
    nlohmann::json where = {{"case", idx}, {"lambda", cs.lambda}, {"mu", cs.mu}, {"k", to_string(cs.k)}};
    if (auto m = QSeries::compare(a, b)) {
      where["routes"] = "conformal-vs-delta";
      where["at"] = series_mismatch(*m);
      return where;
    }
    if (auto m = QSeries::compare(a, c)) {
      where["routes"] = "conformal-vs-branching";
      where["at"] = series_mismatch(*m);
      return where;
    }
    return {{"terms", a.terms().size()}};
  });
  r.passed = true;
  std::size_t terms = 0, nonzero = 0;
  for (auto& o : outcomes) {
    if (o.contains("routes")) {
      r.passed = false;
      r.first_mismatch = o;
      break;
    }
    const auto t = o["terms"].get<std::size_t>();
    terms += t;
    nonzero += t > 0 ? 1 : 0;
  }
  r.stats = {{"cases", plan.size()}, {"nonzero_cases", nonzero}, {"compared_terms", terms}};
  return r;
}

}  // namespace ospc
