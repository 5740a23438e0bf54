#include "ospchar/fusion.hpp"

#include "ospchar/admissible.hpp"
#include "ospchar/charseries.hpp"
#include "ospchar/error.hpp"
#include "ospchar/parallel.hpp"
#include "ospchar/serialize.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>

namespace ospc {

namespace {

using IntChar = std::map<IntVec, std::int64_t>;

IntVec add(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

// Sorts |x| into decreasing order in place and returns det of the signed permutation used,
// or 0 when x lies on a wall (a zero entry or two equal absolute values).
int fold_to_dominant(IntVec& x) {
  int sign = 1;
  for (auto& v : x) {
    if (v == 0) return 0;
    if (v < 0) {
      v = -v;
      sign = -sign;
    }
  }
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      if (x[i] == x[j]) return 0;
      if (x[i] < x[j]) sign = -sign;
    }
  std::sort(x.begin(), x.end(), std::greater<>());
  return sign;
}

// Reduce every entry into (-m, m] modulo 2m; returns false on the wall x_i = m.
bool reduce_mod(IntVec& x, std::int64_t m) {
  for (auto& v : x) {
    v = ((v % (2 * m)) + 2 * m) % (2 * m);
    if (v > m) v -= 2 * m;
    if (v == m) return false;
  }
  return true;
}

IntVec rho_sp(int n) {
  IntVec r(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = n - i;
  return r;
}

IntVec rho_check(int n) {
  IntVec r(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = 2 * (n - i) - 1;
  return r;
}

std::shared_ptr<const IntChar> sp_character(const IntVec& lambda) {
  static std::mutex mu;
  static std::map<IntVec, std::shared_ptr<const IntChar>> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(lambda); it != cache.end()) return it->second;
  }
  // All weights of E_lambda lie between lambda and -lambda, so this window holds the whole
  // grade-0 slice.
  const auto window = 2 * twice_height(lambda);
  auto s = weyl_module_character(Algebra::SP, lambda, 0, window);
  auto ch = std::make_shared<IntChar>();
  for (const auto& t : s.grade_slice(0).terms()) (*ch)[t.weight] = to_int64(t.coeff);
  std::lock_guard lock(mu);
  return cache.emplace(lambda, std::move(ch)).first->second;
}

void check_dominant_c(const Weight& w, const char* what) {
  require(w.convention() == Convention::CSide, ErrorCode::InvalidArgument, std::string(what) + " must be C-side");
  require(w.is_integral() && w.is_dominant(), ErrorCode::InvalidArgument,
          std::string(what) + " must be a dominant integral weight");
}

Decomposition to_decomposition(const std::map<IntVec, std::int64_t>& m, Convention conv) {
  Decomposition out;
  for (const auto& [k, v] : m) {
    require(v >= 0, ErrorCode::Internal, "negative fusion multiplicity");
    if (v) out.emplace_back(Weight::from_ints(k, conv), v);
  }
  return out;
}

Weight halve_to_b(const Weight& c) { return c.scaled(make_rational(1, 2)).retagged(Convention::BSide); }
Weight double_to_c(const Weight& mu) { return mu.scaled(2).retagged(Convention::CSide); }

bool in_coweight_alphabet(const Weight& c, int q) {
  if (!c.is_integral() || !c.is_dominant()) return false;
  auto v = c.to_ints();
  const int n = static_cast<int>(v.size());
  for (auto x : v)
    if ((x - v[0]) % 2 != 0) return false;
  return v[0] <= q - 2 * n;
}

}  // namespace

Decomposition tensor_decompose(const Weight& lambda, const Weight& nu) {
  check_dominant_c(lambda, "lambda");
  check_dominant_c(nu, "nu");
  require(lambda.rank() == nu.rank(), ErrorCode::InvalidArgument, "rank mismatch");
  auto a = sp_character(lambda.to_ints());
  auto b = sp_character(nu.to_ints());
  IntChar prod;
  for (const auto& [x, m] : *a)
    for (const auto& [y, k] : *b) prod[add(x, y)] += m * k;
  std::map<IntVec, std::int64_t> result;
  while (true) {
    for (auto it = prod.begin(); it != prod.end();) it = it->second == 0 ? prod.erase(it) : std::next(it);
    if (prod.empty()) break;
    auto top = prod.begin();
    for (auto it = prod.begin(); it != prod.end(); ++it) {
      auto ht = twice_height(it->first), best = twice_height(top->first);
      if (ht > best || (ht == best && it->first > top->first)) top = it;
    }
    const IntVec phi = top->first;
    const std::int64_t m = top->second;
    require(Weight::from_ints(phi).is_dominant() && m > 0, ErrorCode::Internal,
            "highest remaining weight is not a dominant positive term");
    result[phi] += m;
    for (const auto& [x, k] : *sp_character(phi)) prod[x] -= m * k;
  }
  return to_decomposition(result, Convention::CSide);
}

Decomposition tensor_decompose_b(const Weight& lambda, const Weight& nu) {
  require(lambda.convention() == Convention::BSide && nu.convention() == Convention::BSide,
          ErrorCode::InvalidArgument, "so weights must be B-side");
  require(lambda.rank() == nu.rank(), ErrorCode::InvalidArgument, "rank mismatch");
  require(lambda.is_dominant() && nu.is_dominant(), ErrorCode::InvalidArgument, "weights must be dominant");
  const int n = lambda.rank();
  const auto chk = rho_check(n);
  IntVec nu2 = nu.scaled(2).to_ints();
  std::map<IntVec, std::int64_t> acc;
  for (const auto& [eta, m] : freudenthal_character(RootType::B, lambda)) {
    IntVec x = add(add(eta.scaled(2).to_ints(), nu2), chk);
    int s = fold_to_dominant(x);
    if (s == 0) continue;
    for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] -= chk[static_cast<std::size_t>(i)];
    acc[x] += s * m;
  }
  Decomposition out;
  for (const auto& [x, m] : acc) {
    require(m >= 0, ErrorCode::Internal, "negative tensor multiplicity");
    if (m) out.emplace_back(Weight::from_ints(x, Convention::BSide).scaled(make_rational(1, 2)), m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Decomposition affine_fusion(const Weight& lambda, const Weight& nu, int level) {
  check_dominant_c(lambda, "lambda");
  check_dominant_c(nu, "nu");
  require(level >= 0, ErrorCode::InvalidArgument, "level must be nonnegative");
  require(lambda[0] <= level && nu[0] <= level, ErrorCode::InvalidArgument, "label exceeds the level");
  const int n = lambda.rank();
  const std::int64_t m = level + n + 1;
  const auto rho = rho_sp(n);
  std::map<IntVec, std::int64_t> acc;
  for (const auto& [phi, mult] : tensor_decompose(lambda, nu)) {
    IntVec x = add(phi.to_ints(), rho);
    if (!reduce_mod(x, m)) continue;
    int s = fold_to_dominant(x);
    if (s == 0) continue;
    for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] -= rho[static_cast<std::size_t>(i)];
    acc[x] += s * mult;
  }
  return to_decomposition(acc, Convention::CSide);
}

Decomposition dual_fusion(const Weight& a, const Weight& b, int q) {
  require(a.rank() == b.rank(), ErrorCode::InvalidArgument, "rank mismatch");
  require(q % 2 == 1, ErrorCode::Domain, "coweight fusion needs an odd denominator");
  require(in_coweight_alphabet(a, q) && in_coweight_alphabet(b, q), ErrorCode::InvalidArgument,
          "coweight label outside PCHECK(q, 2p)");
  const int n = a.rank();
  const auto chk = rho_check(n);
  std::map<IntVec, std::int64_t> acc;
  for (const auto& [eta, mult] : tensor_decompose_b(halve_to_b(a), halve_to_b(b))) {
    IntVec x = add(eta.scaled(2).to_ints(), chk);
    if (!reduce_mod(x, q)) continue;
    int s = fold_to_dominant(x);
    if (s == 0) continue;
    for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] -= chk[static_cast<std::size_t>(i)];
    acc[x] += s * mult;
  }
  return to_decomposition(acc, Convention::CSide);
}

static void check_w_level(int n, int p, int q) {
  auto lvl = classify_admissible(RootType::C, n, p, q);
  require(lvl.admissible && lvl.kind == LevelKind::Principal, ErrorCode::Domain,
          "W-algebra fusion needs a principal admissible level (p/q = " + std::to_string(p) + "/" +
              std::to_string(q) + ")");
  require(lvl.nondegenerate, ErrorCode::Domain, "degenerate coset level");
  require(!lvl.coboundary, ErrorCode::Domain, "coboundary coset level");
}

std::vector<std::pair<Label, std::int64_t>> w_fusion(const Label& a, const Label& b, int p, int q) {
  require(a.size() == 2 && b.size() == 2, ErrorCode::InvalidArgument, "W-algebra labels have two parts");
  const int n = a[0].rank();
  check_w_level(n, p, q);
  const int level = p - n - 1;
  auto left = affine_fusion(a[0], b[0], level);
  auto right = dual_fusion(a[1], b[1], q);
  std::vector<std::pair<Label, std::int64_t>> out;
  for (const auto& [l, m] : left)
    for (const auto& [r, k] : right)
      if (in_coweight_alphabet(r, q)) out.push_back({Label{l, r}, m * k});
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<int, int> coset_level(int n, int u, int v) {
  auto k = classify_admissible(RootType::C, n, u, v);
  require(k.admissible, ErrorCode::Domain, "k = -(n+1) + " + std::to_string(u) + "/" + std::to_string(v) +
                                               " is not admissible");
  require(2 * u - v > 0, ErrorCode::Domain, "coset level is not admissible (2u - v <= 0)");
  const int g = std::gcd(u, 2 * u - v);
  return {u / g, (2 * u - v) / g};
}

Decomposition osp_fusion(const Weight& mu, const Weight& nu, int u, int v) {
  require(mu.convention() == Convention::BSide && nu.convention() == Convention::BSide,
          ErrorCode::InvalidArgument, "osp labels are B-side weights");
  const int n = mu.rank();
  auto [p, q] = coset_level(n, u, v);
  require(q % 2 == 1, ErrorCode::Domain, "osp fusion is implemented for principal coset levels (odd 2u - v)");
  check_w_level(n, p, q);
  Decomposition out;
  for (const auto& [c, m] : dual_fusion(double_to_c(mu), double_to_c(nu), q)) out.emplace_back(halve_to_b(c), m);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- tables

std::size_t FusionTable::index_of(const Label& l) const {
  auto it = std::lower_bound(alphabet.begin(), alphabet.end(), l);
  require(it != alphabet.end() && *it == l, ErrorCode::InvalidArgument, "label " + label_text(l) + " not in alphabet");
  return static_cast<std::size_t>(it - alphabet.begin());
}

std::int64_t FusionTable::coefficient(std::size_t a, std::size_t b, std::size_t c) const {
  const auto& row = products[a * size() + b];
  auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(c, std::int64_t{0}),
                             [](const auto& x, const auto& y) { return x.first < y.first; });
  return it != row.end() && it->first == c ? it->second : 0;
}

namespace {

template <class Product>
void fill_products(FusionTable& t, unsigned workers, Product&& product) {
  const auto m = t.size();
  struct Cell {
    std::vector<std::pair<std::size_t, std::int64_t>> row;
    std::int64_t dropped = 0;
  };
  auto cells = parallel_map(m * m, workers, [&](std::size_t idx) {
    Cell cell;
    std::map<std::size_t, std::int64_t> acc;
    for (const auto& [label, mult] : product(t.alphabet[idx / m], t.alphabet[idx % m])) {
      auto it = std::lower_bound(t.alphabet.begin(), t.alphabet.end(), label);
      if (it == t.alphabet.end() || *it != label) {
        cell.dropped += mult;
        continue;
      }
      acc[static_cast<std::size_t>(it - t.alphabet.begin())] += mult;
    }
    for (const auto& [c, v] : acc)
      if (v) cell.row.emplace_back(c, v);
    return cell;
  });
  t.products.resize(m * m);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    t.products[i] = std::move(cells[i].row);
    t.dropped += cells[i].dropped;
  }
}

std::vector<Label> singletons(const std::vector<Weight>& ws) {
  std::vector<Label> out;
  for (const auto& w : ws) out.push_back(Label{w});
  std::sort(out.begin(), out.end());
  return out;
}

template <class Build>
FusionTable cached(const BuildOptions& opts, const std::string& key, const nlohmann::json& params, Build&& build) {
  if (opts.cache_dir) {
    if (auto t = load_cached_table(*opts.cache_dir, key); t && t->params == params) return *t;
  }
  FusionTable t = build();
  if (opts.cache_dir) {
    // an unwritable cache only costs the next run a rebuild
    try {
      store_cached_table(*opts.cache_dir, key, t);
    } catch (const Error&) {
    }
  }
  return t;
}

std::vector<std::pair<Label, std::int64_t>> lift(const Decomposition& d) {
  std::vector<std::pair<Label, std::int64_t>> out;
  for (const auto& [w, m] : d) out.push_back({Label{w}, m});
  return out;
}

}  // namespace

FusionTable affine_fusion_table(int n, int level, const BuildOptions& opts) {
  require(n >= 1 && n <= 6, ErrorCode::Limit, "rank must be between 1 and 6");
  require(level >= 0, ErrorCode::InvalidArgument, "level must be nonnegative");
  nlohmann::json params = {{"n", n}, {"level", level}};
  const std::string key = "affine-fusion_C_n" + std::to_string(n) + "_k" + std::to_string(level);
  return cached(opts, key, params, [&] {
    FusionTable t;
    t.kind = "affine-fusion";
    t.n = n;
    t.params = params;
    t.grading = {GradingRule::RootClass};
    t.alphabet = singletons(enumerate_weights(WeightSet::PC, level + n + 1, 1, n));
    fill_products(t, opts.workers, [&](const Label& a, const Label& b) { return lift(affine_fusion(a[0], b[0], level)); });
    return t;
  });
}

FusionTable w_fusion_table(int n, int p, int q, const BuildOptions& opts) {
  require(n >= 1 && n <= 6, ErrorCode::Limit, "rank must be between 1 and 6");
  check_w_level(n, p, q);
  nlohmann::json params = {{"n", n}, {"p", p}, {"q", q}};
  const std::string key = "w-fusion_C_n" + std::to_string(n) + "_p" + std::to_string(p) + "_q" + std::to_string(q);
  return cached(opts, key, params, [&] {
    FusionTable t;
    t.kind = "w-fusion";
    t.n = n;
    t.params = params;
    t.grading = {GradingRule::RootClass, GradingRule::CoweightParity};
    for (const auto& l : enumerate_weights(WeightSet::PC, p, 1, n))
      for (const auto& r : enumerate_weights(WeightSet::PCheck, q, 2 * p, n)) t.alphabet.push_back(Label{l, r});
    std::sort(t.alphabet.begin(), t.alphabet.end());
    fill_products(t, opts.workers, [&](const Label& a, const Label& b) { return w_fusion(a, b, p, q); });
    return t;
  });
}

FusionTable osp_fusion_table(int n, int u, int v, const BuildOptions& opts) {
  require(n >= 1 && n <= 6, ErrorCode::Limit, "rank must be between 1 and 6");
  auto [p, q] = coset_level(n, u, v);
  require(q % 2 == 1, ErrorCode::Domain, "osp fusion is implemented for principal coset levels (odd 2u - v)");
  check_w_level(n, p, q);
  nlohmann::json params = {{"n", n}, {"u", u}, {"v", v}, {"ell_p", p}, {"ell_q", q}};
  const std::string key = "osp-fusion_B_n" + std::to_string(n) + "_p" + std::to_string(p) + "_q" + std::to_string(q) +
                          "_u" + std::to_string(u) + "_v" + std::to_string(v);
  return cached(opts, key, params, [&, p = p, q = q] {
    FusionTable t;
    t.kind = "osp-fusion";
    t.n = n;
    t.params = params;
    t.grading = {GradingRule::SpinorClass};
    t.alphabet = singletons(enumerate_weights(WeightSet::PB, q, 2 * p, n));
    fill_products(t, opts.workers, [&](const Label& a, const Label& b) { return lift(osp_fusion(a[0], b[0], u, v)); });
    return t;
  });
}

// ---------------------------------------------------------------- axioms

namespace {

int grade_of(GradingRule rule, const Weight& w) {
  switch (rule) {
    case GradingRule::RootClass: {
      std::int64_t s = 0;
      for (auto x : w.to_ints()) s += x;
      return static_cast<int>(((s % 2) + 2) % 2);
    }
    case GradingRule::CoweightParity:
      return static_cast<int>(((w.to_ints()[0] % 2) + 2) % 2);
    case GradingRule::SpinorClass:
      return w.is_integral() ? 0 : 1;
  }
  return 0;
}

std::vector<int> label_grade(const FusionTable& t, const Label& l) {
  std::vector<int> g;
  for (std::size_t i = 0; i < l.size(); ++i) g.push_back(grade_of(t.grading[i], l[i]));
  return g;
}

}  // namespace

Report verify_fusion_axioms(const FusionTable& t, unsigned workers) {
  Report r;
  r.identity = "fusion-axioms";
  r.params = t.params;
  r.params["kind"] = t.kind;
  const auto m = t.size();
  nlohmann::json failures = nlohmann::json::object();
  auto flag = [&](const std::string& axiom, nlohmann::json where) {
    if (!failures.contains(axiom)) failures[axiom] = std::move(where);
  };
  auto name = [&](std::size_t i) { return label_text(t.alphabet[i]); };

  if (t.dropped != 0) flag("closure", {{"dropped", t.dropped}});

  Label zero;
  for (const auto& part : t.alphabet.front()) zero.push_back(Weight::zero(part.rank(), part.convention()));
  std::size_t unit = 0;
  bool has_unit = std::binary_search(t.alphabet.begin(), t.alphabet.end(), zero);
  if (!has_unit)
    flag("unit", {{"missing", label_text(zero)}});
  else
    unit = t.index_of(zero);

  std::vector<std::vector<int>> grades;
  for (const auto& l : t.alphabet) grades.push_back(label_grade(t, l));

  for (std::size_t a = 0; a < m; ++a) {
    if (has_unit) {
      const auto& row = t.products[unit * m + a];
      if (row.size() != 1 || row[0].first != a || row[0].second != 1) flag("unit", {{"a", name(a)}});
    }
    for (std::size_t b = 0; b < m; ++b) {
      if (t.products[a * m + b] != t.products[b * m + a]) flag("commutativity", {{"a", name(a)}, {"b", name(b)}});
      for (const auto& [c, v] : t.products[a * m + b]) {
        if (v < 0) flag("nonnegativity", {{"a", name(a)}, {"b", name(b)}, {"c", name(c)}});
        if (t.coefficient(a, c, b) != v) flag("self-duality", {{"a", name(a)}, {"b", name(b)}, {"c", name(c)}});
        std::vector<int> expect = grades[a];
        for (std::size_t i = 0; i < expect.size(); ++i) expect[i] = (expect[i] + grades[b][i]) % 2;
        if (expect != grades[c]) flag("grading", {{"a", name(a)}, {"b", name(b)}, {"c", name(c)}});
      }
    }
  }

  // (a b) c = a (b c), compared coefficientwise for every (a, b, c).
  auto assoc = parallel_map(m, workers, [&](std::size_t a) -> nlohmann::json {
    std::vector<std::int64_t> lhs(m), rhs(m);
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < m; ++c) {
        std::fill(lhs.begin(), lhs.end(), 0);
        std::fill(rhs.begin(), rhs.end(), 0);
        for (const auto& [x, nab] : t.products[a * m + b])
          for (const auto& [y, nxc] : t.products[x * m + c]) lhs[y] += nab * nxc;
        for (const auto& [x, nbc] : t.products[b * m + c])
          for (const auto& [y, nax] : t.products[a * m + x]) rhs[y] += nbc * nax;
        if (lhs != rhs) return {{"a", name(a)}, {"b", name(b)}, {"c", name(c)}};
      }
    return nullptr;
  });
  for (auto& w : assoc)
    if (!w.is_null()) {
      flag("associativity", w);
      break;
    }

  std::int64_t nonzero = 0;
  for (const auto& row : t.products) nonzero += static_cast<std::int64_t>(row.size());
  r.passed = failures.empty();
  if (!r.passed) r.first_mismatch = failures;
  r.stats = {{"labels", m}, {"nonzero_constants", nonzero}, {"dropped", t.dropped}};
  return r;
}

// ---------------------------------------------------------------- payload and cache

nlohmann::json fusion_table_payload(const FusionTable& t) {
  nlohmann::json alphabet = nlohmann::json::array();
  for (const auto& l : t.alphabet) {
    nlohmann::json parts = nlohmann::json::array();
    for (const auto& w : l) parts.push_back(weight_json(w));
    alphabet.push_back(std::move(parts));
  }
  nlohmann::json conventions = nlohmann::json::array();
  if (!t.alphabet.empty())
    for (const auto& w : t.alphabet.front()) conventions.push_back(convention_name(w.convention()));
  nlohmann::json grading = nlohmann::json::array();
  for (auto g : t.grading)
    grading.push_back(g == GradingRule::RootClass ? "root-class" : g == GradingRule::CoweightParity ? "coweight-parity" : "spinor-class");
  nlohmann::json constants = nlohmann::json::array();
  const auto m = t.size();
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (const auto& [c, v] : t.products[a * m + b]) constants.push_back({a, b, c, v});
  return {{"kind", t.kind},         {"n", t.n},           {"params", t.params},
          {"conventions", conventions}, {"grading", grading}, {"alphabet", alphabet},
          {"constants", constants}, {"dropped", t.dropped}};
}

FusionTable fusion_table_from_payload(const nlohmann::json& j) {
  FusionTable t;
  t.kind = j.at("kind").get<std::string>();
  t.n = j.at("n").get<int>();
  t.params = j.at("params");
  t.dropped = j.at("dropped").get<std::int64_t>();
  std::vector<Convention> conv;
  for (const auto& c : j.at("conventions")) conv.push_back(parse_convention(c.get<std::string>()));
  for (const auto& g : j.at("grading")) {
    auto s = g.get<std::string>();
    t.grading.push_back(s == "root-class" ? GradingRule::RootClass
                        : s == "coweight-parity" ? GradingRule::CoweightParity
                                                 : GradingRule::SpinorClass);
  }
  for (const auto& l : j.at("alphabet")) {
    Label lab;
    std::size_t i = 0;
    for (const auto& w : l) lab.push_back(weight_from_json(w, conv.at(i++)));
    t.alphabet.push_back(std::move(lab));
  }
  require(std::is_sorted(t.alphabet.begin(), t.alphabet.end()), ErrorCode::InvalidArgument, "alphabet not sorted");
  const auto m = t.size();
  t.products.assign(m * m, {});
  for (const auto& e : j.at("constants")) {
    auto a = e.at(0).get<std::size_t>(), b = e.at(1).get<std::size_t>(), c = e.at(2).get<std::size_t>();
    require(a < m && b < m && c < m, ErrorCode::InvalidArgument, "constant index out of range");
    t.products[a * m + b].emplace_back(c, e.at(3).get<std::int64_t>());
  }
  for (auto& row : t.products) std::sort(row.begin(), row.end());
  return t;
}

static std::string hex64(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

std::optional<FusionTable> load_cached_table(const std::filesystem::path& dir, const std::string& key) {
  std::ifstream in(dir / (key + ".json"));
  if (!in) return std::nullopt;
  try {
    auto j = nlohmann::json::parse(in);
    if (j.at("format_version").get<int>() != kFusionCacheVersion) return std::nullopt;
    if (j.at("key").get<std::string>() != key) return std::nullopt;
    const auto& payload = j.at("table");
    if (j.at("hash").get<std::string>() != hex64(fnv1a64(payload.dump()))) return std::nullopt;
    return fusion_table_from_payload(payload);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void store_cached_table(const std::filesystem::path& dir, const std::string& key, const FusionTable& t) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  require(!ec, ErrorCode::Io, "cannot create cache directory " + dir.string());
  auto payload = fusion_table_payload(t);
  nlohmann::json j = {{"format_version", kFusionCacheVersion},
                      {"key", key},
                      {"hash", hex64(fnv1a64(payload.dump()))},
                      {"table", payload}};
  // unique per writer so concurrent builds of the same key never share a temp file
  auto tmp = dir / (key + ".json.tmp." + std::to_string(std::random_device{}()));
  {
    std::ofstream out(tmp);
    require(static_cast<bool>(out), ErrorCode::Io, "cannot write cache file " + tmp.string());
    out << j.dump() << "\n";
  }
  std::filesystem::rename(tmp, dir / (key + ".json"), ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    fail(ErrorCode::Io, "cannot finalize cache file for " + key);
  }
}

FusionTable left_subring(const FusionTable& t) {
  require(t.kind == "w-fusion", ErrorCode::InvalidArgument, "left subring needs a W-fusion table");
  FusionTable out;
  out.kind = "w-fusion-left";
  out.n = t.n;
  out.params = t.params;
  out.grading = {t.grading[0]};
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t.alphabet[i][1] == Weight::zero(t.n)) keep.push_back(i);
  std::vector<std::ptrdiff_t> remap(t.size(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    remap[keep[i]] = static_cast<std::ptrdiff_t>(i);
    out.alphabet.push_back(Label{t.alphabet[keep[i]][0]});
  }
  out.products.resize(keep.size() * keep.size());
  for (std::size_t a = 0; a < keep.size(); ++a)
    for (std::size_t b = 0; b < keep.size(); ++b)
      for (auto [c, m] : t.products[keep[a] * t.size() + keep[b]]) {
        if (remap[c] < 0) {
          out.dropped += m;
          continue;
        }
        out.products[a * keep.size() + b].emplace_back(static_cast<std::size_t>(remap[c]), m);
      }
  return out;
}

Report verify_left_subring_match(int n, int p, int q1, int q2, const BuildOptions& opts) {
  Report r;
  r.identity = "left-subring-match";
  r.params = {{"n", n}, {"p", p}, {"q1", q1}, {"q2", q2}};
  auto a = left_subring(w_fusion_table(n, p, q1, opts));
  auto b = left_subring(w_fusion_table(n, p, q2, opts));
  r.stats = {{"labels", a.size()}};
  r.passed = true;
  if (a.alphabet != b.alphabet || a.dropped != 0 || b.dropped != 0) {
    r.passed = false;
    r.first_mismatch = {{"reason", "alphabets differ or subring not closed"},
                        {"sizes", {a.size(), b.size()}},
                        {"dropped", {a.dropped, b.dropped}}};
    return r;
  }
  for (std::size_t i = 0; i < a.products.size() && r.passed; ++i)
    if (a.products[i] != b.products[i]) {
      r.passed = false;
      r.first_mismatch = {{"a", i / a.size()}, {"b", i % a.size()}};
    }
  return r;
}

}  // namespace ospc
