#include "ospchar/charseries.hpp"

#include "ospchar/error.hpp"

#include <algorithm>
#include <cstdlib>

namespace ospc {

namespace {

constexpr int kFieldBits = 16;
constexpr std::int64_t kFieldBias = 1 << 15;
constexpr int kGradeShift = 96;

std::int64_t max_abs(std::span<const std::int64_t> v) {
  std::int64_t m = 0;
  for (auto x : v) m = std::max(m, x < 0 ? -x : x);
  return m;
}

}  // namespace

std::size_t FormalCharacter::KeyHash::operator()(Key k) const noexcept {
  auto mix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  auto lo = static_cast<std::uint64_t>(k);
  auto hi = static_cast<std::uint64_t>(k >> 64);
  return static_cast<std::size_t>(mix(lo ^ mix(hi)));
}

FormalCharacter::FormalCharacter(int rank, int trunc, std::optional<std::int64_t> depth_cap)
    : rank_(rank), trunc_(trunc), cap_(depth_cap) {
  require(rank >= 1 && rank <= kMaxRank, ErrorCode::Limit,
          "series rank must be between 1 and " + std::to_string(kMaxRank));
  require(trunc >= 0 && trunc < (1 << kFieldBits), ErrorCode::InvalidArgument, "truncation grade out of range");
}

FormalCharacter FormalCharacter::monomial(std::span<const std::int64_t> weight, int grade, int trunc,
                                          const BigInt& coeff) {
  FormalCharacter f(static_cast<int>(weight.size()), trunc);
  f.add_term(weight, grade, coeff);
  return f;
}

FormalCharacter::Key FormalCharacter::encode(std::span<const std::int64_t> weight, int grade) const {
  require(static_cast<int>(weight.size()) == rank_, ErrorCode::InvalidArgument, "weight rank mismatch");
  require(grade >= 0 && grade < (1 << kFieldBits), ErrorCode::InvalidArgument, "grade out of range");
  Key k = static_cast<Key>(grade) << kGradeShift;
  for (int i = 0; i < rank_; ++i) {
    auto c = weight[static_cast<std::size_t>(i)];
    require(c > -kCoordLimit && c < kCoordLimit, ErrorCode::Limit, "weight coordinate out of range");
    k |= static_cast<Key>(static_cast<std::uint64_t>(c + kFieldBias)) << (kFieldBits * i);
  }
  return k;
}

FormalCharacter::Key FormalCharacter::delta(std::span<const std::int64_t> weight, int grade) const {
  require(static_cast<int>(weight.size()) == rank_, ErrorCode::InvalidArgument, "weight rank mismatch");
  __int128 d = static_cast<__int128>(grade) << kGradeShift;
  for (int i = 0; i < rank_; ++i)
    d += static_cast<__int128>(weight[static_cast<std::size_t>(i)]) << (kFieldBits * i);
  return static_cast<Key>(d);
}

void FormalCharacter::decode(Key k, IntVec& weight, int& grade) const {
  weight.resize(static_cast<std::size_t>(rank_));
  for (int i = 0; i < rank_; ++i)
    weight[static_cast<std::size_t>(i)] =
        static_cast<std::int64_t>(static_cast<std::uint64_t>(k >> (kFieldBits * i)) & 0xFFFF) - kFieldBias;
  grade = static_cast<int>(static_cast<std::uint64_t>(k >> kGradeShift) & 0xFFFF);
}

std::int64_t FormalCharacter::depth(std::span<const std::int64_t> weight, int grade) const {
  return 4LL * rank_ * grade - twice_height(weight);
}

std::int64_t FormalCharacter::key_depth(Key k) const {
  std::int64_t s = 0;
  for (int i = 0; i < rank_; ++i) {
    auto c = static_cast<std::int64_t>(static_cast<std::uint64_t>(k >> (kFieldBits * i)) & 0xFFFF) - kFieldBias;
    s += c * (2 * (rank_ - i) - 1);
  }
  auto g = static_cast<std::int64_t>(static_cast<std::uint64_t>(k >> kGradeShift) & 0xFFFF);
  return 4LL * rank_ * g - s;
}

bool FormalCharacter::inside(std::int64_t d, int grade) const {
  return grade >= 0 && grade <= trunc_ && (!cap_ || d <= *cap_);
}

void FormalCharacter::grow_bound(std::int64_t by) {
  coord_bound_ += by;
  require(coord_bound_ < kCoordLimit, ErrorCode::Limit, "weight coordinates would exceed the supported range");
}

void FormalCharacter::accumulate(Key k, const BigInt& c) {
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) it->second += c;
}

void FormalCharacter::prune_zeros() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == 0)
      it = terms_.erase(it);
    else
      ++it;
  }
}

BigInt FormalCharacter::coefficient(std::span<const std::int64_t> weight, int grade) const {
  auto it = terms_.find(encode(weight, grade));
  return it == terms_.end() ? BigInt(0) : it->second;
}

std::vector<FormalCharacter::Term> FormalCharacter::terms() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [k, c] : terms_) {
    Term t;
    decode(k, t.weight, t.grade);
    t.coeff = c;
    out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) {
    if (a.grade != b.grade) return a.grade < b.grade;
    return a.weight < b.weight;
  });
  return out;
}

std::optional<std::int64_t> FormalCharacter::min_depth() const {
  std::optional<std::int64_t> m;
  for (const auto& [k, c] : terms_) {
    auto d = key_depth(k);
    if (!m || d < *m) m = d;
  }
  return m;
}

std::optional<std::int64_t> FormalCharacter::max_depth() const {
  std::optional<std::int64_t> m;
  for (const auto& [k, c] : terms_) {
    auto d = key_depth(k);
    if (!m || d > *m) m = d;
  }
  return m;
}

FormalCharacter FormalCharacter::grade_slice(int grade) const {
  FormalCharacter out(rank_, trunc_, cap_);
  out.offset_ = offset_;
  out.coord_bound_ = coord_bound_;
  for (const auto& [k, c] : terms_)
    if (static_cast<int>(static_cast<std::uint64_t>(k >> kGradeShift) & 0xFFFF) == grade) out.terms_.emplace(k, c);
  return out;
}

FormalCharacter FormalCharacter::restricted(int trunc, std::optional<std::int64_t> cap) const {
  int t = std::min(trunc, trunc_);
  std::optional<std::int64_t> c = cap_;
  if (cap && (!c || *cap < *c)) c = cap;
  FormalCharacter out(rank_, t, c);
  out.offset_ = offset_;
  out.coord_bound_ = coord_bound_;
  for (const auto& [k, v] : terms_) {
    IntVec w;
    int g;
    decode(k, w, g);
    if (out.inside(key_depth(k), g)) out.terms_.emplace(k, v);
  }
  return out;
}

void FormalCharacter::add_term(std::span<const std::int64_t> weight, int grade, const BigInt& coeff) {
  if (coeff == 0) return;
  if (!inside(depth(weight, grade), grade)) return;
  coord_bound_ = std::max(coord_bound_, max_abs(weight));
  auto k = encode(weight, grade);
  auto [it, inserted] = terms_.try_emplace(k, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

static void check_compatible(const FormalCharacter& a, const FormalCharacter& b) {
  require(a.rank() == b.rank(), ErrorCode::InvalidArgument, "series rank mismatch");
  require(a.q_offset() == b.q_offset(), ErrorCode::InvalidArgument, "series q-offsets differ");
}

FormalCharacter& FormalCharacter::operator+=(const FormalCharacter& o) {
  check_compatible(*this, o);
  if (o.trunc_ < trunc_ || (o.cap_ && (!cap_ || *o.cap_ < *cap_))) *this = restricted(o.trunc_, o.cap_);
  coord_bound_ = std::max(coord_bound_, o.coord_bound_);
  for (const auto& [k, c] : o.terms_) {
    IntVec w;
    int g;
    decode(k, w, g);
    if (inside(key_depth(k), g)) accumulate(k, c);
  }
  prune_zeros();
  return *this;
}

FormalCharacter& FormalCharacter::operator-=(const FormalCharacter& o) { return *this += o.scaled(-1); }

FormalCharacter FormalCharacter::scaled(const BigInt& s) const {
  FormalCharacter out(rank_, trunc_, cap_);
  out.offset_ = offset_;
  out.coord_bound_ = coord_bound_;
  if (s == 0) return out;
  for (const auto& [k, c] : terms_) out.terms_.emplace(k, c * s);
  return out;
}

FormalCharacter FormalCharacter::shifted(std::span<const std::int64_t> weight, int grade) const {
  require(grade >= 0, ErrorCode::InvalidArgument, "negative grade shift");
  std::optional<std::int64_t> cap = cap_;
  if (cap) *cap += depth(weight, grade);
  FormalCharacter out(rank_, trunc_, cap);
  out.offset_ = offset_;
  out.coord_bound_ = coord_bound_;
  out.grow_bound(max_abs(weight));
  const Key d = delta(weight, grade);
  for (const auto& [k, c] : terms_) {
    Key nk = k + d;
    IntVec w;
    int g;
    out.decode(nk, w, g);
    if (out.inside(out.key_depth(nk), g)) out.terms_.emplace(nk, c);
  }
  return out;
}

FormalCharacter operator*(const FormalCharacter& a, const FormalCharacter& b) {
  require(a.rank_ == b.rank_, ErrorCode::InvalidArgument, "series rank mismatch");
  auto min_or = [](const FormalCharacter& x) -> std::int64_t {
    if (auto m = x.min_depth()) return *m;
    return x.cap_.value_or(0);
  };
  std::optional<std::int64_t> cap;
  if (a.cap_ && b.cap_)
    cap = std::min(*a.cap_ + min_or(b), *b.cap_ + min_or(a));
  else if (a.cap_)
    cap = *a.cap_ + min_or(b);
  else if (b.cap_)
    cap = *b.cap_ + min_or(a);
  FormalCharacter out(a.rank_, std::min(a.trunc_, b.trunc_), cap);
  out.offset_ = a.offset_ + b.offset_;
  out.grow_bound(a.coord_bound_ + b.coord_bound_);

  struct Entry {
    FormalCharacter::Key key;
    std::int64_t depth;
    const BigInt* coeff;
  };
  std::vector<Entry> bd;
  bd.reserve(b.terms_.size());
  for (const auto& [k, c] : b.terms_) bd.push_back({k, b.key_depth(k), &c});
  const auto bias = a.encode(IntVec(static_cast<std::size_t>(a.rank_), 0), 0);
  for (const auto& [ka, ca] : a.terms_) {
    const auto da = a.key_depth(ka);
    for (const auto& e : bd) {
      FormalCharacter::Key nk = ka + e.key - bias;
      int g = static_cast<int>(static_cast<std::uint64_t>(nk >> kGradeShift) & 0xFFFF);
      if (!out.inside(da + e.depth, g)) continue;
      out.accumulate(nk, ca * *e.coeff);
    }
  }
  out.prune_zeros();
  return out;
}

void FormalCharacter::multiply_binomial(std::span<const std::int64_t> beta, int j, int sign) {
  require(sign == 1 || sign == -1, ErrorCode::InvalidArgument, "binomial sign must be +-1");
  require(depth(beta, j) > 0, ErrorCode::InvalidArgument, "binomial factor must have positive depth");
  grow_bound(max_abs(beta));
  const Key d = delta(beta, j);
  const std::int64_t dd = depth(beta, j);
  std::vector<std::pair<Key, BigInt>> moved;
  moved.reserve(terms_.size());
  for (const auto& [k, c] : terms_) {
    Key nk = k + d;
    int g = static_cast<int>(static_cast<std::uint64_t>(nk >> kGradeShift) & 0xFFFF);
    if (inside(key_depth(k) + dd, g)) moved.emplace_back(nk, sign > 0 ? c : BigInt(-c));
  }
  for (auto& [k, c] : moved) accumulate(k, c);
  prune_zeros();
}

void FormalCharacter::divide_geometric(std::span<const std::int64_t> beta, int j) {
  const std::int64_t dd = depth(beta, j);
  require(dd > 0, ErrorCode::InvalidArgument, "geometric factor must have positive depth");
  require(cap_.has_value() || j > 0, ErrorCode::InvalidArgument,
          "geometric division at grade 0 needs a depth cap");
  if (terms_.empty()) return;
  const Key d = delta(beta, j);
  const auto lo = *min_depth();
  std::int64_t hi = cap_ ? *cap_ : *max_depth() + dd * (trunc_ / j + 1);
  const std::int64_t steps = std::max<std::int64_t>(0, (hi - lo) / dd) + 1;
  grow_bound(steps * max_abs(beta));

  std::vector<std::vector<Key>> buckets(static_cast<std::size_t>(hi - lo + 1));
  for (const auto& [k, c] : terms_) {
    auto kd = key_depth(k);
    if (kd <= hi) buckets[static_cast<std::size_t>(kd - lo)].push_back(k);
  }
  for (std::int64_t level = lo; level <= hi; ++level) {
    auto& bucket = buckets[static_cast<std::size_t>(level - lo)];
    const std::int64_t nd = level + dd;
    for (std::size_t idx = 0; idx < bucket.size(); ++idx) {
      const Key k = bucket[idx];
      const BigInt& c = terms_.at(k);
      if (c == 0) continue;
      Key nk = k + d;
      int g = static_cast<int>(static_cast<std::uint64_t>(nk >> kGradeShift) & 0xFFFF);
      if (!inside(nd, g)) continue;
      BigInt add = c;
      auto [it, inserted] = terms_.try_emplace(nk, std::move(add));
      if (inserted) {
        buckets[static_cast<std::size_t>(nd - lo)].push_back(nk);
      } else {
        it->second += terms_.at(k);
      }
    }
    std::vector<Key>().swap(bucket);
  }
  prune_zeros();
}

std::optional<FormalCharacter::Mismatch> FormalCharacter::compare(const FormalCharacter& a,
                                                                  const FormalCharacter& b, int trunc,
                                                                  std::optional<std::int64_t> cap) {
  require(a.rank_ == b.rank_, ErrorCode::InvalidArgument, "series rank mismatch");
  require(a.offset_ == b.offset_, ErrorCode::InvalidArgument, "series q-offsets differ");
  int t = std::min({trunc, a.trunc_, b.trunc_});
  std::optional<std::int64_t> c = cap;
  for (auto x : {a.cap_, b.cap_})
    if (x && (!c || *x < *c)) c = x;
  auto within = [&](const FormalCharacter& s, Key k) {
    IntVec w;
    int g;
    s.decode(k, w, g);
    return g <= t && (!c || s.key_depth(k) <= *c);
  };
  std::optional<Mismatch> best;
  auto consider = [&](Key k, const BigInt& l, const BigInt& r) {
    Mismatch m;
    a.decode(k, m.weight, m.grade);
    m.left = l;
    m.right = r;
    if (!best || std::tie(m.grade, m.weight) < std::tie(best->grade, best->weight)) best = std::move(m);
  };
  for (const auto& [k, v] : a.terms_) {
    if (!within(a, k)) continue;
    auto it = b.terms_.find(k);
    BigInt r = it == b.terms_.end() ? BigInt(0) : it->second;
    if (r != v) consider(k, v, r);
  }
  for (const auto& [k, v] : b.terms_) {
    if (!within(b, k)) continue;
    if (!a.terms_.count(k)) consider(k, 0, v);
  }
  return best;
}

// ---------------------------------------------------------------- denominators

std::int64_t default_depth_window(int n, int trunc) { return 4LL * n * (trunc + 1); }

namespace {

struct Factor {
  IntVec beta;
  int grade;
  bool fermionic;  // (1 + x) multiplied; otherwise 1/(1 - x)
};

std::vector<IntVec> even_positive_roots(int n) {
  std::vector<IntVec> out;
  for (const auto& r : positive_roots(RootType::C, n)) out.push_back(r.to_ints());
  return out;
}

IntVec negated(IntVec v) {
  for (auto& x : v) x = -x;
  return v;
}

std::vector<Factor> inverse_denominator_factors(Algebra type, int n, int trunc) {
  std::vector<Factor> f;
  if (type == Algebra::OSP) {
    for (int i = 0; i < n; ++i) {
      IntVec e(static_cast<std::size_t>(n), 0);
      e[static_cast<std::size_t>(i)] = 1;
      for (int j = 1; j <= trunc; ++j) f.push_back({e, j, true});
      for (int j = 0; j <= trunc; ++j) f.push_back({negated(e), j, true});
    }
  }
  const IntVec zero(static_cast<std::size_t>(n), 0);
  for (int j = 1; j <= trunc; ++j)
    for (int c = 0; c < n; ++c) f.push_back({zero, j, false});
  for (const auto& a : even_positive_roots(n)) {
    for (int j = 1; j <= trunc; ++j) {
      f.push_back({a, j, false});
      f.push_back({negated(a), j, false});
    }
  }
  for (const auto& a : even_positive_roots(n)) f.push_back({negated(a), 0, false});
  return f;
}

}  // namespace

void apply_denominator_inverse(FormalCharacter& s, Algebra type) {
  require(s.depth_cap().has_value(), ErrorCode::InvalidArgument, "inverse denominator needs a depth cap");
  for (const auto& f : inverse_denominator_factors(type, s.rank(), s.trunc())) {
    if (f.fermionic)
      s.multiply_binomial(f.beta, f.grade, 1);
    else
      s.divide_geometric(f.beta, f.grade);
  }
}

void apply_sp_denominator(FormalCharacter& s) {
  for (const auto& f : inverse_denominator_factors(Algebra::SP, s.rank(), s.trunc())) s.multiply_binomial(f.beta, f.grade, -1);
}

FormalCharacter denominator_inverse(Algebra type, int n, int trunc, std::optional<std::int64_t> window) {
  FormalCharacter s(n, trunc, window.value_or(default_depth_window(n, trunc)));
  s.add_term(IntVec(static_cast<std::size_t>(n), 0), 0, 1);
  apply_denominator_inverse(s, type);
  return s;
}

FormalCharacter theta_sum(int n, int trunc) {
  require(trunc >= 0, ErrorCode::InvalidArgument, "negative truncation");
  FormalCharacter s(n, trunc);
  std::int64_t m = 0;
  while ((m + 1) * (m + 2) / 2 <= trunc) ++m;
  IntVec cur(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int i, std::int64_t used) -> void {
    if (i == n) {
      s.add_term(cur, static_cast<int>(used), 1);
      return;
    }
    for (std::int64_t v = -m - 1; v <= m; ++v) {
      std::int64_t g = v * (v + 1) / 2;
      if (used + g > trunc) continue;
      cur[static_cast<std::size_t>(i)] = v;
      self(self, i + 1, used + g);
    }
  };
  rec(rec, 0, 0);
  return s;
}

FormalCharacter weyl_numerator(Algebra type, std::span<const std::int64_t> mu, int trunc) {
  const int n = static_cast<int>(mu.size());
  FormalCharacter s(n, trunc);
  // Doubled coordinates keep the odd Weyl vector integral.
  IntVec rho2(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) rho2[static_cast<std::size_t>(i)] = type == Algebra::SP ? 2 * (n - i) : 2 * (n - i) - 1;
  IntVec x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = 2 * mu[static_cast<std::size_t>(i)] + rho2[static_cast<std::size_t>(i)];
  for (const auto& w : weyl_group(n)) {
    auto y = w.act(x);
    for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = (y[static_cast<std::size_t>(i)] - rho2[static_cast<std::size_t>(i)]) / 2;
    s.add_term(y, 0, w.det());
  }
  return s;
}

FormalCharacter verma_character(Algebra type, std::span<const std::int64_t> lambda, int trunc,
                                std::optional<std::int64_t> window) {
  const int n = static_cast<int>(lambda.size());
  FormalCharacter probe(n, trunc);
  const auto cap = probe.depth(lambda, 0) + window.value_or(default_depth_window(n, trunc));
  FormalCharacter s(n, trunc, cap);
  s.add_term(lambda, 0, 1);
  apply_denominator_inverse(s, type);
  return s;
}

FormalCharacter weyl_module_character(Algebra type, std::span<const std::int64_t> mu, int trunc,
                                      std::optional<std::int64_t> window) {
  const int n = static_cast<int>(mu.size());
  require(Weight::from_ints(mu).is_dominant(), ErrorCode::InvalidArgument, "highest weight must be dominant");
  auto num = weyl_numerator(type, mu, trunc);
  // by default the window also spans mu down to -mu, so the finite-dimensional top is complete
  const auto cap = num.depth(mu, 0) + window.value_or(default_depth_window(n, trunc) + 2 * twice_height(mu));
  auto s = num.restricted(trunc, cap);
  apply_denominator_inverse(s, type);
  return s;
}

QSeries ds_specialize(const FormalCharacter& rch, const Rational& prefactor, int trunc,
                      const std::vector<Rational>& shift) {
  require(!rch.depth_cap().has_value(), ErrorCode::InvalidArgument,
          "specialization needs a polynomial input (no depth cap)");
  require(trunc >= 0, ErrorCode::InvalidArgument, "negative truncation");
  const int n = rch.rank();
  require(shift.empty() || static_cast<int>(shift.size()) == n, ErrorCode::InvalidArgument, "shift rank mismatch");
  Rational shift_h = 0;
  for (int i = 0; i < static_cast<int>(shift.size()); ++i) shift_h += shift[static_cast<std::size_t>(i)] * (2 * (n - i) - 1);

  auto terms = rch.terms();
  if (terms.empty()) return QSeries(prefactor + trunc);
  std::vector<Rational> exps;
  exps.reserve(terms.size());
  for (const auto& t : terms)
    exps.push_back(rch.q_offset() + t.grade - (Rational(twice_height(t.weight)) + shift_h) / 2 + prefactor);
  Rational base = *std::min_element(exps.begin(), exps.end());
  QSeries out(base + trunc);
  for (std::size_t i = 0; i < terms.size(); ++i) out.add(exps[i], terms[i].coeff);
  return out.times_partitions(n);
}

Report verify_triple_product(int n, int trunc) {
  Report r;
  r.identity = "triple-product";
  r.params = {{"n", n}};
  r.trunc = trunc;
  auto theta = theta_sum(n, trunc);
  const auto cap = theta.max_depth().value_or(0);
  auto lhs = denominator_inverse(Algebra::OSP, n, trunc, cap);
  apply_sp_denominator(lhs);
  const IntVec zero(static_cast<std::size_t>(n), 0);
  for (int j = 1; j <= trunc; ++j)
    for (int c = 0; c < n; ++c) lhs.multiply_binomial(zero, j, -1);
  auto mm = FormalCharacter::compare(theta, lhs, trunc, cap);
  r.passed = !mm.has_value();
  r.stats = {{"depth_cap", cap}, {"theta_terms", theta.size()}, {"product_terms", lhs.restricted(trunc, cap).size()}};
  if (mm)
    r.first_mismatch = {{"weight", mm->weight}, {"grade", mm->grade}, {"expected", to_string(mm->left)},
                        {"actual", to_string(mm->right)}};
  return r;
}

}  // namespace ospc
