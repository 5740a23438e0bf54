#include "ospchar/rootdata.hpp"

#include "ospchar/error.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

namespace ospc {

// ---------------------------------------------------------------- Weight

Weight::Weight(std::vector<Rational> coords, Convention conv) : coords_(std::move(coords)), conv_(conv) {}

Weight Weight::zero(int n, Convention conv) {
  return Weight(std::vector<Rational>(static_cast<std::size_t>(n)), conv);
}

Weight Weight::from_ints(std::span<const std::int64_t> c, Convention conv) {
  std::vector<Rational> v;
  v.reserve(c.size());
  for (auto x : c) v.emplace_back(x);
  return Weight(std::move(v), conv);
}

bool Weight::is_integral() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& r) { return is_integer(r); });
}

bool Weight::is_half_integral() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& r) {
    return boost::multiprecision::denominator(r) == 2;
  });
}

IntVec Weight::to_ints() const {
  IntVec out;
  out.reserve(coords_.size());
  for (const auto& r : coords_) out.push_back(to_int64(r));
  return out;
}

bool Weight::is_dominant() const {
  for (std::size_t i = 0; i + 1 < coords_.size(); ++i)
    if (coords_[i] < coords_[i + 1]) return false;
  return coords_.empty() || coords_.back() >= 0;
}

Weight Weight::scaled(const Rational& s) const {
  auto c = coords_;
  for (auto& x : c) x *= s;
  return Weight(std::move(c), conv_);
}

static void check_same(const Weight& a, const Weight& b) {
  require(a.rank() == b.rank(), ErrorCode::InvalidArgument, "rank mismatch between weights");
  require(a.convention() == b.convention(), ErrorCode::InvalidArgument,
          "weights use different coordinate conventions");
}

Weight Weight::operator+(const Weight& o) const {
  check_same(*this, o);
  auto c = coords_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.coords_[i];
  return Weight(std::move(c), conv_);
}

Weight Weight::operator-(const Weight& o) const {
  check_same(*this, o);
  auto c = coords_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.coords_[i];
  return Weight(std::move(c), conv_);
}

Weight Weight::operator-() const { return scaled(Rational(-1)); }

std::strong_ordering Weight::operator<=>(const Weight& o) const {
  if (conv_ != o.conv_) return conv_ < o.conv_ ? std::strong_ordering::less : std::strong_ordering::greater;
  if (coords_.size() != o.coords_.size())
    return coords_.size() < o.coords_.size() ? std::strong_ordering::less : std::strong_ordering::greater;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] < o.coords_[i]) return std::strong_ordering::less;
    if (o.coords_[i] < coords_[i]) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

Rational bilinear(const Weight& a, const Weight& b) {
  check_same(a, b);
  Rational s = 0;
  for (int i = 0; i < a.rank(); ++i) s += a[i] * b[i];
  return a.convention() == Convention::CSide ? Rational(s / 2) : s;
}

std::int64_t twice_height(std::span<const std::int64_t> c) {
  const auto n = static_cast<std::int64_t>(c.size());
  std::int64_t s = 0;
  for (std::int64_t i = 0; i < n; ++i) s += c[static_cast<std::size_t>(i)] * (2 * (n - i) - 1);
  return s;
}

Rational twice_height(const Weight& c) {
  const int n = c.rank();
  Rational s = 0;
  for (int i = 0; i < n; ++i) s += c[i] * (2 * (n - i) - 1);
  return s;
}

// ---------------------------------------------------------------- roots

static void check_rank(int n) {
  require(n >= 1, ErrorCode::InvalidArgument, "rank must be at least 1");
}

static Weight unit_combo(int n, Convention conv, std::initializer_list<std::pair<int, int>> entries) {
  std::vector<Rational> c(static_cast<std::size_t>(n));
  for (auto [i, v] : entries) c[static_cast<std::size_t>(i)] += v;
  return Weight(std::move(c), conv);
}

std::vector<Weight> simple_roots(RootType type, int n) {
  check_rank(n);
  const auto conv = type == RootType::B ? Convention::BSide : Convention::CSide;
  std::vector<Weight> out;
  for (int i = 0; i + 1 < n; ++i) out.push_back(unit_combo(n, conv, {{i, 1}, {i + 1, -1}}));
  const int last = type == RootType::C ? 2 : 1;
  out.push_back(unit_combo(n, conv, {{n - 1, last}}));
  return out;
}

std::vector<Weight> positive_roots(RootType type, int n) {
  check_rank(n);
  const auto conv = type == RootType::B ? Convention::BSide : Convention::CSide;
  std::vector<Weight> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      out.push_back(unit_combo(n, conv, {{i, 1}, {j, -1}}));
      out.push_back(unit_combo(n, conv, {{i, 1}, {j, 1}}));
    }
  const int longest = type == RootType::B ? 1 : 2;
  for (int i = 0; i < n; ++i) out.push_back(unit_combo(n, conv, {{i, longest}}));
  return out;
}

std::vector<Weight> positive_odd_roots(int n) {
  check_rank(n);
  std::vector<Weight> out;
  for (int i = 0; i < n; ++i) out.push_back(unit_combo(n, Convention::CSide, {{i, 1}}));
  return out;
}

RhoVectors rho_vectors(int n) {
  check_rank(n);
  std::vector<Rational> sp, odd, osp, chk, b;
  for (int i = 0; i < n; ++i) {
    sp.emplace_back(n - i);
    odd.push_back(make_rational(1, 2));
    osp.push_back(Rational(n - i) - make_rational(1, 2));
    chk.emplace_back(2 * (n - i) - 1);
    b.push_back(Rational(n - i) - make_rational(1, 2));
  }
  return {Weight(sp, Convention::CSide), Weight(odd, Convention::CSide), Weight(osp, Convention::CSide),
          Weight(chk, Convention::CSide), Weight(b, Convention::BSide)};
}

Rational dual_coxeter(RootType type, int n) {
  check_rank(n);
  switch (type) {
    case RootType::B:
      return Rational(2 * n - 1);
    case RootType::C:
      return Rational(n + 1);
    case RootType::OSP:
      return Rational(n) + make_rational(1, 2);
  }
  fail(ErrorCode::Internal, "unknown root type");
}

int coxeter_number(int n) { return 2 * n; }

// ---------------------------------------------------------------- Weyl group

static int compute_length(const std::vector<int>& p, const std::vector<int>& s) {
  const int n = static_cast<int>(p.size());
  int len = 0;
  for (int i = 0; i < n; ++i) {
    if (s[i] < 0) ++len;  // long/short root along e_i
    for (int j = i + 1; j < n; ++j) {
      // w(e_i - e_j) = s_i e_{p_i} - s_j e_{p_j}
      bool pos_minus;
      if (s[i] > 0)
        pos_minus = s[j] < 0 || p[i] < p[j];
      else
        pos_minus = s[j] < 0 && p[j] < p[i];
      // w(e_i + e_j) = s_i e_{p_i} + s_j e_{p_j}
      bool pos_plus;
      if (s[i] > 0 && s[j] > 0)
        pos_plus = true;
      else if (s[i] < 0 && s[j] < 0)
        pos_plus = false;
      else if (s[i] > 0)
        pos_plus = p[i] < p[j];
      else
        pos_plus = p[j] < p[i];
      len += !pos_minus;
      len += !pos_plus;
    }
  }
  return len;
}

WeylElement WeylElement::identity(int n) {
  std::vector<int> p(static_cast<std::size_t>(n)), s(static_cast<std::size_t>(n), 1);
  std::iota(p.begin(), p.end(), 0);
  return make(std::move(p), std::move(s));
}

WeylElement WeylElement::make(std::vector<int> perm, std::vector<int> signs) {
  require(perm.size() == signs.size(), ErrorCode::InvalidArgument, "perm/sign size mismatch");
  std::vector<int> seen(perm.size(), 0);
  for (int x : perm) {
    require(x >= 0 && x < static_cast<int>(perm.size()) && !seen[static_cast<std::size_t>(x)],
            ErrorCode::InvalidArgument, "not a permutation");
    seen[static_cast<std::size_t>(x)] = 1;
  }
  for (int x : signs) require(x == 1 || x == -1, ErrorCode::InvalidArgument, "signs must be +-1");
  WeylElement w;
  w.perm_ = std::move(perm);
  w.signs_ = std::move(signs);
  w.length_ = compute_length(w.perm_, w.signs_);
  w.det_ = (w.length_ % 2 == 0) ? 1 : -1;
  return w;
}

WeylElement WeylElement::simple_reflection(int n, int i) {
  require(i >= 0 && i < n, ErrorCode::InvalidArgument, "simple reflection index out of range");
  std::vector<int> p(static_cast<std::size_t>(n)), s(static_cast<std::size_t>(n), 1);
  std::iota(p.begin(), p.end(), 0);
  if (i + 1 < n)
    std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(i) + 1]);
  else
    s[static_cast<std::size_t>(i)] = -1;
  return make(std::move(p), std::move(s));
}

Weight WeylElement::act(const Weight& x) const {
  require(x.rank() == rank(), ErrorCode::InvalidArgument, "rank mismatch in Weyl action");
  std::vector<Rational> out(static_cast<std::size_t>(rank()));
  for (int i = 0; i < rank(); ++i) out[static_cast<std::size_t>(perm_[i])] = x[i] * signs_[i];
  return Weight(std::move(out), x.convention());
}

IntVec WeylElement::act(std::span<const std::int64_t> x) const {
  require(static_cast<int>(x.size()) == rank(), ErrorCode::InvalidArgument, "rank mismatch in Weyl action");
  IntVec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[static_cast<std::size_t>(perm_[i])] = x[i] * signs_[i];
  return out;
}

WeylElement WeylElement::compose(const WeylElement& r) const {
  require(r.rank() == rank(), ErrorCode::InvalidArgument, "rank mismatch in composition");
  // this(r(e_i)) = this(s^r_i e_{p^r_i}) = s^r_i s_{p^r_i} e_{p_{p^r_i}}
  std::vector<int> p(perm_.size()), s(perm_.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto mid = static_cast<std::size_t>(r.perm_[i]);
    p[i] = perm_[mid];
    s[i] = r.signs_[i] * signs_[mid];
  }
  return make(std::move(p), std::move(s));
}

WeylElement WeylElement::inverse() const {
  std::vector<int> p(perm_.size()), s(perm_.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto t = static_cast<std::size_t>(perm_[i]);
    p[t] = static_cast<int>(i);
    s[t] = signs_[i];
  }
  return make(std::move(p), std::move(s));
}

WeylRange::iterator::iterator(int n) : perm_(static_cast<std::size_t>(n)), n_(n), done_(false) {
  std::iota(perm_.begin(), perm_.end(), 0);
  refresh();
}

void WeylRange::iterator::refresh() {
  std::vector<int> s(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) s[static_cast<std::size_t>(i)] = (sign_mask_ >> i) & 1 ? -1 : 1;
  current_ = WeylElement::make(perm_, std::move(s));
}

WeylRange::iterator& WeylRange::iterator::operator++() {
  if (done_) return *this;
  ++sign_mask_;
  if (sign_mask_ == (std::uint64_t{1} << n_)) {
    sign_mask_ = 0;
    if (!std::next_permutation(perm_.begin(), perm_.end())) {
      done_ = true;
      return *this;
    }
  }
  refresh();
  return *this;
}

WeylRange weyl_elements(int n, int cap) {
  check_rank(n);
  require(n <= cap, ErrorCode::Limit,
          "Weyl group enumeration for rank " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  return WeylRange(n);
}

const std::vector<WeylElement>& weyl_group(int n) {
  static std::array<std::vector<WeylElement>, 7> cache;
  static std::array<std::once_flag, 7> flags;
  require(n >= 1 && n <= 6, ErrorCode::Limit, "materialized Weyl groups are limited to rank 6");
  std::call_once(flags[static_cast<std::size_t>(n)], [n] {
    auto& v = cache[static_cast<std::size_t>(n)];
    for (const auto& w : weyl_elements(n)) v.push_back(w);
  });
  return cache[static_cast<std::size_t>(n)];
}

Weight dot_act(const WeylElement& w, const Weight& lambda, const Weight& rho) {
  return w.act(lambda + rho) - rho;
}

IntVec dot_act(const WeylElement& w, std::span<const std::int64_t> lambda, std::span<const std::int64_t> rho) {
  IntVec shifted(lambda.size());
  for (std::size_t i = 0; i < lambda.size(); ++i) shifted[i] = lambda[i] + rho[i];
  auto out = w.act(shifted);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= rho[i];
  return out;
}

Regularity classify(const Weight& x) {
  std::vector<Rational> a;
  for (const auto& c : x.coords()) {
    if (c == 0) return Regularity::Singular;
    a.push_back(c < 0 ? Rational(-c) : c);
  }
  std::sort(a.begin(), a.end());
  return std::adjacent_find(a.begin(), a.end()) == a.end() ? Regularity::Regular : Regularity::Singular;
}

std::pair<WeylElement, Weight> dominant_rep(const Weight& x) {
  const int n = x.rank();
  check_rank(n);
  std::vector<Rational> mag(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) mag[static_cast<std::size_t>(i)] = x[i] < 0 ? Rational(-x[i]) : x[i];
  std::vector<Rational> plus = mag;
  std::sort(plus.begin(), plus.end(), std::greater<>());

  std::vector<int> perm(static_cast<std::size_t>(n)), signs(static_cast<std::size_t>(n), 1);
  int i = 0;
  while (i < n) {
    int j = i;
    while (j < n && plus[static_cast<std::size_t>(j)] == plus[static_cast<std::size_t>(i)]) ++j;
    const Rational& v = plus[static_cast<std::size_t>(i)];
    std::vector<std::pair<int, int>> targets;  // (position, sign)
    if (v == 0) {
      for (int t = 0; t < n; ++t)
        if (x[t] == 0) targets.emplace_back(t, 1);
    } else {
      for (int t = 0; t < n; ++t)
        if (x[t] == v) targets.emplace_back(t, 1);
      for (int t = n - 1; t >= 0; --t)
        if (x[t] == -v) targets.emplace_back(t, -1);
    }
    for (int s = i; s < j; ++s) {
      perm[static_cast<std::size_t>(s)] = targets[static_cast<std::size_t>(s - i)].first;
      signs[static_cast<std::size_t>(s)] = targets[static_cast<std::size_t>(s - i)].second;
    }
    i = j;
  }
  return {WeylElement::make(std::move(perm), std::move(signs)), Weight(std::move(plus), x.convention())};
}

// ---------------------------------------------------------------- Freudenthal

std::vector<std::pair<Weight, std::int64_t>> freudenthal_character(RootType type, const Weight& highest) {
  require(type != RootType::OSP, ErrorCode::InvalidArgument, "Freudenthal character needs type B or C");
  const int n = highest.rank();
  check_rank(n);
  const bool b = type == RootType::B;
  require(highest.convention() == (b ? Convention::BSide : Convention::CSide), ErrorCode::InvalidArgument,
          "highest weight convention does not match root type");
  require(highest.is_dominant(), ErrorCode::InvalidArgument, "highest weight must be dominant");

  // Integer working coordinates: C-side as is, B-side doubled. The form is a fixed multiple of
  // the dot product in both cases, and Freudenthal's recursion is homogeneous in the form.
  const int scale = b ? 2 : 1;
  IntVec top(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Rational v = highest[i] * scale;
    require(is_integer(v), ErrorCode::InvalidArgument, "weight is not in the weight lattice");
    top[static_cast<std::size_t>(i)] = to_int64(v);
  }
  if (b) {
    bool all_even = std::all_of(top.begin(), top.end(), [](auto v) { return v % 2 == 0; });
    bool all_odd = std::all_of(top.begin(), top.end(), [](auto v) { return v % 2 != 0; });
    require(all_even || all_odd, ErrorCode::InvalidArgument, "B-side weight mixes integer and half-integer");
  }

  std::vector<IntVec> roots, simple;
  for (const auto& r : positive_roots(type, n)) {
    IntVec v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = to_int64(Rational(r[i] * scale));
    roots.push_back(v);
  }
  for (const auto& r : simple_roots(type, n)) {
    IntVec v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = to_int64(Rational(r[i] * scale));
    simple.push_back(v);
  }
  IntVec rho(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) rho[static_cast<std::size_t>(i)] = b ? 2 * (n - i) - 1 : n - i;

  auto dot = [](const IntVec& x, const IntVec& y) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
  };
  auto add = [](IntVec x, const IntVec& y, std::int64_t k) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += k * y[i];
    return x;
  };

  IntVec top_rho = add(top, rho, 1);
  const std::int64_t top_norm = dot(top_rho, top_rho);
  const std::int64_t top_height = dot(top, rho);

  std::map<IntVec, std::int64_t> mult;
  mult[top] = 1;
  std::set<IntVec> layer{top};
  while (!layer.empty()) {
    std::set<IntVec> next;
    for (const auto& v : layer)
      for (const auto& a : simple) next.insert(add(v, a, -1));
    std::set<IntVec> kept;
    for (const auto& mu : next) {
      std::int64_t num = 0;
      for (const auto& a : roots) {
        for (std::int64_t k = 1;; ++k) {
          auto up = add(mu, a, k);
          if (dot(up, rho) > top_height) break;
          auto it = mult.find(up);
          if (it != mult.end()) num += it->second * dot(up, a);
        }
      }
      num *= 2;
      auto mr = add(mu, rho, 1);
      std::int64_t den = top_norm - dot(mr, mr);
      if (num == 0) continue;
      require(den > 0 && num % den == 0, ErrorCode::Internal, "Freudenthal recursion is not integral");
      mult[mu] = num / den;
      kept.insert(mu);
    }
    layer = std::move(kept);
  }

  std::vector<std::pair<Weight, std::int64_t>> out;
  for (const auto& [k, m] : mult) {
    std::vector<Rational> c;
    for (auto v : k) c.emplace_back(Rational(v) / scale);
    out.emplace_back(Weight(std::move(c), highest.convention()), m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ospc
