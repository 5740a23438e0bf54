#include "ospchar/qseries.hpp"

#include "ospchar/error.hpp"

#include <map>
#include <mutex>

namespace ospc {

Rational QSeries::offset() const { return terms_.empty() ? Rational(0) : terms_.begin()->first; }

BigInt QSeries::coefficient(const Rational& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? BigInt(0) : it->second;
}

void QSeries::add(const Rational& e, const BigInt& c) {
  if (c == 0 || e > horizon_) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

QSeries& QSeries::operator+=(const QSeries& o) {
  if (o.horizon_ < horizon_) *this = restricted(o.horizon_);
  for (const auto& [e, c] : o.terms_) add(e, c);
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& o) {
  if (o.horizon_ < horizon_) *this = restricted(o.horizon_);
  for (const auto& [e, c] : o.terms_) add(e, -c);
  return *this;
}

QSeries QSeries::shifted(const Rational& by) const {
  QSeries out(horizon_ + by);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e + by, c);
  return out;
}

QSeries QSeries::restricted(const Rational& h) const {
  QSeries out(h < horizon_ ? h : horizon_);
  for (const auto& [e, c] : terms_)
    if (e <= out.horizon_) out.terms_.emplace(e, c);
  return out;
}

QSeries QSeries::times_partitions(int colors) const {
  QSeries out(horizon_);
  if (terms_.empty()) return out;
  const auto span = floor_of(horizon_ - terms_.begin()->first);
  const int max_grade = static_cast<int>(to_int64(span));
  if (max_grade < 0) return out;
  const auto p = partition_counts(colors, max_grade);
  for (const auto& [e, c] : terms_)
    for (int m = 0; m <= max_grade; ++m) {
      Rational target = e + m;
      if (target > horizon_) break;
      out.add(target, c * p[static_cast<std::size_t>(m)]);
    }
  return out;
}

std::optional<QSeries::Mismatch> QSeries::compare(const QSeries& a, const QSeries& b) {
  const Rational h = a.horizon_ < b.horizon_ ? a.horizon_ : b.horizon_;
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  while (true) {
    while (ia != a.terms_.end() && ia->first > h) ia = a.terms_.end();
    while (ib != b.terms_.end() && ib->first > h) ib = b.terms_.end();
    if (ia == a.terms_.end() && ib == b.terms_.end()) return std::nullopt;
    if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->first < ib->first))
      return Mismatch{ia->first, ia->second, 0};
    if (ia == a.terms_.end() || ib->first < ia->first) return Mismatch{ib->first, 0, ib->second};
    if (ia->second != ib->second) return Mismatch{ia->first, ia->second, ib->second};
    ++ia;
    ++ib;
  }
}

std::vector<BigInt> partition_counts(int colors, int max_grade) {
  require(colors >= 0, ErrorCode::InvalidArgument, "negative color count");
  require(max_grade >= 0, ErrorCode::InvalidArgument, "negative grade");
  static std::mutex mu;
  static std::map<int, std::vector<BigInt>> cache;
  std::lock_guard lock(mu);
  auto& v = cache[colors];
  if (static_cast<int>(v.size()) > max_grade) return v;
  const int m = std::max(max_grade, 2 * static_cast<int>(v.size()));
  std::vector<BigInt> p(static_cast<std::size_t>(m) + 1, BigInt(0));
  p[0] = 1;
  for (int c = 0; c < colors; ++c)
    for (int j = 1; j <= m; ++j)
      for (int e = j; e <= m; ++e) p[static_cast<std::size_t>(e)] += p[static_cast<std::size_t>(e - j)];
  v = std::move(p);
  return v;
}

}  // namespace ospc
