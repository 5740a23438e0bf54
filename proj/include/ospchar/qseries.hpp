#pragma once

#include "ospchar/exact.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace ospc {

// Univariate series sum_e c_e q^e with rational exponents, known exactly for e <= horizon.
class QSeries {
 public:
  explicit QSeries(Rational horizon = 0) : horizon_(std::move(horizon)) {}

  const Rational& horizon() const { return horizon_; }
  // Lowest exponent with nonzero coefficient; 0 for the empty series.
  Rational offset() const;
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  BigInt coefficient(const Rational& exponent) const;
  const std::map<Rational, BigInt>& terms() const { return terms_; }

  // Terms above the horizon are dropped.
  void add(const Rational& exponent, const BigInt& coeff);
  QSeries& operator+=(const QSeries& o);
  QSeries& operator-=(const QSeries& o);
  QSeries shifted(const Rational& by) const;  // multiply by q^by
  QSeries restricted(const Rational& horizon) const;

  // Multiply by prod_{j>=1} (1 - q^j)^{-colors}.
  QSeries times_partitions(int colors) const;

  struct Mismatch {
    Rational exponent;
    BigInt left;
    BigInt right;
  };
  // Compares within the smaller horizon.
  static std::optional<Mismatch> compare(const QSeries& a, const QSeries& b);

 private:
  std::map<Rational, BigInt> terms_;
  Rational horizon_;
};

// Coefficients of prod_{j>=1} (1 - q^j)^{-colors} up to q^max_grade.
std::vector<BigInt> partition_counts(int colors, int max_grade);

}  // namespace ospc
