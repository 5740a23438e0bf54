#pragma once

#include "ospchar/exact.hpp"
#include "ospchar/qseries.hpp"
#include "ospchar/report.hpp"
#include "ospchar/rootdata.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace ospc {

enum class Algebra { SP, OSP };

// Truncated character sum c * e^weight * q^(q_offset + grade) in C-side integer coordinates.
//
// Two cutoffs are kept: grade <= trunc, and principal depth <= depth_cap where
//   depth(weight, grade) = 4n * grade - twice_height(weight).
// Every factor of the inverse denominators has strictly positive depth, so a series is exact on
// the region below both cutoffs and products/divisions preserve that.
class FormalCharacter {
 public:
  static constexpr int kMaxRank = 6;
  static constexpr std::int64_t kCoordLimit = 30000;

  struct Term {
    IntVec weight;
    int grade = 0;
    BigInt coeff;
  };

  struct Mismatch {
    IntVec weight;
    int grade = 0;
    BigInt left;
    BigInt right;
  };

  FormalCharacter(int rank, int trunc, std::optional<std::int64_t> depth_cap = std::nullopt);
  static FormalCharacter monomial(std::span<const std::int64_t> weight, int grade, int trunc,
                                  const BigInt& coeff = 1);

  int rank() const { return rank_; }
  int trunc() const { return trunc_; }
  std::optional<std::int64_t> depth_cap() const { return cap_; }
  const Rational& q_offset() const { return offset_; }
  void set_q_offset(Rational r) { offset_ = std::move(r); }

  std::int64_t depth(std::span<const std::int64_t> weight, int grade) const;
  BigInt coefficient(std::span<const std::int64_t> weight, int grade) const;
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  std::vector<Term> terms() const;  // sorted by grade, then weight
  std::optional<std::int64_t> min_depth() const;
  std::optional<std::int64_t> max_depth() const;

  FormalCharacter grade_slice(int grade) const;
  FormalCharacter restricted(int trunc, std::optional<std::int64_t> cap) const;

  void add_term(std::span<const std::int64_t> weight, int grade, const BigInt& coeff);
  FormalCharacter& operator+=(const FormalCharacter& o);
  FormalCharacter& operator-=(const FormalCharacter& o);
  FormalCharacter scaled(const BigInt& s) const;

  // Multiply by coeff * e^weight * q^grade; the depth cap moves with the shift.
  FormalCharacter shifted(std::span<const std::int64_t> weight, int grade) const;
  friend FormalCharacter operator*(const FormalCharacter& a, const FormalCharacter& b);

  // Multiply by (1 + sign * e^beta q^j); beta q^j must have positive depth.
  void multiply_binomial(std::span<const std::int64_t> beta, int j, int sign);
  // Multiply by 1 / (1 - e^beta q^j); beta q^j must have positive depth and a cap must be set.
  void divide_geometric(std::span<const std::int64_t> beta, int j);

  // First disagreement inside grade <= trunc and depth <= cap (both also clipped to each side's own).
  static std::optional<Mismatch> compare(const FormalCharacter& a, const FormalCharacter& b, int trunc,
                                         std::optional<std::int64_t> cap);

 private:
  using Key = unsigned __int128;
  struct KeyHash {
    std::size_t operator()(Key k) const noexcept;
  };

  Key encode(std::span<const std::int64_t> weight, int grade) const;
  Key delta(std::span<const std::int64_t> weight, int grade) const;
  void decode(Key k, IntVec& weight, int& grade) const;
  std::int64_t key_depth(Key k) const;
  bool inside(std::int64_t depth, int grade) const;
  void grow_bound(std::int64_t by);
  void accumulate(Key k, const BigInt& c);
  void prune_zeros();

  int rank_;
  int trunc_;
  std::optional<std::int64_t> cap_;
  Rational offset_ = 0;
  std::int64_t coord_bound_ = 0;
  std::unordered_map<Key, BigInt, KeyHash> terms_;
};

// Default relative depth window above the leading term.
std::int64_t default_depth_window(int n, int trunc);

FormalCharacter denominator_inverse(Algebra type, int n, int trunc, std::optional<std::int64_t> window = {});
// In place: divide by the even denominator and, for OSP, multiply by the odd factors.
void apply_denominator_inverse(FormalCharacter& series, Algebra type);
// In place: multiply by the (polynomial, truncated) sp denominator.
void apply_sp_denominator(FormalCharacter& series);

FormalCharacter theta_sum(int n, int trunc);

// sum_w det(w) e^{w(mu + rho) - rho}, rho the Weyl vector of the given algebra.
FormalCharacter weyl_numerator(Algebra type, std::span<const std::int64_t> mu, int trunc);

FormalCharacter verma_character(Algebra type, std::span<const std::int64_t> lambda, int trunc,
                                std::optional<std::int64_t> window = {});
FormalCharacter weyl_module_character(Algebra type, std::span<const std::int64_t> mu, int trunc,
                                      std::optional<std::int64_t> window = {});

// Principal specialization e^nu q^d -> q^{d - (nu + shift | rho_check)}, times q^prefactor and
// prod_j (1 - q^j)^{-n}. The input must be a polynomial (no depth cap). The result is exact up to
// `trunc` grades above its leading exponent.
QSeries ds_specialize(const FormalCharacter& rch, const Rational& prefactor, int trunc,
                      const std::vector<Rational>& shift = {});

Report verify_triple_product(int n, int trunc);

}  // namespace ospc
