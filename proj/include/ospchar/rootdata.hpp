#pragma once

#include "ospchar/exact.hpp"

#include <compare>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace ospc {

// C-side coordinates: basis e_i with (e_i|e_j) = delta_ij / 2 (used for sp_2n and osp(1|2n)).
// B-side coordinates: orthonormal basis eps_i of so_{2n+1}.
enum class Convention { CSide, BSide };

enum class RootType { B, C, OSP };

using IntVec = std::vector<std::int64_t>;

class Weight {
 public:
  Weight() = default;
  Weight(std::vector<Rational> coords, Convention conv);

  static Weight zero(int n, Convention conv = Convention::CSide);
  static Weight from_ints(std::span<const std::int64_t> c, Convention conv = Convention::CSide);

  int rank() const { return static_cast<int>(coords_.size()); }
  Convention convention() const { return conv_; }
  const std::vector<Rational>& coords() const { return coords_; }
  const Rational& operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }

  bool is_integral() const;
  bool is_half_integral() const;  // every coordinate in Z + 1/2
  IntVec to_ints() const;         // throws unless integral
  bool is_dominant() const;       // c_1 >= ... >= c_n >= 0

  // Same coordinates under the other convention; the caller owns the meaning of the flip.
  Weight retagged(Convention conv) const { return Weight(coords_, conv); }
  Weight scaled(const Rational& s) const;

  Weight operator+(const Weight& o) const;
  Weight operator-(const Weight& o) const;
  Weight operator-() const;

  bool operator==(const Weight& o) const = default;
  std::strong_ordering operator<=>(const Weight& o) const;

 private:
  std::vector<Rational> coords_;
  Convention conv_ = Convention::CSide;
};

// Invariant form in the weight's own convention. Both weights must share it.
Rational bilinear(const Weight& a, const Weight& b);

// Sum of c_i (2(n-i)+1) over 1-based i; equals 2 (c|rho_check) in C-side coordinates.
std::int64_t twice_height(std::span<const std::int64_t> c);
Rational twice_height(const Weight& c);

std::vector<Weight> simple_roots(RootType type, int n);
// Even positive roots for C and OSP, all positive roots for B.
std::vector<Weight> positive_roots(RootType type, int n);
std::vector<Weight> positive_odd_roots(int n);  // e_i, C-side

struct RhoVectors {
  Weight rho_sp;     // (n, n-1, ..., 1)
  Weight rho_odd;    // (1/2, ..., 1/2)
  Weight rho_osp;    // rho_sp - rho_odd
  Weight rho_check;  // (2n-1, ..., 1)
  Weight rho_b;      // B-side (n-1/2, ..., 1/2)
};
RhoVectors rho_vectors(int n);

Rational dual_coxeter(RootType type, int n);
int coxeter_number(int n);  // 2n for both B_n and C_n

// Signed permutation: w(e_i) = signs[i] * e_{perm[i]}.
class WeylElement {
 public:
  WeylElement() = default;
  static WeylElement identity(int n);
  static WeylElement make(std::vector<int> perm, std::vector<int> signs);
  static WeylElement simple_reflection(int n, int i);  // i < n-1: swap i,i+1; i == n-1: negate last

  int rank() const { return static_cast<int>(perm_.size()); }
  const std::vector<int>& perm() const { return perm_; }
  const std::vector<int>& signs() const { return signs_; }
  int length() const { return length_; }
  int det() const { return det_; }

  Weight act(const Weight& x) const;
  IntVec act(std::span<const std::int64_t> x) const;
  WeylElement compose(const WeylElement& right) const;  // (this * right)(x) = this(right(x))
  WeylElement inverse() const;

  bool operator==(const WeylElement& o) const { return perm_ == o.perm_ && signs_ == o.signs_; }
  auto operator<=>(const WeylElement& o) const {
    if (auto c = perm_ <=> o.perm_; c != 0) return c;
    return signs_ <=> o.signs_;
  }

 private:
  std::vector<int> perm_;
  std::vector<int> signs_;
  int length_ = 0;
  int det_ = 1;
};

inline constexpr int kDefaultWeylRankCap = 8;

// Lazy enumeration of the 2^n n! elements in a fixed deterministic order.
class WeylRange {
 public:
  class iterator {
   public:
    using value_type = WeylElement;
    using difference_type = std::ptrdiff_t;
    iterator() = default;
    const WeylElement& operator*() const { return current_; }
    const WeylElement* operator->() const { return &current_; }
    iterator& operator++();
    iterator operator++(int) {
      auto t = *this;
      ++*this;
      return t;
    }
    bool operator==(const iterator& o) const { return done_ == o.done_ && (done_ || current_ == o.current_); }

   private:
    friend class WeylRange;
    explicit iterator(int n);
    std::vector<int> perm_;
    std::uint64_t sign_mask_ = 0;
    int n_ = 0;
    bool done_ = true;
    WeylElement current_;
    void refresh();
  };

  explicit WeylRange(int n) : n_(n) {}
  iterator begin() const { return iterator(n_); }
  iterator end() const { return iterator(); }

 private:
  int n_;
};

WeylRange weyl_elements(int n, int cap = kDefaultWeylRankCap);
// Materialized and cached; n <= 6.
const std::vector<WeylElement>& weyl_group(int n);

// w(lambda + rho) - rho.
Weight dot_act(const WeylElement& w, const Weight& lambda, const Weight& rho);
IntVec dot_act(const WeylElement& w, std::span<const std::int64_t> lambda, std::span<const std::int64_t> rho);

enum class Regularity { Regular, Singular };
// Regular iff no root of type C is orthogonal: all |c_i| nonzero and pairwise distinct.
Regularity classify(const Weight& x);

// (w, x_plus) with x_plus dominant, x = w(x_plus) and w of minimal length.
std::pair<WeylElement, Weight> dominant_rep(const Weight& x);

// Finite-dimensional character via Freudenthal's formula, sorted by weight.
// type B takes B-side weights; type C takes C-side weights.
std::vector<std::pair<Weight, std::int64_t>> freudenthal_character(RootType type, const Weight& highest);

}  // namespace ospc
