#pragma once

#include "ospchar/charseries.hpp"
#include "ospchar/qseries.hpp"
#include "ospchar/report.hpp"
#include "ospchar/rootdata.hpp"

#include <cstdint>
#include <optional>
#include <span>

namespace ospc {

// Level data for the osp(1|2n) level k and the coset level ell, with kappa = k + n + 1 and
// ell + (n+1) = kappa / (2 kappa - 1).
struct LevelParam {
  int n = 0;
  Rational k;
  Rational kappa;
  Rational h_sp;
  Rational h_osp;
  Rational ell;
  bool bad = false;  // kappa in {0, 1/2}: a conformal weight is undefined
};

LevelParam level_param(int n, const Rational& k);

// (mu | mu + 2 rho) / (2 (k + h_vee)) with rho and h_vee of the given algebra.
Rational conformal_weight(Algebra type, const Weight& mu, const Rational& k);

// (nu | nu + 2 rho_odd) = sum nu_i (nu_i + 1) / 2.
std::int64_t b_exponent(std::span<const std::int64_t> nu);

// q^{b_exponent(lambda - mu)} / prod_j (1 - q^j)^n, exact for exponents <= trunc.
QSeries b_coefficient(std::span<const std::int64_t> lambda, std::span<const std::int64_t> mu, int trunc);

// sum_w det(w) b_coefficient(w.lambda, mu); lambda may be any integral weight.
QSeries branching_function(std::span<const std::int64_t> lambda, std::span<const std::int64_t> mu, int trunc);

// m_osp(mu) - m_sp(lambda) + b_exponent(w.lambda - mu) at level k.
Rational delta_exponent(std::span<const std::int64_t> lambda, std::span<const std::int64_t> mu,
                        const WeylElement& w, const Rational& k);
// Same quantity from the coset level: m_ell(x) - (x | rho_check), x = w.lambda - 2 (ell + n + 1) mu.
Rational delta_exponent_coset(std::span<const std::int64_t> lambda, std::span<const std::int64_t> mu,
                              const WeylElement& w, const Rational& k);

// Character of the W-algebra module labelled (lambda, mu), exact for `trunc` grades above its
// leading exponent. The conformal route goes through ds_specialize at level ell; the delta route
// sums q^{delta_exponent}. w_module_character computes both and throws IdentityFailure on disagreement.
QSeries w_module_character_conformal(std::span<const std::int64_t> lambda, std::span<const std::int64_t> mu,
                                     const Rational& k, int trunc);
QSeries w_module_character_delta(std::span<const std::int64_t> lambda, std::span<const std::int64_t> mu,
                                 const Rational& k, int trunc);
QSeries w_module_character(std::span<const std::int64_t> lambda, std::span<const std::int64_t> mu,
                           const Rational& k, int trunc);

Report verify_branching_identity(int n, std::span<const std::int64_t> mu, int trunc,
                                 std::optional<std::int64_t> window = {}, unsigned workers = 1);
Report verify_singular_vanishing(int n, int box, int mu_box, int trunc, unsigned workers = 1);
Report verify_delta_lemma(int n, int cases, std::uint64_t seed);
Report verify_main_theorem(int n, int cases, std::uint64_t seed, int trunc, unsigned workers = 1);

}  // namespace ospc
