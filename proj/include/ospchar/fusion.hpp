#pragma once

#include "ospchar/report.hpp"
#include "ospchar/rootdata.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ospc {

using Decomposition = std::vector<std::pair<Weight, std::int64_t>>;  // sorted by weight

// E_lambda (x) E_nu for sp_2n by multiplying grade-0 series characters and stripping highest weights.
Decomposition tensor_decompose(const Weight& lambda, const Weight& nu);
// Same for so_{2n+1} (B-side weights) by Racah-Speiser over Freudenthal multiplicities.
Decomposition tensor_decompose_b(const Weight& lambda, const Weight& nu);

// sp_2n fusion at integer level K >= 0 (labels with c_1 <= K).
Decomposition affine_fusion(const Weight& lambda, const Weight& nu, int level);
// Right-factor fusion on coweights c (C-side, all entries of one parity, c_1 <= q - 2n): the
// so_{2n+1} weights c/2 multiplied and folded by the affine Weyl group with translations q Z^n.
Decomposition dual_fusion(const Weight& a, const Weight& b, int q);

using Label = std::vector<Weight>;  // one weight per tensor factor

// Principal nondegenerate coset level ell = -(n+1) + p/q: labels (lambda, lambda') with lambda in
// P_C(p,1) and lambda' in PCHECK(q,2p).
std::vector<std::pair<Label, std::int64_t>> w_fusion(const Label& a, const Label& b, int p, int q);
// osp(1|2n) at k = -(n+1) + u/v through the right factor of the coset level; labels are B-side
// weights in the coset alphabet.
Decomposition osp_fusion(const Weight& mu, const Weight& nu, int u, int v);

// Coset denominators (p, q) of ell for k = -(n+1) + u/v, validated principal and nondegenerate.
std::pair<int, int> coset_level(int n, int u, int v);

enum class GradingRule { RootClass, CoweightParity, SpinorClass };

struct FusionTable {
  std::string kind;  // "affine-fusion", "w-fusion", "osp-fusion"
  int n = 0;
  nlohmann::json params = nlohmann::json::object();
  std::vector<GradingRule> grading;  // one per label part
  std::vector<Label> alphabet;       // sorted
  // products[a * size + b] = sorted (c, N_ab^c) with N != 0
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> products;
  std::int64_t dropped = 0;  // summands that left the alphabet

  std::size_t size() const { return alphabet.size(); }
  std::size_t index_of(const Label& l) const;  // throws when absent
  std::int64_t coefficient(std::size_t a, std::size_t b, std::size_t c) const;
};

struct BuildOptions {
  unsigned workers = 1;
  std::optional<std::filesystem::path> cache_dir;
};

FusionTable affine_fusion_table(int n, int level, const BuildOptions& opts = {});
FusionTable w_fusion_table(int n, int p, int q, const BuildOptions& opts = {});
FusionTable osp_fusion_table(int n, int u, int v, const BuildOptions& opts = {});

// Unit, commutativity, associativity, nonnegativity, closure, self-duality and the lattice grading.
Report verify_fusion_axioms(const FusionTable& t, unsigned workers = 1);

// Labels (lambda, 0) of a W-fusion table with their structure constants.
FusionTable left_subring(const FusionTable& t);
// The left subrings at (p, q1) and (p, q2) agree label for label.
Report verify_left_subring_match(int n, int p, int q1, int q2, const BuildOptions& opts = {});

// Cache files carry a format version and a content hash; stale or corrupt files are ignored.
inline constexpr int kFusionCacheVersion = 1;
nlohmann::json fusion_table_payload(const FusionTable& t);
FusionTable fusion_table_from_payload(const nlohmann::json& j);
std::optional<FusionTable> load_cached_table(const std::filesystem::path& dir, const std::string& key);
void store_cached_table(const std::filesystem::path& dir, const std::string& key, const FusionTable& t);

}  // namespace ospc
