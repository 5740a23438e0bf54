#include "ospchar/ospchar.h"

#include "ospchar/admissible.hpp"
#include "ospchar/branching.hpp"
#include "ospchar/charseries.hpp"
#include "ospchar/error.hpp"
#include "ospchar/fusion.hpp"
#include "ospchar/serialize.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <span>
#include <string>
#include <variant>

struct ospc_context {
  std::string last_error;
  unsigned workers = 1;
  std::optional<std::string> cache_dir;
  std::optional<std::int64_t> depth_window;
  int max_rank = 6;
  int max_trunc = 24;
};

struct ospc_series {
  ospc::FormalCharacter value;
};

struct ospc_qseries {
  ospc::QSeries value;
};

struct ospc_table {
  struct Weights {
    ospc::WeightSet set;
    int p, q, n;
    std::vector<ospc::Weight> weights;
  };
  std::variant<Weights, ospc::DecompositionTable, ospc::FusionTable> value;
};

namespace {

ospc_status code_of(ospc::ErrorCode c) {
  switch (c) {
    case ospc::ErrorCode::InvalidArgument:
      return OSPC_ERR_INVALID_ARGUMENT;
    case ospc::ErrorCode::Domain:
      return OSPC_ERR_DOMAIN;
    case ospc::ErrorCode::Limit:
      return OSPC_ERR_LIMIT;
    case ospc::ErrorCode::IdentityFailure:
      return OSPC_ERR_IDENTITY;
    case ospc::ErrorCode::Io:
      return OSPC_ERR_IO;
    case ospc::ErrorCode::Internal:
      return OSPC_ERR_INTERNAL;
  }
  return OSPC_ERR_INTERNAL;
}

template <class Fn>
ospc_status guarded(ospc_context* ctx, Fn&& fn) {
  if (!ctx) return OSPC_ERR_INVALID_ARGUMENT;
  ctx->last_error.clear();
  try {
    return fn();
  } catch (const ospc::Error& e) {
    ctx->last_error = e.what();
    return code_of(e.code());
  } catch (const std::bad_alloc&) {
    ctx->last_error = "out of memory";
    return OSPC_ERR_LIMIT;
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
    return OSPC_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void check_out(const void* out) { ospc::require(out != nullptr, ospc::ErrorCode::InvalidArgument, "null output pointer"); }

void check_rank(const ospc_context* ctx, int rank) {
  ospc::require(rank >= 1, ospc::ErrorCode::InvalidArgument, "rank must be at least 1");
  ospc::require(rank <= ctx->max_rank, ospc::ErrorCode::Limit,
                "rank " + std::to_string(rank) + " exceeds cap " + std::to_string(ctx->max_rank));
}

void check_trunc(const ospc_context* ctx, int trunc) {
  ospc::require(trunc >= 0, ospc::ErrorCode::InvalidArgument, "truncation must be nonnegative");
  ospc::require(trunc <= ctx->max_trunc, ospc::ErrorCode::Limit,
                "truncation " + std::to_string(trunc) + " exceeds cap " + std::to_string(ctx->max_trunc));
}

std::span<const std::int64_t> weight_span(const int64_t* w, int rank) {
  ospc::require(w != nullptr, ospc::ErrorCode::InvalidArgument, "null weight");
  return {w, static_cast<std::size_t>(rank)};
}

ospc::Algebra algebra(ospc_algebra a) {
  ospc::require(a == OSPC_SP || a == OSPC_OSP, ospc::ErrorCode::InvalidArgument, "unknown algebra");
  return a == OSPC_SP ? ospc::Algebra::SP : ospc::Algebra::OSP;
}

ospc_status emit_report(const ospc::Report& r, ospc_format format, char** out) {
  check_out(out);
  std::string text = format == OSPC_FORMAT_TEXT ? ospc::to_text(r) : ospc::to_json(r).dump(2) + "\n";
  ospc::require(format != OSPC_FORMAT_CSV, ospc::ErrorCode::InvalidArgument, "reports have no CSV form");
  *out = dup_string(text);
  return r.passed ? OSPC_OK : OSPC_ERR_IDENTITY;
}

ospc::BuildOptions build_options(const ospc_context* ctx) {
  ospc::BuildOptions o;
  o.workers = ctx->workers;
  if (ctx->cache_dir) o.cache_dir = *ctx->cache_dir;
  return o;
}

}  // namespace

extern "C" {

void ospc_string_free(char* s) { std::free(s); }

const char* ospc_status_name(ospc_status status) {
  switch (status) {
    case OSPC_OK:
      return "ok";
    case OSPC_ERR_INVALID_ARGUMENT:
      return "invalid-argument";
    case OSPC_ERR_DOMAIN:
      return "domain-error";
    case OSPC_ERR_LIMIT:
      return "limit-exceeded";
    case OSPC_ERR_IDENTITY:
      return "identity-failed";
    case OSPC_ERR_IO:
      return "io-error";
    case OSPC_ERR_INTERNAL:
      return "internal-error";
  }
  return "unknown";
}

const char* ospc_version(void) { return "1.0.0"; }

ospc_status ospc_context_create(ospc_context** out) {
  if (!out) return OSPC_ERR_INVALID_ARGUMENT;
  *out = new (std::nothrow) ospc_context();
  return *out ? OSPC_OK : OSPC_ERR_LIMIT;
}

void ospc_context_destroy(ospc_context* ctx) { delete ctx; }

const char* ospc_last_error(const ospc_context* ctx) { return ctx ? ctx->last_error.c_str() : "null context"; }

ospc_status ospc_context_set_workers(ospc_context* ctx, unsigned workers) {
  return guarded(ctx, [&] {
    ospc::require(workers >= 1 && workers <= 256, ospc::ErrorCode::InvalidArgument, "workers must be in 1..256");
    ctx->workers = workers;
    return OSPC_OK;
  });
}

ospc_status ospc_context_set_cache_dir(ospc_context* ctx, const char* dir) {
  return guarded(ctx, [&] {
    if (dir && *dir)
      ctx->cache_dir = dir;
    else
      ctx->cache_dir.reset();
    return OSPC_OK;
  });
}

ospc_status ospc_context_set_depth_window(ospc_context* ctx, int64_t window) {
  return guarded(ctx, [&] {
    ospc::require(window >= 0, ospc::ErrorCode::InvalidArgument, "depth window must be nonnegative");
    if (window == 0)
      ctx->depth_window.reset();
    else
      ctx->depth_window = window;
    return OSPC_OK;
  });
}

ospc_status ospc_context_set_limits(ospc_context* ctx, int max_rank, int max_trunc) {
  return guarded(ctx, [&] {
    ospc::require(max_rank >= 1 && max_rank <= ospc::FormalCharacter::kMaxRank, ospc::ErrorCode::InvalidArgument,
                  "rank cap must be in 1..6");
    ospc::require(max_trunc >= 0, ospc::ErrorCode::InvalidArgument, "truncation cap must be nonnegative");
    ctx->max_rank = max_rank;
    ctx->max_trunc = max_trunc;
    return OSPC_OK;
  });
}

ospc_status ospc_char_denominator(ospc_context* ctx, ospc_algebra type, int rank, int trunc, ospc_series** out) {
  return guarded(ctx, [&] {
    check_out(out);
    check_rank(ctx, rank);
    check_trunc(ctx, trunc);
    *out = new ospc_series{ospc::denominator_inverse(algebra(type), rank, trunc, ctx->depth_window)};
    return OSPC_OK;
  });
}

ospc_status ospc_char_theta(ospc_context* ctx, int rank, int trunc, ospc_series** out) {
  return guarded(ctx, [&] {
    check_out(out);
    check_rank(ctx, rank);
    check_trunc(ctx, trunc);
    *out = new ospc_series{ospc::theta_sum(rank, trunc)};
    return OSPC_OK;
  });
}

ospc_status ospc_char_verma(ospc_context* ctx, ospc_algebra type, const int64_t* weight, int rank, int trunc,
                            ospc_series** out) {
  return guarded(ctx, [&] {
    check_out(out);
    check_rank(ctx, rank);
    check_trunc(ctx, trunc);
    *out = new ospc_series{ospc::verma_character(algebra(type), weight_span(weight, rank), trunc, ctx->depth_window)};
    return OSPC_OK;
  });
}

ospc_status ospc_char_weyl(ospc_context* ctx, ospc_algebra type, const int64_t* weight, int rank, int trunc,
                           ospc_series** out) {
  return guarded(ctx, [&] {
    check_out(out);
    check_rank(ctx, rank);
    check_trunc(ctx, trunc);
    *out = new ospc_series{
        ospc::weyl_module_character(algebra(type), weight_span(weight, rank), trunc, ctx->depth_window)};
    return OSPC_OK;
  });
}

ospc_status ospc_char_wmodule(ospc_context* ctx, const int64_t* lambda, const int64_t* mu, int rank, int64_t k_num,
                              int64_t k_den, int trunc, ospc_qseries** out) {
  return guarded(ctx, [&] {
    check_out(out);
    check_rank(ctx, rank);
    check_trunc(ctx, trunc);
    ospc::require(k_den != 0, ospc::ErrorCode::InvalidArgument, "zero denominator in level");
    auto l = weight_span(lambda, rank);
    auto m = weight_span(mu, rank);
    ospc::require(ospc::Weight::from_ints(l).is_dominant() && ospc::Weight::from_ints(m).is_dominant(),
                  ospc::ErrorCode::InvalidArgument, "lambda and mu must be dominant");
    *out = new ospc_qseries{ospc::w_module_character(l, m, ospc::make_rational(k_num, k_den), trunc)};
    return OSPC_OK;
  });
}

ospc_status ospc_char_branching(ospc_context* ctx, const int64_t* lambda, const int64_t* mu, int rank, int trunc,
                                ospc_qseries** out) {
  return guarded(ctx, [&] {
    check_out(out);
    check_rank(ctx, rank);
    check_trunc(ctx, trunc);
    *out = new ospc_qseries{ospc::branching_function(weight_span(lambda, rank), weight_span(mu, rank), trunc)};
    return OSPC_OK;
  });
}

ospc_status ospc_series_term_count(const ospc_series* s, size_t* out) {
  if (!s || !out) return OSPC_ERR_INVALID_ARGUMENT;
  *out = s->value.size();
  return OSPC_OK;
}

ospc_status ospc_series_coefficient(const ospc_series* s, const int64_t* weight, int grade, char** out) {
  if (!s || !weight || !out) return OSPC_ERR_INVALID_ARGUMENT;
  try {
    auto c = s->value.coefficient(std::span<const std::int64_t>(weight, static_cast<std::size_t>(s->value.rank())), grade);
    *out = dup_string(c.str());
    return OSPC_OK;
  } catch (const ospc::Error& e) {
    return code_of(e.code());
  } catch (...) {
    return OSPC_ERR_INTERNAL;
  }
}

ospc_status ospc_series_render(const ospc_series* s, ospc_format format, char** out) {
  if (!s || !out) return OSPC_ERR_INVALID_ARGUMENT;
  if (format == OSPC_FORMAT_CSV) return OSPC_ERR_INVALID_ARGUMENT;
  try {
    *out = dup_string(format == OSPC_FORMAT_TEXT ? ospc::to_text(s->value) : ospc::to_json(s->value).dump() + "\n");
    return OSPC_OK;
  } catch (...) {
    return OSPC_ERR_INTERNAL;
  }
}

void ospc_series_destroy(ospc_series* s) { delete s; }

ospc_status ospc_qseries_render(const ospc_qseries* s, ospc_format format, char** out) {
  if (!s || !out) return OSPC_ERR_INVALID_ARGUMENT;
  if (format == OSPC_FORMAT_CSV) return OSPC_ERR_INVALID_ARGUMENT;
  try {
    *out = dup_string(format == OSPC_FORMAT_TEXT ? ospc::to_text(s->value) : ospc::to_json(s->value).dump() + "\n");
    return OSPC_OK;
  } catch (...) {
    return OSPC_ERR_INTERNAL;
  }
}

void ospc_qseries_destroy(ospc_qseries* s) { delete s; }

ospc_status ospc_verify_triple_product(ospc_context* ctx, int rank, int trunc, ospc_format format, char** report) {
  return guarded(ctx, [&] {
    check_rank(ctx, rank);
    check_trunc(ctx, trunc);
    return emit_report(ospc::verify_triple_product(rank, trunc), format, report);
  });
}

ospc_status ospc_verify_branching(ospc_context* ctx, int rank, const int64_t* mu, int trunc, ospc_format format,
                                  char** report) {
  return guarded(ctx, [&] {
    check_rank(ctx, rank);
    check_trunc(ctx, trunc);
    return emit_report(
        ospc::verify_branching_identity(rank, weight_span(mu, rank), trunc, ctx->depth_window, ctx->workers), format,
        report);
  });
}

ospc_status ospc_verify_singular_vanishing(ospc_context* ctx, int rank, int box, int mu_box, int trunc,
                                           ospc_format format, char** report) {
  return guarded(ctx, [&] {
    check_rank(ctx, rank);
    check_trunc(ctx, trunc);
    return emit_report(ospc::verify_singular_vanishing(rank, box, mu_box, trunc, ctx->workers), format, report);
  });
}

ospc_status ospc_verify_delta_lemma(ospc_context* ctx, int rank, int cases, uint64_t seed, ospc_format format,
                                    char** report) {
  return guarded(ctx, [&] {
    check_rank(ctx, rank);
    return emit_report(ospc::verify_delta_lemma(rank, cases, seed), format, report);
  });
}

ospc_status ospc_verify_main_theorem(ospc_context* ctx, int rank, int cases, uint64_t seed, int trunc,
                                     ospc_format format, char** report) {
  return guarded(ctx, [&] {
    check_rank(ctx, rank);
    check_trunc(ctx, trunc);
    return emit_report(ospc::verify_main_theorem(rank, cases, seed, trunc, ctx->workers), format, report);
  });
}

ospc_status ospc_verify_bijections(ospc_context* ctx, int rank, int p, ospc_format format, char** report) {
  return guarded(ctx, [&] {
    check_rank(ctx, rank);
    return emit_report(p <= 0 ? ospc::verify_bijections_sweep(rank) : ospc::verify_bijections(rank, p), format,
                       report);
  });
}

ospc_status ospc_verify_fusion_axioms(ospc_context* ctx, const ospc_table* table, ospc_format format, char** report) {
  return guarded(ctx, [&] {
    ospc::require(table != nullptr, ospc::ErrorCode::InvalidArgument, "null table");
    const auto* t = std::get_if<ospc::FusionTable>(&table->value);
    ospc::require(t != nullptr, ospc::ErrorCode::InvalidArgument, "table is not a fusion table");
    return emit_report(ospc::verify_fusion_axioms(*t, ctx->workers), format, report);
  });
}

ospc_status ospc_table_admissible(ospc_context* ctx, ospc_weight_set set, int p, int q, int rank, ospc_table** out) {
  return guarded(ctx, [&] {
    check_out(out);
    check_rank(ctx, rank);
    ospc::WeightSet s;
    switch (set) {
      case OSPC_SET_PC:
        s = ospc::WeightSet::PC;
        break;
      case OSPC_SET_PB:
        s = ospc::WeightSet::PB;
        break;
      case OSPC_SET_PBQ:
        s = ospc::WeightSet::PBQ;
        break;
      case OSPC_SET_PCHECK:
        s = ospc::WeightSet::PCheck;
        break;
      default:
        ospc::fail(ospc::ErrorCode::InvalidArgument, "unknown weight set");
    }
    *out = new ospc_table{ospc_table::Weights{s, p, q, rank, ospc::enumerate_weights(s, p, q, rank)}};
    return OSPC_OK;
  });
}

ospc_status ospc_table_decompose(ospc_context* ctx, int rank, int u, int v, ospc_table** out) {
  return guarded(ctx, [&] {
    check_out(out);
    check_rank(ctx, rank);
    *out = new ospc_table{ospc::decomposition_table(rank, u, v)};
    return OSPC_OK;
  });
}

ospc_status ospc_table_affine_fusion(ospc_context* ctx, int rank, int level, ospc_table** out) {
  return guarded(ctx, [&] {
    check_out(out);
    check_rank(ctx, rank);
    *out = new ospc_table{ospc::affine_fusion_table(rank, level, build_options(ctx))};
    return OSPC_OK;
  });
}

ospc_status ospc_table_w_fusion(ospc_context* ctx, int rank, int p, int q, ospc_table** out) {
  return guarded(ctx, [&] {
    check_out(out);
    check_rank(ctx, rank);
    *out = new ospc_table{ospc::w_fusion_table(rank, p, q, build_options(ctx))};
    return OSPC_OK;
  });
}

ospc_status ospc_table_osp_fusion(ospc_context* ctx, int rank, int u, int v, ospc_table** out) {
  return guarded(ctx, [&] {
    check_out(out);
    check_rank(ctx, rank);
    *out = new ospc_table{ospc::osp_fusion_table(rank, u, v, build_options(ctx))};
    return OSPC_OK;
  });
}

ospc_status ospc_table_size(const ospc_table* t, size_t* out) {
  if (!t || !out) return OSPC_ERR_INVALID_ARGUMENT;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ospc_table::Weights>)
          *out = v.weights.size();
        else if constexpr (std::is_same_v<T, ospc::DecompositionTable>)
          *out = v.rows.size();
        else
          *out = v.size();
      },
      t->value);
  return OSPC_OK;
}

ospc_status ospc_table_render(const ospc_table* t, ospc_format format, char** out) {
  if (!t || !out) return OSPC_ERR_INVALID_ARGUMENT;
  try {
    std::string s = std::visit(
        [&](const auto& v) -> std::string {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, ospc_table::Weights>) {
            if (format == OSPC_FORMAT_CSV) return ospc::weights_csv(v.weights);
            if (format == OSPC_FORMAT_TEXT) return ospc::weights_text(v.weights);
            return ospc::weights_json(v.set, v.p, v.q, v.n, v.weights).dump() + "\n";
          } else {
            if (format == OSPC_FORMAT_CSV) return ospc::to_csv(v);
            if (format == OSPC_FORMAT_TEXT) return ospc::to_text(v);
            if constexpr (std::is_same_v<T, ospc::DecompositionTable>)
              return ospc::to_json(v).dump() + "\n";
            else
              return ospc::fusion_table_payload(v).dump() + "\n";
          }
        },
        t->value);
    *out = dup_string(s);
    return OSPC_OK;
  } catch (...) {
    return OSPC_ERR_INTERNAL;
  }
}

void ospc_table_destroy(ospc_table* t) { delete t; }

}  // extern "C"
