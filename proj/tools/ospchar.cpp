// Command-line front end. Talks to the library only through ospchar.h.
#include "ospchar/ospchar.h"

#include "CLI11.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "json";
  std::string output;
  unsigned workers = 1;
  std::uint64_t seed = 1;
  int cases = -1;
  std::string cache_dir;
  bool no_cache = false;
  std::int64_t window = 0;
  int max_trunc = 24;

  int n = 1;
  int trunc = 4;
  std::string type = "sp";
  std::string lambda;
  std::string mu;
  std::string k;
  int box = 8;
  int mu_box = 4;
  int p = 0;
  int q = 0;
  int u = 0;
  int v = 0;
  int level = -1;
  std::string set;
};

using ContextPtr = std::unique_ptr<ospc_context, decltype(&ospc_context_destroy)>;

// Exit codes: 0 ok, 1 identity failed, 2 usage, then library status + 1 for the remaining errors.
int exit_code(ospc_status s) {
  switch (s) {
    case OSPC_OK:
      return 0;
    case OSPC_ERR_IDENTITY:
      return 1;
    case OSPC_ERR_INVALID_ARGUMENT:
      return 2;
    default:
      return static_cast<int>(s) + 1;
  }
}

ospc_format parse_format(const std::string& f) {
  if (f == "json") return OSPC_FORMAT_JSON;
  if (f == "csv") return OSPC_FORMAT_CSV;
  if (f == "text") return OSPC_FORMAT_TEXT;
  throw UsageError("unknown format '" + f + "' (json, csv or text)");
}

ospc_algebra parse_type(const std::string& t) {
  if (t == "sp") return OSPC_SP;
  if (t == "osp") return OSPC_OSP;
  throw UsageError("unknown type '" + t + "' (sp or osp)");
}

std::int64_t parse_int(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw UsageError("malformed " + what + " '" + s + "'");
  }
  if (used != s.size()) throw UsageError("malformed " + what + " '" + s + "'");
  return v;
}

// "1,0" -> {1, 0}; a lone "0" stands for the zero weight of any rank.
std::vector<std::int64_t> parse_weight(const std::string& text, int n, const std::string& what) {
  if (text.empty() || text == "0") return std::vector<std::int64_t>(static_cast<std::size_t>(std::max(n, 0)), 0);
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(parse_int(part, what));
  if (static_cast<int>(out.size()) != n)
    throw UsageError(what + " '" + text + "' has " + std::to_string(out.size()) + " coordinates, expected " +
                     std::to_string(n));
  return out;
}

void parse_level(const std::string& text, std::int64_t& num, std::int64_t& den) {
  auto slash = text.find('/');
  if (text.empty()) throw UsageError("missing --k");
  num = parse_int(text.substr(0, slash), "level");
  den = slash == std::string::npos ? 1 : parse_int(text.substr(slash + 1), "level");
  if (den == 0) throw UsageError("zero denominator in level '" + text + "'");
}

std::string take(char* s) {
  std::string out = s ? s : "";
  ospc_string_free(s);
  return out;
}

class Runner {
 public:
  explicit Runner(const Options& o) : o_(o), ctx_(nullptr, &ospc_context_destroy) {
    ospc_context* raw = nullptr;
    if (ospc_context_create(&raw) != OSPC_OK) throw std::runtime_error("cannot create context");
    ctx_.reset(raw);
    check(ospc_context_set_workers(ctx(), o.workers));
    check(ospc_context_set_limits(ctx(), 6, o.max_trunc));
    check(ospc_context_set_depth_window(ctx(), o.window));
    if (!o.no_cache) {
      std::string dir = o.cache_dir;
      if (dir.empty())
        if (const char* env = std::getenv("OSPCHAR_CACHE_DIR")) dir = env;
      if (dir.empty())
        if (const char* home = std::getenv("HOME")) dir = std::string(home) + "/.cache/ospchar";
      check(ospc_context_set_cache_dir(ctx(), dir.c_str()));
    }
  }

  ospc_context* ctx() { return ctx_.get(); }
  ospc_format format() const { return parse_format(o_.format); }

  // Throws on any status other than OK; the message comes from the context.
  void check(ospc_status s) {
    if (s != OSPC_OK) throw Failure{s, ospc_last_error(ctx())};
  }

  // Report calls: write the report even when the identity failed.
  int report(ospc_status s, char*& text) {
    if (s != OSPC_OK && s != OSPC_ERR_IDENTITY) {
      ospc_string_free(text);
      check(s);
    }
    emit(take(text));
    if (s == OSPC_ERR_IDENTITY) std::cerr << "ospchar: identity failed (see report)\n";
    return exit_code(s);
  }

  void emit(const std::string& text) {
    if (o_.output.empty()) {
      std::cout << text;
      if (!text.empty() && text.back() != '\n') std::cout << '\n';
      return;
    }
    std::ofstream f(o_.output, std::ios::binary);
    if (!f) throw Failure{OSPC_ERR_IO, "cannot open output file " + o_.output};
    f << text;
    if (!f) throw Failure{OSPC_ERR_IO, "cannot write output file " + o_.output};
  }

  struct Failure {
    ospc_status status;
    std::string message;
  };

 private:
  const Options& o_;
  ContextPtr ctx_;
};

void no_csv(const Options& o) {
  if (o.format == "csv") throw UsageError("CSV output is only available for tables");
}

int run_series(Runner& r, ospc_status s, ospc_series*& out) {
  r.check(s);
  char* text = nullptr;
  auto st = ospc_series_render(out, r.format(), &text);
  ospc_series_destroy(out);
  r.check(st);
  r.emit(take(text));
  return 0;
}

int run_qseries(Runner& r, ospc_status s, ospc_qseries*& out) {
  r.check(s);
  char* text = nullptr;
  auto st = ospc_qseries_render(out, r.format(), &text);
  ospc_qseries_destroy(out);
  r.check(st);
  r.emit(take(text));
  return 0;
}

int run_table(Runner& r, ospc_status s, ospc_table*& t) {
  r.check(s);
  char* text = nullptr;
  auto st = ospc_table_render(t, r.format(), &text);
  ospc_table_destroy(t);
  r.check(st);
  r.emit(take(text));
  return 0;
}

int cmd_char(const std::string& kind, const Options& o) {
  no_csv(o);
  Runner r(o);
  ospc_series* s = nullptr;
  ospc_qseries* qs = nullptr;
  if (kind == "denominator") return run_series(r, ospc_char_denominator(r.ctx(), parse_type(o.type), o.n, o.trunc, &s), s);
  if (kind == "theta") return run_series(r, ospc_char_theta(r.ctx(), o.n, o.trunc, &s), s);
  if (kind == "verma") {
    auto w = parse_weight(o.lambda, o.n, "--lambda");
    return run_series(r, ospc_char_verma(r.ctx(), parse_type(o.type), w.data(), o.n, o.trunc, &s), s);
  }
  if (kind == "weyl") {
    auto w = parse_weight(o.mu, o.n, "--mu");
    return run_series(r, ospc_char_weyl(r.ctx(), parse_type(o.type), w.data(), o.n, o.trunc, &s), s);
  }
  auto l = parse_weight(o.lambda, o.n, "--lambda");
  auto m = parse_weight(o.mu, o.n, "--mu");
  if (kind == "wmod") {
    std::int64_t num = 0, den = 1;
    parse_level(o.k, num, den);
    return run_qseries(r, ospc_char_wmodule(r.ctx(), l.data(), m.data(), o.n, num, den, o.trunc, &qs), qs);
  }
  return run_qseries(r, ospc_char_branching(r.ctx(), l.data(), m.data(), o.n, o.trunc, &qs), qs);
}

int cmd_verify(const std::string& kind, const Options& o) {
  no_csv(o);
  Runner r(o);
  char* text = nullptr;
  auto f = r.format();
  if (kind == "triple-product") return r.report(ospc_verify_triple_product(r.ctx(), o.n, o.trunc, f, &text), text);
  if (kind == "branching") {
    auto m = parse_weight(o.mu, o.n, "--mu");
    return r.report(ospc_verify_branching(r.ctx(), o.n, m.data(), o.trunc, f, &text), text);
  }
  if (kind == "singular-vanishing")
    return r.report(ospc_verify_singular_vanishing(r.ctx(), o.n, o.box, o.mu_box, o.trunc, f, &text), text);
  if (kind == "delta-lemma")
    return r.report(ospc_verify_delta_lemma(r.ctx(), o.n, o.cases < 0 ? 1000 : o.cases, o.seed, f, &text), text);
  if (kind == "main-theorem")
    return r.report(ospc_verify_main_theorem(r.ctx(), o.n, o.cases < 0 ? 20 : o.cases, o.seed, o.trunc, f, &text),
                    text);
  if (kind == "bijections") return r.report(ospc_verify_bijections(r.ctx(), o.n, o.p, f, &text), text);
  // fusion axioms on a freshly built (or cached) table
  ospc_table* t = nullptr;
  if (o.level >= 0)
    r.check(ospc_table_affine_fusion(r.ctx(), o.n, o.level, &t));
  else if (o.u > 0)
    r.check(ospc_table_osp_fusion(r.ctx(), o.n, o.u, o.v, &t));
  else
    r.check(ospc_table_w_fusion(r.ctx(), o.n, o.p, o.q, &t));
  auto s = ospc_verify_fusion_axioms(r.ctx(), t, f, &text);
  ospc_table_destroy(t);
  return r.report(s, text);
}

int cmd_tables(const std::string& kind, const Options& o) {
  Runner r(o);
  ospc_table* t = nullptr;
  if (kind == "admissible") {
    ospc_weight_set set;
    if (o.set == "PC")
      set = OSPC_SET_PC;
    else if (o.set == "PB")
      set = OSPC_SET_PB;
    else if (o.set == "PBQ")
      set = OSPC_SET_PBQ;
    else if (o.set == "PCHECK")
      set = OSPC_SET_PCHECK;
    else
      throw UsageError("unknown weight set '" + o.set + "' (PC, PB, PBQ or PCHECK)");
    return run_table(r, ospc_table_admissible(r.ctx(), set, o.p, o.q, o.n, &t), t);
  }
  if (kind == "decompose") return run_table(r, ospc_table_decompose(r.ctx(), o.n, o.u, o.v, &t), t);
  if (kind == "osp-fusion") return run_table(r, ospc_table_osp_fusion(r.ctx(), o.n, o.u, o.v, &t), t);
  if (o.level >= 0) return run_table(r, ospc_table_affine_fusion(r.ctx(), o.n, o.level, &t), t);
  if (o.p <= 0 || o.q <= 0) throw UsageError("fusion needs --level, or --p and --q");
  return run_table(r, ospc_table_w_fusion(r.ctx(), o.n, o.p, o.q, &t), t);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Characters, branching functions, admissible weights and fusion rules for sp/osp and W-algebras"};
  app.set_version_flag("--version", std::string(ospc_version()));
  app.require_subcommand(1);
  Options o;

  app.add_option("--format", o.format, "json, csv (tables) or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("-o,--output", o.output, "write to a file instead of stdout");
  app.add_option("--workers", o.workers, "worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--seed", o.seed, "seed for randomized checks");
  app.add_option("--cases", o.cases, "random cases")->check(CLI::NonNegativeNumber);
  app.add_option("--cache-dir", o.cache_dir, "fusion table cache (default $OSPCHAR_CACHE_DIR, then ~/.cache/ospchar)");
  app.add_flag("--no-cache", o.no_cache, "neither read nor write the cache");
  app.add_option("--window", o.window, "depth window for characters (0: default)")->check(CLI::NonNegativeNumber);
  app.add_option("--max-trunc", o.max_trunc, "truncation cap")->check(CLI::NonNegativeNumber);

  auto common = [&](CLI::App* sub) {
    sub->fallthrough();
    sub->add_option("--n", o.n, "rank")->check(CLI::PositiveNumber);
  };
  auto with_trunc = [&](CLI::App* sub) { sub->add_option("--trunc", o.trunc, "q-grade truncation"); };

  std::string kind;
  std::function<int()> action;

  auto* ch = app.add_subcommand("char", "emit a truncated character");
  ch->require_subcommand(1);
  auto add_char = [&](const std::string& name, const std::string& help) {
    auto* s = ch->add_subcommand(name, help);
    common(s);
    with_trunc(s);
    s->callback([&, name] { action = [&, name] { return cmd_char(name, o); }; });
    return s;
  };
  add_char("denominator", "inverse affine denominator")->add_option("--type", o.type, "sp or osp");
  add_char("theta", "theta sum");
  {
    auto* s = add_char("verma", "Verma module character");
    s->add_option("--type", o.type, "sp or osp");
    s->add_option("--lambda", o.lambda, "highest weight, e.g. 1,0");
  }
  {
    auto* s = add_char("weyl", "Weyl module character");
    s->add_option("--type", o.type, "sp or osp");
    s->add_option("--mu", o.mu, "dominant weight, e.g. 1,0");
  }
  {
    auto* s = add_char("wmod", "W-algebra module character");
    s->add_option("--lambda", o.lambda, "dominant weight");
    s->add_option("--mu", o.mu, "dominant weight");
    s->add_option("--k", o.k, "level, e.g. 1/3")->required();
  }
  {
    auto* s = add_char("branching", "branching function");
    s->add_option("--lambda", o.lambda, "integral weight");
    s->add_option("--mu", o.mu, "dominant weight");
  }
  ch->fallthrough();

  auto* ve = app.add_subcommand("verify", "check an identity exactly");
  ve->require_subcommand(1);
  ve->fallthrough();
  auto add_verify = [&](const std::string& name, const std::string& help) {
    auto* s = ve->add_subcommand(name, help);
    common(s);
    s->callback([&, name] { action = [&, name] { return cmd_verify(name, o); }; });
    return s;
  };
  with_trunc(add_verify("triple-product", "denominator identity"));
  {
    auto* s = add_verify("branching", "branching identity for one mu");
    with_trunc(s);
    s->add_option("--mu", o.mu, "dominant weight");
  }
  {
    auto* s = add_verify("singular-vanishing", "branching functions vanish at singular shifts");
    with_trunc(s);
    s->add_option("--box", o.box, "coordinate box for the singular points");
    s->add_option("--mu-box", o.mu_box, "coordinate box for mu");
  }
  add_verify("delta-lemma", "exponent identity on random cases");
  with_trunc(add_verify("main-theorem", "W-module character by two routes on random cases"));
  add_verify("bijections", "admissible set bijections")->add_option("--p", o.p, "numerator (omit for the full range)");
  {
    auto* s = add_verify("fusion", "fusion ring axioms");
    s->add_option("--level", o.level, "affine level");
    s->add_option("--p", o.p, "W-algebra numerator");
    s->add_option("--q", o.q, "W-algebra denominator");
    s->add_option("--u", o.u, "osp level numerator");
    s->add_option("--v", o.v, "osp level denominator");
  }

  auto* ta = app.add_subcommand("tables", "admissible sets, decompositions, fusion tables");
  ta->require_subcommand(1);
  ta->fallthrough();
  auto add_table = [&](const std::string& name, const std::string& help) {
    auto* s = ta->add_subcommand(name, help);
    common(s);
    s->callback([&, name] { action = [&, name] { return cmd_tables(name, o); }; });
    return s;
  };
  {
    auto* s = add_table("admissible", "admissible weight set");
    s->add_option("--set", o.set, "PC, PB, PBQ or PCHECK")->required();
    s->add_option("--p", o.p, "numerator")->required();
    s->add_option("--q", o.q, "denominator")->required();
  }
  {
    auto* s = add_table("decompose", "osp decomposition table");
    s->add_option("--u", o.u, "level numerator")->required();
    s->add_option("--v", o.v, "level denominator")->required();
  }
  {
    auto* s = add_table("fusion", "affine (--level) or W-algebra (--p, --q) fusion table");
    s->add_option("--level", o.level, "affine level");
    s->add_option("--p", o.p, "numerator");
    s->add_option("--q", o.q, "denominator");
  }
  {
    auto* s = add_table("osp-fusion", "osp fusion table");
    s->add_option("--u", o.u, "level numerator")->required();
    s->add_option("--v", o.v, "level denominator")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "ospchar: " << e.what() << "\n";
    return 2;
  }

  try {
    if (!action) throw UsageError("no command given");
    return action();
  } catch (const UsageError& e) {
    std::cerr << "ospchar: " << e.what() << "\n";
    return 2;
  } catch (const Runner::Failure& f) {
    std::cerr << "ospchar: " << ospc_status_name(f.status) << ": " << f.message << "\n";
    return exit_code(f.status);
  } catch (const std::exception& e) {
    std::cerr << "ospchar: " << e.what() << "\n";
    return 7;
  }
}
