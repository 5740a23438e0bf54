#include "ospchar/serialize.hpp"

#include "ospchar/error.hpp"

#include <sstream>

namespace ospc {

nlohmann::json weight_json(const Weight& w) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& c : w.coords()) {
    if (is_integer(c))
      a.push_back(to_int64(c));
    else
      a.push_back(to_string(c));
  }
  return a;
}

Weight weight_from_json(const nlohmann::json& j, Convention conv) {
  require(j.is_array(), ErrorCode::InvalidArgument, "weight must be a JSON array");
  std::vector<Rational> c;
  for (const auto& e : j) {
    if (e.is_number_integer())
      c.emplace_back(e.get<std::int64_t>());
    else if (e.is_string())
      c.push_back(parse_rational(e.get<std::string>()));
    else
      fail(ErrorCode::InvalidArgument, "weight coordinates must be integers or rational strings");
  }
  return Weight(std::move(c), conv);
}

std::string weight_text(const Weight& w) {
  std::string s = "(";
  for (int i = 0; i < w.rank(); ++i) {
    if (i) s += ",";
    s += is_integer(w[i]) ? boost::multiprecision::numerator(w[i]).str() : to_string(w[i]);
  }
  return s + ")";
}

std::string convention_name(Convention c) { return c == Convention::CSide ? "C" : "B"; }

Convention parse_convention(const std::string& s) {
  if (s == "C") return Convention::CSide;
  if (s == "B") return Convention::BSide;
  fail(ErrorCode::InvalidArgument, "unknown convention '" + s + "'");
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

nlohmann::json to_json(const FormalCharacter& s) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : s.terms()) {
    nlohmann::json row = nlohmann::json::array();
    for (auto c : t.weight) row.push_back(c);
    row.push_back(t.grade);
    row.push_back(to_string(t.coeff));
    terms.push_back(std::move(row));
  }
  nlohmann::json j = {{"rank", s.rank()},
                      {"convention", "C"},
                      {"trunc", s.trunc()},
                      {"offset", to_string(s.q_offset())},
                      {"terms", std::move(terms)}};
  j["depth_cap"] = s.depth_cap() ? nlohmann::json(*s.depth_cap()) : nlohmann::json(nullptr);
  return j;
}

std::string to_text(const FormalCharacter& s) {
  std::ostringstream os;
  os << "# rank " << s.rank() << ", grades <= " << s.trunc();
  if (s.depth_cap()) os << ", depth <= " << *s.depth_cap();
  os << ", q-offset " << to_string(s.q_offset()) << ", " << s.size() << " terms\n";
  for (const auto& t : s.terms()) {
    os << "q^" << t.grade << "  e^(";
    for (std::size_t i = 0; i < t.weight.size(); ++i) os << (i ? "," : "") << t.weight[i];
    os << ")  " << t.coeff << "\n";
  }
  return os.str();
}

nlohmann::json to_json(const QSeries& s) {
  const Rational off = s.offset();
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : s.terms()) terms.push_back({to_string(Rational(e - off)), to_string(c)});
  return {{"offset", to_string(off)}, {"horizon", to_string(s.horizon())}, {"terms", std::move(terms)}};
}

std::string to_text(const QSeries& s) {
  std::ostringstream os;
  os << "# exact through q^" << to_string(s.horizon()) << "\n";
  for (const auto& [e, c] : s.terms()) os << "q^" << to_string(e) << "  " << c << "\n";
  return os.str();
}

nlohmann::json weights_json(WeightSet set, int p, int q, int n, const std::vector<Weight>& ws) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& w : ws) arr.push_back(weight_json(w));
  const bool b = set == WeightSet::PB || set == WeightSet::PBQ;
  return {{"kind", "admissible"}, {"set", weight_set_name(set)}, {"p", p}, {"q", q}, {"n", n},
          {"convention", b ? "B" : "C"}, {"weights", std::move(arr)}};
}

static std::string coords_plain(const Weight& w) {
  std::string s;
  for (int i = 0; i < w.rank(); ++i) {
    if (i) s += " ";
    s += is_integer(w[i]) ? boost::multiprecision::numerator(w[i]).str() : to_string(w[i]);
  }
  return s;
}

std::string weights_csv(const std::vector<Weight>& ws) {
  std::string s = "mu_coords\n";
  for (const auto& w : ws) s += coords_plain(w) + "\n";
  return s;
}

std::string weights_text(const std::vector<Weight>& ws) {
  std::string s;
  for (const auto& w : ws) s += weight_text(w) + "\n";
  return s;
}

nlohmann::json to_json(const DecompositionTable& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : t.rows) {
    nlohmann::json summands = nlohmann::json::array();
    for (const auto& [lambda, wl] : r.summands)
      summands.push_back({{"lambda", weight_json(lambda)},
                          {"w_label", {weight_json(wl.first), weight_json(wl.second)}}});
    rows.push_back({{"mu_coords", weight_json(r.mu)},
                    {"sector", r.ramond ? "ramond" : "ordinary"},
                    {"summands", std::move(summands)}});
  }
  nlohmann::json left = nlohmann::json::array(), right = nlohmann::json::array();
  for (const auto& w : t.left) left.push_back(weight_json(w));
  for (const auto& w : t.right) right.push_back(weight_json(w));
  auto kind = [](LevelKind k) { return k == LevelKind::Principal ? "principal" : "coprincipal"; };
  return {{"kind", "decompose"},
          {"n", t.n},
          {"u", t.u},
          {"v", t.v},
          {"k", to_string(t.k)},
          {"k_kind", kind(t.k_level.kind)},
          {"ell", to_string(t.ell)},
          {"ell_p", t.ell_level.p},
          {"ell_q", t.ell_level.q},
          {"ell_kind", kind(t.ell_level.kind)},
          {"mechanism", t.mechanism},
          {"left_alphabet", std::move(left)},
          {"right_alphabet", std::move(right)},
          {"rows", std::move(rows)}};
}

std::string to_csv(const DecompositionTable& t) {
  std::string s = "mu_coords,sector,summands\n";
  for (const auto& r : t.rows) {
    std::string sm;
    for (const auto& [lambda, wl] : r.summands) {
      if (!sm.empty()) sm += ";";
      sm += coords_plain(lambda) + "|" + coords_plain(wl.first) + "|" + coords_plain(wl.second);
    }
    s += coords_plain(r.mu) + "," + (r.ramond ? "ramond" : "ordinary") + "," + sm + "\n";
  }
  return s;
}

std::string to_text(const DecompositionTable& t) {
  std::ostringstream os;
  os << "k = " << to_string(t.k) << ", ell = " << to_string(t.ell) << " (" << t.mechanism << ")\n";
  for (const auto& r : t.rows) {
    os << "mu = " << weight_text(r.mu) << " [" << (r.ramond ? "ramond" : "ordinary") << "]:";
    for (const auto& [lambda, wl] : r.summands)
      os << "  L" << weight_text(lambda) << " x W" << weight_text(wl.first) << weight_text(wl.second);
    os << "\n";
  }
  return os.str();
}

std::string label_text(const Label& l) {
  std::string s;
  for (std::size_t i = 0; i < l.size(); ++i) s += (i ? "x" : "") + weight_text(l[i]);
  return s;
}

// labels contain commas
static std::string quoted(const std::string& field) { return "\"" + field + "\""; }

std::string to_csv(const FusionTable& t) {
  std::string s = "a,b,c,N\n";
  const auto m = t.size();
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (const auto& [c, v] : t.products[a * m + b])
        s += quoted(label_text(t.alphabet[a])) + "," + quoted(label_text(t.alphabet[b])) + "," +
             quoted(label_text(t.alphabet[c])) + "," + std::to_string(v) + "\n";
  return s;
}

std::string to_text(const FusionTable& t) {
  std::ostringstream os;
  os << t.kind << " " << t.params.dump() << ", " << t.size() << " labels\n";
  const auto m = t.size();
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b) {
      os << label_text(t.alphabet[a]) << " * " << label_text(t.alphabet[b]) << " =";
      bool first = true;
      for (const auto& [c, v] : t.products[a * m + b]) {
        os << (first ? " " : " + ");
        if (v != 1) os << v << " ";
        os << label_text(t.alphabet[c]);
        first = false;
      }
      if (first) os << " 0";
      os << "\n";
    }
  return os.str();
}

}  // namespace ospc
