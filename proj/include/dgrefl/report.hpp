#pragma once

// Report documents for the command-line tool. Every command produces an
// ordered JSON object with a fixed key order:
//   tool, version, command, input {name, sha256}, params, result.
// The text rendering is derived from the same document.

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "dgrefl/catalogue.hpp"
#include "dgrefl/hochschild.hpp"
#include "dgrefl/koszul.hpp"
#include "dgrefl/monoidal.hpp"

namespace dgrefl::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "1.0.0";

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> v = {"validate",   "cohomology", "radical",     "quotient",    "hh",
                                             "hh-homology", "cup",       "koszul-dual", "tor-kk",      "perfectness",
                                             "reflexivity", "monoidal-selftest", "catalogue"};
  return v;
}

inline bool needs_input(const std::string& cmd) { return cmd != "monoidal-selftest" && cmd != "catalogue"; }

struct Params {
  TruncationPolicy policy{6, -4, 4};
  std::uint64_t seed = 7;
  int trials = 50;
  std::string field;  // empty: as declared in the input
};

inline Json params_json(const std::string& cmd, const Params& p) {
  Json j = Json::object();
  if (cmd == "monoidal-selftest") {
    j["seed"] = p.seed;
    j["trials"] = p.trials;
    return j;
  }
  if (cmd == "catalogue") return j;
  j["max_weight"] = p.policy.max_weight;
  j["degrees"] = {p.policy.lo, p.policy.hi};
  j["field"] = p.field.empty() ? "input" : p.field;
  return j;
}

/// Replaces the field line of an algebra file; `tag` is Q, F<p> or Fp<p>.
inline std::string override_field(const std::string& text, const std::string& tag) {
  std::string line;
  if (tag == "Q") {
    line = "field Q";
  } else if (tag.size() > 1 && tag[0] == 'F') {
    std::string p = tag.substr(tag[1] == 'p' ? 2 : 1);
    if (p.empty() || p.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("--field expects Q, F<p> or Fp<p>, got '" + tag + "'");
    line = "field Fp " + p;
  } else {
    throw ParseError("--field expects Q, F<p> or Fp<p>, got '" + tag + "'");
  }
  std::istringstream in(text);
  std::string out, l;
  bool replaced = false;
  while (std::getline(in, l)) {
    auto tok = dgrefl::detail::split_ws(dgrefl::detail::strip_comment(l));
    if (!tok.empty() && tok[0] == "field") {
      out += line + "\n";
      replaced = true;
    } else {
      out += l + "\n";
    }
  }
  return replaced ? out : line + "\n" + out;
}

namespace detail {

inline Json scalar(const Scalar& s) { return dgrefl::to_string(s); }

inline Json window_json(const SafeWindow& w) {
  Json j = Json::object();
  j["exact_degrees"] = Json::array();
  for (int m : w.exact_degrees) j["exact_degrees"].push_back(m);
  j["exact_max_weight"] = w.exact_max_weight;
  if (w.max_internal_degree) j["max_internal_degree"] = *w.max_internal_degree;
  return j;
}

inline Json table_json(const DimTable& t, bool homological = false) {
  Json j = Json::object();
  j["entries"] = Json::array();
  for (const auto& [k, e] : t.entries) {
    Json row = Json::object();
    row["degree"] = k.first;
    if (homological) row["homological_degree"] = -k.first;
    row["weight"] = k.second;
    row["dim"] = e.dim;
    row["exact"] = e.exact;
    j["entries"].push_back(row);
  }
  j["totals"] = Json::array();
  for (const auto& [m, e] : t.degree_totals()) {
    Json row = Json::object();
    row["degree"] = m;
    if (homological) row["homological_degree"] = -m;
    row["dim"] = e.dim;
    row["exact"] = e.exact;
    j["totals"].push_back(row);
  }
  j["safe_window"] = window_json(t.window);
  return j;
}

inline Json cup_json(const CupTable& c) {
  Json j = Json::object();
  j["classes"] = Json::array();
  for (std::size_t i = 0; i < c.classes.size(); ++i) {
    Json row = Json::object();
    row["id"] = i;
    row["degree"] = c.classes[i].degree;
    row["weight"] = c.classes[i].weight;
    j["classes"].push_back(row);
  }
  j["unit_class"] = c.unit_class;
  j["products"] = Json::array();
  for (const auto& [k, v] : c.products) {
    Json row = Json::object();
    row["left"] = k.first;
    row["right"] = k.second;
    std::string s;
    for (const auto& [id, x] : v) s += (s.empty() ? "" : " + ") + dgrefl::to_string(x) + "*c" + std::to_string(id);
    row["value"] = s.empty() ? "0" : s;
    j["products"].push_back(row);
  }
  j["associative"] = c.associative;
  j["unital"] = c.unital;
  j["graded_commutative"] = c.graded_commutative;
  return j;
}

inline Json span_json(const DGAlgebra& a, const std::vector<SparseVec>& span) {
  Json j = Json::array();
  for (const auto& v : span) j.push_back(dgrefl::detail::render(a, v));
  return j;
}

inline Json stabilized_json(const std::map<int, bool>& s) {
  Json j = Json::array();
  for (const auto& [m, b] : s) {
    Json row = Json::object();
    row["degree"] = m;
    row["stabilized"] = b;
    j.push_back(row);
  }
  return j;
}

inline Json monoidal_selftest(const Params& p) {
  using namespace dgrefl::monoidal;
  std::mt19937_64 rng(p.seed);
  const auto k = ground_ring();
  const auto r = dual_numbers_ring();
  int graded_objects = 0, module_objects = 0, disagreements = 0, projectivity_mismatches = 0, retract_failures = 0;
  Json failures = Json::array();
  for (int t = 0; t < p.trials; ++t) {
    if (t % 2 == 0) {
      ++graded_objects;
      Object x = random_graded(k, rng);
      auto probes = probe_set(k);
      probes.push_back(random_graded(k, rng, 3));
      auto e = prop_equivalences_check(x, probes);
      if (!e.agree || !e.conditions[0]) {
        ++disagreements;
        failures.push_back(x.label + " " + describe(e));
      }
    } else {
      ++module_objects;
      int a = 0, b = 0;
      Object x = random_module(r, rng, &a, &b);
      auto probes = probe_set(r);
      probes.push_back(random_module(r, rng, nullptr, nullptr, 3));
      auto e = prop_equivalences_check(x, probes);
      if (!e.agree) {
        ++disagreements;
        failures.push_back(x.label + " " + describe(e));
      }
      const bool projective = projectivity_by_splitting(x).split;
      if (projective != e.conditions[0] || projective != is_projective_by_count(x) || projective != (b == 0)) {
        ++projectivity_mismatches;
        failures.push_back(x.label + " projectivity mismatch");
      }
    }
  }
  for (int t = 0; t < p.trials; ++t) {
    Object x = random_module(r, rng, nullptr, nullptr, 3);
    Object z = random_module(r, rng, nullptr, nullptr, 3);
    auto rp = random_retract(x, z, rng);
    if (!retract_closure_check(rp.x, rp.n, rp.f, rp.g)) {
      ++retract_failures;
      failures.push_back("retract " + x.label + " of " + rp.n.label);
    }
  }
  Json j = Json::object();
  j["objects"] = graded_objects + module_objects;
  j["graded_objects"] = graded_objects;
  j["module_objects"] = module_objects;
  j["retract_pairs"] = p.trials;
  j["disagreements"] = disagreements;
  j["projectivity_mismatches"] = projectivity_mismatches;
  j["retract_failures"] = retract_failures;
  j["failures"] = failures;
  j["pass"] = disagreements == 0 && projectivity_mismatches == 0 && retract_failures == 0;
  return j;
}

inline Json catalogue_json() {
  Json j = Json::object();
  j["entries"] = Json::array();
  for (const auto& e : catalogue()) {
    Json row = Json::object();
    row["name"] = e.name;
    row["path"] = "catalogue/" + e.name + ".alg";
    row["description"] = e.description;
    row["expected"] = e.expected;
    j["entries"].push_back(row);
  }
  return j;
}

inline Json evidence_json(const std::vector<Evidence>& ev) {
  Json j = Json::array();
  for (const auto& e : ev) {
    Json row = Json::object();
    row["criterion"] = e.criterion;
    row["status"] = e.status;
    row["reason"] = e.reason;
    j.push_back(row);
  }
  return j;
}

}  // namespace detail

/// Computes the `result` section for a command. `text` is the algebra file
/// (empty for commands without input).
inline Json run_result(const std::string& cmd, const std::string& text, const Params& p) {
  if (cmd == "monoidal-selftest") return detail::monoidal_selftest(p);
  if (cmd == "catalogue") return detail::catalogue_json();
  const DGAlgebra a = parse_algebra(p.field.empty() ? text : override_field(text, p.field));
  const TruncationPolicy& pol = p.policy;
  Json r = Json::object();
  if (cmd == "validate") {
    auto v = validate_dga(a);
    r["valid"] = v.empty();
    r["field"] = a.field().tag();
    r["dim"] = a.dim();
    r["basis"] = Json::array();
    for (int i = 0; i < a.dim(); ++i) {
      Json b = Json::object();
      b["name"] = a.name(i);
      b["degree"] = a.degree(i);
      r["basis"].push_back(b);
    }
    r["violations"] = Json::array();
    for (const auto& x : v) {
      Json row = Json::object();
      row["kind"] = x.kind;
      row["witness"] = x.witness;
      r["violations"].push_back(row);
    }
    return r;
  }
  if (!validate_dga(a).empty()) throw PreconditionError("input is not a valid DGA; run 'validate' for details");
  if (cmd == "cohomology") {
    r["dims"] = Json::array();
    for (const auto& [m, d] : cohomology_dims(a)) {
      Json row = Json::object();
      row["degree"] = m;
      row["dim"] = d;
      r["dims"].push_back(row);
    }
    return r;
  }
  if (cmd == "radical") {
    auto j = radical(a);
    auto jp = j_plus(a);
    r["radical_dim"] = j.dim();
    r["radical_is_dg_ideal"] = j.is_dg_ideal;
    r["radical_span"] = detail::span_json(a, j.span);
    r["j_plus_dim"] = jp.dim();
    r["j_plus_span"] = detail::span_json(a, jp.span);
    auto nil = dgrefl::detail::nilpotency_index(a, j.span);
    r["nilpotency_index"] = nil ? Json(*nil) : Json(nullptr);
    return r;
  }
  if (cmd == "quotient") {
    const DGAlgebra q = semisimple_quotient(a);
    r["dim"] = q.dim();
    r["separability"] = to_string(separability_check(q));
    r["algebra"] = q.is_zero() ? std::string("0") : serialize_algebra(q);
    return r;
  }
  if (cmd == "hh" || cmd == "hh-homology") {
    const bool chains = cmd == "hh-homology";
    HHResult h = chains ? hh_homology(a, pol) : hh_cohomology(a, pol);
    r["table"] = detail::table_json(h.table, chains);
    r["stabilization"] = detail::stabilized_json(h.stabilized);
    r["euler_defect"] = h.euler_defect;
    r["truncated_presentation"] = h.truncated_presentation;
    return r;
  }
  if (cmd == "cup") {
    HHResult h = hh_cohomology(a, pol);
    r["table"] = detail::table_json(h.table);
    r["cup"] = detail::cup_json(cup_product(a, h));
    return r;
  }
  if (cmd == "koszul-dual") {
    ExtAlgebra e = koszul_dual(a, pol);
    r["zero"] = e.zero;
    r["note"] = e.note;
    r["resolution"] = e.resolution;
    r["table"] = detail::table_json(e.table);
    r["products"] = e.products ? detail::cup_json(*e.products) : Json(nullptr);
    r["products_note"] = e.products_note;
    return r;
  }
  if (cmd == "tor-kk") {
    TorResult t = derived_tensor_k_k(a, pol);
    r["resolution"] = t.resolution;
    r["table"] = detail::table_json(t.table);
    r["cross_checked"] = t.cross_checked;
    r["t_action"] = Json::array();
    for (const auto& [n, c] : t.t_action) {
      Json row = Json::object();
      row["weight"] = n;
      row["coefficient"] = detail::scalar(c);
      r["t_action"].push_back(row);
    }
    r["t_chain_map"] = t.t_chain_map;
    r["t_nonzero_class"] = t.t_nonzero_class;
    r["t_isomorphisms"] = t.t_isomorphisms;
    return r;
  }
  if (cmd == "perfectness") {
    auto ap = std::make_shared<const DGAlgebra>(a);
    ProbeResult pr = perfectness_probe(quotient_module(ap), pol);
    r["module"] = "A/J+";
    r["verdict"] = to_string(pr.verdict);
    r["totals"] = pr.totals;
    r["stages"] = Json::array();
    for (std::size_t n = 0; n < pr.stages.size(); ++n) {
      Json row = Json::object();
      row["stage"] = n;
      std::string s;
      for (const auto& [m, d] : pr.stages[n]) s += (s.empty() ? "" : " ") + std::to_string(m) + ":" + std::to_string(d);
      row["dims"] = s;
      r["stages"].push_back(row);
    }
    r["witness"] = pr.witness;
    return r;
  }
  if (cmd == "reflexivity") {
    ReflexivityReport rr = reflexivity_report(a, pol);
    r["verdict"] = to_string(rr.verdict);
    r["evidence"] = detail::evidence_json(rr.evidence);
    return r;
  }
  throw PreconditionError("unknown command '" + cmd + "'");
}

inline Json make_document(const std::string& cmd, const std::string& input_name, const std::string& digest,
                          const std::string& text, const Params& p) {
  Json doc = Json::object();
  doc["tool"] = "dgrefl";
  doc["version"] = kToolVersion;
  doc["command"] = cmd;
  if (needs_input(cmd)) doc["input"] = {{"name", input_name}, {"sha256", digest}};
  doc["params"] = params_json(cmd, p);
  doc["result"] = run_result(cmd, text, p);
  return doc;
}

namespace detail {

inline std::string cell(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

inline bool is_table(const Json& v) {
  if (!v.is_array() || v.empty()) return false;
  for (const auto& e : v)
    if (!e.is_object()) return false;
  return true;
}

inline void render_table(std::ostringstream& out, const Json& rows, const std::string& indent) {
  std::vector<std::string> keys;
  for (const auto& [k, _] : rows[0].items()) keys.push_back(k);
  std::vector<std::size_t> w(keys.size());
  for (std::size_t c = 0; c < keys.size(); ++c) {
    w[c] = keys[c].size();
    for (const auto& r : rows) w[c] = std::max(w[c], cell(r.value(keys[c], Json())).size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s = indent;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      s += cells[c];
      if (c + 1 < cells.size()) s += std::string(w[c] - cells[c].size() + 2, ' ');
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    out << s << "\n";
  };
  line(keys);
  for (const auto& r : rows) {
    std::vector<std::string> cs;
    for (const auto& k : keys) cs.push_back(cell(r.value(k, Json())));
    line(cs);
  }
}

inline void render(std::ostringstream& out, const Json& v, const std::string& indent) {
  for (const auto& [k, x] : v.items()) {
    if (x.is_object()) {
      out << indent << k << ":\n";
      render(out, x, indent + "  ");
    } else if (is_table(x)) {
      out << indent << k << ":\n";
      render_table(out, x, indent + "  ");
    } else if (x.is_string() && x.get<std::string>().find('\n') != std::string::npos) {
      out << indent << k << ":\n";
      std::istringstream in(x.get<std::string>());
      std::string l;
      while (std::getline(in, l)) out << indent << "  | " << l << "\n";
    } else {
      out << indent << k << ": " << cell(x) << "\n";
    }
  }
}

}  // namespace detail

/// Plain-text rendering: nested keys indented, arrays of records as tables.
inline std::string render_text(const Json& doc) {
  std::ostringstream out;
  detail::render(out, doc, "");
  return out.str();
}

}  // namespace dgrefl::report
