#pragma once

// Line-oriented text format for algebras and modules.
//
//   # comment
//   field Q                      | field Fp <p>
//   basis <name>:<deg> ...       (may repeat; order is the basis order)
//   unit <name>
//   mult <a> <b> = <lincomb>     (omitted products are zero; unit rows implied)
//   diff <a> = <lincomb>         (omitted differentials are zero)
//   truncate <top_degree> [infinite]
//
// Modules use `act <a> <m> = <lincomb>` instead of `mult`, and no `unit`.
// A lincomb is `0` or terms joined by `+`/`-`; a term is `<coef>*<name>` or
// `<name>`, with coefficients written as integers or `a/b`.

#include <cctype>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dgrefl/dga.hpp"

namespace dgrefl {

namespace detail {

inline std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

inline std::string strip_comment(const std::string& line) {
  auto h = line.find('#');
  return h == std::string::npos ? line : line.substr(0, h);
}

template <class Lookup>
SparseVec parse_lincomb(const Field& f, const std::string& text, Lookup&& lookup, int line) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ParseError("empty right-hand side", line);
  if (s == "0") return {};
  // split into signed terms at +/- that start a new term
  std::vector<std::pair<bool, std::string>> terms;
  std::size_t i = 0;
  while (i < s.size()) {
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') {
      neg = s[i] == '-';
      ++i;
    } else if (!terms.empty()) {
      throw ParseError("expected '+' or '-' in '" + text + "'", line);
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != '+' && !(s[j] == '-' && j > i && s[j - 1] != '*' && s[j - 1] != '/'))
      ++j;
    if (j == i) throw ParseError("empty term in '" + text + "'", line);
    terms.emplace_back(neg, s.substr(i, j - i));
    i = j;
  }
  std::vector<SparseVec::Entry> entries;
  for (const auto& [neg, term] : terms) {
    Scalar coef = f.one();
    std::string name = term;
    auto star = term.find('*');
    if (star != std::string::npos) {
      try {
        coef = parse_scalar(f, term.substr(0, star));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), line);
      }
      name = term.substr(star + 1);
    }
    auto idx = lookup(name);
    if (!idx) throw ParseError("unknown basis name '" + name + "'", line);
    entries.emplace_back(*idx, neg ? f.neg(coef) : coef);
  }
  return SparseVec::from_pairs(f, entries);
}

inline Field parse_field_line(const std::vector<std::string>& tok, int line) {
  if (tok.size() == 2 && tok[1] == "Q") return Field::rationals();
  if (tok.size() == 3 && tok[1] == "Fp") {
    std::uint64_t p = 0;
    try {
      std::size_t pos = 0;
      p = std::stoull(tok[2], &pos);
      if (pos != tok[2].size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw ParseError("malformed characteristic '" + tok[2] + "'", line);
    }
    return Field::prime(p);
  }
  throw ParseError("expected 'field Q' or 'field Fp <p>'", line);
}

inline std::vector<BasisElement> parse_basis_tokens(const std::vector<std::string>& tok, int line) {
  std::vector<BasisElement> out;
  for (std::size_t k = 1; k < tok.size(); ++k) {
    auto colon = tok[k].rfind(':');
    if (colon == std::string::npos || colon == 0)
      throw ParseError("basis entry must be name:degree, got '" + tok[k] + "'", line);
    BasisElement b;
    b.name = tok[k].substr(0, colon);
    try {
      std::size_t pos = 0;
      b.degree = std::stoi(tok[k].substr(colon + 1), &pos);
      if (pos != tok[k].size() - colon - 1) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw ParseError("malformed degree in '" + tok[k] + "'", line);
    }
    out.push_back(b);
  }
  return out;
}

struct Line {
  int number;
  std::string text;
  std::vector<std::string> tok;
};

inline std::vector<Line> lines_of(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  int n = 0;
  while (std::getline(in, raw)) {
    ++n;
    std::string s = strip_comment(raw);
    auto tok = split_ws(s);
    if (!tok.empty()) out.push_back({n, s, tok});
  }
  return out;
}

inline std::string rhs_of(const Line& l) {
  auto eq = l.text.find('=');
  if (eq == std::string::npos) throw ParseError("missing '='", l.number);
  return l.text.substr(eq + 1);
}

inline std::vector<std::string> lhs_tokens(const Line& l) {
  auto eq = l.text.find('=');
  if (eq == std::string::npos) throw ParseError("missing '='", l.number);
  return split_ws(l.text.substr(0, eq));
}

}  // namespace detail

/// Parses an algebra file. Throws ParseError (with line numbers),
/// ArithmeticError for coefficients outside the field, PreconditionError for
/// structural problems such as a missing unit.
inline DGAlgebra parse_algebra(const std::string& text) {
  auto lines = detail::lines_of(text);
  std::optional<Field> field;
  std::vector<BasisElement> basis;
  std::optional<std::string> unit_name;
  int unit_line = 0;
  for (const auto& l : lines) {
    const auto& k = l.tok[0];
    if (k == "field") {
      if (field) throw ParseError("duplicate field line", l.number);
      field = detail::parse_field_line(l.tok, l.number);
    } else if (k == "basis") {
      auto b = detail::parse_basis_tokens(l.tok, l.number);
      for (const auto& e : b) {
        for (const auto& old : basis)
          if (old.name == e.name) throw ParseError("duplicate basis name '" + e.name + "'", l.number);
        basis.push_back(e);
      }
    } else if (k == "unit") {
      if (l.tok.size() != 2) throw ParseError("expected 'unit <name>'", l.number);
      unit_name = l.tok[1];
      unit_line = l.number;
    } else if (k != "mult" && k != "diff" && k != "truncate") {
      throw ParseError("unknown directive '" + k + "'", l.number);
    }
  }
  if (!field) throw ParseError("missing field line");
  if (basis.empty()) {
    if (unit_name) throw ParseError("unit given for empty basis", unit_line);
    return DGAlgebra::zero(*field);
  }
  if (!unit_name) throw PreconditionError("unit undefined");
  int unit = -1;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i].name == *unit_name) unit = static_cast<int>(i);
  if (unit < 0) throw ParseError("unit undefined: unknown basis name '" + *unit_name + "'", unit_line);
  DGAlgebra a(*field, basis, unit);
  auto lookup = [&](const std::string& n) { return a.index_of(n); };
  std::set<std::pair<int, int>> seen_mult;
  std::set<int> seen_diff;
  for (const auto& l : lines) {
    const auto& k = l.tok[0];
    if (k == "mult") {
      auto lhs = detail::lhs_tokens(l);
      if (lhs.size() != 3) throw ParseError("expected 'mult <a> <b> = ...'", l.number);
      auto i = lookup(lhs[1]), j = lookup(lhs[2]);
      if (!i) throw ParseError("unknown basis name '" + lhs[1] + "'", l.number);
      if (!j) throw ParseError("unknown basis name '" + lhs[2] + "'", l.number);
      if (!seen_mult.emplace(*i, *j).second)
        throw ParseError("duplicate product " + lhs[1] + " " + lhs[2], l.number);
      a.set_product(*i, *j, detail::parse_lincomb(*field, detail::rhs_of(l), lookup, l.number));
    } else if (k == "diff") {
      auto lhs = detail::lhs_tokens(l);
      if (lhs.size() != 2) throw ParseError("expected 'diff <a> = ...'", l.number);
      auto i = lookup(lhs[1]);
      if (!i) throw ParseError("unknown basis name '" + lhs[1] + "'", l.number);
      if (!seen_diff.insert(*i).second) throw ParseError("duplicate differential " + lhs[1], l.number);
      a.set_d(*i, detail::parse_lincomb(*field, detail::rhs_of(l), lookup, l.number));
    } else if (k == "truncate") {
      if (l.tok.size() < 2 || l.tok.size() > 3 || (l.tok.size() == 3 && l.tok[2] != "infinite"))
        throw ParseError("expected 'truncate <top_degree> [infinite]'", l.number);
      try {
        a.declared_top_degree = std::stoi(l.tok[1]);
      } catch (const std::exception&) {
        throw ParseError("malformed top degree", l.number);
      }
      a.infinite_type = l.tok.size() == 3;
    }
  }
  return a;
}

inline std::string serialize_lincomb(const SparseVec& v, const std::vector<BasisElement>& basis) {
  if (v.empty()) return "0";
  std::string s;
  for (const auto& [i, c] : v) {
    if (s.empty()) s += (c < 0 ? "-" : "");
    else s += (c < 0 ? " - " : " + ");
    Scalar a = c < 0 ? Scalar(-c) : c;
    s += a.get_str() + "*" + basis[i].name;
  }
  return s;
}

inline std::string field_line(const Field& f) {
  return f.is_rational() ? "field Q\n" : "field Fp " + std::to_string(f.characteristic()) + "\n";
}

/// Canonical text form; parse_algebra(serialize_algebra(a)) == a.
inline std::string serialize_algebra(const DGAlgebra& a) {
  std::string s = field_line(a.field());
  if (a.is_zero()) return s;
  s += "basis";
  for (const auto& b : a.basis()) s += " " + b.name + ":" + std::to_string(b.degree);
  s += "\nunit " + a.name(a.unit()) + "\n";
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) {
      if (i == a.unit() || j == a.unit()) {
        if (a.product(i, j) == SparseVec::unit(i == a.unit() ? j : i)) continue;
      } else if (a.product(i, j).empty()) {
        continue;
      }
      s += "mult " + a.name(i) + " " + a.name(j) + " = " + serialize_lincomb(a.product(i, j), a.basis()) + "\n";
    }
  for (int i = 0; i < a.dim(); ++i)
    if (!a.d(i).empty()) s += "diff " + a.name(i) + " = " + serialize_lincomb(a.d(i), a.basis()) + "\n";
  if (a.declared_top_degree)
    s += "truncate " + std::to_string(*a.declared_top_degree) + (a.infinite_type ? " infinite" : "") + "\n";
  return s;
}

/// Parses a module file over `alg`. A `field` line, if present, must match.
inline DGModule parse_module(const std::string& text, std::shared_ptr<const DGAlgebra> alg) {
  auto lines = detail::lines_of(text);
  std::vector<BasisElement> basis;
  for (const auto& l : lines) {
    const auto& k = l.tok[0];
    if (k == "field") {
      if (!(detail::parse_field_line(l.tok, l.number) == alg->field()))
        throw ParseError("field mismatch between module and algebra", l.number);
    } else if (k == "basis") {
      for (const auto& e : detail::parse_basis_tokens(l.tok, l.number)) {
        for (const auto& old : basis)
          if (old.name == e.name) throw ParseError("duplicate basis name '" + e.name + "'", l.number);
        basis.push_back(e);
      }
    } else if (k != "act" && k != "diff") {
      throw ParseError("unknown directive '" + k + "'", l.number);
    }
  }
  DGModule m(alg, basis);
  auto lookup = [&](const std::string& n) -> std::optional<int> {
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (basis[i].name == n) return static_cast<int>(i);
    return std::nullopt;
  };
  for (const auto& l : lines) {
    const auto& k = l.tok[0];
    if (k == "act") {
      auto lhs = detail::lhs_tokens(l);
      if (lhs.size() != 3) throw ParseError("expected 'act <a> <m> = ...'", l.number);
      auto i = alg->index_of(lhs[1]);
      auto j = lookup(lhs[2]);
      if (!i) throw ParseError("unknown algebra basis name '" + lhs[1] + "'", l.number);
      if (!j) throw ParseError("unknown module basis name '" + lhs[2] + "'", l.number);
      m.set_action(*i, *j, detail::parse_lincomb(alg->field(), detail::rhs_of(l), lookup, l.number));
    } else if (k == "diff") {
      auto lhs = detail::lhs_tokens(l);
      if (lhs.size() != 2) throw ParseError("expected 'diff <m> = ...'", l.number);
      auto j = lookup(lhs[1]);
      if (!j) throw ParseError("unknown module basis name '" + lhs[1] + "'", l.number);
      m.set_d(*j, detail::parse_lincomb(alg->field(), detail::rhs_of(l), lookup, l.number));
    }
  }
  return m;
}

inline std::string serialize_module(const DGModule& m) {
  std::string s = field_line(m.field());
  s += "basis";
  for (const auto& b : m.basis()) s += " " + b.name + ":" + std::to_string(b.degree);
  s += "\n";
  const DGAlgebra& a = m.algebra();
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) {
      if (i == a.unit() && m.action(i, j) == SparseVec::unit(j)) continue;
      if (i != a.unit() && m.action(i, j).empty()) continue;
      s += "act " + a.name(i) + " " + m.name(j) + " = " + serialize_lincomb(m.action(i, j), m.basis()) + "\n";
    }
  for (int j = 0; j < m.dim(); ++j)
    if (!m.d(j).empty()) s += "diff " + m.name(j) + " = " + serialize_lincomb(m.d(j), m.basis()) + "\n";
  return s;
}

}  // namespace dgrefl
