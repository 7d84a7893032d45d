#pragma once

// Built-in example algebras. The texts below are also shipped as
// catalogue/<name>.alg; a test keeps the two in sync.

#include <map>
#include <string>
#include <vector>

#include "dgrefl/io.hpp"
#include "dgrefl/radical.hpp"

namespace dgrefl {

struct CatalogueEntry {
  std::string name;
  std::string description;
  std::string text;      // algebra file contents
  std::string expected;  // frozen summary() of the parsed algebra
};

namespace detail {

inline std::string inflation_text(const std::string& label, const std::string& base, int n) {
  return "# M_" + std::to_string(n) + " inflation of " + label + "\n" +
         serialize_algebra(matrix_algebra_inflation(parse_algebra(base), n));
}

inline std::string truncated_polynomial_text(int top) {
  std::string s = "# k[t]/t^" + std::to_string(top + 1) + ", |t| = 1; stands in for k[t] up to degree " +
                  std::to_string(top) + "\nfield Q\nbasis 1:0";
  auto nm = [](int i) { return i == 1 ? std::string("t") : "t" + std::to_string(i); };
  for (int i = 1; i <= top; ++i) s += " " + nm(i) + ":" + std::to_string(i);
  s += "\nunit 1\n";
  for (int i = 1; i <= top; ++i)
    for (int j = 1; i + j <= top; ++j) s += "mult " + nm(i) + " " + nm(j) + " = " + nm(i + j) + "\n";
  s += "truncate " + std::to_string(top) + " infinite\n";
  return s;
}

inline const char* kDualDeg0 =
    "# dual numbers k[x]/x^2, |x| = 0\n"
    "field Q\n"
    "basis 1:0 x:0\n"
    "unit 1\n";

}  // namespace detail

/// Degree of the truncated polynomial presentation shipped in the catalogue.
inline constexpr int kPolyTopDegree = 6;

inline const std::vector<CatalogueEntry>& catalogue() {
  static const std::vector<CatalogueEntry> entries = [] {
    std::vector<CatalogueEntry> v;
    v.push_back({"ground_field", "the ground field k", "field Q\nbasis 1:0\nunit 1\n", ""});
    v.push_back({"dual_numbers_deg0", "k[x]/x^2 with |x| = 0", detail::kDualDeg0, ""});
    v.push_back({"dual_numbers_deg1", "k[x]/x^2 with |x| = 1",
                 "# dual numbers k[x]/x^2, |x| = 1\nfield Q\nbasis 1:0 x:1\nunit 1\n", ""});
    v.push_back({"contractible", "{1, u}, |u| = -1, d(u) = 1",
                 "# contractible algebra\nfield Q\nbasis 1:0 u:-1\nunit 1\ndiff u = 1*1\n", ""});
    v.push_back({"k_times_k", "k x k in degree 0",
                 "# k x k, e = (1, 0)\nfield Q\nbasis 1:0 e:0\nunit 1\nmult e e = 1*e\n", ""});
    v.push_back({"a2_path_algebra", "path algebra of the A2 quiver (upper-triangular 2x2)",
                 "# upper-triangular 2x2 matrices: e = e11, a = e12\nfield Q\nbasis 1:0 e:0 a:0\n"
                 "unit 1\nmult e e = 1*e\nmult e a = 1*a\n",
                 ""});
    v.push_back({"m2_k", "M_2(k)", detail::inflation_text("k", "field Q\nbasis 1:0\nunit 1\n", 2), ""});
    v.push_back({"m2_dual_numbers_deg0", "M_2(k[x]/x^2), |x| = 0",
                 detail::inflation_text("k[x]/x^2, |x| = 0", detail::kDualDeg0, 2), ""});
    v.push_back({"poly_t_deg1_truncated", "k[t], |t| = 1, presented up to degree 6",
                 detail::truncated_polynomial_text(kPolyTopDegree), ""});
    v.push_back({"gaussian_rationals", "Q[x]/(x^2 + 1) over Q",
                 "# Q(i) as a Q-algebra\nfield Q\nbasis 1:0 x:0\nunit 1\nmult x x = -1*1\n", ""});
    const std::map<std::string, std::string> expected = {
        {"ground_field", "dim=1 H={0:1} J=0 J+=0 quotient=1 separability=separable"},
        {"dual_numbers_deg0", "dim=2 H={0:2} J=1 J+=1 quotient=1 separability=separable"},
        {"dual_numbers_deg1", "dim=2 H={0:1,1:1} J=1 J+=1 quotient=1 separability=separable"},
        {"contractible", "dim=2 H={} J=1 J+=2 quotient=0 separability=separable"},
        {"k_times_k", "dim=2 H={0:2} J=0 J+=0 quotient=2 separability=separable"},
        {"a2_path_algebra", "dim=3 H={0:3} J=1 J+=1 quotient=2 separability=separable"},
        {"m2_k", "dim=4 H={0:4} J=0 J+=0 quotient=4 separability=separable"},
        {"m2_dual_numbers_deg0", "dim=8 H={0:8} J=4 J+=4 quotient=4 separability=separable"},
        {"poly_t_deg1_truncated",
         "dim=7 H={0:1,1:1,2:1,3:1,4:1,5:1,6:1} J=6 J+=6 quotient=1 separability=separable"},
        {"gaussian_rationals", "dim=2 H={0:2} J=0 J+=0 quotient=2 separability=unknown"},
    };
    for (auto& e : v) e.expected = expected.at(e.name);
    return v;
  }();
  return entries;
}

inline const CatalogueEntry* find_catalogue(const std::string& name) {
  for (const auto& e : catalogue())
    if (e.name == name) return &e;
  return nullptr;
}

inline DGAlgebra load_catalogue(const std::string& name) {
  const auto* e = find_catalogue(name);
  if (!e) throw PreconditionError("no catalogue entry named '" + name + "'");
  return parse_algebra(e->text);
}

/// One-line structural summary used by the golden catalogue tests.
inline std::string summary(const DGAlgebra& a) {
  std::string h = "{";
  for (const auto& [m, d] : cohomology_dims(a)) {
    if (h.size() > 1) h += ",";
    h += std::to_string(m) + ":" + std::to_string(d);
  }
  h += "}";
  const DGAlgebra q = semisimple_quotient(a);
  return "dim=" + std::to_string(a.dim()) + " H=" + h + " J=" + std::to_string(radical(a).dim()) +
         " J+=" + std::to_string(j_plus(a).dim()) + " quotient=" + std::to_string(q.dim()) +
         " separability=" + to_string(separability_check(q));
}

}  // namespace dgrefl
