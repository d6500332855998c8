#pragma once

// Hand-evaluated admissibility cases shared by the unit tests and the acceptance binary.
// Every expected residual and derived value below was worked out by hand from the
// hypothesis lists; none were copied from checker output.

#include <string>
#include <utility>
#include <vector>

#include "fsx/admissibility.hpp"

namespace fsx::cases {

struct Expectation {
  std::string key;   // condition id, or derived key when derived is true
  std::string value; // exact rational text
  bool derived = false;
};

struct AdmissibilityCase {
  std::string name;
  std::string theorem;
  std::vector<std::pair<std::string, std::string>> params;
  std::string kind; // empty: default "B"
  Verdict verdict;
  std::vector<Expectation> expect = {};
  std::vector<std::pair<std::string, std::string>> labels = {};
  bool boundary_case = false;  // sits on the edge of the hypothesis region
  bool classical_case = false; // reduces to the unweighted classical statement

  ParamTuple tuple() const {
    ParamTuple P;
    for (const auto &[k, v] : params)
      P.set(k, v);
    if (!kind.empty())
      P.option("kind", kind);
    return P;
  }
};

inline Expectation cond(std::string id, std::string v) { return {std::move(id), std::move(v), false}; }
inline Expectation derived(std::string k, std::string v) { return {std::move(k), std::move(v), true}; }

inline const std::vector<AdmissibilityCase> &admissibility_cases() {
  using V = Verdict;
  static const std::vector<AdmissibilityCase> cases{
      // embeddings: balance s1 - n/s - alpha1 = s2 - n/q - alpha2
      {"embedding identity",
       "EMB",
       {{"n", "1"}, {"alpha1", "0"}, {"alpha2", "0"}, {"s1", "1"}, {"s2", "1"}, {"q", "2"}, {"s", "2"},
        {"p", "2"}, {"r", "2"}, {"beta", "2"}},
       "",
       V::admissible,
       {cond("balance", "0"), derived("theta", "2")},
       {{"theta_index", "r"}},
       false,
       true},
      {"embedding q=2 s=4 with smoothness gap 1/4",
       "EMB",
       {{"n", "1"}, {"alpha1", "0"}, {"alpha2", "0"}, {"s1", "1"}, {"s2", "5/4"}, {"q", "2"}, {"s", "4"},
        {"p", "3"}, {"r", "2"}, {"beta", "2"}},
       "",
       V::admissible,
       {cond("balance", "0"), cond("A_q_le_s", "1/4"), derived("theta", "2")},
       {{"theta_index", "r"}}},
      {"embedding balance off by 1/100",
       "EMB",
       {{"n", "1"}, {"alpha1", "0"}, {"alpha2", "0"}, {"s1", "101/100"}, {"s2", "5/4"}, {"q", "2"}, {"s", "4"},
        {"p", "3"}, {"r", "2"}, {"beta", "2"}},
       "",
       V::inadmissible,
       {cond("balance", "1/100")}},
      {"embedding on the equality edge of the s <= q branch",
       "EMB",
       {{"n", "1"}, {"alpha1", "0"}, {"alpha2", "1/4"}, {"s1", "1"}, {"s2", "1"}, {"q", "4"}, {"s", "2"},
        {"p", "3"}, {"r", "2"}, {"beta", "2"}},
       "",
       V::admissible,
       {cond("B_cond", "0"), cond("balance", "0"), derived("theta", "2")},
       {{"theta_index", "r"}},
       true},

      // Franke embedding
      {"Franke q < s, equal weights",
       "FRANKE",
       {{"n", "1"}, {"alpha1", "0"}, {"alpha2", "0"}, {"s1", "1"}, {"s2", "5/4"}, {"q", "2"}, {"s", "4"},
        {"p", "2"}, {"beta", "2"}},
       "",
       V::admissible,
       {cond("balance", "0"), cond("A_q_lt_s", "1/4"), cond("A_alpha", "0")},
       {},
       true},
      {"Franke s <= q needs a strict weight gap",
       "FRANKE",
       {{"n", "1"}, {"alpha1", "0"}, {"alpha2", "1/4"}, {"s1", "1"}, {"s2", "1"}, {"q", "4"}, {"s", "2"},
        {"p", "2"}, {"beta", "2"}},
       "",
       V::inadmissible,
       {cond("B_cond", "0"), cond("balance", "0")}},
      {"Franke balance failure",
       "FRANKE",
       {{"n", "1"}, {"alpha1", "0"}, {"alpha2", "0"}, {"s1", "1"}, {"s2", "3/2"}, {"q", "2"}, {"s", "4"},
        {"p", "2"}, {"beta", "2"}},
       "",
       V::inadmissible,
       {cond("balance", "-1/4")}},

      // regular distributions: s > max(sigma_q, alpha - alpha0)
      {"regularity q=2 alpha=0 s=1/10",
       "REG",
       {{"n", "1"}, {"alpha", "0"}, {"p", "2"}, {"q", "2"}, {"beta", "2"}, {"s", "1/10"}},
       "",
       V::admissible,
       {cond("s_threshold", "1/10"), derived("sigma_q", "0"), derived("alpha0", "1/2")},
       {},
       false,
       true},
      {"regularity q=1/2 s=1 sits on the threshold",
       "REG",
       {{"n", "1"}, {"alpha", "0"}, {"p", "2"}, {"q", "1/2"}, {"beta", "2"}, {"s", "1"}},
       "",
       V::boundary,
       {cond("s_threshold", "0"), derived("sigma_q", "1"), derived("alpha0", "-1")},
       {},
       true},
      {"regularity with dominating smoothness",
       "REG",
       {{"n", "1"}, {"alpha", "1/2"}, {"p", "2"}, {"q", "2"}, {"beta", "2"}, {"s", "10"}},
       "",
       V::admissible,
       {cond("s_threshold", "10")}},

      // CKN, alpha1 <= alpha2 <= alpha3 family
      {"T2i weighted tuple",
       "T2i",
       {{"n", "1"}, {"alpha1", "1/4"}, {"alpha2", "1/4"}, {"alpha3", "3/4"}, {"beta", "3/2"}, {"p", "2"},
        {"r", "3"}, {"rho", "3"}, {"s", "2"}, {"sigma", "1/2"}, {"tau", "3/2"}, {"u", "2"}, {"v", "4"}},
       "B",
       V::admissible,
       {cond("chain_upper", "3/4"), cond("chain_lower", "3/4"), cond("balance", "0"), derived("theta", "1/2")},
       {{"delta", "r"}, {"delta1", "rho"}}},
      {"T2i unweighted reduction r = v",
       "T2i",
       {{"n", "1"}, {"alpha1", "0"}, {"alpha2", "0"}, {"alpha3", "0"}, {"beta", "2"}, {"p", "2"}, {"r", "4"},
        {"rho", "2"}, {"s", "1"}, {"sigma", "1/4"}, {"tau", "2"}, {"u", "2"}, {"v", "4"}},
       "B",
       V::admissible,
       {cond("balance", "0"), derived("theta", "1/2")},
       {{"delta", "r"}, {"delta1", "r"}},
       false,
       true},
      {"T2i chain middle term zero",
       "T2i",
       {{"n", "1"}, {"alpha1", "0"}, {"alpha2", "0"}, {"alpha3", "0"}, {"beta", "2"}, {"p", "2"}, {"r", "2"},
        {"rho", "2"}, {"s", "1"}, {"sigma", "0"}, {"tau", "2"}, {"u", "2"}, {"v", "2"}},
       "B",
       V::boundary,
       {cond("chain_lower", "0"), cond("chain_upper", "1"), derived("theta", "0")},
       {},
       true},

      // CKN without the sigma term
      {"T21i tuple",
       "T21i",
       {{"n", "1"}, {"alpha1", "0"}, {"alpha2", "1/2"}, {"alpha3", "1"}, {"beta", "inf"}, {"p", "3/2"},
        {"r", "2"}, {"rho", "3"}, {"s", "3/2"}, {"tau", "2"}, {"u", "2"}, {"v", "4"}},
       "B",
       V::admissible,
       {cond("chain_upper", "1/12"), cond("chain_lower", "3/4"), derived("theta", "9/10")},
       {{"delta", "tau"}, {"delta1", "rho"}}},
      {"T21ii unweighted tuple with w = 12",
       "T21ii",
       {{"n", "1"}, {"alpha1", "0"}, {"alpha2", "0"}, {"alpha3", "0"}, {"beta", "3"}, {"p", "3"}, {"r", "4"},
        {"rho", "3"}, {"s", "1/4"}, {"tau", "4"}, {"u", "1"}, {"v", "2"}},
       "B",
       V::admissible,
       {cond("r_window", "1/4"), cond("alpha1_avg", "0"), cond("p_lt_n_over_s", "1/12"), derived("theta", "6/11"),
        derived("w", "12")},
       {{"rho", "w"}},
       false,
       true},
      {"T21i with u = v makes theta vanish",
       "T21i",
       {{"n", "1"}, {"alpha1", "0"}, {"alpha2", "0"}, {"alpha3", "0"}, {"beta", "2"}, {"p", "2"}, {"r", "2"},
        {"rho", "2"}, {"s", "1"}, {"tau", "2"}, {"u", "2"}, {"v", "2"}},
       "B",
       V::boundary,
       {cond("chain_lower", "0"), cond("theta_pos", "0")},
       {},
       true},

      // CKN with min(p,u) <= v <= max(p,u)
      {"T3i F-type tuple",
       "T3i",
       {{"n", "1"}, {"alpha1", "-1/4"}, {"alpha2", "1/2"}, {"alpha3", "1/2"}, {"beta", "4"}, {"p", "3/2"},
        {"r", "4"}, {"rho", "3/2"}, {"s", "1"}, {"sigma", "0"}, {"tau", "1"}, {"u", "3"}, {"v", "3/2"}},
       "F",
       V::admissible,
       {cond("chain_upper", "1/4"), cond("chain_lower", "5/12"), cond("alpha21_gap", "5/12"),
        derived("theta", "5/8"), derived("sigma_p_beta", "0")}},
      {"T3ii with theta = 1",
       "T3ii",
       {{"n", "1"}, {"alpha1", "-1/4"}, {"alpha2", "1/2"}, {"alpha3", "3/4"}, {"beta", "4"}, {"p", "3/2"},
        {"r", "4"}, {"rho", "3/2"}, {"s", "1"}, {"sigma", "0"}, {"tau", "1"}, {"u", "3"}, {"v", "3/2"}},
       "F",
       V::boundary,
       {cond("chain_upper", "0"), cond("theta_lt1", "0"), derived("theta", "1")},
       {},
       true},
      {"T3i needs alpha3 = alpha2",
       "T3i",
       {{"n", "1"}, {"alpha1", "-1/4"}, {"alpha2", "1/2"}, {"alpha3", "5/8"}, {"beta", "4"}, {"p", "3/2"},
        {"r", "4"}, {"rho", "3/2"}, {"s", "1"}, {"sigma", "0"}, {"tau", "1"}, {"u", "3"}, {"v", "3/2"}},
       "F",
       V::inadmissible,
       {cond("alpha3_eq_alpha2", "1/8")}},

      // CKN with v <= min(p,u)
      {"T4 tuple",
       "T4",
       {{"n", "1"}, {"alpha1", "-1/4"}, {"alpha2", "1/2"}, {"alpha3", "1/2"}, {"beta", "4"}, {"p", "3/2"},
        {"r", "4"}, {"rho", "3/2"}, {"s", "1"}, {"sigma", "0"}, {"tau", "1"}, {"u", "3"}, {"v", "3/2"}},
       "B",
       V::admissible,
       {cond("alpha21_gap", "5/12"), cond("v_le_p", "0"), derived("theta", "5/8")}},
      {"T4 with theta = 1",
       "T4",
       {{"n", "1"}, {"alpha1", "-1/4"}, {"alpha2", "1/2"}, {"alpha3", "3/4"}, {"beta", "4"}, {"p", "3/2"},
        {"r", "4"}, {"rho", "3/2"}, {"s", "1"}, {"sigma", "0"}, {"tau", "1"}, {"u", "3"}, {"v", "3/2"}},
       "B",
       V::boundary,
       {cond("chain_upper", "0"), derived("theta", "1")},
       {},
       true},
      {"T4 with v above p",
       "T4",
       {{"n", "1"}, {"alpha1", "-1/4"}, {"alpha2", "1/2"}, {"alpha3", "1/2"}, {"beta", "4"}, {"p", "3/2"},
        {"r", "4"}, {"rho", "3/2"}, {"s", "1"}, {"sigma", "0"}, {"tau", "1"}, {"u", "3"}, {"v", "2"}},
       "B",
       V::inadmissible,
       {cond("v_le_p", "-1/6")}},

      // CKN with unweighted smoothness on the left
      {"T5 tuple",
       "T5",
       {{"n", "1"}, {"alpha1", "-1/4"}, {"alpha2", "1/2"}, {"alpha3", "3/4"}, {"beta", "2"}, {"p", "2"},
        {"r", "4"}, {"rho", "3"}, {"s", "3/2"}, {"sigma", "0"}, {"tau", "2"}, {"u", "4"}, {"v", "2"}},
       "B",
       V::admissible,
       {cond("alpha21_gap", "1/2"), cond("chain_upper", "1/2"), derived("theta", "1/2")}},
      {"T5 needs sigma = 0",
       "T5",
       {{"n", "1"}, {"alpha1", "-1/4"}, {"alpha2", "1/2"}, {"alpha3", "3/4"}, {"beta", "2"}, {"p", "2"},
        {"r", "4"}, {"rho", "3"}, {"s", "3/2"}, {"sigma", "1/8"}, {"tau", "2"}, {"u", "4"}, {"v", "2"}},
       "B",
       V::inadmissible,
       {cond("sigma_zero", "1/8"), derived("theta", "5/8")}},
      {"T5 with theta = 1",
       "T5",
       {{"n", "1"}, {"alpha1", "-1/4"}, {"alpha2", "1/2"}, {"alpha3", "3/4"}, {"beta", "2"}, {"p", "2"},
        {"r", "4"}, {"rho", "3"}, {"s", "1"}, {"sigma", "0"}, {"tau", "2"}, {"u", "4"}, {"v", "2"}},
       "B",
       V::boundary,
       {cond("chain_upper", "0"), derived("theta", "1")},
       {},
       true},

      // Morrey CKN
      {"Morrey CKN tuple",
       "T12",
       {{"n", "1"}, {"beta", "2"}, {"delta", "4"}, {"mu", "3/2"}, {"p", "4"}, {"q", "3"}, {"s", "2"},
        {"sigma", "3/2"}, {"u", "3/2"}, {"v", "2"}},
       "",
       V::admissible,
       {cond("ratio_lo", "0"), cond("ratio_hi", "7/24"), cond("condition1", "5/12"), derived("theta", "18/23")}},
      {"Morrey CKN Lebesgue collapse",
       "T12",
       {{"n", "1"}, {"beta", "2"}, {"delta", "2"}, {"mu", "2"}, {"p", "2"}, {"q", "2"}, {"s", "1"},
        {"sigma", "1/2"}, {"u", "2"}, {"v", "2"}},
       "",
       V::admissible,
       {cond("condition1", "1/2"), derived("theta", "1/2")},
       {},
       false,
       true},
      {"Morrey CKN with s = sigma",
       "T12",
       {{"n", "1"}, {"beta", "2"}, {"delta", "2"}, {"mu", "2"}, {"p", "2"}, {"q", "2"}, {"s", "1"},
        {"sigma", "1"}, {"u", "2"}, {"v", "2"}},
       "",
       V::boundary,
       {cond("condition1", "0"), derived("theta", "1")},
       {},
       true},

      // Sobolev embedding of Morrey-type spaces
      {"Morrey Sobolev strict gap",
       "MSOB",
       {{"n", "1"}, {"s1", "1"}, {"s2", "0"}, {"p1", "2"}, {"p2", "4"}, {"u1", "2"}, {"u2", "4"}, {"q1", "2"},
        {"q2", "2"}},
       "",
       V::admissible,
       {cond("A_gap", "3/4"), cond("ratio", "0")}},
      {"Morrey Sobolev equal gap with p1 = p2",
       "MSOB",
       {{"n", "1"}, {"s1", "1"}, {"s2", "1"}, {"p1", "2"}, {"p2", "2"}, {"u1", "2"}, {"u2", "2"}, {"q1", "2"},
        {"q2", "2"}},
       "",
       V::inadmissible,
       {cond("B_gap", "0"), cond("B_p_distinct", "0")}},
      {"Morrey Sobolev ratio violated",
       "MSOB",
       {{"n", "1"}, {"s1", "1"}, {"s2", "0"}, {"p1", "2"}, {"p2", "4"}, {"u1", "1"}, {"u2", "4"}, {"q1", "2"},
        {"q2", "2"}},
       "",
       V::inadmissible,
       {cond("ratio", "-1/2")}},
      {"Morrey Sobolev equal gap with p1 < p2",
       "MSOB",
       {{"n", "1"}, {"s1", "1"}, {"s2", "3/4"}, {"p1", "2"}, {"p2", "4"}, {"u1", "2"}, {"u2", "4"}, {"q1", "2"},
        {"q2", "2"}},
       "",
       V::admissible,
       {cond("B_gap", "0"), cond("B_p_distinct", "1/4")},
       {},
       true},

      // band-limited Herz inequalities
      {"PPN1 unweighted",
       "PPN1",
       {{"n", "1"}, {"alpha1", "0"}, {"alpha2", "0"}, {"q", "1"}, {"s", "2"}, {"r", "2"}, {"tau", "2"}},
       "",
       V::admissible,
       {derived("exponent", "1/2")},
       {{"delta", "r"}},
       false,
       true},
      {"PPN2 on the weight edge",
       "PPN2",
       {{"n", "1"}, {"alpha1", "0"}, {"alpha2", "1/2"}, {"q", "2"}, {"s", "1"}, {"r", "2"}, {"tau", "2"}},
       "",
       V::admissible,
       {cond("alpha_order", "0"), derived("exponent", "0")},
       {{"delta", "r"}},
       true},
      {"PPN1 with q above s",
       "PPN1",
       {{"n", "1"}, {"alpha1", "0"}, {"alpha2", "0"}, {"q", "4"}, {"s", "2"}, {"r", "2"}, {"tau", "2"}},
       "",
       V::inadmissible,
       {cond("q_le_s", "-1/4")}},

      // Q_J smoothing
      {"QJi unweighted",
       "QJi",
       {{"n", "1"}, {"alpha1", "0"}, {"alpha2", "0"}, {"sigma", "1"}, {"r", "2"}, {"v", "2"}, {"u", "1"},
        {"tau", "2"}},
       "",
       V::admissible,
       {derived("exponent", "3/2")},
       {{"delta", "r"}},
       false,
       true},
      {"QJii on the weight edge",
       "QJii",
       {{"n", "1"}, {"alpha1", "0"}, {"alpha2", "1/4"}, {"sigma", "1"}, {"r", "2"}, {"v", "2"}, {"u", "4"},
        {"tau", "2"}},
       "",
       V::admissible,
       {cond("alpha_order", "0"), derived("exponent", "1")},
       {{"delta", "r"}},
       true},
      {"QJi with decreasing weights",
       "QJi",
       {{"n", "1"}, {"alpha1", "1/4"}, {"alpha2", "0"}, {"sigma", "1"}, {"r", "2"}, {"v", "2"}, {"u", "1"},
        {"tau", "2"}},
       "",
       V::inadmissible,
       {cond("alpha_order", "-1/4")}},

      // Hardy-Sobolev
      {"Hardy-Sobolev alpha = n/q - n/s - 1",
       "HS",
       {{"n", "1"}, {"q", "2"}, {"s", "4"}, {"alpha", "-3/4"}},
       "",
       V::admissible,
       {cond("alpha_value", "0"), cond("q_le_s", "1/4")}},
      {"Hardy-Sobolev wrong weight",
       "HS",
       {{"n", "1"}, {"q", "2"}, {"s", "4"}, {"alpha", "-1/2"}},
       "",
       V::inadmissible,
       {cond("alpha_value", "1/4")}},
      {"Hardy-Sobolev q = 1",
       "HS",
       {{"n", "1"}, {"q", "1"}, {"s", "2"}, {"alpha", "-1/2"}},
       "",
       V::inadmissible,
       {cond("q_gt1", "0"), cond("alpha_value", "0")},
       {},
       true},

      // classical weighted-Lebesgue CKN
      {"classical CKN balance",
       "CKN",
       {{"n", "1"}, {"a", "1/2"}, {"b", "1/2"}, {"c", "1/4"}, {"p", "1"}, {"q", "2"}, {"tau", "2"}, {"theta", "1/2"}},
       "",
       V::admissible,
       {cond("balance", "0")},
       {},
       false,
       true},
      {"classical CKN off balance",
       "CKN",
       {{"n", "1"}, {"a", "1/2"}, {"b", "1/2"}, {"c", "1/2"}, {"p", "1"}, {"q", "2"}, {"tau", "2"}, {"theta", "1/2"}},
       "",
       V::inadmissible,
       {cond("balance", "1/4")}},
      {"classical CKN at theta = 1",
       "CKN",
       {{"n", "1"}, {"a", "1/2"}, {"b", "1/2"}, {"c", "1/2"}, {"p", "1"}, {"q", "2"}, {"tau", "2"}, {"theta", "1"}},
       "",
       V::admissible,
       {cond("balance", "0"), cond("theta_le1", "0")},
       {},
       true},
  };
  return cases;
}

/// Theorem family used to count cases per theorem (CKN variants grouped by their statement).
inline std::string family_of(const std::string &theorem) {
  if (theorem.rfind("T21", 0) == 0)
    return "T21";
  if (theorem.rfind("T2", 0) == 0)
    return "T2";
  if (theorem.rfind("T3", 0) == 0)
    return "T3";
  if (theorem.rfind("PPN", 0) == 0)
    return "PPN";
  if (theorem.rfind("QJ", 0) == 0 && theorem != "QJM")
    return "QJ";
  return theorem;
}

} // namespace fsx::cases
