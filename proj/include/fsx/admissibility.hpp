#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fsx/errors.hpp"
#include "fsx/rational.hpp"

namespace fsx {

/// Named exact parameters plus string-valued options such as the space kind ("B" or "F").
struct ParamTuple {
  std::map<std::string, Rational> values;
  std::map<std::string, std::string> options;

  ParamTuple &set(const std::string &k, const Rational &v) {
    values[k] = v;
    return *this;
  }
  ParamTuple &set(const std::string &k, const std::string &v) {
    values[k] = Rational::parse(v);
    return *this;
  }
  ParamTuple &option(const std::string &k, const std::string &v) {
    options[k] = v;
    return *this;
  }
  bool has(const std::string &k) const { return values.count(k) != 0; }
  const Rational &get(const std::string &k) const {
    auto it = values.find(k);
    if (it == values.end())
      throw SpecificationError("missing parameter '" + k + "'");
    return it->second;
  }
  std::optional<Rational> find(const std::string &k) const {
    auto it = values.find(k);
    if (it == values.end())
      return std::nullopt;
    return it->second;
  }
  std::string kind() const {
    auto it = options.find("kind");
    return it == options.end() ? "B" : it->second;
  }
};

enum class Relation { gt, ge, eq, ne };

inline const char *relation_symbol(Relation r) {
  switch (r) {
  case Relation::gt:
    return ">";
  case Relation::ge:
    return ">=";
  case Relation::eq:
    return "=";
  case Relation::ne:
    return "!=";
  }
  return "?";
}

inline bool relation_holds(Relation rel, const Rational &x) {
  switch (rel) {
  case Relation::gt:
    return x.sign() > 0 && !x.is_zero();
  case Relation::ge:
    return x.sign() >= 0;
  case Relation::eq:
    return x.is_zero();
  case Relation::ne:
    return !x.is_zero();
  }
  return false;
}

/**
 * One transcribed hypothesis, stated as "residual REL 0".
 *
 * open_limit marks strict conditions whose equality case is an open limit case rather
 * than a known failure; equality there yields a boundary verdict. s_monotonicity is +1
 * when the residual is nondecreasing in the smoothness s, -1 when nonincreasing, 0 when
 * s does not enter or the dependence is not monotone.
 */
struct Condition {
  std::string id;
  std::string text;
  Relation rel = Relation::ge;
  Rational residual;
  bool evaluable = true;
  bool open_limit = false;
  int s_monotonicity = 0;
  std::string branch; // empty: always required
  bool satisfied = false;

  bool at_open_limit() const {
    return evaluable && open_limit && rel == Relation::gt && residual.is_zero();
  }
  bool operator==(const Condition &) const = default;
};

enum class Verdict { admissible, inadmissible, boundary };

inline const char *verdict_name(Verdict v) {
  switch (v) {
  case Verdict::admissible:
    return "admissible";
  case Verdict::inadmissible:
    return "inadmissible";
  case Verdict::boundary:
    return "boundary";
  }
  return "?";
}

struct Certificate {
  std::string theorem_id;
  Verdict verdict = Verdict::inadmissible;
  std::vector<Condition> conditions;
  std::map<std::string, Rational> derived;
  std::map<std::string, std::string> labels;
  std::vector<std::string> notes;
  std::vector<std::string> branches; // alternative hypothesis sets; one must hold

  const Condition &condition(const std::string &id) const {
    for (const auto &c : conditions)
      if (c.id == id)
        return c;
    throw SpecificationError("certificate has no condition '" + id + "'");
  }
  bool admissible() const { return verdict == Verdict::admissible; }
  bool operator==(const Certificate &) const = default;
};

namespace detail {

class CertBuilder {
public:
  CertBuilder(std::string id, const ParamTuple &p) : P(p) { c.theorem_id = std::move(id); }

  const ParamTuple &P;
  Certificate c;

  Rational g(const std::string &k) const { return P.get(k); }
  Rational n() const {
    Rational v = P.get("n");
    if (v.is_inf() || v.sign() <= 0 || v.denominator() != 1)
      throw SpecificationError("n must be a positive integer");
    return v;
  }
  // n / x with n / inf = 0
  Rational nover(const std::string &k) const { return n() * g(k).reciprocal(); }
  static Rational inv(const Rational &x) { return x.reciprocal(); }

  Condition &add(const std::string &id, const std::string &text, Relation rel, const Rational &residual,
                 bool open_limit = false, int s_mono = 0, const std::string &branch = "") {
    Condition k;
    k.id = id;
    k.text = text;
    k.rel = rel;
    k.residual = residual;
    k.open_limit = open_limit;
    k.s_monotonicity = s_mono;
    k.branch = branch;
    k.satisfied = relation_holds(rel, residual);
    if (!branch.empty() && std::find(c.branches.begin(), c.branches.end(), branch) == c.branches.end())
      c.branches.push_back(branch);
    c.conditions.push_back(k);
    return c.conditions.back();
  }

  Condition &skip(const std::string &id, const std::string &text, const std::string &why,
                  const std::string &branch = "") {
    Condition k;
    k.id = id;
    k.text = text + " [not evaluated: " + why + "]";
    k.evaluable = false;
    k.satisfied = false;
    k.branch = branch;
    c.conditions.push_back(k);
    return c.conditions.back();
  }

  void positive(const std::string &k) { add(k + "_pos", k + " > 0", Relation::gt, g(k)); }
  void finite(const std::string &k) { add(k + "_finite", k + " < inf", Relation::gt, inv(g(k))); }
  // lo < x (strict) for finite lo
  void greater(const std::string &id, const std::string &text, const Rational &x, const Rational &lo,
               bool strict = true, bool open = false, int mono = 0, const std::string &br = "") {
    add(id, text, strict ? Relation::gt : Relation::ge, x - lo, open, mono, br);
  }
  // a <= b between positive exponents, compared through 1/a - 1/b >= 0
  void exp_le(const std::string &id, const std::string &a, const std::string &b, bool strict = false,
              const std::string &br = "") {
    add(id, a + (strict ? " < " : " <= ") + b + "  (as 1/" + a + " - 1/" + b + ")",
        strict ? Relation::gt : Relation::ge, inv(g(a)) - inv(g(b)), false, 0, br);
  }

  Certificate finish() {
    auto ok = [](const Condition &k) { return k.evaluable && k.satisfied; };
    auto relaxed = [](const Condition &k) { return k.evaluable && (k.satisfied || k.at_open_limit()); };
    auto all_in = [&](const std::string &branch, auto pred) {
      for (const auto &k : c.conditions)
        if (k.branch == branch && !pred(k))
          return false;
      return true;
    };
    auto holds = [&](auto pred) {
      if (!all_in("", pred))
        return false;
      if (c.branches.empty())
        return true;
      for (const auto &b : c.branches)
        if (all_in(b, pred))
          return true;
      return false;
    };
    if (holds(ok))
      c.verdict = Verdict::admissible;
    else if (holds(relaxed))
      c.verdict = Verdict::boundary;
    else
      c.verdict = Verdict::inadmissible;
    return c;
  }
};

inline Rational sigma_p_beta(const Rational &n, const Rational &p, const Rational &beta) {
  return n * rmax(rmax(p.reciprocal() - 1, beta.reciprocal() - 1), Rational(0));
}

inline Rational sigma_q(const Rational &n, const Rational &q) {
  return n * rmax(q.reciprocal() - 1, Rational(0));
}

} // namespace detail

/**
 * Embedding between Herz-type spaces of different integrability.
 * Keys: n, alpha1, alpha2, s1, s2, q (source inner), s (target inner), p, r, beta.
 * Option kind = "B" or "F".
 */
inline Certificate check_embedding(const ParamTuple &P) {
  detail::CertBuilder b("EMB", P);
  const Rational n = b.n();
  const Rational a1 = b.g("alpha1"), a2 = b.g("alpha2"), s1 = b.g("s1"), s2 = b.g("s2");
  const Rational ns = b.nover("s"), nq = b.nover("q");
  for (const char *k : {"s", "p", "q", "r", "beta"})
    b.positive(k);
  b.greater("alpha1_dom", "alpha1 > -n/s", a1 + ns, 0);
  b.greater("alpha2_dom", "alpha2 > -n/q", a2 + nq, 0);
  b.add("balance", "s1 - n/s - alpha1 = s2 - n/q - alpha2", Relation::eq, (s1 - ns - a1) - (s2 - nq - a2));
  b.exp_le("A_q_le_s", "q", "s", false, "A");
  b.greater("A_alpha", "alpha2 >= alpha1", a2, a1, false, false, 0, "A");
  b.exp_le("B_s_le_q", "s", "q", false, "B");
  b.greater("B_cond", "alpha2 + n/q >= alpha1 + n/s", a2 + nq, a1 + ns, false, false, 0, "B");
  const bool F = P.kind() == "F";
  if (F) {
    b.finite("q");
    b.finite("s");
    b.finite("p");
    b.exp_le("F_r_le_p", "r", "p");
  }
  const Rational q = b.g("q"), s = b.g("s");
  const bool s_le_q = s <= q, q_le_s = q <= s;
  const bool eq_branch = (s_le_q && a2 + nq == a1 + ns) || (q_le_s && a2 == a1);
  if (!F) {
    b.c.labels["theta_index"] = eq_branch ? "r" : "p";
    b.c.derived["theta"] = eq_branch ? b.g("r") : b.g("p");
  } else {
    const bool beta_branch = s_le_q && a2 + nq == a1 + ns && q.is_finite();
    b.c.labels["theta_index"] = beta_branch ? "beta" : "inf";
    b.c.derived["theta"] = beta_branch ? b.g("beta") : Rational::infinity();
  }
  return b.finish();
}

/// Franke-type embedding B into F. Keys as check_embedding; "beta" is the target fine index.
inline Certificate check_franke(const ParamTuple &P) {
  detail::CertBuilder b("FRANKE", P);
  const Rational a1 = b.g("alpha1"), a2 = b.g("alpha2"), s1 = b.g("s1"), s2 = b.g("s2");
  const Rational ns = b.nover("s"), nq = b.nover("q");
  for (const char *k : {"s", "p", "q", "beta"})
    b.positive(k);
  for (const char *k : {"s", "p", "q"})
    b.finite(k);
  b.greater("alpha1_dom", "alpha1 > -n/s", a1 + ns, 0);
  b.greater("alpha2_dom", "alpha2 > -n/q", a2 + nq, 0);
  b.add("balance", "s1 - n/s - alpha1 = s2 - n/q - alpha2", Relation::eq, (s1 - ns - a1) - (s2 - nq - a2));
  b.exp_le("A_q_lt_s", "q", "s", true, "A");
  b.greater("A_alpha", "alpha2 >= alpha1", a2, a1, false, false, 0, "A");
  b.exp_le("B_s_le_q", "s", "q", false, "B");
  b.greater("B_cond", "alpha2 + n/q > alpha1 + n/s", a2 + nq, a1 + ns, true, false, 0, "B");
  return b.finish();
}

/// Regular-distribution threshold s > max(sigma_q, alpha - alpha0). Keys: n, alpha, p, q, beta, s.
inline Certificate check_regularity(const ParamTuple &P) {
  detail::CertBuilder b("REG", P);
  const Rational n = b.n();
  const Rational q = b.g("q"), alpha = b.g("alpha"), s = b.g("s");
  for (const char *k : {"p", "q", "beta"})
    b.positive(k);
  const Rational nq = b.nover("q");
  b.greater("alpha_dom", "alpha > -n/q", alpha + nq, 0);
  const Rational sq = detail::sigma_q(n, q);
  const Rational a0 = n - nq;
  b.c.derived["sigma_q"] = sq;
  b.c.derived["alpha0"] = a0;
  b.greater("s_threshold", "s > max(sigma_q, alpha - alpha0)", s, rmax(sq, alpha - a0), true, true, +1);
  if (P.kind() == "F") {
    b.finite("p");
    b.finite("q");
  }
  return b.finish();
}

namespace detail {

/// A = s - n/p + n/u + a2 - a3 and B = sigma - n/v + a2 - a1 + n/u; balance reads B = theta * A.
struct CknAffine {
  Rational A, B;
};

inline CknAffine ckn_affine(const CertBuilder &b, const Rational &sigma) {
  const Rational a1 = b.g("alpha1"), a2 = b.g("alpha2"), a3 = b.g("alpha3"), s = b.g("s");
  return {s - b.nover("p") + b.nover("u") + a2 - a3, sigma - b.nover("v") + a2 - a1 + b.nover("u")};
}

/// Chain A > B > 0, theta from the balance, 0 < theta < 1. Returns theta if solvable.
inline std::optional<Rational> ckn_chain(CertBuilder &b, const Rational &sigma, const std::string &label) {
  const CknAffine ab = ckn_affine(b, sigma);
  b.add("chain_upper", label + ": s - n/p + n/u + a2 - a3 > sigma - n/v + a2 - a1 + n/u", Relation::gt,
        ab.A - ab.B, true, +1);
  b.add("chain_lower", label + ": sigma - n/v + a2 - a1 + n/u > 0", Relation::gt, ab.B, true, 0);
  b.add("balance_solvable", "coefficient of theta in the balance is nonzero", Relation::ne, ab.A);
  std::optional<Rational> theta;
  if (auto given = b.P.find("theta")) {
    theta = *given;
    b.add("balance", "sigma - n/v = -(1-theta) n/u + theta (s - n/p) + a1 - ((1-theta) a2 + theta a3)",
          Relation::eq, ab.B - *theta * ab.A);
  } else if (!ab.A.is_zero()) {
    theta = ab.B / ab.A;
    b.add("balance", "balance with solved theta (back-substitution)", Relation::eq, ab.B - *theta * ab.A);
  } else {
    b.skip("balance", "balance equation", "theta not solvable");
  }
  if (theta) {
    b.c.derived["theta"] = *theta;
    b.add("theta_pos", "theta > 0", Relation::gt, *theta, true);
    b.add("theta_lt1", "theta < 1", Relation::gt, Rational(1) - *theta, true);
  } else {
    b.skip("theta_pos", "theta > 0", "theta not solvable");
    b.skip("theta_lt1", "theta < 1", "theta not solvable");
  }
  return theta;
}

inline void f_case(CertBuilder &b, bool always = false) {
  if (b.P.kind() != "F" && !always)
    return;
  b.finite("p");
  b.finite("tau");
  const Rational sp = sigma_p_beta(b.n(), b.g("p"), b.g("beta"));
  b.c.derived["sigma_p_beta"] = sp;
  b.greater("F_smoothness", "s > sigma_{p,beta}", b.g("s"), sp, true, false, +1);
}

inline void alpha_window(CertBuilder &b, const std::string &a, const std::string &e) {
  const Rational x = b.g(a), ne = b.nover(e);
  b.greater(a + "_lo", a + " > -n/" + e, x + ne, 0);
  b.greater(a + "_hi", a + " < n - n/" + e, b.n() - ne, x);
}

inline void lebesgue_range(CertBuilder &b, const std::string &k, const Rational &lo, bool strict_lo) {
  b.greater(k + "_lo", k + (strict_lo ? " > " : " >= ") + lo.str(), b.g(k), lo, strict_lo);
  b.finite(k);
}

/// mu(sigma), varpi(sigma), t and lambda for the (iii) variants; 1/r = (1-lambda)/mu + lambda/varpi.
inline void mixed_lambda(CertBuilder &b, const Rational &theta, const Rational &sigma) {
  const Rational n = b.n();
  const Rational a1 = b.g("alpha1"), a2 = b.g("alpha2"), a3 = b.g("alpha3"), s = b.g("s");
  const Rational base = (Rational(1) - theta) * b.nover("u") + theta * (b.nover("p") - s + sigma / theta);
  const Rational n_mu = base - theta * (a2 - a3);
  const Rational n_varpi = base;
  b.c.derived["n_over_mu"] = n_mu;
  b.c.derived["n_over_varpi"] = n_varpi;
  const Rational t = (Rational(1) - theta) * a2 + theta * a3;
  b.c.derived["t"] = t;
  b.c.notes.push_back("t = (1-theta) alpha2 + theta alpha3");
  b.add("mu_pos", "n/mu(sigma) > 0", Relation::gt, n_mu);
  b.add("varpi_pos", "n/varpi(sigma) > 0", Relation::gt, n_varpi);
  b.add("alpha2_mu", "alpha2 > -n/mu(sigma)", Relation::gt, a2 + n_mu);
  b.add("lambda_solvable", "theta (alpha2 - alpha3) != 0", Relation::ne, theta * (a2 - a3));
  if (a2 == a3 || theta.is_zero()) {
    b.skip("lambda_pos", "0 < lambda", "theta (alpha2 - alpha3) = 0");
    b.skip("lambda_lt1", "lambda < 1", "theta (alpha2 - alpha3) = 0");
    return;
  }
  const Rational lambda = Rational(1) - (a1 - t) / (theta * (a2 - a3));
  b.c.derived["lambda"] = lambda;
  b.add("lambda_backsub", "alpha1 - t = (1-lambda) theta (alpha2 - alpha3)", Relation::eq,
        (a1 - t) - (Rational(1) - lambda) * theta * (a2 - a3));
  b.add("lambda_pos", "lambda > 0", Relation::gt, lambda, true);
  b.add("lambda_lt1", "lambda < 1", Relation::gt, Rational(1) - lambda, true);
  if (n_mu.sign() > 0 && n_varpi.sign() > 0) {
    const Rational inv_r = ((Rational(1) - lambda) * n_mu + lambda * n_varpi) / n;
    b.c.derived["inv_r"] = inv_r;
    if (auto r = b.P.find("r"))
      b.add("r_relation", "1/r = (1-lambda)/mu(sigma) + lambda/varpi(sigma)", Relation::eq,
            r->reciprocal() - inv_r);
  }
}

} // namespace detail

/// Variant ids accepted by check_ckn.
inline const std::vector<std::string> &ckn_variants() {
  static const std::vector<std::string> v{"T2i",  "T2ii", "T2iii", "T21i", "T21ii", "T21iii",
                                          "T3i",  "T3ii", "T3iii", "T4",   "T5"};
  return v;
}

/**
 * Caffarelli-Kohn-Nirenberg-type hypothesis systems.
 * Keys: n, alpha1, alpha2, alpha3, p, u, v, r, tau, beta, rho, s, sigma, optional theta.
 * Option kind = "B" or "F".
 */
inline Certificate check_ckn(const std::string &variant, const ParamTuple &P) {
  const auto &vs = ckn_variants();
  if (std::find(vs.begin(), vs.end(), variant) == vs.end())
    throw SpecificationError("unknown CKN variant '" + variant + "'");
  detail::CertBuilder b(variant, P);
  using detail::alpha_window;
  using detail::lebesgue_range;
  const Rational n = b.n();
  const Rational a1 = b.g("alpha1"), a2 = b.g("alpha2"), a3 = b.g("alpha3");
  const Rational s = b.g("s");
  const bool T21 = variant.rfind("T21", 0) == 0;
  const Rational sigma = T21 ? Rational(0) : b.g("sigma");
  if (!T21)
    b.greater("sigma_nonneg", "sigma >= 0", sigma, 0, false);
  b.positive("p");
  b.positive("tau");
  b.positive("beta");

  if (variant.rfind("T2", 0) == 0) {
    lebesgue_range(b, "r", 1, true);
    lebesgue_range(b, "v", 1, true);
    lebesgue_range(b, "u", 1, false);
    const auto theta = detail::ckn_chain(b, sigma, T21 ? "chain" : "cond1");
    detail::f_case(b);
    if (!T21) {
      alpha_window(b, "alpha1", "v");
      alpha_window(b, "alpha2", "u");
      b.greater("alpha3_dom", "alpha3 > -n/p", a3 + b.nover("p"), 0);
      b.exp_le("v_ge_p", "p", "v");
      b.exp_le("v_ge_u", "u", "v");
    }
    const std::string tail = variant.substr(T21 ? 3 : 2);
    if (tail == "i") {
      b.greater("alpha_order12", "alpha1 <= alpha2", a2, a1, false);
      b.greater("alpha_order23", "alpha2 <= alpha3", a3, a2, false);
      if (T21) {
        b.exp_le("v_ge_p", "p", "v");
        b.exp_le("v_ge_u", "u", "v");
        b.greater("alpha1_dom", "alpha1 > -n/v", a1 + b.nover("v"), 0);
        b.greater("alpha2_dom", "alpha2 > -n/u", a2 + b.nover("u"), 0);
        b.greater("alpha3_dom", "alpha3 > -n/p", a3 + b.nover("p"), 0);
      }
      b.c.labels["delta"] = a2 == a1 ? "r" : "tau";
      b.c.labels["delta1"] = a3 == a1 ? "r" : "rho";
    } else if (tail == "ii") {
      if (!theta) {
        b.skip("r_window", "Hoelder window for r", "theta not solvable");
        b.skip("alpha1_avg", "alpha1 = (1-theta) alpha2 + theta alpha3", "theta not solvable");
      } else if (T21) {
        const Rational th = *theta;
        b.greater("p_lt_n_over_s", "0 < p < n/s  (as n/p - s > 0)", b.nover("p") - s, 0, true, false, -1);
        alpha_window(b, "alpha3", "p");
        b.add("r_window", "n/r <= (1-theta) n/u + theta (n/p - s)", Relation::ge,
              (Rational(1) - th) * b.nover("u") + th * (b.nover("p") - s) - b.nover("r"));
        b.add("alpha1_avg", "alpha1 = (1-theta) alpha2 + theta alpha3", Relation::eq,
              a1 - ((Rational(1) - th) * a2 + th * a3));
        if ((b.nover("p") - s).sign() > 0) {
          b.c.derived["w"] = n / (b.nover("p") - s);
          b.c.labels["rho"] = P.kind() == "F" ? "inf" : "w";
        }
      } else {
        const Rational th = *theta;
        b.add("r_window", "1/r <= (1-theta) n/u + theta n/p", Relation::ge,
              (Rational(1) - th) * b.nover("u") + th * b.nover("p") - b.g("r").reciprocal());
        b.add("alpha1_avg", "alpha1 = (1-theta) alpha2 + theta alpha3", Relation::eq,
              a1 - ((Rational(1) - th) * a2 + th * a3));
      }
    } else { // iii
      if (!theta) {
        b.skip("lambda_pos", "0 < lambda", "theta not solvable");
      } else {
        const Rational th = *theta;
        const Rational t = (Rational(1) - th) * a2 + th * a3;
        if (T21) {
          b.greater("p_lt_n_over_s", "0 < p < n/s  (as n/p - s > 0)", b.nover("p") - s, 0, true, false, -1);
          alpha_window(b, "alpha3", "p");
        } else {
          b.greater("alpha_mix_lo", "alpha2 < alpha1", a1, a2, true);
          b.greater("alpha_mix_hi", "alpha1 < (1-theta) alpha2 + theta alpha3", t, a1, true);
          b.c.notes.push_back("the space F_{inf,M}^0 is read as F_inf^0");
        }
        detail::mixed_lambda(b, th, sigma);
        auto it = b.c.derived.find("n_over_mu");
        const Rational inv_mu = it->second / n;
        if (T21) {
          b.add("mu_gt_p", "mu(0) > p  (as 1/p - 1/mu)", Relation::gt, b.g("p").reciprocal() - inv_mu);
        } else {
          b.add("mu_ge_u", "mu(sigma) >= u  (as 1/u - 1/mu)", Relation::ge, b.g("u").reciprocal() - inv_mu);
          b.add("mu_ge_p", "mu(sigma) >= p  (as 1/p - 1/mu)", Relation::ge, b.g("p").reciprocal() - inv_mu);
        }
      }
    }
  } else if (variant.rfind("T3", 0) == 0) {
    b.finite("p");
    b.finite("tau");
    lebesgue_range(b, "r", 1, true);
    lebesgue_range(b, "v", 1, true);
    lebesgue_range(b, "u", 1, false);
    alpha_window(b, "alpha1", "v");
    b.greater("alpha2_dom", "alpha2 > -n/u", a2 + b.nover("u"), 0);
    b.greater("alpha3_dom", "alpha3 > -n/p", a3 + b.nover("p"), 0);
    detail::ckn_chain(b, sigma, "chain");
    detail::f_case(b, true);
    const std::string tail = variant.substr(2);
    if (tail == "i" || tail == "ii") {
      b.exp_le("p_le_v", "p", "v");
      b.exp_le("v_lt_u", "v", "u", true);
      b.greater("alpha21_gap", "alpha2 - alpha1 > n/v - n/u", a2 - a1, b.nover("v") - b.nover("u"), true);
      if (tail == "i")
        b.add("alpha3_eq_alpha2", "alpha3 = alpha2", Relation::eq, a3 - a2);
      else
        b.greater("alpha3_gt_alpha2", "alpha3 > alpha2", a3, a2, true);
    } else {
      b.exp_le("u_le_v", "u", "v");
      b.exp_le("v_lt_p", "v", "p", true);
      b.greater("alpha31_gap", "alpha3 - alpha1 >= n/v - n/p", a3 - a1, b.nover("v") - b.nover("p"), false);
      alpha_window(b, "alpha2", "u");
      b.greater("alpha2_ge_alpha3", "alpha2 >= alpha3", a2, a3, false);
      b.c.labels["delta"] = (a3 - a1 == b.nover("v") - b.nover("p")) ? "r" : "tau";
    }
  } else { // T4, T5
    lebesgue_range(b, "r", 1, true);
    b.greater("v_lo", "v > 1", b.g("v"), 1, true);
    b.exp_le("v_le_p", "v", "p");
    b.exp_le("v_le_u", "v", "u");
    const Rational n_max = rmin(b.nover("p"), b.nover("u"));
    b.greater("alpha21_gap", "alpha2 - alpha1 > n/v - n/max(p,u)", a2 - a1, b.nover("v") - n_max, true);
    b.greater("alpha3_ge_alpha2", "alpha3 >= alpha2", a3, a2, false);
    alpha_window(b, "alpha1", "v");
    b.greater("alpha2_dom", "alpha2 > -n/u", a2 + b.nover("u"), 0);
    b.greater("alpha3_dom", "alpha3 > -n/p", a3 + b.nover("p"), 0);
    detail::ckn_chain(b, sigma, "case1");
    detail::f_case(b);
    if (variant == "T5")
      b.add("sigma_zero", "sigma = 0 (unweighted-smoothness left side)", Relation::eq, sigma);
  }
  return b.finish();
}

/**
 * Morrey-space CKN inequality hypotheses.
 * Keys: n, u, p, mu, delta, v, q, s, sigma, beta, optional theta.
 */
inline Certificate check_ckn_morrey(const ParamTuple &P) {
  detail::CertBuilder b("T12", P);
  const Rational n = b.n();
  const Rational u = b.g("u"), p = b.g("p"), mu = b.g("mu"), de = b.g("delta"), v = b.g("v"),
                 q = b.g("q"), s = b.g("s"), sigma = b.g("sigma");
  b.greater("u_gt1", "u > 1", u, 1, true);
  b.exp_le("u_le_p", "u", "p");
  b.finite("p");
  b.greater("mu_ge1", "mu >= 1", mu, 1, false);
  b.exp_le("mu_le_delta", "mu", "delta");
  b.finite("delta");
  b.positive("beta");
  b.greater("sigma_nonneg", "sigma >= 0", sigma, 0, false);
  b.positive("v");
  b.exp_le("v_le_q", "v", "q");
  b.finite("q");
  if (u.is_finite() && p.is_finite() && mu.is_finite() && de.is_finite() && v.is_finite() && q.is_finite()) {
    b.add("ratio_lo", "u/p <= mu/delta", Relation::ge, mu / de - u / p);
    b.add("ratio_hi", "mu/delta <= v/q", Relation::ge, v / q - mu / de);
  } else {
    b.skip("ratio_lo", "u/p <= mu/delta", "infinite index");
    b.skip("ratio_hi", "mu/delta <= v/q", "infinite index");
  }
  const Rational sv = detail::sigma_q(n, v);
  b.c.derived["sigma_v"] = sv;
  b.greater("s_gt_sigma_v", "s > sigma_v", s, sv, true, false, +1);
  b.exp_le("p_ge_q", "q", "p");
  b.exp_le("p_ge_delta", "delta", "p");
  const Rational np = n * p.reciprocal(), nq = n * q.reciprocal(), nd = n * de.reciprocal();
  b.add("condition1", "s - n/q > sigma - n/p", Relation::gt, (s - nq) - (sigma - np), true, +1);
  const Rational A = s - nq + nd, B = sigma - np + nd;
  b.add("balance_solvable", "s - n/q + n/delta != 0", Relation::ne, A);
  std::optional<Rational> theta = P.find("theta");
  if (!theta && !A.is_zero())
    theta = B / A;
  if (theta) {
    b.c.derived["theta"] = *theta;
    b.add("balance", "sigma - n/p = -(1-theta) n/delta + theta (s - n/q)", Relation::eq, B - *theta * A);
    b.add("theta_pos", "theta > 0", Relation::gt, *theta, true);
    b.add("theta_lt1", "theta < 1", Relation::gt, Rational(1) - *theta, true);
  } else {
    b.skip("balance", "balance equation", "theta not solvable");
  }
  b.c.labels["estimate"] = sigma.is_zero() ? "Morrey left side (sigma = 0)" : "E-space left side (sigma > 0)";
  return b.finish();
}

/// Sobolev embedding between Triebel-Lizorkin-Morrey spaces (necessary and sufficient).
/// Keys: n, s1, s2, p1, p2, u1, u2, q1, q2.
inline Certificate check_morrey_sobolev(const ParamTuple &P) {
  detail::CertBuilder b("MSOB", P);
  const Rational n = b.n();
  for (const char *k : {"q1", "q2", "u1", "u2"})
    b.positive(k);
  b.exp_le("u1_le_p1", "u1", "p1");
  b.exp_le("u2_le_p2", "u2", "p2");
  b.finite("p1");
  b.finite("p2");
  const Rational p1 = b.g("p1"), p2 = b.g("p2"), u1 = b.g("u1"), u2 = b.g("u2");
  b.exp_le("p1_le_p2", "p1", "p2");
  if (p1.is_finite() && p2.is_finite())
    b.add("ratio", "u2/p2 <= u1/p1", Relation::ge, u1 / p1 - u2 / p2);
  else
    b.skip("ratio", "u2/p2 <= u1/p1", "infinite index");
  const Rational gap = (b.g("s1") - n * p1.reciprocal()) - (b.g("s2") - n * p2.reciprocal());
  b.add("A_gap", "s1 - n/p1 > s2 - n/p2", Relation::gt, gap, false, 0, "A");
  b.add("B_gap", "s1 - n/p1 = s2 - n/p2", Relation::eq, gap, false, 0, "B");
  b.add("B_p_distinct", "p1 != p2", Relation::ne, p1.reciprocal() - p2.reciprocal(), false, 0, "B");
  return b.finish();
}

/// Band-limited Herz inequalities. id "PPN1" (q <= s) or "PPN2" (s <= q). Keys: n, alpha1, alpha2, q, s, r, tau.
inline Certificate check_ppn(const std::string &id, const ParamTuple &P) {
  if (id != "PPN1" && id != "PPN2")
    throw SpecificationError("unknown band-limited lemma '" + id + "'");
  detail::CertBuilder b(id, P);
  const Rational a1 = b.g("alpha1"), a2 = b.g("alpha2");
  const Rational ns = b.nover("s"), nq = b.nover("q");
  for (const char *k : {"q", "s", "r", "tau"})
    b.positive(k);
  b.greater("alpha1_dom", "alpha1 + n/s > 0", a1 + ns, 0);
  Rational edge;
  if (id == "PPN1") {
    b.exp_le("q_le_s", "q", "s");
    edge = a1;
    b.greater("alpha_order", "alpha2 >= alpha1", a2, a1, false);
  } else {
    b.exp_le("s_le_q", "s", "q");
    edge = a1 + ns - nq;
    b.greater("alpha_order", "alpha2 >= alpha1 + n/s - n/q", a2, edge, false);
  }
  b.c.derived["exponent"] = nq - ns + a2 - a1;
  b.c.labels["delta"] = a2 == edge ? "r" : "tau";
  return b.finish();
}

/// Q_J smoothing in Herz spaces. id "QJi" (u <= v) or "QJii" (v <= u).
/// Keys: n, alpha1, alpha2, sigma, r, v, u, tau.
inline Certificate check_qj(const std::string &id, const ParamTuple &P) {
  if (id != "QJi" && id != "QJii")
    throw SpecificationError("unknown smoothing variant '" + id + "'");
  detail::CertBuilder b(id, P);
  const Rational a1 = b.g("alpha1"), a2 = b.g("alpha2"), sigma = b.g("sigma");
  b.greater("sigma_nonneg", "sigma >= 0", sigma, 0, false);
  detail::lebesgue_range(b, "r", 1, true);
  detail::lebesgue_range(b, "v", 1, true);
  b.positive("u");
  b.positive("tau");
  detail::alpha_window(b, "alpha1", "v");
  if (id == "QJi") {
    b.greater("u_ge1", "u >= 1", b.g("u"), 1, false);
    b.exp_le("u_le_v", "u", "v");
    b.greater("alpha_order", "alpha2 >= alpha1", a2, a1, false);
    b.c.labels["delta"] = a2 == a1 ? "r" : "tau";
  } else {
    b.exp_le("v_le_u", "v", "u");
    const Rational edge = a1 + b.nover("v") - b.nover("u");
    b.greater("alpha_order", "alpha2 >= alpha1 + n/v - n/u", a2, edge, false);
    b.c.labels["delta"] = a2 == edge ? "r" : "tau";
  }
  b.c.derived["exponent"] = b.nover("u") - b.nover("v") + a2 - a1 + sigma;
  return b.finish();
}

/// Q_J smoothing in Morrey spaces. Keys: n, u, p, v, q, sigma.
inline Certificate check_qj_morrey(const ParamTuple &P) {
  detail::CertBuilder b("QJM", P);
  b.greater("u_gt1", "u > 1", b.g("u"), 1, true);
  b.exp_le("u_le_p", "u", "p");
  b.finite("p");
  b.greater("v_gt1", "v > 1", b.g("v"), 1, true);
  b.exp_le("v_le_q", "v", "q");
  b.finite("q");
  b.exp_le("q_le_p", "q", "p");
  b.greater("sigma_nonneg", "sigma >= 0", b.g("sigma"), 0, false);
  const Rational u = b.g("u"), p = b.g("p"), v = b.g("v"), q = b.g("q");
  if (p.is_finite() && q.is_finite())
    b.add("ratio", "u/p <= v/q", Relation::ge, v / q - u / p);
  else
    b.skip("ratio", "u/p <= v/q", "infinite index");
  b.c.derived["exponent"] = b.nover("q") - b.nover("p") + b.g("sigma");
  b.c.notes.push_back("exponent read as J (n/q - n/p + sigma)");
  return b.finish();
}

/// Band-limited Morrey inequalities. id "PN1" or "PN2". Keys: n, u, p, s, q, and v for PN1.
inline Certificate check_pn(const std::string &id, const ParamTuple &P) {
  if (id != "PN1" && id != "PN2")
    throw SpecificationError("unknown Morrey band-limited lemma '" + id + "'");
  detail::CertBuilder b(id, P);
  const Rational n = b.n();
  b.greater("u_gt1", "u > 1", b.g("u"), 1, true);
  b.exp_le("u_le_p", "u", "p");
  b.finite("p");
  b.greater("s_gt1", "s > 1", b.g("s"), 1, true);
  b.exp_le("s_le_q", "s", "q");
  b.finite("q");
  const Rational u = b.g("u"), p = b.g("p"), s = b.g("s"), q = b.g("q");
  if (id == "PN1") {
    b.greater("v_gt1", "v > 1", b.g("v"), 1, true);
    b.exp_le("v_le_u", "v", "u");
    const Rational v = b.g("v");
    if (u.is_finite() && q.is_finite())
      b.c.derived["exponent"] = b.nover("q") - v * n / (q * u);
  } else {
    if (p.is_finite() && q.is_finite())
      b.add("ratio", "u/p <= s/q", Relation::ge, s / q - u / p);
    else
      b.skip("ratio", "u/p <= s/q", "infinite index");
    b.exp_le("q_le_p", "q", "p");
    b.c.derived["exponent"] = b.nover("q") - b.nover("p");
  }
  return b.finish();
}

/// Hardy-Sobolev corollary. Keys: n, q, s, alpha.
inline Certificate check_hardy_sobolev(const ParamTuple &P) {
  detail::CertBuilder b("HS", P);
  b.greater("q_gt1", "q > 1", b.g("q"), 1, true);
  b.exp_le("q_le_s", "q", "s");
  b.finite("s");
  b.add("alpha_value", "alpha = n/q - n/s - 1", Relation::eq,
        b.g("alpha") - (b.nover("q") - b.nover("s") - 1));
  return b.finish();
}

/// Weighted-Lebesgue CKN inequality: exponent ranges and the scaling balance.
/// Keys: n, a (gradient weight), b (weight on f), c (left weight), p, q, tau, theta.
inline Certificate check_ckn_classical(const ParamTuple &P) {
  detail::CertBuilder b("CKN", P);
  b.greater("p_ge1", "p >= 1", b.g("p"), 1, false);
  b.finite("p");
  b.greater("q_ge1", "q >= 1", b.g("q"), 1, false);
  b.finite("q");
  b.positive("tau");
  const Rational th = b.g("theta");
  b.greater("theta_ge0", "theta >= 0", th, 0, false);
  b.greater("theta_le1", "theta <= 1", Rational(1), th, false);
  const Rational lhs = b.g("c") + b.nover("tau");
  const Rational rhs = th * (b.g("b") + b.nover("q")) + (Rational(1) - th) * (b.g("a") - 1 + b.nover("p"));
  b.add("balance", "c + n/tau = theta (b + n/q) + (1-theta) (a - 1 + n/p)", Relation::eq, lhs - rhs);
  return b.finish();
}

/// Interpolation between two Herz-type bundles. Keys: theta, p0, p1, q0, q1, beta0, beta1.
inline Certificate check_interpolation(const ParamTuple &P) {
  detail::CertBuilder b("INTERP", P);
  const Rational th = b.g("theta");
  b.add("theta_pos", "theta > 0", Relation::gt, th);
  b.add("theta_lt1", "theta < 1", Relation::gt, Rational(1) - th);
  for (const char *k : {"p0", "p1", "q0", "q1", "beta0", "beta1"})
    if (P.has(k))
      b.positive(k);
  return b.finish();
}

/// Herz window 1 < q < inf, -n/q < alpha < n - n/q, p > 0, used by the Bessel and Riesz coincidences.
/// Keys: n, alpha, p, q, optional s (then s > 0 is required).
inline Certificate check_herz_window(const ParamTuple &P) {
  detail::CertBuilder b("HWIN", P);
  b.positive("p");
  detail::lebesgue_range(b, "q", 1, true);
  detail::alpha_window(b, "alpha", "q");
  if (P.has("s"))
    b.positive("s");
  return b.finish();
}

/// Positivity of the exponents only, for identities valid at every alpha. Keys: n, p, optional q.
inline Certificate check_exponents(const ParamTuple &P) {
  detail::CertBuilder b("LPOS", P);
  b.n();
  b.positive("p");
  if (P.has("q"))
    b.positive("q");
  return b.finish();
}

/// Morrey indices 0 < u <= p < inf and beta > 0. Keys: n, u, p, beta.
inline Certificate check_morrey_window(const ParamTuple &P) {
  detail::CertBuilder b("MWIN", P);
  b.n();
  b.positive("u");
  b.exp_le("u_le_p", "u", "p");
  b.finite("p");
  b.positive("beta");
  return b.finish();
}

/// Every theorem id the dispatcher accepts.
inline std::vector<std::string> theorem_ids() {
  std::vector<std::string> ids{"EMB", "FRANKE", "REG", "T12", "MSOB", "PPN1", "PPN2", "QJi",
                               "QJii", "QJM", "PN1", "PN2", "HS", "CKN", "INTERP", "HWIN", "LPOS", "MWIN"};
  for (const auto &v : ckn_variants())
    ids.push_back(v);
  return ids;
}

inline Certificate check_theorem(const std::string &id, const ParamTuple &P) {
  if (id == "EMB")
    return check_embedding(P);
  if (id == "FRANKE")
    return check_franke(P);
  if (id == "REG")
    return check_regularity(P);
  if (id == "T12")
    return check_ckn_morrey(P);
  if (id == "MSOB")
    return check_morrey_sobolev(P);
  if (id == "PPN1" || id == "PPN2")
    return check_ppn(id, P);
  if (id == "QJi" || id == "QJii")
    return check_qj(id, P);
  if (id == "QJM")
    return check_qj_morrey(P);
  if (id == "PN1" || id == "PN2")
    return check_pn(id, P);
  if (id == "HS")
    return check_hardy_sobolev(P);
  if (id == "CKN")
    return check_ckn_classical(P);
  if (id == "INTERP")
    return check_interpolation(P);
  if (id == "HWIN")
    return check_herz_window(P);
  if (id == "LPOS")
    return check_exponents(P);
  if (id == "MWIN")
    return check_morrey_window(P);
  return check_ckn(id, P);
}

} // namespace fsx
