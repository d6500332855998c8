#pragma once

#include <string>

#include "json.hpp"

#include "fsx/admissibility.hpp"
#include "fsx/corpus.hpp"
#include "fsx/rational.hpp"

namespace fsx {

using json = nlohmann::json;

/// Rationals travel as "num/den" strings; plain JSON numbers are read through their decimal text.
inline Rational rational_from_json(const json &j) {
  if (j.is_string())
    return Rational::parse(j.get<std::string>());
  if (j.is_number())
    return Rational::parse(j.dump());
  throw FormatError("expected a rational, got " + j.dump());
}

/// Reals may be given as decimal strings or JSON numbers; "inf" is accepted.
inline double real_from_json(const json &j) {
  if (j.is_number())
    return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf" || s == "infinity")
      return kInf;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception &) {
      throw FormatError("malformed real '" + s + "'");
    }
    if (used != s.size())
      throw FormatError("malformed real '" + s + "'");
    return v;
  }
  throw FormatError("expected a real, got " + j.dump());
}

/// {"n": 1, "alpha1": "-1/4", ..., "kind": "F"}; string-valued "kind" becomes an option.
inline ParamTuple params_from_json(const json &j) {
  if (!j.is_object())
    throw FormatError("parameters must be a JSON object");
  ParamTuple P;
  for (const auto &[k, v] : j.items()) {
    if (k == "kind") {
      P.option("kind", v.get<std::string>());
      continue;
    }
    if (k == "options") {
      for (const auto &[ok, ov] : v.items())
        P.option(ok, ov.get<std::string>());
      continue;
    }
    P.set(k, rational_from_json(v));
  }
  return P;
}

inline json params_to_json(const ParamTuple &P) {
  json j = json::object();
  for (const auto &[k, v] : P.values)
    j[k] = v.str();
  for (const auto &[k, v] : P.options)
    j[k] = v;
  return j;
}

inline Relation parse_relation(const std::string &s) {
  if (s == ">")
    return Relation::gt;
  if (s == ">=")
    return Relation::ge;
  if (s == "=")
    return Relation::eq;
  if (s == "!=")
    return Relation::ne;
  throw FormatError("unknown relation '" + s + "'");
}

inline Verdict parse_verdict(const std::string &s) {
  if (s == "admissible")
    return Verdict::admissible;
  if (s == "inadmissible")
    return Verdict::inadmissible;
  if (s == "boundary")
    return Verdict::boundary;
  throw FormatError("unknown verdict '" + s + "'");
}

inline json certificate_to_json(const Certificate &c) {
  json j;
  j["theorem_id"] = c.theorem_id;
  j["verdict"] = verdict_name(c.verdict);
  j["conditions"] = json::array();
  for (const auto &k : c.conditions) {
    json x;
    x["id"] = k.id;
    x["text"] = k.text;
    x["relation"] = relation_symbol(k.rel);
    x["residual"] = k.residual.str();
    x["satisfied"] = k.satisfied;
    x["evaluable"] = k.evaluable;
    x["open_limit"] = k.open_limit;
    x["s_monotonicity"] = k.s_monotonicity;
    x["branch"] = k.branch;
    j["conditions"].push_back(x);
  }
  j["derived"] = json::object();
  for (const auto &[k, v] : c.derived)
    j["derived"][k] = v.str();
  j["labels"] = c.labels;
  j["notes"] = c.notes;
  j["branches"] = c.branches;
  return j;
}

inline Certificate certificate_from_json(const json &j) {
  Certificate c;
  c.theorem_id = j.at("theorem_id").get<std::string>();
  c.verdict = parse_verdict(j.at("verdict").get<std::string>());
  for (const auto &x : j.at("conditions")) {
    Condition k;
    k.id = x.at("id").get<std::string>();
    k.text = x.at("text").get<std::string>();
    k.rel = parse_relation(x.at("relation").get<std::string>());
    k.residual = Rational::parse(x.at("residual").get<std::string>());
    k.satisfied = x.at("satisfied").get<bool>();
    k.evaluable = x.at("evaluable").get<bool>();
    k.open_limit = x.at("open_limit").get<bool>();
    k.s_monotonicity = x.at("s_monotonicity").get<int>();
    k.branch = x.at("branch").get<std::string>();
    c.conditions.push_back(k);
  }
  for (const auto &[k, v] : j.at("derived").items())
    c.derived[k] = Rational::parse(v.get<std::string>());
  c.labels = j.at("labels").get<std::map<std::string, std::string>>();
  c.notes = j.at("notes").get<std::vector<std::string>>();
  c.branches = j.at("branches").get<std::vector<std::string>>();
  return c;
}

/// {"kind": "gaussian", "params": {"a": "1"}, "coeffs": [...], "bins": [...]}
inline TestFunction test_function_from_json(const json &j) {
  TestFunction tf;
  tf.kind = parse_kind(j.at("kind").get<std::string>());
  if (j.contains("params"))
    for (const auto &[k, v] : j.at("params").items())
      tf.params[k] = real_from_json(v);
  if (j.contains("coeffs"))
    for (const auto &v : j.at("coeffs"))
      tf.coeffs.push_back(real_from_json(v));
  if (j.contains("bins"))
    tf.bins = j.at("bins").get<std::vector<int>>();
  return tf;
}

inline json test_function_to_json(const TestFunction &tf) {
  json j;
  j["kind"] = kind_name(tf.kind);
  j["params"] = json::object();
  for (const auto &[k, v] : tf.params)
    j["params"][k] = v;
  if (!tf.coeffs.empty())
    j["coeffs"] = tf.coeffs;
  if (!tf.bins.empty())
    j["bins"] = tf.bins;
  return j;
}

} // namespace fsx
