#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "fsx/fsx.hpp"

namespace {

using fsx::json;

json read_json_file(const std::string &path) {
  std::ifstream is(path);
  if (!is)
    throw fsx::FormatError("cannot open " + path);
  try {
    return json::parse(is);
  } catch (const json::parse_error &e) {
    throw fsx::FormatError(path + ": " + e.what());
  }
}

/// Accepts inline JSON text or a path to a JSON file.
json json_arg(const std::string &text) {
  if (!text.empty() && (text.front() == '{' || text.front() == '['))
    return json::parse(text);
  return read_json_file(text);
}

void write_text(const std::string &path, const std::string &text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw fsx::FormatError("cannot open " + path + " for writing");
  os << text;
}

double real_param(const json &j, const char *key, double dflt) {
  return j.contains(key) ? fsx::real_from_json(j.at(key)) : dflt;
}

double real_param(const json &j, const char *key) {
  if (!j.contains(key))
    throw fsx::ParameterError(std::string("missing parameter '") + key + "'");
  return fsx::real_from_json(j.at(key));
}

bool flag_param(const json &j, const char *key) {
  if (!j.contains(key))
    return false;
  const auto &v = j.at(key);
  if (v.is_boolean())
    return v.get<bool>();
  if (v.is_number())
    return v.get<double>() != 0.0;
  return v.get<std::string>() == "1" || v.get<std::string>() == "true";
}

fsx::HerzParams herz_params(const json &j) {
  return {real_param(j, "alpha", 0.0), real_param(j, "p"), real_param(j, "q")};
}

fsx::SmoothnessParams smooth_params(const json &j) { return {real_param(j, "s"), real_param(j, "beta", 2.0)}; }

int cmd_check(const std::string &experiment, const std::string &config, const std::string &out,
              const std::string &csv, int workers) {
  json cfg = read_json_file(config);
  if (!experiment.empty()) {
    if (cfg.contains("experiment") && cfg.at("experiment").get<std::string>() != experiment)
      throw fsx::SpecificationError("config names experiment '" + cfg.at("experiment").get<std::string>() +
                                    "' but --experiment is '" + experiment + "'");
    cfg["experiment"] = experiment;
  }
  fsx::Experiment e = fsx::experiment_from_json(cfg);
  if (workers > 0)
    e.workers = workers;
  fsx::InequalityReport r;
  try {
    r = fsx::run_experiment(e);
  } catch (const fsx::GateError &g) {
    json j{{"inequality_id", e.id}, {"error", g.what()}, {"certificate", fsx::certificate_to_json(g.certificate)}};
    write_text(out, j.dump(2) + "\n");
    std::cerr << g.what() << "\n";
    return 2;
  }
  write_text(out, fsx::emit_report(r, "json"));
  if (!csv.empty())
    write_text(csv, fsx::emit_report(r, "csv"));
  for (const auto &a : r.assertions)
    std::cerr << (a.passed ? "PASS " : "FAIL ") << a.name << ": " << a.detail << "\n";
  return r.passed() ? 0 : 1;
}

/// Cartesian product over {"params": {key: [values...]}, "options": {...}}.
int cmd_sweep(const std::string &theorem, const std::string &grid_path, const std::string &out) {
  const json grid = json_arg(grid_path);
  std::vector<std::pair<std::string, std::vector<fsx::Rational>>> axes;
  for (const auto &[k, vals] : grid.at("params").items()) {
    std::vector<fsx::Rational> v;
    if (vals.is_array())
      for (const auto &x : vals)
        v.push_back(fsx::rational_from_json(x));
    else
      v.push_back(fsx::rational_from_json(vals));
    if (v.empty())
      throw fsx::FormatError("sweep axis '" + k + "' is empty");
    axes.emplace_back(k, std::move(v));
  }
  std::map<std::string, std::string> options;
  if (grid.contains("options"))
    options = grid.at("options").get<std::map<std::string, std::string>>();
  json results = json::array();
  std::map<std::string, int> counts{{"admissible", 0}, {"boundary", 0}, {"inadmissible", 0}};
  std::vector<std::size_t> idx(axes.size(), 0);
  while (true) {
    fsx::ParamTuple P;
    for (std::size_t a = 0; a < axes.size(); ++a)
      P.set(axes[a].first, axes[a].second[idx[a]]);
    for (const auto &[k, v] : options)
      P.option(k, v);
    const fsx::Certificate c = fsx::check_theorem(theorem, P);
    ++counts[fsx::verdict_name(c.verdict)];
    json failed = json::array();
    for (const auto &k : c.conditions)
      if (k.evaluable && !k.satisfied)
        failed.push_back(k.id);
    results.push_back({{"params", fsx::params_to_json(P)}, {"verdict", fsx::verdict_name(c.verdict)}, {"failed", failed}});
    std::size_t a = 0;
    for (; a < axes.size(); ++a) {
      if (++idx[a] < axes[a].second.size())
        break;
      idx[a] = 0;
    }
    if (a == axes.size())
      break;
  }
  json j{{"theorem_id", theorem}, {"total", results.size()}, {"counts", counts}, {"results", results}};
  write_text(out, j.dump(2) + "\n");
  return 0;
}

int cmd_admissible(const std::string &theorem, const std::string &params) {
  const fsx::Certificate c = fsx::check_theorem(theorem, fsx::params_from_json(json_arg(params)));
  std::cout << fsx::certificate_to_json(c).dump(2) << "\n";
  return c.admissible() ? 0 : 1;
}

int cmd_norm(const std::string &space, const std::string &params, const std::string &input, int M, bool as_json) {
  const json j = params.empty() ? json::object() : json_arg(params);
  const fsx::SampledFunction f = fsx::load_fsx(input);
  const auto sys = fsx::DyadicSystem::make(f.grid);
  const bool hom = flag_param(j, "homogeneous");
  fsx::DifferenceConfig dc;
  dc.M = M;
  fsx::NormValue v;
  if (space == "lebesgue")
    v = fsx::lebesgue_norm(f, real_param(j, "p"));
  else if (space == "herz")
    v = fsx::herz_norm(f, herz_params(j));
  else if (space == "wlp")
    v = fsx::weighted_lp_norm(f, real_param(j, "alpha", 0.0), real_param(j, "p"));
  else if (space == "morrey")
    v = fsx::morrey_norm(f, {real_param(j, "u"), real_param(j, "p")});
  else if (space == "kb")
    v = fsx::herz_besov_norm(f, herz_params(j), smooth_params(j), sys, hom);
  else if (space == "kf")
    v = fsx::herz_tl_norm(f, herz_params(j), smooth_params(j), sys, hom);
  else if (space == "nm")
    v = fsx::besov_morrey_norm(f, {real_param(j, "u"), real_param(j, "p")}, smooth_params(j), sys, hom);
  else if (space == "em")
    v = fsx::tl_morrey_norm(f, {real_param(j, "u"), real_param(j, "p")}, smooth_params(j), sys, hom);
  else if (space == "bessel")
    v = fsx::bessel_potential_norm(f, herz_params(j), real_param(j, "s"));
  else if (space == "sobolev")
    v = fsx::sobolev_herz_norm(f, herz_params(j), int(real_param(j, "m")));
  else if (space == "kb-diff")
    v = fsx::besov_diff_norm(f, herz_params(j), smooth_params(j), dc);
  else if (space == "kf-diff")
    v = fsx::tl_diff_norm(f, herz_params(j), smooth_params(j), dc);
  else if (space == "kb-supdiff")
    v = fsx::besov_supdiff_norm(f, herz_params(j), smooth_params(j), dc);
  else
    throw fsx::SpecificationError("unknown space '" + space + "'");
  if (as_json) {
    json out{{"space", space}, {"value", v.value}, {"truncation_diag", v.truncation_diag}, {"warnings", v.warnings}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::printf("%.17g\n", v.value);
    for (const auto &w : v.warnings)
      std::cerr << "warning: " << w << "\n";
  }
  return 0;
}

int cmd_decompose(const std::string &input, const std::string &out_dir, bool homogeneous) {
  const fsx::SampledFunction f = fsx::load_fsx(input);
  const auto sys = fsx::DyadicSystem::make(f.grid);
  const auto blocks = fsx::lp_blocks(sys, f, homogeneous);
  const int j0 = sys.j_lo(homogeneous);
  if (!out_dir.empty())
    std::filesystem::create_directories(out_dir);
  json rows = json::array();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const int j = j0 + int(b);
    const double e = fsx::lebesgue_norm(blocks[b], 2.0).value;
    json row{{"j", j}, {"l2_energy", e * e}};
    if (!out_dir.empty()) {
      const std::string path = (std::filesystem::path(out_dir) / ("block_" + std::to_string(j) + ".fsx")).string();
      fsx::save_fsx(path, blocks[b]);
      row["file"] = path;
    }
    rows.push_back(row);
  }
  json out{{"grid", {{"dim", f.grid.dim}, {"K", f.grid.K}, {"N", f.grid.N}}},
           {"homogeneous", homogeneous},
           {"blocks", rows}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_corpus_list() {
  for (const auto &tf : fsx::standard_corpus())
    std::cout << tf.id() << "\n";
  return 0;
}

int cmd_corpus_render(const std::string &kind, const std::string &params, int dim, int K, int N,
                      const std::string &out) {
  json spec{{"kind", kind}};
  if (!params.empty()) {
    json p = json_arg(params);
    for (const char *k : {"coeffs", "bins"})
      if (p.contains(k)) {
        spec[k] = p.at(k);
        p.erase(k);
      }
    spec["params"] = p;
  }
  const fsx::TestFunction tf = fsx::test_function_from_json(spec);
  const fsx::Grid g = N == 0 ? fsx::Grid::default_for(dim) : fsx::Grid::make(dim, K, N);
  fsx::save_fsx(out, fsx::render(tf, g));
  std::cerr << tf.id() << " on " << g.describe() << " -> " << out << "\n";
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"fsx: function-space quasi-norms, admissibility certificates and inequality experiments"};
  app.require_subcommand(1);

  std::string experiment, config, out, csv, theorem, grid, params, space, input, out_dir, kind;
  int workers = 0, M = 2, dim = 1, K = 0, N = 0;
  bool as_json = false, homogeneous = false;

  auto *check = app.add_subcommand("check", "run an inequality experiment and write its report");
  check->add_option("--experiment", experiment, "experiment id (defaults to the config's)");
  check->add_option("--config", config, "experiment config JSON")->required();
  check->add_option("--out", out, "report JSON path ('-' for stdout)")->default_val("-");
  check->add_option("--csv", csv, "also write the CSV rows here");
  check->add_option("--workers", workers, "worker threads (overrides the config)");

  auto *sweep = app.add_subcommand("sweep", "admissibility over a rational parameter grid");
  sweep->add_option("--theorem", theorem)->required();
  sweep->add_option("--grid", grid, "grid JSON file or inline JSON")->required();
  sweep->add_option("--out", out)->default_val("-");

  auto *adm = app.add_subcommand("admissible", "print the admissibility certificate");
  adm->add_option("--theorem", theorem)->required();
  adm->add_option("--params", params, "parameter JSON (inline or file)")->required();

  auto *norm = app.add_subcommand("norm", "evaluate one quasi-norm of an FSX1 grid function");
  norm->add_option("--space", space)->required()->check(CLI::IsMember(
      {"lebesgue", "herz", "wlp", "morrey", "kb", "kf", "nm", "em", "bessel", "sobolev", "kb-diff", "kf-diff",
       "kb-supdiff"}));
  norm->add_option("--params", params, "parameter JSON (inline or file)");
  norm->add_option("--input", input)->required();
  norm->add_option("--M", M, "difference order for the *-diff spaces")->default_val(2);
  norm->add_flag("--json", as_json);

  auto *dec = app.add_subcommand("decompose", "Littlewood-Paley blocks of an FSX1 grid function");
  dec->add_option("--input", input)->required();
  dec->add_option("--out-dir", out_dir, "write block_<j>.fsx files here");
  dec->add_flag("--homogeneous", homogeneous);

  auto *corpus = app.add_subcommand("corpus", "test-function corpus");
  corpus->require_subcommand(1);
  auto *clist = corpus->add_subcommand("list", "identifiers of the standard corpus");
  auto *crender = corpus->add_subcommand("render", "sample one test function to an FSX1 file");
  crender->add_option("--kind", kind)->required();
  crender->add_option("--params", params, "parameter JSON, e.g. '{\"a\":\"1\"}'");
  crender->add_option("--dim", dim)->default_val(1);
  crender->add_option("--K", K)->default_val(0);
  crender->add_option("--N", N, "0 selects the default grid")->default_val(0);
  crender->add_option("--out", out)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed())
      return cmd_check(experiment, config, out, csv, workers);
    if (sweep->parsed())
      return cmd_sweep(theorem, grid, out);
    if (adm->parsed())
      return cmd_admissible(theorem, params);
    if (norm->parsed())
      return cmd_norm(space, params, input, M, as_json);
    if (dec->parsed())
      return cmd_decompose(input, out_dir, homogeneous);
    if (clist->parsed())
      return cmd_corpus_list();
    if (crender->parsed())
      return cmd_corpus_render(kind, params, dim, K, N, out);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
