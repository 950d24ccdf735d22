// Command-line front end: theoretical constants and curves, single-path
// simulation, and the Monte Carlo experiment suite. Every run drops a
// manifest.json echoing the resolved configuration; identical configurations
// produce byte-identical outputs regardless of --threads.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "rhp/experiments.hpp"
#include "rhp/io.hpp"
#include "rhp/limits.hpp"
#include "rhp/parallel.hpp"
#include "rhp/renewal.hpp"
#include "rhp/simulate.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr const char* kVersion = "0.1.0";

double parse_number(const std::string& token) {
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (token.empty() || end != token.c_str() + token.size())
    throw std::invalid_argument("bad numeric value '" + token + "'");
  return v;
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const std::size_t comma = csv.find(',', pos);
    const std::size_t end = comma == std::string::npos ? csv.size() : comma;
    out.push_back(parse_number(csv.substr(pos, end - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string list_to_csv(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", xs[i]);
    if (i) s += ',';
    s += buf;
  }
  return s;
}

rhp::Engine parse_engine(const std::string& name) {
  if (name == "cluster") return rhp::Engine::Cluster;
  if (name == "thinning") return rhp::Engine::Thinning;
  throw std::invalid_argument("unknown engine '" + name +
                              "' (expected cluster or thinning)");
}

// Options shared by every subcommand. JSON config files supply defaults for
// anything not given explicitly on the command line.
struct CommonOpts {
  std::string model = "exp:1";
  std::string kernel = "expk:0.5,1";
  std::uint64_t seed = 42;
  std::string out = "./out";
  int threads = 0;
  double dt = 0.01;
  std::string config_file;
  std::string assert_expr;
};

struct RunOpts {
  CommonOpts common;
  std::string engine = "cluster";
  std::string horizons;  // comma list for lln/edge, scalar otherwise
  std::string v_list;
  int reps = 0;
  double var_step = 1.0;
  double horizon = 0.0;  // theory/simulate
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--model", c.model, "interarrival model, exp:<rate> or weibull:<scale>,<shape>")
      ->capture_default_str();
  cmd->add_option("--kernel", c.kernel, "excitation kernel, expk:<alpha>,<beta> or unifk:<alpha>,<c>")
      ->capture_default_str();
  cmd->add_option("--seed", c.seed, "master seed")->capture_default_str();
  cmd->add_option("--out", c.out, "output directory")->capture_default_str();
  cmd->add_option("--threads", c.threads, "worker threads (0 = hardware)")
      ->capture_default_str();
  cmd->add_option("--dt", c.dt, "grid step for theoretical curves")
      ->capture_default_str();
  cmd->add_option("--config", c.config_file, "JSON file with option defaults");
  cmd->add_option("--assert", c.assert_expr,
                  "post-run check, e.g. rel_err<0.10 (exit 1 on failure)");
}

// Fill any option the user left untouched from the JSON config file.
void merge_config(CLI::App* cmd, RunOpts& o) {
  if (o.common.config_file.empty()) return;
  std::ifstream in(o.common.config_file);
  if (!in)
    throw std::invalid_argument("cannot open config file '" +
                                o.common.config_file + "'");
  json j = json::parse(in);  // parse errors surface as usage errors

  auto untouched = [&](const char* flag) {
    const auto* opt = cmd->get_option_no_throw(flag);
    return opt != nullptr && opt->count() == 0;
  };
  auto as_list_string = [](const json& v) {
    if (v.is_string()) return v.get<std::string>();
    std::vector<double> xs = v.get<std::vector<double>>();
    return list_to_csv(xs);
  };

  if (j.contains("model") && untouched("--model"))
    o.common.model = j["model"].get<std::string>();
  if (j.contains("kernel") && untouched("--kernel"))
    o.common.kernel = j["kernel"].get<std::string>();
  if (j.contains("seed") && untouched("--seed"))
    o.common.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("out") && untouched("--out"))
    o.common.out = j["out"].get<std::string>();
  if (j.contains("threads") && untouched("--threads"))
    o.common.threads = j["threads"].get<int>();
  if (j.contains("dt") && untouched("--dt")) o.common.dt = j["dt"].get<double>();
  if (j.contains("assert") && untouched("--assert"))
    o.common.assert_expr = j["assert"].get<std::string>();
  if (j.contains("engine") && untouched("--engine"))
    o.engine = j["engine"].get<std::string>();
  if (j.contains("T") && untouched("--T")) o.horizons = as_list_string(j["T"]);
  if (j.contains("v") && untouched("--v")) o.v_list = as_list_string(j["v"]);
  if (j.contains("reps") && untouched("--reps")) o.reps = j["reps"].get<int>();
  if (j.contains("step") && untouched("--step"))
    o.var_step = j["step"].get<double>();
  if (j.contains("horizon") && untouched("--horizon"))
    o.horizon = j["horizon"].get<double>();
}

json base_manifest(const std::string& subcommand, const RunOpts& o) {
  json j;
  j["tool"] = "rhp";
  j["version"] = kVersion;
  j["subcommand"] = subcommand;
  j["model"] = o.common.model;
  j["kernel"] = o.common.kernel;
  j["seed"] = o.common.seed;
  j["out"] = o.common.out;
  j["dt"] = o.common.dt;
  if (!o.common.assert_expr.empty()) j["assert"] = o.common.assert_expr;
  return j;
}

// "key<value", "key<=value", "key>value", "key>=value"
bool evaluate_assert(const std::string& expr,
                     const std::map<std::string, double>& summary,
                     std::string& message) {
  const std::size_t lt = expr.find_first_of("<>");
  if (lt == std::string::npos || lt == 0)
    throw std::invalid_argument("bad assert expression '" + expr + "'");
  const std::string key = expr.substr(0, lt);
  std::size_t vstart = lt + 1;
  bool or_equal = false;
  if (vstart < expr.size() && expr[vstart] == '=') {
    or_equal = true;
    ++vstart;
  }
  const double bound = parse_number(expr.substr(vstart));
  const auto it = summary.find(key);
  if (it == summary.end()) {
    std::string known;
    for (const auto& [k, v] : summary) {
      (void)v;
      if (!known.empty()) known += ", ";
      known += k;
    }
    throw std::invalid_argument("assert key '" + key +
                                "' not produced by this subcommand (have: " +
                                known + ")");
  }
  const double actual = it->second;
  bool ok;
  if (expr[lt] == '<')
    ok = or_equal ? actual <= bound : actual < bound;
  else
    ok = or_equal ? actual >= bound : actual > bound;
  char buf[160];
  std::snprintf(buf, sizeof buf, "assert %s: %s = %.12g %s %.12g",
                ok ? "passed" : "FAILED", key.c_str(), actual,
                expr.substr(lt, vstart - lt).c_str(), bound);
  message = buf;
  return ok;
}

int finish(const RunOpts& o, const std::map<std::string, double>& summary) {
  if (o.common.assert_expr.empty()) return 0;
  std::string msg;
  const bool ok = evaluate_assert(o.common.assert_expr, summary, msg);
  std::cout << msg << "\n";
  return ok ? 0 : 1;
}

rhp::ExperimentConfig make_experiment_config(const RunOpts& o) {
  rhp::ExperimentConfig cfg;
  cfg.model_spec = o.common.model;
  cfg.kernel_spec = o.common.kernel;
  cfg.engine = parse_engine(o.engine);
  cfg.horizons = parse_list(o.horizons);
  cfg.v_grid = o.v_list.empty() ? rhp::default_v_grid() : parse_list(o.v_list);
  cfg.replications = o.reps;
  cfg.seed = o.common.seed;
  cfg.dt = o.common.dt;
  cfg.var_step = o.var_step;
  return cfg;
}

int run_theory(const RunOpts& o) {
  const auto model = rhp::parse_model(o.common.model);
  const auto kernel = rhp::parse_kernel(o.common.kernel);
  const auto c = rhp::limit_constants(model, kernel);
  const fs::path out(o.common.out);
  rhp::write_json_file(out / "limits.json", rhp::limits_to_json(c));
  json manifest = base_manifest("theory", o);
  if (o.horizon > 0) {
    const auto refs =
        rhp::renewal_references(model, kernel, o.horizon, o.common.dt);
    rhp::write_grid_csv(out / "phi.csv", refs.phi);
    rhp::write_grid_csv(out / "psi.csv", refs.psi);
    rhp::write_grid_csv(out / "mean_count.csv", refs.mean);
    manifest["horizon"] = o.horizon;
  }
  rhp::write_json_file(out / "manifest.json", manifest);
  std::cout << rhp::limits_to_json(c).dump(2) << "\n";

  std::map<std::string, double> summary{
      {"m", c.m},           {"alpha", c.alpha},
      {"lln_slope", c.lln_slope}, {"sigma2", c.sigma2},
      {"sigma2_cluster", c.sigma2_cluster},
      {"sigma2_immigration", c.sigma2_immigration},
      {"ew", c.ew},         {"varw", c.varw}};
  return finish(o, summary);
}

int run_simulate(const RunOpts& o) {
  if (!(o.horizon > 0))
    throw std::invalid_argument("simulate requires --horizon > 0");
  const auto model = rhp::parse_model(o.common.model);
  const auto kernel = rhp::parse_kernel(o.common.kernel);
  rhp::RandomStream rng(o.common.seed, 0);
  const auto path = rhp::simulate_path(parse_engine(o.engine), model, kernel,
                                       o.horizon, rng);
  const fs::path out(o.common.out);
  rhp::write_path_csv(out / "path.csv", path);
  rhp::write_json_file(
      out / "path_meta.json",
      rhp::path_meta_to_json(path, o.common.model, o.common.kernel, o.common.seed));
  json manifest = base_manifest("simulate", o);
  manifest["engine"] = o.engine;
  manifest["horizon"] = o.horizon;
  rhp::write_json_file(out / "manifest.json", manifest);
  std::cout << "events=" << path.times.size()
            << " escaped=" << path.escaped_count << " -> "
            << (out / "path.csv").string() << "\n";
  return finish(o, {{"events", static_cast<double>(path.times.size())},
                    {"escaped", static_cast<double>(path.escaped_count)}});
}

int run_lln_cmd(const RunOpts& o) {
  const auto cfg = make_experiment_config(o);
  const auto rep = rhp::run_lln(cfg);
  const fs::path out(o.common.out);
  rhp::write_lln_csv(out / "lln.csv", rep);
  json manifest = base_manifest("lln", o);
  manifest["engine"] = o.engine;
  manifest["T"] = cfg.horizons;
  manifest["v"] = cfg.v_grid;
  manifest["reps"] = cfg.replications;
  rhp::write_json_file(out / "manifest.json", manifest);

  bool monotone = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    monotone = monotone && rep.rows[i].mean_sup_dev < rep.rows[i - 1].mean_sup_dev;
  const double final_dev = rep.rows.back().mean_sup_dev;
  for (const auto& row : rep.rows)
    std::cout << "T=" << row.horizon << " mean_sup_dev=" << row.mean_sup_dev
              << " hazard_avg=" << row.hazard_avg << "\n";
  return finish(o, {{"final_mean_sup_dev", final_dev},
                    {"monotone", monotone ? 1.0 : 0.0},
                    {"final_over_slope", final_dev / rep.constants.lln_slope}});
}

int run_clt_cmd(const RunOpts& o) {
  const auto cfg = make_experiment_config(o);
  const auto rep = rhp::run_clt(cfg);
  const fs::path out(o.common.out);
  rhp::write_clt_csvs(out, rep);
  json manifest = base_manifest("clt", o);
  manifest["engine"] = o.engine;
  manifest["T"] = rep.horizon;
  manifest["v"] = cfg.v_grid;
  manifest["reps"] = rep.replications;
  rhp::write_json_file(out / "manifest.json", manifest);

  const auto& last = rep.marginals.back();
  double max_abs_mean = 0.0, max_ks = 0.0;
  for (const auto& m : rep.marginals) {
    max_abs_mean = std::max(max_abs_mean, std::abs(m.mean));
    max_ks = std::max(max_ks, m.ks);
  }
  std::cout << "v=1: mean=" << last.mean << " var=" << last.variance
            << " (theory " << last.theo_variance << ") ks=" << last.ks
            << " crit=" << last.ks_crit_1pct << "\n";
  return finish(
      o, {{"ks_v1", last.ks},
          {"ks_max", max_ks},
          {"var_v1", last.variance},
          {"var_rel_err",
           std::abs(last.variance - last.theo_variance) / last.theo_variance},
          {"max_abs_mean", max_abs_mean}});
}

int run_varfit_cmd(const RunOpts& o) {
  const auto cfg = make_experiment_config(o);
  const auto rep = rhp::run_variance_fit(cfg);
  const fs::path out(o.common.out);
  rhp::write_varfit_files(out, rep);
  json manifest = base_manifest("varfit", o);
  manifest["engine"] = o.engine;
  manifest["T"] = rep.horizon;
  manifest["reps"] = rep.replications;
  manifest["step"] = cfg.var_step;
  rhp::write_json_file(out / "manifest.json", manifest);
  std::cout << "slope=" << rep.slope << " sigma2=" << rep.constants.sigma2
            << " rel_err=" << rep.rel_err << "\n";
  return finish(o, {{"slope", rep.slope},
                    {"sigma2", rep.constants.sigma2},
                    {"rel_err", rep.rel_err}});
}

int run_edge_cmd(const RunOpts& o) {
  const auto cfg = make_experiment_config(o);
  const auto rep = rhp::run_edge_effects(cfg);
  const fs::path out(o.common.out);
  rhp::write_edge_csv(out / "edge.csv", rep);
  json manifest = base_manifest("edge", o);
  manifest["engine"] = o.engine;
  manifest["T"] = cfg.horizons;
  manifest["reps"] = rep.replications;
  rhp::write_json_file(out / "manifest.json", manifest);

  bool monotone = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    monotone =
        monotone && rep.rows[i].escaped_fraction < rep.rows[i - 1].escaped_fraction;
  for (const auto& row : rep.rows)
    std::cout << "T=" << row.horizon
              << " escaped_fraction=" << row.escaped_fraction << "\n";
  const double final_frac = rep.rows.back().escaped_fraction;
  return finish(o, {{"final_fraction", final_frac},
                    {"monotone", monotone ? 1.0 : 0.0},
                    {"final_over_slope",
                     final_frac / rep.constants.lln_slope}});
}

int run_agree_cmd(const RunOpts& o) {
  const auto cfg = make_experiment_config(o);
  const auto rep = rhp::run_engine_agreement(cfg);
  const fs::path out(o.common.out);
  rhp::write_json_file(out / "agree.json", rhp::agree_to_json(rep));
  json manifest = base_manifest("agree", o);
  manifest["T"] = rep.horizon;
  manifest["reps"] = rep.replications;
  rhp::write_json_file(out / "manifest.json", manifest);
  std::cout << "cluster mean=" << rep.mean_cluster
            << " thinning mean=" << rep.mean_thinning << " z=" << rep.zstat
            << " pass=" << (rep.pass ? "yes" : "no") << "\n";
  return finish(o, {{"zstat", rep.zstat},
                    {"abs_zstat", std::abs(rep.zstat)},
                    {"dispersion_ratio", rep.dispersion_ratio},
                    {"pass", rep.pass ? 1.0 : 0.0}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"renewal Hawkes process toolkit"};
  app.require_subcommand(1);

  RunOpts theory_o, sim_o, lln_o, clt_o, varfit_o, edge_o, agree_o;

  auto* theory = app.add_subcommand("theory", "limit constants and theoretical curves");
  add_common(theory, theory_o.common);
  theory->add_option("--horizon", theory_o.horizon,
                     "also tabulate phi, psi and the mean count up to here");

  auto* sim = app.add_subcommand("simulate", "draw one path and write it as CSV");
  add_common(sim, sim_o.common);
  sim->add_option("--engine", sim_o.engine, "cluster or thinning")
      ->capture_default_str();
  sim->add_option("--horizon", sim_o.horizon, "time horizon")->required();

  auto* lln = app.add_subcommand("lln", "long-run frequency experiment across horizons");
  add_common(lln, lln_o.common);
  lln->add_option("--engine", lln_o.engine, "cluster or thinning")->capture_default_str();
  lln_o.horizons = "100,1000,10000";
  lln->add_option("--T", lln_o.horizons, "comma list of horizons")->capture_default_str();
  lln->add_option("--v", lln_o.v_list, "comma list of fractions of T (default 0.05..1)");
  lln_o.reps = 50;
  lln->add_option("--reps", lln_o.reps, "replications per horizon")->capture_default_str();

  auto* clt = app.add_subcommand("clt", "fluctuation experiment at one horizon");
  add_common(clt, clt_o.common);
  clt->add_option("--engine", clt_o.engine, "cluster or thinning")->capture_default_str();
  clt_o.horizons = "500";
  clt->add_option("--T", clt_o.horizons, "horizon")->capture_default_str();
  clt->add_option("--v", clt_o.v_list, "comma list of fractions of T (default 0.05..1)");
  clt_o.reps = 2000;
  clt->add_option("--reps", clt_o.reps, "replications")->capture_default_str();

  auto* varfit = app.add_subcommand("varfit", "variance growth rate fit");
  add_common(varfit, varfit_o.common);
  varfit->add_option("--engine", varfit_o.engine, "cluster or thinning")
      ->capture_default_str();
  varfit_o.horizons = "200";
  varfit->add_option("--T", varfit_o.horizons, "horizon")->capture_default_str();
  varfit_o.reps = 2000;
  varfit->add_option("--reps", varfit_o.reps, "replications")->capture_default_str();
  varfit->add_option("--step", varfit_o.var_step, "spacing of the variance grid")
      ->capture_default_str();

  auto* edge = app.add_subcommand("edge", "horizon truncation accounting (cluster engine)");
  add_common(edge, edge_o.common);
  edge->add_option("--engine", edge_o.engine, "must be cluster")->capture_default_str();
  edge_o.horizons = "250,500,1000,2000";
  edge->add_option("--T", edge_o.horizons, "comma list of horizons")->capture_default_str();
  edge_o.reps = 200;
  edge->add_option("--reps", edge_o.reps, "replications per horizon")->capture_default_str();

  auto* agree = app.add_subcommand("agree", "cross-engine distribution check");
  add_common(agree, agree_o.common);
  agree_o.horizons = "500";
  agree->add_option("--T", agree_o.horizons, "horizon")->capture_default_str();
  agree_o.reps = 500;
  agree->add_option("--reps", agree_o.reps, "replications per engine")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (theory->parsed()) {
      merge_config(theory, theory_o);
      rhp::par::set_threads(theory_o.common.threads);
      return run_theory(theory_o);
    }
    if (sim->parsed()) {
      merge_config(sim, sim_o);
      rhp::par::set_threads(sim_o.common.threads);
      return run_simulate(sim_o);
    }
    if (lln->parsed()) {
      merge_config(lln, lln_o);
      rhp::par::set_threads(lln_o.common.threads);
      return run_lln_cmd(lln_o);
    }
    if (clt->parsed()) {
      merge_config(clt, clt_o);
      rhp::par::set_threads(clt_o.common.threads);
      return run_clt_cmd(clt_o);
    }
    if (varfit->parsed()) {
      merge_config(varfit, varfit_o);
      rhp::par::set_threads(varfit_o.common.threads);
      return run_varfit_cmd(varfit_o);
    }
    if (edge->parsed()) {
      merge_config(edge, edge_o);
      rhp::par::set_threads(edge_o.common.threads);
      return run_edge_cmd(edge_o);
    }
    if (agree->parsed()) {
      merge_config(agree, agree_o);
      rhp::par::set_threads(agree_o.common.threads);
      return run_agree_cmd(agree_o);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
