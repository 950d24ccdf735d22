#include "rhp/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace rhp {

std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

void write_text_file(const std::filesystem::path& file, const std::string& text) {
  if (file.has_parent_path())
    std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + file.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + file.string());
}

void write_path_csv(const std::filesystem::path& file,
                    const PointProcessPath& path) {
  std::string text = "time,flag\n";
  for (std::size_t i = 0; i < path.times.size(); ++i) {
    text += fmt9(path.times[i]);
    text += ',';
    text += path.flags[i] == 0 ? '0' : '1';
    text += '\n';
  }
  write_text_file(file, text);
}

void write_grid_csv(const std::filesystem::path& file, const GridFunction& g) {
  std::string text = "t,value\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    text += fmt9(g.node_time(i));
    text += ',';
    text += fmt9(g.values[i]);
    text += '\n';
  }
  write_text_file(file, text);
}

void write_lln_csv(const std::filesystem::path& file, const LlnReport& rep) {
  std::string text = "T,mean_sup_dev,median,max,hazard_avg,m\n";
  for (const auto& row : rep.rows) {
    text += fmt9(row.horizon) + "," + fmt9(row.mean_sup_dev) + "," +
            fmt9(row.median_sup_dev) + "," + fmt9(row.max_sup_dev) + "," +
            fmt9(row.hazard_avg) + "," + fmt9(rep.constants.m) + "\n";
  }
  write_text_file(file, text);
}

void write_clt_csvs(const std::filesystem::path& dir, const CltReport& rep) {
  std::string marg = "v,mean,var,theo_var,ks,ks_crit_1pct\n";
  std::string det = "v,mean_det,var_det\n";
  for (const auto& m : rep.marginals) {
    marg += fmt9(m.v) + "," + fmt9(m.mean) + "," + fmt9(m.variance) + "," +
            fmt9(m.theo_variance) + "," + fmt9(m.ks) + "," +
            fmt9(m.ks_crit_1pct) + "\n";
    det += fmt9(m.v) + "," + fmt9(m.mean_det) + "," + fmt9(m.var_det) + "\n";
  }
  std::string cov = "u,v,emp_cov,theo_cov\n";
  for (const auto& e : rep.covariance)
    cov += fmt9(e.u) + "," + fmt9(e.v) + "," + fmt9(e.empirical) + "," +
           fmt9(e.theoretical) + "\n";
  write_text_file(dir / "clt_marginals.csv", marg);
  write_text_file(dir / "clt_deterministic.csv", det);
  write_text_file(dir / "clt_cov.csv", cov);
}

void write_varfit_files(const std::filesystem::path& dir,
                        const VarfitReport& rep) {
  std::string text = "t,sample_var\n";
  for (std::size_t i = 0; i < rep.times.size(); ++i)
    text += fmt9(rep.times[i]) + "," + fmt9(rep.variances[i]) + "\n";
  write_text_file(dir / "varfit.csv", text);

  nlohmann::json j;
  j["slope"] = rep.slope;
  j["sigma2"] = rep.constants.sigma2;
  j["rel_err"] = rep.rel_err;
  write_json_file(dir / "varfit_summary.json", j);
}

void write_edge_csv(const std::filesystem::path& file, const EdgeReport& rep) {
  std::string text = "T,escaped_fraction\n";
  for (const auto& row : rep.rows)
    text += fmt9(row.horizon) + "," + fmt9(row.escaped_fraction) + "\n";
  write_text_file(file, text);
}

nlohmann::json limits_to_json(const LimitConstants& c) {
  nlohmann::json j;
  j["m"] = c.m;
  j["alpha"] = c.alpha;
  j["lln_slope"] = c.lln_slope;
  j["sigma2"] = c.sigma2;
  j["sigma2_cluster"] = c.sigma2_cluster;
  j["sigma2_immigration"] = c.sigma2_immigration;
  j["ew"] = c.ew;
  j["varw"] = c.varw;
  return j;
}

nlohmann::json agree_to_json(const AgreeReport& rep) {
  nlohmann::json j;
  j["means"] = {rep.mean_cluster, rep.mean_thinning};
  j["ses"] = {rep.se_cluster, rep.se_thinning};
  j["zstat"] = rep.zstat;
  j["vars"] = {rep.var_cluster, rep.var_thinning};
  j["dispersion_ratio"] = rep.dispersion_ratio;
  j["dispersion_bound"] = rep.dispersion_bound;
  j["pass_mean"] = rep.pass_mean;
  j["pass_dispersion"] = rep.pass_dispersion;
  j["pass"] = rep.pass;
  j["T"] = rep.horizon;
  j["replications"] = rep.replications;
  return j;
}

nlohmann::json path_meta_to_json(const PointProcessPath& path,
                                 const std::string& model_spec,
                                 const std::string& kernel_spec,
                                 std::uint64_t seed) {
  nlohmann::json j;
  j["engine"] = path.engine == Engine::Cluster ? "cluster" : "thinning";
  j["model"] = model_spec;
  j["kernel"] = kernel_spec;
  j["seed"] = seed;
  j["horizon"] = path.horizon;
  j["events"] = path.times.size();
  j["escaped_count"] = path.escaped_count;
  return j;
}

void write_json_file(const std::filesystem::path& file,
                     const nlohmann::json& j) {
  write_text_file(file, j.dump(2) + "\n");
}

}  // namespace rhp
