#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "rhp/experiments.hpp"
#include "rhp/grid.hpp"
#include "rhp/limits.hpp"
#include "rhp/simulate.hpp"

namespace rhp {

// Fixed nine fractional digits everywhere, so reruns with the same
// configuration produce byte-identical files.
std::string fmt9(double v);

void write_text_file(const std::filesystem::path& file, const std::string& text);

void write_path_csv(const std::filesystem::path& file,
                    const PointProcessPath& path);  // header time,flag
void write_grid_csv(const std::filesystem::path& file,
                    const GridFunction& g);  // header t,value

void write_lln_csv(const std::filesystem::path& file, const LlnReport& rep);
void write_clt_csvs(const std::filesystem::path& dir, const CltReport& rep);
void write_varfit_files(const std::filesystem::path& dir, const VarfitReport& rep);
void write_edge_csv(const std::filesystem::path& file, const EdgeReport& rep);

nlohmann::json limits_to_json(const LimitConstants& c);
nlohmann::json agree_to_json(const AgreeReport& rep);
nlohmann::json path_meta_to_json(const PointProcessPath& path,
                                 const std::string& model_spec,
                                 const std::string& kernel_spec,
                                 std::uint64_t seed);

void write_json_file(const std::filesystem::path& file, const nlohmann::json& j);

}  // namespace rhp
