#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "bsq/checks.hpp"

namespace bsq {

inline constexpr const char* kCsvHeader = "check_id,t,lhs,rhs,ratio,grid_n,kappa,gamma_name,p0,p1,seed";

// Numbers are printed with 17 significant digits so reruns give identical bytes.
std::string records_to_csv(const std::vector<EstimateRecord>& records);
void write_records_csv(const std::filesystem::path& path, const std::vector<EstimateRecord>& records);
// Throws InputError naming the file on a malformed header or row.
std::vector<EstimateRecord> read_records_csv(const std::filesystem::path& path);

// Writes `summary` with "config_hash" set.
void write_summary_json(const std::filesystem::path& path, nlohmann::json summary, const std::string& config_hash);

// Plain-text table of every summary JSON below `input_dir`.
std::string text_summary(const std::filesystem::path& input_dir);

}  // namespace bsq
