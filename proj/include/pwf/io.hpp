#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "pwf/conditions.hpp"
#include "pwf/periodization.hpp"

namespace pwf {

using json = nlohmann::json;

/// Non-finite values become the strings "inf", "-inf", "nan".
json number(double v);

PeriodicMaskTable mask_table_from_json(const json& doc);
json to_json(const PeriodicMaskTable& table);
PeriodicMaskTable load_mask_table(const std::filesystem::path& path);
void save_mask_table(const std::filesystem::path& path, const PeriodicMaskTable& table);

json to_json(const ValidationReport& report);
json to_json(const SplinePhase& phase);
json to_json(const SmoothnessReport& report);
json to_json(const ConvergenceReport& report);
json to_json(const CoefficientSeries& series);
CoefficientSeries series_from_json(const json& doc);
json to_json(const PeriodicFrameLevel& level);
json to_json(const UEPReport& report);
json to_json(const RoundTripReport& report);
json to_json(const UCHReport& report);
json to_json(const UCBReport& report);
json to_json(const WeightedSum& sum);

void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const json& doc);
json read_json(const std::filesystem::path& path);

/// "j,uc_b,var_a,var_f,uc_h,time_var,freq_var,gap,flags"
std::string uc_csv_header();
std::string uc_csv_row(const std::string& label, const UCPair& pair);
/// Self-test row: UC_H only.
std::string uc_csv_row(const std::string& label, const UCHReport& report);

/// 12 significant digits; inf/nan spelled out.
std::string fmt12(double v);

}  // namespace pwf
