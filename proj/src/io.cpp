#include "pwf/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace pwf {

json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

std::string fmt12(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

PeriodicMaskTable mask_table_from_json(const json& doc) {
  try {
    const int j_min = doc.at("j_min").get<int>();
    std::vector<std::vector<double>> levels;
    int expected = j_min;
    for (const auto& lv : doc.at("levels")) {
      const int j = lv.at("j").get<int>();
      if (j != expected) {
        throw StructuralError("mask levels must be contiguous from j_min; found j = " +
                              std::to_string(j) + ", expected " + std::to_string(expected));
      }
      levels.push_back(lv.at("nu").get<std::vector<double>>());
      ++expected;
    }
    return PeriodicMaskTable(j_min, std::move(levels));
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed mask table: ") + e.what());
  }
}

json to_json(const PeriodicMaskTable& table) {
  json levels = json::array();
  for (int j = table.j_min(); j <= table.j_max(); ++j) {
    const auto row = table.level(j);
    levels.push_back({{"j", j}, {"nu", std::vector<double>(row.begin(), row.end())}});
  }
  return {{"j_min", table.j_min()}, {"levels", levels}};
}

PeriodicMaskTable load_mask_table(const std::filesystem::path& path) {
  return mask_table_from_json(read_json(path));
}

void save_mask_table(const std::filesystem::path& path, const PeriodicMaskTable& table) {
  write_json(path, to_json(table));
}

json to_json(const ValidationReport& report) {
  json violations = json::array();
  for (const auto& v : report.violations) {
    violations.push_back(
        {{"invariant", v.invariant}, {"j", v.j}, {"k", v.k}, {"residual", number(v.residual)}});
  }
  json residuals = json::object();
  for (const auto& [name, r] : report.max_residual) residuals[name] = number(r);
  return {{"valid", report.ok()},
          {"tol", report.tol},
          {"max_residual", residuals},
          {"violations", violations}};
}

json to_json(const SplinePhase& phase) {
  return {{"j", phase.j()}, {"K", phase.K()}, {"knots", phase.knots()}, {"coeffs", phase.coeffs()}};
}

json to_json(const SmoothnessReport& report) {
  json orders = json::array();
  for (double v : report.mismatch_by_order) orders.push_back(number(v));
  return {{"mismatch_by_order", orders},
          {"max_mismatch", number(report.max_mismatch())},
          {"worst_xi", report.worst_xi},
          {"half_derivative_max", number(report.half_derivative_max)},
          {"spline_continuity", number(report.spline_continuity)},
          {"tol", report.tol},
          {"ok", report.ok()}};
}

json to_json(const ConvergenceReport& report) {
  json terms = json::array();
  json sums = json::array();
  for (double v : report.terms) terms.push_back(number(v));
  for (double v : report.partial_sums) sums.push_back(number(v));
  return {{"applicable", report.applicable}, {"reason", report.reason},
          {"j_first", report.j_first},       {"terms", terms},
          {"partial_sums", sums},            {"limit_estimate", number(report.limit_estimate)},
          {"verdict", report.verdict}};
}

json to_json(const CoefficientSeries& series) {
  std::vector<double> re;
  std::vector<double> im;
  for (const auto& c : series.c) {
    re.push_back(c.real());
    im.push_back(c.imag());
  }
  return {{"N", series.N}, {"re", re}, {"im", im}, {"tail", series.tail}};
}

CoefficientSeries series_from_json(const json& doc) {
  try {
    const auto re = doc.at("re").get<std::vector<double>>();
    const auto im = doc.at("im").get<std::vector<double>>();
    if (re.size() != im.size()) throw StructuralError("re/im length mismatch");
    std::vector<cplx> c;
    for (std::size_t i = 0; i < re.size(); ++i) c.emplace_back(re[i], im[i]);
    return CoefficientSeries(doc.at("N").get<std::int64_t>(), std::move(c),
                             doc.at("tail").get<double>());
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed coefficient series: ") + e.what());
  }
}

json to_json(const PeriodicFrameLevel& level) {
  return {{"j", level.j},
          {"N", level.N},
          {"tol", level.tol},
          {"truncation_depth", level.depth},
          {"tail_extension", "stationary"},
          {"phase_convention", "exp(2 pi i 2^-j k), real masks"},
          {"phi", to_json(level.phi)},
          {"psi", to_json(level.psi)}};
}

json to_json(const UEPReport& report) {
  json trends = json::array();
  for (const auto& t : report.con1) {
    json values = json::array();
    for (double v : t.values) values.push_back(number(v));
    trends.push_back({{"probe", t.probe}, {"values", values}, {"verdict", t.verdict}});
  }
  return {{"setting", report.setting},
          {"levels", report.levels},
          {"con2", number(report.con2)},
          {"con3", number(report.con3)},
          {"con4", number(report.con4)},
          {"wavelet_quadrature", number(report.wavelet_quadrature)},
          {"con1_trend", trends},
          {"phase_convention", report.phase_convention}};
}

json to_json(const RoundTripReport& report) {
  return {{"j", report.j},
          {"N", report.N},
          {"max_phi", number(report.max_phi)},
          {"max_psi", number(report.max_psi)},
          {"max_discrepancy", number(report.max_discrepancy())},
          {"sampling_part", number(report.sampling_part)},
          {"truncation_part", number(report.truncation_part)}};
}

json to_json(const UCHReport& r) {
  return {{"norm_sq", number(r.norm_sq)},
          {"time_centre", number(r.time_centre)},
          {"time_var", number(r.time_var)},
          {"freq_centre", number(r.freq_centre)},
          {"freq_var", number(r.freq_var)},
          {"uc", number(r.uc)},
          {"quadrature_error", number(r.quadrature_error)},
          {"tail_error", number(r.tail_error)},
          {"derivative_error", number(r.derivative_error)},
          {"error_budget", number(r.error_budget)},
          {"converged", r.converged},
          {"growth_exponent", number(r.growth_exponent)},
          {"verdict", r.verdict},
          {"frequency_units", "angular"}};
}

json to_json(const UCBReport& r) {
  return {{"norm_sq", number(r.norm_sq)},
          {"tau", {number(r.tau.real()), number(r.tau.imag())}},
          {"var_a", number(r.var_a)},
          {"var_f", number(r.var_f)},
          {"uc", number(r.uc)},
          {"tail_budget", number(r.tail_budget)},
          {"degenerate", r.degenerate}};
}

json to_json(const WeightedSum& sum) {
  json sums = json::array();
  for (double v : sum.sums) sums.push_back(number(v));
  return {{"j", sum.j},
          {"ladder", sum.ladder},
          {"sums", sums},
          {"verdict", sum.verdict},
          {"limit_estimate", number(sum.limit_estimate)}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

void write_json(const std::filesystem::path& path, const json& doc) {
  write_text(path, doc.dump(2) + "\n");
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw IoError("cannot parse " + path.string() + ": " + e.what());
  }
}

std::string uc_csv_header() { return "j,uc_b,var_a,var_f,uc_h,time_var,freq_var,gap,flags\n"; }

std::string uc_csv_row(const std::string& label, const UCPair& p) {
  std::ostringstream row;
  row << label << ',' << fmt12(p.periodic.uc) << ',' << fmt12(p.periodic.var_a) << ','
      << fmt12(p.periodic.var_f) << ',' << fmt12(p.nonstationary.uc) << ','
      << fmt12(p.nonstationary.time_var) << ',' << fmt12(p.nonstationary.freq_var) << ','
      << fmt12(p.gap) << ',' << p.flags << '\n';
  return row.str();
}

std::string uc_csv_row(const std::string& label, const UCHReport& r) {
  std::ostringstream row;
  row << label << ",nan,nan,nan," << fmt12(r.uc) << ',' << fmt12(r.time_var) << ','
      << fmt12(r.freq_var) << ",nan," << (r.converged ? "SELFTEST" : "SELFTEST|UCH_INF") << '\n';
  return row.str();
}

}  // namespace pwf
