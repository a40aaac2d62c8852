#include "pwf/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

namespace pwf {

namespace {

constexpr const char* kUniformityNote =
    "uniformity in j is only probed over the computed level range";

class Session {
 public:
  Session(std::string command, const RunConfig& config)
      : command_(std::move(command)), config_(config), hash_(config_hash(config)) {
    std::error_code ec;
    std::filesystem::create_directories(config.out, ec);
    if (ec) throw IoError("cannot create output directory " + config.out + ": " + ec.message());
  }

  const std::string& hash() const { return hash_; }

  void json_file(const std::string& name, json doc) {
    if (doc.is_object()) doc["config_hash"] = hash_;
    write_json(path(name), doc);
    files_.push_back(name);
  }

  void text_file(const std::string& name, const std::string& text) {
    write_text(path(name), text);
    files_.push_back(name);
  }

  void finish(int status) {
    json manifest = {{"command", command_},
                     {"config", to_json(config_)},
                     {"config_hash", hash_},
                     {"exit_code", status},
                     {"files", files_}};
    write_json(path("manifest.json"), manifest);
  }

 private:
  std::filesystem::path path(const std::string& name) const {
    return std::filesystem::path(config_.out) / name;
  }

  std::string command_;
  RunConfig config_;
  std::string hash_;
  std::vector<std::string> files_;
};

/// Levels of [j_min, j_max] that the table can serve at `lowest`.
std::pair<int, int> level_range(const RunConfig& c, const PeriodicMaskTable& table, int lowest) {
  return {std::max({c.j_min, table.j_min(), lowest}), std::min(c.j_max, table.j_max())};
}

std::int64_t cutoff_for(const RunConfig& c, std::int64_t fallback) {
  return c.N ? *c.N : fallback;
}

/// Table loading is input handling: any failure there is a usage or I/O error.
PeriodicMaskTable input_table(const RunConfig& c) {
  try {
    return load_table(c);
  } catch (const IoError&) {
    throw;
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

std::string level_name(const char* stem, int j, const char* ext) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_j%d.%s", stem, j, ext);
  return buf;
}

}  // namespace

void check_config(const RunConfig& c) {
  if (!(c.tol > 0.0 && c.tol <= 1e-2)) throw UsageError("tol must lie in (0, 1e-2]");
  if (c.j_min < 2) throw UsageError("jmin must be at least 2");
  if (c.K < 1 || c.K > kMaxSplineOrder) throw UsageError("K must lie in 1..8");
  if (c.N && *c.N < 1) throw UsageError("N must be at least 1");
  if (c.G < 0) throw UsageError("res must be non-negative");
  if (!(c.span > 0.0) || !std::isfinite(c.span)) throw UsageError("span must be positive");
  if (!(c.transition > 0.0 && c.transition <= 1.0)) {
    throw UsageError("transition must lie in (0, 1]");
  }
  if (c.j_max > 30 || c.table_jmax > 30) throw UsageError("levels above 30 are not supported");
  if (c.mask_file.empty()) {
    try {
      parse_family(c.family);
    } catch (const StructuralError& e) {
      throw UsageError(e.what());
    }
  }
}

RunConfig config_from_json(const json& doc, RunConfig c) {
  if (!doc.is_object()) throw UsageError("config must be a JSON object");
  try {
    for (const auto& [key, v] : doc.items()) {
      if (key == "family") c.family = v.get<std::string>();
      else if (key == "mask_file") c.mask_file = v.get<std::string>();
      else if (key == "transition") c.transition = v.get<double>();
      else if (key == "table_jmax") c.table_jmax = v.get<int>();
      else if (key == "jmin") c.j_min = v.get<int>();
      else if (key == "jmax") c.j_max = v.get<int>();
      else if (key == "K") c.K = v.get<int>();
      else if (key == "N") c.N = v.is_null() ? std::nullopt : std::optional(v.get<std::int64_t>());
      else if (key == "span") c.span = v.get<double>();
      else if (key == "res") c.G = v.get<int>();
      else if (key == "tol") c.tol = v.get<double>();
      else if (key == "out") c.out = v.get<std::string>();
      else throw UsageError("unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad config value: ") + e.what());
  }
  return c;
}

json to_json(const RunConfig& c) {
  return {{"family", c.family},
          {"mask_file", c.mask_file},
          {"transition", c.transition},
          {"table_jmax", c.table_jmax},
          {"jmin", c.j_min},
          {"jmax", c.j_max},
          {"K", c.K},
          {"N", c.N ? json(*c.N) : json(nullptr)},
          {"span", c.span},
          {"res", c.G},
          {"tol", c.tol},
          {"out", c.out}};
}

std::string config_hash(const RunConfig& config) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : to_json(config).dump()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

PeriodicMaskTable load_table(const RunConfig& c) {
  if (!c.mask_file.empty()) return load_mask_table(c.mask_file);
  FamilyParams params;
  params.transition = c.transition;
  return builtin_family(parse_family(c.family), 2, std::max(c.table_jmax, c.j_max + 1), params);
}

int cmd_validate(const RunConfig& c) {
  const PeriodicMaskTable table = input_table(c);
  Session s("validate", c);
  const double tol = c.mask_file.empty() ? kBuiltinTol : kFileTol;
  const ValidationReport report = validate_mask_table(table, tol);
  json doc = to_json(report);
  doc["source"] = c.mask_file.empty() ? c.family : c.mask_file;
  s.json_file("validation.json", doc);
  const int status = report.ok() ? kExitOk : kExitFailure;
  s.finish(status);
  return status;
}

int cmd_lift(const RunConfig& c) {
  const PeriodicMaskTable table = input_table(c);
  Session s("lift", c);
  const LiftedFamily family(table, c.K);
  const auto [lo, hi] = level_range(c, table, family.min_level());

  json levels = json::array();
  bool ok = true;
  for (int j = lo; j <= hi; ++j) {
    const LiftedMask& mask = family.mask(j);
    const SmoothnessReport smooth = verify_mask_smoothness(mask, kBreakpointTol);
    ok = ok && smooth.ok();
    s.json_file(level_name("spline", j, "json"), to_json(mask.phase()));
    levels.push_back({{"j", j},
                      {"condition", number(mask.phase().condition())},
                      {"smoothness", to_json(smooth)}});
  }
  const int right = (c.K - 1) / 2;
  json end_conditions = {
      {"left", "z^(l)(0) = 0 for l = 1.." + std::to_string(c.K - 1) + ", z(0) = 0"},
      {"right", right == 0 ? std::string("none")
                           : "z^(l)(1/4) = 0 for even l in 2.." + std::to_string(c.K - 1)},
      {"right_count", right},
      {"first_piece_degree", c.K + right}};
  s.json_file("lift_report.json", {{"K", c.K},
                                   {"masks", family.label()},
                                   {"end_conditions", end_conditions},
                                   {"levels", levels},
                                   {"prodL2", to_json(check_prodL2(family))}});
  const int status = ok ? kExitOk : kExitFailure;
  s.finish(status);
  return status;
}

int cmd_build(const RunConfig& c) {
  const PeriodicMaskTable table = input_table(c);
  Session s("build", c);
  const LiftedFamily family(table, c.K);
  const auto [lo, hi] = level_range(c, table, family.min_level());

  std::vector<PeriodicFrameLevel> periodic;
  std::vector<NonstationaryFrameLevel> lifted;
  for (int j = lo; j <= hi; ++j) {
    periodic.push_back(build_periodic_level(table, j, cutoff_for(c, pow2(j)), c.tol));
    s.json_file(level_name("frame", j, "json"), to_json(periodic.back()));

    const SpectrumGrid grid = eval_scaling_spectrum(family, j, c.span, c.G, c.tol);
    std::ostringstream csv;
    write_spectrum_csv(csv, grid);
    s.text_file(level_name("spectrum", j, "csv"), csv.str());
    lifted.push_back(build_nonstationary_level(family, j, c.span, c.G, c.tol));
  }

  json uep = json::object();
  bool ok = true;
  if (!periodic.empty()) {
    const UEPReport rp = check_uep_conditions(table, periodic);
    const UEPReport rn = check_uep_conditions(family, lifted);
    // Residuals inherit the product truncation error on both factors.
    const double allowance = 10.0 * c.tol;
    ok = rp.ok(allowance) && rn.ok(allowance);
    uep = {{"periodic", to_json(rp)}, {"nonstationary", to_json(rn)}, {"allowance", allowance}};
  }
  uep["ok"] = ok;
  s.json_file("uep.json", uep);
  const int status = ok ? kExitOk : kExitFailure;
  s.finish(status);
  return status;
}

int cmd_periodize(const RunConfig& c) {
  const PeriodicMaskTable table = input_table(c);
  Session s("periodize", c);
  const LiftedFamily family(table, c.K);
  const auto [lo, hi] = level_range(c, table, family.min_level());

  json reports = json::array();
  bool ok = true;
  for (int j = lo; j <= hi; ++j) {
    const std::int64_t N = cutoff_for(c, 16);
    const NonstationaryFrameLevel step = step_mask_lift(table, j, N, 0, c.tol);
    s.json_file(level_name("series_phi", j, "json"),
                to_json(periodize(step, SpectrumKind::kScaling, N)));
    s.json_file(level_name("series_psi", j, "json"),
                to_json(periodize(step, SpectrumKind::kWavelet, N)));

    const RoundTripReport rt = roundtrip_check(table, family, j, N, c.tol);
    const double allowance = std::max(10.0 * c.tol, rt.sampling_part + rt.truncation_part);
    ok = ok && rt.max_discrepancy() <= allowance;
    json row = to_json(rt);
    row["allowance"] = allowance;
    reports.push_back(row);
  }
  s.json_file("roundtrip.json", {{"masks", family.label()}, {"levels", reports}, {"ok", ok}});
  const int status = ok ? kExitOk : kExitFailure;
  s.finish(status);
  return status;
}

int cmd_uc(const RunConfig& c) {
  const PeriodicMaskTable table = input_table(c);
  Session s("uc", c);
  const LiftedFamily family(table, c.K);
  const auto [lo, hi] = level_range(c, table, family.min_level());

  std::string csv = uc_csv_header();
  for (int j = lo; j <= hi; ++j) {
    const auto fallback = static_cast<std::int64_t>(std::ceil(std::ldexp(c.span, j)));
    const UCPair pair =
        uc_pair_for_level(table, family, j, cutoff_for(c, fallback), c.span, c.tol);
    csv += uc_csv_row(std::to_string(j), pair);
  }
  s.text_file("uc.csv", csv);
  s.text_file("uc_selftest.csv", uc_csv_header() + uc_csv_row("gaussian", gaussian_self_test()));
  s.finish(kExitOk);
  return kExitOk;
}

int cmd_experiment(const RunConfig& c) {
  const PeriodicMaskTable table = input_table(c);
  Session s("experiment", c);
  const int lowest = std::max(2, table.j_min());
  const auto [lo, hi] = level_range(c, table, lowest);
  const Experiment ex =
      run_adjustment_experiment(table, c.K, lo, hi, c.N ? *c.N : 0, c.span, c.tol);

  std::ostringstream csv;
  write_experiment_csv(csv, ex);
  s.text_file("experiment.csv", csv.str());

  json rows = json::array();
  for (const auto& r : ex.rows) {
    rows.push_back({{"j", r.j},
                    {"cond2_Cj", number(r.cond2_Cj)},
                    {"cond1", to_json(r.cond1)},
                    {"uc_b", to_json(r.uc.periodic)},
                    {"uc_h", to_json(r.uc.nonstationary)},
                    {"gap", number(r.uc.gap)},
                    {"flags", r.flags}});
  }
  s.json_file("experiment_summary.json", {{"K", ex.K},
                                          {"exploratory", ex.exploratory},
                                          {"C", number(ex.C)},
                                          {"cond2_verdict", ex.cond2_verdict},
                                          {"uniform_bound", number(ex.uniform_bound)},
                                          {"conditions_hold", ex.conditions_hold()},
                                          {"note", kUniformityNote},
                                          {"rows", rows}});
  const int status = ex.conditions_hold() ? kExitOk : kExitFailure;
  s.finish(status);
  return status;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Periodic and nonstationary wavelet frame toolkit", "pwframe"};
  std::string command;
  std::string config_path;
  RunConfig flags;
  std::int64_t n_flag = 0;

  app.add_option("command", command, "validate | lift | build | periodize | uc | experiment")
      ->required()
      ->check(CLI::IsMember({"validate", "lift", "build", "periodize", "uc", "experiment"}));
  app.add_option("--config", config_path, "JSON config file");
  auto* o_family = app.add_option("--family", flags.family, "haar_cos | meyer_smooth");
  auto* o_mask = app.add_option("--mask-file", flags.mask_file, "mask table JSON");
  auto* o_jmin = app.add_option("--jmin", flags.j_min);
  auto* o_jmax = app.add_option("--jmax", flags.j_max);
  auto* o_K = app.add_option("-K", flags.K, "phase spline order");
  auto* o_N = app.add_option("-N", n_flag, "coefficient cutoff");
  auto* o_tol = app.add_option("--tol", flags.tol);
  auto* o_span = app.add_option("--span", flags.span, "frequency span, auxiliary units");
  auto* o_res = app.add_option("--res", flags.G, "grid resolution exponent G");
  auto* o_out = app.add_option("--out", flags.out, "output directory");
  auto* o_trans = app.add_option("--transition", flags.transition, "meyer_smooth transition width");
  auto* o_tjmax = app.add_option("--table-jmax", flags.table_jmax, "top built-in table level");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    RunConfig c;
    if (!config_path.empty()) c = config_from_json(read_json(config_path));
    if (o_family->count()) c.family = flags.family;
    if (o_mask->count()) c.mask_file = flags.mask_file;
    if (o_jmin->count()) c.j_min = flags.j_min;
    if (o_jmax->count()) c.j_max = flags.j_max;
    if (o_K->count()) c.K = flags.K;
    if (o_N->count()) c.N = n_flag;
    if (o_tol->count()) c.tol = flags.tol;
    if (o_span->count()) c.span = flags.span;
    if (o_res->count()) c.G = flags.G;
    if (o_out->count()) c.out = flags.out;
    if (o_trans->count()) c.transition = flags.transition;
    if (o_tjmax->count()) c.table_jmax = flags.table_jmax;
    check_config(c);

    if (command == "validate") return cmd_validate(c);
    if (command == "lift") return cmd_lift(c);
    if (command == "build") return cmd_build(c);
    if (command == "periodize") return cmd_periodize(c);
    if (command == "uc") return cmd_uc(c);
    return cmd_experiment(c);
  } catch (const UsageError& e) {
    std::cerr << "pwframe: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "pwframe: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "pwframe: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace pwf
