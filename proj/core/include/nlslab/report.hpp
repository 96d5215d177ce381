#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace nlslab {

enum class EstimateId {
  lemma21,
  lemma22,
  lemma23,
  eq_c13,
  contraction_c14_c16,
  stability_c19,
  lemma41,
  lemma42_strichartz,
  lemma43_a80,
  global_sobolev_a13,
  scaling_rem16,
  conjugation_a9,
};

const std::vector<EstimateId>& all_estimate_ids();
std::string to_string(EstimateId id);
std::optional<EstimateId> estimate_id_from_string(const std::string& name);

struct ExponentFit {
  double value = 0.0;
  double residual = 0.0;  // log-log RMS
};

/// Measured outcome of one estimate check. The verdict is a pure function
/// of the measured data and the thresholds echoed in the report, so a
/// persisted report can be re-judged offline.
struct EstimateReport {
  EstimateId id = EstimateId::lemma21;
  nlohmann::json sweep_spec;    // parameter grid actually used
  nlohmann::json thresholds;    // declared tolerances the verdict used
  nlohmann::json environment;   // grid, box, seeds
  nlohmann::json details;       // named measured quantities
  std::vector<double> measured_ratios;
  std::map<std::string, ExponentFit> fitted_exponents;
  std::vector<std::string> invalidated;  // excluded sweep points, with reason
  bool invalid = false;  // too few valid points to reach a verdict
  bool pass = false;

  // Sweep table for CSV export.
  std::vector<std::string> table_header;
  std::vector<std::vector<double>> table_rows;
};

/// A fit whose log-log RMS residual exceeds 0.05 can never pass.
inline constexpr double kMaxFitResidual = 0.05;
bool fits_acceptable(const EstimateReport& r);

nlohmann::json report_to_json(const EstimateReport& r);
void write_report_csv(const EstimateReport& r, std::ostream& os);

/// One line per report: id, verdict, key numbers.
void print_summary(const std::vector<EstimateReport>& reports, std::ostream& os);

}  // namespace nlslab
