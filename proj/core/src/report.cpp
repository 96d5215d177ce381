#include "nlslab/report.hpp"

#include <ostream>

#include "nlslab/serialize.hpp"

namespace nlslab {

namespace {
const std::map<EstimateId, std::string>& name_map() {
  static const std::map<EstimateId, std::string> m = {
      {EstimateId::lemma21, "lemma21"},
      {EstimateId::lemma22, "lemma22"},
      {EstimateId::lemma23, "lemma23"},
      {EstimateId::eq_c13, "eq_c13"},
      {EstimateId::contraction_c14_c16, "contraction_c14_c16"},
      {EstimateId::stability_c19, "stability_c19"},
      {EstimateId::lemma41, "lemma41"},
      {EstimateId::lemma42_strichartz, "lemma42_strichartz"},
      {EstimateId::lemma43_a80, "lemma43_a80"},
      {EstimateId::global_sobolev_a13, "global_sobolev_a13"},
      {EstimateId::scaling_rem16, "scaling_rem16"},
      {EstimateId::conjugation_a9, "conjugation_a9"},
  };
  return m;
}
}  // namespace

const std::vector<EstimateId>& all_estimate_ids() {
  static const std::vector<EstimateId> ids = [] {
    std::vector<EstimateId> v;
    for (const auto& [id, _] : name_map()) v.push_back(id);
    return v;
  }();
  return ids;
}

std::string to_string(EstimateId id) { return name_map().at(id); }

std::optional<EstimateId> estimate_id_from_string(const std::string& name) {
  for (const auto& [id, n] : name_map())
    if (n == name) return id;
  return std::nullopt;
}

bool fits_acceptable(const EstimateReport& r) {
  for (const auto& [_, fit] : r.fitted_exponents)
    if (fit.residual > kMaxFitResidual) return false;
  return true;
}

nlohmann::json report_to_json(const EstimateReport& r) {
  nlohmann::json fits = nlohmann::json::object();
  for (const auto& [name, fit] : r.fitted_exponents)
    fits[name] = {{"value", fit.value}, {"residual", fit.residual}};
  return nlohmann::json{
      {"estimate_id", to_string(r.id)},
      {"sweep_spec", r.sweep_spec},
      {"thresholds", r.thresholds},
      {"environment", r.environment},
      {"details", r.details},
      {"measured_ratios", r.measured_ratios},
      {"fitted_exponents", fits},
      {"invalidated", r.invalidated},
      {"invalid", r.invalid},
      {"verdict", r.pass ? "pass" : "fail"},
  };
}

void write_report_csv(const EstimateReport& r, std::ostream& os) {
  for (std::size_t i = 0; i < r.table_header.size(); ++i) {
    if (i) os << ',';
    os << r.table_header[i];
  }
  os << '\n';
  for (const auto& row : r.table_rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << format_double(row[i]);
    }
    os << '\n';
  }
}

void print_summary(const std::vector<EstimateReport>& reports, std::ostream& os) {
  os << "estimate              verdict  detail\n";
  for (const auto& r : reports) {
    std::string name = to_string(r.id);
    name.resize(22, ' ');
    os << name << (r.invalid ? "INVALID" : (r.pass ? "PASS   " : "FAIL   ")) << "  ";
    bool first = true;
    for (const auto& [fname, fit] : r.fitted_exponents) {
      if (!first) os << ", ";
      os << fname << "=" << fit.value << " (rms " << fit.residual << ")";
      first = false;
    }
    if (r.details.contains("summary")) {
      if (!first) os << ", ";
      os << r.details["summary"].get<std::string>();
    }
    os << '\n';
  }
}

}  // namespace nlslab
