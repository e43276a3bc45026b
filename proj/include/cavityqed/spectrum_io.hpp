#pragma once

// SpectrumTable serialization.
//
// CSV: a `# {...}` line carrying the scenario as compact JSON, the column
// header, then one row per detuning with 12 significant digits; columns the
// scan did not evaluate are left empty. '.' decimals and '\n' line endings
// independent of locale.
//
// JSON: {"scenario": {...}, "columns": [...], "rows": [[...], ...]} with
// null for missing values.

#include <optional>
#include <ostream>
#include <string>

#include "cavityqed/format.hpp"
#include "cavityqed/spectra_analysis.hpp"
#include "json.hpp"

namespace cavityqed {

inline constexpr const char* kSpectrumCsvHeader =
    "delta_over_gamma,delta_c_over_kappa,transmission,fs_emission,cavity_emission,fs_emission_ratio,sidebeam_T";

inline nlohmann::ordered_json scenario_json(const SpectrumTable& table) {
  const auto& s = table.scenario;
  nlohmann::ordered_json j;
  j["name"] = s.name;
  j["mode"] = std::string(to_string(s.mode));
  j["eta_c"] = s.params.eta_c;
  j["kappa_over_gamma"] = s.params.kappa_over_gamma;
  j["atom_cavity_offset"] = s.atom_cavity_offset;
  if (s.mode == SpectrumMode::sidebeam || s.mode == SpectrumMode::all) j["depth0"] = s.depth0;
  j["dmin"] = table.grid.dmin;
  j["dmax"] = table.grid.dmax;
  j["dstep"] = table.grid.dstep;
  return j;
}

inline void write_spectrum_csv(std::ostream& os, const SpectrumTable& table) {
  os << "# " << scenario_json(table).dump() << '\n';
  os << kSpectrumCsvHeader << '\n';
  auto cell = [&](const std::optional<double>& v) {
    os << ',';
    if (v) os << format_double(*v);
  };
  for (const auto& r : table.rows) {
    os << format_double(r.delta_over_gamma);
    cell(r.delta_c_over_kappa);
    cell(r.transmission);
    cell(r.fs_emission);
    cell(r.cavity_emission);
    cell(r.fs_emission_ratio);
    cell(r.sidebeam_T);
    os << '\n';
  }
}

inline nlohmann::ordered_json spectrum_json(const SpectrumTable& table) {
  nlohmann::ordered_json j;
  j["scenario"] = scenario_json(table);
  j["columns"] = {"delta_over_gamma", "delta_c_over_kappa", "transmission", "fs_emission",
                  "cavity_emission",  "fs_emission_ratio",  "sidebeam_T"};
  auto value = [](const std::optional<double>& v) -> nlohmann::ordered_json {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : table.rows) {
    rows.push_back({r.delta_over_gamma, r.delta_c_over_kappa, value(r.transmission), value(r.fs_emission),
                    value(r.cavity_emission), value(r.fs_emission_ratio), value(r.sidebeam_T)});
  }
  j["rows"] = std::move(rows);
  return j;
}

inline void write_spectrum_json(std::ostream& os, const SpectrumTable& table) {
  os << spectrum_json(table).dump(2) << '\n';
}

}  // namespace cavityqed
