#pragma once

#include <string>

#include <json.hpp>

#include "hexspec/bandscan.hpp"
#include "hexspec/hexband.hpp"

namespace hexspec {

/// JSON with the layout {"problem":..., "flat_bands":[...], "bands":[...],
/// "gaps":[...], "measure_fraction":..., "diagnostics":...}; momenta carry
/// 15 significant digits. Emission is deterministic and round-trips
/// byte-identically through report_from_json.
nlohmann::json report_to_json(const SpectrumReport& report);
SpectrumReport report_from_json(const nlohmann::json& j);

std::string report_to_json_string(const SpectrumReport& report);

/// CSV with the fixed column contract
/// band_index,side,kind,k_lo,k_hi,E_lo,E_hi (flat bands as zero-width rows).
std::string report_to_csv(const SpectrumReport& report);

/// Static band diagram in the graphical-solution layout: negative half-axis
/// kappa with cosh(2 kappa l) against the g+- region, positive half-axis k
/// with cos(2kl) against the h+- region, band intervals on the axis.
/// Deterministic output, no timestamps.
std::string render_hex_diagram_svg(const RegularHexProblem& p,
                                   const SpectrumReport& report, double k_max,
                                   double kappa_max);

/// Band intervals and flat bands on a momentum axis (used for the dilated
/// lattice, which has no scalar envelope picture).
std::string render_bands_svg(const SpectrumReport& report);

/// Round to 15 significant digits (parse back of "%.15g").
double sig15(double x);

}  // namespace hexspec
