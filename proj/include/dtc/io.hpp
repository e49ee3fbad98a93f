#pragma once

#include <string>

#include "dtc/criticality.hpp"
#include "dtc/floquet.hpp"
#include "dtc/spectrum.hpp"

#include "json.hpp"

// CSV and JSON emitters. All floats serialize with 12 significant digits;
// enough to round-trip the analysis and stable across platforms.

namespace dtc {

// %.12g formatting; "-0" normalizes to "0".
std::string format_number(double v);

// Round-trips v through the 12-digit decimal form (for JSON fields).
double round12(double v);

void write_trace_csv(const std::string& path, const MagnetizationTrace& trace);
void write_spectrum_csv(const std::string& path, const Spectrum& spectrum);
void write_variance_csv(const std::string& path, const VarianceCurve& curve);
void write_heatmap_csv(const std::string& path, const HeatmapGrid& grid);
void write_sizescan_csv(const std::string& path, const std::vector<SizeScanRow>& rows);

nlohmann::ordered_json peak_to_json(const PeakEstimate& peak);

}  // namespace dtc
