#include "dtc/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace dtc {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}

}  // namespace

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    std::string s(buf);
    if (s == "-0") s = "0";
    return s;
}

double round12(double v) {
    return std::strtod(format_number(v).c_str(), nullptr);
}

void write_trace_csv(const std::string& path, const MagnetizationTrace& trace) {
    auto out = open_out(path);
    out << "k,m_k\n";
    for (int k = 1; k <= trace.steps(); ++k) {
        out << k << ',' << format_number(trace.values[static_cast<std::size_t>(k - 1)]) << '\n';
    }
}

void write_spectrum_csv(const std::string& path, const Spectrum& spectrum) {
    auto out = open_out(path);
    out << "freq_over_omega0,amplitude\n";
    for (std::size_t j = 0; j < spectrum.freq.size(); ++j) {
        out << format_number(spectrum.freq[j]) << ',' << format_number(spectrum.amplitude[j])
            << '\n';
    }
}

void write_variance_csv(const std::string& path, const VarianceCurve& curve) {
    auto out = open_out(path);
    out << "eps,variance,count\n";
    for (std::size_t e = 0; e < curve.eps.size(); ++e) {
        out << format_number(curve.eps[e]) << ',' << format_number(curve.variance[e]) << ','
            << curve.count[e] << '\n';
    }
}

void write_heatmap_csv(const std::string& path, const HeatmapGrid& grid) {
    auto out = open_out(path);
    out << "p,eps,variance\n";
    for (std::size_t pi = 0; pi < grid.p.size(); ++pi) {
        for (std::size_t e = 0; e < grid.eps.size(); ++e) {
            out << format_number(grid.p[pi]) << ',' << format_number(grid.eps[e]) << ','
                << format_number(grid.at(pi, e)) << '\n';
        }
    }
}

void write_sizescan_csv(const std::string& path, const std::vector<SizeScanRow>& rows) {
    auto out = open_out(path);
    out << "n,peak_mean,peak_sigma\n";
    for (const auto& row : rows) {
        out << row.n << ',' << format_number(row.peak.mean) << ','
            << format_number(row.peak.sigma) << '\n';
    }
}

nlohmann::ordered_json peak_to_json(const PeakEstimate& peak) {
    nlohmann::ordered_json j;
    j["location"] = round12(peak.location);
    j["boundary"] = peak.boundary;
    j["mean"] = round12(peak.mean);
    j["sigma"] = round12(peak.sigma);
    j["band_1sigma"] = {round12(peak.band1_lo), round12(peak.band1_hi)};
    j["band_2sigma"] = {round12(peak.band2_lo), round12(peak.band2_hi)};
    j["single_batch"] = peak.single_batch;
    nlohmann::ordered_json locs = nlohmann::ordered_json::array();
    for (double loc : peak.batch_locations) locs.push_back(round12(loc));
    j["batch_locations"] = locs;
    return j;
}

}  // namespace dtc
