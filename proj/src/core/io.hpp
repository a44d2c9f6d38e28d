#pragma once

#include "types.hpp"

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace biphoton {

// Ordered key = value records, written one per line.
using Summary = std::vector<std::pair<std::string, std::string>>;

std::string format_double(double value);       // %.17g, round-trip safe
std::string format_summary_value(double value); // %.9e, stable display form

// CSV with header "theta_s,value".
void write_curve_csv(const std::filesystem::path& path, const CorrelationCurve& curve);

// CSV with header "theta_s,g2_plus,g2_minus"; the curves must share a grid.
void write_paired_curve_csv(const std::filesystem::path& path,
                            const CorrelationCurve& plus, const CorrelationCurve& minus);

// Text histogram: "# channel_width_s=<val> origin_s=<val> count=<n>" then
// one "index,left_edge_s,counts" line per channel.
void write_histogram(const std::filesystem::path& path, const CoincidenceHistogram& hist);
CoincidenceHistogram read_histogram(const std::filesystem::path& path);

void write_summary(const std::filesystem::path& path, const Summary& summary);
std::string summary_to_text(const Summary& summary);

} // namespace biphoton
