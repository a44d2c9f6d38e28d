#include "io.hpp"

#include "errors.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace biphoton {

namespace {
std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    return out;
}
} // namespace

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string format_summary_value(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9e", value);
    return buf;
}

void write_curve_csv(const std::filesystem::path& path, const CorrelationCurve& curve) {
    curve.validate();
    auto out = open_out(path);
    out << "theta_s,value\n";
    for (std::int64_t i = 0; i < curve.grid.count; ++i)
        out << format_double(curve.grid.at(i)) << ','
            << format_double(curve.values[static_cast<size_t>(i)]) << '\n';
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

void write_paired_curve_csv(const std::filesystem::path& path,
                            const CorrelationCurve& plus, const CorrelationCurve& minus) {
    plus.validate();
    minus.validate();
    if (plus.grid.start != minus.grid.start || plus.grid.step != minus.grid.step ||
        plus.grid.count != minus.grid.count)
        throw ConfigError("paired curve emission requires a shared grid");
    auto out = open_out(path);
    out << "theta_s,g2_plus,g2_minus\n";
    for (std::int64_t i = 0; i < plus.grid.count; ++i)
        out << format_double(plus.grid.at(i)) << ','
            << format_double(plus.values[static_cast<size_t>(i)]) << ','
            << format_double(minus.values[static_cast<size_t>(i)]) << '\n';
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

void write_histogram(const std::filesystem::path& path, const CoincidenceHistogram& hist) {
    hist.config.validate();
    auto out = open_out(path);
    out << "# channel_width_s=" << format_double(hist.config.channel_width)
        << " origin_s=" << format_double(hist.config.origin)
        << " count=" << hist.config.channel_count << '\n';
    for (std::int64_t i = 0; i < hist.config.channel_count; ++i)
        out << i << ',' << format_double(hist.config.left_edge(i)) << ','
            << format_double(hist.counts[static_cast<size_t>(i)]) << '\n';
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

CoincidenceHistogram read_histogram(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::string header;
    if (!std::getline(in, header))
        throw IoError("empty histogram file '" + path.string() + "'");

    CoincidenceHistogram hist;
    long long count = 0;
    if (std::sscanf(header.c_str(), "# channel_width_s=%lg origin_s=%lg count=%lld",
                    &hist.config.channel_width, &hist.config.origin, &count) != 3)
        throw IoError("bad histogram header in '" + path.string() + "'");
    hist.config.channel_count = count;
    hist.config.validate();
    hist.counts.assign(static_cast<size_t>(count), 0.0);

    std::string line;
    std::int64_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        long long index = 0;
        double left = 0.0, counts = 0.0;
        if (std::sscanf(line.c_str(), "%lld,%lg,%lg", &index, &left, &counts) != 3)
            throw IoError("bad histogram row '" + line + "' in '" + path.string() + "'");
        if (index < 0 || index >= count)
            throw IoError("histogram row index out of range in '" + path.string() + "'");
        hist.counts[static_cast<size_t>(index)] = counts;
        ++rows;
    }
    if (rows != count)
        throw IoError("histogram row count mismatch in '" + path.string() + "'");
    return hist;
}

std::string summary_to_text(const Summary& summary) {
    std::ostringstream out;
    for (const auto& [key, value] : summary) out << key << " = " << value << '\n';
    return out.str();
}

void write_summary(const std::filesystem::path& path, const Summary& summary) {
    auto out = open_out(path);
    out << summary_to_text(summary);
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

} // namespace biphoton
