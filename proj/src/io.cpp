// io.cpp

#include "spinbath/io.hpp"

#include <cstdio>
#include <stdexcept>

namespace spinbath::io {

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_series_csv(std::ostream& out, const TimeSeries& series) {
    if (series.entropy.size() != series.times.size()) {
        throw std::invalid_argument(
            "write_series_csv: entropy column not filled");
    }
    out << "gt,sz,rho11,rho22,re_rho12,im_rho12,entropy\n";
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        const DensityMatrix2& rho = series.rho[i];
        out << format_double(series.times[i]) << ','
            << format_double(series.sz[i]) << ','
            << format_double(rho.rho11) << ','
            << format_double(rho.rho22) << ','
            << format_double(rho.rho12.real()) << ','
            << format_double(rho.rho12.imag()) << ','
            << format_double(series.entropy[i]) << '\n';
    }
}

void write_spectrum_csv(std::ostream& out, std::span<const SpectrumLine> lines,
                        double g) {
    out << "kappa_over_g,weight,contributors\n";
    for (const SpectrumLine& line : lines) {
        out << format_double(line.kappa / g) << ','
            << format_double(line.weight) << ',';
        for (std::size_t i = 0; i < line.contributors.size(); ++i) {
            if (i) out << ';';
            out << line.contributors[i];
        }
        out << '\n';
    }
}

void write_entropy_csv(std::ostream& out,
                       std::span<const EntropyPoint> points) {
    out << "gt,p1,p2,entropy\n";
    for (const EntropyPoint& p : points) {
        out << format_double(p.time) << ',' << format_double(p.p1) << ','
            << format_double(p.p2) << ',' << format_double(p.entropy) << '\n';
    }
}

void write_landscape_csv(std::ostream& out,
                         std::span<const LandscapePoint> points) {
    out << "theta,phi,score\n";
    for (const LandscapePoint& p : points) {
        out << format_double(p.theta) << ',' << format_double(p.phi) << ','
            << format_double(p.score) << '\n';
    }
}

} // namespace spinbath::io
