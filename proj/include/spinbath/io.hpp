// io.hpp — CSV emission for time series, spectra, and entropy data.
// One fixed format per file kind so identical inputs give identical bytes.

#pragma once

#include <ostream>
#include <span>
#include <string>

#include "spinbath/dynamics.hpp"
#include "spinbath/entropy.hpp"
#include "spinbath/spectrum.hpp"

namespace spinbath::io {

// Round-trip-exact decimal form (%.17g).
std::string format_double(double value);

// Columns: gt,sz,rho11,rho22,re_rho12,im_rho12,entropy.
// The entropy column must already be filled.
void write_series_csv(std::ostream& out, const TimeSeries& series);

// Columns: kappa_over_g,weight,contributors (semicolon-joined integers).
void write_spectrum_csv(std::ostream& out, std::span<const SpectrumLine> lines,
                        double g);

// Columns: gt,p1,p2,entropy.
void write_entropy_csv(std::ostream& out, std::span<const EntropyPoint> points);

// Columns: theta,phi,score.
void write_landscape_csv(std::ostream& out,
                         std::span<const LandscapePoint> points);

} // namespace spinbath::io
