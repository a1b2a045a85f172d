#pragma once

#include <vector>

#include "modrec/common.hpp"

namespace modrec {

// Root-raised-cosine taps, span symbols each side, unit energy.
// Tap count = 2 * span * sps + 1.
std::vector<double> rrc_taps(int sps, double rolloff, int span);

// Gaussian pulse-shaping taps with bandwidth-time product `bt`, normalized
// to unit DC gain. Tap count = 2 * span * sps + 1.
std::vector<double> gaussian_taps(int sps, double bt, int span);

// Full linear convolution, output length x.size() + taps.size() - 1.
std::vector<cdouble> fir_full(const std::vector<cdouble>& x,
                              const std::vector<double>& taps);

// Direct O(n^2) DFT / inverse DFT (sizes here are tiny).
std::vector<cdouble> dft(const std::vector<cdouble>& x);
std::vector<cdouble> idft(const std::vector<cdouble>& x);

// Circular brick-wall low-pass of a real sequence: keeps DFT bins with
// |f| <= cutoff (as a fraction of the sample rate), zeroes the rest.
std::vector<double> brickwall_lowpass(const std::vector<double>& x, double cutoff);

// Analytic signal via the DFT method: negative-frequency bins are exactly
// zero on the length-n grid.
std::vector<cdouble> analytic_signal(const std::vector<double>& x);

}  // namespace modrec
