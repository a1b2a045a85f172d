#include "modrec/dsp.hpp"

#include <cmath>
#include <numbers>

namespace modrec {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::vector<double> rrc_taps(int sps, double rolloff, int span) {
  const int half = span * sps;
  std::vector<double> taps(2 * half + 1);
  const double beta = rolloff;
  for (int i = -half; i <= half; ++i) {
    const double t = static_cast<double>(i) / sps;  // in symbols
    double v;
    if (i == 0) {
      v = 1.0 - beta + 4.0 * beta / kPi;
    } else if (std::abs(std::abs(4.0 * beta * t) - 1.0) < 1e-12) {
      const double a = kPi / (4.0 * beta);
      v = beta / std::numbers::sqrt2 *
          ((1.0 + 2.0 / kPi) * std::sin(a) + (1.0 - 2.0 / kPi) * std::cos(a));
    } else {
      const double num =
          std::sin(kPi * t * (1.0 - beta)) + 4.0 * beta * t * std::cos(kPi * t * (1.0 + beta));
      const double den = kPi * t * (1.0 - 16.0 * beta * beta * t * t);
      v = num / den;
    }
    taps[static_cast<size_t>(i + half)] = v;
  }
  double energy = 0.0;
  for (double v : taps) energy += v * v;
  const double norm = 1.0 / std::sqrt(energy);
  for (double& v : taps) v *= norm;
  return taps;
}

std::vector<double> gaussian_taps(int sps, double bt, int span) {
  const int half = span * sps;
  std::vector<double> taps(2 * half + 1);
  // Impulse response of the Gaussian filter with 3 dB bandwidth bt / T.
  const double alpha = std::sqrt(std::log(2.0) / 2.0) / bt;
  for (int i = -half; i <= half; ++i) {
    const double t = static_cast<double>(i) / sps;
    taps[static_cast<size_t>(i + half)] =
        std::sqrt(kPi) / alpha * std::exp(-(kPi * kPi / (alpha * alpha)) * t * t);
  }
  double sum = 0.0;
  for (double v : taps) sum += v;
  for (double& v : taps) v /= sum;
  return taps;
}

std::vector<cdouble> fir_full(const std::vector<cdouble>& x,
                              const std::vector<double>& taps) {
  std::vector<cdouble> y(x.size() + taps.size() - 1, cdouble{0.0, 0.0});
  for (size_t i = 0; i < x.size(); ++i) {
    for (size_t j = 0; j < taps.size(); ++j) {
      y[i + j] += x[i] * taps[j];
    }
  }
  return y;
}

std::vector<cdouble> dft(const std::vector<cdouble>& x) {
  const size_t n = x.size();
  std::vector<cdouble> out(n);
  for (size_t k = 0; k < n; ++k) {
    cdouble acc{0.0, 0.0};
    for (size_t i = 0; i < n; ++i) {
      const double ang = -2.0 * kPi * static_cast<double>(k * i % n) / static_cast<double>(n);
      acc += x[i] * cdouble{std::cos(ang), std::sin(ang)};
    }
    out[k] = acc;
  }
  return out;
}

std::vector<cdouble> idft(const std::vector<cdouble>& x) {
  const size_t n = x.size();
  std::vector<cdouble> out(n);
  for (size_t i = 0; i < n; ++i) {
    cdouble acc{0.0, 0.0};
    for (size_t k = 0; k < n; ++k) {
      const double ang = 2.0 * kPi * static_cast<double>(k * i % n) / static_cast<double>(n);
      acc += x[k] * cdouble{std::cos(ang), std::sin(ang)};
    }
    out[i] = acc / static_cast<double>(n);
  }
  return out;
}

std::vector<double> brickwall_lowpass(const std::vector<double>& x, double cutoff) {
  const size_t n = x.size();
  std::vector<cdouble> cx(n);
  for (size_t i = 0; i < n; ++i) cx[i] = cdouble{x[i], 0.0};
  std::vector<cdouble> spec = dft(cx);
  for (size_t k = 0; k < n; ++k) {
    const size_t folded = std::min(k, n - k);  // bin distance from DC
    const double f = static_cast<double>(folded) / static_cast<double>(n);
    if (f > cutoff) spec[k] = cdouble{0.0, 0.0};
  }
  std::vector<cdouble> y = idft(spec);
  std::vector<double> out(n);
  for (size_t i = 0; i < n; ++i) out[i] = y[i].real();
  return out;
}

std::vector<cdouble> analytic_signal(const std::vector<double>& x) {
  const size_t n = x.size();
  std::vector<cdouble> cx(n);
  for (size_t i = 0; i < n; ++i) cx[i] = cdouble{x[i], 0.0};
  std::vector<cdouble> spec = dft(cx);
  // Keep DC and Nyquist, double the positive bins, zero the negative ones.
  for (size_t k = 1; k < n; ++k) {
    if (2 * k < n) {
      spec[k] *= 2.0;
    } else if (2 * k > n) {
      spec[k] = cdouble{0.0, 0.0};
    }
  }
  return idft(spec);
}

}  // namespace modrec
