#pragma once

// Shared test oracles. Everything here is written independently of the
// library code paths it checks: naive loops, direct DFT sums, central
// finite differences.

#include <cmath>
#include <complex>
#include <vector>

#include "modrec/nn.hpp"
#include "modrec/tensor.hpp"

namespace oracle {

// Reference convolution: one scalar accumulator per output element,
// quadruple loop, bias added last.
template <typename T>
modrec::TensorT<T> naive_conv2d(const modrec::TensorT<T>& x, const modrec::TensorT<T>& w,
                                const modrec::TensorT<T>& b) {
  const int c_in = x.shape[0], h = x.shape[1], wd = x.shape[2];
  const int k_out = w.shape[0], kh = w.shape[2], kw = w.shape[3];
  const int oh = h - kh + 1, ow = wd - kw + 1;
  modrec::TensorT<T> y({k_out, oh, ow});
  for (int k = 0; k < k_out; ++k) {
    for (int oy = 0; oy < oh; ++oy) {
      for (int ox = 0; ox < ow; ++ox) {
        T acc{};
        for (int c = 0; c < c_in; ++c) {
          for (int ky = 0; ky < kh; ++ky) {
            for (int kx = 0; kx < kw; ++kx) {
              acc += w.at(k, c, ky, kx) * x.at(c, oy + ky, ox + kx);
            }
          }
        }
        y.at(k, oy, ox) = acc + b.at(k);
      }
    }
  }
  return y;
}

// Brute-force two-tap convolution in double precision, zero-padded history,
// truncated to `out_len` samples.
inline std::vector<std::complex<double>> two_tap_reference(
    const std::vector<std::complex<float>>& x, std::complex<double> tap, int delay,
    int out_len) {
  std::vector<std::complex<double>> y(static_cast<size_t>(out_len));
  for (int n = 0; n < out_len; ++n) {
    std::complex<double> acc = static_cast<std::complex<double>>(x[static_cast<size_t>(n)]);
    if (n - delay >= 0) {
      acc += tap * static_cast<std::complex<double>>(x[static_cast<size_t>(n - delay)]);
    }
    y[static_cast<size_t>(n)] = acc;
  }
  return y;
}

// Direct DFT magnitude-squared spectrum (own loop, not the library DFT).
inline std::vector<double> power_spectrum(const std::vector<std::complex<float>>& x) {
  const size_t n = x.size();
  std::vector<double> out(n);
  for (size_t k = 0; k < n; ++k) {
    std::complex<double> acc{0.0, 0.0};
    for (size_t i = 0; i < n; ++i) {
      const double ang = -2.0 * M_PI * static_cast<double>(k) * static_cast<double>(i) /
                         static_cast<double>(n);
      acc += static_cast<std::complex<double>>(x[i]) * std::complex<double>{std::cos(ang), std::sin(ang)};
    }
    out[k] = std::norm(acc);
  }
  return out;
}

// Pearson chi-squared statistic against a uniform expectation.
inline double chi_squared_uniform(const std::vector<long>& counts, double expected) {
  double stat = 0.0;
  for (long c : counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  return stat;
}

// Unit-floored relative error: |a-b| / max(1, |a|, |b|).
inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

// Central finite differences over every parameter tensor and the input,
// checked against reverse-mode gradients in double precision (infer mode).
// Returns the worst unit-floored relative error.
inline double max_gradient_error(const modrec::NetSpec& spec,
                                 const modrec::ParamsT<double>& params,
                                 const modrec::TensorT<double>& x, int y, double l2,
                                 double h = 1e-3) {
  const modrec::BackwardResult<double> bw =
      modrec::backward(spec, params, x, y, l2, 0.0f, modrec::RunMode::kInfer);

  auto loss_at = [&](const modrec::ParamsT<double>& p, const modrec::TensorT<double>& xin) {
    const modrec::TensorT<double> probs =
        modrec::forward(spec, p, xin, 0.0f, modrec::RunMode::kInfer, nullptr);
    return modrec::loss_from_probs(probs, y, p, l2);
  };

  double worst = 0.0;
  modrec::ParamsT<double> mutable_params = params;
  auto tensors = mutable_params.all();
  auto grads = bw.grads.all();
  for (size_t ti = 0; ti < tensors.size(); ++ti) {
    for (size_t i = 0; i < tensors[ti]->data.size(); ++i) {
      const double orig = tensors[ti]->data[i];
      tensors[ti]->data[i] = orig + h;
      const double lp = loss_at(mutable_params, x);
      tensors[ti]->data[i] = orig - h;
      const double lm = loss_at(mutable_params, x);
      tensors[ti]->data[i] = orig;
      const double fd = (lp - lm) / (2.0 * h);
      worst = std::max(worst, rel_err(fd, grads[ti]->data[i]));
    }
  }

  modrec::TensorT<double> mutable_x = x;
  for (size_t i = 0; i < mutable_x.data.size(); ++i) {
    const double orig = mutable_x.data[i];
    mutable_x.data[i] = orig + h;
    const double lp = loss_at(params, mutable_x);
    mutable_x.data[i] = orig - h;
    const double lm = loss_at(params, mutable_x);
    mutable_x.data[i] = orig;
    const double fd = (lp - lm) / (2.0 * h);
    worst = std::max(worst, rel_err(fd, bw.input_grad.data[i]));
  }
  return worst;
}

// Random double params shaped for `spec`, uniform in [-1, 1] scaled down to
// keep softmax away from saturation.
inline modrec::ParamsT<double> random_params(const modrec::NetSpec& spec, modrec::Rng& rng,
                                             double scale = 0.5) {
  modrec::ParamsT<double> p = modrec::zero_params<double>(spec);
  for (auto* t : p.all()) {
    for (double& v : t->data) v = rng.uniform(-scale, scale);
  }
  return p;
}

inline modrec::TensorT<double> random_input(const modrec::NetSpec& spec, modrec::Rng& rng,
                                            double scale = 1.0) {
  modrec::TensorT<double> x({1, spec.input_h, spec.input_w});
  for (double& v : x.data) v = rng.uniform(-scale, scale);
  return x;
}

}  // namespace oracle
