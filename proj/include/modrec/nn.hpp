#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "modrec/modclass.hpp"
#include "modrec/rng.hpp"
#include "modrec/tensor.hpp"

namespace modrec {

enum class RunMode { kTrain, kInfer };

struct Hyperparams {
  int conv1_filters = 64;
  int conv2_filters = 16;
  int dense_units = 128;
  float learning_rate = 1e-3f;
  float l2_coefficient = 1e-4f;
  float dropout_rate = 0.6f;
  int batch_size = 64;
  int epochs = 10;

  void validate() const;
};

struct ConvShape {
  int filters = 0;
  int kh = 0;
  int kw = 0;
};

// Fixed layer sequence:
//   conv, relu, dropout, conv, relu, dropout, dense, relu, dropout,
//   dense(class_count), softmax
struct NetSpec {
  ConvShape conv1{64, 1, 3};
  ConvShape conv2{16, 2, 3};
  int dense_units = 128;
  int class_count = kNumClasses;
  int input_h = 2;
  int input_w = 128;

  void validate() const;

  int conv1_out_h() const { return input_h - conv1.kh + 1; }
  int conv1_out_w() const { return input_w - conv1.kw + 1; }
  int conv2_out_h() const { return conv1_out_h() - conv2.kh + 1; }
  int conv2_out_w() const { return conv1_out_w() - conv2.kw + 1; }
  int flat_size() const { return conv2.filters * conv2_out_h() * conv2_out_w(); }
};

NetSpec make_net_spec(const Hyperparams& hyper, int input_h = 2, int input_w = 128,
                      int class_count = kNumClasses);

template <typename T>
struct ParamsT {
  TensorT<T> conv1_w, conv1_b;
  TensorT<T> conv2_w, conv2_b;
  TensorT<T> fc1_w, fc1_b;
  TensorT<T> fc2_w, fc2_b;

  std::array<TensorT<T>*, 8> all() {
    return {&conv1_w, &conv1_b, &conv2_w, &conv2_b, &fc1_w, &fc1_b, &fc2_w, &fc2_b};
  }
  std::array<const TensorT<T>*, 8> all() const {
    return {&conv1_w, &conv1_b, &conv2_w, &conv2_b, &fc1_w, &fc1_b, &fc2_w, &fc2_b};
  }
  // Weight tensors only; the L2 penalty excludes biases.
  std::array<const TensorT<T>*, 4> weights() const {
    return {&conv1_w, &conv2_w, &fc1_w, &fc2_w};
  }

  int64_t param_count() const {
    int64_t n = 0;
    for (const auto* t : all()) n += t->numel();
    return n;
  }
};

using ModelParams = ParamsT<float>;

template <typename To, typename From>
ParamsT<To> cast_params(const ParamsT<From>& src) {
  ParamsT<To> out;
  out.conv1_w = cast_tensor<To>(src.conv1_w);
  out.conv1_b = cast_tensor<To>(src.conv1_b);
  out.conv2_w = cast_tensor<To>(src.conv2_w);
  out.conv2_b = cast_tensor<To>(src.conv2_b);
  out.fc1_w = cast_tensor<To>(src.fc1_w);
  out.fc1_b = cast_tensor<To>(src.fc1_b);
  out.fc2_w = cast_tensor<To>(src.fc2_w);
  out.fc2_b = cast_tensor<To>(src.fc2_b);
  return out;
}

// Allocates zero parameter tensors shaped for `spec`.
template <typename T>
ParamsT<T> zero_params(const NetSpec& spec) {
  ParamsT<T> p;
  p.conv1_w = TensorT<T>({spec.conv1.filters, 1, spec.conv1.kh, spec.conv1.kw});
  p.conv1_b = TensorT<T>({spec.conv1.filters});
  p.conv2_w = TensorT<T>({spec.conv2.filters, spec.conv1.filters, spec.conv2.kh, spec.conv2.kw});
  p.conv2_b = TensorT<T>({spec.conv2.filters});
  p.fc1_w = TensorT<T>({spec.dense_units, spec.flat_size()});
  p.fc1_b = TensorT<T>({spec.dense_units});
  p.fc2_w = TensorT<T>({spec.class_count, spec.dense_units});
  p.fc2_b = TensorT<T>({spec.class_count});
  return p;
}

// Glorot-uniform conv weights, He-normal dense weights, zero biases.
ModelParams init_params(const NetSpec& spec, uint64_t seed);

// ---------------------------------------------------------------------------
// Layer primitives. Valid (no padding) cross-correlation throughout.

template <typename T>
TensorT<T> conv2d_forward(const TensorT<T>& x, const TensorT<T>& w, const TensorT<T>& b) {
  if (x.shape.size() != 3 || w.shape.size() != 4 || b.shape.size() != 1) {
    throw ShapeError("conv2d: expected x[C,H,W], w[K,C,kh,kw], b[K]");
  }
  const int c_in = x.shape[0], h = x.shape[1], wd = x.shape[2];
  const int k_out = w.shape[0], kh = w.shape[2], kw = w.shape[3];
  if (w.shape[1] != c_in) throw ShapeError("conv2d: channel mismatch");
  if (b.shape[0] != k_out) throw ShapeError("conv2d: bias/filter mismatch");
  if (kh > h || kw > wd) throw ShapeError("conv2d: kernel larger than input");

  const int oh = h - kh + 1, ow = wd - kw + 1;
  TensorT<T> y({k_out, oh, ow});
  for (int k = 0; k < k_out; ++k) {
    for (int c = 0; c < c_in; ++c) {
      for (int ky = 0; ky < kh; ++ky) {
        for (int kx = 0; kx < kw; ++kx) {
          const T wv = w.at(k, c, ky, kx);
          for (int oy = 0; oy < oh; ++oy) {
            const T* xrow = &x.at(c, oy + ky, kx);
            T* yrow = &y.at(k, oy, 0);
            for (int ox = 0; ox < ow; ++ox) yrow[ox] += wv * xrow[ox];
          }
        }
      }
    }
    const T bv = b.at(k);
    for (int i = 0; i < oh * ow; ++i) y.data[static_cast<size_t>(k) * oh * ow + i] += bv;
  }
  return y;
}

template <typename T>
void conv2d_backward(const TensorT<T>& x, const TensorT<T>& w, const TensorT<T>& dy,
                     TensorT<T>& dx, TensorT<T>& dw, TensorT<T>& db) {
  const int c_in = x.shape[0], h = x.shape[1], wd = x.shape[2];
  const int k_out = w.shape[0], kh = w.shape[2], kw = w.shape[3];
  const int oh = h - kh + 1, ow = wd - kw + 1;

  dx = TensorT<T>({c_in, h, wd});
  dw = TensorT<T>(w.shape);
  db = TensorT<T>({k_out});

  for (int k = 0; k < k_out; ++k) {
    T acc{};
    for (int i = 0; i < oh * ow; ++i) acc += dy.data[static_cast<size_t>(k) * oh * ow + i];
    db.at(k) = acc;
  }

  for (int k = 0; k < k_out; ++k) {
    for (int c = 0; c < c_in; ++c) {
      for (int ky = 0; ky < kh; ++ky) {
        for (int kx = 0; kx < kw; ++kx) {
          T acc{};
          for (int oy = 0; oy < oh; ++oy) {
            const T* xrow = &x.at(c, oy + ky, kx);
            const T* drow = &dy.at(k, oy, 0);
            for (int ox = 0; ox < ow; ++ox) acc += drow[ox] * xrow[ox];
          }
          dw.at(k, c, ky, kx) = acc;
        }
      }
    }
  }

  for (int k = 0; k < k_out; ++k) {
    for (int c = 0; c < c_in; ++c) {
      for (int ky = 0; ky < kh; ++ky) {
        for (int kx = 0; kx < kw; ++kx) {
          const T wv = w.at(k, c, ky, kx);
          for (int oy = 0; oy < oh; ++oy) {
            T* dxrow = &dx.at(c, oy + ky, kx);
            const T* drow = &dy.at(k, oy, 0);
            for (int ox = 0; ox < ow; ++ox) dxrow[ox] += wv * drow[ox];
          }
        }
      }
    }
  }
}

template <typename T>
TensorT<T> dense_forward(const TensorT<T>& x, const TensorT<T>& w, const TensorT<T>& b) {
  if (w.shape.size() != 2 || x.numel() != w.shape[1] || b.shape[0] != w.shape[0]) {
    throw ShapeError("dense: shape mismatch");
  }
  const int m = w.shape[0], n = w.shape[1];
  TensorT<T> y({m});
  for (int r = 0; r < m; ++r) {
    T acc{};
    const T* wrow = &w.at2(r, 0);
    for (int c = 0; c < n; ++c) acc += wrow[c] * x.at(c);
    y.at(r) = acc + b.at(r);
  }
  return y;
}

template <typename T>
void dense_backward(const TensorT<T>& x, const TensorT<T>& w, const TensorT<T>& dy,
                    TensorT<T>& dx, TensorT<T>& dw, TensorT<T>& db) {
  const int m = w.shape[0], n = w.shape[1];
  dx = TensorT<T>({n});
  dw = TensorT<T>(w.shape);
  db = dy;
  db.shape = {m};
  for (int r = 0; r < m; ++r) {
    const T g = dy.at(r);
    const T* wrow = &w.at2(r, 0);
    T* dwrow = &dw.at2(r, 0);
    for (int c = 0; c < n; ++c) {
      dwrow[c] = g * x.at(c);
      dx.at(c) += wrow[c] * g;
    }
  }
}

template <typename T>
TensorT<T> relu(const TensorT<T>& x) {
  TensorT<T> y = x;
  for (T& v : y.data) v = v > T{} ? v : T{};
  return y;
}

template <typename T>
TensorT<T> relu_backward(const TensorT<T>& pre, const TensorT<T>& dy) {
  TensorT<T> dx = dy;
  for (size_t i = 0; i < dx.data.size(); ++i) {
    if (!(pre.data[i] > T{})) dx.data[i] = T{};
  }
  return dx;
}

// Inverted dropout. In train mode each element is zeroed with probability
// `rate` and survivors are scaled by 1/(1-rate); the multiplicative mask is
// written to *mask so backward can reuse it. Infer mode is the identity.
template <typename T>
TensorT<T> dropout_forward(const TensorT<T>& x, float rate, RunMode mode, Rng* rng,
                           TensorT<T>* mask) {
  if (rate < 0.0f || rate >= 1.0f) throw ConfigError("dropout rate must lie in [0, 1)");
  if (mode == RunMode::kInfer || rate == 0.0f) {
    if (mask) {
      *mask = TensorT<T>(x.shape);
      for (T& v : mask->data) v = T{1};
    }
    return x;
  }
  if (!rng) throw ConfigError("dropout in train mode needs an RNG");
  const T keep_scale = T{1} / static_cast<T>(1.0f - rate);
  TensorT<T> y(x.shape);
  TensorT<T> m(x.shape);
  for (size_t i = 0; i < x.data.size(); ++i) {
    const bool keep = rng->uniform() >= rate;
    m.data[i] = keep ? keep_scale : T{};
    y.data[i] = x.data[i] * m.data[i];
  }
  if (mask) *mask = std::move(m);
  return y;
}

template <typename T>
TensorT<T> softmax(const TensorT<T>& logits) {
  TensorT<T> p = logits;
  T mx = p.data[0];
  for (const T& v : p.data) mx = v > mx ? v : mx;
  T sum{};
  for (T& v : p.data) {
    v = std::exp(v - mx);
    sum += v;
  }
  for (T& v : p.data) v /= sum;
  return p;
}

// Cross entropy with probability floor plus L2 weight penalty.
template <typename T>
T loss_from_probs(const TensorT<T>& probs, int y, const ParamsT<T>& params, T l2) {
  if (y < 0 || y >= static_cast<int>(probs.data.size())) {
    throw ShapeError("loss: label out of range");
  }
  const T floor = static_cast<T>(1e-12);
  const T py = probs.at(y) > floor ? probs.at(y) : floor;
  T loss = -std::log(py);
  if (l2 != T{}) {
    T acc{};
    for (const auto* w : params.weights()) {
      for (const T& v : w->data) acc += v * v;
    }
    loss += l2 / T{2} * acc;
  }
  return loss;
}

template <typename T>
struct ForwardCache {
  TensorT<T> x;
  TensorT<T> c1_pre, d1, mask1;
  TensorT<T> c2_pre, d2, mask2;
  TensorT<T> flat;
  TensorT<T> f1_pre, d3, mask3;
  TensorT<T> logits, probs;
};

// Runs the fixed layer sequence; returns class probabilities. With a cache
// supplied, every intermediate needed by backward is retained.
template <typename T>
TensorT<T> forward(const NetSpec& spec, const ParamsT<T>& params, const TensorT<T>& x,
                   float dropout_rate, RunMode mode, Rng* rng,
                   ForwardCache<T>* cache = nullptr) {
  if (x.shape.size() != 3 || x.shape[0] != 1 || x.shape[1] != spec.input_h ||
      x.shape[2] != spec.input_w) {
    throw ShapeError("forward: input must be shaped 1 x " + std::to_string(spec.input_h) +
                     " x " + std::to_string(spec.input_w));
  }
  TensorT<T> c1_pre = conv2d_forward(x, params.conv1_w, params.conv1_b);
  TensorT<T> r1 = relu(c1_pre);
  TensorT<T> mask1;
  TensorT<T> d1 = dropout_forward(r1, dropout_rate, mode, rng, cache ? &mask1 : nullptr);

  TensorT<T> c2_pre = conv2d_forward(d1, params.conv2_w, params.conv2_b);
  TensorT<T> r2 = relu(c2_pre);
  TensorT<T> mask2;
  TensorT<T> d2 = dropout_forward(r2, dropout_rate, mode, rng, cache ? &mask2 : nullptr);

  TensorT<T> flat = d2;
  flat.shape = {spec.flat_size()};

  TensorT<T> f1_pre = dense_forward(flat, params.fc1_w, params.fc1_b);
  TensorT<T> r3 = relu(f1_pre);
  TensorT<T> mask3;
  TensorT<T> d3 = dropout_forward(r3, dropout_rate, mode, rng, cache ? &mask3 : nullptr);

  TensorT<T> logits = dense_forward(d3, params.fc2_w, params.fc2_b);
  TensorT<T> probs = softmax(logits);

  if (cache) {
    cache->x = x;
    cache->c1_pre = std::move(c1_pre);
    cache->d1 = std::move(d1);
    cache->mask1 = std::move(mask1);
    cache->c2_pre = std::move(c2_pre);
    cache->d2 = std::move(d2);
    cache->mask2 = std::move(mask2);
    cache->flat = std::move(flat);
    cache->f1_pre = std::move(f1_pre);
    cache->d3 = std::move(d3);
    cache->mask3 = std::move(mask3);
    cache->logits = std::move(logits);
    cache->probs = probs;
  }
  return probs;
}

template <typename T>
struct BackwardResult {
  ParamsT<T> grads;
  TensorT<T> input_grad;
  T loss{};
  TensorT<T> probs;
};

// Exact reverse-mode gradients of the loss with respect to every parameter
// and to the input. Dropout masks are drawn once in the forward pass and
// reused; in infer mode the whole computation is deterministic.
template <typename T>
BackwardResult<T> backward(const NetSpec& spec, const ParamsT<T>& params, const TensorT<T>& x,
                           int y, T l2, float dropout_rate, RunMode mode, Rng* rng = nullptr) {
  ForwardCache<T> cache;
  forward(spec, params, x, dropout_rate, mode, rng, &cache);

  BackwardResult<T> out;
  out.probs = cache.probs;
  out.loss = loss_from_probs(cache.probs, y, params, l2);

  // Softmax + cross entropy collapse to probs - onehot(y).
  TensorT<T> dlogits = cache.probs;
  dlogits.at(y) -= T{1};

  TensorT<T> dd3, dfc2_w, dfc2_b;
  dense_backward(cache.d3, params.fc2_w, dlogits, dd3, dfc2_w, dfc2_b);
  TensorT<T> dr3 = dd3;
  for (size_t i = 0; i < dr3.data.size(); ++i) dr3.data[i] *= cache.mask3.data[i];
  TensorT<T> df1_pre = relu_backward(cache.f1_pre, dr3);

  TensorT<T> dflat, dfc1_w, dfc1_b;
  dense_backward(cache.flat, params.fc1_w, df1_pre, dflat, dfc1_w, dfc1_b);

  TensorT<T> dd2 = dflat;
  dd2.shape = cache.d2.shape;
  TensorT<T> dr2 = dd2;
  for (size_t i = 0; i < dr2.data.size(); ++i) dr2.data[i] *= cache.mask2.data[i];
  TensorT<T> dc2_pre = relu_backward(cache.c2_pre, dr2);

  TensorT<T> dd1, dconv2_w, dconv2_b;
  conv2d_backward(cache.d1, params.conv2_w, dc2_pre, dd1, dconv2_w, dconv2_b);
  TensorT<T> dr1 = dd1;
  for (size_t i = 0; i < dr1.data.size(); ++i) dr1.data[i] *= cache.mask1.data[i];
  TensorT<T> dc1_pre = relu_backward(cache.c1_pre, dr1);

  TensorT<T> dx, dconv1_w, dconv1_b;
  conv2d_backward(cache.x, params.conv1_w, dc1_pre, dx, dconv1_w, dconv1_b);

  out.grads.conv1_w = std::move(dconv1_w);
  out.grads.conv1_b = std::move(dconv1_b);
  out.grads.conv2_w = std::move(dconv2_w);
  out.grads.conv2_b = std::move(dconv2_b);
  out.grads.fc1_w = std::move(dfc1_w);
  out.grads.fc1_b = std::move(dfc1_b);
  out.grads.fc2_w = std::move(dfc2_w);
  out.grads.fc2_b = std::move(dfc2_b);
  out.input_grad = std::move(dx);

  if (l2 != T{}) {
    auto add_l2 = [&](TensorT<T>& g, const TensorT<T>& w) {
      for (size_t i = 0; i < g.data.size(); ++i) g.data[i] += l2 * w.data[i];
    };
    add_l2(out.grads.conv1_w, params.conv1_w);
    add_l2(out.grads.conv2_w, params.conv2_w);
    add_l2(out.grads.fc1_w, params.fc1_w);
    add_l2(out.grads.fc2_w, params.fc2_w);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Adam optimizer (bias-corrected moments).

struct AdamState {
  ParamsT<float> m, v;
  int64_t t = 0;
  float learning_rate = 1e-3f;
  float beta1 = 0.9f;
  float beta2 = 0.999f;
  float epsilon_hat = 1e-8f;
};

AdamState make_adam_state(const NetSpec& spec, float learning_rate);

void adam_step(ModelParams& params, const ParamsT<float>& grads, AdamState& state);

}  // namespace modrec
