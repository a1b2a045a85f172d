#include "modrec/nn.hpp"

#include <cmath>

#include "modrec/common.hpp"

namespace modrec {

void Hyperparams::validate() const {
  if (conv1_filters <= 0 || conv2_filters <= 0 || dense_units <= 0) {
    throw ConfigError("layer sizes must be positive");
  }
  if (!(learning_rate >= 0.0f)) throw ConfigError("learning_rate must be >= 0");
  if (!(l2_coefficient >= 0.0f)) throw ConfigError("l2_coefficient must be >= 0");
  if (dropout_rate < 0.0f || dropout_rate >= 1.0f) {
    throw ConfigError("dropout_rate must lie in [0, 1)");
  }
  if (batch_size <= 0) throw ConfigError("batch_size must be positive");
  if (epochs <= 0) throw ConfigError("epochs must be positive");
}

void NetSpec::validate() const {
  if (conv1.filters <= 0 || conv2.filters <= 0 || dense_units <= 0) {
    throw ConfigError("layer sizes must be positive");
  }
  if (class_count < 2) throw ConfigError("class_count must be >= 2");
  if (conv1.kh > input_h || conv1.kw > input_w) {
    throw ConfigError("conv1 kernel larger than input");
  }
  if (conv2.kh > conv1_out_h() || conv2.kw > conv1_out_w()) {
    throw ConfigError("conv2 kernel larger than conv1 output");
  }
}

NetSpec make_net_spec(const Hyperparams& hyper, int input_h, int input_w, int class_count) {
  NetSpec spec;
  spec.conv1 = ConvShape{hyper.conv1_filters, 1, 3};
  spec.conv2 = ConvShape{hyper.conv2_filters, 2, 3};
  spec.dense_units = hyper.dense_units;
  spec.class_count = class_count;
  spec.input_h = input_h;
  spec.input_w = input_w;
  spec.validate();
  return spec;
}

namespace {

void fill_glorot_uniform(Tensor& w, int fan_in, int fan_out, Rng& rng) {
  const double bound = std::sqrt(6.0 / (fan_in + fan_out));
  for (float& v : w.data) v = static_cast<float>(rng.uniform(-bound, bound));
}

void fill_he_normal(Tensor& w, int fan_in, Rng& rng) {
  const double sd = std::sqrt(2.0 / fan_in);
  for (float& v : w.data) v = static_cast<float>(sd * rng.normal());
}

}  // namespace

ModelParams init_params(const NetSpec& spec, uint64_t seed) {
  spec.validate();
  ModelParams p = zero_params<float>(spec);
  Rng rng(derive_seed(seed, 0x494e4954));  // "INIT"

  // Conv layers: Glorot-uniform over receptive-field fan.
  fill_glorot_uniform(p.conv1_w, 1 * spec.conv1.kh * spec.conv1.kw,
                      spec.conv1.filters * spec.conv1.kh * spec.conv1.kw, rng);
  fill_glorot_uniform(p.conv2_w, spec.conv1.filters * spec.conv2.kh * spec.conv2.kw,
                      spec.conv2.filters * spec.conv2.kh * spec.conv2.kw, rng);
  // Dense layers: He-normal on fan-in.
  fill_he_normal(p.fc1_w, spec.flat_size(), rng);
  fill_he_normal(p.fc2_w, spec.dense_units, rng);
  return p;
}

AdamState make_adam_state(const NetSpec& spec, float learning_rate) {
  AdamState s;
  s.m = zero_params<float>(spec);
  s.v = zero_params<float>(spec);
  s.learning_rate = learning_rate;
  return s;
}

void adam_step(ModelParams& params, const ParamsT<float>& grads, AdamState& state) {
  state.t += 1;
  const double bc1 = 1.0 - std::pow(static_cast<double>(state.beta1), static_cast<double>(state.t));
  const double bc2 = 1.0 - std::pow(static_cast<double>(state.beta2), static_cast<double>(state.t));

  auto tensors = params.all();
  auto m_tensors = state.m.all();
  auto v_tensors = state.v.all();
  auto g_tensors = grads.all();

  for (size_t ti = 0; ti < tensors.size(); ++ti) {
    Tensor& p = *tensors[ti];
    Tensor& m = *m_tensors[ti];
    Tensor& v = *v_tensors[ti];
    const Tensor& g = *g_tensors[ti];
    if (!p.same_shape(g)) throw ShapeError("adam_step: gradient shape mismatch");

    for (size_t i = 0; i < p.data.size(); ++i) {
      const float gi = g.data[i];
      m.data[i] = state.beta1 * m.data[i] + (1.0f - state.beta1) * gi;
      v.data[i] = state.beta2 * v.data[i] + (1.0f - state.beta2) * gi * gi;
      const float m_hat = static_cast<float>(m.data[i] / bc1);
      const float v_hat = static_cast<float>(v.data[i] / bc2);
      p.data[i] -= state.learning_rate * m_hat / (std::sqrt(v_hat) + state.epsilon_hat);
    }
  }
}

}  // namespace modrec
