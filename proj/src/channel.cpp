#include "modrec/channel.hpp"

#include <cmath>

#include "modrec/sigsynth.hpp"
#include "modrec/streams.hpp"

namespace modrec {

void TwoPathConfig::validate_fixed() const {
  if (!(scale >= 0.0f)) throw ConfigError("two-path scale must be >= 0");
  if (!std::isfinite(gain.real()) || !std::isfinite(gain.imag())) {
    throw ConfigError("two-path gain must be finite");
  }
  if (delay < 1 || delay >= kBurstLen) {
    throw ConfigError("two-path delay must lie in [1, 143]");
  }
}

void TwoPathConfig::validate_random() const {
  if (!(scale >= 0.0f)) throw ConfigError("two-path scale must be >= 0");
  if (!std::isfinite(gain.real()) || !std::isfinite(gain.imag())) {
    throw ConfigError("two-path gain must be finite");
  }
  if (delay_min > delay_max) throw ConfigError("empty two-path delay range");
  if (delay_min < 1 || delay_max >= kBurstLen) {
    throw ConfigError("two-path delay range must lie within [1, 143]");
  }
}

namespace {

IQFrame two_path_core(const cfloat* x, float scale, cfloat gain, int delay) {
  IQFrame out;
  const cfloat tap = scale * gain;
  for (int n = 0; n < kFrameLen; ++n) {
    cfloat y = x[n];
    if (n >= delay) y += tap * x[n - delay];
    out.samples[static_cast<size_t>(n)] = y;
  }
  return out;
}

}  // namespace

IQFrame apply_two_path_fixed(const RawBurst& burst, const TwoPathConfig& cfg) {
  cfg.validate_fixed();
  return two_path_core(burst.samples.data(), cfg.scale, cfg.gain, cfg.delay);
}

IQFrame apply_two_path_fixed(const std::vector<cfloat>& x, const TwoPathConfig& cfg) {
  if (static_cast<int>(x.size()) != kBurstLen) {
    throw ShapeError("two-path input must have exactly 144 samples, got " +
                     std::to_string(x.size()));
  }
  cfg.validate_fixed();
  return two_path_core(x.data(), cfg.scale, cfg.gain, cfg.delay);
}

std::pair<IQFrame, ChannelTruth> apply_two_path_random(const RawBurst& burst,
                                                       const TwoPathConfig& cfg,
                                                       Rng& rng) {
  cfg.validate_random();
  const int span = cfg.delay_max - cfg.delay_min + 1;
  const int delay = cfg.delay_min + static_cast<int>(rng.uniform_int(static_cast<uint64_t>(span)));
  ChannelTruth truth{delay, cfg.scale, ChannelTag::kTwoPathRandom};
  return {two_path_core(burst.samples.data(), cfg.scale, cfg.gain, delay), truth};
}

void ChannelRecipe::validate() const {
  switch (tag) {
    case ChannelTag::kAwgn:
      return;
    case ChannelTag::kTwoPathFixed:
      two_path.validate_fixed();
      return;
    case ChannelTag::kTwoPathRandom:
      two_path.validate_random();
      return;
  }
  throw ConfigError("unknown channel tag");
}

LabeledFrame apply_recipe_and_noise(const RawBurst& burst,
                                    const ChannelRecipe& recipe,
                                    uint64_t stream_salt) {
  LabeledFrame out;
  out.cls = burst.cls;
  out.snr_db = burst.nominal_snr_db;
  out.channel_tag = recipe.tag;
  out.clean_rms = static_cast<float>(rms(burst.samples.data(), kFrameLen));

  // Noise is calibrated against the clean burst power, not the channel output.
  const double p_ref = mean_power(burst.samples.data(), kBurstLen);

  switch (recipe.tag) {
    case ChannelTag::kAwgn: {
      for (int n = 0; n < kFrameLen; ++n) {
        out.frame.samples[static_cast<size_t>(n)] = burst.samples[static_cast<size_t>(n)];
      }
      out.path_scale = 0.0f;
      out.path_delay = 0;
      break;
    }
    case ChannelTag::kTwoPathFixed: {
      out.frame = apply_two_path_fixed(burst, recipe.two_path);
      out.path_scale = recipe.two_path.scale;
      out.path_delay = static_cast<uint8_t>(recipe.two_path.delay);
      break;
    }
    case ChannelTag::kTwoPathRandom: {
      Rng chan_rng(derive_seed(burst.seed, kStreamChannel, stream_salt));
      auto [frame, truth] = apply_two_path_random(burst, recipe.two_path, chan_rng);
      out.frame = frame;
      out.path_scale = truth.applied_scale;
      out.path_delay = static_cast<uint8_t>(truth.applied_delay);
      break;
    }
  }

  if (!std::isinf(burst.nominal_snr_db)) {
    Rng noise_rng(derive_seed(burst.seed, kStreamNoise, stream_salt));
    add_awgn_with_power(out.frame.samples.data(), kFrameLen, p_ref,
                        burst.nominal_snr_db, noise_rng);
  }
  return out;
}

std::vector<LabeledFrame> derive_isi_dataset(const std::vector<RawBurst>& bursts,
                                             TwoPathVariant variant,
                                             float scale,
                                             const TwoPathConfig& base_cfg,
                                             uint64_t stream_salt) {
  ChannelRecipe recipe;
  recipe.tag = variant == TwoPathVariant::kFixed ? ChannelTag::kTwoPathFixed
                                                 : ChannelTag::kTwoPathRandom;
  recipe.two_path = base_cfg;
  recipe.two_path.scale = scale;
  recipe.validate();

  std::vector<LabeledFrame> out;
  out.reserve(bursts.size());
  for (const RawBurst& b : bursts) {
    out.push_back(apply_recipe_and_noise(b, recipe, stream_salt));
  }
  return out;
}

}  // namespace modrec
