#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "modrec/frame.hpp"
#include "modrec/rng.hpp"

namespace modrec {

// Two-path specular channel: direct path plus one delayed, complex-scaled
// echo. The echo delay is either fixed or drawn uniformly per frame.
struct TwoPathConfig {
  cfloat gain{0.2781f, 0.856f};
  float scale = 1.0f;
  int delay = 8;        // fixed variant, samples
  int delay_min = 1;    // random variant, inclusive
  int delay_max = 8;

  void validate_fixed() const;
  void validate_random() const;
};

struct ChannelTruth {
  int applied_delay = 0;
  float applied_scale = 0.0f;
  ChannelTag tag = ChannelTag::kAwgn;
};

// What the generation pipeline applies after synthesis.
struct ChannelRecipe {
  ChannelTag tag = ChannelTag::kAwgn;
  TwoPathConfig two_path;

  void validate() const;
};

// y[n] = x[n] + scale * gain * x[n - delay] for n in [0, 128), with
// x[m] = 0 for m < 0; keeps exactly the first 128 samples.
IQFrame apply_two_path_fixed(const RawBurst& burst, const TwoPathConfig& cfg);

// Same, for loose sample vectors; throws ShapeError unless x has exactly
// 144 samples.
IQFrame apply_two_path_fixed(const std::vector<cfloat>& x, const TwoPathConfig& cfg);

// Same arithmetic with the delay drawn uniformly from [delay_min, delay_max].
std::pair<IQFrame, ChannelTruth> apply_two_path_random(const RawBurst& burst,
                                                       const TwoPathConfig& cfg,
                                                       Rng& rng);

enum class TwoPathVariant { kFixed, kRandom };

// One burst through channel + noise. Channel and noise streams derive from
// (burst.seed, stream_salt), so results are order- and thread-independent
// and identical bursts get identical noise across different scale settings.
LabeledFrame apply_recipe_and_noise(const RawBurst& burst,
                                    const ChannelRecipe& recipe,
                                    uint64_t stream_salt = 0);

// Pushes clean bursts through the two-path channel and re-noises each at its
// nominal SNR.
std::vector<LabeledFrame> derive_isi_dataset(const std::vector<RawBurst>& bursts,
                                             TwoPathVariant variant,
                                             float scale,
                                             const TwoPathConfig& base_cfg = {},
                                             uint64_t stream_salt = 0);

}  // namespace modrec
