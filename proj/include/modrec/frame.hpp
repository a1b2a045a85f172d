#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "modrec/common.hpp"
#include "modrec/modclass.hpp"

namespace modrec {

enum class ChannelTag : uint8_t {
  kAwgn = 0,
  kTwoPathFixed = 1,
  kTwoPathRandom = 2,
};

const char* channel_tag_name(ChannelTag tag);

// Fixed-length classifier input: 128 complex baseband samples.
struct IQFrame {
  std::array<cfloat, kFrameLen> samples{};
};

// Pre-channel waveform. Carries its nominal SNR and the per-frame seed so
// channel and noise stages can derive their own streams from it.
struct RawBurst {
  std::array<cfloat, kBurstLen> samples{};
  ModClass cls = ModClass::kBpsk;
  float nominal_snr_db = kSnrNoNoise;
  uint64_t seed = 0;
};

struct LabeledFrame {
  IQFrame frame;
  ModClass cls = ModClass::kBpsk;
  float snr_db = kSnrNoNoise;
  ChannelTag channel_tag = ChannelTag::kAwgn;
  float path_scale = 0.0f;
  uint8_t path_delay = 0;
  float clean_rms = 0.0f;  // RMS of the pre-noise, pre-channel frame window
};

struct GenConfig {
  int samples_per_symbol = 8;
  double rrc_rolloff = 0.35;
  std::vector<float> snr_grid_db;  // default set by make_default_snr_grid()
  int frames_per_combo = 1000;
  uint64_t master_seed = 0;
  std::vector<ModClass> classes;  // empty means all 11

  // Throws ConfigError when invariants are violated.
  void validate() const;

  std::vector<ModClass> effective_classes() const;
};

// -20 dB to +18 dB in steps of 2 dB.
std::vector<float> make_default_snr_grid();

// RMS over the first `n` samples: sqrt(mean |s|^2).
double rms(const cfloat* samples, int n);
double mean_power(const cfloat* samples, int n);

}  // namespace modrec
