#pragma once

#include <vector>

#include "modrec/channel.hpp"
#include "modrec/frame.hpp"
#include "modrec/modclass.hpp"
#include "modrec/rng.hpp"

namespace modrec {

// Constellation size for the linear digital classes (BPSK..PAM4).
int constellation_order(ModClass cls);

// Unit-average-power constellation point for symbol index `symbol`.
// Linear digital classes only; throws ValidationError otherwise.
cdouble map_symbol(ModClass cls, uint32_t symbol);

// Clean unit-power burst for one of the eight digital classes.
// Throws ValidationError for an analog class.
RawBurst modulate_digital(ModClass cls, Rng& rng, const GenConfig& cfg);

// Clean unit-power burst for WBFM / AM-DSB / AM-SSB.
// Throws ValidationError for a digital class.
RawBurst modulate_analog(ModClass cls, Rng& rng, const GenConfig& cfg);

// Dispatches on the class family.
RawBurst modulate(ModClass cls, Rng& rng, const GenConfig& cfg);

// Message-level analog modulators, exposed for direct testing. The message
// is real-valued, kBurstLen samples. Output is normalized to unit power
// (degenerate all-zero AM-SSB/WBFM inputs excepted; AM-DSB carries the
// carrier term so it never degenerates).
std::vector<cdouble> am_dsb_from_message(const std::vector<double>& msg);
std::vector<cdouble> am_ssb_from_message(const std::vector<double>& msg);
std::vector<cdouble> wbfm_from_message(const std::vector<double>& msg);

// Band-limited filtered Gaussian message, unit RMS, cutoff 0.1 * sample rate.
std::vector<double> draw_message(Rng& rng, int n);

// x + circularly-symmetric complex Gaussian noise with per-sample variance
// P * 10^(-snr_db/10), P measured from x. snr_db == kSnrNoNoise returns x
// unchanged. Throws ValidationError on zero-power input.
std::vector<cfloat> add_awgn(const std::vector<cfloat>& x, float snr_db, Rng& rng);

// Same, with the reference power supplied by the caller (the pipeline
// calibrates noise against the clean burst, not the channel output).
void add_awgn_with_power(cfloat* x, int n, double ref_power, float snr_db, Rng& rng);

// Clean bursts only: one per (class, snr, frame index), each carrying its
// derived seed. Deterministic and order-independent.
std::vector<RawBurst> synth_bursts(const GenConfig& cfg, int threads = 1);

// Full pipeline: synthesis, channel, noise. Exactly
// |classes| * |snr_grid| * frames_per_combo frames, invariant under thread
// count and iteration order.
std::vector<LabeledFrame> generate_dataset(const GenConfig& cfg,
                                           const ChannelRecipe& recipe,
                                           int threads = 1);

}  // namespace modrec
