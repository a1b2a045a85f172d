#include "modrec/sigsynth.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <numbers>
#include <thread>

#include "modrec/dsp.hpp"
#include "modrec/streams.hpp"

namespace modrec {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kRrcSpan = 4;       // symbols each side
constexpr int kGaussSpan = 2;     // symbols each side
constexpr double kGaussBt = 0.35;
constexpr double kCpfskIndex = 0.5;
constexpr double kGfskIndex = 0.5;
constexpr double kFmDeviation = 0.15;   // fraction of the sample rate
constexpr double kAmDepth = 0.5;
constexpr double kMessageCutoff = 0.1;  // fraction of the sample rate

// Scales the first kBurstLen samples to exactly unit average power and
// packs them into a RawBurst.
RawBurst pack_burst(const std::vector<cdouble>& sig, ModClass cls) {
  double p = 0.0;
  for (int i = 0; i < kBurstLen; ++i) p += std::norm(sig[static_cast<size_t>(i)]);
  p /= kBurstLen;
  const double g = p > 0.0 ? 1.0 / std::sqrt(p) : 1.0;
  RawBurst out;
  out.cls = cls;
  for (int i = 0; i < kBurstLen; ++i) {
    const cdouble v = sig[static_cast<size_t>(i)] * g;
    out.samples[static_cast<size_t>(i)] =
        cfloat(static_cast<float>(v.real()), static_cast<float>(v.imag()));
  }
  return out;
}

// Draws random symbols, pulse-shapes with the RRC filter and cuts a
// steady-state window of kBurstLen samples.
RawBurst linear_modulate(ModClass cls, Rng& rng, const GenConfig& cfg) {
  const int sps = cfg.samples_per_symbol;
  const int half = kRrcSpan * sps;
  const int window_start = 2 * half;
  const int n_syms = (window_start + kBurstLen) / sps + 1;
  const int order = constellation_order(cls);

  std::vector<cdouble> impulses(static_cast<size_t>(n_syms) * sps, cdouble{0.0, 0.0});
  for (int k = 0; k < n_syms; ++k) {
    const auto sym = static_cast<uint32_t>(rng.uniform_int(static_cast<uint64_t>(order)));
    impulses[static_cast<size_t>(k) * sps] = map_symbol(cls, sym);
  }

  const std::vector<double> taps = rrc_taps(sps, cfg.rrc_rolloff, kRrcSpan);
  const std::vector<cdouble> shaped = fir_full(impulses, taps);

  std::vector<cdouble> window(shaped.begin() + window_start,
                              shaped.begin() + window_start + kBurstLen);
  return pack_burst(window, cls);
}

// Binary continuous-phase FSK; `gaussian` selects GFSK pulse shaping.
RawBurst cpm_modulate(ModClass cls, Rng& rng, const GenConfig& cfg, bool gaussian) {
  const int sps = cfg.samples_per_symbol;
  const int half = gaussian ? kGaussSpan * sps : 0;
  const int window_start = 2 * half;
  const int n_bits = (window_start + kBurstLen) / sps + 2;

  std::vector<cdouble> nrz(static_cast<size_t>(n_bits) * sps);
  for (int k = 0; k < n_bits; ++k) {
    const double b = rng.uniform_int(2) == 0 ? 1.0 : -1.0;
    for (int i = 0; i < sps; ++i) nrz[static_cast<size_t>(k) * sps + i] = cdouble{b, 0.0};
  }

  std::vector<cdouble> freq;
  if (gaussian) {
    freq = fir_full(nrz, gaussian_taps(sps, kGaussBt, kGaussSpan));
  } else {
    freq = nrz;
  }

  const double h = gaussian ? kGfskIndex : kCpfskIndex;
  const double step = kPi * h / sps;
  std::vector<cdouble> sig(kBurstLen);
  double phase = 0.0;
  for (int n = 0; n < window_start + kBurstLen; ++n) {
    phase += step * freq[static_cast<size_t>(n)].real();
    if (n >= window_start) {
      sig[static_cast<size_t>(n - window_start)] = cdouble{std::cos(phase), std::sin(phase)};
    }
  }
  return pack_burst(sig, cls);
}

}  // namespace

int constellation_order(ModClass cls) {
  switch (cls) {
    case ModClass::kBpsk: return 2;
    case ModClass::kQpsk: return 4;
    case ModClass::kPsk8: return 8;
    case ModClass::kQam16: return 16;
    case ModClass::kQam64: return 64;
    case ModClass::kPam4: return 4;
    default:
      throw ValidationError("no constellation for class " + mod_class_name(cls));
  }
}

cdouble map_symbol(ModClass cls, uint32_t symbol) {
  switch (cls) {
    case ModClass::kBpsk:
      return {symbol == 0 ? 1.0 : -1.0, 0.0};
    case ModClass::kQpsk: {
      const double i = (symbol & 1u) ? -1.0 : 1.0;
      const double q = (symbol & 2u) ? -1.0 : 1.0;
      return cdouble{i, q} / std::numbers::sqrt2;
    }
    case ModClass::kPsk8: {
      const double ang = 2.0 * kPi * symbol / 8.0;
      return {std::cos(ang), std::sin(ang)};
    }
    case ModClass::kQam16: {
      static const double levels[4] = {-3.0, -1.0, 1.0, 3.0};
      const double i = levels[symbol & 3u];
      const double q = levels[(symbol >> 2) & 3u];
      return cdouble{i, q} / std::sqrt(10.0);
    }
    case ModClass::kQam64: {
      static const double levels[8] = {-7.0, -5.0, -3.0, -1.0, 1.0, 3.0, 5.0, 7.0};
      const double i = levels[symbol & 7u];
      const double q = levels[(symbol >> 3) & 7u];
      return cdouble{i, q} / std::sqrt(42.0);
    }
    case ModClass::kPam4: {
      static const double levels[4] = {-3.0, -1.0, 1.0, 3.0};
      return {levels[symbol & 3u] / std::sqrt(5.0), 0.0};
    }
    default:
      throw ValidationError("no constellation for class " + mod_class_name(cls));
  }
}

RawBurst modulate_digital(ModClass cls, Rng& rng, const GenConfig& cfg) {
  cfg.validate();
  switch (cls) {
    case ModClass::kBpsk:
    case ModClass::kQpsk:
    case ModClass::kPsk8:
    case ModClass::kQam16:
    case ModClass::kQam64:
    case ModClass::kPam4:
      return linear_modulate(cls, rng, cfg);
    case ModClass::kGfsk:
      return cpm_modulate(cls, rng, cfg, /*gaussian=*/true);
    case ModClass::kCpfsk:
      return cpm_modulate(cls, rng, cfg, /*gaussian=*/false);
    default:
      throw ValidationError("modulate_digital: " + mod_class_name(cls) +
                            " is not a digital class");
  }
}

std::vector<double> draw_message(Rng& rng, int n) {
  std::vector<double> raw(static_cast<size_t>(n));
  for (double& v : raw) v = rng.normal();
  std::vector<double> filtered = brickwall_lowpass(raw, kMessageCutoff);
  double p = 0.0;
  for (double v : filtered) p += v * v;
  p /= n;
  if (p > 0.0) {
    const double g = 1.0 / std::sqrt(p);
    for (double& v : filtered) v *= g;
  }
  return filtered;
}

std::vector<cdouble> am_dsb_from_message(const std::vector<double>& msg) {
  std::vector<cdouble> sig(msg.size());
  for (size_t i = 0; i < msg.size(); ++i) sig[i] = cdouble{1.0 + kAmDepth * msg[i], 0.0};
  return sig;
}

std::vector<cdouble> am_ssb_from_message(const std::vector<double>& msg) {
  return analytic_signal(msg);
}

std::vector<cdouble> wbfm_from_message(const std::vector<double>& msg) {
  std::vector<cdouble> sig(msg.size());
  double phase = 0.0;
  for (size_t i = 0; i < msg.size(); ++i) {
    phase += 2.0 * kPi * kFmDeviation * msg[i];
    sig[i] = cdouble{std::cos(phase), std::sin(phase)};
  }
  return sig;
}

RawBurst modulate_analog(ModClass cls, Rng& rng, const GenConfig& cfg) {
  cfg.validate();
  const std::vector<double> msg = draw_message(rng, kBurstLen);
  switch (cls) {
    case ModClass::kWbfm:
      return pack_burst(wbfm_from_message(msg), cls);
    case ModClass::kAmDsb:
      return pack_burst(am_dsb_from_message(msg), cls);
    case ModClass::kAmSsb:
      return pack_burst(am_ssb_from_message(msg), cls);
    default:
      throw ValidationError("modulate_analog: " + mod_class_name(cls) +
                            " is not an analog class");
  }
}

RawBurst modulate(ModClass cls, Rng& rng, const GenConfig& cfg) {
  return is_digital(cls) ? modulate_digital(cls, rng, cfg)
                         : modulate_analog(cls, rng, cfg);
}

void add_awgn_with_power(cfloat* x, int n, double ref_power, float snr_db, Rng& rng) {
  if (std::isinf(snr_db) && snr_db > 0) return;
  if (!(ref_power > 0.0)) {
    throw ValidationError("add_awgn: input has zero power, SNR undefined");
  }
  const double variance = ref_power * std::pow(10.0, -static_cast<double>(snr_db) / 10.0);
  const double sd = std::sqrt(variance / 2.0);
  for (int i = 0; i < n; ++i) {
    const auto [ni, nq] = rng.normal_pair();
    const cdouble y = static_cast<cdouble>(x[i]) + cdouble{sd * ni, sd * nq};
    x[i] = cfloat(static_cast<float>(y.real()), static_cast<float>(y.imag()));
  }
}

std::vector<cfloat> add_awgn(const std::vector<cfloat>& x, float snr_db, Rng& rng) {
  if (x.empty()) throw ValidationError("add_awgn: empty input");
  std::vector<cfloat> out = x;
  if (std::isinf(snr_db) && snr_db > 0) return out;
  const double p = mean_power(x.data(), static_cast<int>(x.size()));
  add_awgn_with_power(out.data(), static_cast<int>(out.size()), p, snr_db, rng);
  return out;
}

namespace {

// snr key for seed derivation: centi-dB, sentinel for "no noise".
uint64_t snr_seed_key(float snr_db) {
  if (std::isinf(snr_db)) return 0x7fff;
  return static_cast<uint64_t>(static_cast<int64_t>(std::llround(snr_db * 100.0f)));
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace

std::vector<RawBurst> synth_bursts(const GenConfig& cfg, int threads) {
  cfg.validate();
  const std::vector<ModClass> classes = cfg.effective_classes();
  const int per_class = static_cast<int>(cfg.snr_grid_db.size()) * cfg.frames_per_combo;
  const int total = static_cast<int>(classes.size()) * per_class;

  std::vector<RawBurst> out(static_cast<size_t>(total));
  parallel_for(total, threads, [&](int idx) {
    const int ci = idx / per_class;
    const int rest = idx % per_class;
    const int si = rest / cfg.frames_per_combo;
    const int fi = rest % cfg.frames_per_combo;
    const ModClass cls = classes[static_cast<size_t>(ci)];
    const float snr = cfg.snr_grid_db[static_cast<size_t>(si)];

    const uint64_t frame_seed = derive_seed(cfg.master_seed, mod_class_id(cls),
                                            snr_seed_key(snr), static_cast<uint64_t>(fi));
    Rng synth_rng(derive_seed(frame_seed, kStreamSynth));
    RawBurst b = modulate(cls, synth_rng, cfg);
    b.nominal_snr_db = snr;
    b.seed = frame_seed;
    out[static_cast<size_t>(idx)] = b;
  });
  return out;
}

std::vector<LabeledFrame> generate_dataset(const GenConfig& cfg,
                                           const ChannelRecipe& recipe,
                                           int threads) {
  cfg.validate();
  recipe.validate();
  const std::vector<RawBurst> bursts = synth_bursts(cfg, threads);
  std::vector<LabeledFrame> out(bursts.size());
  parallel_for(static_cast<int>(bursts.size()), threads, [&](int idx) {
    out[static_cast<size_t>(idx)] =
        apply_recipe_and_noise(bursts[static_cast<size_t>(idx)], recipe, 0);
  });
  return out;
}

namespace {

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  if (threads <= 1 || n < 2 * threads) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  pool.reserve(static_cast<size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

}  // namespace modrec
