#include "modrec/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "modrec/rng.hpp"

namespace modrec {

int64_t ConfusionMatrix::total() const {
  int64_t n = 0;
  for (const auto& row : counts) {
    for (int64_t c : row) n += c;
  }
  return n;
}

int64_t ConfusionMatrix::trace() const {
  int64_t n = 0;
  for (int i = 0; i < kNumClasses; ++i) n += counts[static_cast<size_t>(i)][static_cast<size_t>(i)];
  return n;
}

double ConfusionMatrix::accuracy() const {
  const int64_t n = total();
  return n == 0 ? 0.0 : static_cast<double>(trace()) / static_cast<double>(n);
}

int64_t ConfusionMatrix::row_sum(int true_class) const {
  int64_t n = 0;
  for (int64_t c : counts[static_cast<size_t>(true_class)]) n += c;
  return n;
}

ConfusionMatrix confusion(const std::vector<int>& predictions,
                          const std::vector<int>& labels) {
  if (predictions.size() != labels.size()) {
    throw ShapeError("confusion: prediction/label count mismatch");
  }
  ConfusionMatrix m;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= kNumClasses || predictions[i] < 0 ||
        predictions[i] >= kNumClasses) {
      throw ValidationError("confusion: class id out of range");
    }
    m.counts[static_cast<size_t>(labels[i])][static_cast<size_t>(predictions[i])] += 1;
  }
  return m;
}

void SplitConfig::validate() const {
  if (!(train_fraction > 0.0 && val_fraction > 0.0 && test_fraction > 0.0)) {
    throw ConfigError("split fractions must be positive");
  }
  if (std::abs(train_fraction + val_fraction + test_fraction - 1.0) > 1e-9) {
    throw ConfigError("split fractions must sum to 1");
  }
}

SplitResult split(const std::vector<LabeledFrame>& dataset, const SplitConfig& cfg) {
  cfg.validate();
  if (dataset.empty()) throw ValidationError("split: empty dataset");

  // Stratum key: (class, snr in centi-dB).
  std::map<std::pair<uint16_t, int32_t>, std::vector<size_t>> strata;
  for (size_t i = 0; i < dataset.size(); ++i) {
    const LabeledFrame& f = dataset[i];
    const int32_t cdb = std::isinf(f.snr_db) ? INT32_MAX
                                             : static_cast<int32_t>(std::lround(f.snr_db * 100.0f));
    strata[{mod_class_id(f.cls), cdb}].push_back(i);
  }

  SplitResult out;
  for (auto& [key, indices] : strata) {
    Rng rng(derive_seed(cfg.seed, key.first, static_cast<uint64_t>(static_cast<int64_t>(key.second))));
    for (size_t i = indices.size(); i > 1; --i) {
      std::swap(indices[i - 1], indices[rng.uniform_int(i)]);
    }
    const float snr = dataset[indices[0]].snr_db;
    if (snr < cfg.snr_floor_db) {
      // Below the training floor: keep for evaluation only.
      for (size_t idx : indices) out.test.push_back(dataset[idx]);
      continue;
    }
    const size_t n = indices.size();
    const size_t n_train = static_cast<size_t>(std::floor(cfg.train_fraction * static_cast<double>(n)));
    const size_t n_val = static_cast<size_t>(std::floor(cfg.val_fraction * static_cast<double>(n)));
    for (size_t i = 0; i < n; ++i) {
      const LabeledFrame& f = dataset[indices[i]];
      if (i < n_train) {
        out.train.push_back(f);
      } else if (i < n_train + n_val) {
        out.val.push_back(f);
      } else {
        out.test.push_back(f);
      }
    }
  }
  if (out.train.empty()) {
    throw ValidationError("split: no training frames at or above the SNR floor");
  }
  return out;
}

std::vector<SnrRow> accuracy_by_snr(const std::vector<int>& predictions,
                                    const std::vector<LabeledFrame>& frames) {
  if (predictions.size() != frames.size()) {
    throw ShapeError("accuracy_by_snr: prediction/frame count mismatch");
  }
  std::map<float, std::pair<int64_t, int64_t>> groups;  // snr -> {count, hits}
  for (size_t i = 0; i < frames.size(); ++i) {
    auto& g = groups[frames[i].snr_db];
    g.first += 1;
    if (predictions[i] == mod_class_id(frames[i].cls)) g.second += 1;
  }
  std::vector<SnrRow> rows;
  rows.reserve(groups.size());
  for (const auto& [snr, g] : groups) {
    rows.push_back({snr, static_cast<int>(g.first),
                    static_cast<double>(g.second) / static_cast<double>(g.first)});
  }
  return rows;
}

const char* scaling_mode_name(ScalingMode mode) {
  switch (mode) {
    case ScalingMode::kNone: return "none";
    case ScalingMode::kPerFrameRms: return "per_frame_rms";
    case ScalingMode::kOracle: return "oracle";
  }
  return "unknown";
}

ScalingMode scaling_mode_from_name(const std::string& name) {
  if (name == "none") return ScalingMode::kNone;
  if (name == "per_frame_rms" || name == "rms") return ScalingMode::kPerFrameRms;
  if (name == "oracle") return ScalingMode::kOracle;
  throw ValidationError("unknown scaling mode: " + name);
}

std::vector<LabeledFrame> scale_inputs(const std::vector<LabeledFrame>& frames,
                                       ScalingMode mode) {
  if (mode == ScalingMode::kNone) return frames;

  std::vector<LabeledFrame> out = frames;
  for (LabeledFrame& f : out) {
    float denom;
    if (mode == ScalingMode::kPerFrameRms) {
      denom = static_cast<float>(rms(f.frame.samples.data(), kFrameLen));
      if (!(denom > 0.0f)) throw ValidationError("scale_inputs: frame has zero RMS");
    } else {
      denom = f.clean_rms;
      if (!(denom > 0.0f)) {
        throw ValidationError("scale_inputs: oracle mode needs positive clean_rms");
      }
    }
    const float g = 1.0f / denom;
    for (cfloat& s : f.frame.samples) s *= g;
  }
  return out;
}

std::vector<CrossEvalRow> cross_eval(const std::vector<TrainRecipe>& train_recipes,
                                     const std::vector<TestRecipe>& test_recipes,
                                     const Hyperparams& hyper, ScalingMode scaling,
                                     uint64_t seed) {
  std::vector<CrossEvalRow> rows;
  const NetSpec spec = make_net_spec(hyper);
  for (size_t ti = 0; ti < train_recipes.size(); ++ti) {
    const TrainRecipe& recipe = train_recipes[ti];
    const TrainResult trained =
        train(spec, hyper, scale_inputs(recipe.train, scaling),
              scale_inputs(recipe.val, scaling), derive_seed(seed, ti));
    for (const TestRecipe& test : test_recipes) {
      CrossEvalRow row;
      row.train_tag = recipe.tag;
      row.test_tag = test.tag;
      row.accuracy = accuracy(spec, trained.params, scale_inputs(test.frames, scaling));
      rows.push_back(row);
    }
  }
  return rows;
}

void SweepSpace::validate() const {
  if (conv1_filters.empty() || conv2_filters.empty() || dense_units.empty() ||
      learning_rates.empty() || l2_coefficients.empty()) {
    throw ConfigError("sweep space lists must be nonempty");
  }
  if (budget < 1) throw ConfigError("sweep budget must be >= 1");
}

int64_t SweepSpace::combination_count() const {
  return static_cast<int64_t>(conv1_filters.size()) * static_cast<int64_t>(conv2_filters.size()) *
         static_cast<int64_t>(dense_units.size()) * static_cast<int64_t>(learning_rates.size()) *
         static_cast<int64_t>(l2_coefficients.size());
}

namespace {

Hyperparams combo_at(const SweepSpace& space, const Hyperparams& base, int64_t flat) {
  Hyperparams h = base;
  h.l2_coefficient = space.l2_coefficients[static_cast<size_t>(flat % static_cast<int64_t>(space.l2_coefficients.size()))];
  flat /= static_cast<int64_t>(space.l2_coefficients.size());
  h.learning_rate = space.learning_rates[static_cast<size_t>(flat % static_cast<int64_t>(space.learning_rates.size()))];
  flat /= static_cast<int64_t>(space.learning_rates.size());
  h.dense_units = space.dense_units[static_cast<size_t>(flat % static_cast<int64_t>(space.dense_units.size()))];
  flat /= static_cast<int64_t>(space.dense_units.size());
  h.conv2_filters = space.conv2_filters[static_cast<size_t>(flat % static_cast<int64_t>(space.conv2_filters.size()))];
  flat /= static_cast<int64_t>(space.conv2_filters.size());
  h.conv1_filters = space.conv1_filters[static_cast<size_t>(flat)];
  return h;
}

}  // namespace

SweepResult hyperparam_sweep(const SweepSpace& space, const Hyperparams& base,
                             const std::vector<LabeledFrame>& train_set,
                             const std::vector<LabeledFrame>& val_set, uint64_t seed) {
  space.validate();
  const int64_t total = space.combination_count();

  int budget = space.budget;
  SweepResult result;
  if (static_cast<int64_t>(budget) >= total) {
    result.budget_clamped = static_cast<int64_t>(budget) > total;
    budget = static_cast<int>(total);
  }

  // Choose which flat combination indices to run.
  std::vector<int64_t> chosen(static_cast<size_t>(total));
  for (int64_t i = 0; i < total; ++i) chosen[static_cast<size_t>(i)] = i;
  if (static_cast<int64_t>(budget) < total) {
    Rng rng(derive_seed(seed, 0x53574550));  // "SWEP"
    for (int i = 0; i < budget; ++i) {
      const size_t j = static_cast<size_t>(i) +
                       static_cast<size_t>(rng.uniform_int(static_cast<uint64_t>(total - i)));
      std::swap(chosen[static_cast<size_t>(i)], chosen[j]);
    }
    chosen.resize(static_cast<size_t>(budget));
    std::sort(chosen.begin(), chosen.end());
  }

  int best = -1;
  ModelParams best_params;
  for (int run = 0; run < budget; ++run) {
    const Hyperparams hyper = combo_at(space, base, chosen[static_cast<size_t>(run)]);
    const NetSpec spec = make_net_spec(hyper);
    const TrainResult trained = train(spec, hyper, train_set, val_set, derive_seed(seed, run));

    SweepRun row;
    row.index = run;
    row.hyper = hyper;
    row.train_accuracy = accuracy(spec, trained.params, train_set);
    row.val_accuracy = accuracy(spec, trained.params, val_set);
    row.param_count = trained.params.param_count();
    result.runs.push_back(row);

    const bool better =
        best < 0 || row.val_accuracy > result.runs[static_cast<size_t>(best)].val_accuracy ||
        (row.val_accuracy == result.runs[static_cast<size_t>(best)].val_accuracy &&
         row.param_count < result.runs[static_cast<size_t>(best)].param_count);
    if (better) {
      best = run;
      best_params = trained.params;
    }
  }
  result.best_index = best;
  result.best_params = std::move(best_params);
  return result;
}

}  // namespace modrec
