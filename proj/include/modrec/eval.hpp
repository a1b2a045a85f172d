#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "modrec/frame.hpp"
#include "modrec/nn.hpp"
#include "modrec/train.hpp"

namespace modrec {

// Rows are true classes, columns predicted.
struct ConfusionMatrix {
  std::array<std::array<int64_t, kNumClasses>, kNumClasses> counts{};

  int64_t total() const;
  int64_t trace() const;
  double accuracy() const;
  int64_t row_sum(int true_class) const;
};

// Exact class-by-class counts. Throws ShapeError on length mismatch.
ConfusionMatrix confusion(const std::vector<int>& predictions,
                          const std::vector<int>& labels);

struct SplitConfig {
  double train_fraction = 0.5;
  double val_fraction = 0.25;
  double test_fraction = 0.25;
  float snr_floor_db = -4.0f;
  uint64_t seed = 0;

  void validate() const;
};

struct SplitResult {
  std::vector<LabeledFrame> train;
  std::vector<LabeledFrame> val;
  std::vector<LabeledFrame> test;
};

// Stratified by (class, snr). Frames below the SNR floor never enter train
// or val; they land in test so per-SNR evaluation still covers the full
// grid. Deterministic under cfg.seed. Throws ValidationError when the
// training set comes out empty.
SplitResult split(const std::vector<LabeledFrame>& dataset, const SplitConfig& cfg);

struct SnrRow {
  float snr_db = 0.0f;
  int count = 0;
  double accuracy = 0.0;
};

// Exact accuracy per distinct SNR, ascending.
std::vector<SnrRow> accuracy_by_snr(const std::vector<int>& predictions,
                                    const std::vector<LabeledFrame>& frames);

enum class ScalingMode { kNone, kPerFrameRms, kOracle };

const char* scaling_mode_name(ScalingMode mode);
ScalingMode scaling_mode_from_name(const std::string& name);

// none: identity. per_frame_rms: each frame divided by its own RMS.
// oracle: each frame divided by its recorded clean transmit RMS.
// Throws ValidationError on zero RMS (or missing clean_rms in oracle mode).
std::vector<LabeledFrame> scale_inputs(const std::vector<LabeledFrame>& frames,
                                       ScalingMode mode);

// ---------------------------------------------------------------------------
// Cross-training table.

struct TrainRecipe {
  std::string tag;
  std::vector<LabeledFrame> train;
  std::vector<LabeledFrame> val;
};

struct TestRecipe {
  std::string tag;
  std::vector<LabeledFrame> frames;
};

struct CrossEvalRow {
  std::string train_tag;
  std::string test_tag;
  double accuracy = 0.0;
};

// Trains one model per train recipe and evaluates it against every test
// recipe. The scaling mode is applied consistently to train, val and test.
std::vector<CrossEvalRow> cross_eval(const std::vector<TrainRecipe>& train_recipes,
                                     const std::vector<TestRecipe>& test_recipes,
                                     const Hyperparams& hyper, ScalingMode scaling,
                                     uint64_t seed);

// ---------------------------------------------------------------------------
// Hyperparameter sweep.

struct SweepSpace {
  std::vector<int> conv1_filters{64};
  std::vector<int> conv2_filters{16};
  std::vector<int> dense_units{128};
  std::vector<float> learning_rates{1e-3f};
  std::vector<float> l2_coefficients{1e-4f};
  int budget = 80;

  void validate() const;
  int64_t combination_count() const;
};

struct SweepRun {
  int index = 0;
  Hyperparams hyper;
  double train_accuracy = 0.0;
  double val_accuracy = 0.0;
  int64_t param_count = 0;
};

struct SweepResult {
  std::vector<SweepRun> runs;
  int best_index = 0;  // position in `runs`
  ModelParams best_params;
  bool budget_clamped = false;
};

// Runs `budget` configurations: the exhaustive grid when the budget covers
// it, otherwise a seeded uniform subsample without replacement. Selection is
// argmax validation accuracy; ties break toward fewer parameters, then the
// lower run index.
SweepResult hyperparam_sweep(const SweepSpace& space, const Hyperparams& base,
                             const std::vector<LabeledFrame>& train_set,
                             const std::vector<LabeledFrame>& val_set, uint64_t seed);

// ---------------------------------------------------------------------------
// Serializable experiment summary.

struct RunReport {
  std::string run_id;
  Hyperparams hyper;
  std::vector<std::string> dataset_tags;
  double clean_accuracy = 0.0;
  ConfusionMatrix confusion;
  std::vector<SnrRow> per_snr;
  std::vector<std::string> loss_trace_files;
  std::vector<std::pair<float, double>> epsilon_sweep;  // optional
};

}  // namespace modrec
