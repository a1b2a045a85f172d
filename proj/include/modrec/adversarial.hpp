#pragma once

#include <vector>

#include "modrec/frame.hpp"
#include "modrec/nn.hpp"
#include "modrec/train.hpp"

namespace modrec {

struct AttackConfig {
  float epsilon = 0.05f;
  std::vector<float> epsilon_grid;  // for sweeps; must be sorted ascending

  void validate() const;
};

struct AdversarialExample {
  Tensor x;             // original frame, 1x2x128
  Tensor x_adv;         // perturbed frame
  Tensor eta;           // perturbation; every component in {-eps, 0, +eps}
  int true_class = 0;
  int clean_pred = 0;
  float clean_confidence = 0.0f;
  int adv_pred = 0;
  float adv_confidence = 0.0f;
};

// Fast gradient sign attack: eta = epsilon * sign(d loss / d x) with
// sign(0) = 0, gradients taken in infer mode so the attack is deterministic.
AdversarialExample fgsm(const NetSpec& spec, const ModelParams& params, const Tensor& x,
                        int true_class, float epsilon);

AdversarialExample fgsm(const NetSpec& spec, const ModelParams& params,
                        const LabeledFrame& frame, float epsilon);

struct EpsilonRow {
  float epsilon = 0.0f;
  double accuracy = 0.0;
};

// Adversarial accuracy at each epsilon in the grid. The row at epsilon 0
// equals clean accuracy exactly.
std::vector<EpsilonRow> epsilon_sweep(const NetSpec& spec, const ModelParams& params,
                                      const std::vector<LabeledFrame>& frames,
                                      const std::vector<float>& grid);

struct SnrAccuracyRow {
  float snr_db = 0.0f;
  int count = 0;
  double clean_accuracy = 0.0;
  double adversarial_accuracy = 0.0;
};

// Clean and attacked accuracy per SNR level, ascending, both computed on
// identical frame sets.
std::vector<SnrAccuracyRow> accuracy_vs_snr_adversarial(const NetSpec& spec,
                                                        const ModelParams& params,
                                                        const std::vector<LabeledFrame>& frames,
                                                        float epsilon);

struct ConfidenceReport {
  // One row per input example.
  struct Row {
    int true_class = 0;
    int clean_pred = 0;
    int adv_pred = 0;
    float adv_confidence = 0.0f;
    bool flipped = false;       // adversarial prediction differs from clean
    bool misclassified = false; // adversarial prediction differs from truth
  };
  std::vector<Row> rows;
  double mean_confidence_flipped = 0.0;
  double mean_confidence_unflipped = 0.0;
  int flipped_count = 0;
  int unflipped_count = 0;
  std::vector<int> histogram;  // 20 bins over [0, 1] of adversarial confidence
};

ConfidenceReport confidence_report(const std::vector<AdversarialExample>& examples);

}  // namespace modrec
