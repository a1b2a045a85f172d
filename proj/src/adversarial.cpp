#include "modrec/adversarial.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace modrec {

void AttackConfig::validate() const {
  if (!(epsilon >= 0.0f)) throw ConfigError("epsilon must be >= 0");
  for (size_t i = 0; i < epsilon_grid.size(); ++i) {
    if (!(epsilon_grid[i] >= 0.0f)) throw ConfigError("epsilon grid values must be >= 0");
    if (i > 0 && !(epsilon_grid[i] > epsilon_grid[i - 1])) {
      throw ConfigError("epsilon grid must be strictly ascending");
    }
  }
}

AdversarialExample fgsm(const NetSpec& spec, const ModelParams& params, const Tensor& x,
                        int true_class, float epsilon) {
  if (!(epsilon >= 0.0f)) throw ConfigError("epsilon must be >= 0");

  // Infer-mode gradient; l2 does not influence d loss / d x.
  BackwardResult<float> bw =
      backward(spec, params, x, true_class, 0.0f, 0.0f, RunMode::kInfer);

  AdversarialExample ex;
  ex.x = x;
  ex.true_class = true_class;
  ex.clean_pred = 0;
  for (int i = 1; i < static_cast<int>(bw.probs.data.size()); ++i) {
    if (bw.probs.at(i) > bw.probs.at(ex.clean_pred)) ex.clean_pred = i;
  }
  ex.clean_confidence = bw.probs.at(ex.clean_pred);

  ex.eta = Tensor(x.shape);
  for (size_t i = 0; i < ex.eta.data.size(); ++i) {
    const float g = bw.input_grad.data[i];
    ex.eta.data[i] = g > 0.0f ? epsilon : (g < 0.0f ? -epsilon : 0.0f);
  }

  ex.x_adv = x;
  for (size_t i = 0; i < ex.x_adv.data.size(); ++i) ex.x_adv.data[i] += ex.eta.data[i];

  Tensor adv_probs = forward(spec, params, ex.x_adv, 0.0f, RunMode::kInfer, nullptr);
  ex.adv_pred = 0;
  for (int i = 1; i < static_cast<int>(adv_probs.data.size()); ++i) {
    if (adv_probs.at(i) > adv_probs.at(ex.adv_pred)) ex.adv_pred = i;
  }
  ex.adv_confidence = adv_probs.at(ex.adv_pred);
  return ex;
}

AdversarialExample fgsm(const NetSpec& spec, const ModelParams& params,
                        const LabeledFrame& frame, float epsilon) {
  return fgsm(spec, params, frame_to_tensor(frame.frame), mod_class_id(frame.cls), epsilon);
}

std::vector<EpsilonRow> epsilon_sweep(const NetSpec& spec, const ModelParams& params,
                                      const std::vector<LabeledFrame>& frames,
                                      const std::vector<float>& grid) {
  if (frames.empty()) throw ValidationError("epsilon_sweep: empty test set");
  if (grid.empty()) throw ConfigError("epsilon_sweep: empty epsilon grid");

  std::vector<EpsilonRow> rows;
  rows.reserve(grid.size());
  for (float eps : grid) {
    int64_t hits = 0;
    for (const LabeledFrame& f : frames) {
      const AdversarialExample ex = fgsm(spec, params, f, eps);
      if (ex.adv_pred == ex.true_class) ++hits;
    }
    rows.push_back({eps, static_cast<double>(hits) / static_cast<double>(frames.size())});
  }
  return rows;
}

std::vector<SnrAccuracyRow> accuracy_vs_snr_adversarial(const NetSpec& spec,
                                                        const ModelParams& params,
                                                        const std::vector<LabeledFrame>& frames,
                                                        float epsilon) {
  if (frames.empty()) throw ValidationError("accuracy_vs_snr: empty frame set");

  std::map<float, std::array<int64_t, 3>> groups;  // snr -> {count, clean hits, adv hits}
  for (const LabeledFrame& f : frames) {
    const AdversarialExample ex = fgsm(spec, params, f, epsilon);
    auto& g = groups[f.snr_db];
    g[0] += 1;
    if (ex.clean_pred == ex.true_class) g[1] += 1;
    if (ex.adv_pred == ex.true_class) g[2] += 1;
  }

  std::vector<SnrAccuracyRow> rows;
  rows.reserve(groups.size());
  for (const auto& [snr, g] : groups) {
    SnrAccuracyRow row;
    row.snr_db = snr;
    row.count = static_cast<int>(g[0]);
    row.clean_accuracy = static_cast<double>(g[1]) / static_cast<double>(g[0]);
    row.adversarial_accuracy = static_cast<double>(g[2]) / static_cast<double>(g[0]);
    rows.push_back(row);
  }
  return rows;
}

ConfidenceReport confidence_report(const std::vector<AdversarialExample>& examples) {
  if (examples.empty()) throw ValidationError("confidence_report: no examples");

  ConfidenceReport report;
  report.histogram.assign(20, 0);
  double sum_flipped = 0.0, sum_unflipped = 0.0;
  for (const AdversarialExample& ex : examples) {
    ConfidenceReport::Row row;
    row.true_class = ex.true_class;
    row.clean_pred = ex.clean_pred;
    row.adv_pred = ex.adv_pred;
    row.adv_confidence = ex.adv_confidence;
    row.flipped = ex.adv_pred != ex.clean_pred;
    row.misclassified = ex.adv_pred != ex.true_class;
    report.rows.push_back(row);

    const int bin = std::min(19, static_cast<int>(ex.adv_confidence * 20.0f));
    report.histogram[static_cast<size_t>(bin)] += 1;
    if (row.flipped) {
      sum_flipped += ex.adv_confidence;
      report.flipped_count += 1;
    } else {
      sum_unflipped += ex.adv_confidence;
      report.unflipped_count += 1;
    }
  }
  if (report.flipped_count > 0) {
    report.mean_confidence_flipped = sum_flipped / report.flipped_count;
  }
  if (report.unflipped_count > 0) {
    report.mean_confidence_unflipped = sum_unflipped / report.unflipped_count;
  }
  return report;
}

}  // namespace modrec
