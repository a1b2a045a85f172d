#pragma once

#include <cstdint>
#include <vector>

#include "modrec/frame.hpp"
#include "modrec/nn.hpp"

namespace modrec {

struct TracePoint {
  int batch = 0;   // global batch index
  float loss = 0.0f;
};

struct LossTrace {
  std::vector<TracePoint> train;  // one point per batch
  std::vector<TracePoint> val;    // one point per epoch
};

struct TrainResult {
  ModelParams params;
  LossTrace trace;
};

// I samples on row 0, Q samples on row 1; shape 1 x 2 x 128.
Tensor frame_to_tensor(const IQFrame& frame);
IQFrame tensor_to_frame(const Tensor& x);

// Mini-batch Adam training over the fixed topology. Fully deterministic
// under `seed`: init, shuffle order and dropout masks all derive from it.
// Throws ValidationError on an empty train or val set.
TrainResult train(const NetSpec& spec, const Hyperparams& hyper,
                  const std::vector<LabeledFrame>& train_set,
                  const std::vector<LabeledFrame>& val_set, uint64_t seed);

// Infer-mode class probabilities, one vector of spec.class_count per frame.
std::vector<std::vector<float>> predict(const NetSpec& spec, const ModelParams& params,
                                        const std::vector<LabeledFrame>& frames);

// argmax of predict().
std::vector<int> predict_classes(const NetSpec& spec, const ModelParams& params,
                                 const std::vector<LabeledFrame>& frames);

// Fraction of frames whose argmax matches the label.
double accuracy(const NetSpec& spec, const ModelParams& params,
                const std::vector<LabeledFrame>& frames);

int argmax(const std::vector<float>& v);

}  // namespace modrec
