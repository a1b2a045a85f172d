#include "modrec/train.hpp"

#include <cmath>

#include "modrec/streams.hpp"

namespace modrec {

Tensor frame_to_tensor(const IQFrame& frame) {
  Tensor x({1, 2, kFrameLen});
  for (int n = 0; n < kFrameLen; ++n) {
    x.at(0, 0, n) = frame.samples[static_cast<size_t>(n)].real();
    x.at(0, 1, n) = frame.samples[static_cast<size_t>(n)].imag();
  }
  return x;
}

IQFrame tensor_to_frame(const Tensor& x) {
  if (x.shape != std::vector<int>{1, 2, kFrameLen}) {
    throw ShapeError("tensor_to_frame: expected shape 1x2x128");
  }
  IQFrame f;
  for (int n = 0; n < kFrameLen; ++n) {
    f.samples[static_cast<size_t>(n)] = cfloat(x.at(0, 0, n), x.at(0, 1, n));
  }
  return f;
}

namespace {

constexpr uint64_t kStageShuffle = 0x53484600;  // "SHF"
constexpr uint64_t kStageDropout = 0x44524f00;  // "DRO"
constexpr uint64_t kStageInit = 0x494e4900;     // "INI"

void accumulate(ParamsT<float>& acc, const ParamsT<float>& grads) {
  auto a = acc.all();
  auto g = grads.all();
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < a[i]->data.size(); ++j) a[i]->data[j] += g[i]->data[j];
  }
}

void scale(ParamsT<float>& acc, float s) {
  for (auto* t : acc.all()) {
    for (float& v : t->data) v *= s;
  }
}

float mean_infer_loss(const NetSpec& spec, const ModelParams& params,
                      const std::vector<Tensor>& xs, const std::vector<int>& ys, float l2) {
  double acc = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    Tensor probs = forward(spec, params, xs[i], 0.0f, RunMode::kInfer, nullptr);
    acc += loss_from_probs(probs, ys[i], params, l2);
  }
  return static_cast<float>(acc / static_cast<double>(xs.size()));
}

}  // namespace

TrainResult train(const NetSpec& spec, const Hyperparams& hyper,
                  const std::vector<LabeledFrame>& train_set,
                  const std::vector<LabeledFrame>& val_set, uint64_t seed) {
  spec.validate();
  hyper.validate();
  if (train_set.empty()) throw ValidationError("train: empty training set");
  if (val_set.empty()) throw ValidationError("train: empty validation set");

  std::vector<Tensor> train_x;
  std::vector<int> train_y;
  train_x.reserve(train_set.size());
  train_y.reserve(train_set.size());
  for (const LabeledFrame& f : train_set) {
    train_x.push_back(frame_to_tensor(f.frame));
    train_y.push_back(mod_class_id(f.cls));
    if (train_y.back() >= spec.class_count) {
      throw ValidationError("train: label outside class_count");
    }
  }
  std::vector<Tensor> val_x;
  std::vector<int> val_y;
  val_x.reserve(val_set.size());
  val_y.reserve(val_set.size());
  for (const LabeledFrame& f : val_set) {
    val_x.push_back(frame_to_tensor(f.frame));
    val_y.push_back(mod_class_id(f.cls));
  }

  TrainResult result;
  result.params = init_params(spec, derive_seed(seed, kStageInit));
  AdamState adam = make_adam_state(spec, hyper.learning_rate);
  Rng shuffle_rng(derive_seed(seed, kStageShuffle));
  Rng dropout_rng(derive_seed(seed, kStageDropout));

  std::vector<size_t> order(train_x.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;

  const float l2 = hyper.l2_coefficient;
  int batch_index = 0;

  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    // Fisher-Yates with the shared stream keeps runs bit-reproducible.
    for (size_t i = order.size(); i > 1; --i) {
      const size_t j = shuffle_rng.uniform_int(i);
      std::swap(order[i - 1], order[j]);
    }

    for (size_t start = 0; start < order.size(); start += static_cast<size_t>(hyper.batch_size)) {
      const size_t end = std::min(order.size(), start + static_cast<size_t>(hyper.batch_size));
      const int n = static_cast<int>(end - start);

      ParamsT<float> grad_acc = zero_params<float>(spec);
      double loss_acc = 0.0;
      for (size_t i = start; i < end; ++i) {
        const size_t idx = order[i];
        BackwardResult<float> bw =
            backward(spec, result.params, train_x[idx], train_y[idx], l2,
                     hyper.dropout_rate, RunMode::kTrain, &dropout_rng);
        accumulate(grad_acc, bw.grads);
        loss_acc += bw.loss;
      }
      scale(grad_acc, 1.0f / static_cast<float>(n));
      adam_step(result.params, grad_acc, adam);

      result.trace.train.push_back(
          {batch_index, static_cast<float>(loss_acc / static_cast<double>(n))});
      ++batch_index;
    }

    result.trace.val.push_back(
        {batch_index, mean_infer_loss(spec, result.params, val_x, val_y, l2)});
  }
  return result;
}

std::vector<std::vector<float>> predict(const NetSpec& spec, const ModelParams& params,
                                        const std::vector<LabeledFrame>& frames) {
  std::vector<std::vector<float>> out;
  out.reserve(frames.size());
  for (const LabeledFrame& f : frames) {
    Tensor probs = forward(spec, params, frame_to_tensor(f.frame), 0.0f, RunMode::kInfer, nullptr);
    out.emplace_back(probs.data.begin(), probs.data.end());
  }
  return out;
}

int argmax(const std::vector<float>& v) {
  int best = 0;
  for (size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[static_cast<size_t>(best)]) best = static_cast<int>(i);
  }
  return best;
}

std::vector<int> predict_classes(const NetSpec& spec, const ModelParams& params,
                                 const std::vector<LabeledFrame>& frames) {
  std::vector<int> out;
  out.reserve(frames.size());
  for (const auto& probs : predict(spec, params, frames)) out.push_back(argmax(probs));
  return out;
}

double accuracy(const NetSpec& spec, const ModelParams& params,
                const std::vector<LabeledFrame>& frames) {
  if (frames.empty()) throw ValidationError("accuracy: empty frame set");
  const std::vector<int> preds = predict_classes(spec, params, frames);
  int64_t hits = 0;
  for (size_t i = 0; i < frames.size(); ++i) {
    if (preds[i] == mod_class_id(frames[i].cls)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(frames.size());
}

}  // namespace modrec
