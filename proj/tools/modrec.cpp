// modrec - modulation recognition workbench CLI.
//
// Subcommands: generate, train, evaluate, attack, sweep, report.
// Exit codes: 0 success, 1 usage error, 2 I/O or file-format error,
// 3 validation error.

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "modrec/adversarial.hpp"
#include "modrec/channel.hpp"
#include "modrec/checkpoint.hpp"
#include "modrec/config.hpp"
#include "modrec/dataset_io.hpp"
#include "modrec/eval.hpp"
#include "modrec/report.hpp"
#include "modrec/sigsynth.hpp"
#include "modrec/svg.hpp"
#include "modrec/train.hpp"

namespace fs = std::filesystem;
using modrec::ConfigError;
using modrec::FormatError;
using modrec::IoError;
using modrec::ValidationError;
using ordered_json = nlohmann::ordered_json;
using ConfigMap = std::map<std::string, std::string>;

namespace {

constexpr const char* kToolVersion = "1.0.0";

// ---------------------------------------------------------------------------
// Config-file merging: flags override config, config overrides defaults.

struct ConfigMerger {
  CLI::App* sub = nullptr;
  ConfigMap config;
  std::vector<std::string> known_keys;

  void load(const std::string& path) {
    if (!path.empty()) config = modrec::load_config_file(path);
  }

  bool flag_given(const std::string& flag) const { return sub->count(flag) > 0; }

  template <typename T>
  void merge(const std::string& flag, const std::string& key, T& var) {
    known_keys.push_back(key);
    if (flag_given(flag)) return;
    const auto it = config.find(key);
    if (it == config.end()) return;
    std::istringstream ss(it->second);
    T parsed{};
    ss >> parsed;
    if (ss.fail() || !ss.eof()) {
      throw ValidationError("config key '" + key + "' has bad value: " + it->second);
    }
    var = parsed;
  }

  void merge_string(const std::string& flag, const std::string& key, std::string& var) {
    known_keys.push_back(key);
    if (flag_given(flag)) return;
    const auto it = config.find(key);
    if (it != config.end()) var = it->second;
  }

  void finish() const { modrec::reject_unknown_keys(config, known_keys); }
};

std::vector<float> parse_float_list(const std::string& text, const std::string& what) {
  std::vector<float> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      size_t pos = 0;
      out.push_back(std::stof(cell, &pos));
      if (pos != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw ValidationError("bad " + what + " entry: " + cell);
    }
  }
  if (out.empty()) throw ValidationError(what + " list is empty");
  return out;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  for (float v : parse_float_list(text, what)) out.push_back(static_cast<int>(v));
  return out;
}

std::vector<modrec::ModClass> parse_classes(const std::string& text) {
  if (text == "all") return modrec::all_mod_classes();
  std::vector<modrec::ModClass> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(modrec::mod_class_from_name(cell));
  if (out.empty()) throw ValidationError("empty class list");
  return out;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw ValidationError(msg);
}

void require_input_file(const std::string& path, const std::string& what) {
  require(!path.empty(), what + " is required");
  if (!fs::exists(path)) throw IoError("missing input file: " + path);
}

void ensure_parent_dir(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
}

void write_manifest(const std::string& path, const std::string& subcommand,
                    const ordered_json& options, uint64_t seed) {
  ordered_json j;
  j["tool"] = "modrec";
  j["version"] = kToolVersion;
  j["subcommand"] = subcommand;
  j["seed"] = seed;
  j["options"] = options;
  modrec::write_text_file(path, j.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// generate

struct GenerateArgs {
  std::string config_path;
  std::string classes = "all";
  double snr_min = -20.0, snr_max = 18.0, snr_step = 2.0;
  bool noiseless = false;
  int frames = 1000;
  std::string channel = "awgn";
  double scale = 1.0;
  int delay = 8, delay_min = 1, delay_max = 8;
  double gain_re = 0.2781, gain_im = 0.856;
  int sps = 8;
  double rolloff = 0.35;
  uint64_t seed = 0;
  int threads = 1;
  std::string out;
};

int run_generate(GenerateArgs& a, ConfigMerger& cm) {
  cm.load(a.config_path);
  cm.merge_string("--classes", "classes", a.classes);
  cm.merge("--snr-min", "snr_min", a.snr_min);
  cm.merge("--snr-max", "snr_max", a.snr_max);
  cm.merge("--snr-step", "snr_step", a.snr_step);
  cm.merge("--noiseless", "noiseless", a.noiseless);
  cm.merge("--frames", "frames", a.frames);
  cm.merge_string("--channel", "channel", a.channel);
  cm.merge("--scale", "scale", a.scale);
  cm.merge("--delay", "delay", a.delay);
  cm.merge("--delay-min", "delay_min", a.delay_min);
  cm.merge("--delay-max", "delay_max", a.delay_max);
  cm.merge("--gain-re", "gain_re", a.gain_re);
  cm.merge("--gain-im", "gain_im", a.gain_im);
  cm.merge("--sps", "sps", a.sps);
  cm.merge("--rolloff", "rolloff", a.rolloff);
  cm.merge("--seed", "seed", a.seed);
  cm.merge("--threads", "threads", a.threads);
  cm.merge_string("--out", "out", a.out);
  cm.finish();

  require(!a.out.empty(), "--out is required");

  modrec::GenConfig cfg;
  cfg.samples_per_symbol = a.sps;
  cfg.rrc_rolloff = a.rolloff;
  cfg.frames_per_combo = a.frames;
  cfg.master_seed = a.seed;
  cfg.classes = parse_classes(a.classes);
  if (a.noiseless) {
    cfg.snr_grid_db = {modrec::kSnrNoNoise};
  } else {
    require(a.snr_step > 0, "--snr-step must be positive");
    for (double db = a.snr_min; db <= a.snr_max + 1e-9; db += a.snr_step) {
      cfg.snr_grid_db.push_back(static_cast<float>(db));
    }
  }

  modrec::ChannelRecipe recipe;
  recipe.two_path.gain = modrec::cfloat(static_cast<float>(a.gain_re), static_cast<float>(a.gain_im));
  recipe.two_path.scale = static_cast<float>(a.scale);
  recipe.two_path.delay = a.delay;
  recipe.two_path.delay_min = a.delay_min;
  recipe.two_path.delay_max = a.delay_max;
  if (a.channel == "awgn") {
    recipe.tag = modrec::ChannelTag::kAwgn;
  } else if (a.channel == "two-path-fixed") {
    recipe.tag = modrec::ChannelTag::kTwoPathFixed;
  } else if (a.channel == "two-path-random") {
    recipe.tag = modrec::ChannelTag::kTwoPathRandom;
  } else {
    throw ValidationError("unknown channel: " + a.channel);
  }

  const auto frames = modrec::generate_dataset(cfg, recipe, a.threads);
  ensure_parent_dir(a.out);
  modrec::write_dataset(frames, a.out);

  ordered_json opts;
  opts["classes"] = a.classes;
  opts["snr_min"] = a.snr_min;
  opts["snr_max"] = a.snr_max;
  opts["snr_step"] = a.snr_step;
  opts["noiseless"] = a.noiseless;
  opts["frames"] = a.frames;
  opts["channel"] = a.channel;
  opts["scale"] = a.scale;
  opts["delay"] = a.delay;
  opts["delay_min"] = a.delay_min;
  opts["delay_max"] = a.delay_max;
  opts["gain_re"] = a.gain_re;
  opts["gain_im"] = a.gain_im;
  opts["sps"] = a.sps;
  opts["rolloff"] = a.rolloff;
  opts["threads"] = a.threads;
  opts["out"] = a.out;
  write_manifest(a.out + ".manifest.json", "generate", opts, a.seed);

  std::cout << "wrote " << frames.size() << " frames to " << a.out << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// train

struct SplitArgs {
  double train_frac = 0.5, val_frac = 0.25, test_frac = 0.25;
  double snr_floor = -4.0;
  uint64_t split_seed = 1234;
};

modrec::SplitConfig split_config(const SplitArgs& s) {
  modrec::SplitConfig cfg;
  cfg.train_fraction = s.train_frac;
  cfg.val_fraction = s.val_frac;
  cfg.test_fraction = s.test_frac;
  cfg.snr_floor_db = static_cast<float>(s.snr_floor);
  cfg.seed = s.split_seed;
  return cfg;
}

void merge_split(ConfigMerger& cm, SplitArgs& s) {
  cm.merge("--train-frac", "train_frac", s.train_frac);
  cm.merge("--val-frac", "val_frac", s.val_frac);
  cm.merge("--test-frac", "test_frac", s.test_frac);
  cm.merge("--snr-floor", "snr_floor", s.snr_floor);
  cm.merge("--split-seed", "split_seed", s.split_seed);
}

ordered_json split_json(const SplitArgs& s) {
  ordered_json j;
  j["train_frac"] = s.train_frac;
  j["val_frac"] = s.val_frac;
  j["test_frac"] = s.test_frac;
  j["snr_floor"] = s.snr_floor;
  j["split_seed"] = s.split_seed;
  return j;
}

struct HyperArgs {
  int conv1 = 64, conv2 = 16, dense = 128;
  double lr = 1e-3, l2 = 1e-4, dropout = 0.6;
  int batch = 64, epochs = 10;
};

void merge_hyper(ConfigMerger& cm, HyperArgs& h) {
  cm.merge("--conv1", "conv1", h.conv1);
  cm.merge("--conv2", "conv2", h.conv2);
  cm.merge("--dense", "dense", h.dense);
  cm.merge("--lr", "lr", h.lr);
  cm.merge("--l2", "l2", h.l2);
  cm.merge("--dropout", "dropout", h.dropout);
  cm.merge("--batch", "batch", h.batch);
  cm.merge("--epochs", "epochs", h.epochs);
}

modrec::Hyperparams make_hyper(const HyperArgs& h) {
  modrec::Hyperparams hyper;
  hyper.conv1_filters = h.conv1;
  hyper.conv2_filters = h.conv2;
  hyper.dense_units = h.dense;
  hyper.learning_rate = static_cast<float>(h.lr);
  hyper.l2_coefficient = static_cast<float>(h.l2);
  hyper.dropout_rate = static_cast<float>(h.dropout);
  hyper.batch_size = h.batch;
  hyper.epochs = h.epochs;
  hyper.validate();
  return hyper;
}

ordered_json hyper_json(const HyperArgs& h) {
  ordered_json j;
  j["conv1"] = h.conv1;
  j["conv2"] = h.conv2;
  j["dense"] = h.dense;
  j["lr"] = h.lr;
  j["l2"] = h.l2;
  j["dropout"] = h.dropout;
  j["batch"] = h.batch;
  j["epochs"] = h.epochs;
  return j;
}

struct TrainArgs {
  std::string config_path;
  std::string data;
  std::string out;
  std::string loss_csv;
  std::string scaling = "none";
  HyperArgs hyper;
  SplitArgs split;
  uint64_t seed = 0;
};

int run_train(TrainArgs& a, ConfigMerger& cm) {
  cm.load(a.config_path);
  cm.merge_string("--data", "data", a.data);
  cm.merge_string("--out", "out", a.out);
  cm.merge_string("--loss-csv", "loss_csv", a.loss_csv);
  cm.merge_string("--scaling", "scaling", a.scaling);
  merge_hyper(cm, a.hyper);
  merge_split(cm, a.split);
  cm.merge("--seed", "seed", a.seed);
  cm.finish();

  require_input_file(a.data, "--data");
  require(!a.out.empty(), "--out is required");
  if (a.loss_csv.empty()) a.loss_csv = a.out + ".loss.csv";

  const auto dataset = modrec::read_dataset(a.data);
  const modrec::ScalingMode scaling = modrec::scaling_mode_from_name(a.scaling);
  const modrec::SplitResult parts = modrec::split(dataset, split_config(a.split));

  const modrec::Hyperparams hyper = make_hyper(a.hyper);
  const modrec::NetSpec spec = modrec::make_net_spec(hyper);
  const modrec::TrainResult result =
      modrec::train(spec, hyper, modrec::scale_inputs(parts.train, scaling),
                    modrec::scale_inputs(parts.val, scaling), a.seed);

  ensure_parent_dir(a.out);
  modrec::save_checkpoint({spec, hyper, result.params}, a.out);
  modrec::write_loss_trace_csv(result.trace, a.loss_csv);

  ordered_json opts;
  opts["data"] = a.data;
  opts["out"] = a.out;
  opts["loss_csv"] = a.loss_csv;
  opts["scaling"] = a.scaling;
  opts["hyper"] = hyper_json(a.hyper);
  opts["split"] = split_json(a.split);
  write_manifest(a.out + ".manifest.json", "train", opts, a.seed);

  const double val_acc =
      modrec::accuracy(spec, result.params, modrec::scale_inputs(parts.val, scaling));
  std::cout << "trained on " << parts.train.size() << " frames, val accuracy " << val_acc
            << ", checkpoint " << a.out << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateArgs {
  std::string config_path;
  std::string model;
  std::string data;
  std::string out_dir;
  std::string scaling = "none";
  std::string subset = "all";  // all | test
  std::string run_id;
  SplitArgs split;
};

std::vector<modrec::LabeledFrame> select_subset(const std::vector<modrec::LabeledFrame>& frames,
                                                const std::string& subset, const SplitArgs& s) {
  if (subset == "all") return frames;
  if (subset == "test") return modrec::split(frames, split_config(s)).test;
  throw ValidationError("unknown subset: " + subset);
}

int run_evaluate(EvaluateArgs& a, ConfigMerger& cm) {
  cm.load(a.config_path);
  cm.merge_string("--model", "model", a.model);
  cm.merge_string("--data", "data", a.data);
  cm.merge_string("--out", "out", a.out_dir);
  cm.merge_string("--scaling", "scaling", a.scaling);
  cm.merge_string("--subset", "subset", a.subset);
  cm.merge_string("--run-id", "run_id", a.run_id);
  merge_split(cm, a.split);
  cm.finish();

  require_input_file(a.model, "--model");
  require_input_file(a.data, "--data");
  require(!a.out_dir.empty(), "--out is required");
  fs::create_directories(a.out_dir);

  const modrec::Checkpoint ckpt = modrec::load_checkpoint(a.model);
  const modrec::ScalingMode scaling = modrec::scaling_mode_from_name(a.scaling);
  const auto frames = modrec::scale_inputs(
      select_subset(modrec::read_dataset(a.data), a.subset, a.split), scaling);
  require(!frames.empty(), "no frames selected for evaluation");

  const std::vector<int> preds = modrec::predict_classes(ckpt.spec, ckpt.params, frames);
  std::vector<int> labels;
  labels.reserve(frames.size());
  for (const auto& f : frames) labels.push_back(modrec::mod_class_id(f.cls));

  modrec::RunReport report;
  report.run_id = a.run_id.empty()
                      ? fs::path(a.model).stem().string() + "_on_" + fs::path(a.data).stem().string()
                      : a.run_id;
  report.hyper = ckpt.hyper;
  report.dataset_tags = {a.data};
  report.confusion = modrec::confusion(preds, labels);
  report.clean_accuracy = report.confusion.accuracy();
  report.per_snr = modrec::accuracy_by_snr(preds, frames);

  const std::string confusion_path = (fs::path(a.out_dir) / "confusion.csv").string();
  const std::string snr_path = (fs::path(a.out_dir) / "accuracy_vs_snr.csv").string();
  const std::string report_path = (fs::path(a.out_dir) / "report.json").string();
  modrec::write_confusion_csv(report.confusion, confusion_path);
  modrec::write_snr_csv(report.per_snr, snr_path);
  modrec::validate_report_complete(report);
  modrec::write_report_json(report, report_path);

  ordered_json opts;
  opts["model"] = a.model;
  opts["data"] = a.data;
  opts["out"] = a.out_dir;
  opts["scaling"] = a.scaling;
  opts["subset"] = a.subset;
  opts["run_id"] = report.run_id;
  opts["split"] = split_json(a.split);
  write_manifest((fs::path(a.out_dir) / "manifest.json").string(), "evaluate", opts, 0);

  std::cout << "accuracy " << report.clean_accuracy << " over " << frames.size() << " frames; "
            << "report " << report_path << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// attack

struct AttackArgs {
  std::string config_path;
  std::string model;
  std::string data;
  std::string out_dir;
  std::string scaling = "none";
  std::string subset = "all";
  double eps = 0.05;
  std::string eps_grid;
  int limit = 0;      // 0 = no cap
  int examples = 4;   // waveform dumps
  SplitArgs split;
};

int run_attack(AttackArgs& a, ConfigMerger& cm) {
  cm.load(a.config_path);
  cm.merge_string("--model", "model", a.model);
  cm.merge_string("--data", "data", a.data);
  cm.merge_string("--out", "out", a.out_dir);
  cm.merge_string("--scaling", "scaling", a.scaling);
  cm.merge_string("--subset", "subset", a.subset);
  cm.merge("--eps", "eps", a.eps);
  cm.merge_string("--eps-grid", "eps_grid", a.eps_grid);
  cm.merge("--limit", "limit", a.limit);
  cm.merge("--examples", "examples", a.examples);
  merge_split(cm, a.split);
  cm.finish();

  require_input_file(a.model, "--model");
  require_input_file(a.data, "--data");
  require(!a.out_dir.empty(), "--out is required");
  fs::create_directories(a.out_dir);

  const modrec::Checkpoint ckpt = modrec::load_checkpoint(a.model);
  const modrec::ScalingMode scaling = modrec::scaling_mode_from_name(a.scaling);
  auto frames = modrec::scale_inputs(
      select_subset(modrec::read_dataset(a.data), a.subset, a.split), scaling);
  require(!frames.empty(), "no frames selected for the attack");
  if (a.limit > 0 && static_cast<int>(frames.size()) > a.limit) {
    frames.resize(static_cast<size_t>(a.limit));
  }

  modrec::AttackConfig attack;
  attack.epsilon = static_cast<float>(a.eps);
  attack.epsilon_grid = a.eps_grid.empty() ? std::vector<float>{attack.epsilon}
                                           : parse_float_list(a.eps_grid, "epsilon grid");
  attack.validate();

  const auto sweep_rows =
      modrec::epsilon_sweep(ckpt.spec, ckpt.params, frames, attack.epsilon_grid);
  modrec::write_epsilon_csv(sweep_rows, (fs::path(a.out_dir) / "epsilon_sweep.csv").string());

  const auto snr_rows =
      modrec::accuracy_vs_snr_adversarial(ckpt.spec, ckpt.params, frames, attack.epsilon);
  modrec::write_adv_snr_csv(snr_rows, (fs::path(a.out_dir) / "adv_accuracy_vs_snr.csv").string());

  std::vector<modrec::AdversarialExample> examples;
  examples.reserve(frames.size());
  for (const auto& f : frames) {
    examples.push_back(modrec::fgsm(ckpt.spec, ckpt.params, f, attack.epsilon));
  }
  const modrec::ConfidenceReport conf = modrec::confidence_report(examples);
  modrec::write_confidence_csv(conf, (fs::path(a.out_dir) / "confidence.csv").string());

  // Waveform dumps of the first few examples.
  const int n_dump = std::min<int>(a.examples, static_cast<int>(examples.size()));
  for (int i = 0; i < n_dump; ++i) {
    const auto& ex = examples[static_cast<size_t>(i)];
    std::ostringstream os;
    os << "n,i,q,adv_i,adv_q\n";
    for (int n = 0; n < modrec::kFrameLen; ++n) {
      os << n << ',' << ex.x.at(0, 0, n) << ',' << ex.x.at(0, 1, n) << ','
         << ex.x_adv.at(0, 0, n) << ',' << ex.x_adv.at(0, 1, n) << '\n';
    }
    modrec::write_text_file(
        (fs::path(a.out_dir) / ("example_" + std::to_string(i) + ".csv")).string(), os.str());
  }

  ordered_json opts;
  opts["model"] = a.model;
  opts["data"] = a.data;
  opts["out"] = a.out_dir;
  opts["scaling"] = a.scaling;
  opts["subset"] = a.subset;
  opts["eps"] = a.eps;
  opts["eps_grid"] = a.eps_grid;
  opts["limit"] = a.limit;
  opts["examples"] = a.examples;
  opts["split"] = split_json(a.split);
  write_manifest((fs::path(a.out_dir) / "manifest.json").string(), "attack", opts, 0);

  std::cout << "attacked " << frames.size() << " frames\n";
  for (const auto& row : sweep_rows) {
    std::cout << "  eps " << row.epsilon << " -> accuracy " << row.accuracy << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepArgs {
  std::string config_path;
  std::string data;
  std::string out_dir;
  std::string scaling = "none";
  std::string conv1_list = "32,64";
  std::string conv2_list = "8,16";
  std::string dense_list = "64,128";
  std::string lr_list = "0.001,0.0003";
  std::string l2_list = "0,0.0001";
  int budget = 80;
  HyperArgs hyper;
  SplitArgs split;
  uint64_t seed = 0;
};

int run_sweep(SweepArgs& a, ConfigMerger& cm) {
  cm.load(a.config_path);
  cm.merge_string("--data", "data", a.data);
  cm.merge_string("--out", "out", a.out_dir);
  cm.merge_string("--scaling", "scaling", a.scaling);
  cm.merge_string("--conv1-list", "conv1_list", a.conv1_list);
  cm.merge_string("--conv2-list", "conv2_list", a.conv2_list);
  cm.merge_string("--dense-list", "dense_list", a.dense_list);
  cm.merge_string("--lr-list", "lr_list", a.lr_list);
  cm.merge_string("--l2-list", "l2_list", a.l2_list);
  cm.merge("--budget", "budget", a.budget);
  cm.merge("--dropout", "dropout", a.hyper.dropout);
  cm.merge("--batch", "batch", a.hyper.batch);
  cm.merge("--epochs", "epochs", a.hyper.epochs);
  merge_split(cm, a.split);
  cm.merge("--seed", "seed", a.seed);
  cm.finish();

  require_input_file(a.data, "--data");
  require(!a.out_dir.empty(), "--out is required");
  fs::create_directories(a.out_dir);

  const auto dataset = modrec::read_dataset(a.data);
  const modrec::ScalingMode scaling = modrec::scaling_mode_from_name(a.scaling);
  const modrec::SplitResult parts = modrec::split(dataset, split_config(a.split));
  const auto train_set = modrec::scale_inputs(parts.train, scaling);
  const auto val_set = modrec::scale_inputs(parts.val, scaling);

  modrec::SweepSpace space;
  space.conv1_filters = parse_int_list(a.conv1_list, "conv1");
  space.conv2_filters = parse_int_list(a.conv2_list, "conv2");
  space.dense_units = parse_int_list(a.dense_list, "dense");
  space.learning_rates = parse_float_list(a.lr_list, "learning rate");
  space.l2_coefficients = parse_float_list(a.l2_list, "l2");
  space.budget = a.budget;

  const modrec::Hyperparams base = make_hyper(a.hyper);
  const modrec::SweepResult result =
      modrec::hyperparam_sweep(space, base, train_set, val_set, a.seed);
  if (result.budget_clamped) {
    std::cerr << "note: budget exceeds the exhaustive grid; clamped to "
              << result.runs.size() << " runs\n";
  }

  modrec::write_sweep_csv(result.runs, (fs::path(a.out_dir) / "sweep_scatter.csv").string());

  const modrec::SweepRun& best = result.runs[static_cast<size_t>(result.best_index)];
  const modrec::NetSpec best_spec = modrec::make_net_spec(best.hyper);
  modrec::save_checkpoint({best_spec, best.hyper, result.best_params},
                          (fs::path(a.out_dir) / "best.ckpt").string());

  ordered_json best_json;
  best_json["run"] = best.index;
  best_json["conv1_filters"] = best.hyper.conv1_filters;
  best_json["conv2_filters"] = best.hyper.conv2_filters;
  best_json["dense_units"] = best.hyper.dense_units;
  best_json["learning_rate"] = best.hyper.learning_rate;
  best_json["l2_coefficient"] = best.hyper.l2_coefficient;
  best_json["param_count"] = best.param_count;
  best_json["train_accuracy"] = best.train_accuracy;
  best_json["val_accuracy"] = best.val_accuracy;
  modrec::write_text_file((fs::path(a.out_dir) / "best_config.json").string(),
                          best_json.dump(2) + "\n");

  ordered_json opts;
  opts["data"] = a.data;
  opts["out"] = a.out_dir;
  opts["scaling"] = a.scaling;
  opts["conv1_list"] = a.conv1_list;
  opts["conv2_list"] = a.conv2_list;
  opts["dense_list"] = a.dense_list;
  opts["lr_list"] = a.lr_list;
  opts["l2_list"] = a.l2_list;
  opts["budget"] = a.budget;
  opts["base_hyper"] = hyper_json(a.hyper);
  opts["split"] = split_json(a.split);
  write_manifest((fs::path(a.out_dir) / "manifest.json").string(), "sweep", opts, a.seed);

  std::cout << "swept " << result.runs.size() << " configurations; best val accuracy "
            << best.val_accuracy << " (run " << best.index << ")\n";
  return 0;
}

// ---------------------------------------------------------------------------
// report

struct ReportArgs {
  std::string config_path;
  std::string in_dir;
  std::string out_dir;
};

int run_report(ReportArgs& a, ConfigMerger& cm) {
  cm.load(a.config_path);
  cm.merge_string("--in", "in", a.in_dir);
  cm.merge_string("--out", "out", a.out_dir);
  cm.finish();

  require(!a.in_dir.empty(), "--in is required");
  if (!fs::exists(a.in_dir)) throw IoError("missing input directory: " + a.in_dir);
  if (a.out_dir.empty()) a.out_dir = a.in_dir;
  fs::create_directories(a.out_dir);

  int rendered = 0;
  const auto in = [&](const char* name) { return (fs::path(a.in_dir) / name).string(); };
  const auto out = [&](const char* name) { return (fs::path(a.out_dir) / name).string(); };

  if (fs::exists(in("confusion.csv"))) {
    const modrec::ConfusionMatrix m = modrec::read_confusion_csv(in("confusion.csv"));
    std::vector<std::string> labels;
    std::vector<std::vector<double>> rows;
    for (int r = 0; r < modrec::kNumClasses; ++r) {
      labels.push_back(modrec::mod_class_name(static_cast<modrec::ModClass>(r)));
      std::vector<double> row;
      const double total = static_cast<double>(std::max<int64_t>(1, m.row_sum(r)));
      for (int c = 0; c < modrec::kNumClasses; ++c) {
        row.push_back(static_cast<double>(m.counts[static_cast<size_t>(r)][static_cast<size_t>(c)]) / total);
      }
      rows.push_back(row);
    }
    modrec::write_text_file(out("confusion.svg"),
                            modrec::render_heatmap("Confusion matrix", labels, rows));
    ++rendered;
  }
  if (fs::exists(in("accuracy_vs_snr.csv"))) {
    modrec::PlotSeries s{"accuracy", {}};
    for (const auto& r : modrec::read_snr_csv(in("accuracy_vs_snr.csv"))) {
      s.points.emplace_back(r.snr_db, r.accuracy);
    }
    modrec::write_text_file(out("accuracy_vs_snr.svg"),
                            modrec::render_line_chart("Accuracy vs SNR", "SNR (dB)", "accuracy", {s}));
    ++rendered;
  }
  if (fs::exists(in("adv_accuracy_vs_snr.csv"))) {
    modrec::PlotSeries clean{"clean", {}}, adv{"adversarial", {}};
    for (const auto& r : modrec::read_adv_snr_csv(in("adv_accuracy_vs_snr.csv"))) {
      clean.points.emplace_back(r.snr_db, r.clean_accuracy);
      adv.points.emplace_back(r.snr_db, r.adversarial_accuracy);
    }
    modrec::write_text_file(
        out("adv_accuracy_vs_snr.svg"),
        modrec::render_line_chart("Clean vs adversarial accuracy", "SNR (dB)", "accuracy",
                                  {clean, adv}));
    ++rendered;
  }
  if (fs::exists(in("epsilon_sweep.csv"))) {
    modrec::PlotSeries s{"adversarial accuracy", {}};
    for (const auto& r : modrec::read_epsilon_csv(in("epsilon_sweep.csv"))) {
      s.points.emplace_back(r.epsilon, r.accuracy);
    }
    modrec::write_text_file(out("epsilon_sweep.svg"),
                            modrec::render_line_chart("Accuracy vs epsilon", "epsilon", "accuracy", {s}));
    ++rendered;
  }
  for (const auto& entry : fs::directory_iterator(a.in_dir)) {
    const std::string name = entry.path().filename().string();
    if (name.size() > 9 && name.substr(name.size() - 9) == ".loss.csv") {
      const modrec::LossTrace trace = modrec::read_loss_trace_csv(entry.path().string());
      modrec::PlotSeries tr{"train", {}}, va{"val", {}};
      for (const auto& p : trace.train) tr.points.emplace_back(p.batch, p.loss);
      for (const auto& p : trace.val) va.points.emplace_back(p.batch, p.loss);
      const std::string stem = name.substr(0, name.size() - 4);
      modrec::write_text_file(out((stem + ".svg").c_str()),
                              modrec::render_line_chart("Loss per batch", "batch", "loss", {tr, va}));
      ++rendered;
    }
  }
  if (fs::exists(in("sweep_scatter.csv"))) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : modrec::read_sweep_csv(in("sweep_scatter.csv"))) {
      pts.emplace_back(r.train_accuracy, r.val_accuracy);
    }
    modrec::write_text_file(
        out("sweep_scatter.svg"),
        modrec::render_scatter("Train vs validation accuracy", "train accuracy",
                               "validation accuracy", pts));
    ++rendered;
  }

  require(rendered > 0, "no known CSV inputs found in " + a.in_dir);

  ordered_json opts;
  opts["in"] = a.in_dir;
  opts["out"] = a.out_dir;
  opts["rendered"] = rendered;
  write_manifest((fs::path(a.out_dir) / "report_manifest.json").string(), "report", opts, 0);

  std::cout << "rendered " << rendered << " figures into " << a.out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"modrec: modulation recognition workbench"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* gen_cmd = app.add_subcommand("generate", "synthesize a labeled I/Q dataset");
  gen_cmd->add_option("--config", gen.config_path, "key=value or JSON config file");
  gen_cmd->add_option("--classes", gen.classes, "'all' or comma-separated class names");
  gen_cmd->add_option("--snr-min", gen.snr_min, "lowest SNR in dB");
  gen_cmd->add_option("--snr-max", gen.snr_max, "highest SNR in dB");
  gen_cmd->add_option("--snr-step", gen.snr_step, "SNR grid step in dB");
  gen_cmd->add_flag("--noiseless", gen.noiseless, "skip noise injection entirely");
  gen_cmd->add_option("--frames", gen.frames, "frames per (class, SNR) combination");
  gen_cmd->add_option("--channel", gen.channel, "awgn | two-path-fixed | two-path-random");
  gen_cmd->add_option("--scale", gen.scale, "specular path scale");
  gen_cmd->add_option("--delay", gen.delay, "fixed path delay in samples");
  gen_cmd->add_option("--delay-min", gen.delay_min, "random delay lower bound");
  gen_cmd->add_option("--delay-max", gen.delay_max, "random delay upper bound");
  gen_cmd->add_option("--gain-re", gen.gain_re, "specular gain, real part");
  gen_cmd->add_option("--gain-im", gen.gain_im, "specular gain, imaginary part");
  gen_cmd->add_option("--sps", gen.sps, "samples per symbol");
  gen_cmd->add_option("--rolloff", gen.rolloff, "RRC roll-off");
  gen_cmd->add_option("--seed", gen.seed, "master seed");
  gen_cmd->add_option("--threads", gen.threads, "worker threads");
  gen_cmd->add_option("--out", gen.out, "output .mrdf path");

  TrainArgs tr;
  auto* tr_cmd = app.add_subcommand("train", "train the convolutional classifier");
  tr_cmd->add_option("--config", tr.config_path, "key=value or JSON config file");
  tr_cmd->add_option("--data", tr.data, "training dataset (.mrdf)");
  tr_cmd->add_option("--out", tr.out, "output checkpoint (.ckpt)");
  tr_cmd->add_option("--loss-csv", tr.loss_csv, "loss trace CSV path");
  tr_cmd->add_option("--scaling", tr.scaling, "none | rms | oracle");
  tr_cmd->add_option("--conv1", tr.hyper.conv1, "conv1 filter count");
  tr_cmd->add_option("--conv2", tr.hyper.conv2, "conv2 filter count");
  tr_cmd->add_option("--dense", tr.hyper.dense, "dense layer width");
  tr_cmd->add_option("--lr", tr.hyper.lr, "learning rate");
  tr_cmd->add_option("--l2", tr.hyper.l2, "L2 regularization coefficient");
  tr_cmd->add_option("--dropout", tr.hyper.dropout, "dropout rate");
  tr_cmd->add_option("--batch", tr.hyper.batch, "batch size");
  tr_cmd->add_option("--epochs", tr.hyper.epochs, "training epochs");
  tr_cmd->add_option("--train-frac", tr.split.train_frac, "train fraction");
  tr_cmd->add_option("--val-frac", tr.split.val_frac, "validation fraction");
  tr_cmd->add_option("--test-frac", tr.split.test_frac, "test fraction");
  tr_cmd->add_option("--snr-floor", tr.split.snr_floor, "exclude below this SNR from training");
  tr_cmd->add_option("--split-seed", tr.split.split_seed, "split shuffle seed");
  tr_cmd->add_option("--seed", tr.seed, "training seed");

  EvaluateArgs ev;
  auto* ev_cmd = app.add_subcommand("evaluate", "confusion matrix and per-SNR accuracy");
  ev_cmd->add_option("--config", ev.config_path, "key=value or JSON config file");
  ev_cmd->add_option("--model", ev.model, "checkpoint (.ckpt)");
  ev_cmd->add_option("--data", ev.data, "evaluation dataset (.mrdf)");
  ev_cmd->add_option("--out", ev.out_dir, "output directory");
  ev_cmd->add_option("--scaling", ev.scaling, "none | rms | oracle");
  ev_cmd->add_option("--subset", ev.subset, "all | test (held-out split)");
  ev_cmd->add_option("--run-id", ev.run_id, "report identifier");
  ev_cmd->add_option("--train-frac", ev.split.train_frac, "train fraction");
  ev_cmd->add_option("--val-frac", ev.split.val_frac, "validation fraction");
  ev_cmd->add_option("--test-frac", ev.split.test_frac, "test fraction");
  ev_cmd->add_option("--snr-floor", ev.split.snr_floor, "split SNR floor");
  ev_cmd->add_option("--split-seed", ev.split.split_seed, "split shuffle seed");

  AttackArgs at;
  auto* at_cmd = app.add_subcommand("attack", "fast gradient sign attack and epsilon sweep");
  at_cmd->add_option("--config", at.config_path, "key=value or JSON config file");
  at_cmd->add_option("--model", at.model, "checkpoint (.ckpt)");
  at_cmd->add_option("--data", at.data, "dataset to attack (.mrdf)");
  at_cmd->add_option("--out", at.out_dir, "output directory");
  at_cmd->add_option("--scaling", at.scaling, "none | rms | oracle");
  at_cmd->add_option("--subset", at.subset, "all | test");
  at_cmd->add_option("--eps", at.eps, "perturbation budget");
  at_cmd->add_option("--eps-grid", at.eps_grid, "comma-separated epsilon grid");
  at_cmd->add_option("--limit", at.limit, "cap on attacked frames (0 = all)");
  at_cmd->add_option("--examples", at.examples, "waveform dumps to write");
  at_cmd->add_option("--train-frac", at.split.train_frac, "train fraction");
  at_cmd->add_option("--val-frac", at.split.val_frac, "validation fraction");
  at_cmd->add_option("--test-frac", at.split.test_frac, "test fraction");
  at_cmd->add_option("--snr-floor", at.split.snr_floor, "split SNR floor");
  at_cmd->add_option("--split-seed", at.split.split_seed, "split shuffle seed");

  SweepArgs sw;
  auto* sw_cmd = app.add_subcommand("sweep", "hyperparameter grid search");
  sw_cmd->add_option("--config", sw.config_path, "key=value or JSON config file");
  sw_cmd->add_option("--data", sw.data, "dataset (.mrdf)");
  sw_cmd->add_option("--out", sw.out_dir, "output directory");
  sw_cmd->add_option("--scaling", sw.scaling, "none | rms | oracle");
  sw_cmd->add_option("--conv1-list", sw.conv1_list, "conv1 candidates");
  sw_cmd->add_option("--conv2-list", sw.conv2_list, "conv2 candidates");
  sw_cmd->add_option("--dense-list", sw.dense_list, "dense width candidates");
  sw_cmd->add_option("--lr-list", sw.lr_list, "learning rate candidates");
  sw_cmd->add_option("--l2-list", sw.l2_list, "L2 coefficient candidates");
  sw_cmd->add_option("--budget", sw.budget, "number of configurations to run");
  sw_cmd->add_option("--dropout", sw.hyper.dropout, "dropout rate");
  sw_cmd->add_option("--batch", sw.hyper.batch, "batch size");
  sw_cmd->add_option("--epochs", sw.hyper.epochs, "training epochs");
  sw_cmd->add_option("--train-frac", sw.split.train_frac, "train fraction");
  sw_cmd->add_option("--val-frac", sw.split.val_frac, "validation fraction");
  sw_cmd->add_option("--test-frac", sw.split.test_frac, "test fraction");
  sw_cmd->add_option("--snr-floor", sw.split.snr_floor, "split SNR floor");
  sw_cmd->add_option("--split-seed", sw.split.split_seed, "split shuffle seed");
  sw_cmd->add_option("--seed", sw.seed, "sweep seed");

  ReportArgs rp;
  auto* rp_cmd = app.add_subcommand("report", "render SVG figures from prior CSV outputs");
  rp_cmd->add_option("--config", rp.config_path, "key=value or JSON config file");
  rp_cmd->add_option("--in", rp.in_dir, "directory with CSV outputs");
  rp_cmd->add_option("--out", rp.out_dir, "directory for SVG figures (default: --in)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << "\n";
    return 1;
  }

  try {
    if (*gen_cmd) {
      ConfigMerger cm{gen_cmd, {}, {}};
      return run_generate(gen, cm);
    }
    if (*tr_cmd) {
      ConfigMerger cm{tr_cmd, {}, {}};
      return run_train(tr, cm);
    }
    if (*ev_cmd) {
      ConfigMerger cm{ev_cmd, {}, {}};
      return run_evaluate(ev, cm);
    }
    if (*at_cmd) {
      ConfigMerger cm{at_cmd, {}, {}};
      return run_attack(at, cm);
    }
    if (*sw_cmd) {
      ConfigMerger cm{sw_cmd, {}, {}};
      return run_sweep(sw, cm);
    }
    if (*rp_cmd) {
      ConfigMerger cm{rp_cmd, {}, {}};
      return run_report(rp, cm);
    }
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 2;
  } catch (const FormatError& e) {
    std::cerr << "file format error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
