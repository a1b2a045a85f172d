#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "modrec/checkpoint.hpp"
#include "modrec/config.hpp"
#include "modrec/dataset_io.hpp"
#include "modrec/report.hpp"
#include "modrec/sigsynth.hpp"
#include "modrec/svg.hpp"

using namespace modrec;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("modrec_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(reinterpret_cast<uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

// Random frames on the centi-dB SNR grid (what the pipeline produces),
// including the no-noise sentinel.
std::vector<LabeledFrame> random_frames(int count, uint64_t seed) {
  std::vector<LabeledFrame> out;
  Rng rng(seed);
  for (int i = 0; i < count; ++i) {
    LabeledFrame f;
    f.cls = static_cast<ModClass>(rng.uniform_int(kNumClasses));
    f.snr_db = (i % 17 == 0) ? kSnrNoNoise
                             : static_cast<float>(static_cast<int>(rng.uniform_int(4001)) - 2000) / 100.0f;
    f.channel_tag = static_cast<ChannelTag>(rng.uniform_int(3));
    f.path_scale = f.channel_tag == ChannelTag::kAwgn ? 0.0f
                                                      : static_cast<float>(rng.uniform(0.0, 1.0));
    f.path_delay = f.channel_tag == ChannelTag::kAwgn ? 0
                                                      : static_cast<uint8_t>(1 + rng.uniform_int(8));
    f.clean_rms = static_cast<float>(rng.uniform(0.5, 2.0));
    for (cfloat& s : f.frame.samples) {
      s = cfloat(static_cast<float>(rng.normal()), static_cast<float>(rng.normal()));
    }
    out.push_back(f);
  }
  return out;
}

bool frames_identical(const std::vector<LabeledFrame>& a, const std::vector<LabeledFrame>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].cls != b[i].cls || a[i].channel_tag != b[i].channel_tag ||
        a[i].path_scale != b[i].path_scale || a[i].path_delay != b[i].path_delay ||
        a[i].clean_rms != b[i].clean_rms) {
      return false;
    }
    if (std::isinf(a[i].snr_db) != std::isinf(b[i].snr_db)) return false;
    if (!std::isinf(a[i].snr_db) && a[i].snr_db != b[i].snr_db) return false;
    if (std::memcmp(a[i].frame.samples.data(), b[i].frame.samples.data(),
                    sizeof(a[i].frame.samples)) != 0) {
      return false;
    }
  }
  return true;
}

void corrupt_byte(const std::string& path, size_t offset, uint8_t value) {
  std::fstream f(path, std::ios::binary | std::ios::in | std::ios::out);
  f.seekp(static_cast<std::streamoff>(offset));
  f.write(reinterpret_cast<const char*>(&value), 1);
}

}  // namespace

TEST_CASE("dataset round-trips 1000 random frames bit-exactly") {
  TempDir tmp;
  const auto frames = random_frames(1000, 7);
  const std::string path = tmp.file("roundtrip.mrdf");
  write_dataset(frames, path);
  const auto loaded = read_dataset(path);
  CHECK(frames_identical(frames, loaded));

  // Writing the loaded copy reproduces the file byte for byte.
  const std::string path2 = tmp.file("roundtrip2.mrdf");
  write_dataset(loaded, path2);
  CHECK(read_text_file(path) == read_text_file(path2));
}

TEST_CASE("empty dataset round-trips") {
  TempDir tmp;
  const std::string path = tmp.file("empty.mrdf");
  write_dataset({}, path);
  const auto loaded = read_dataset(path);
  CHECK(loaded.empty());
}

TEST_CASE("corrupted magic raises a format error") {
  TempDir tmp;
  const std::string path = tmp.file("bad_magic.mrdf");
  write_dataset(random_frames(3, 1), path);
  corrupt_byte(path, 0, 'X');
  CHECK_THROWS_AS(read_dataset(path), FormatError);
}

TEST_CASE("unknown version raises a version error") {
  TempDir tmp;
  const std::string path = tmp.file("bad_version.mrdf");
  write_dataset(random_frames(3, 2), path);
  corrupt_byte(path, 4, 0x63);
  CHECK_THROWS_AS(read_dataset(path), VersionError);
}

TEST_CASE("truncated file raises a corruption error") {
  TempDir tmp;
  const std::string path = tmp.file("trunc.mrdf");
  write_dataset(random_frames(5, 3), path);
  const auto full = read_text_file(path);
  write_text_file(path, full.substr(0, full.size() - 37));
  CHECK_THROWS_AS(read_dataset(path), CorruptionError);
}

TEST_CASE("trailing bytes raise a corruption error") {
  TempDir tmp;
  const std::string path = tmp.file("trailing.mrdf");
  write_dataset(random_frames(2, 4), path);
  std::ofstream f(path, std::ios::binary | std::ios::app);
  f << "junk";
  f.close();
  CHECK_THROWS_AS(read_dataset(path), CorruptionError);
}

TEST_CASE("random corruption never crashes the reader") {
  TempDir tmp;
  const std::string path = tmp.file("fuzz.mrdf");
  Rng rng(55);
  for (int trial = 0; trial < 40; ++trial) {
    write_dataset(random_frames(4, 60 + static_cast<uint64_t>(trial)), path);
    const auto size = fs::file_size(path);
    corrupt_byte(path, rng.uniform_int(size), static_cast<uint8_t>(rng.uniform_int(256)));
    try {
      const auto frames = read_dataset(path);
      // A flipped sample byte can still parse; that is fine.
      CHECK(frames.size() <= 4);
    } catch (const FormatError&) {
    } catch (const ValidationError&) {
    }
  }
}

TEST_CASE("missing dataset file raises an io error") {
  CHECK_THROWS_AS(read_dataset("/nonexistent/path/data.mrdf"), IoError);
}

TEST_CASE("checkpoint round-trips bit-exactly") {
  TempDir tmp;
  Hyperparams h;
  h.conv1_filters = 6;
  h.conv2_filters = 3;
  h.dense_units = 12;
  h.learning_rate = 2.5e-4f;
  h.l2_coefficient = 3e-5f;
  h.epochs = 7;
  const NetSpec spec = make_net_spec(h);
  Checkpoint ckpt{spec, h, init_params(spec, 99)};

  const std::string path = tmp.file("model.ckpt");
  save_checkpoint(ckpt, path);
  const Checkpoint loaded = load_checkpoint(path);

  CHECK(loaded.spec.conv1.filters == spec.conv1.filters);
  CHECK(loaded.spec.conv2.kh == spec.conv2.kh);
  CHECK(loaded.spec.dense_units == spec.dense_units);
  CHECK(loaded.hyper.learning_rate == h.learning_rate);
  CHECK(loaded.hyper.epochs == h.epochs);
  auto a = ckpt.params.all();
  auto b = loaded.params.all();
  for (size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i]->shape == b[i]->shape);
    CHECK(std::memcmp(a[i]->data.data(), b[i]->data.data(),
                      a[i]->data.size() * sizeof(float)) == 0);
  }

  // Byte-identical re-serialization.
  const std::string path2 = tmp.file("model2.ckpt");
  save_checkpoint(loaded, path2);
  CHECK(read_text_file(path) == read_text_file(path2));
}

TEST_CASE("checkpoint rejects corruption") {
  TempDir tmp;
  Hyperparams h;
  h.conv1_filters = 4;
  h.conv2_filters = 2;
  h.dense_units = 8;
  const NetSpec spec = make_net_spec(h);
  const std::string path = tmp.file("model.ckpt");
  save_checkpoint({spec, h, init_params(spec, 1)}, path);

  corrupt_byte(path, 0, 'Z');
  CHECK_THROWS_AS(load_checkpoint(path), FormatError);

  save_checkpoint({spec, h, init_params(spec, 1)}, path);
  corrupt_byte(path, 4, 9);
  CHECK_THROWS_AS(load_checkpoint(path), VersionError);

  save_checkpoint({spec, h, init_params(spec, 1)}, path);
  const auto full = read_text_file(path);
  write_text_file(path, full.substr(0, full.size() / 2));
  CHECK_THROWS_AS(load_checkpoint(path), CorruptionError);

  CHECK_THROWS_AS(load_checkpoint(tmp.file("missing.ckpt")), IoError);
}

TEST_CASE("run report json round-trips") {
  RunReport r;
  r.run_id = "demo";
  r.hyper.conv1_filters = 32;
  r.hyper.learning_rate = 7e-4f;
  r.dataset_tags = {"d1.mrdf", "d2.mrdf"};
  r.clean_accuracy = 0.8125;
  r.confusion.counts[3][4] = 17;
  r.confusion.counts[0][0] = 40;
  r.per_snr = {{-4.0f, 100, 0.25}, {10.0f, 100, 0.975}};
  r.loss_trace_files = {"m.ckpt.loss.csv"};
  r.epsilon_sweep = {{0.0f, 0.8125}, {0.05f, 0.25}};

  const RunReport back = report_from_json(report_to_json(r));
  CHECK(report_equals(r, back));

  CHECK_THROWS_AS(report_from_json("{\"run_id\": 3"), FormatError);
  CHECK_THROWS_AS(report_from_json("{\"run_id\": \"x\"}"), FormatError);
}

TEST_CASE("incomplete reports are rejected with the missing sections named") {
  RunReport r;
  try {
    validate_report_complete(r);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    const std::string what = e.what();
    CHECK(what.find("run_id") != std::string::npos);
    CHECK(what.find("confusion") != std::string::npos);
  }
}

TEST_CASE("confusion csv has the class header and 11 data rows") {
  TempDir tmp;
  ConfusionMatrix m;
  for (int i = 0; i < kNumClasses; ++i) m.counts[static_cast<size_t>(i)][static_cast<size_t>(i)] = 5;
  const std::string path = tmp.file("confusion.csv");
  write_confusion_csv(m, path);

  std::ifstream is(path);
  std::string header;
  std::getline(is, header);
  int commas = 0;
  for (char c : header) commas += c == ',';
  CHECK(commas == kNumClasses);  // corner cell + 11 names
  int rows = 0;
  std::string line;
  while (std::getline(is, line)) rows += !line.empty();
  CHECK(rows == kNumClasses);

  // Off-diagonal cells of a diagonal matrix are all "0".
  const ConfusionMatrix back = read_confusion_csv(path);
  for (int r = 0; r < kNumClasses; ++r) {
    for (int c = 0; c < kNumClasses; ++c) {
      CHECK(back.counts[static_cast<size_t>(r)][static_cast<size_t>(c)] == (r == c ? 5 : 0));
    }
  }
}

TEST_CASE("csv round-trips preserve every table") {
  TempDir tmp;
  const std::vector<SnrRow> snr = {{-2.0f, 50, 0.42}, {6.0f, 50, 0.77}};
  write_snr_csv(snr, tmp.file("snr.csv"));
  const auto snr_back = read_snr_csv(tmp.file("snr.csv"));
  REQUIRE(snr_back.size() == 2);
  CHECK(snr_back[1].accuracy == 0.77);

  const std::vector<EpsilonRow> eps = {{0.0f, 0.9}, {0.05f, 0.4}};
  write_epsilon_csv(eps, tmp.file("eps.csv"));
  const auto eps_back = read_epsilon_csv(tmp.file("eps.csv"));
  REQUIRE(eps_back.size() == 2);
  CHECK(eps_back[1].epsilon == 0.05f);

  LossTrace trace;
  trace.train = {{0, 2.5f}, {1, 2.1f}};
  trace.val = {{1, 2.3f}};
  write_loss_trace_csv(trace, tmp.file("loss.csv"));
  const auto trace_back = read_loss_trace_csv(tmp.file("loss.csv"));
  CHECK(trace_back.train.size() == 2);
  CHECK(trace_back.val.size() == 1);
  CHECK(trace_back.train[1].loss == 2.1f);

  // Per-SNR row count matches the distinct SNR count.
  CHECK(snr_back.size() == snr.size());
}

TEST_CASE("svg rendering is a pure function of its input") {
  const std::vector<PlotSeries> series = {{"a", {{0.0, 0.1}, {1.0, 0.6}, {2.0, 0.4}}}};
  const std::string s1 = render_line_chart("t", "x", "y", series);
  const std::string s2 = render_line_chart("t", "x", "y", series);
  CHECK(s1 == s2);
  CHECK(s1.find("<svg") != std::string::npos);
  CHECK(s1.find("polyline") != std::string::npos);

  const std::vector<std::vector<double>> m = {{1.0, 0.0}, {0.25, 0.75}};
  CHECK(render_heatmap("h", {"a", "b"}, m) == render_heatmap("h", {"a", "b"}, m));
}

TEST_CASE("config files parse key=value and json, rejecting unknown keys") {
  TempDir tmp;
  const std::string kv = tmp.file("run.cfg");
  write_text_file(kv, "# comment\nepochs = 12\nlr=0.002\nname = run a\n\n");
  const auto cfg = load_config_file(kv);
  CHECK(config_int(cfg, "epochs", 0) == 12);
  CHECK(config_double(cfg, "lr", 0.0) == 0.002);
  CHECK(config_string(cfg, "name", "") == "run a");
  CHECK(config_int(cfg, "absent", 7) == 7);

  const std::string js = tmp.file("run.json");
  write_text_file(js, "{\"epochs\": 12, \"lr\": 0.002, \"deep\": true}\n");
  const auto jcfg = load_config_file(js);
  CHECK(config_int(jcfg, "epochs", 0) == 12);
  CHECK(config_string(jcfg, "deep", "") == "true");

  CHECK_NOTHROW(reject_unknown_keys(cfg, {"epochs", "lr", "name"}));
  CHECK_THROWS_AS(reject_unknown_keys(cfg, {"epochs"}), ValidationError);

  CHECK_THROWS_AS(load_config_file(tmp.file("missing.cfg")), IoError);
  write_text_file(kv, "not a config line\n");
  CHECK_THROWS_AS(load_config_file(kv), FormatError);
  write_text_file(js, "{\"nested\": {\"a\": 1}}");
  CHECK_THROWS_AS(load_config_file(js), FormatError);
  write_text_file(js, "{broken");
  CHECK_THROWS_AS(load_config_file(js), FormatError);

  CHECK_THROWS_AS(config_int(cfg, "name", 0), ValidationError);
}
