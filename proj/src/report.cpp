#include "modrec/report.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "modrec/modclass.hpp"

namespace modrec {

namespace {

std::string fmt_f32(float v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", static_cast<double>(v));
  return buf;
}

std::string fmt_f64(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open for reading: " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

double to_double(const std::string& s, const std::string& path) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw FormatError("bad numeric cell '" + s + "' in " + path);
  }
}

}  // namespace

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open for writing: " + path);
  os << content;
  os.flush();
  if (!os) throw IoError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void write_confusion_csv(const ConfusionMatrix& m, const std::string& path) {
  std::ostringstream os;
  os << "true\\pred";
  for (int c = 0; c < kNumClasses; ++c) os << ',' << mod_class_name(static_cast<ModClass>(c));
  os << '\n';
  for (int r = 0; r < kNumClasses; ++r) {
    os << mod_class_name(static_cast<ModClass>(r));
    for (int c = 0; c < kNumClasses; ++c) {
      os << ',' << m.counts[static_cast<size_t>(r)][static_cast<size_t>(c)];
    }
    os << '\n';
  }
  write_text_file(path, os.str());
}

ConfusionMatrix read_confusion_csv(const std::string& path) {
  const auto rows = parse_csv(path);
  if (rows.size() != kNumClasses + 1) throw FormatError("confusion csv needs 12 rows: " + path);
  ConfusionMatrix m;
  for (int r = 0; r < kNumClasses; ++r) {
    const auto& row = rows[static_cast<size_t>(r + 1)];
    if (row.size() != kNumClasses + 1) throw FormatError("confusion csv row width: " + path);
    for (int c = 0; c < kNumClasses; ++c) {
      m.counts[static_cast<size_t>(r)][static_cast<size_t>(c)] =
          static_cast<int64_t>(to_double(row[static_cast<size_t>(c + 1)], path));
    }
  }
  return m;
}

void write_snr_csv(const std::vector<SnrRow>& rows, const std::string& path) {
  std::ostringstream os;
  os << "snr_db,count,accuracy\n";
  for (const SnrRow& r : rows) {
    os << fmt_f32(r.snr_db) << ',' << r.count << ',' << fmt_f64(r.accuracy) << '\n';
  }
  write_text_file(path, os.str());
}

std::vector<SnrRow> read_snr_csv(const std::string& path) {
  const auto rows = parse_csv(path);
  std::vector<SnrRow> out;
  for (size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != 3) throw FormatError("per-snr csv row width: " + path);
    out.push_back({static_cast<float>(to_double(rows[i][0], path)),
                   static_cast<int>(to_double(rows[i][1], path)), to_double(rows[i][2], path)});
  }
  return out;
}

void write_adv_snr_csv(const std::vector<SnrAccuracyRow>& rows, const std::string& path) {
  std::ostringstream os;
  os << "snr_db,count,clean_accuracy,adversarial_accuracy\n";
  for (const SnrAccuracyRow& r : rows) {
    os << fmt_f32(r.snr_db) << ',' << r.count << ',' << fmt_f64(r.clean_accuracy) << ','
       << fmt_f64(r.adversarial_accuracy) << '\n';
  }
  write_text_file(path, os.str());
}

std::vector<SnrAccuracyRow> read_adv_snr_csv(const std::string& path) {
  const auto rows = parse_csv(path);
  std::vector<SnrAccuracyRow> out;
  for (size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != 4) throw FormatError("adversarial per-snr csv row width: " + path);
    SnrAccuracyRow r;
    r.snr_db = static_cast<float>(to_double(rows[i][0], path));
    r.count = static_cast<int>(to_double(rows[i][1], path));
    r.clean_accuracy = to_double(rows[i][2], path);
    r.adversarial_accuracy = to_double(rows[i][3], path);
    out.push_back(r);
  }
  return out;
}

void write_epsilon_csv(const std::vector<EpsilonRow>& rows, const std::string& path) {
  std::ostringstream os;
  os << "epsilon,accuracy\n";
  for (const EpsilonRow& r : rows) {
    os << fmt_f32(r.epsilon) << ',' << fmt_f64(r.accuracy) << '\n';
  }
  write_text_file(path, os.str());
}

std::vector<EpsilonRow> read_epsilon_csv(const std::string& path) {
  const auto rows = parse_csv(path);
  std::vector<EpsilonRow> out;
  for (size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != 2) throw FormatError("epsilon csv row width: " + path);
    out.push_back({static_cast<float>(to_double(rows[i][0], path)), to_double(rows[i][1], path)});
  }
  return out;
}

void write_loss_trace_csv(const LossTrace& trace, const std::string& path) {
  std::ostringstream os;
  os << "batch,split,loss\n";
  for (const TracePoint& p : trace.train) {
    os << p.batch << ",train," << fmt_f32(p.loss) << '\n';
  }
  for (const TracePoint& p : trace.val) {
    os << p.batch << ",val," << fmt_f32(p.loss) << '\n';
  }
  write_text_file(path, os.str());
}

LossTrace read_loss_trace_csv(const std::string& path) {
  const auto rows = parse_csv(path);
  LossTrace trace;
  for (size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != 3) throw FormatError("loss trace csv row width: " + path);
    TracePoint p{static_cast<int>(to_double(rows[i][0], path)),
                 static_cast<float>(to_double(rows[i][2], path))};
    if (rows[i][1] == "train") {
      trace.train.push_back(p);
    } else if (rows[i][1] == "val") {
      trace.val.push_back(p);
    } else {
      throw FormatError("loss trace csv split column: " + path);
    }
  }
  return trace;
}

void write_sweep_csv(const std::vector<SweepRun>& runs, const std::string& path) {
  std::ostringstream os;
  os << "run,conv1_filters,conv2_filters,dense_units,learning_rate,l2_coefficient,"
        "param_count,train_accuracy,val_accuracy\n";
  for (const SweepRun& r : runs) {
    os << r.index << ',' << r.hyper.conv1_filters << ',' << r.hyper.conv2_filters << ','
       << r.hyper.dense_units << ',' << fmt_f32(r.hyper.learning_rate) << ','
       << fmt_f32(r.hyper.l2_coefficient) << ',' << r.param_count << ','
       << fmt_f64(r.train_accuracy) << ',' << fmt_f64(r.val_accuracy) << '\n';
  }
  write_text_file(path, os.str());
}

std::vector<SweepRun> read_sweep_csv(const std::string& path) {
  const auto rows = parse_csv(path);
  std::vector<SweepRun> out;
  for (size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != 9) throw FormatError("sweep csv row width: " + path);
    SweepRun r;
    r.index = static_cast<int>(to_double(rows[i][0], path));
    r.hyper.conv1_filters = static_cast<int>(to_double(rows[i][1], path));
    r.hyper.conv2_filters = static_cast<int>(to_double(rows[i][2], path));
    r.hyper.dense_units = static_cast<int>(to_double(rows[i][3], path));
    r.hyper.learning_rate = static_cast<float>(to_double(rows[i][4], path));
    r.hyper.l2_coefficient = static_cast<float>(to_double(rows[i][5], path));
    r.param_count = static_cast<int64_t>(to_double(rows[i][6], path));
    r.train_accuracy = to_double(rows[i][7], path);
    r.val_accuracy = to_double(rows[i][8], path);
    out.push_back(r);
  }
  return out;
}

void write_confidence_csv(const ConfidenceReport& report, const std::string& path) {
  std::ostringstream os;
  os << "true_class,clean_pred,adv_pred,adv_confidence,flipped,misclassified\n";
  for (const auto& r : report.rows) {
    os << r.true_class << ',' << r.clean_pred << ',' << r.adv_pred << ','
       << fmt_f32(r.adv_confidence) << ',' << (r.flipped ? 1 : 0) << ','
       << (r.misclassified ? 1 : 0) << '\n';
  }
  write_text_file(path, os.str());
}

// ---------------------------------------------------------------------------

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json hyper_to_json(const Hyperparams& h) {
  return ordered_json{{"conv1_filters", h.conv1_filters},
                      {"conv2_filters", h.conv2_filters},
                      {"dense_units", h.dense_units},
                      {"learning_rate", h.learning_rate},
                      {"l2_coefficient", h.l2_coefficient},
                      {"dropout_rate", h.dropout_rate},
                      {"batch_size", h.batch_size},
                      {"epochs", h.epochs}};
}

Hyperparams hyper_from_json(const ordered_json& j) {
  Hyperparams h;
  h.conv1_filters = j.at("conv1_filters").get<int>();
  h.conv2_filters = j.at("conv2_filters").get<int>();
  h.dense_units = j.at("dense_units").get<int>();
  h.learning_rate = j.at("learning_rate").get<float>();
  h.l2_coefficient = j.at("l2_coefficient").get<float>();
  h.dropout_rate = j.at("dropout_rate").get<float>();
  h.batch_size = j.at("batch_size").get<int>();
  h.epochs = j.at("epochs").get<int>();
  return h;
}

}  // namespace

std::string report_to_json(const RunReport& report) {
  ordered_json j;
  j["run_id"] = report.run_id;
  j["hyperparams"] = hyper_to_json(report.hyper);
  j["dataset_tags"] = report.dataset_tags;
  j["clean_accuracy"] = report.clean_accuracy;

  ordered_json conf;
  conf["classes"] = ordered_json::array();
  for (int i = 0; i < kNumClasses; ++i) {
    conf["classes"].push_back(mod_class_name(static_cast<ModClass>(i)));
  }
  conf["counts"] = ordered_json::array();
  for (const auto& row : report.confusion.counts) {
    conf["counts"].push_back(row);
  }
  j["confusion"] = conf;

  j["per_snr"] = ordered_json::array();
  for (const SnrRow& r : report.per_snr) {
    j["per_snr"].push_back(
        ordered_json{{"snr_db", r.snr_db}, {"count", r.count}, {"accuracy", r.accuracy}});
  }
  j["loss_trace_files"] = report.loss_trace_files;
  j["epsilon_sweep"] = ordered_json::array();
  for (const auto& [eps, acc] : report.epsilon_sweep) {
    j["epsilon_sweep"].push_back(ordered_json{{"epsilon", eps}, {"accuracy", acc}});
  }
  return j.dump(2) + "\n";
}

RunReport report_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad report json: ") + e.what());
  }
  try {
    RunReport r;
    r.run_id = j.at("run_id").get<std::string>();
    r.hyper = hyper_from_json(j.at("hyperparams"));
    r.dataset_tags = j.at("dataset_tags").get<std::vector<std::string>>();
    r.clean_accuracy = j.at("clean_accuracy").get<double>();
    const auto& counts = j.at("confusion").at("counts");
    if (counts.size() != kNumClasses) throw FormatError("confusion counts need 11 rows");
    for (size_t row = 0; row < kNumClasses; ++row) {
      const auto vals = counts[row].get<std::vector<int64_t>>();
      if (vals.size() != kNumClasses) throw FormatError("confusion counts need 11 columns");
      for (size_t col = 0; col < kNumClasses; ++col) r.confusion.counts[row][col] = vals[col];
    }
    for (const auto& e : j.at("per_snr")) {
      r.per_snr.push_back({e.at("snr_db").get<float>(), e.at("count").get<int>(),
                           e.at("accuracy").get<double>()});
    }
    r.loss_trace_files = j.at("loss_trace_files").get<std::vector<std::string>>();
    for (const auto& e : j.at("epsilon_sweep")) {
      r.epsilon_sweep.emplace_back(e.at("epsilon").get<float>(), e.at("accuracy").get<double>());
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad report json: ") + e.what());
  }
}

void write_report_json(const RunReport& report, const std::string& path) {
  write_text_file(path, report_to_json(report));
}

RunReport read_report_json(const std::string& path) {
  return report_from_json(read_text_file(path));
}

bool report_equals(const RunReport& a, const RunReport& b) {
  if (a.run_id != b.run_id || a.dataset_tags != b.dataset_tags ||
      a.clean_accuracy != b.clean_accuracy || a.loss_trace_files != b.loss_trace_files ||
      a.epsilon_sweep != b.epsilon_sweep) {
    return false;
  }
  const auto ha = hyper_to_json(a.hyper), hb = hyper_to_json(b.hyper);
  if (ha != hb) return false;
  if (a.confusion.counts != b.confusion.counts) return false;
  if (a.per_snr.size() != b.per_snr.size()) return false;
  for (size_t i = 0; i < a.per_snr.size(); ++i) {
    if (a.per_snr[i].snr_db != b.per_snr[i].snr_db || a.per_snr[i].count != b.per_snr[i].count ||
        a.per_snr[i].accuracy != b.per_snr[i].accuracy) {
      return false;
    }
  }
  return true;
}

void validate_report_complete(const RunReport& report) {
  std::string missing;
  if (report.run_id.empty()) missing += " run_id";
  if (report.dataset_tags.empty()) missing += " dataset_tags";
  if (report.confusion.total() == 0) missing += " confusion";
  if (report.per_snr.empty()) missing += " per_snr";
  if (!missing.empty()) {
    throw ValidationError("incomplete report; missing sections:" + missing);
  }
}

}  // namespace modrec
