#pragma once

#include <string>
#include <utility>
#include <vector>

#include "modrec/adversarial.hpp"
#include "modrec/eval.hpp"
#include "modrec/train.hpp"

namespace modrec {

// CSV writers. All numeric formatting round-trips the stored precision, so
// files are pure functions of the data.
void write_confusion_csv(const ConfusionMatrix& m, const std::string& path);
void write_snr_csv(const std::vector<SnrRow>& rows, const std::string& path);
void write_adv_snr_csv(const std::vector<SnrAccuracyRow>& rows, const std::string& path);
void write_epsilon_csv(const std::vector<EpsilonRow>& rows, const std::string& path);
void write_loss_trace_csv(const LossTrace& trace, const std::string& path);
void write_sweep_csv(const std::vector<SweepRun>& runs, const std::string& path);
void write_confidence_csv(const ConfidenceReport& report, const std::string& path);

// Readers used by the report renderer.
ConfusionMatrix read_confusion_csv(const std::string& path);
std::vector<SnrRow> read_snr_csv(const std::string& path);
std::vector<SnrAccuracyRow> read_adv_snr_csv(const std::string& path);
std::vector<EpsilonRow> read_epsilon_csv(const std::string& path);
LossTrace read_loss_trace_csv(const std::string& path);
std::vector<SweepRun> read_sweep_csv(const std::string& path);

// RunReport JSON. parse(serialize(r)) == r, field for field.
std::string report_to_json(const RunReport& report);
RunReport report_from_json(const std::string& text);
void write_report_json(const RunReport& report, const std::string& path);
RunReport read_report_json(const std::string& path);
bool report_equals(const RunReport& a, const RunReport& b);

// Validates that required sections are present; throws ValidationError
// naming every missing one.
void validate_report_complete(const RunReport& report);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace modrec
