#include "modrec/frame.hpp"

#include <cmath>
#include <set>

namespace modrec {

const char* channel_tag_name(ChannelTag tag) {
  switch (tag) {
    case ChannelTag::kAwgn: return "awgn";
    case ChannelTag::kTwoPathFixed: return "two_path_fixed";
    case ChannelTag::kTwoPathRandom: return "two_path_random";
  }
  return "unknown";
}

std::vector<float> make_default_snr_grid() {
  std::vector<float> grid;
  for (int db = -20; db <= 18; db += 2) grid.push_back(static_cast<float>(db));
  return grid;
}

void GenConfig::validate() const {
  if (samples_per_symbol < 2) {
    throw ConfigError("samples_per_symbol must be >= 2");
  }
  if (!(rrc_rolloff > 0.0 && rrc_rolloff <= 1.0)) {
    throw ConfigError("rrc_rolloff must lie in (0, 1]");
  }
  if (snr_grid_db.empty()) throw ConfigError("snr grid must be nonempty");
  for (size_t i = 1; i < snr_grid_db.size(); ++i) {
    if (!(snr_grid_db[i] > snr_grid_db[i - 1])) {
      throw ConfigError("snr grid must be strictly increasing");
    }
  }
  if (frames_per_combo < 1) throw ConfigError("frames_per_combo must be >= 1");
  if (!classes.empty()) {
    std::set<ModClass> seen(classes.begin(), classes.end());
    if (seen.size() != classes.size()) {
      throw ConfigError("class list contains duplicates");
    }
  }
}

std::vector<ModClass> GenConfig::effective_classes() const {
  return classes.empty() ? all_mod_classes() : classes;
}

double mean_power(const cfloat* samples, int n) {
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += std::norm(static_cast<cdouble>(samples[i]));
  return acc / n;
}

double rms(const cfloat* samples, int n) {
  return std::sqrt(mean_power(samples, n));
}

}  // namespace modrec
