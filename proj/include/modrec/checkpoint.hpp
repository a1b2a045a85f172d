#pragma once

#include <string>

#include "modrec/nn.hpp"

namespace modrec {

// Model checkpoint: net descriptor, training hyperparameters and all
// parameter tensors (shape-prefixed 32-bit little-endian floats).
// Round-trips bit-exactly.

inline constexpr uint16_t kCheckpointFormatVersion = 1;

struct Checkpoint {
  NetSpec spec;
  Hyperparams hyper;
  ModelParams params;
};

void save_checkpoint(const Checkpoint& ckpt, const std::string& path);

// Throws FormatError / VersionError / CorruptionError on malformed input,
// IoError if the file cannot be opened.
Checkpoint load_checkpoint(const std::string& path);

}  // namespace modrec
