#pragma once

#include <string>
#include <vector>

#include "modrec/frame.hpp"

namespace modrec {

// MRDF dataset container, version 1. Little-endian throughout.
//
//   magic "MRDF" | u16 version | u16 class count | u16 frame length |
//   u64 record count | class table (u16 length + UTF-8 name, per class) |
//   records
//
// record: u16 class id | i16 snr centi-dB (0x7fff = no noise) | u8 channel
// tag | f32 path scale | u8 path delay | f32 clean rms | 128 * (f32 I, f32 Q)
//
// SNR is quantized to centi-dB; frames produced by the pipeline always sit
// on that grid, so read(write(d)) round-trips bit-exactly.

inline constexpr uint16_t kDatasetFormatVersion = 1;
inline constexpr int16_t kSnrSentinelCentiDb = 0x7fff;

void write_dataset(const std::vector<LabeledFrame>& frames, const std::string& path);

// Validates magic, version, header consistency and exact file length.
// Throws FormatError / VersionError / CorruptionError on malformed input,
// IoError if the file cannot be opened.
std::vector<LabeledFrame> read_dataset(const std::string& path);

}  // namespace modrec
