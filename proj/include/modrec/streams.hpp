#pragma once

#include <cstdint>

namespace modrec {

// Stage tags for per-frame derived RNG streams. Synthesis, channel and noise
// each get an independent stream so that e.g. AWGN-only and two-path frames
// built from the same burst share identical noise draws.
inline constexpr uint64_t kStreamSynth = 0x53594e54;    // "SYNT"
inline constexpr uint64_t kStreamChannel = 0x4348414e;  // "CHAN"
inline constexpr uint64_t kStreamNoise = 0x4e4f4953;    // "NOIS"

}  // namespace modrec
