#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace modrec {

using cfloat = std::complex<float>;
using cdouble = std::complex<double>;

// Samples per stored frame (classifier input) and per pre-channel burst.
inline constexpr int kFrameLen = 128;
inline constexpr int kBurstLen = 144;

// SNR sentinel meaning "no noise".
inline constexpr float kSnrNoNoise = std::numeric_limits<float>::infinity();

// Invalid or inconsistent configuration values.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Semantic validation failures on otherwise well-formed data.
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Tensor/sequence dimension mismatches.
class ShapeError : public std::runtime_error {
public:
  explicit ShapeError(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem-level failures (open/read/write).
class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed file contents (bad magic, garbage fields).
class FormatError : public std::runtime_error {
public:
  explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

// File carries a version this build does not understand.
class VersionError : public FormatError {
public:
  explicit VersionError(const std::string& msg) : FormatError(msg) {}
};

// File is structurally truncated or internally inconsistent.
class CorruptionError : public FormatError {
public:
  explicit CorruptionError(const std::string& msg) : FormatError(msg) {}
};

}  // namespace modrec
