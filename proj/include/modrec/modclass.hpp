#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace modrec {

inline constexpr int kNumClasses = 11;

enum class ModClass : uint16_t {
  kBpsk = 0,
  kQpsk = 1,
  kPsk8 = 2,
  kQam16 = 3,
  kQam64 = 4,
  kPam4 = 5,
  kGfsk = 6,
  kCpfsk = 7,
  kWbfm = 8,
  kAmDsb = 9,
  kAmSsb = 10,
};

// Canonical id <-> name bijection, stable across runs.
const std::string& mod_class_name(ModClass cls);

// Throws ValidationError on an unknown name.
ModClass mod_class_from_name(const std::string& name);

// Throws ValidationError if id is outside [0, kNumClasses).
ModClass mod_class_from_id(uint16_t id);

inline uint16_t mod_class_id(ModClass cls) { return static_cast<uint16_t>(cls); }

bool is_digital(ModClass cls);
bool is_analog(ModClass cls);

std::vector<ModClass> all_mod_classes();

}  // namespace modrec
