#include "modrec/modclass.hpp"

#include <array>

#include "modrec/common.hpp"

namespace modrec {

namespace {
const std::array<std::string, kNumClasses> kNames = {
    "BPSK", "QPSK", "PSK8",  "QAM16",  "QAM64", "PAM4",
    "GFSK", "CPFSK", "WBFM", "AM-DSB", "AM-SSB"};
}  // namespace

const std::string& mod_class_name(ModClass cls) {
  return kNames[static_cast<size_t>(cls)];
}

ModClass mod_class_from_name(const std::string& name) {
  for (int i = 0; i < kNumClasses; ++i) {
    if (kNames[static_cast<size_t>(i)] == name) return static_cast<ModClass>(i);
  }
  throw ValidationError("unknown modulation class name: " + name);
}

ModClass mod_class_from_id(uint16_t id) {
  if (id >= kNumClasses) {
    throw ValidationError("modulation class id out of range: " + std::to_string(id));
  }
  return static_cast<ModClass>(id);
}

bool is_digital(ModClass cls) {
  switch (cls) {
    case ModClass::kBpsk:
    case ModClass::kQpsk:
    case ModClass::kPsk8:
    case ModClass::kQam16:
    case ModClass::kQam64:
    case ModClass::kPam4:
    case ModClass::kGfsk:
    case ModClass::kCpfsk:
      return true;
    default:
      return false;
  }
}

bool is_analog(ModClass cls) { return !is_digital(cls); }

std::vector<ModClass> all_mod_classes() {
  std::vector<ModClass> out;
  out.reserve(kNumClasses);
  for (int i = 0; i < kNumClasses; ++i) out.push_back(static_cast<ModClass>(i));
  return out;
}

}  // namespace modrec
