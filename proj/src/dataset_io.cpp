#include "modrec/dataset_io.hpp"

#include <cmath>
#include <fstream>

#include "binio.hpp"
#include "modrec/modclass.hpp"

namespace modrec {

namespace {

constexpr char kMagic[4] = {'M', 'R', 'D', 'F'};

int16_t snr_to_centi_db(float snr_db) {
  if (std::isinf(snr_db) && snr_db > 0) return kSnrSentinelCentiDb;
  const long v = std::lround(snr_db * 100.0f);
  if (v >= kSnrSentinelCentiDb || v < INT16_MIN) {
    throw ValidationError("snr out of range for centi-dB encoding");
  }
  return static_cast<int16_t>(v);
}

float centi_db_to_snr(int16_t cdb) {
  if (cdb == kSnrSentinelCentiDb) return kSnrNoNoise;
  return static_cast<float>(cdb) / 100.0f;
}

}  // namespace

void write_dataset(const std::vector<LabeledFrame>& frames, const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open for writing: " + path);

  binio::put_bytes(os, kMagic, 4);
  binio::put_u16(os, kDatasetFormatVersion);
  binio::put_u16(os, kNumClasses);
  binio::put_u16(os, kFrameLen);
  binio::put_u64(os, frames.size());
  for (int i = 0; i < kNumClasses; ++i) {
    const std::string& name = mod_class_name(static_cast<ModClass>(i));
    binio::put_u16(os, static_cast<uint16_t>(name.size()));
    binio::put_bytes(os, name.data(), name.size());
  }

  for (const LabeledFrame& f : frames) {
    binio::put_u16(os, mod_class_id(f.cls));
    binio::put_i16(os, snr_to_centi_db(f.snr_db));
    binio::put_u8(os, static_cast<uint8_t>(f.channel_tag));
    binio::put_f32(os, f.path_scale);
    binio::put_u8(os, f.path_delay);
    binio::put_f32(os, f.clean_rms);
    for (const cfloat& s : f.frame.samples) {
      binio::put_f32(os, s.real());
      binio::put_f32(os, s.imag());
    }
  }
  os.flush();
  if (!os) throw IoError("write failed: " + path);
}

std::vector<LabeledFrame> read_dataset(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open for reading: " + path);

  char magic[4];
  binio::read_bytes(is, magic, 4, "magic");
  if (std::memcmp(magic, kMagic, 4) != 0) {
    throw FormatError("bad magic, not an MRDF dataset: " + path);
  }
  const uint16_t version = binio::get_u16(is, "version");
  if (version != kDatasetFormatVersion) {
    throw VersionError("unsupported MRDF version " + std::to_string(version));
  }
  const uint16_t class_count = binio::get_u16(is, "class count");
  if (class_count != kNumClasses) {
    throw FormatError("unexpected class count " + std::to_string(class_count));
  }
  const uint16_t frame_len = binio::get_u16(is, "frame length");
  if (frame_len != kFrameLen) {
    throw FormatError("unexpected frame length " + std::to_string(frame_len));
  }
  const uint64_t count = binio::get_u64(is, "record count");

  for (int i = 0; i < class_count; ++i) {
    const uint16_t len = binio::get_u16(is, "class name length");
    if (len > 64) throw FormatError("implausible class name length");
    std::string name(len, '\0');
    binio::read_bytes(is, name.data(), len, "class name");
    if (name != mod_class_name(static_cast<ModClass>(i))) {
      throw FormatError("class table mismatch at id " + std::to_string(i));
    }
  }

  std::vector<LabeledFrame> frames;
  frames.reserve(count);
  for (uint64_t r = 0; r < count; ++r) {
    LabeledFrame f;
    const uint16_t cls_id = binio::get_u16(is, "class id");
    if (cls_id >= class_count) {
      throw CorruptionError("record " + std::to_string(r) + " has class id " +
                            std::to_string(cls_id));
    }
    f.cls = static_cast<ModClass>(cls_id);
    f.snr_db = centi_db_to_snr(binio::get_i16(is, "snr"));
    const uint8_t tag = binio::get_u8(is, "channel tag");
    if (tag > 2) throw CorruptionError("record " + std::to_string(r) + " has bad channel tag");
    f.channel_tag = static_cast<ChannelTag>(tag);
    f.path_scale = binio::get_f32(is, "path scale");
    f.path_delay = binio::get_u8(is, "path delay");
    f.clean_rms = binio::get_f32(is, "clean rms");
    if (!std::isfinite(f.path_scale) || !std::isfinite(f.clean_rms)) {
      throw CorruptionError("record " + std::to_string(r) + " has non-finite metadata");
    }
    for (cfloat& s : f.frame.samples) {
      const float re = binio::get_f32(is, "sample");
      const float im = binio::get_f32(is, "sample");
      if (!std::isfinite(re) || !std::isfinite(im)) {
        throw CorruptionError("record " + std::to_string(r) + " has non-finite samples");
      }
      s = cfloat(re, im);
    }
    frames.push_back(f);
  }

  // Exactly `count` records, nothing after them.
  char extra;
  is.read(&extra, 1);
  if (is.gcount() != 0) throw CorruptionError("trailing bytes after last record");
  return frames;
}

}  // namespace modrec
