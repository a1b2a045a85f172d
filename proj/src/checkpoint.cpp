#include "modrec/checkpoint.hpp"

#include <cstring>
#include <fstream>

#include "binio.hpp"

namespace modrec {

namespace {

constexpr char kMagic[4] = {'M', 'R', 'C', 'K'};

void put_tensor(std::ostream& os, const Tensor& t) {
  binio::put_u16(os, static_cast<uint16_t>(t.shape.size()));
  for (int d : t.shape) binio::put_u32(os, static_cast<uint32_t>(d));
  for (float v : t.data) binio::put_f32(os, v);
}

Tensor get_tensor(std::istream& is) {
  const uint16_t rank = binio::get_u16(is, "tensor rank");
  if (rank == 0 || rank > 4) throw CorruptionError("implausible tensor rank");
  std::vector<int> shape(rank);
  int64_t numel = 1;
  for (uint16_t i = 0; i < rank; ++i) {
    const uint32_t d = binio::get_u32(is, "tensor dim");
    if (d == 0 || d > (1u << 24)) throw CorruptionError("implausible tensor dimension");
    shape[i] = static_cast<int>(d);
    numel *= d;
  }
  Tensor t;
  t.shape = std::move(shape);
  t.data.resize(static_cast<size_t>(numel));
  for (float& v : t.data) v = binio::get_f32(is, "tensor data");
  return t;
}

}  // namespace

void save_checkpoint(const Checkpoint& ckpt, const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open for writing: " + path);

  binio::put_bytes(os, kMagic, 4);
  binio::put_u16(os, kCheckpointFormatVersion);

  binio::put_u32(os, static_cast<uint32_t>(ckpt.spec.conv1.filters));
  binio::put_u32(os, static_cast<uint32_t>(ckpt.spec.conv1.kh));
  binio::put_u32(os, static_cast<uint32_t>(ckpt.spec.conv1.kw));
  binio::put_u32(os, static_cast<uint32_t>(ckpt.spec.conv2.filters));
  binio::put_u32(os, static_cast<uint32_t>(ckpt.spec.conv2.kh));
  binio::put_u32(os, static_cast<uint32_t>(ckpt.spec.conv2.kw));
  binio::put_u32(os, static_cast<uint32_t>(ckpt.spec.dense_units));
  binio::put_u32(os, static_cast<uint32_t>(ckpt.spec.class_count));
  binio::put_u32(os, static_cast<uint32_t>(ckpt.spec.input_h));
  binio::put_u32(os, static_cast<uint32_t>(ckpt.spec.input_w));

  binio::put_f32(os, ckpt.hyper.learning_rate);
  binio::put_f32(os, ckpt.hyper.l2_coefficient);
  binio::put_f32(os, ckpt.hyper.dropout_rate);
  binio::put_u32(os, static_cast<uint32_t>(ckpt.hyper.batch_size));
  binio::put_u32(os, static_cast<uint32_t>(ckpt.hyper.epochs));
  binio::put_u32(os, static_cast<uint32_t>(ckpt.hyper.conv1_filters));
  binio::put_u32(os, static_cast<uint32_t>(ckpt.hyper.conv2_filters));
  binio::put_u32(os, static_cast<uint32_t>(ckpt.hyper.dense_units));

  for (const Tensor* t : ckpt.params.all()) put_tensor(os, *t);

  os.flush();
  if (!os) throw IoError("write failed: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open for reading: " + path);

  char magic[4];
  binio::read_bytes(is, magic, 4, "magic");
  if (std::memcmp(magic, kMagic, 4) != 0) {
    throw FormatError("bad magic, not a checkpoint: " + path);
  }
  const uint16_t version = binio::get_u16(is, "version");
  if (version != kCheckpointFormatVersion) {
    throw VersionError("unsupported checkpoint version " + std::to_string(version));
  }

  Checkpoint ckpt;
  ckpt.spec.conv1.filters = static_cast<int>(binio::get_u32(is, "conv1 filters"));
  ckpt.spec.conv1.kh = static_cast<int>(binio::get_u32(is, "conv1 kh"));
  ckpt.spec.conv1.kw = static_cast<int>(binio::get_u32(is, "conv1 kw"));
  ckpt.spec.conv2.filters = static_cast<int>(binio::get_u32(is, "conv2 filters"));
  ckpt.spec.conv2.kh = static_cast<int>(binio::get_u32(is, "conv2 kh"));
  ckpt.spec.conv2.kw = static_cast<int>(binio::get_u32(is, "conv2 kw"));
  ckpt.spec.dense_units = static_cast<int>(binio::get_u32(is, "dense units"));
  ckpt.spec.class_count = static_cast<int>(binio::get_u32(is, "class count"));
  ckpt.spec.input_h = static_cast<int>(binio::get_u32(is, "input h"));
  ckpt.spec.input_w = static_cast<int>(binio::get_u32(is, "input w"));

  ckpt.hyper.learning_rate = binio::get_f32(is, "learning rate");
  ckpt.hyper.l2_coefficient = binio::get_f32(is, "l2");
  ckpt.hyper.dropout_rate = binio::get_f32(is, "dropout");
  ckpt.hyper.batch_size = static_cast<int>(binio::get_u32(is, "batch size"));
  ckpt.hyper.epochs = static_cast<int>(binio::get_u32(is, "epochs"));
  ckpt.hyper.conv1_filters = static_cast<int>(binio::get_u32(is, "hyper conv1"));
  ckpt.hyper.conv2_filters = static_cast<int>(binio::get_u32(is, "hyper conv2"));
  ckpt.hyper.dense_units = static_cast<int>(binio::get_u32(is, "hyper dense"));

  try {
    ckpt.spec.validate();
  } catch (const ConfigError& e) {
    throw CorruptionError(std::string("checkpoint spec invalid: ") + e.what());
  }

  for (Tensor* t : ckpt.params.all()) *t = get_tensor(is);

  const ModelParams expect = zero_params<float>(ckpt.spec);
  auto got = ckpt.params.all();
  auto want = expect.all();
  for (size_t i = 0; i < got.size(); ++i) {
    if (got[i]->shape != want[i]->shape) {
      throw CorruptionError("checkpoint tensor shape does not match its net descriptor");
    }
  }

  char extra;
  is.read(&extra, 1);
  if (is.gcount() != 0) throw CorruptionError("trailing bytes after last tensor");
  return ckpt;
}

}  // namespace modrec
