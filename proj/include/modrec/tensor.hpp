#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "modrec/common.hpp"

namespace modrec {

// Dense row-major tensor with a dynamic shape. Flat data is public; layer
// code indexes it directly for speed.
template <typename T>
struct TensorT {
  std::vector<int> shape;
  std::vector<T> data;

  TensorT() = default;
  explicit TensorT(std::vector<int> s) : shape(std::move(s)) {
    data.assign(static_cast<size_t>(numel_of(shape)), T{});
  }

  static int64_t numel_of(const std::vector<int>& s) {
    int64_t n = 1;
    for (int d : s) {
      if (d <= 0) throw ShapeError("tensor dimensions must be positive");
      n *= d;
    }
    return n;
  }

  int64_t numel() const { return static_cast<int64_t>(data.size()); }

  T& at(int i) { return data[static_cast<size_t>(i)]; }
  const T& at(int i) const { return data[static_cast<size_t>(i)]; }

  // 3-d accessor (C, H, W layout).
  T& at(int c, int h, int w) {
    return data[(static_cast<size_t>(c) * shape[1] + h) * shape[2] + w];
  }
  const T& at(int c, int h, int w) const {
    return data[(static_cast<size_t>(c) * shape[1] + h) * shape[2] + w];
  }

  // 4-d accessor (K, C, H, W layout).
  T& at(int k, int c, int h, int w) {
    return data[((static_cast<size_t>(k) * shape[1] + c) * shape[2] + h) * shape[3] + w];
  }
  const T& at(int k, int c, int h, int w) const {
    return data[((static_cast<size_t>(k) * shape[1] + c) * shape[2] + h) * shape[3] + w];
  }

  // 2-d accessor (rows, cols).
  T& at2(int r, int c) { return data[static_cast<size_t>(r) * shape[1] + c]; }
  const T& at2(int r, int c) const { return data[static_cast<size_t>(r) * shape[1] + c]; }

  bool same_shape(const TensorT& other) const { return shape == other.shape; }
};

using Tensor = TensorT<float>;

template <typename To, typename From>
TensorT<To> cast_tensor(const TensorT<From>& src) {
  TensorT<To> out;
  out.shape = src.shape;
  out.data.reserve(src.data.size());
  for (const From& v : src.data) out.data.push_back(static_cast<To>(v));
  return out;
}

}  // namespace modrec
