#ifndef ALE_ND_ARRAY_HPP
#define ALE_ND_ARRAY_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "ale/common.hpp"

namespace ale {

// Small dense tensor, row-major (last axis fastest). Flat order equals
// lexicographic order of the multi-index, which the imputation tie-break
// and all deterministic iteration rely on.
template <typename T>
class NdArray {
 public:
  NdArray() = default;

  explicit NdArray(std::vector<int> dims, T init = T{}) : dims_(std::move(dims)) {
    strides_.assign(dims_.size(), 1);
    std::size_t total = 1;
    for (int i = static_cast<int>(dims_.size()) - 1; i >= 0; --i) {
      strides_[i] = total;
      total *= static_cast<std::size_t>(dims_[i]);
    }
    v_.assign(total, init);
  }

  std::size_t size() const { return v_.size(); }
  int rank() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }
  int dim(int axis) const { return dims_[axis]; }
  std::size_t stride(int axis) const { return strides_[axis]; }

  std::size_t flat_index(std::span<const int> idx) const {
    std::size_t f = 0;
    for (std::size_t a = 0; a < dims_.size(); ++a) f += strides_[a] * static_cast<std::size_t>(idx[a]);
    return f;
  }

  void unflatten(std::size_t flat, std::span<int> out) const {
    for (std::size_t a = 0; a < dims_.size(); ++a) {
      out[a] = static_cast<int>(flat / strides_[a]);
      flat %= strides_[a];
    }
  }

  T& operator[](std::size_t flat) { return v_[flat]; }
  const T& operator[](std::size_t flat) const { return v_[flat]; }
  T& at(std::span<const int> idx) { return v_[flat_index(idx)]; }
  const T& at(std::span<const int> idx) const { return v_[flat_index(idx)]; }

  std::vector<T>& flat() { return v_; }
  const std::vector<T>& flat() const { return v_; }

 private:
  std::vector<int> dims_;
  std::vector<std::size_t> strides_;
  std::vector<T> v_;
};

// Odometer increment over a multi-index in [0, dims). Returns false once
// the index wraps past the end. Start from all zeros.
inline bool next_index(std::span<int> idx, std::span<const int> dims) {
  for (int a = static_cast<int>(dims.size()) - 1; a >= 0; --a) {
    if (++idx[a] < dims[a]) return true;
    idx[a] = 0;
  }
  return false;
}

}  // namespace ale

#endif  // ALE_ND_ARRAY_HPP
