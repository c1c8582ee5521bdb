#ifndef ALE_COMMON_HPP
#define ALE_COMMON_HPP

#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ale {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {
inline void cat_one(std::ostringstream& os, const auto& v) { os << v; }
}  // namespace detail

template <typename... Args>
std::string str_cat(const Args&... args) {
  std::ostringstream os;
  (detail::cat_one(os, args), ...);
  return os.str();
}

template <typename... Args>
[[noreturn]] void fail(const Args&... args) {
  throw Error(str_cat(args...));
}

// 17 significant digits: shortest text that round-trips any double.
inline std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Compact form for plots and human-facing summaries.
inline std::string format_compact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Execution backend for the data-parallel kernels. `serial` is the
// reference implementation; `openmp` must produce identical bytes.
enum class Backend { serial, openmp };

Backend default_backend();
const char* backend_name(Backend b);

// Dense row-major matrix of predictor rows (m rows x d columns).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), v_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return v_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return v_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return v_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {v_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {v_.data() + i * cols_, cols_}; }

  void set_row(std::size_t i, std::span<const double> values) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = values[j];
  }

  double* data() { return v_.data(); }
  const double* data() const { return v_.data(); }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> v_;
};

}  // namespace ale

#endif  // ALE_COMMON_HPP
