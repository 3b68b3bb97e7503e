#pragma once

#include <cassert>
#include <stdexcept>
#include <vector>

namespace ttp2 {

// Dense square matrix of doubles, row-major.
class Matrix {
 public:
  Matrix() = default;

  explicit Matrix(int size, double fill = 0.0)
      : size_(size), values_(static_cast<std::size_t>(size) * size, fill) {
    if (size < 0) throw std::invalid_argument("matrix size must be non-negative");
  }

  Matrix(int size, std::vector<double> values) : size_(size), values_(std::move(values)) {
    if (size < 0 || values_.size() != static_cast<std::size_t>(size) * size)
      throw std::invalid_argument("matrix value count does not match size*size");
  }

  int size() const { return size_; }

  double operator()(int i, int j) const {
    assert(i >= 0 && i < size_ && j >= 0 && j < size_);
    return values_[static_cast<std::size_t>(i) * size_ + j];
  }

  double& operator()(int i, int j) {
    assert(i >= 0 && i < size_ && j >= 0 && j < size_);
    return values_[static_cast<std::size_t>(i) * size_ + j];
  }

  const std::vector<double>& values() const { return values_; }

  bool operator==(const Matrix&) const = default;

 private:
  int size_ = 0;
  std::vector<double> values_;
};

}  // namespace ttp2
