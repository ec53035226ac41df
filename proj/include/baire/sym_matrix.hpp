#pragma once

#include <cstddef>
#include <vector>

namespace baire {

// Symmetric p x p matrix with zero diagonal, stored as the condensed upper
// triangle (pair (i,j), i < j, in row-major order).
class SymMatrix {
 public:
  explicit SymMatrix(std::size_t p) : p_(p), data_(p * (p - 1) / 2, 0.0) {}

  std::size_t size() const { return p_; }

  static std::size_t condensed_index(std::size_t p, std::size_t i,
                                     std::size_t j) {
    // requires i < j < p
    return p * i - i * (i + 1) / 2 + (j - i - 1);
  }

  double at(std::size_t i, std::size_t j) const {
    if (i == j) return 0.0;
    if (i > j) {
      const std::size_t t = i;
      i = j;
      j = t;
    }
    return data_[condensed_index(p_, i, j)];
  }

  double& ref(std::size_t i, std::size_t j) {
    if (i > j) {
      const std::size_t t = i;
      i = j;
      j = t;
    }
    return data_[condensed_index(p_, i, j)];
  }

  const std::vector<double>& condensed() const { return data_; }
  std::vector<double>& condensed() { return data_; }

 private:
  std::size_t p_;
  std::vector<double> data_;
};

}  // namespace baire
