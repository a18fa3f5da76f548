#pragma once

#include <cstdint>
#include <vector>

#include "soc/linalg.hpp"

namespace soc::testsupport {

// Deterministic generator for reproducible fixtures. mt19937 raw draws are
// portable; distributions are not, so scale by hand.
class Rng {
 public:
  explicit Rng(std::uint32_t seed) : state_(seed) {}

  double real() {  // uniform in [-1, 1)
    return 2.0 * (next() / 4294967296.0) - 1.0;
  }

  Cplx cplx() { return Cplx(real(), real()); }

  std::uint32_t next() {
    // xorshift32; tiny, stable across platforms
    std::uint32_t x = state_;
    x ^= x << 13;
    x ^= x >> 17;
    x ^= x << 5;
    return state_ = x;
  }

  std::uint32_t below(std::uint32_t n) { return next() % n; }

 private:
  std::uint32_t state_;
};

inline ComplexMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rng.cplx();
  return m;
}

inline ComplexMatrix random_real_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = Cplx(rng.real(), 0);
  return m;
}

// Random + n*I is strictly diagonally dominant in expectation at this scale;
// keep it safely invertible by construction.
inline ComplexMatrix random_invertible(Rng& rng, std::size_t n) {
  ComplexMatrix m = random_matrix(rng, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m.at(i, i) += Cplx(static_cast<double>(n) + 1.0, 0.0);
  }
  return m;
}

}  // namespace soc::testsupport
