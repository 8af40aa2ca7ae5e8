#pragma once

#include "decomodes/types.hpp"

// Pauli matrices, sigma_y = [[0, -i], [i, 0]]. Two-qubit operators are
// ordered spin (x) path.

namespace decomodes::pauli {

inline Matrix2c identity() { return Matrix2c::Identity(); }

inline Matrix2c x() {
  Matrix2c m;
  m << 0, 1, 1, 0;
  return m;
}

inline Matrix2c y() {
  Matrix2c m;
  m << 0, -kI, kI, 0;
  return m;
}

inline Matrix2c z() {
  Matrix2c m;
  m << 1, 0, 0, -1;
  return m;
}

/// a (x) b with `a` acting on the spin, `b` on the path.
inline Matrix4c kron(const Matrix2c& a, const Matrix2c& b) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

/// 0 = identity, 1 = x, 2 = y, 3 = z.
inline Matrix2c by_index(int k) {
  switch (k) {
    case 1: return x();
    case 2: return y();
    case 3: return z();
    default: return identity();
  }
}

}  // namespace decomodes::pauli
