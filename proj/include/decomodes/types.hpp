#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace decomodes {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix<Complex, 2, 2>;
using Matrix4c = Eigen::Matrix<Complex, 4, 4>;
using Vector4c = Eigen::Matrix<Complex, 4, 1>;
using Matrix4d = Eigen::Matrix4d;

inline constexpr Complex kI{0.0, 1.0};

/// Decoherence mode: A projects onto the Hamiltonian eigenbasis (E x E),
/// B onto the basis with the spin subsystem rotated (R x E).
enum class Mode { A, B };

std::string to_string(Mode mode);
Mode parse_mode(const std::string& text);

// Errors. DomainError covers precondition violations on inputs,
// NumericError failures of an internal numerical routine.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest elementwise modulus of `a - b`.
double max_abs_diff(const Matrix4c& a, const Matrix4c& b);

}  // namespace decomodes
