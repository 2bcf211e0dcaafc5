#pragma once

#include <stdexcept>
#include <vector>

#include "ebdetect/detector.hpp"

namespace ebdetect::fock {

/// Truncated Fock space: one bosonic mode per emitter, at most `cutoff`
/// photons per mode. Basis vectors are occupation tuples ordered with mode 0
/// varying fastest, so index = sum_j n_j (cutoff+1)^j.
struct ModeSpace {
  int n_modes = 1;
  int cutoff = 1;

  void validate() const {
    if (n_modes < 1) throw std::invalid_argument("ModeSpace: n_modes must be >= 1");
    if (cutoff < 1) throw std::invalid_argument("ModeSpace: cutoff must be >= 1");
  }

  int levels() const { return cutoff + 1; }

  int dimension() const {
    int dim = 1;
    for (int j = 0; j < n_modes; ++j) dim *= levels();
    return dim;
  }

  int stride(int mode) const {
    int s = 1;
    for (int j = 0; j < mode; ++j) s *= levels();
    return s;
  }

  int occupation(int basis_index, int mode) const {
    return (basis_index / stride(mode)) % levels();
  }
};

/// Dense square complex matrix; the spaces here stay tiny (dimension <= 81).
struct DenseMatrix {
  int n = 0;
  std::vector<Complex> a;

  DenseMatrix() = default;
  explicit DenseMatrix(int size) : n(size), a(static_cast<std::size_t>(size) * size) {}

  Complex& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  const Complex& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

  std::vector<Complex> apply(const std::vector<Complex>& v) const {
    if (static_cast<int>(v.size()) != n) throw std::invalid_argument("DenseMatrix: size mismatch");
    std::vector<Complex> out(v.size());
    for (int i = 0; i < n; ++i) {
      Complex acc{};
      for (int j = 0; j < n; ++j) acc += (*this)(i, j) * v[j];
      out[i] = acc;
    }
    return out;
  }

  DenseMatrix adjoint() const {
    DenseMatrix out(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out(i, j) = std::conj((*this)(j, i));
    return out;
  }

  friend DenseMatrix operator*(const DenseMatrix& lhs, const DenseMatrix& rhs) {
    if (lhs.n != rhs.n) throw std::invalid_argument("DenseMatrix: size mismatch");
    DenseMatrix out(lhs.n);
    for (int i = 0; i < lhs.n; ++i)
      for (int k = 0; k < lhs.n; ++k) {
        const Complex l = lhs(i, k);
        if (l == Complex{}) continue;
        for (int j = 0; j < lhs.n; ++j) out(i, j) += l * rhs(k, j);
      }
    return out;
  }
};

/// Ladder operator a_j on the truncated space: <n-1| a |n> = sqrt(n) in mode j,
/// identity elsewhere in the tensor product.
inline DenseMatrix annihilation_matrix(const ModeSpace& space, int mode) {
  space.validate();
  if (mode < 0 || mode >= space.n_modes)
    throw std::out_of_range("annihilation_matrix: mode index out of range");
  const int dim = space.dimension();
  const int step = space.stride(mode);
  DenseMatrix m(dim);
  for (int b = 0; b < dim; ++b) {
    const int n = space.occupation(b, mode);
    if (n >= 1) m(b - step, b) = std::sqrt(static_cast<double>(n));
  }
  return m;
}

/// Mode-expanded detection operator O = sum_j c_j a_j.
inline DenseMatrix build_detection_operator(const ModeSpace& space,
                                            const std::vector<Complex>& coefficients) {
  space.validate();
  if (static_cast<int>(coefficients.size()) != space.n_modes)
    throw std::invalid_argument("build_detection_operator: coefficient count must equal n_modes");
  const int dim = space.dimension();
  DenseMatrix op(dim);
  for (int j = 0; j < space.n_modes; ++j) {
    if (coefficients[j] == Complex{}) continue;
    const DenseMatrix a_j = annihilation_matrix(space, j);
    for (std::size_t k = 0; k < op.a.size(); ++k) op.a[k] += coefficients[j] * a_j.a[k];
  }
  return op;
}

/// Pure state as complex amplitudes over the occupation basis.
struct QuantumState {
  std::vector<Complex> amplitudes;

  double norm_sq() const {
    double s = 0.0;
    for (const Complex& a : amplitudes) s += std::norm(a);
    return s;
  }
};

/// Single excitation shared equally among all modes: (1/sqrt(M)) sum_j |0..1_j..0>.
inline QuantumState symmetric_single_photon(const ModeSpace& space) {
  space.validate();
  QuantumState psi;
  psi.amplitudes.assign(space.dimension(), Complex{});
  const double amp = 1.0 / std::sqrt(static_cast<double>(space.n_modes));
  for (int j = 0; j < space.n_modes; ++j) psi.amplitudes[space.stride(j)] = amp;
  return psi;
}

/// <psi| O^dag O |psi> for a normalized state. The imaginary residue of the
/// inner product is asserted below 1e-12 and truncated.
inline double expectation_normal_ordered(const QuantumState& state, const DenseMatrix& op) {
  if (std::abs(state.norm_sq() - 1.0) > 1e-12)
    throw std::invalid_argument("expectation_normal_ordered: state is not normalized");
  const std::vector<Complex> v = op.apply(state.amplitudes);
  Complex inner{};
  for (const Complex& c : v) inner += std::conj(c) * c;
  if (std::abs(inner.imag()) > 1e-12)
    throw std::logic_error("expectation_normal_ordered: imaginary residue above 1e-12");
  return inner.real() < 0.0 ? 0.0 : inner.real();
}

/// Per-mode detection coefficients c_j = u_e* . e_j + zeta (u_b* . b_j), built
/// from each emitter's individual far field at one direction. These tie the
/// mode operators to the classical amplitudes: O = sum_j c_j a_j.
inline std::vector<Complex> detection_coefficients(const FieldConfig& config,
                                                   const DetectorSpec& spec, DetectorFrame frame,
                                                   const Direction& d) {
  std::vector<Complex> c;
  c.reserve(config.emitters.size());
  for (const auto& e : config.emitters) {
    c.push_back(detection_amplitude(single_dipole_farfield(e, d), spec, frame, d));
  }
  return c;
}

}  // namespace ebdetect::fock
