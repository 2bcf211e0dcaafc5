#pragma once

#include <cmath>
#include <complex>

namespace ebdetect {

using Complex = std::complex<double>;

/// Real 3-vector: positions, unit directions, spherical basis vectors.
struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator-(const Vec3& v) { return {-v.x, -v.y, -v.z}; }
  friend Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

/// Complex 3-vector: field amplitudes, dipole moments, sensitivity polarizations.
/// Real vectors embed implicitly so basis vectors can be used directly.
struct ComplexVec3 {
  Complex x{}, y{}, z{};

  ComplexVec3() = default;
  ComplexVec3(Complex cx, Complex cy, Complex cz) : x(cx), y(cy), z(cz) {}
  ComplexVec3(const Vec3& v) : x(v.x), y(v.y), z(v.z) {}

  friend ComplexVec3 operator+(const ComplexVec3& a, const ComplexVec3& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend ComplexVec3 operator-(const ComplexVec3& a, const ComplexVec3& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend ComplexVec3 operator-(const ComplexVec3& v) { return {-v.x, -v.y, -v.z}; }
  friend ComplexVec3 operator*(const Complex& s, const ComplexVec3& v) {
    return {s * v.x, s * v.y, s * v.z};
  }
  friend ComplexVec3 operator*(const ComplexVec3& v, const Complex& s) { return s * v; }
  friend bool operator==(const ComplexVec3&, const ComplexVec3&) = default;
};

/// conj(a) . b. hermitian_dot(a, a) is real and >= 0.
inline Complex hermitian_dot(const ComplexVec3& a, const ComplexVec3& b) {
  return std::conj(a.x) * b.x + std::conj(a.y) * b.y + std::conj(a.z) * b.z;
}

/// Componentwise a . b, no conjugation (radial projections r . p).
inline Complex dot(const ComplexVec3& a, const ComplexVec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

/// Componentwise cross product, no conjugation.
inline ComplexVec3 cross(const ComplexVec3& a, const ComplexVec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm_sq(const ComplexVec3& a) {
  return std::norm(a.x) + std::norm(a.y) + std::norm(a.z);
}

inline double norm(const ComplexVec3& a) { return std::sqrt(norm_sq(a)); }

}  // namespace ebdetect
