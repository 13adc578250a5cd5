#pragma once

#include <array>
#include <cmath>

namespace chiral_casimir {

using Vec3 = std::array<double, 3>;

constexpr Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
constexpr Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
constexpr Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
constexpr double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::hypot(a[0], a[1], a[2]); }

/// Levi-Civita symbol for indices in {0,1,2}.
constexpr int levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) {
    return 0;
  }
  return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

}  // namespace chiral_casimir
