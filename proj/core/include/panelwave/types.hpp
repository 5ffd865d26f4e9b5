#pragma once

#include <cmath>
#include <complex>

namespace panelwave {

using cplx = std::complex<double>;

inline constexpr cplx iu{0.0, 1.0};
inline constexpr double pi = 3.14159265358979323846;

// Wrap an angle into (-pi, pi].
inline double wrap_angle(double x) {
  double y = std::remainder(x, 2.0 * pi);
  if (y <= -pi) y += 2.0 * pi;
  return y;
}

struct Vec2c {
  cplx v0{}, v1{};

  Vec2c operator+(const Vec2c& o) const { return {v0 + o.v0, v1 + o.v1}; }
  Vec2c operator-(const Vec2c& o) const { return {v0 - o.v0, v1 - o.v1}; }
  Vec2c operator*(cplx s) const { return {v0 * s, v1 * s}; }
  double norm_inf() const { return std::max(std::abs(v0), std::abs(v1)); }
};

inline Vec2c operator*(cplx s, const Vec2c& v) { return v * s; }

struct Mat2c {
  cplx a00{}, a01{}, a10{}, a11{};

  static Mat2c identity() { return {1.0, 0.0, 0.0, 1.0}; }

  cplx det() const { return a00 * a11 - a01 * a10; }

  Mat2c operator+(const Mat2c& o) const {
    return {a00 + o.a00, a01 + o.a01, a10 + o.a10, a11 + o.a11};
  }
  Mat2c operator-(const Mat2c& o) const {
    return {a00 - o.a00, a01 - o.a01, a10 - o.a10, a11 - o.a11};
  }
  Mat2c operator*(const Mat2c& o) const {
    return {a00 * o.a00 + a01 * o.a10, a00 * o.a01 + a01 * o.a11,
            a10 * o.a00 + a11 * o.a10, a10 * o.a01 + a11 * o.a11};
  }
  Vec2c operator*(const Vec2c& v) const {
    return {a00 * v.v0 + a01 * v.v1, a10 * v.v0 + a11 * v.v1};
  }
  Mat2c operator*(cplx s) const { return {a00 * s, a01 * s, a10 * s, a11 * s}; }

  Mat2c inverse() const {
    cplx d = det();
    return Mat2c{a11, -a01, -a10, a00} * (1.0 / d);
  }

  double norm_inf() const {
    return std::max(std::max(std::abs(a00), std::abs(a01)),
                    std::max(std::abs(a10), std::abs(a11)));
  }
};

inline Mat2c operator*(cplx s, const Mat2c& m) { return m * s; }

// A point on the two-sheeted surface: plane coordinate plus sheet index (1 or 2).
struct SheetPoint {
  cplx s;
  int sheet = 1;
};

}  // namespace panelwave
