#pragma once

// Second-order forward-mode jets: a value together with its first and
// second derivatives along one variable. Used to get F''' and F'''' from
// a closed-form F'' without hand-differentiating rational functions.

#include <cmath>

namespace toric {

struct Jet2 {
  double v = 0.0;   // value
  double d1 = 0.0;  // first derivative
  double d2 = 0.0;  // second derivative

  constexpr Jet2() = default;
  constexpr Jet2(double value) : v(value) {}  // NOLINT: constants promote implicitly
  constexpr Jet2(double value, double first, double second) : v(value), d1(first), d2(second) {}

  static constexpr Jet2 variable(double x) { return {x, 1.0, 0.0}; }

  friend constexpr Jet2 operator+(Jet2 a, Jet2 b) { return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2}; }
  friend constexpr Jet2 operator-(Jet2 a, Jet2 b) { return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2}; }
  friend constexpr Jet2 operator-(Jet2 a) { return {-a.v, -a.d1, -a.d2}; }
  friend constexpr Jet2 operator*(Jet2 a, Jet2 b) {
    return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
  }
  friend constexpr Jet2 operator/(Jet2 a, Jet2 b) {
    const double q = a.v / b.v;
    const double q1 = (a.d1 - q * b.d1) / b.v;
    const double q2 = (a.d2 - 2.0 * q1 * b.d1 - q * b.d2) / b.v;
    return {q, q1, q2};
  }
  Jet2& operator+=(Jet2 o) { return *this = *this + o; }
  Jet2& operator-=(Jet2 o) { return *this = *this - o; }
  Jet2& operator*=(Jet2 o) { return *this = *this * o; }
};

inline double value_of(double x) { return x; }
inline double value_of(const Jet2& x) { return x.v; }

/// Integer power, valid for either scalar type.
template <class T>
T ipow(T x, int k) {
  T result(1.0);
  if (k < 0) return T(1.0) / ipow(x, -k);
  for (int i = 0; i < k; ++i) result = result * x;
  return result;
}

}  // namespace toric
