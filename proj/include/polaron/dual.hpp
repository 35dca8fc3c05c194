#pragma once

#include <complex>

namespace polaron {

/// v + e * eps with eps^2 = 0. Used both for forward derivatives and for
/// quantities of the form x0 + g x1 (g^2 = 0).
struct Dual {
  std::complex<double> v{};
  std::complex<double> e{};

  Dual() = default;
  Dual(std::complex<double> value, std::complex<double> eps = {}) : v(value), e(eps) {}
  Dual(double value) : v(value) {}

  Dual& operator+=(const Dual& o) { v += o.v; e += o.e; return *this; }
  Dual& operator-=(const Dual& o) { v -= o.v; e -= o.e; return *this; }
  Dual& operator*=(const Dual& o) { e = e * o.v + v * o.e; v *= o.v; return *this; }
  Dual& operator/=(const Dual& o) {
    e = (e * o.v - v * o.e) / (o.v * o.v);
    v /= o.v;
    return *this;
  }
  Dual operator-() const { return {-v, -e}; }

  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend Dual operator/(Dual a, const Dual& b) { return a /= b; }
};

inline Dual sin(const Dual& x) { return {std::sin(x.v), std::cos(x.v) * x.e}; }
inline Dual cos(const Dual& x) { return {std::cos(x.v), -std::sin(x.v) * x.e}; }
inline std::complex<double> sin(std::complex<double> x) { return std::sin(x); }
inline std::complex<double> cos(std::complex<double> x) { return std::cos(x); }

inline std::complex<double> body(std::complex<double> x) { return x; }
inline std::complex<double> body(const Dual& x) { return x.v; }

}  // namespace polaron
