#pragma once

#include <array>
#include <complex>
#include <string_view>

namespace polaron {

using cplx = std::complex<double>;

/// Basis monomials of the Grassmann algebra generated by the four odd
/// boundary parameters, modulo alpha_+ beta_+ = alpha_- beta_- = 0.
///
/// Generators are ordered alpha_+ < alpha_- < beta_+ < beta_-. The degree-2
/// slot `BpAm` holds the product beta_+ alpha_- in that order, so that
/// g = alpha_+ beta_- - beta_+ alpha_- has coefficients (+1, -1) on
/// (ApBm, BpAm). Every product of three generators vanishes.
enum class Monomial : int {
  One = 0,
  Ap = 1,
  Am = 2,
  Bp = 3,
  Bm = 4,
  ApAm = 5,
  ApBm = 6,
  BpAm = 7,
  BpBm = 8,
};

inline constexpr int kMonomials = 9;

constexpr int degree(int m) { return m == 0 ? 0 : (m <= 4 ? 1 : 2); }
constexpr int degree(Monomial m) { return degree(static_cast<int>(m)); }

std::string_view monomial_name(int m);
/// Returns -1 for unknown names.
int monomial_from_name(std::string_view name);

/// Entry of the multiplication table: e_i * e_j = sign * e_target, or zero.
struct ProductRule {
  int sign = 0;  // 0 means the product vanishes
  int target = 0;
};

/// Structure constants of the algebra; table[i][j] describes e_i * e_j.
const std::array<std::array<ProductRule, kMonomials>, kMonomials>& product_table();

class Grassmann {
 public:
  constexpr Grassmann() = default;
  constexpr Grassmann(cplx body) { c_[0] = body; }
  constexpr Grassmann(double body) { c_[0] = body; }

  static Grassmann generator(Monomial m, cplx amplitude = 1.0);

  cplx operator[](int m) const { return c_[m]; }
  cplx& operator[](int m) { return c_[m]; }
  cplx operator[](Monomial m) const { return c_[static_cast<int>(m)]; }
  cplx& operator[](Monomial m) { return c_[static_cast<int>(m)]; }

  cplx body() const { return c_[0]; }
  Grassmann odd_part() const;
  Grassmann even_soul() const;
  bool is_even() const;

  /// Negates the odd generators (alpha, beta -> -alpha, -beta).
  Grassmann parity_flip() const;

  /// Max over monomials of |coefficient|.
  double norm() const;

  Grassmann& operator+=(const Grassmann& o);
  Grassmann& operator-=(const Grassmann& o);
  Grassmann& operator*=(cplx s);
  Grassmann operator-() const;

  friend Grassmann operator+(Grassmann a, const Grassmann& b) { return a += b; }
  friend Grassmann operator-(Grassmann a, const Grassmann& b) { return a -= b; }
  friend Grassmann operator*(Grassmann a, cplx s) { return a *= s; }
  friend Grassmann operator*(cplx s, Grassmann a) { return a *= s; }
  friend Grassmann operator*(Grassmann a, double s) { return a *= s; }
  friend Grassmann operator*(double s, Grassmann a) { return a *= s; }
  friend Grassmann operator*(const Grassmann& x, const Grassmann& y);

  bool operator==(const Grassmann& o) const { return c_ == o.c_; }

 private:
  std::array<cplx, kMonomials> c_{};
};

struct Decomposition {
  cplx body;
  Grassmann odd;
  Grassmann soul2;
};

Grassmann gmul(const Grassmann& x, const Grassmann& y);
Decomposition decompose(const Grassmann& x);

/// Two-sided inverse of an even element with nonzero body.
/// Throws Error(NonInvertible) otherwise.
Grassmann ginv(const Grassmann& x);

}  // namespace polaron
