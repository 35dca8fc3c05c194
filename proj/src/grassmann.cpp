#include "polaron/grassmann.hpp"

#include <algorithm>
#include <cmath>

#include "polaron/error.hpp"

namespace polaron {

namespace {

constexpr std::array<std::string_view, kMonomials> kNames = {
    "1", "a+", "a-", "b+", "b-", "a+a-", "a+b-", "b+a-", "b+b-"};

std::array<std::array<ProductRule, kMonomials>, kMonomials> build_table() {
  std::array<std::array<ProductRule, kMonomials>, kMonomials> t{};
  for (int k = 0; k < kMonomials; ++k) {
    t[0][k] = {1, k};
    t[k][0] = {1, k};
  }
  const auto set = [&](Monomial a, Monomial b, int sign, Monomial target) {
    t[static_cast<int>(a)][static_cast<int>(b)] = {sign, static_cast<int>(target)};
  };
  using M = Monomial;
  set(M::Ap, M::Am, +1, M::ApAm);
  set(M::Am, M::Ap, -1, M::ApAm);
  set(M::Ap, M::Bm, +1, M::ApBm);
  set(M::Bm, M::Ap, -1, M::ApBm);
  set(M::Bp, M::Am, +1, M::BpAm);
  set(M::Am, M::Bp, -1, M::BpAm);
  set(M::Bp, M::Bm, +1, M::BpBm);
  set(M::Bm, M::Bp, -1, M::BpBm);
  // a+b+, a-b-, squares and anything of degree >= 3 stay zero.
  return t;
}

}  // namespace

std::string_view monomial_name(int m) { return kNames.at(m); }

int monomial_from_name(std::string_view name) {
  const auto it = std::find(kNames.begin(), kNames.end(), name);
  return it == kNames.end() ? -1 : static_cast<int>(it - kNames.begin());
}

const std::array<std::array<ProductRule, kMonomials>, kMonomials>& product_table() {
  static const auto table = build_table();
  return table;
}

Grassmann Grassmann::generator(Monomial m, cplx amplitude) {
  Grassmann x;
  x[m] = amplitude;
  return x;
}

Grassmann Grassmann::odd_part() const {
  Grassmann x;
  for (int k = 1; k <= 4; ++k) x.c_[k] = c_[k];
  return x;
}

Grassmann Grassmann::even_soul() const {
  Grassmann x;
  for (int k = 5; k < kMonomials; ++k) x.c_[k] = c_[k];
  return x;
}

bool Grassmann::is_even() const {
  return std::all_of(c_.begin() + 1, c_.begin() + 5, [](cplx v) { return v == cplx{}; });
}

Grassmann Grassmann::parity_flip() const {
  Grassmann x = *this;
  for (int k = 1; k <= 4; ++k) x.c_[k] = -x.c_[k];
  return x;
}

double Grassmann::norm() const {
  double n = 0.0;
  for (const auto& v : c_) n = std::max(n, std::abs(v));
  return n;
}

Grassmann& Grassmann::operator+=(const Grassmann& o) {
  for (int k = 0; k < kMonomials; ++k) c_[k] += o.c_[k];
  return *this;
}

Grassmann& Grassmann::operator-=(const Grassmann& o) {
  for (int k = 0; k < kMonomials; ++k) c_[k] -= o.c_[k];
  return *this;
}

Grassmann& Grassmann::operator*=(cplx s) {
  for (auto& v : c_) v *= s;
  return *this;
}

Grassmann Grassmann::operator-() const {
  Grassmann x = *this;
  x *= -1.0;
  return x;
}

Grassmann operator*(const Grassmann& x, const Grassmann& y) {
  const auto& table = product_table();
  Grassmann z;
  for (int i = 0; i < kMonomials; ++i) {
    if (x.c_[i] == cplx{}) continue;
    for (int j = 0; j < kMonomials; ++j) {
      const ProductRule r = table[i][j];
      if (r.sign == 0 || y.c_[j] == cplx{}) continue;
      z.c_[r.target] += static_cast<double>(r.sign) * x.c_[i] * y.c_[j];
    }
  }
  return z;
}

Grassmann gmul(const Grassmann& x, const Grassmann& y) { return x * y; }

Decomposition decompose(const Grassmann& x) {
  return {x.body(), x.odd_part(), x.even_soul()};
}

Grassmann ginv(const Grassmann& x) {
  if (!x.is_even()) throw Error(ErrorCode::NonInvertible, "element has an odd part");
  const cplx b = x.body();
  if (b == cplx{}) throw Error(ErrorCode::NonInvertible, "element has zero body");
  // (b + s)^-1 = b^-1 (1 - s/b) since s*s = 0 for an even soul.
  Grassmann r = x.even_soul() * (-1.0 / (b * b));
  r[0] = 1.0 / b;
  return r;
}

}  // namespace polaron
