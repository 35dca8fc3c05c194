#include "polaron/graded_matrix.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "polaron/error.hpp"

namespace polaron {

// ---------------------------------------------------------------- GradedSpace

GradedSpace::GradedSpace(std::vector<Parities> factors) : factors_(std::move(factors)) {
  const int n = n_factors();
  stride_.assign(n, 1);
  for (int f = n - 2; f >= 0; --f) stride_[f] = stride_[f + 1] * factor_dim(f + 1);
  dim_ = n == 0 ? 1 : stride_[0] * factor_dim(0);
  parity_.assign(dim_, 0);
  for (int i = 0; i < dim_; ++i) {
    int p = 0;
    for (int f = 0; f < n; ++f) p += factors_[f][digit(i, f)];
    parity_[i] = static_cast<std::uint8_t>(p & 1);
  }
}

GradedSpace GradedSpace::uniform(int n_factors) {
  return GradedSpace(std::vector<Parities>(n_factors, Parities{0, 1}));
}

int GradedSpace::digit(int index, int f) const {
  return (index / stride_[f]) % factor_dim(f);
}

int GradedSpace::with_digit(int index, int f, int value) const {
  return index + (value - digit(index, f)) * stride_[f];
}

GradedSpace GradedSpace::concat(const GradedSpace& other) const {
  auto f = factors_;
  f.insert(f.end(), other.factors_.begin(), other.factors_.end());
  return GradedSpace(std::move(f));
}

GradedSpace GradedSpace::without(int f) const {
  auto rest = factors_;
  rest.erase(rest.begin() + f);
  return GradedSpace(std::move(rest));
}

// --------------------------------------------------------------- GradedMatrix

GradedMatrix::GradedMatrix(GradedSpace space) : space_(std::move(space)) {
  for (auto& c : comp_) c = Eigen::MatrixXcd::Zero(space_.dim(), space_.dim());
}

GradedMatrix GradedMatrix::identity(const GradedSpace& space) {
  GradedMatrix m(space);
  m.comp_[0].setIdentity();
  return m;
}

GradedMatrix GradedMatrix::from_body(const GradedSpace& space, const Eigen::MatrixXcd& body) {
  if (body.rows() != space.dim() || body.cols() != space.dim())
    throw Error(ErrorCode::DimMismatch, "body block does not match space dimension");
  GradedMatrix m(space);
  m.comp_[0] = body;
  return m;
}

Grassmann GradedMatrix::at(int row, int col) const {
  Grassmann x;
  for (int k = 0; k < kMonomials; ++k) x[k] = comp_[k](row, col);
  return x;
}

void GradedMatrix::set(int row, int col, const Grassmann& value) {
  for (int k = 0; k < kMonomials; ++k) comp_[k](row, col) = value[k];
}

void GradedMatrix::add_to(int row, int col, const Grassmann& value) {
  for (int k = 0; k < kMonomials; ++k) comp_[k](row, col) += value[k];
}

bool GradedMatrix::component_is_zero(int m) const { return comp_[m].isZero(0.0); }

bool GradedMatrix::is_body_only() const {
  for (int k = 1; k < kMonomials; ++k)
    if (!component_is_zero(k)) return false;
  return true;
}

double GradedMatrix::component_norm(int m) const {
  return comp_[m].size() == 0 ? 0.0 : comp_[m].cwiseAbs().maxCoeff();
}

double GradedMatrix::norm() const {
  double n = 0.0;
  for (int k = 0; k < kMonomials; ++k) n = std::max(n, component_norm(k));
  return n;
}

GradedMatrix GradedMatrix::parity_flip() const {
  GradedMatrix m = *this;
  for (int k = 1; k <= 4; ++k) m.comp_[k] = -m.comp_[k];
  return m;
}

GradedMatrix GradedMatrix::grade(int deg) const {
  GradedMatrix m(space_);
  for (int k = 0; k < kMonomials; ++k)
    if (degree(k) == deg) m.comp_[k] = comp_[k];
  return m;
}

GradedMatrix GradedMatrix::inverse() const {
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(comp_[0]);
  if (!lu.isInvertible()) throw Error(ErrorCode::SingularInverse, "body is singular");
  const GradedMatrix binv = from_body(space_, lu.inverse());
  GradedMatrix soul = *this;
  soul.comp_[0].setZero();
  const GradedMatrix first = binv * soul * binv;
  return binv - first + first * soul * binv;
}

GradedMatrix& GradedMatrix::operator+=(const GradedMatrix& o) {
  if (dim() != o.dim()) throw Error(ErrorCode::DimMismatch, "add");
  for (int k = 0; k < kMonomials; ++k) comp_[k] += o.comp_[k];
  return *this;
}

GradedMatrix& GradedMatrix::operator-=(const GradedMatrix& o) {
  if (dim() != o.dim()) throw Error(ErrorCode::DimMismatch, "subtract");
  for (int k = 0; k < kMonomials; ++k) comp_[k] -= o.comp_[k];
  return *this;
}

GradedMatrix& GradedMatrix::operator*=(cplx s) {
  for (auto& c : comp_) c *= s;
  return *this;
}

GradedMatrix operator*(const Grassmann& s, const GradedMatrix& a) {
  const auto& table = product_table();
  GradedMatrix r(a.space_);
  for (int i = 0; i < kMonomials; ++i) {
    if (s[i] == cplx{}) continue;
    for (int j = 0; j < kMonomials; ++j) {
      const ProductRule rule = table[i][j];
      if (rule.sign == 0 || a.component_is_zero(j)) continue;
      r.comp_[rule.target] += (static_cast<double>(rule.sign) * s[i]) * a.comp_[j];
    }
  }
  return r;
}

namespace {

template <class A, class B, class Product>
GradedMatrix graded_product(const GradedSpace& space, const A& a, const B& b,
                            const std::array<bool, kMonomials>& a_nz,
                            const std::array<bool, kMonomials>& b_nz, Product&& prod) {
  const auto& table = product_table();
  GradedMatrix r(space);
  for (int i = 0; i < kMonomials; ++i) {
    if (!a_nz[i]) continue;
    for (int j = 0; j < kMonomials; ++j) {
      const ProductRule rule = table[i][j];
      if (rule.sign == 0 || !b_nz[j]) continue;
      if (rule.sign > 0)
        r.component(rule.target) += prod(a, i, b, j);
      else
        r.component(rule.target) -= prod(a, i, b, j);
    }
  }
  return r;
}

std::array<bool, kMonomials> nonzero_mask(const GradedMatrix& m) {
  std::array<bool, kMonomials> nz{};
  for (int k = 0; k < kMonomials; ++k) nz[k] = !m.component_is_zero(k);
  return nz;
}

std::array<bool, kMonomials> nonzero_mask(const SparseGradedMatrix& m) {
  std::array<bool, kMonomials> nz{};
  for (int k = 0; k < kMonomials; ++k) nz[k] = m.component(k).nonZeros() > 0;
  return nz;
}

}  // namespace

GradedMatrix operator*(const GradedMatrix& a, const GradedMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimMismatch, "matmul");
  return graded_product(a.space_, a, b, nonzero_mask(a), nonzero_mask(b),
                        [](const GradedMatrix& x, int i, const GradedMatrix& y, int j) {
                          return Eigen::MatrixXcd(x.comp_[i] * y.comp_[j]);
                        });
}

GradedMatrix matmul(const GradedMatrix& a, const GradedMatrix& b) { return a * b; }

GradedMatrix commutator(const GradedMatrix& a, const GradedMatrix& b) { return a * b - b * a; }

// --------------------------------------------------------- SparseGradedMatrix

SparseGradedMatrix::SparseGradedMatrix(GradedSpace space, std::array<Sparse, kMonomials> comp)
    : space_(std::move(space)), comp_(std::move(comp)) {}

GradedMatrix SparseGradedMatrix::to_dense() const {
  GradedMatrix m(space_);
  for (int k = 0; k < kMonomials; ++k) m.component(k) = Eigen::MatrixXcd(comp_[k]);
  return m;
}

GradedMatrix operator*(const GradedMatrix& a, const SparseGradedMatrix& b) {
  if (a.dim() != b.space_.dim()) throw Error(ErrorCode::DimMismatch, "dense*sparse");
  return graded_product(a.space(), a, b, nonzero_mask(a), nonzero_mask(b),
                        [](const GradedMatrix& x, int i, const SparseGradedMatrix& y, int j) {
                          return Eigen::MatrixXcd(x.component(i) * y.comp_[j]);
                        });
}

GradedMatrix operator*(const SparseGradedMatrix& a, const GradedMatrix& b) {
  if (a.space_.dim() != b.dim()) throw Error(ErrorCode::DimMismatch, "sparse*dense");
  return graded_product(b.space(), a, b, nonzero_mask(a), nonzero_mask(b),
                        [](const SparseGradedMatrix& x, int i, const GradedMatrix& y, int j) {
                          return Eigen::MatrixXcd(x.comp_[i] * y.component(j));
                        });
}

// ------------------------------------------------------------- graded algebra

GradedMatrix super_tensor(const GradedMatrix& a, const GradedMatrix& b) {
  const GradedSpace& sa = a.space();
  const GradedSpace& sb = b.space();
  GradedMatrix r(sa.concat(sb));
  const int db = sb.dim();
  for (int i = 0; i < sa.dim(); ++i)
    for (int j = 0; j < sa.dim(); ++j) {
      const Grassmann aij = a.at(i, j);
      if (aij.norm() == 0.0) continue;
      const int pij = (sa.parity(i) + sa.parity(j)) & 1;
      for (int k = 0; k < db; ++k)
        for (int l = 0; l < db; ++l) {
          const Grassmann bkl = b.at(k, l);
          if (bkl.norm() == 0.0) continue;
          Grassmann v = aij * bkl;
          if (pij && sb.parity(k)) v *= -1.0;
          r.set(i * db + k, j * db + l, v);
        }
    }
  return r;
}

Grassmann supertrace(const GradedMatrix& a) {
  Grassmann s;
  for (int i = 0; i < a.dim(); ++i) {
    const Grassmann d = a.at(i, i);
    if (a.space().parity(i))
      s -= d;
    else
      s += d;
  }
  return s;
}

namespace {

void check_factor(const GradedSpace& space, int factor) {
  if (factor < 0 || factor >= space.n_factors())
    throw Error(ErrorCode::BadFactor, "factor " + std::to_string(factor) + " out of range [0, " +
                                          std::to_string(space.n_factors()) + ")");
}

// Total parity change (row vs column) of the factors before f.
int preceding_shift(const GradedSpace& s, int row, int col, int f) {
  int p = 0;
  for (int m = 0; m < f; ++m) p += s.factor_parity(row, m) + s.factor_parity(col, m);
  return p & 1;
}

}  // namespace

GradedMatrix partial_supertrace(const GradedMatrix& a, int factor) {
  const GradedSpace& s = a.space();
  check_factor(s, factor);
  const GradedSpace rest = s.without(factor);
  GradedMatrix r(rest);
  const int df = s.factor_dim(factor);
  // Map reduced indices back through a representative full index.
  std::vector<int> lift(rest.dim());
  for (int i = 0, j = 0; i < s.dim(); ++i)
    if (s.digit(i, factor) == 0) lift[j++] = i;
  for (int ri = 0; ri < rest.dim(); ++ri)
    for (int ci = 0; ci < rest.dim(); ++ci) {
      const int shift = preceding_shift(s, lift[ri], lift[ci], factor);
      for (int k = 0; k < df; ++k) {
        const int row = s.with_digit(lift[ri], factor, k);
        const int col = s.with_digit(lift[ci], factor, k);
        const int pk = s.factors()[factor][k];
        const bool negative = (pk + pk * shift) & 1;
        for (int m = 0; m < kMonomials; ++m) {
          const cplx v = a.component(m)(row, col);
          if (v == cplx{}) continue;
          r.component(m)(ri, ci) += negative ? -v : v;
        }
      }
    }
  return r;
}

GradedMatrix partial_supertranspose(const GradedMatrix& a, int factor, Transpose variant) {
  const GradedSpace& s = a.space();
  check_factor(s, factor);
  GradedMatrix r(s);
  for (int row = 0; row < s.dim(); ++row)
    for (int col = 0; col < s.dim(); ++col) {
      const int rf = s.digit(row, factor);
      const int cf = s.digit(col, factor);
      const int src_row = s.with_digit(row, factor, cf);
      const int src_col = s.with_digit(col, factor, rf);
      const int pr = s.factors()[factor][rf];
      const int pc = s.factors()[factor][cf];
      const int lead = variant == Transpose::St ? pr : pc;
      const bool negative = ((pr + pc) * (lead + preceding_shift(s, row, col, factor))) & 1;
      for (int m = 0; m < kMonomials; ++m) {
        const cplx v = a.component(m)(src_row, src_col);
        r.component(m)(row, col) = negative ? -v : v;
      }
    }
  return r;
}

GradedMatrix graded_permutation(const Parities& factor) {
  const GradedSpace s(std::vector<Parities>{factor, factor});
  GradedMatrix p(s);
  const int d = static_cast<int>(factor.size());
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y) {
      const double sign = (factor[x] & factor[y]) ? -1.0 : 1.0;
      p.component(0)(y * d + x, x * d + y) = sign;
    }
  return p;
}

SparseGradedMatrix embed(const GradedMatrix& local, std::span<const int> legs,
                         const GradedSpace& target) {
  const GradedSpace& ls = local.space();
  if (static_cast<int>(legs.size()) != ls.n_factors())
    throw Error(ErrorCode::BadFactor, "leg count does not match local operator");
  for (std::size_t a = 0; a < legs.size(); ++a) {
    check_factor(target, legs[a]);
    if (a > 0 && legs[a] <= legs[a - 1])
      throw Error(ErrorCode::BadFactor, "legs must be strictly ascending");
    if (target.factors()[legs[a]] != ls.factors()[a])
      throw Error(ErrorCode::DimMismatch, "leg grading differs from local factor");
  }

  const int n = target.n_factors();
  std::vector<bool> is_leg(n, false);
  for (int f : legs) is_leg[f] = true;

  std::array<std::vector<Eigen::Triplet<cplx>>, kMonomials> trips;
  std::vector<int> local_digits(legs.size());
  for (int row = 0; row < target.dim(); ++row) {
    // Parity of non-leg factors strictly after each position, read off the row.
    std::vector<int> tail(n + 1, 0);
    for (int f = n - 1; f >= 0; --f)
      tail[f] = tail[f + 1] + (is_leg[f] ? 0 : target.factor_parity(row, f));
    int lrow = 0;
    for (std::size_t a = 0; a < legs.size(); ++a)
      lrow = lrow * ls.factor_dim(static_cast<int>(a)) + target.digit(row, legs[a]);

    for (int lcol = 0; lcol < ls.dim(); ++lcol) {
      int col = row;
      int sign_exp = 0;
      for (std::size_t a = 0; a < legs.size(); ++a) {
        const int f = legs[a];
        const int cd = ls.digit(lcol, static_cast<int>(a));
        col = target.with_digit(col, f, cd);
        const int delta = target.factor_parity(row, f) + target.factors()[f][cd];
        sign_exp += delta * tail[f + 1];
      }
      const double sign = (sign_exp & 1) ? -1.0 : 1.0;
      for (int m = 0; m < kMonomials; ++m) {
        const cplx v = local.component(m)(lrow, lcol);
        if (v != cplx{}) trips[m].emplace_back(row, col, sign * v);
      }
    }
  }

  std::array<SparseGradedMatrix::Sparse, kMonomials> comp;
  for (int m = 0; m < kMonomials; ++m) {
    comp[m].resize(target.dim(), target.dim());
    comp[m].setFromTriplets(trips[m].begin(), trips[m].end());
  }
  return SparseGradedMatrix(target, std::move(comp));
}

}  // namespace polaron
