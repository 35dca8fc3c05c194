#include <algorithm>
#include <vector>

#include "doctest.h"
#include "polaron/error.hpp"
#include "polaron/grassmann.hpp"
#include "polaron/io.hpp"
#include "support.hpp"

using namespace polaron;
using polaron::testing::max_diff;

namespace {

Grassmann gen(Monomial m) { return Grassmann::generator(m); }

// Independent reference: monomials as ordered generator lists, multiplied by
// concatenation and sorted back with the permutation sign.
std::vector<int> word(int m) {
  switch (m) {
    case 0: return {};
    case 1: return {1};
    case 2: return {2};
    case 3: return {3};
    case 4: return {4};
    case 5: return {1, 2};
    case 6: return {1, 4};
    case 7: return {3, 2};
    case 8: return {3, 4};
  }
  return {};
}

ProductRule reference_product(int i, int j) {
  std::vector<int> w = word(i);
  const std::vector<int> b = word(j);
  w.insert(w.end(), b.begin(), b.end());
  std::vector<int> sorted = w;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return {};
  if (w.size() > 2) return {};
  const auto has = [&](int g) { return std::find(w.begin(), w.end(), g) != w.end(); };
  if ((has(1) && has(3)) || (has(2) && has(4))) return {};
  for (int t = 0; t < kMonomials; ++t) {
    std::vector<int> target = word(t);
    std::vector<int> ts = target;
    std::sort(ts.begin(), ts.end());
    if (ts != sorted) continue;
    int sign = 1;
    std::vector<int> cur = w;
    for (std::size_t a = 0; a < cur.size(); ++a)
      for (std::size_t c = 0; c + 1 < cur.size(); ++c)
        if (std::find(target.begin(), target.end(), cur[c]) -
                std::find(target.begin(), target.end(), cur[c + 1]) > 0) {
          std::swap(cur[c], cur[c + 1]);
          sign = -sign;
        }
    return {sign, t};
  }
  return {};
}

Grassmann basis(int m) {
  Grassmann x;
  x[m] = 1.0;
  return x;
}

}  // namespace

TEST_SUITE("grassmann") {

TEST_CASE("forbidden pairs and anticommutation") {
  CHECK(gmul(gen(Monomial::Ap), gen(Monomial::Bp)).norm() == 0.0);
  CHECK(gmul(gen(Monomial::Am), gen(Monomial::Bm)).norm() == 0.0);
  const Grassmann amap = gmul(gen(Monomial::Am), gen(Monomial::Ap));
  CHECK(amap[Monomial::ApAm] == cplx(-1.0));
  CHECK(max_diff(amap, -gmul(gen(Monomial::Ap), gen(Monomial::Am))) == 0.0);
  for (int k = 1; k <= 4; ++k) CHECK(gmul(basis(k), basis(k)).norm() == 0.0);
}

TEST_CASE("g squares to zero and has the expected slots") {
  ModelParams p;
  p.a_plus = p.a_minus = p.b_plus = p.b_minus = 1.0;
  const Grassmann g = p.g();
  CHECK(g[Monomial::ApBm] == cplx(1.0));
  CHECK(g[Monomial::BpAm] == cplx(-1.0));
  const Grassmann direct =
      gen(Monomial::Ap) * gen(Monomial::Bm) - gen(Monomial::Bp) * gen(Monomial::Am);
  CHECK(max_diff(g, direct) == 0.0);
  CHECK((g * g).norm() == 0.0);
}

TEST_CASE("product table agrees with an independent exterior algebra") {
  const auto& table = product_table();
  for (int i = 0; i < kMonomials; ++i)
    for (int j = 0; j < kMonomials; ++j) {
      CAPTURE(i);
      CAPTURE(j);
      const ProductRule ref = reference_product(i, j);
      CHECK(table[i][j].sign == ref.sign);
      if (ref.sign != 0) CHECK(table[i][j].target == ref.target);
    }
}

TEST_CASE("associativity over all basis triples") {
  for (int i = 0; i < kMonomials; ++i)
    for (int j = 0; j < kMonomials; ++j)
      for (int k = 0; k < kMonomials; ++k)
        CHECK(max_diff((basis(i) * basis(j)) * basis(k), basis(i) * (basis(j) * basis(k))) == 0.0);
}

TEST_CASE("graded commutativity over all basis pairs") {
  for (int i = 0; i < kMonomials; ++i)
    for (int j = 0; j < kMonomials; ++j) {
      const double s = (degree(i) % 2 == 1 && degree(j) % 2 == 1) ? -1.0 : 1.0;
      CHECK(max_diff(basis(i) * basis(j), s * (basis(j) * basis(i))) == 0.0);
    }
}

TEST_CASE("random elements: distributivity and nilpotent souls") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    const Grassmann x = polaron::testing::random_grassmann(rng);
    const Grassmann y = polaron::testing::random_grassmann(rng);
    const Grassmann z = polaron::testing::random_grassmann(rng);
    CHECK(max_diff(x * (y + z), x * y + x * z) < 1e-14);
    CHECK(max_diff((x * y) * z, x * (y * z)) < 1e-14);
    Grassmann soul = x;
    soul[0] = 0.0;
    CHECK((soul * soul * soul).norm() < 1e-15);
  }
}

TEST_CASE("decompose") {
  const Decomposition a = decompose(Grassmann(3.0) + 2.0 * gen(Monomial::Ap));
  CHECK(a.body == cplx(3.0));
  CHECK(max_diff(a.odd, 2.0 * gen(Monomial::Ap)) == 0.0);
  CHECK(a.soul2.norm() == 0.0);

  const Grassmann ab = gen(Monomial::Ap) * gen(Monomial::Bm);
  const Decomposition b = decompose(ab);
  CHECK(b.body == cplx(0.0));
  CHECK(b.odd.norm() == 0.0);
  CHECK(max_diff(b.soul2, ab) == 0.0);

  const Decomposition c = decompose(Grassmann{});
  CHECK(c.body == cplx(0.0));
  CHECK(c.odd.norm() == 0.0);
  CHECK(c.soul2.norm() == 0.0);

  std::mt19937_64 rng(3);
  const Grassmann x = polaron::testing::random_grassmann(rng);
  const Decomposition d = decompose(x);
  CHECK(max_diff(Grassmann(d.body) + d.odd + d.soul2, x) == 0.0);
}

TEST_CASE("ginv") {
  CHECK(max_diff(ginv(Grassmann(2.0)), Grassmann(0.5)) == 0.0);
  const Grassmann aa = gen(Monomial::Ap) * gen(Monomial::Am);
  CHECK(max_diff(ginv(1.0 + aa), 1.0 - aa) < 1e-15);
  const Grassmann x = 0.7 + 0.2 * (gen(Monomial::Ap) * gen(Monomial::Bm));
  CHECK(max_diff(ginv(x) * x, Grassmann(1.0)) < 1e-15);

  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    Grassmann y = polaron::testing::random_grassmann(rng, true);
    y[0] += 2.0;
    CHECK(max_diff(ginv(y) * y, Grassmann(1.0)) < 1e-14);
    CHECK(max_diff(y * ginv(y), Grassmann(1.0)) < 1e-14);
  }
}

TEST_CASE("ginv rejects zero body and odd elements") {
  const auto code_of = [](const Grassmann& x) {
    try {
      ginv(x);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ConfigError;
  };
  CHECK(code_of(gen(Monomial::Ap) * gen(Monomial::Am)) == ErrorCode::NonInvertible);
  CHECK(code_of(Grassmann{}) == ErrorCode::NonInvertible);
  CHECK(code_of(1.0 + gen(Monomial::Bp)) == ErrorCode::NonInvertible);
}

TEST_CASE("parity flip is an algebra automorphism") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const Grassmann x = polaron::testing::random_grassmann(rng);
    const Grassmann y = polaron::testing::random_grassmann(rng);
    CHECK(max_diff((x * y).parity_flip(), x.parity_flip() * y.parity_flip()) < 1e-15);
    CHECK(max_diff(x.parity_flip().parity_flip(), x) == 0.0);
  }
}

TEST_CASE("json round trip") {
  std::mt19937_64 rng(13);
  const Grassmann x = polaron::testing::random_grassmann(rng);
  CHECK(max_diff(grassmann_from_json(grassmann_to_json(x)), x) == 0.0);
  const json j = grassmann_to_json(2.0 * gen(Monomial::Bm));
  CHECK(j.size() == 1);
  CHECK(j.contains("b-"));
  CHECK_THROWS_AS(grassmann_from_json(json{{"c+", 1.0}}), Error);
  for (int m = 0; m < kMonomials; ++m) CHECK(monomial_from_name(monomial_name(m)) == m);
  CHECK(monomial_from_name("x") == -1);
}

}  // TEST_SUITE
