#include "doctest.h"
#include "entsub/rng.hpp"
#include "entsub/tensor.hpp"

#include <algorithm>
#include <numeric>

using namespace entsub;

namespace {

Tensor w_state() {
  Tensor t({2, 2, 2});
  t.at({1, 0, 0}) = 1.0;
  t.at({0, 1, 0}) = 1.0;
  t.at({0, 0, 1}) = 1.0;
  return t;
}

Tensor ghz(int r, int m) {
  Tensor t(std::vector<int>(m, r));
  for (int a = 0; a < r; ++a) t.data[t.flat_index(std::vector<int>(m, a))] = 1.0;
  return t;
}

}  // namespace

TEST_CASE("outer product basics") {
  auto t = outer_product({unit_vec(2, 0), unit_vec(2, 0), unit_vec(2, 0)});
  CHECK(t.shape == std::vector<int>{2, 2, 2});
  CHECK(t.at({0, 0, 0}) == cdouble(1.0));
  CHECK(t.norm() == doctest::Approx(1.0));

  Eigen::VectorXcd x(2), y(2);
  x << 1.0, 2.0;
  y << 3.0, 4.0;
  auto u = outer_product({x, y});
  // entries in index order (1,1),(1,2),(2,1),(2,2)
  CHECK(u.data[0] == cdouble(3.0));
  CHECK(u.data[1] == cdouble(4.0));
  CHECK(u.data[2] == cdouble(6.0));
  CHECK(u.data[3] == cdouble(8.0));

  Eigen::VectorXcd s(2);
  s << 1.0, 1.0;
  auto v = outer_product({s, unit_vec(2, 0)});
  Eigen::MatrixXcd f = flatten(v, {0});
  CHECK(f(0, 0) == cdouble(1.0));
  CHECK(f(0, 1) == cdouble(0.0));
  CHECK(f(1, 0) == cdouble(1.0));
  CHECK(f(1, 1) == cdouble(0.0));

  CHECK_THROWS(outer_product({}));
  CHECK_THROWS(outer_product({Eigen::VectorXcd::Zero(2)}));
}

TEST_CASE("vee and wedge permutation sums") {
  auto v = vee({unit_vec(2, 0), unit_vec(2, 1)});
  CHECK(v.at({0, 1}) == cdouble(1.0));
  CHECK(v.at({1, 0}) == cdouble(1.0));
  CHECK(v.at({0, 0}) == cdouble(0.0));

  auto w = wedge({unit_vec(2, 0), unit_vec(2, 1)});
  CHECK(w.at({0, 1}) == cdouble(1.0));
  CHECK(w.at({1, 0}) == cdouble(-1.0));

  auto z = wedge({unit_vec(2, 0), unit_vec(2, 0)});
  CHECK(z.norm() == 0.0);  // dependent factors wedge to zero

  CHECK_THROWS(vee({unit_vec(2, 0), unit_vec(3, 0)}));
}

TEST_CASE("flatten layouts and ranks") {
  auto t = ghz(2, 3);
  Eigen::MatrixXcd f = flatten(t, {0});
  CHECK(f.rows() == 2);
  CHECK(f.cols() == 4);
  CHECK(numerical_rank(f) == 2);

  // lambda-diagonal element of C^3 x C^3 x C^2: the mode-1 flattening has a
  // 3x3 identity on the third-mode-zero columns and zeros elsewhere
  Tensor lam({3, 3, 2});
  for (int i = 0; i < 3; ++i) lam.at({i, i, 0}) = 1.0;
  Eigen::MatrixXcd g = flatten(lam, {0});
  CHECK(g.rows() == 3);
  CHECK(g.cols() == 6);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 2; ++k)
        CHECK(g(i, 2 * j + k) == cdouble(i == j && k == 0 ? 1.0 : 0.0));
  CHECK(numerical_rank(g) == 3);

  CHECK_THROWS(flatten(t, {}));
  CHECK_THROWS(flatten(t, {0, 1, 2}));
}

TEST_CASE("flattening rank examples") {
  CHECK(flattening_rank(w_state()) == 2);
  CHECK(flattening_rank(ghz(3, 3)) == 3);
  CHECK(flattening_rank(outer_product({unit_vec(3, 1), unit_vec(2, 0), unit_vec(2, 1)})) == 1);
  CHECK_THROWS(flattening_rank(Tensor({2, 2})));
}

TEST_CASE("numerical rank") {
  CHECK(numerical_rank(Eigen::MatrixXcd::Identity(3, 3)) == 3);
  CHECK(numerical_rank(Eigen::MatrixXcd::Zero(4, 2)) == 0);
  Eigen::VectorXcd a(3), b(4);
  a << 1.0, cdouble(0, 2), -1.0;
  b << 2.0, 1.0, 0.5, cdouble(1, 1);
  Eigen::MatrixXcd r1 = a * b.transpose();
  CHECK(numerical_rank(r1) == 1);
}

TEST_CASE("random tensors are seeded and generic") {
  auto t1 = random_tensor({3, 2}, 42);
  auto t2 = random_tensor({3, 2}, 42);
  CHECK(t1.data == t2.data);  // bitwise determinism
  auto t3 = random_tensor({3, 2}, 43);
  CHECK(t1.data != t3.data);

  for (std::uint64_t s = 0; s < 20; ++s)
    CHECK(flattening_rank(random_product({2, 3, 2}, s)) == 1);

  for (std::uint64_t s = 0; s < 100; ++s) {
    auto t = random_rank_r({3, 3}, 2, s);
    CHECK(numerical_rank(flatten(t, {0})) == 2);
  }
}

TEST_CASE("flattening rank is complement-invariant") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    auto t = random_tensor({2, 3, 2, 2}, derive_seed(101, s));
    const int m = t.order();
    for (int mask = 1; mask < (1 << m) - 1; ++mask) {
      std::vector<int> rows, cols;
      for (int k = 0; k < m; ++k)
        (mask & (1 << k) ? rows : cols).push_back(k);
      if (rows.empty() || cols.empty()) continue;
      CHECK(numerical_rank(flatten(t, rows)) == numerical_rank(flatten(t, cols)));
    }
  }
}

TEST_CASE("wedge and vee satisfy their symmetry tags") {
  Rng rng(7);
  for (int rep = 0; rep < 5; ++rep) {
    std::vector<Eigen::VectorXcd> fs;
    for (int k = 0; k < 3; ++k) {
      Eigen::VectorXcd f(4);
      for (int i = 0; i < 4; ++i) f[i] = rng.cnormal();
      fs.push_back(f);
    }
    CHECK(is_symmetric(vee(fs), 1e-12));
    CHECK(is_antisymmetric(wedge(fs), 1e-12));
    CHECK_FALSE(is_symmetric(wedge(fs), 1e-12));
  }
}

TEST_CASE("numerical rank is scale invariant") {
  auto t = random_rank_r({4, 4}, 2, 5);
  Eigen::MatrixXcd m = flatten(t, {0});
  for (cdouble c : {cdouble(1e-8), cdouble(3.7), cdouble(1e8), cdouble(0, 2)})
    CHECK(numerical_rank(c * m) == numerical_rank(m));
}

TEST_CASE("mode permutations compose") {
  auto t = random_tensor({2, 2, 2, 2}, 11);
  std::vector<int> sigma = {2, 0, 3, 1};
  std::vector<int> tau = {1, 3, 0, 2};
  Tensor two_step = permute_modes(permute_modes(t, sigma), tau);
  std::vector<int> composed(4);
  for (int k = 0; k < 4; ++k) composed[k] = tau[sigma[k]];
  Tensor one_step = permute_modes(t, composed);
  CHECK((two_step - one_step).norm() <= 1e-12 * t.norm());

  // a symmetric tensor is fixed by every mode permutation
  auto s = vee({unit_vec(3, 0), unit_vec(3, 1), unit_vec(3, 2)});
  CHECK((permute_modes(s, {1, 2, 0}) - s).norm() == 0.0);
}

TEST_CASE("inner products") {
  auto a = random_tensor({2, 3}, 1);
  auto b = random_tensor({2, 3}, 2);
  CHECK(std::abs(hdot(a, a) - cdouble(a.norm() * a.norm())) < 1e-12);
  // bilinear pairing has no conjugation: pairing a with itself gives sum of squares
  cdouble sq = 0.0;
  for (Eigen::Index i = 0; i < a.data.size(); ++i) sq += a.data[i] * a.data[i];
  CHECK(std::abs(bdot(a, a) - sq) < 1e-12);
  CHECK(std::abs(hdot(a, b) - std::conj(hdot(b, a))) < 1e-12);
}
