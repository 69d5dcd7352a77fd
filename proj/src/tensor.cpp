#include "entsub/tensor.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "entsub/rng.hpp"

namespace entsub {

Tensor::Tensor(std::vector<int> s) : shape(std::move(s)) {
  Eigen::Index n = 1;
  for (int d : shape) {
    if (d <= 0) throw std::invalid_argument("tensor shape entries must be positive");
    n *= d;
  }
  data = Eigen::VectorXcd::Zero(n);
}

Eigen::Index Tensor::flat_index(const std::vector<int>& idx) const {
  Eigen::Index off = 0;
  for (std::size_t k = 0; k < shape.size(); ++k) off = off * shape[k] + idx[k];
  return off;
}

Tensor& Tensor::operator+=(const Tensor& o) {
  if (shape != o.shape) throw std::invalid_argument("shape mismatch");
  data += o.data;
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& o) {
  if (shape != o.shape) throw std::invalid_argument("shape mismatch");
  data -= o.data;
  return *this;
}

Tensor& Tensor::operator*=(cdouble c) {
  data *= c;
  return *this;
}

Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
Tensor operator*(cdouble c, Tensor t) { return t *= c; }

cdouble hdot(const Tensor& a, const Tensor& b) {
  if (a.shape != b.shape) throw std::invalid_argument("shape mismatch");
  return a.data.dot(b.data);
}

cdouble bdot(const Tensor& a, const Tensor& b) {
  if (a.shape != b.shape) throw std::invalid_argument("shape mismatch");
  return (a.data.transpose() * b.data)(0);
}

Eigen::VectorXcd unit_vec(int d, int i) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
  v[i] = 1.0;
  return v;
}

bool next_multi_index(std::vector<int>& idx, const std::vector<int>& shape) {
  for (int k = static_cast<int>(shape.size()) - 1; k >= 0; --k) {
    if (++idx[k] < shape[k]) return true;
    idx[k] = 0;
  }
  return false;
}

Tensor outer_product(const std::vector<Eigen::VectorXcd>& factors) {
  if (factors.empty()) throw std::invalid_argument("empty factor sequence");
  std::vector<int> shape;
  for (const auto& f : factors) {
    if (f.size() == 0 || f.norm() == 0.0) throw std::invalid_argument("zero factor");
    shape.push_back(static_cast<int>(f.size()));
  }
  Tensor t(shape);
  std::vector<int> idx(shape.size(), 0);
  Eigen::Index off = 0;
  do {
    cdouble v = 1.0;
    for (std::size_t k = 0; k < factors.size(); ++k) v *= factors[k][idx[k]];
    t.data[off++] = v;
  } while (next_multi_index(idx, shape));
  return t;
}

int permutation_sign(const std::vector<int>& perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inversions;
  return (inversions % 2 == 0) ? 1 : -1;
}

namespace {

Tensor permutation_sum(const std::vector<Eigen::VectorXcd>& factors, bool signed_sum) {
  if (factors.empty()) throw std::invalid_argument("empty factor sequence");
  const int d = static_cast<int>(factors[0].size());
  for (const auto& f : factors)
    if (f.size() != d) throw std::invalid_argument("mismatched factor dimensions");
  const int m = static_cast<int>(factors.size());
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  Tensor acc(std::vector<int>(m, d));
  do {
    std::vector<Eigen::VectorXcd> arranged(m);
    for (int k = 0; k < m; ++k) arranged[k] = factors[perm[k]];
    Tensor term = outer_product(arranged);
    if (signed_sum && permutation_sign(perm) < 0)
      acc -= term;
    else
      acc += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

}  // namespace

Tensor vee(const std::vector<Eigen::VectorXcd>& factors) {
  return permutation_sum(factors, false);
}

Tensor wedge(const std::vector<Eigen::VectorXcd>& factors) {
  return permutation_sum(factors, true);
}

Tensor permute_modes(const Tensor& t, const std::vector<int>& sigma) {
  const int m = t.order();
  if (static_cast<int>(sigma.size()) != m) throw std::invalid_argument("bad permutation");
  std::vector<int> out_shape(m);
  for (int k = 0; k < m; ++k) out_shape[k] = t.shape[sigma[k]];
  Tensor out(out_shape);
  std::vector<int> idx(m, 0), src(m, 0);
  Eigen::Index off = 0;
  do {
    for (int k = 0; k < m; ++k) src[k] = idx[sigma[k]];
    // reading index: component k of the source index is i_{sigma(k)}
    out.data[off++] = t.data[t.flat_index(src)];
  } while (next_multi_index(idx, out_shape));
  return out;
}

namespace {

bool check_symmetry(const Tensor& t, bool antisym, double tol) {
  const int m = t.order();
  for (int k = 1; k < m; ++k)
    if (t.shape[k] != t.shape[0]) return false;
  const double scale = t.norm();
  if (scale == 0.0) return true;
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    Tensor p = permute_modes(t, perm);
    if (antisym && permutation_sign(perm) < 0) p *= -1.0;
    if ((p - t).norm() > tol * scale) return false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return true;
}

}  // namespace

bool is_symmetric(const Tensor& t, double tol) { return check_symmetry(t, false, tol); }
bool is_antisymmetric(const Tensor& t, double tol) { return check_symmetry(t, true, tol); }

Eigen::MatrixXcd flatten(const Tensor& t, const std::vector<int>& row_modes) {
  const int m = t.order();
  std::vector<bool> in_rows(m, false);
  for (int s : row_modes) {
    if (s < 0 || s >= m || in_rows[s]) throw std::invalid_argument("bad row mode set");
    in_rows[s] = true;
  }
  const int nr = static_cast<int>(row_modes.size());
  if (nr < 1 || nr >= m) throw std::invalid_argument("row mode set must be proper and nonempty");

  std::vector<int> rows_sorted, cols_sorted;
  for (int k = 0; k < m; ++k) (in_rows[k] ? rows_sorted : cols_sorted).push_back(k);

  Eigen::Index nrows = 1, ncols = 1;
  for (int k : rows_sorted) nrows *= t.shape[k];
  for (int k : cols_sorted) ncols *= t.shape[k];

  Eigen::MatrixXcd out(nrows, ncols);
  std::vector<int> idx(m, 0);
  Eigen::Index off = 0;
  do {
    Eigen::Index r = 0, c = 0;
    for (int k : rows_sorted) r = r * t.shape[k] + idx[k];
    for (int k : cols_sorted) c = c * t.shape[k] + idx[k];
    out(r, c) = t.data[off++];
  } while (next_multi_index(idx, t.shape));
  return out;
}

int numerical_rank(const Eigen::MatrixXcd& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > tol * sv[0]) ++rank;
  return rank;
}

int flattening_rank(const Tensor& t, double tol) {
  if (t.norm() == 0.0) throw std::invalid_argument("zero tensor has no flattening rank");
  const int m = t.order();
  if (m == 1) return 1;
  int best = 0;
  // Subsets of {1..m-1}, each taken together with mode 0; the complementary
  // flattening is the transpose, so this covers every proper subset.
  const int n_rest = m - 1;
  for (int mask = 0; mask < (1 << n_rest); ++mask) {
    std::vector<int> rows = {0};
    for (int k = 0; k < n_rest; ++k)
      if (mask & (1 << k)) rows.push_back(k + 1);
    if (static_cast<int>(rows.size()) == m) continue;
    best = std::max(best, numerical_rank(flatten(t, rows), tol));
  }
  return best;
}

Tensor random_tensor(const std::vector<int>& shape, std::uint64_t seed) {
  Rng rng(seed);
  Tensor t(shape);
  for (Eigen::Index i = 0; i < t.data.size(); ++i) t.data[i] = rng.cnormal();
  return t;
}

Tensor random_product(const std::vector<int>& shape, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Eigen::VectorXcd> factors;
  for (int d : shape) {
    Eigen::VectorXcd f(d);
    for (int i = 0; i < d; ++i) f[i] = rng.cnormal();
    factors.push_back(f);
  }
  return outer_product(factors);
}

Tensor random_rank_r(const std::vector<int>& shape, int r, std::uint64_t seed) {
  if (r < 1) throw std::invalid_argument("rank must be at least 1");
  Rng rng(seed);
  Tensor acc(shape);
  for (int q = 0; q < r; ++q) {
    std::vector<Eigen::VectorXcd> factors;
    for (int d : shape) {
      Eigen::VectorXcd f(d);
      for (int i = 0; i < d; ++i) f[i] = rng.cnormal();
      factors.push_back(f);
    }
    acc += outer_product(factors);
  }
  return acc;
}

Tensor tensor_from_matrix(const Eigen::MatrixXcd& m) {
  Tensor t({static_cast<int>(m.rows()), static_cast<int>(m.cols())});
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      t.data[i * m.cols() + j] = m(i, j);
  return t;
}

Eigen::MatrixXcd matrix_from_tensor(const Tensor& t) {
  if (t.order() != 2) throw std::invalid_argument("not an order-2 tensor");
  return flatten(t, {0});
}

}  // namespace entsub
