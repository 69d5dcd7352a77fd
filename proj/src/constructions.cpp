#include "entsub/constructions.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

#include "entsub/dims.hpp"

namespace entsub {

namespace {

using BigInt = boost::multiprecision::cpp_int;

// Gaussian integer, for exact minor evaluation on integer matrices.
struct GInt {
  BigInt re, im;

  bool is_zero() const { return re == 0 && im == 0; }
};

GInt gmul(const GInt& a, const GInt& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

GInt gsub(const GInt& a, const GInt& b) { return {a.re - b.re, a.im - b.im}; }

// Exact division, valid only when b divides a (guaranteed inside Bareiss
// elimination).
GInt gdiv(const GInt& a, const GInt& b) {
  BigInt den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

// Fraction-free (Bareiss) elimination; returns true iff the determinant is
// nonzero.  Works entry-exactly over the Gaussian integers.
bool gaussian_int_nonsingular(std::vector<std::vector<GInt>> m) {
  const int n = static_cast<int>(m.size());
  GInt prev{1, 0};
  for (int k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      int pivot = -1;
      for (int i = k + 1; i < n; ++i)
        if (!m[i][k].is_zero()) {
          pivot = i;
          break;
        }
      if (pivot < 0) return false;
      std::swap(m[k], m[pivot]);
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j)
        m[i][j] = gdiv(gsub(gmul(m[k][k], m[i][j]), gmul(m[i][k], m[k][j])), prev);
      m[i][k] = GInt{0, 0};
    }
    prev = m[k][k];
  }
  return !m[n - 1][n - 1].is_zero();
}

bool entry_is_integral(cdouble z) {
  return z.real() == std::nearbyint(z.real()) && z.imag() == std::nearbyint(z.imag()) &&
         std::abs(z.real()) < 9.0e15 && std::abs(z.imag()) < 9.0e15;
}

GInt to_gint(cdouble z) {
  return {BigInt(static_cast<long long>(std::llround(z.real()))),
          BigInt(static_cast<long long>(std::llround(z.imag())))};
}

// All 2x2 minors of the 4x2 matrix [a b] are nonzero.
bool pair_generic(const Eigen::Vector4cd& a, const Eigen::Vector4cd& b, double tol) {
  double scale = std::max({a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff(), 1e-300});
  for (int j = 0; j < 4; ++j)
    for (int k = j + 1; k < 4; ++k)
      if (std::abs(a(j) * b(k) - a(k) * b(j)) <= tol * scale * scale) return false;
  return true;
}

// Resolves the totally non-singular matrix used for superdiagonal index
// `position` (0-based within the list of used superdiagonals).
Eigen::MatrixXcd resolve_tns(const std::vector<TNSMatrix>& tns_per_i, int position,
                             int wanted_size) {
  if (tns_per_i.empty()) return vandermonde_integer_nodes(wanted_size).entries;
  const TNSMatrix& t = tns_per_i.at(position);
  if (t.entries.rows() != wanted_size || t.entries.cols() != wanted_size)
    throw std::invalid_argument("totally non-singular matrix has the wrong size");
  if (t.nodes.empty()) {
    if (!is_totally_nonsingular(t.entries))
      throw std::invalid_argument("supplied matrix is not totally non-singular");
  } else {
    // Vandermonde-sourced: node validity implies total non-singularity, but
    // the entries must actually match the nodes.
    Eigen::MatrixXcd rebuilt = vandermonde(t.nodes).entries;
    if ((rebuilt - t.entries).norm() > 1e-9 * rebuilt.norm())
      throw std::invalid_argument("entries do not match the declared Vandermonde nodes");
  }
  return t.entries;
}

bool next_nondecreasing(std::vector<int>& a, int d) {
  for (int p = static_cast<int>(a.size()) - 1; p >= 0; --p) {
    if (a[p] < d - 1) {
      int v = a[p] + 1;
      for (std::size_t q = p; q < a.size(); ++q) a[q] = v;
      return true;
    }
  }
  return false;
}

// Reduced row echelon form with relative pivot threshold; rows are assumed to
// have comparable scale (they come from an orthonormal nullspace basis).
Eigen::MatrixXcd rref_rows(Eigen::MatrixXcd rows, double tol = 1e-10) {
  const Eigen::Index nr = rows.rows(), nc = rows.cols();
  if (nr == 0) return rows;
  double scale = std::max(rows.cwiseAbs().maxCoeff(), 1e-300);
  Eigen::Index lead = 0;
  for (Eigen::Index r = 0; r < nr && lead < nc; ++lead) {
    Eigen::Index pivot = r;
    for (Eigen::Index i = r + 1; i < nr; ++i)
      if (std::abs(rows(i, lead)) > std::abs(rows(pivot, lead))) pivot = i;
    if (std::abs(rows(pivot, lead)) <= tol * scale) continue;
    rows.row(r).swap(rows.row(pivot));
    rows.row(r) /= rows(r, lead);
    for (Eigen::Index i = 0; i < nr; ++i)
      if (i != r) rows.row(i) -= rows(i, lead) * rows.row(r);
    ++r;
  }
  for (Eigen::Index i = 0; i < nr; ++i)
    for (Eigen::Index j = 0; j < nc; ++j)
      if (std::abs(rows(i, j)) < 1e-12) rows(i, j) = cdouble(0.0, 0.0);
  return rows;
}

}  // namespace

TNSMatrix vandermonde(const std::vector<cdouble>& nodes) {
  const int n = static_cast<int>(nodes.size());
  if (n == 0) throw std::invalid_argument("vandermonde needs at least one node");
  double scale = 1e-300;
  for (auto z : nodes) scale = std::max(scale, std::abs(z));
  for (int i = 0; i < n; ++i) {
    if (std::abs(nodes[i]) <= 1e-12 * scale)
      throw std::invalid_argument("vandermonde nodes must be nonzero");
    for (int j = i + 1; j < n; ++j)
      if (std::abs(nodes[i] - nodes[j]) <= 1e-12 * scale)
        throw std::invalid_argument("vandermonde nodes must be pairwise distinct");
  }
  TNSMatrix out;
  out.nodes = nodes;
  out.entries.resize(n, n);
  for (int i = 0; i < n; ++i) {
    cdouble p(1.0, 0.0);
    for (int j = 0; j < n; ++j) {
      out.entries(i, j) = p;
      p *= nodes[i];
    }
  }
  return out;
}

TNSMatrix vandermonde_integer_nodes(int n) {
  std::vector<cdouble> nodes(n);
  for (int i = 0; i < n; ++i) nodes[i] = cdouble(i + 1, 0.0);
  return vandermonde(nodes);
}

bool is_totally_nonsingular(const Eigen::MatrixXcd& a, double tol) {
  if (a.rows() != a.cols()) throw std::invalid_argument("expected a square matrix");
  const int n = static_cast<int>(a.rows());
  if (n == 0) return true;

  bool integral = true;
  for (int i = 0; i < n && integral; ++i)
    for (int j = 0; j < n; ++j)
      if (!entry_is_integral(a(i, j))) {
        integral = false;
        break;
      }

  for (int k = 1; k <= n; ++k) {
    auto row_sets = increasing_tuples(n, k);
    for (const auto& rows : row_sets) {
      for (const auto& cols : row_sets) {
        if (integral) {
          std::vector<std::vector<GInt>> sub(k, std::vector<GInt>(k));
          for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) sub[i][j] = to_gint(a(rows[i], cols[j]));
          if (!gaussian_int_nonsingular(std::move(sub))) return false;
        } else {
          Eigen::MatrixXcd sub(k, k);
          for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) sub(i, j) = a(rows[i], cols[j]);
          double scale = 1.0;
          for (int j = 0; j < k; ++j) scale *= std::max(sub.col(j).norm(), 1e-300);
          if (std::abs(sub.determinant()) <= tol * scale) return false;
        }
      }
    }
  }
  return true;
}

Eigen::MatrixXcd superdiag_matrix(int d, int i, const Eigen::VectorXcd& column) {
  if (d < 1 || i < 0 || i > d - 1) throw std::invalid_argument("superdiagonal index out of range");
  if (column.size() != d - i)
    throw std::invalid_argument("superdiagonal column must have length d - i");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (int k = 0; k + i < d; ++k) m(k, k + i) = column(k);
  return m;
}

Subspace symmetric_bipartite_basis(int d, int r, const std::vector<TNSMatrix>& tns_per_i) {
  if (d < 1 || r < 0 || r >= d)
    throw std::invalid_argument("symmetric bipartite construction needs 0 <= r < d");
  const int diags = d - r;  // i = 0 .. d-r-1
  if (!tns_per_i.empty() && static_cast<int>(tns_per_i.size()) != diags)
    throw std::invalid_argument("need one totally non-singular matrix per superdiagonal");
  Subspace sub;
  sub.ambient_shape = {d, d};
  sub.symmetry = Symmetry::symmetric;
  for (int i = 0; i < diags; ++i) {
    Eigen::MatrixXcd tns = resolve_tns(tns_per_i, i, d - i);
    for (int j = 1; j <= d - r - i; ++j) {
      Eigen::MatrixXcd m = superdiag_matrix(d, i, tns.col(j - 1));
      Eigen::MatrixXcd s = m + m.transpose();
      sub.basis.push_back(tensor_from_matrix(s));
    }
  }
  if (!sub.validate()) throw std::logic_error("constructed basis is not independent");
  return sub;
}

Subspace antisymmetric_bipartite_basis(int d, int r, const std::vector<TNSMatrix>& tns_per_i) {
  if (d < 1 || r < 0 || 2 * r >= d)
    throw std::invalid_argument("antisymmetric bipartite construction needs 2r < d");
  const int diags = d - 2 * r - 1;  // i = 1 .. d-2r-1
  if (!tns_per_i.empty() && static_cast<int>(tns_per_i.size()) != diags)
    throw std::invalid_argument("need one totally non-singular matrix per superdiagonal");
  Subspace sub;
  sub.ambient_shape = {d, d};
  sub.symmetry = Symmetry::antisymmetric;
  for (int i = 1; i <= diags; ++i) {
    Eigen::MatrixXcd tns = resolve_tns(tns_per_i, i - 1, d - i);
    for (int j = 1; j <= d - 2 * r - i; ++j) {
      Eigen::MatrixXcd m = superdiag_matrix(d, i, tns.col(j - 1));
      Eigen::MatrixXcd s = m - m.transpose();
      sub.basis.push_back(tensor_from_matrix(s));
    }
  }
  if (!sub.basis.empty() && !sub.validate())
    throw std::logic_error("constructed basis is not independent");
  return sub;
}

Subspace symmetric_multipartite_r1_basis(int d, int m) {
  if (d < 1 || m < 2) throw std::invalid_argument("need d >= 1 and m >= 2");
  Subspace sub;
  sub.ambient_shape.assign(m, d);
  sub.symmetry = Symmetry::symmetric;
  std::vector<int> a(m, 0);
  do {
    if (a.front() == a.back()) continue;  // constant multiset -> excluded
    std::vector<Eigen::VectorXcd> factors;
    factors.reserve(m);
    for (int idx : a) factors.push_back(unit_vec(d, idx));
    sub.basis.push_back(vee(factors));
  } while (next_nondecreasing(a, d));
  if (!sub.validate()) throw std::logic_error("constructed basis is not independent");
  return sub;
}

Subspace antisymmetric_multipartite_r1_subspace(int d, int m) {
  if (m < 1 || d < m)
    throw std::invalid_argument("antisymmetric construction needs d >= m >= 1");
  const auto tuples = increasing_tuples(d, m);
  const int n = static_cast<int>(tuples.size());  // C(d, m)

  // Constraint: over every level set of the (1-based) index sum inside the
  // window [C(m,2)+m-1, dm-C(m,2)], the wedge coordinates add to zero.
  const int lo = m * (m - 1) / 2 + m - 1;
  const int hi = d * m - m * (m - 1) / 2;
  std::vector<std::vector<int>> level_sets;
  for (int s = lo; s <= hi; ++s) {
    std::vector<int> members;
    for (int t = 0; t < n; ++t) {
      int sum = 0;
      for (int v : tuples[t]) sum += v + 1;
      if (sum == s) members.push_back(t);
    }
    if (!members.empty()) level_sets.push_back(std::move(members));
  }
  const int expected = m * (d - m) + 1;
  if (static_cast<int>(level_sets.size()) != expected)
    throw std::logic_error("unexpected number of nonempty sum constraints");

  Eigen::MatrixXcd constraints = Eigen::MatrixXcd::Zero(level_sets.size(), n);
  for (std::size_t row = 0; row < level_sets.size(); ++row)
    for (int t : level_sets[row]) constraints(row, t) = cdouble(1.0, 0.0);

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(constraints, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-10 * sv(0)) ++rank;
  Eigen::MatrixXcd null_rows = svd.matrixV().rightCols(n - rank).transpose();
  null_rows = rref_rows(null_rows);

  Subspace sub;
  sub.ambient_shape.assign(m, d);
  sub.symmetry = Symmetry::antisymmetric;
  for (Eigen::Index row = 0; row < null_rows.rows(); ++row) {
    Tensor t(sub.ambient_shape);
    for (int idx = 0; idx < n; ++idx) {
      if (null_rows(row, idx) == cdouble(0.0, 0.0)) continue;
      std::vector<Eigen::VectorXcd> factors;
      factors.reserve(m);
      for (int v : tuples[idx]) factors.push_back(unit_vec(d, v));
      t += null_rows(row, idx) * wedge(factors);
    }
    sub.basis.push_back(std::move(t));
  }
  const int expect_dim = static_cast<int>(binomial(d, m)) - m * (d - m) - 1;
  if (sub.affine_dim() != expect_dim)
    throw std::logic_error("constraint system has unexpected solution dimension");
  if (!sub.basis.empty() && !sub.validate())
    throw std::logic_error("constructed basis is not independent");
  return sub;
}

ConstructionParams::ConstructionParams() {
  delta << 0, 1, 1, 1;
  eps << 1, 1, 2, 0;
  theta << 1, 1, 1, 0;
  kappa << 0, 2, 1, 1;
  phi << 0, 1, 1, 1;
  psi << 1, 2, 1, 0;
}

bool ConstructionParams::qutrit_params_independent(double tol) const {
  Eigen::Matrix4cd m;
  m.col(0) = delta;
  m.col(1) = eps;
  m.col(2) = theta;
  m.col(3) = kappa;
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(m);
  return svd.singularValues()(3) > tol * std::max(svd.singularValues()(0), 1e-300);
}

bool ConstructionParams::four_qubit_params_independent(double tol) const {
  Eigen::MatrixXcd m(4, 2);
  m.col(0) = phi;
  m.col(1) = psi;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(1) > tol * std::max(svd.singularValues()(0), 1e-300);
}

bool ConstructionParams::qutrit_params_generic(double tol) const {
  return pair_generic(delta, eps, tol) && pair_generic(theta, kappa, tol);
}

Subspace qutrit_qutrit_qubit_basis(const ConstructionParams& params) {
  if (!params.qutrit_params_independent())
    throw std::invalid_argument("delta, eps, theta, kappa must be linearly independent");
  const std::vector<int> shape = {3, 3, 2};
  Subspace sub;
  sub.ambient_shape = shape;

  Tensor diag0(shape), diag1(shape);
  for (int i = 0; i < 3; ++i) {
    diag0.at({i, i, 0}) = 1.0;
    diag1.at({i, i, 1}) = 1.0;
  }
  sub.basis.push_back(diag0);
  sub.basis.push_back(diag1);

  auto first_pattern = [&shape](const Eigen::Vector4cd& x) {
    Tensor t(shape);
    t.at({0, 1, 0}) = x(0);
    t.at({1, 0, 0}) = x(1);
    t.at({2, 0, 1}) = x(2);
    t.at({0, 2, 1}) = x(3);
    return t;
  };
  auto second_pattern = [&shape](const Eigen::Vector4cd& x) {
    Tensor t(shape);
    t.at({0, 2, 0}) = x(0);
    t.at({2, 0, 0}) = x(1);
    t.at({2, 1, 1}) = x(2);
    t.at({1, 2, 1}) = x(3);
    return t;
  };
  sub.basis.push_back(first_pattern(params.delta));
  sub.basis.push_back(first_pattern(params.eps));
  sub.basis.push_back(second_pattern(params.theta));
  sub.basis.push_back(second_pattern(params.kappa));

  if (!sub.validate()) throw std::invalid_argument("parameters give a dependent basis");
  return sub;
}

Subspace four_qubit_basis(const ConstructionParams& params) {
  if (!params.four_qubit_params_independent())
    throw std::invalid_argument("phi and psi must be linearly independent");
  const std::vector<int> shape = {2, 2, 2, 2};
  Subspace sub;
  sub.ambient_shape = shape;

  auto basis_tensor = [&shape](std::initializer_list<std::pair<std::array<int, 4>, cdouble>> terms) {
    Tensor t(shape);
    for (const auto& [pos, val] : terms) t.at({pos[0], pos[1], pos[2], pos[3]}) += val;
    return t;
  };
  const cdouble one(1.0, 0.0);
  sub.basis.push_back(basis_tensor({{{0, 0, 0, 1}, one}, {{0, 1, 1, 0}, one}, {{1, 1, 0, 1}, one}}));
  sub.basis.push_back(basis_tensor({{{0, 0, 1, 0}, one}, {{1, 0, 0, 1}, one}, {{1, 1, 1, 0}, one}}));
  sub.basis.push_back(basis_tensor(
      {{{0, 1, 0, 0}, one}, {{1, 0, 0, 0}, one}, {{1, 0, 1, 1}, one}, {{1, 1, 0, 1}, one}}));
  sub.basis.push_back(basis_tensor(
      {{{0, 0, 1, 0}, one}, {{0, 1, 0, 0}, one}, {{0, 1, 1, 1}, one}, {{1, 0, 1, 1}, one}}));
  sub.basis.push_back(basis_tensor({{{0, 0, 0, 0}, params.phi(0)},
                                    {{0, 0, 1, 1}, params.phi(1)},
                                    {{1, 1, 0, 0}, params.phi(2)},
                                    {{1, 1, 1, 1}, params.phi(3)}}));
  sub.basis.push_back(basis_tensor({{{0, 0, 0, 0}, params.psi(0)},
                                    {{0, 0, 1, 1}, params.psi(1)},
                                    {{1, 1, 0, 0}, params.psi(2)},
                                    {{1, 1, 1, 1}, params.psi(3)}}));

  if (!sub.validate()) throw std::invalid_argument("parameters give a dependent basis");
  return sub;
}

}  // namespace entsub
