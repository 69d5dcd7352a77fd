#include "entsub/subspace.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "entsub/rng.hpp"

namespace entsub {

std::string to_string(Symmetry s) {
  switch (s) {
    case Symmetry::none: return "none";
    case Symmetry::symmetric: return "sym";
    case Symmetry::antisymmetric: return "antisym";
  }
  return "none";
}

Symmetry symmetry_from_string(const std::string& s) {
  if (s == "none") return Symmetry::none;
  if (s == "sym") return Symmetry::symmetric;
  if (s == "antisym") return Symmetry::antisymmetric;
  throw std::invalid_argument("unknown symmetry tag: " + s);
}

Eigen::Index Subspace::ambient_dim() const {
  Eigen::Index n = 1;
  for (int d : ambient_shape) n *= d;
  return n;
}

Eigen::MatrixXcd Subspace::basis_matrix() const {
  Eigen::MatrixXcd b(ambient_dim(), affine_dim());
  for (int j = 0; j < affine_dim(); ++j) b.col(j) = basis[j].data;
  return b;
}

Tensor Subspace::element(const Eigen::VectorXcd& coeffs) const {
  if (coeffs.size() != affine_dim()) throw std::invalid_argument("coefficient count mismatch");
  Tensor t(ambient_shape);
  for (int j = 0; j < affine_dim(); ++j) t.data += coeffs[j] * basis[j].data;
  return t;
}

bool Subspace::validate(double tol) const {
  for (const auto& b : basis)
    if (b.shape != ambient_shape) return false;
  if (!basis.empty()) {
    Eigen::MatrixXcd bm = basis_matrix();
    // independence is invariant under rescaling individual basis elements,
    // so equilibrate the columns first: integer-entry constructions mix
    // norms across many orders of magnitude and would otherwise trip the
    // relative cutoff while being exactly independent
    for (Eigen::Index j = 0; j < bm.cols(); ++j) {
      double nj = bm.col(j).norm();
      if (!(nj > 0.0)) return false;
      bm.col(j) /= nj;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(bm);
    const auto& sv = svd.singularValues();
    // independent basis: smallest singular value bounded away from zero,
    // relative to the largest (tol is an orthonormality-grade default, so
    // use a looser rank cutoff)
    double cutoff = std::max(tol, 1e-9) * sv(0);
    if (sv(sv.size() - 1) <= cutoff) return false;
  }
  for (const auto& b : basis) {
    if (symmetry == Symmetry::symmetric && !is_symmetric(b, 1e-10)) return false;
    if (symmetry == Symmetry::antisymmetric && !is_antisymmetric(b, 1e-10)) return false;
  }
  return true;
}

Subspace span_of(const std::vector<Tensor>& tensors, double tol, Symmetry symmetry) {
  if (tensors.empty()) throw std::invalid_argument("no tensors given");
  const auto shape = tensors[0].shape;
  Eigen::Index dim = tensors[0].size();
  Eigen::MatrixXcd a(dim, static_cast<Eigen::Index>(tensors.size()));
  double max_norm = 0.0;
  for (std::size_t j = 0; j < tensors.size(); ++j) {
    if (tensors[j].shape != shape) throw std::invalid_argument("mixed shapes in span");
    a.col(static_cast<Eigen::Index>(j)) = tensors[j].data;
    max_norm = std::max(max_norm, tensors[j].norm());
  }
  if (max_norm == 0.0) throw std::invalid_argument("all tensors zero");

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > tol * sv[0]) ++rank;

  Subspace sub;
  sub.ambient_shape = shape;
  sub.symmetry = symmetry;
  for (int j = 0; j < rank; ++j) {
    Tensor b(shape);
    b.data = svd.matrixU().col(j);
    sub.basis.push_back(std::move(b));
  }
  return sub;
}

std::vector<std::vector<int>> increasing_tuples(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> t(k);
  std::iota(t.begin(), t.end(), 0);
  while (true) {
    out.push_back(t);
    int i = k - 1;
    while (i >= 0 && t[i] == n - k + i) --i;
    if (i < 0) break;
    ++t[i];
    for (int j = i + 1; j < k; ++j) t[j] = t[j - 1] + 1;
  }
  return out;
}

PlueckerCoords pluecker(const Subspace& sub) {
  const int n = sub.affine_dim();
  if (n == 0) throw std::invalid_argument("empty subspace");
  const Eigen::Index dim = sub.ambient_dim();
  Eigen::MatrixXcd b = sub.basis_matrix();

  PlueckerCoords pc;
  pc.n = n;
  pc.tuples = increasing_tuples(static_cast<int>(dim), n);
  pc.values.resize(static_cast<Eigen::Index>(pc.tuples.size()));
  Eigen::MatrixXcd sq(n, n);
  for (std::size_t t = 0; t < pc.tuples.size(); ++t) {
    for (int i = 0; i < n; ++i) sq.row(i) = b.row(pc.tuples[t][i]);
    pc.values[static_cast<Eigen::Index>(t)] = sq.determinant();
  }
  return pc;
}

Subspace orth_complement(const Subspace& sub, PairingForm form) {
  const Eigen::Index dim = sub.ambient_dim();
  const int k = sub.affine_dim();
  if (k >= dim) throw std::invalid_argument("subspace is not proper");
  Eigen::MatrixXcd b = sub.basis_matrix();

  Eigen::MatrixXcd kernel_basis;
  if (form == PairingForm::hermitian) {
    // u with B^H u = 0: the trailing left singular vectors of B
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b, Eigen::ComputeFullU);
    kernel_basis = svd.matrixU().rightCols(dim - k);
  } else {
    // u with B^T u = 0: the trailing right singular vectors of B^T
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b.transpose().eval(), Eigen::ComputeFullV);
    kernel_basis = svd.matrixV().rightCols(dim - k);
  }

  Subspace out;
  out.ambient_shape = sub.ambient_shape;
  out.symmetry = Symmetry::none;
  for (Eigen::Index j = 0; j < kernel_basis.cols(); ++j) {
    Tensor t(sub.ambient_shape);
    t.data = kernel_basis.col(j);
    out.basis.push_back(std::move(t));
  }
  return out;
}

MinorDualityReport complementary_minor_check(const Subspace& sub, double tol) {
  const int dim = static_cast<int>(sub.ambient_dim());
  const int n = sub.affine_dim();
  Subspace comp = orth_complement(sub, PairingForm::bilinear);

  PlueckerCoords p = pluecker(sub);
  PlueckerCoords q = pluecker(comp);

  // lexicographic rank lookup for the complement tuples
  auto comp_tuples = increasing_tuples(dim, dim - n);
  std::vector<Eigen::Index> rank_of(static_cast<std::size_t>(1) << dim, -1);
  auto key = [](const std::vector<int>& t) {
    std::size_t k = 0;
    for (int i : t) k |= (std::size_t(1) << i);
    return k;
  };
  for (std::size_t i = 0; i < comp_tuples.size(); ++i)
    rank_of[key(comp_tuples[i])] = static_cast<Eigen::Index>(i);

  // paired vector: complement coordinate with the position-parity sign
  Eigen::VectorXcd paired(p.values.size());
  const std::size_t full = (std::size_t(1) << dim) - 1;
  for (std::size_t i = 0; i < p.tuples.size(); ++i) {
    int pos_sum = 0;
    for (int r : p.tuples[i]) pos_sum += r + 1;  // 1-based positions
    const std::size_t comp_key = full & ~key(p.tuples[i]);
    const double sign = (pos_sum % 2 == 0) ? 1.0 : -1.0;
    paired[static_cast<Eigen::Index>(i)] = sign * q.values[rank_of[comp_key]];
  }

  MinorDualityReport rep;
  const double pn = p.values.norm(), qn = paired.norm();
  if (pn == 0.0 || qn == 0.0) {
    rep.ok = false;
    rep.max_deviation = 1.0;
    return rep;
  }
  Eigen::VectorXcd ph = p.values / pn, qh = paired / qn;
  const cdouble scale = ph.dot(qh);  // least-squares global scale, |scale| ~ 1
  rep.max_deviation = (qh - scale * ph).cwiseAbs().maxCoeff();
  rep.ok = rep.max_deviation <= tol;
  return rep;
}

namespace {

Tensor symmetry_average(const Tensor& t, bool antisym) {
  const int m = t.order();
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  Tensor acc(t.shape);
  double count = 0.0;
  do {
    Tensor p = permute_modes(t, perm);
    if (antisym && permutation_sign(perm) < 0) p *= -1.0;
    acc += p;
    count += 1.0;
  } while (std::next_permutation(perm.begin(), perm.end()));
  acc *= 1.0 / count;
  return acc;
}

}  // namespace

Tensor symmetrize(const Tensor& t) { return symmetry_average(t, false); }
Tensor antisymmetrize(const Tensor& t) { return symmetry_average(t, true); }

Eigen::Index sector_dim(const std::vector<int>& ambient_shape, Symmetry symmetry) {
  Eigen::Index full = 1;
  for (int d : ambient_shape) full *= d;
  if (symmetry == Symmetry::none) return full;
  const int d = ambient_shape[0];
  const int m = static_cast<int>(ambient_shape.size());
  for (int k = 1; k < m; ++k)
    if (ambient_shape[k] != d) throw std::invalid_argument("symmetry sector needs equal local dimensions");
  auto binom = [](long long n, long long k) {
    if (k < 0 || k > n) return 0LL;
    long long r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  if (symmetry == Symmetry::symmetric) return binom(d + m - 1, m);
  return binom(d, m);
}

Subspace random_subspace(const std::vector<int>& ambient_shape, int affine_dim,
                         Symmetry symmetry, std::uint64_t seed) {
  const Eigen::Index sector = sector_dim(ambient_shape, symmetry);
  if (affine_dim < 1 || affine_dim > sector)
    throw std::invalid_argument("affine dimension exceeds the symmetry sector");
  std::vector<Tensor> draws;
  for (int i = 0; i < affine_dim; ++i) {
    Tensor t = random_tensor(ambient_shape, derive_seed(seed, static_cast<std::uint64_t>(i)));
    if (symmetry == Symmetry::symmetric) t = symmetrize(t);
    if (symmetry == Symmetry::antisymmetric) t = antisymmetrize(t);
    draws.push_back(std::move(t));
  }
  Subspace sub = span_of(draws, 1e-9, symmetry);
  if (sub.affine_dim() != affine_dim)
    throw std::runtime_error("degenerate random draw");
  return sub;
}

}  // namespace entsub
