#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

namespace entsub {

using cdouble = std::complex<double>;

// Dense complex tensor over C^{d_1} x ... x C^{d_m}, stored row-major with
// the last index fastest.
struct Tensor {
  std::vector<int> shape;
  Eigen::VectorXcd data;

  Tensor() = default;
  explicit Tensor(std::vector<int> s);

  int order() const { return static_cast<int>(shape.size()); }
  Eigen::Index size() const { return data.size(); }
  double norm() const { return data.norm(); }

  Eigen::Index flat_index(const std::vector<int>& idx) const;
  cdouble& at(const std::vector<int>& idx) { return data[flat_index(idx)]; }
  cdouble at(const std::vector<int>& idx) const { return data[flat_index(idx)]; }

  Tensor& operator+=(const Tensor& o);
  Tensor& operator-=(const Tensor& o);
  Tensor& operator*=(cdouble c);
};

Tensor operator+(Tensor a, const Tensor& b);
Tensor operator-(Tensor a, const Tensor& b);
Tensor operator*(cdouble c, Tensor t);

// Hermitian inner product <a, b>, conjugate-linear in the first argument.
cdouble hdot(const Tensor& a, const Tensor& b);
// Bilinear pairing a^T b (no conjugation).
cdouble bdot(const Tensor& a, const Tensor& b);

Eigen::VectorXcd unit_vec(int d, int i);

// Iterates a mixed-radix multi-index; returns false after the last one.
bool next_multi_index(std::vector<int>& idx, const std::vector<int>& shape);

Tensor outer_product(const std::vector<Eigen::VectorXcd>& factors);

// Unnormalized permutation sums: vee is sum_{sigma} x_{sigma(1)} x ... x
// x_{sigma(m)}, wedge carries sign(sigma).  Wedge of linearly dependent
// factors is the zero tensor.
Tensor vee(const std::vector<Eigen::VectorXcd>& factors);
Tensor wedge(const std::vector<Eigen::VectorXcd>& factors);

int permutation_sign(const std::vector<int>& perm);

// (permute_modes(t, sigma))[i_0..i_{m-1}] = t[i_{sigma(0)}, ..., i_{sigma(m-1)}].
// Applying sigma then tau equals a single application of tau o sigma.
Tensor permute_modes(const Tensor& t, const std::vector<int>& sigma);

bool is_symmetric(const Tensor& t, double tol = 1e-12);
bool is_antisymmetric(const Tensor& t, double tol = 1e-12);

// Matrix with rows indexed by the modes in row_modes (sorted, last fastest)
// and columns by the complementary modes.
Eigen::MatrixXcd flatten(const Tensor& t, const std::vector<int>& row_modes);

// Count of singular values above tol times the largest one; 0 for the zero
// matrix.
int numerical_rank(const Eigen::MatrixXcd& m, double tol = 1e-9);

// Max numerical rank over all flattenings; only row-mode sets containing the
// first mode are evaluated, since complementary flattenings are transposes.
int flattening_rank(const Tensor& t, double tol = 1e-9);

Tensor random_tensor(const std::vector<int>& shape, std::uint64_t seed);
Tensor random_product(const std::vector<int>& shape, std::uint64_t seed);
Tensor random_rank_r(const std::vector<int>& shape, int r, std::uint64_t seed);

// d x d matrix <-> tensor in C^d (x) C^d with index (row, column).
Tensor tensor_from_matrix(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_tensor(const Tensor& t);

}  // namespace entsub
