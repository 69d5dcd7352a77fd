#pragma once

#include <string>
#include <vector>

#include "entsub/tensor.hpp"

namespace entsub {

enum class Symmetry { none, symmetric, antisymmetric };

std::string to_string(Symmetry s);
Symmetry symmetry_from_string(const std::string& s);

// A projective linear subspace represented by a linearly independent (not
// necessarily orthonormal) basis of its affine cone.  Affine dimension =
// number of basis tensors; the projective dimension is one less.
struct Subspace {
  std::vector<int> ambient_shape;
  Symmetry symmetry = Symmetry::none;
  std::vector<Tensor> basis;

  int affine_dim() const { return static_cast<int>(basis.size()); }
  int projective_dim() const { return affine_dim() - 1; }
  Eigen::Index ambient_dim() const;
  Eigen::MatrixXcd basis_matrix() const;  // ambient_dim x affine_dim
  Tensor element(const Eigen::VectorXcd& coeffs) const;
  // linear independence of the basis and conformance to the symmetry tag
  bool validate(double tol = 1e-10) const;
};

// Orthonormal basis of the span via rank-revealing SVD.
Subspace span_of(const std::vector<Tensor>& tensors, double tol = 1e-9,
                 Symmetry symmetry = Symmetry::none);

// Pluecker coordinates: all n x n minors of the basis matrix, indexed by
// strictly increasing row tuples in lexicographic order.  Defined up to one
// global scale.
struct PlueckerCoords {
  int n = 0;
  std::vector<std::vector<int>> tuples;
  Eigen::VectorXcd values;
};

PlueckerCoords pluecker(const Subspace& sub);

enum class PairingForm { bilinear, hermitian };

// Complement under u^T v (bilinear) or u^* v (hermitian).  The bilinear form
// is the one used by the discrimination certificates.
Subspace orth_complement(const Subspace& sub, PairingForm form);

struct MinorDualityReport {
  bool ok = false;
  double max_deviation = 0.0;
};

// Checks that the Pluecker coordinate of the subspace on an index set equals,
// up to a single global scale and the parity sign of the index positions, the
// coordinate of its bilinear complement on the complementary set.
MinorDualityReport complementary_minor_check(const Subspace& sub, double tol = 1e-9);

Tensor symmetrize(const Tensor& t);
Tensor antisymmetrize(const Tensor& t);

// Dimension of the ambient symmetry sector (full space, symmetric tensors,
// or antisymmetric tensors).
Eigen::Index sector_dim(const std::vector<int>& ambient_shape, Symmetry symmetry);

// Unitarily invariant random subspace of the requested symmetry sector.
Subspace random_subspace(const std::vector<int>& ambient_shape, int affine_dim,
                         Symmetry symmetry, std::uint64_t seed);

std::vector<std::vector<int>> increasing_tuples(int n, int k);

}  // namespace entsub
