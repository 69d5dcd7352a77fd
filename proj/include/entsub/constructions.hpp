#pragma once

#include <complex>
#include <vector>

#include "entsub/subspace.hpp"

namespace entsub {

// Totally non-singular matrix: every minor, of every size, is nonzero.  When
// the matrix came from vandermonde() the generating nodes are kept so that
// callers (and reports) can reconstruct it.
struct TNSMatrix {
  Eigen::MatrixXcd entries;
  std::vector<cdouble> nodes;  // empty unless built from vandermonde()

  int size() const { return static_cast<int>(entries.rows()); }
};

// Square Vandermonde matrix with row i equal to (1, a_i, a_i^2, ...).  Nodes
// must be pairwise distinct and nonzero, which makes the result totally
// non-singular.
TNSMatrix vandermonde(const std::vector<cdouble>& nodes);
// Vandermonde on the nodes 1..n, the default source of totally non-singular
// matrices everywhere below.
TNSMatrix vandermonde_integer_nodes(int n);

// Enumerates all minors.  Exact Gaussian-integer arithmetic when every entry
// is a (complex) integer; otherwise each minor is compared against tol times
// a Hadamard-style scale of its submatrix.
bool is_totally_nonsingular(const Eigen::MatrixXcd& a, double tol = 1e-9);

// d x d matrix that is zero except for `column` placed along the i-th
// superdiagonal (entries (k, k+i) for k = 0..d-i-1); column must have length
// d-i.
Eigen::MatrixXcd superdiag_matrix(int d, int i, const Eigen::VectorXcd& column);

// Symmetric bipartite subspace of C^d (x) C^d, all of whose nonzero elements
// have matrix rank > r.  Basis: M + M^T where M carries column j of a totally
// non-singular matrix of size d-i on superdiagonal i, for 0 <= i <= d-r-1 and
// 1 <= j <= d-r-i.  Affine dimension C(d-r+1, 2), the maximum possible.
//
// tns_per_i, when nonempty, supplies the totally non-singular matrix for each
// used superdiagonal in increasing order of i (sizes d, d-1, ...); the
// default is vandermonde_integer_nodes(d - i).
Subspace symmetric_bipartite_basis(int d, int r,
                                   const std::vector<TNSMatrix>& tns_per_i = {});

// Antisymmetric counterpart: basis M - M^T over 1 <= i <= d-2r-1 and
// 1 <= j <= d-2r-i (the main diagonal is skipped), so every nonzero element
// has matrix rank > 2r.  Affine dimension C(d-2r, 2).  tns_per_i covers
// i = 1, 2, ... (sizes d-1, d-2, ...).
Subspace antisymmetric_bipartite_basis(int d, int r,
                                       const std::vector<TNSMatrix>& tns_per_i = {});

// Span of the symmetrized basis vectors e_{a_1} v ... v e_{a_m} over all
// non-constant multisets {a_1 <= ... <= a_m} in [d]; contains no nonzero
// m-th tensor power.  Affine dimension C(m+d-1, m) - d.
Subspace symmetric_multipartite_r1_basis(int d, int m);

// Solution space, inside the antisymmetric sector of (C^d)^(x m), of the
// linear system requiring the wedge coordinates v_a to sum to zero over each
// level set of the index sum.  Affine dimension C(d, m) - m(d-m) - 1; every
// nonzero element has tensor rank >= 2.
Subspace antisymmetric_multipartite_r1_subspace(int d, int m);

// Parameter vectors for the two hand-crafted 2-entangled constructions.  The
// qutrit-qutrit-qubit family uses delta/eps (first off-diagonal pattern) and
// theta/kappa (second pattern); the four-qubit family uses phi/psi.
struct ConstructionParams {
  Eigen::Vector4cd delta, eps, theta, kappa;
  Eigen::Vector4cd phi, psi;

  ConstructionParams();  // default parameter choice

  // {delta, eps, theta, kappa} linearly independent.
  bool qutrit_params_independent(double tol = 1e-10) const;
  // {phi, psi} linearly independent.
  bool four_qubit_params_independent(double tol = 1e-10) const;
  // Every nonzero combination of delta and eps (and of theta and kappa) has
  // at most one zero entry; equivalently all 2x2 minors of the stacked pairs
  // are nonzero.  Required by the exact certificate decision tree.
  bool qutrit_params_generic(double tol = 1e-12) const;
};

// Affine-dimension-6 subspace of C^3 (x) C^3 (x) C^2 whose coefficients are
// (c_lambda, c_gamma, c_delta, c_eps, c_theta, c_kappa) in that order.
// 2-entangled for the default parameters.
Subspace qutrit_qutrit_qubit_basis(const ConstructionParams& params = ConstructionParams());

// Affine-dimension-6 subspace of (C^2)^(x 4); 2-entangled for the default
// parameters.  Coefficients follow the basis order B1..B6 with B5/B6 the
// phi/psi diagonal patterns.
Subspace four_qubit_basis(const ConstructionParams& params = ConstructionParams());

}  // namespace entsub
