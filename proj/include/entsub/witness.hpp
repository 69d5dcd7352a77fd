#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "entsub/subspace.hpp"
#include "entsub/verify.hpp"

namespace entsub {

struct HermitianOperator {
  std::vector<int> ambient_shape;
  Eigen::MatrixXcd entries;
};

struct DensityOperator {
  std::vector<int> ambient_shape;
  Eigen::MatrixXcd entries;
};

// W = I - alpha * P with P the orthogonal projection onto the affine cone of
// the subspace.  The spectrum is 1 (ambient dim minus affine dim) together
// with 1 - alpha (affine dim).
HermitianOperator build_witness(const Subspace& sub, double alpha);

int negative_eig_count(const HermitianOperator& w, double tol = 1e-10);

enum class AnsatzKind { product, rank_r };
AnsatzKind ansatz_from_string(const std::string& s);
std::string to_string(AnsatzKind k);

// Multistart block-coordinate ascent of |P v|^2 over unit vectors v of tensor
// rank <= r (r = 1 for the product ansatz).  best_value is the estimate
// epsilon-hat; it never exceeds the true supremum, so alpha-hat = 1/best_value
// is only an upper bound on the valid witness scaling.  The verdict string is
// "one-sided-estimate".
OptimizationReport estimate_epsilon(const Subspace& sub, int r, AnsatzKind kind,
                                    int starts, std::uint64_t seed);

// Tr(W rho); a negative value certifies that rho is detected by the witness.
double detect(const HermitianOperator& w, const DensityOperator& rho);

DensityOperator density_from_pure(const Tensor& state);
DensityOperator maximally_mixed(const std::vector<int>& ambient_shape);
// rho = P / Tr(P), the normalized subspace projector.
DensityOperator normalized_projector(const Subspace& sub);

struct WitnessReport {
  double alpha = 0.0;
  double epsilon_estimate = 0.0;
  int negative_eigs = 0;
  std::vector<std::pair<std::string, double>> detection_examples;
  OptimizationReport ascent;
};

// End-to-end witness construction: estimates epsilon over the rank-r ansatz,
// scales by alpha-hat = 1/epsilon-hat, counts negative eigenvalues, and
// evaluates Tr(W rho) on reference states.
WitnessReport witness_report(const Subspace& sub, int r, int starts, std::uint64_t seed);

}  // namespace entsub
