#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "entsub/constructions.hpp"
#include "entsub/dims.hpp"
#include "entsub/subspace.hpp"

namespace entsub {

struct StartRecord {
  std::uint64_t seed = 0;
  double final_value = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct OptimizationReport {
  double best_value = 0.0;
  Eigen::VectorXcd best_point;  // unit-norm coefficient vector
  int starts = 0;
  std::vector<StartRecord> per_start;
  std::string verdict;
};

struct SearchOptions {
  int max_iterations = 2000;
  // stop a start once the relative objective decrease of an accepted step
  // falls below this
  double step_tolerance = 1e-14;
  // best_value below tau_zero (with a confirming flattening rank) means a
  // low-rank element was found; above tau_pos means none was found; between
  // them the verdict is inconclusive
  double tau_zero = 1e-10;
  double tau_pos = 1e-6;
};

// Sum of squared moduli of all (r+1) x (r+1) flattening minors of the
// unit-normalized element at coeffs.  Zero exactly when every flattening of
// the element has rank <= r; positive values certify that the element keeps
// border rank > r wherever flattening rank lower-bounds border rank.
double minor_objective(const Subspace& sub, int r, const Eigen::VectorXcd& coeffs);

// Same value, plus the gradient in the 2k real coordinates
// (Re c_0, Im c_0, Re c_1, ...).
double minor_objective_gradient(const Subspace& sub, int r, const Eigen::VectorXcd& coeffs,
                                Eigen::VectorXd& grad);

// Multistart gradient descent (backtracking line search) of minor_objective
// over the unit sphere of coefficients.  Deterministic for fixed
// (seed, starts, opts).
OptimizationReport search_low_rank_element(const Subspace& sub, int r, int starts,
                                           std::uint64_t seed, const SearchOptions& opts = {});

struct AlsOptions {
  int max_sweeps = 2000;
  double rel_tol = 1e-12;       // stop when the residual stalls
  double factor_norm_cap = 1e6; // component norm above this flags divergence
  std::uint64_t seed = 0;
};

struct AlsResult {
  Tensor approx;
  double residual = 0.0;  // norm(t - approx) / norm(t)
  bool diverged = false;
  int sweeps = 0;
};

// Alternating least squares over the factor blocks of a rank-r ansatz.  For
// inputs whose best rank-r approximation does not exist (border-rank inputs)
// the residual keeps shrinking while component norms blow up; the divergence
// flag reports that.
AlsResult als_rank_r_approx(const Tensor& t, int r, const AlsOptions& opts = {});

// One 3x3 submatrix of one of the two 3x6 coefficient layouts, certifying
// that an element of C^3 (x) C^3 (x) C^2 has flattening rank 3.
struct CertificateResult {
  bool found = false;
  std::string matrix_choice;     // "M" or "M_partial_transpose"
  std::array<int, 3> columns{};  // 1-based, increasing
  std::string case_label;
  cdouble determinant{};
};

// 3x6 layout with entry (i, 3k+j) = t[i, j, k]; rows pair with the first
// mode.
Eigen::MatrixXcd qqq_flattening(const Tensor& t);
// The same layout after swapping the first two modes: entry (j, 3k+i) =
// t[i, j, k].
Eigen::MatrixXcd qqq_partial_transpose_flattening(const Tensor& t);

// Exact certificate for elements of the qutrit-qutrit-qubit construction,
// written as lam * B1 + gam * B2 + c_de . (B3, B4) + c_tk . (B5, B6).
// Decides which 3x3 submatrix of the flattening (or its partial transpose)
// is nonsingular by walking a case tree on the zero pattern of the derived
// coefficients (lam, gam, alpha, beta); the tree is complete for generic
// parameters.  In the one genuinely parameter-dependent case ("3(b)(v)") the
// three designated minors can all vanish, in which case found = false is
// returned rather than a certificate.
CertificateResult case_tree_certificate(cdouble lam, cdouble gam, const Eigen::Vector2cd& c_de,
                                        const Eigen::Vector2cd& c_tk,
                                        const ConstructionParams& params = ConstructionParams());

// Independent oracle: tries every 3-column triple of both layouts and
// returns the one with the largest determinant modulus (of the
// unit-normalized element), or nothing when all are below tol.
std::optional<CertificateResult> brute_force_rank3_certificate(const Tensor& t,
                                                               double tol = 1e-8);

struct DisjointnessStats {
  int trials = 0;
  int hits = 0;  // trials where a border-rank-<= r element was found
  std::vector<double> best_values;
};

// Samples random subspaces of the given affine codimension (inside the
// symmetry sector matching the variety) and searches each for an element of
// the r-th secant variety.
DisjointnessStats generic_disjointness_trial(const VarietySpec& spec, int codim, int trials,
                                             std::uint64_t seed, int starts = 16,
                                             const SearchOptions& opts = {});

}  // namespace entsub
