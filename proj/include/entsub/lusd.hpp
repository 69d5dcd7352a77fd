#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "entsub/dims.hpp"
#include "entsub/tensor.hpp"

namespace entsub {

// A local unambiguous state discrimination instance: n states on a shared
// multipartite space, plus the entanglement resource available to the
// discriminating parties.
struct LusdInstance {
  std::vector<int> local_dims;
  std::vector<Tensor> states;
  Resource resource = Resource::none();

  int n() const { return static_cast<int>(states.size()); }
  void validate() const;  // throws std::invalid_argument on violations
};

struct LusdTols {
  double tau_rank = 1e-8;  // membership residual in the resource image
  double tau_diag = 1e-6;  // |u_a^T v_a| must exceed this
  double tau_off = 1e-8;   // |u_a^T v_b|, a != b, must stay below this
};

struct DualCertificate {
  bool ok = false;
  std::vector<Tensor> duals;
  Eigen::MatrixXcd pairing;            // u_a^T v_b with all vectors unit-normalized
  std::vector<double> rank_residuals;  // per-dual membership residual
  std::string failure;                 // human-readable reason when !ok
};

// Bilinear (transpose, no conjugation) pairing matrix without normalization.
Eigen::MatrixXcd bilinear_pairing(const std::vector<Tensor>& duals,
                                  const std::vector<Tensor>& states);

// Residual distance of a state from the resource's image: sigma_{r+1}/sigma_1
// for bipartite shapes, otherwise a rank-r alternating-least-squares fit.
double membership_residual(const Tensor& t, const Resource& res,
                           const std::vector<int>& local_dims);

// Evaluates the discrimination certificate conditions for the given duals.
DualCertificate check_certificate(const LusdInstance& inst, const std::vector<Tensor>& duals,
                                  const LusdTols& tols = {});

struct FindDualsReport {
  bool ok = false;
  DualCertificate certificate;
  int failed_index = -1;                   // first state with no acceptable dual
  std::vector<double> best_off_diagonal;   // per state: best residual reached
};

// For each state, searches the resource image for a dual annihilating all the
// other states (block-coordinate descent over rank-<=r factors, multistart).
FindDualsReport find_duals(const LusdInstance& inst, int starts, std::uint64_t seed,
                           const LusdTols& tols = {});

struct ThresholdStats {
  long long n_star = 0;           // generic discriminable count
  int trials = 0;
  int successes_at_n = 0;         // find_duals successes with n_star states
  int successes_above = 0;        // successes with n_star + 1 states
  int conclusive_failures_above = 0;  // failures established exactly
  std::string note;
};

// Seeded demonstration of the generic threshold: random instances at the
// predicted maximum count and one above it.  When one state more than the
// ambient dimension is requested on a bipartite space, failures are confirmed
// exactly through the Schmidt rank of the one-dimensional complement.
ThresholdStats threshold_demo(const std::vector<int>& local_dims, const Resource& res,
                              int trials, std::uint64_t seed);

// Schmidt rank across the bipartite cut; requires exactly two modes.
int schmidt_rank(const Tensor& t, double tol = 1e-9);

}  // namespace entsub
