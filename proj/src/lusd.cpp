#include "entsub/lusd.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "entsub/rng.hpp"
#include "entsub/subspace.hpp"
#include "entsub/verify.hpp"

namespace entsub {

namespace {

int resource_rank(const Resource& res) {
  return res.kind == Resource::Kind::none ? 1 : res.r;
}

// Best dual for one state: minimizes sum_{b != a} |u^T v_b|^2 over unit
// tensors of rank <= rr by block-coordinate descent on the factor matrices.
// vt holds the rows v_b^T of the states to annihilate, so the objective is
// |vt u|^2 = u^H q u with q = vt^H vt, and each mode update is a smallest
// generalized Rayleigh quotient over the range of the mode's linear map.
// Progress is measured by |vt u|^2 evaluated directly: the eigenvalue of the
// block solve bottoms out at machine epsilon while the iterate itself keeps
// improving well past that, and the pairing entries need to get there.
struct DescentResult {
  Eigen::VectorXcd u;      // unit norm
  double objective = 0.0;
  bool degenerate = false;
};

DescentResult dual_descent(const Eigen::MatrixXcd& vt, const std::vector<int>& shape, int rr,
                           std::uint64_t seed) {
  const int m = static_cast<int>(shape.size());
  Eigen::Index dim = 1;
  for (int d : shape) dim *= d;

  Rng rng(seed);
  std::vector<Eigen::MatrixXcd> factors(m);
  for (int j = 0; j < m; ++j) {
    factors[j].resize(shape[j], rr);
    for (int c = 0; c < rr; ++c)
      for (int i = 0; i < shape[j]; ++i) factors[j](i, c) = rng.cnormal();
  }

  DescentResult out;
  if (vt.rows() == 0) {  // nothing to annihilate: any point of the image works
    std::vector<Eigen::VectorXcd> cols(m);
    Tensor t{shape};
    for (int c = 0; c < rr; ++c) {
      for (int j = 0; j < m; ++j) cols[j] = factors[j].col(c);
      t += outer_product(cols);
    }
    if (!(t.norm() > 0.0)) {
      out.degenerate = true;
      return out;
    }
    out.u = t.data / t.norm();
    return out;
  }

  const Eigen::MatrixXcd q = vt.adjoint() * vt;
  double value = std::numeric_limits<double>::infinity();
  double window = std::numeric_limits<double>::infinity();
  Eigen::VectorXcd current;
  {
    std::vector<Eigen::VectorXcd> cols(m);
    Tensor t{shape};
    for (int c = 0; c < rr; ++c) {
      for (int j = 0; j < m; ++j) cols[j] = factors[j].col(c);
      t += outer_product(cols);
    }
    if (!(t.norm() > 0.0)) {
      out.degenerate = true;
      return out;
    }
    current = t.data / t.norm();
  }
  const int max_sweeps = 2000;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool collapsed = false;
    bool moved = false;
    for (int j = 0; j < m; ++j) {
      // u is linear in the stacked mode-j factors; collect that linear map
      Eigen::MatrixXcd lin = Eigen::MatrixXcd::Zero(dim, rr * shape[j]);
      std::vector<int> idx(m, 0);
      Eigen::Index row = 0;
      do {
        for (int c = 0; c < rr; ++c) {
          cdouble prod(1.0, 0.0);
          for (int i = 0; i < m; ++i)
            if (i != j) prod *= factors[i](idx[i], c);
          lin(row, c * shape[j] + idx[j]) += prod;
        }
        ++row;
      } while (next_multi_index(idx, shape));

      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(lin, Eigen::ComputeThinU | Eigen::ComputeThinV);
      const auto& sv = svd.singularValues();
      if (sv.size() == 0 || !(sv(0) > 0.0)) {
        collapsed = true;
        break;
      }
      int rank = 0;
      while (rank < sv.size() && sv(rank) > 1e-12 * sv(0)) ++rank;
      Eigen::MatrixXcd u = svd.matrixU().leftCols(rank);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(u.adjoint() * q * u);
      Eigen::Index bottom;
      es.eigenvalues().minCoeff(&bottom);
      Eigen::VectorXcd y = es.eigenvectors().col(bottom);
      // in a degenerate bottom eigenspace the solver picks an arbitrary basis
      // vector; keep the randomized iterate unless the candidate measurably
      // improves, or generic starts would collapse onto special rays
      Eigen::VectorXcd cand = u * y;  // unit norm by construction
      if (!((vt * cand).squaredNorm() < (vt * current).squaredNorm() * (1.0 - 1e-9))) continue;
      moved = true;
      current = cand;
      Eigen::VectorXcd x =
          svd.matrixV().leftCols(rank) * (y.array() / sv.head(rank).array()).matrix();
      for (int c = 0; c < rr; ++c) factors[j].col(c) = x.segment(c * shape[j], shape[j]);
    }
    if (collapsed) {
      out.degenerate = true;
      break;
    }
    // rebalance component scales for numerical stability
    for (int c = 0; c < rr; ++c) {
      double total = 1.0;
      for (int j = 1; j < m; ++j) {
        double n = factors[j].col(c).norm();
        if (n > 0) {
          factors[j].col(c) /= n;
          total *= n;
        }
      }
      factors[0].col(c) *= total;
    }
    value = (vt * current).squaredNorm();
    if (value < 1e-26) break;
    if (!moved) break;  // block-coordinate fixed point
    // the tail converges linearly; stop once 30 sweeps stop paying for
    // themselves (covers both genuine stalls and positive local minima)
    if (sweep % 30 == 29) {
      if (value > 0.5 * window) break;
      window = value;
    }
  }
  out.u = current;
  out.objective = std::max(0.0, value);
  if (!(out.u.norm() > 0.5)) out.degenerate = true;  // all components cancelled
  return out;
}

}  // namespace

void LusdInstance::validate() const {
  if (local_dims.size() < 2) throw std::invalid_argument("need at least two local systems");
  for (int d : local_dims)
    if (d < 1) throw std::invalid_argument("local dimensions must be positive");
  if (states.empty()) throw std::invalid_argument("need at least one state");
  for (const Tensor& s : states) {
    if (s.shape != local_dims) throw std::invalid_argument("state shape does not match local_dims");
    if (!(s.norm() > 0.0)) throw std::invalid_argument("states must be nonzero");
  }
  if (resource.r < 1) throw std::invalid_argument("resource rank must be at least 1");
  if (resource.kind == Resource::Kind::bipartite_schmidt && local_dims.size() != 2)
    throw std::invalid_argument("bipartite_schmidt resource needs exactly two systems");
}

Eigen::MatrixXcd bilinear_pairing(const std::vector<Tensor>& duals,
                                  const std::vector<Tensor>& states) {
  Eigen::MatrixXcd p(duals.size(), states.size());
  for (std::size_t a = 0; a < duals.size(); ++a)
    for (std::size_t b = 0; b < states.size(); ++b) {
      if (duals[a].shape != states[b].shape)
        throw std::invalid_argument("pairing of tensors with different shapes");
      p(a, b) = bdot(duals[a], states[b]);
    }
  return p;
}

double membership_residual(const Tensor& t, const Resource& res,
                           const std::vector<int>& local_dims) {
  if (t.shape != local_dims) throw std::invalid_argument("tensor shape does not match local_dims");
  if (!(t.norm() > 0.0)) return 1.0;
  const int rr = resource_rank(res);
  if (local_dims.size() == 2) {
    // Schmidt rank across the only cut; exact via singular values
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(flatten(t, {0}));
    const auto& sv = svd.singularValues();
    if (sv.size() <= rr) return 0.0;
    return sv(rr) / sv(0);
  }
  if (res.kind == Resource::Kind::bipartite_schmidt)
    throw std::invalid_argument("bipartite_schmidt resource needs exactly two systems");
  // tensor rank <= rr via an alternating least squares fit; extra seeds guard
  // against the occasional swamped run
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t s : {11ull, 12ull, 13ull}) {
    AlsOptions opts;
    opts.max_sweeps = 1200;
    opts.seed = s;
    best = std::min(best, als_rank_r_approx(t, rr, opts).residual);
    if (best < 1e-12) break;
  }
  return best;
}

DualCertificate check_certificate(const LusdInstance& inst, const std::vector<Tensor>& duals,
                                  const LusdTols& tols) {
  inst.validate();
  if (duals.size() != inst.states.size())
    throw std::invalid_argument("need exactly one dual per state");
  for (const Tensor& u : duals) {
    if (u.shape != inst.local_dims)
      throw std::invalid_argument("dual shape does not match local_dims");
    if (!(u.norm() > 0.0)) throw std::invalid_argument("duals must be nonzero");
  }

  const int n = inst.n();
  DualCertificate cert;
  cert.duals.reserve(n);
  std::vector<Tensor> states(inst.states);
  for (Tensor& v : states) v *= cdouble(1.0 / v.norm(), 0.0);
  for (const Tensor& u : duals) {
    Tensor w = u;
    w *= cdouble(1.0 / w.norm(), 0.0);
    cert.duals.push_back(std::move(w));
  }
  cert.pairing = bilinear_pairing(cert.duals, states);
  cert.rank_residuals.resize(n);
  for (int a = 0; a < n; ++a)
    cert.rank_residuals[a] = membership_residual(cert.duals[a], inst.resource, inst.local_dims);

  std::ostringstream why;
  for (int a = 0; a < n && cert.failure.empty(); ++a)
    if (!(cert.rank_residuals[a] < tols.tau_rank)) {
      why << "dual " << a << " is outside the resource image (residual "
          << cert.rank_residuals[a] << ")";
      cert.failure = why.str();
    }
  for (int a = 0; a < n && cert.failure.empty(); ++a)
    if (!(std::abs(cert.pairing(a, a)) > tols.tau_diag)) {
      why << "dual " << a << " does not respond to its own state (|pairing| "
          << std::abs(cert.pairing(a, a)) << ")";
      cert.failure = why.str();
    }
  for (int a = 0; a < n && cert.failure.empty(); ++a)
    for (int b = 0; b < n && cert.failure.empty(); ++b)
      if (a != b && !(std::abs(cert.pairing(a, b)) < tols.tau_off)) {
        why << "dual " << a << " responds to state " << b << " (|pairing| "
            << std::abs(cert.pairing(a, b)) << ")";
        cert.failure = why.str();
      }
  cert.ok = cert.failure.empty();
  return cert;
}

FindDualsReport find_duals(const LusdInstance& inst, int starts, std::uint64_t seed,
                           const LusdTols& tols) {
  inst.validate();
  if (starts < 1) throw std::invalid_argument("starts must be at least 1");

  const int n = inst.n();
  const int rr = resource_rank(inst.resource);
  Eigen::Index dim = 1;
  for (int d : inst.local_dims) dim *= d;

  std::vector<Tensor> states(inst.states);
  for (Tensor& v : states) v *= cdouble(1.0 / v.norm(), 0.0);

  FindDualsReport rep;
  std::vector<Tensor> duals;
  for (int a = 0; a < n; ++a) {
    Eigen::MatrixXcd vt(n - 1, dim);
    for (int b = 0, row = 0; b < n; ++b)
      if (b != a) vt.row(row++) = states[b].data.transpose();

    const std::uint64_t state_seed = derive_seed(seed, 0xd1a10000ull + a);
    double best = std::numeric_limits<double>::infinity();
    bool accepted = false;
    for (int s = 0; s < starts && !accepted; ++s) {
      DescentResult res = dual_descent(vt, inst.local_dims, rr, derive_seed(state_seed, s));
      if (res.degenerate) continue;
      best = std::min(best, res.objective);
      if (!(res.objective < tols.tau_rank * n)) continue;
      Tensor u(inst.local_dims);
      u.data = res.u;
      cdouble diag = bdot(u, states[a]);
      if (!(std::abs(diag) > tols.tau_diag)) continue;
      bool off_ok = true;
      for (int b = 0; b < n && off_ok; ++b)
        if (b != a) off_ok = std::abs(bdot(u, states[b])) < tols.tau_off;
      if (!off_ok) continue;
      // the dual is rank <= rr by construction, but an ill-conditioned
      // representation can swamp the membership oracle; insist the oracle
      // confirms this start before committing to it
      if (!(membership_residual(u, inst.resource, inst.local_dims) < tols.tau_rank)) continue;
      duals.push_back(std::move(u));
      accepted = true;
    }
    rep.best_off_diagonal.push_back(best);
    if (!accepted) {
      rep.failed_index = a;
      return rep;
    }
  }
  rep.certificate = check_certificate(inst, duals, tols);
  rep.ok = rep.certificate.ok;
  return rep;
}

int schmidt_rank(const Tensor& t, double tol) {
  if (t.order() != 2) throw std::invalid_argument("Schmidt rank needs exactly two modes");
  return numerical_rank(flatten(t, {0}), tol);
}

ThresholdStats threshold_demo(const std::vector<int>& local_dims, const Resource& res,
                              int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  DimReport count = lusd_generic_count(local_dims, res);
  if (count.value < 1) throw std::invalid_argument("no states are discriminable here");

  ThresholdStats stats;
  stats.n_star = count.value;
  stats.trials = trials;
  Eigen::Index dim = 1;
  for (int d : local_dims) dim *= d;
  const int rr = resource_rank(res);
  const bool exact_check = local_dims.size() == 2 && stats.n_star + 1 == dim;
  const int starts = 16;

  for (int t = 0; t < trials; ++t) {
    for (int extra = 0; extra <= 1; ++extra) {
      const int n = static_cast<int>(stats.n_star) + extra;
      const std::uint64_t trial_seed = derive_seed(seed, 2ull * t + extra);
      LusdInstance inst;
      inst.local_dims = local_dims;
      inst.resource = res;
      for (int i = 0; i < n; ++i)
        inst.states.push_back(random_tensor(local_dims, derive_seed(trial_seed, 100 + i)));
      FindDualsReport rep = find_duals(inst, starts, derive_seed(trial_seed, 7));
      if (rep.ok) {
        if (extra == 0)
          ++stats.successes_at_n;
        else
          ++stats.successes_above;
      } else if (extra == 1 && exact_check) {
        // with n = dim states, the other n-1 leave a one-dimensional bilinear
        // complement; a Schmidt rank above the resource rank there rules out
        // any dual exactly
        for (int a = 0; a < n; ++a) {
          std::vector<Tensor> others;
          for (int b = 0; b < n; ++b)
            if (b != a) others.push_back(inst.states[b]);
          Subspace comp = orth_complement(span_of(others), PairingForm::bilinear);
          if (comp.affine_dim() != 1) continue;
          if (schmidt_rank(comp.basis[0]) > rr) {
            ++stats.conclusive_failures_above;
            break;
          }
        }
      }
    }
  }
  stats.note = exact_check
                   ? "failures above the threshold are confirmed by the complement Schmidt rank"
                   : "failures above the threshold are heuristic (multistart search exhausted)";
  return stats;
}

}  // namespace entsub
