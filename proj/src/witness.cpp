#include "entsub/witness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "entsub/rng.hpp"

namespace entsub {

namespace {

Eigen::MatrixXcd projector_onto(const Subspace& sub) {
  if (sub.affine_dim() == 0) throw std::invalid_argument("empty subspace");
  if (!sub.validate()) throw std::invalid_argument("subspace basis is not independent");
  Eigen::MatrixXcd b = sub.basis_matrix();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(b);
  Eigen::MatrixXcd q =
      qr.householderQ() * Eigen::MatrixXcd::Identity(b.rows(), b.cols());
  return q * q.adjoint();
}

void check_hermitian(const Eigen::MatrixXcd& m, double tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("operator is not square");
  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol * scale)
    throw std::invalid_argument("operator is not Hermitian");
}

}  // namespace

HermitianOperator build_witness(const Subspace& sub, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  Eigen::MatrixXcd p = projector_onto(sub);
  HermitianOperator w;
  w.ambient_shape = sub.ambient_shape;
  w.entries = Eigen::MatrixXcd::Identity(p.rows(), p.cols()) - alpha * p;
  return w;
}

int negative_eig_count(const HermitianOperator& w, double tol) {
  check_hermitian(w.entries, 1e-12);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(w.entries,
                                                     Eigen::EigenvaluesOnly);
  int count = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) < -tol) ++count;
  return count;
}

AnsatzKind ansatz_from_string(const std::string& s) {
  if (s == "product") return AnsatzKind::product;
  if (s == "rank_r") return AnsatzKind::rank_r;
  throw std::invalid_argument("unknown ansatz kind: " + s);
}

std::string to_string(AnsatzKind k) {
  return k == AnsatzKind::product ? "product" : "rank_r";
}

OptimizationReport estimate_epsilon(const Subspace& sub, int r, AnsatzKind kind,
                                    int starts, std::uint64_t seed) {
  if (starts < 1) throw std::invalid_argument("starts must be at least 1");
  const int rr = kind == AnsatzKind::product ? 1 : r;
  if (rr < 1) throw std::invalid_argument("ansatz rank must be at least 1");
  const Eigen::MatrixXcd p = projector_onto(sub);
  const std::vector<int>& shape = sub.ambient_shape;
  const int m = static_cast<int>(shape.size());
  const Eigen::Index dim = p.rows();

  OptimizationReport report;
  report.starts = starts;
  int best_index = -1;

  for (int s = 0; s < starts; ++s) {
    std::uint64_t start_seed = derive_seed(seed, static_cast<std::uint64_t>(s));
    Rng rng(start_seed);
    std::vector<Eigen::MatrixXcd> factors(m);
    for (int j = 0; j < m; ++j) {
      factors[j].resize(shape[j], rr);
      for (int a = 0; a < shape[j]; ++a)
        for (int c = 0; c < rr; ++c) factors[j](a, c) = rng.cnormal();
    }

    double value = 0.0;
    int sweep = 0;
    bool converged = false;
    const int max_sweeps = 300;
    for (; sweep < max_sweeps; ++sweep) {
      double prev = value;
      for (int j = 0; j < m; ++j) {
        // v is linear in the stacked mode-j factors; collect that linear map
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

        // maximize |P L x|^2 / |L x|^2: a generalized Rayleigh quotient over
        // the range of L
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
            lin, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto& sv = svd.singularValues();
        if (sv.size() == 0 || sv(0) <= 0.0) {
          converged = true;
          break;
        }
        int rank = 0;
        while (rank < sv.size() && sv(rank) > 1e-12 * sv(0)) ++rank;
        Eigen::MatrixXcd u = svd.matrixU().leftCols(rank);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(u.adjoint() * p * u);
        Eigen::Index top;
        value = es.eigenvalues().maxCoeff(&top);
        Eigen::VectorXcd y = es.eigenvectors().col(top);
        Eigen::VectorXcd x = svd.matrixV().leftCols(rank) *
                             (y.array() / sv.head(rank).array()).matrix();
        for (int c = 0; c < rr; ++c) factors[j].col(c) = x.segment(c * shape[j], shape[j]);
      }
      if (converged) break;
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
      if (value - prev < 1e-13 * std::max(1.0, std::abs(prev))) {
        converged = true;
        ++sweep;
        break;
      }
    }

    report.per_start.push_back({start_seed, value, sweep, converged});
    if (best_index < 0 || value > report.per_start[best_index].final_value) {
      best_index = s;
      Eigen::Index total = 0;
      for (int j = 0; j < m; ++j) total += rr * shape[j];
      Eigen::VectorXcd point(total);
      Eigen::Index off = 0;
      for (int c = 0; c < rr; ++c)
        for (int j = 0; j < m; ++j) {
          point.segment(off, shape[j]) = factors[j].col(c);
          off += shape[j];
        }
      report.best_point = point;
    }
  }

  report.best_value = report.per_start[best_index].final_value;
  report.verdict = "one-sided-estimate";
  return report;
}

double detect(const HermitianOperator& w, const DensityOperator& rho) {
  if (w.ambient_shape != rho.ambient_shape)
    throw std::invalid_argument("witness and state live on different spaces");
  if (w.entries.rows() != rho.entries.rows())
    throw std::invalid_argument("dimension mismatch");
  check_hermitian(rho.entries, 1e-12);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.entries,
                                                     Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("state is not positive semidefinite");
  if (std::abs(rho.entries.trace() - cdouble(1.0, 0.0)) > 1e-10)
    throw std::invalid_argument("state does not have unit trace");
  return std::real((w.entries * rho.entries).trace());
}

DensityOperator density_from_pure(const Tensor& state) {
  double n = state.norm();
  if (n == 0.0) throw std::invalid_argument("zero state");
  DensityOperator rho;
  rho.ambient_shape = state.shape;
  Eigen::VectorXcd v = state.data / n;
  rho.entries = v * v.adjoint();
  return rho;
}

DensityOperator maximally_mixed(const std::vector<int>& ambient_shape) {
  Eigen::Index dim = 1;
  for (int d : ambient_shape) dim *= d;
  if (dim < 1) throw std::invalid_argument("empty ambient shape");
  DensityOperator rho;
  rho.ambient_shape = ambient_shape;
  rho.entries = Eigen::MatrixXcd::Identity(dim, dim) / double(dim);
  return rho;
}

DensityOperator normalized_projector(const Subspace& sub) {
  DensityOperator rho;
  rho.ambient_shape = sub.ambient_shape;
  rho.entries = projector_onto(sub) / double(sub.affine_dim());
  return rho;
}

WitnessReport witness_report(const Subspace& sub, int r, int starts, std::uint64_t seed) {
  WitnessReport rep;
  rep.ascent = estimate_epsilon(sub, r, AnsatzKind::rank_r, starts, seed);
  // |Pv|^2 <= 1 mathematically; shave off eigensolver roundoff
  rep.epsilon_estimate = std::min(1.0, rep.ascent.best_value);
  if (!(rep.epsilon_estimate > 0.0))
    throw std::runtime_error("epsilon ascent returned a nonpositive value");
  rep.alpha = 1.0 / rep.epsilon_estimate;
  HermitianOperator w = build_witness(sub, rep.alpha);
  rep.negative_eigs = negative_eig_count(w);
  rep.detection_examples.emplace_back("normalized-projector",
                                      detect(w, normalized_projector(sub)));
  rep.detection_examples.emplace_back("maximally-mixed",
                                      detect(w, maximally_mixed(sub.ambient_shape)));
  rep.detection_examples.emplace_back(
      "random-product-state",
      detect(w, density_from_pure(random_product(sub.ambient_shape,
                                                 derive_seed(seed, 0xab)))));
  return rep;
}

}  // namespace entsub
