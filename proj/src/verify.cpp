#include "entsub/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "entsub/rng.hpp"

namespace entsub {

namespace {

cdouble det_small(const Eigen::MatrixXcd& x) {
  const Eigen::Index n = x.rows();
  if (n == 1) return x(0, 0);
  if (n == 2) return x(0, 0) * x(1, 1) - x(0, 1) * x(1, 0);
  if (n == 3)
    return x(0, 0) * (x(1, 1) * x(2, 2) - x(1, 2) * x(2, 1)) -
           x(0, 1) * (x(1, 0) * x(2, 2) - x(1, 2) * x(2, 0)) +
           x(0, 2) * (x(1, 0) * x(2, 1) - x(1, 1) * x(2, 0));
  return x.determinant();
}

// Adjugate via cofactors; sizes here are r+1, i.e. small.
Eigen::MatrixXcd adjugate(const Eigen::MatrixXcd& x) {
  const Eigen::Index n = x.rows();
  Eigen::MatrixXcd adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1.0;
    return adj;
  }
  Eigen::MatrixXcd minor(n - 1, n - 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index a = 0, ai = 0; a < n; ++a) {
        if (a == i) continue;
        for (Eigen::Index b = 0, bj = 0; b < n; ++b) {
          if (b == j) continue;
          minor(ai, bj) = x(a, b);
          ++bj;
        }
        ++ai;
      }
      double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      adj(j, i) = sign * det_small(minor);  // transpose of the cofactor matrix
    }
  }
  return adj;
}

struct FlatBlock {
  std::vector<Eigen::MatrixXcd> basis_flat;       // one flattening per basis tensor
  std::vector<std::vector<int>> row_sets, col_sets;  // (r+1)-subsets
};

struct MinorContext {
  int r = 1;
  Eigen::MatrixXcd gram;  // B^H B, for the element norm
  std::vector<FlatBlock> blocks;
};

MinorContext make_minor_context(const Subspace& sub, int r) {
  if (r < 1) throw std::invalid_argument("r must be at least 1");
  if (sub.affine_dim() == 0) throw std::invalid_argument("empty subspace");
  MinorContext ctx;
  ctx.r = r;
  Eigen::MatrixXcd bm = sub.basis_matrix();
  ctx.gram = bm.adjoint() * bm;

  const int m = static_cast<int>(sub.ambient_shape.size());
  // canonical flattenings: proper, nonempty row-mode sets containing mode 0
  for (int mask = 0; mask < (1 << (m - 1)); ++mask) {
    std::vector<int> row_modes = {0};
    for (int b = 0; b < m - 1; ++b)
      if (mask & (1 << b)) row_modes.push_back(b + 1);
    if (static_cast<int>(row_modes.size()) == m) continue;
    FlatBlock block;
    for (const auto& t : sub.basis) block.basis_flat.push_back(flatten(t, row_modes));
    const int rows = static_cast<int>(block.basis_flat[0].rows());
    const int cols = static_cast<int>(block.basis_flat[0].cols());
    if (rows < r + 1 || cols < r + 1) continue;
    block.row_sets = increasing_tuples(rows, r + 1);
    block.col_sets = increasing_tuples(cols, r + 1);
    ctx.blocks.push_back(std::move(block));
  }
  return ctx;
}

// Objective value and, when grad is non-null, its gradient in the 2k real
// coordinates (Re c_0, Im c_0, ...).
double eval_minor_objective(const MinorContext& ctx, const Eigen::VectorXcd& c,
                            Eigen::VectorXd* grad) {
  const int k = static_cast<int>(c.size());
  if (c.norm() == 0.0) throw std::invalid_argument("zero coefficient vector");
  const int q = ctx.r + 1;

  double raw = 0.0;
  Eigen::VectorXcd gacc = Eigen::VectorXcd::Zero(k);  // sum conj(d) * dd/dc_l

  Eigen::MatrixXcd sub(q, q), fsub(q, q);
  for (const auto& block : ctx.blocks) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(block.basis_flat[0].rows(),
                                                block.basis_flat[0].cols());
    for (int l = 0; l < k; ++l) a += c(l) * block.basis_flat[l];
    for (const auto& rows : block.row_sets) {
      for (const auto& cols : block.col_sets) {
        for (int i = 0; i < q; ++i)
          for (int j = 0; j < q; ++j) sub(i, j) = a(rows[i], cols[j]);
        cdouble d = det_small(sub);
        raw += std::norm(d);
        if (grad) {
          Eigen::MatrixXcd adj = adjugate(sub);
          for (int l = 0; l < k; ++l) {
            const Eigen::MatrixXcd& f = block.basis_flat[l];
            cdouble deriv = 0.0;
            for (int i = 0; i < q; ++i)
              for (int j = 0; j < q; ++j) deriv += adj(j, i) * f(rows[i], cols[j]);
            gacc(l) += std::conj(d) * deriv;
          }
        }
      }
    }
  }

  Eigen::VectorXcd gc = ctx.gram * c;
  double n = std::real(c.dot(gc));  // element norm squared
  if (n <= 0.0) throw std::invalid_argument("zero element");
  double npow = std::pow(n, q);
  double value = raw / npow;

  if (grad) {
    grad->resize(2 * k);
    for (int l = 0; l < k; ++l) {
      double raw_re = 2.0 * std::real(gacc(l));
      double raw_im = -2.0 * std::imag(gacc(l));
      double n_re = 2.0 * std::real(gc(l));
      double n_im = 2.0 * std::imag(gc(l));
      (*grad)(2 * l) = raw_re / npow - q * raw / (npow * n) * n_re;
      (*grad)(2 * l + 1) = raw_im / npow - q * raw / (npow * n) * n_im;
    }
  }
  return value;
}

Eigen::VectorXcd complex_view(const Eigen::VectorXd& x) {
  Eigen::VectorXcd c(x.size() / 2);
  for (Eigen::Index l = 0; l < c.size(); ++l) c(l) = cdouble(x(2 * l), x(2 * l + 1));
  return c;
}

}  // namespace

double minor_objective(const Subspace& sub, int r, const Eigen::VectorXcd& coeffs) {
  MinorContext ctx = make_minor_context(sub, r);
  return eval_minor_objective(ctx, coeffs, nullptr);
}

double minor_objective_gradient(const Subspace& sub, int r, const Eigen::VectorXcd& coeffs,
                                Eigen::VectorXd& grad) {
  MinorContext ctx = make_minor_context(sub, r);
  return eval_minor_objective(ctx, coeffs, &grad);
}

OptimizationReport search_low_rank_element(const Subspace& sub, int r, int starts,
                                           std::uint64_t seed, const SearchOptions& opts) {
  if (starts < 1) throw std::invalid_argument("starts must be at least 1");
  MinorContext ctx = make_minor_context(sub, r);
  const int k = sub.affine_dim();

  OptimizationReport report;
  report.starts = starts;
  int best_index = -1;

  for (int s = 0; s < starts; ++s) {
    std::uint64_t start_seed = derive_seed(seed, static_cast<std::uint64_t>(s));
    Rng rng(start_seed);
    Eigen::VectorXcd c(k);
    for (int l = 0; l < k; ++l) c(l) = rng.cnormal();
    c /= c.norm();

    Eigen::VectorXd g;
    double f = eval_minor_objective(ctx, c, &g);
    double step = 1.0;
    int it = 0;
    bool converged = false;
    for (; it < opts.max_iterations; ++it) {
      double gnorm2 = g.squaredNorm();
      if (gnorm2 < 1e-32 || f < 1e-300) {
        converged = true;
        break;
      }
      step = std::min(step * 2.0, 1e6);
      Eigen::VectorXcd gc = complex_view(g);
      bool accepted = false;
      Eigen::VectorXcd c_next;
      double f_next = f;
      while (step > 1e-18) {
        c_next = c - step * gc;
        double nn = c_next.norm();
        if (nn > 1e-12) {
          c_next /= nn;
          f_next = eval_minor_objective(ctx, c_next, nullptr);
          if (f_next <= f - 0.25 * step * gnorm2) {
            accepted = true;
            break;
          }
        }
        step *= 0.5;
      }
      if (!accepted) {
        converged = true;
        break;
      }
      // the doubling search accepts the largest passing step, which in a
      // narrow valley sits on the far wall and barely contracts; the half
      // step often lands near the bottom, so keep it when it is better
      Eigen::VectorXcd c_half = c - 0.5 * step * gc;
      double nh = c_half.norm();
      if (nh > 1e-12) {
        c_half /= nh;
        double f_half = eval_minor_objective(ctx, c_half, nullptr);
        if (f_half < f_next) {
          c_next = c_half;
          f_next = f_half;
        }
      }
      double rel = (f - f_next) / std::max(f, 1e-300);
      c = c_next;
      f = eval_minor_objective(ctx, c, &g);
      if (rel < opts.step_tolerance) {
        converged = true;
        break;
      }
    }

    report.per_start.push_back({start_seed, f, it, converged});
    if (best_index < 0 || f < report.per_start[best_index].final_value) {
      best_index = s;
      report.best_point = c;
    }
  }

  report.best_value = report.per_start[best_index].final_value;
  if (report.best_value < opts.tau_zero) {
    Tensor elem = sub.element(report.best_point);
    report.verdict =
        flattening_rank(elem) <= r ? "low-rank-element-found" : "inconclusive";
  } else if (report.best_value > opts.tau_pos) {
    report.verdict = "no-low-rank-found";
  } else {
    report.verdict = "inconclusive";
  }
  return report;
}

AlsResult als_rank_r_approx(const Tensor& t, int r, const AlsOptions& opts) {
  if (r < 1) throw std::invalid_argument("r must be at least 1");
  const int m = t.order();
  if (m < 2) throw std::invalid_argument("need at least two modes");
  AlsResult result;
  const double tnorm = t.norm();
  if (tnorm == 0.0) {
    result.approx = Tensor(t.shape);
    return result;
  }

  Rng rng(derive_seed(opts.seed, 0x616c73));
  std::vector<Eigen::MatrixXcd> factors(m);
  for (int j = 0; j < m; ++j) {
    factors[j].resize(t.shape[j], r);
    for (int a = 0; a < t.shape[j]; ++a)
      for (int s = 0; s < r; ++s) factors[j](a, s) = rng.cnormal();
  }

  std::vector<Eigen::MatrixXcd> unfoldings(m);
  for (int j = 0; j < m; ++j) unfoldings[j] = flatten(t, {j});

  auto assemble = [&]() {
    Tensor approx(t.shape);
    for (int s = 0; s < r; ++s) {
      std::vector<Eigen::VectorXcd> cols;
      cols.reserve(m);
      for (int j = 0; j < m; ++j) cols.push_back(factors[j].col(s));
      approx += outer_product(cols);
    }
    return approx;
  };

  double prev_res = 1.0;
  for (int sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
    for (int j = 0; j < m; ++j) {
      // Khatri-Rao matrix over the complementary modes, rows ordered like the
      // columns of flatten(t, {j}): ascending mode order, last index fastest.
      std::vector<int> comp_modes, comp_shape;
      for (int i = 0; i < m; ++i)
        if (i != j) {
          comp_modes.push_back(i);
          comp_shape.push_back(t.shape[i]);
        }
      Eigen::Index big = unfoldings[j].cols();
      Eigen::MatrixXcd k(big, r);
      std::vector<int> idx(comp_modes.size(), 0);
      Eigen::Index row = 0;
      do {
        for (int s = 0; s < r; ++s) {
          cdouble p(1.0, 0.0);
          for (std::size_t a = 0; a < comp_modes.size(); ++a)
            p *= factors[comp_modes[a]](idx[a], s);
          k(row, s) = p;
        }
        ++row;
      } while (next_multi_index(idx, comp_shape));
      // least squares K X ~= T_(j)^T, then A_j = X^T
      Eigen::MatrixXcd x =
          k.completeOrthogonalDecomposition().solve(unfoldings[j].transpose());
      factors[j] = x.transpose();
    }

    result.sweeps = sweep;
    Tensor approx = assemble();
    double res = (t - approx).norm() / tnorm;
    result.approx = std::move(approx);
    result.residual = res;

    double max_component = 0.0;
    for (int s = 0; s < r; ++s) {
      double comp = 1.0;
      for (int j = 0; j < m; ++j) comp *= factors[j].col(s).norm();
      max_component = std::max(max_component, comp);
    }
    if (max_component > opts.factor_norm_cap) {
      result.diverged = true;
      break;
    }
    if (res < 1e-14) break;  // exact fit up to roundoff
    if (sweep > 1 && std::abs(prev_res - res) < opts.rel_tol * std::max(prev_res, 1e-300))
      break;
    prev_res = res;
  }
  return result;
}

Eigen::MatrixXcd qqq_flattening(const Tensor& t) {
  if (t.shape != std::vector<int>{3, 3, 2})
    throw std::invalid_argument("expected a tensor of shape 3 x 3 x 2");
  Eigen::MatrixXcd m(3, 6);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 2; ++k) m(i, 3 * k + j) = t.at({i, j, k});
  return m;
}

Eigen::MatrixXcd qqq_partial_transpose_flattening(const Tensor& t) {
  return qqq_flattening(permute_modes(t, {1, 0, 2}));
}

namespace {

struct QqqCoeffs {
  cdouble lam{}, gam{};
  std::array<cdouble, 4> a{}, b{};
};

Eigen::MatrixXcd layout_m(const QqqCoeffs& q) {
  Eigen::MatrixXcd m(3, 6);
  m << q.lam, q.a[0], q.b[0], q.gam, 0.0, q.a[3],
      q.a[1], q.lam, 0.0, 0.0, q.gam, q.b[3],
      q.b[1], 0.0, q.lam, q.a[2], q.b[2], q.gam;
  return m;
}

// Swapping the first two tensor modes permutes the coefficients pairwise and
// exchanges the two layouts.
QqqCoeffs partial_transpose(const QqqCoeffs& q) {
  QqqCoeffs out = q;
  std::swap(out.a[0], out.a[1]);
  std::swap(out.a[2], out.a[3]);
  std::swap(out.b[0], out.b[1]);
  std::swap(out.b[2], out.b[3]);
  return out;
}

Eigen::MatrixXcd layout_mg(const QqqCoeffs& q) { return layout_m(partial_transpose(q)); }

// Rotating the 3x6 layout by 180 degrees maps it to the layout of these
// relabeled coefficients, with column c mapping to 7-c and equal minors.
QqqCoeffs rotate(const QqqCoeffs& q) {
  QqqCoeffs out;
  out.lam = q.gam;
  out.gam = q.lam;
  out.a = {q.b[2], q.b[3], q.b[0], q.b[1]};
  out.b = {q.a[2], q.a[3], q.a[0], q.a[1]};
  return out;
}

cdouble det_cols(const Eigen::MatrixXcd& m, const std::array<int, 3>& cols) {
  Eigen::Matrix3cd s;
  for (int j = 0; j < 3; ++j) s.col(j) = m.col(cols[j] - 1);
  return det_small(s);
}

struct Leaf {
  bool found = false;
  bool use_pt = false;
  std::array<int, 3> cols{};
  std::string label;
};

std::array<int, 3> rotate_cols(const std::array<int, 3>& cols) {
  std::array<int, 3> out = {7 - cols[2], 7 - cols[1], 7 - cols[0]};
  return out;
}

Leaf walk_tree(const QqqCoeffs& q, double zero_tol, double minor_tol, int depth);

// lam != 0, at least three alpha entries nonzero, beta_3 != 0, beta_4 == 0
// (which forces beta_1, beta_2 != 0 for generic parameters).
Leaf walk_case_3b(const QqqCoeffs& q, double zero_tol, double minor_tol) {
  auto z = [&](cdouble x) { return std::abs(x) <= zero_tol; };
  if (z(q.a[3])) {
    if (z(q.gam)) return {true, false, {1, 3, 4}, "3(b)(i)"};
    return {true, true, {4, 5, 6}, "3(b)(ii)"};
  }
  if (z(q.gam)) return {true, false, {2, 3, 6}, "3(b)(iii)"};
  if (!z(q.a[1])) return {true, true, {2, 3, 5}, "3(b)(iv)"};
  // the parameter-dependent case: alpha_2 = beta_4 = 0 with everything else
  // in play; test the three designated minors of the partial-transpose
  // layout and keep the largest
  Eigen::MatrixXcd mg = layout_mg(q);
  const std::array<std::array<int, 3>, 3> candidates = {
      {{1, 2, 3}, {4, 5, 6}, {3, 4, 6}}};
  std::array<int, 3> best{};
  double best_abs = 0.0;
  for (const auto& cols : candidates) {
    double mag = std::abs(det_cols(mg, cols));
    if (mag > best_abs) {
      best_abs = mag;
      best = cols;
    }
  }
  if (best_abs > minor_tol) return {true, true, best, "3(b)(v)"};
  return {false, true, {0, 0, 0}, "3(b)(v)"};
}

Leaf walk_tree(const QqqCoeffs& q, double zero_tol, double minor_tol, int depth) {
  if (depth > 2) throw std::logic_error("certificate case recursion too deep");
  auto z = [&](cdouble x) { return std::abs(x) <= zero_tol; };
  auto nz = [&](cdouble x) { return std::abs(x) > zero_tol; };
  const bool a_zero = z(q.a[0]) && z(q.a[1]) && z(q.a[2]) && z(q.a[3]);
  const bool b_zero = z(q.b[0]) && z(q.b[1]) && z(q.b[2]) && z(q.b[3]);

  if (z(q.lam)) {
    if (!a_zero) {
      if (nz(q.a[0]) && nz(q.a[1]) && nz(q.a[2])) return {true, false, {1, 2, 4}, "1(a)"};
      if (nz(q.a[0]) && nz(q.a[1]) && nz(q.a[3])) return {true, true, {1, 2, 4}, "1(b)"};
      if (nz(q.a[0]) && nz(q.a[2]) && nz(q.a[3])) {
        if (z(q.gam)) return {true, true, {1, 4, 6}, "1(c)(i)"};
        return {true, false, {2, 4, 5}, "1(c)(ii)"};
      }
      if (nz(q.a[1]) && nz(q.a[2]) && nz(q.a[3])) {
        if (z(q.gam)) return {true, false, {1, 4, 6}, "1(d)(i)"};
        return {true, true, {2, 4, 5}, "1(d)(ii)"};
      }
      throw std::invalid_argument("coefficient zero pattern violates genericity");
    }
    if (b_zero) {
      // only the gamma slice remains
      return {true, false, {4, 5, 6}, "1(e)"};
    }
    if (z(q.gam)) {
      Leaf inner = walk_tree(rotate(q), zero_tol, minor_tol, depth + 1);
      return {inner.found, inner.use_pt, inner.found ? rotate_cols(inner.cols) : inner.cols,
              "1(e)(i)->" + inner.label};
    }
    if (nz(q.b[0])) return {true, true, {1, 4, 5}, "1(e)(ii)"};
    if (nz(q.b[1]) && nz(q.b[2]) && nz(q.b[3])) return {true, false, {1, 4, 6}, "1(e)(iii)"};
    throw std::invalid_argument("coefficient zero pattern violates genericity");
  }

  if (a_zero) {
    if (z(q.b[2]) && z(q.b[3])) return {true, false, {1, 2, 3}, "2(a)"};
    if (nz(q.b[2])) {
      if (z(q.gam)) return {true, false, {1, 2, 5}, "2(b)(i)"};
      return {true, false, {2, 4, 6}, "2(b)(ii)"};
    }
    if (z(q.gam)) return {true, true, {1, 2, 5}, "2(c)(i)"};
    return {true, false, {2, 4, 6}, "2(c)(ii)"};
  }

  int a_nonzero = 0;
  for (const auto& x : q.a)
    if (nz(x)) ++a_nonzero;
  if (a_nonzero < 3)
    throw std::invalid_argument("coefficient zero pattern violates genericity");

  if (z(q.b[2]) && z(q.b[3])) {
    if (nz(q.a[2])) return {true, true, {2, 3, 6}, "3(a)(i)"};
    if (nz(q.a[3])) return {true, false, {2, 3, 6}, "3(a)(ii)"};
    throw std::invalid_argument("coefficient zero pattern violates genericity");
  }
  if (nz(q.b[2]) && z(q.b[3])) return walk_case_3b(q, zero_tol, minor_tol);
  if (z(q.b[2]) && nz(q.b[3])) {
    Leaf inner = walk_case_3b(partial_transpose(q), zero_tol, minor_tol);
    return {inner.found, !inner.use_pt, inner.cols, "3(c)->" + inner.label};
  }

  // case 3(d): beta_3 and beta_4 both nonzero
  if (z(q.a[3])) {
    if (z(q.gam)) return {true, false, {1, 4, 6}, "3(d)(i)"};
    return {true, true, {3, 4, 5}, "3(d)(ii)"};
  }
  if (z(q.b[1])) {
    if (nz(q.gam)) return {true, true, {3, 4, 5}, "3(d)(iii)"};
    if (z(q.a[2])) return {true, true, {1, 3, 6}, "3(d)(iv)"};
    return {true, false, {2, 3, 4}, "3(d)(v)"};
  }
  if (z(q.gam)) return {true, true, {2, 3, 4}, "3(d)(vi)"};
  // case 3(d)(vii): everything but possibly alpha_1/beta_1 is nonzero
  if (z(q.a[0])) return {true, false, {2, 4, 5}, "3(d)(vii)"};
  if (z(q.b[0])) return {true, false, {2, 3, 5}, "3(d)(vii)"};
  // the two designated minors cannot both vanish (their normalized sum is
  // -2 alpha_1 beta_4 != 0); pick the larger
  cdouble dm = det_cols(layout_m(q), {2, 3, 6});
  cdouble dg = det_cols(layout_mg(q), {1, 4, 5});
  if (std::abs(dm) <= minor_tol && std::abs(dg) <= minor_tol)
    return {false, false, {0, 0, 0}, "3(d)(vii)"};
  if (std::abs(dm) >= std::abs(dg)) return {true, false, {2, 3, 6}, "3(d)(vii)"};
  return {true, true, {1, 4, 5}, "3(d)(vii)"};
}

}  // namespace

CertificateResult case_tree_certificate(cdouble lam, cdouble gam, const Eigen::Vector2cd& c_de,
                                        const Eigen::Vector2cd& c_tk,
                                        const ConstructionParams& params) {
  if (!params.qutrit_params_independent())
    throw std::invalid_argument("parameter vectors must be linearly independent");
  if (!params.qutrit_params_generic())
    throw std::invalid_argument("parameters violate the genericity requirement");

  QqqCoeffs q;
  q.lam = lam;
  q.gam = gam;
  for (int i = 0; i < 4; ++i) {
    q.a[i] = c_de(0) * params.delta(i) + c_de(1) * params.eps(i);
    q.b[i] = c_tk(0) * params.theta(i) + c_tk(1) * params.kappa(i);
  }
  double scale = std::max(std::abs(q.lam), std::abs(q.gam));
  for (int i = 0; i < 4; ++i)
    scale = std::max({scale, std::abs(q.a[i]), std::abs(q.b[i])});
  if (scale == 0.0) throw std::invalid_argument("all-zero input");

  Leaf leaf = walk_tree(q, 1e-12 * scale, 1e-10 * scale * scale * scale, 0);

  CertificateResult res;
  res.found = leaf.found;
  res.case_label = leaf.label;
  res.matrix_choice = leaf.use_pt ? "M_partial_transpose" : "M";
  if (leaf.found) {
    res.columns = leaf.cols;
    res.determinant = det_cols(leaf.use_pt ? layout_mg(q) : layout_m(q), leaf.cols);
  }
  return res;
}

std::optional<CertificateResult> brute_force_rank3_certificate(const Tensor& t, double tol) {
  if (t.shape != std::vector<int>{3, 3, 2})
    throw std::invalid_argument("expected a tensor of shape 3 x 3 x 2");
  double n = t.norm();
  if (n == 0.0) throw std::invalid_argument("zero element");
  Tensor u = (cdouble(1.0 / n, 0.0)) * t;

  const Eigen::MatrixXcd m = qqq_flattening(u);
  const Eigen::MatrixXcd g = qqq_partial_transpose_flattening(u);

  std::optional<CertificateResult> best;
  double best_abs = tol;
  for (const auto& cols0 : increasing_tuples(6, 3)) {
    std::array<int, 3> cols = {cols0[0] + 1, cols0[1] + 1, cols0[2] + 1};
    for (int choice = 0; choice < 2; ++choice) {
      cdouble d = det_cols(choice == 0 ? m : g, cols);
      if (std::abs(d) > best_abs) {
        best_abs = std::abs(d);
        CertificateResult res;
        res.found = true;
        res.matrix_choice = choice == 0 ? "M" : "M_partial_transpose";
        res.columns = cols;
        res.case_label = "brute-force";
        res.determinant = d;
        best = res;
      }
    }
  }
  return best;
}

DisjointnessStats generic_disjointness_trial(const VarietySpec& spec, int codim, int trials,
                                             std::uint64_t seed, int starts,
                                             const SearchOptions& opts) {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  std::vector<int> shape;
  Symmetry symmetry = Symmetry::none;
  int r_search = spec.r;
  switch (spec.kind) {
    case VarietyKind::segre:
      shape = spec.dims;
      break;
    case VarietyKind::veronese:
      shape.assign(spec.m, spec.d);
      symmetry = Symmetry::symmetric;
      break;
    case VarietyKind::grassmannian:
      shape.assign(spec.m, spec.d);
      symmetry = Symmetry::antisymmetric;
      // bipartite antisymmetric rank-<=r states have matrix rank <= 2r
      if (spec.m == 2) r_search = 2 * spec.r;
      break;
  }
  const long long ambient = spec.ambient_affine_dim();
  const long long dim = ambient - codim;
  if (codim < 0 || dim < 1) throw std::invalid_argument("codimension out of range");

  DisjointnessStats stats;
  stats.trials = trials;
  for (int i = 0; i < trials; ++i) {
    Subspace sub = random_subspace(shape, static_cast<int>(dim), symmetry,
                                   derive_seed(seed, 1000 + i));
    OptimizationReport rep = search_low_rank_element(
        sub, r_search, starts, derive_seed(seed, 2000 + i), opts);
    stats.best_values.push_back(rep.best_value);
    if (rep.verdict == "low-rank-element-found") ++stats.hits;
  }
  return stats;
}

}  // namespace entsub
