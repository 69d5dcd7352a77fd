#include <Eigen/Dense>

#include "doctest.h"
#include "entsub/lusd.hpp"
#include "entsub/rng.hpp"
#include "entsub/tensor.hpp"

using namespace entsub;

namespace {

Tensor basis_state(const std::vector<int>& shape, const std::vector<int>& idx) {
  Tensor t(shape);
  t.at(idx) = 1.0;
  return t;
}

LusdInstance random_instance(std::vector<int> dims, Resource res, int n, std::uint64_t seed) {
  LusdInstance inst;
  inst.local_dims = std::move(dims);
  inst.resource = res;
  for (int i = 0; i < n; ++i)
    inst.states.push_back(random_tensor(inst.local_dims, derive_seed(seed, i)));
  return inst;
}

// (A_1 (x) ... (x) A_m) t, entry by entry
Tensor apply_product_operator(const Tensor& t, const std::vector<Eigen::MatrixXcd>& ops) {
  Tensor out(t.shape);
  std::vector<int> idx(t.shape.size(), 0);
  do {
    std::vector<int> src(t.shape.size(), 0);
    cdouble acc = 0;
    do {
      cdouble c = t.at(src);
      for (std::size_t j = 0; j < ops.size(); ++j) c *= ops[j](idx[j], src[j]);
      acc += c;
    } while (next_multi_index(src, t.shape));
    out.at(idx) = acc;
  } while (next_multi_index(idx, t.shape));
  return out;
}

}  // namespace

TEST_CASE("certificate accepts orthogonal product pairs") {
  LusdInstance inst;
  inst.local_dims = {2, 2};
  Tensor e11 = basis_state({2, 2}, {0, 0});
  Tensor e22 = basis_state({2, 2}, {1, 1});
  Tensor e12 = basis_state({2, 2}, {0, 1});

  inst.states = {e11, e22};
  DualCertificate c1 = check_certificate(inst, {e11, e22});
  CHECK(c1.ok);
  CHECK(c1.failure.empty());
  CHECK(std::abs(c1.pairing(0, 0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(c1.pairing(1, 1)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(c1.pairing(0, 1)) < 1e-14);
  CHECK(std::abs(c1.pairing(1, 0)) < 1e-14);
  CHECK(c1.rank_residuals[0] == 0.0);
  CHECK(c1.rank_residuals[1] == 0.0);

  // the pairing is bilinear, not Hermitian: e11 against e12 vanishes without
  // any conjugation entering
  inst.states = {e11, e12};
  DualCertificate c2 = check_certificate(inst, {e11, e12});
  CHECK(c2.ok);
  CHECK(std::abs(c2.pairing(0, 1)) < 1e-14);

  // a global phase on a state only rotates the pairing's phases
  LusdInstance phased = inst;
  phased.states[1] *= cdouble(0.0, 1.0);
  DualCertificate c3 = check_certificate(phased, {e11, e12});
  CHECK(c3.ok);
  CHECK(std::abs(std::abs(c3.pairing(1, 1)) - std::abs(c2.pairing(1, 1))) < 1e-14);
}

TEST_CASE("certificate rejects a dual outside the resource image") {
  LusdInstance inst;
  inst.local_dims = {3, 3};
  inst.resource = Resource::bipartite_schmidt(1);
  inst.states = {random_tensor({3, 3}, 5)};
  Tensor dual = random_rank_r({3, 3}, 2, 77);

  DualCertificate bad = check_certificate(inst, {dual});
  CHECK_FALSE(bad.ok);
  CHECK(bad.rank_residuals[0] > 0.1);
  CHECK(bad.failure.find("resource image") != std::string::npos);

  // the same dual is fine once the resource affords Schmidt rank 2
  inst.resource = Resource::bipartite_schmidt(2);
  DualCertificate good = check_certificate(inst, {dual});
  CHECK(good.rank_residuals[0] < 1e-12);
}

TEST_CASE("membership residual distinguishes the resource images") {
  CHECK(membership_residual(random_product({2, 2, 2}, 71), Resource::none(), {2, 2, 2}) < 1e-12);
  CHECK(membership_residual(random_rank_r({3, 3, 2}, 2, 72), Resource::ghz(2), {3, 3, 2}) < 1e-12);
  CHECK(membership_residual(random_tensor({3, 3, 2}, 73), Resource::ghz(2), {3, 3, 2}) > 1e-2);

  Tensor m2 = random_rank_r({4, 4}, 2, 74);
  CHECK(membership_residual(m2, Resource::bipartite_schmidt(2), {4, 4}) < 1e-12);
  CHECK(membership_residual(m2, Resource::bipartite_schmidt(1), {4, 4}) > 1e-1);

  CHECK_THROWS_AS(membership_residual(m2, Resource::none(), {3, 3}), std::invalid_argument);
}

TEST_CASE("find_duals solves the qubit pair threshold and fails above it") {
  LusdInstance i3 = random_instance({2, 2}, Resource::none(), 3, 81);
  FindDualsReport r3 = find_duals(i3, 16, 82);
  REQUIRE(r3.ok);
  CHECK(r3.certificate.ok);
  for (const Tensor& d : r3.certificate.duals) {
    CHECK(schmidt_rank(d) == 1);
    CHECK(d.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
  for (int a = 0; a < 3; ++a) {
    CHECK(std::abs(r3.certificate.pairing(a, a)) > 1e-2);
    for (int b = 0; b < 3; ++b)
      if (a != b) CHECK(std::abs(r3.certificate.pairing(a, b)) < 1e-8);
  }

  // identical inputs reproduce the identical certificate
  FindDualsReport again = find_duals(i3, 16, 82);
  REQUIRE(again.ok);
  CHECK((again.certificate.pairing - r3.certificate.pairing).norm() == 0.0);

  // four generic states exceed what product duals can separate
  LusdInstance i4 = random_instance({2, 2}, Resource::none(), 4, 83);
  FindDualsReport r4 = find_duals(i4, 16, 84);
  CHECK_FALSE(r4.ok);
  CHECK(r4.failed_index == 0);
  CHECK(r4.best_off_diagonal.size() == 1);
  CHECK(r4.best_off_diagonal[0] > 1e-6);

  CHECK_THROWS_AS(find_duals(i3, 0, 82), std::invalid_argument);
}

TEST_CASE("rescaling states and duals never changes the verdict") {
  LusdInstance inst = random_instance({2, 2}, Resource::none(), 3, 81);
  FindDualsReport rep = find_duals(inst, 16, 82);
  REQUIRE(rep.ok);

  Rng rng(83);
  LusdInstance scaled = inst;
  std::vector<Tensor> duals = rep.certificate.duals;
  for (Tensor& s : scaled.states) s *= rng.cnormal();
  for (Tensor& d : duals) d *= rng.cnormal();
  DualCertificate cert = check_certificate(scaled, duals);
  CHECK(cert.ok);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      CHECK(std::abs(cert.pairing(a, b)) ==
            doctest::Approx(std::abs(rep.certificate.pairing(a, b))).epsilon(1e-10));
}

TEST_CASE("product basis changes move states and duals contragradiently") {
  LusdInstance inst = random_instance({2, 2, 2}, Resource::none(), 4, 61);
  FindDualsReport rep = find_duals(inst, 16, 62);
  REQUIRE(rep.ok);

  Rng rng(63);
  std::vector<Eigen::MatrixXcd> ops(3), contra(3);
  for (int j = 0; j < 3; ++j) {
    ops[j] = Eigen::MatrixXcd(2, 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) ops[j](r, c) = rng.cnormal();
    contra[j] = ops[j].inverse().transpose();
  }
  std::vector<Tensor> new_states, new_duals;
  for (const Tensor& s : inst.states) new_states.push_back(apply_product_operator(s, ops));
  for (const Tensor& d : rep.certificate.duals)
    new_duals.push_back(apply_product_operator(d, contra));

  Eigen::MatrixXcd before = bilinear_pairing(rep.certificate.duals, inst.states);
  Eigen::MatrixXcd after = bilinear_pairing(new_duals, new_states);
  CHECK((after - before).cwiseAbs().maxCoeff() < 1e-12);

  // and the transformed pair still certifies
  LusdInstance moved = inst;
  moved.states = new_states;
  CHECK(check_certificate(moved, new_duals).ok);
}

TEST_CASE("bipartite duals stay within the resource Schmidt rank") {
  LusdInstance inst = random_instance({3, 3}, Resource::bipartite_schmidt(2), 8, 91);
  FindDualsReport rep = find_duals(inst, 16, 92);
  REQUIRE(rep.ok);
  CHECK(rep.certificate.duals.size() == 8);
  for (const Tensor& d : rep.certificate.duals) CHECK(schmidt_rank(d) <= 2);
  for (double r : rep.certificate.rank_residuals) CHECK(r < 1e-8);
}

TEST_CASE("ghz resource at the multipartite threshold") {
  LusdInstance i12 = random_instance({3, 3, 2}, Resource::ghz(2), 12, 31);
  FindDualsReport r12 = find_duals(i12, 16, 32);
  REQUIRE(r12.ok);
  double max_off = 0.0, min_diag = 1.0, max_res = 0.0;
  for (int a = 0; a < 12; ++a) {
    min_diag = std::min(min_diag, std::abs(r12.certificate.pairing(a, a)));
    max_res = std::max(max_res, r12.certificate.rank_residuals[a]);
    for (int b = 0; b < 12; ++b)
      if (a != b) max_off = std::max(max_off, std::abs(r12.certificate.pairing(a, b)));
  }
  CHECK(max_off < 1e-10);
  CHECK(min_diag > 1e-3);
  CHECK(max_res < 1e-8);

  LusdInstance i13 = random_instance({3, 3, 2}, Resource::ghz(2), 13, 33);
  FindDualsReport r13 = find_duals(i13, 16, 34);
  CHECK_FALSE(r13.ok);
  CHECK(r13.failed_index == 0);
  CHECK(r13.best_off_diagonal[0] > 1e-5);
}

TEST_CASE("threshold demonstration statistics") {
  ThresholdStats qubits = threshold_demo({2, 2}, Resource::none(), 50, 21);
  CHECK(qubits.n_star == 3);
  CHECK(qubits.trials == 50);
  CHECK(qubits.successes_at_n == 50);
  CHECK(qubits.successes_above == 0);
  CHECK(qubits.conclusive_failures_above == 50);
  CHECK(qubits.note.find("complement Schmidt rank") != std::string::npos);

  ThresholdStats mixed = threshold_demo({2, 3}, Resource::none(), 5, 22);
  CHECK(mixed.n_star == 4);
  CHECK(mixed.successes_at_n == 5);
  CHECK(mixed.successes_above == 0);

  ThresholdStats schmidt = threshold_demo({3, 3}, Resource::bipartite_schmidt(2), 5, 23);
  CHECK(schmidt.n_star == 8);
  CHECK(schmidt.successes_at_n == 5);
  CHECK(schmidt.successes_above == 0);
  CHECK(schmidt.conclusive_failures_above == 5);

  // deterministic for a fixed seed
  ThresholdStats rerun = threshold_demo({2, 3}, Resource::none(), 5, 22);
  CHECK(rerun.successes_at_n == mixed.successes_at_n);
  CHECK(rerun.successes_above == mixed.successes_above);

  CHECK_THROWS_AS(threshold_demo({2, 2}, Resource::none(), 0, 1), std::invalid_argument);
}

TEST_CASE("ghz threshold demonstration on the qutrit pair construction shape") {
  ThresholdStats stats = threshold_demo({3, 3, 2}, Resource::ghz(2), 10, 41);
  CHECK(stats.n_star == 12);
  CHECK(stats.successes_at_n == 10);
  CHECK(stats.successes_above == 0);
  // the complement here is six-dimensional, so failures stay evidence-grade
  CHECK(stats.conclusive_failures_above == 0);
  CHECK(stats.note.find("heuristic") != std::string::npos);
}

TEST_CASE("lusd input validation") {
  LusdInstance inst;
  inst.local_dims = {2, 2};
  CHECK_THROWS_AS(inst.validate(), std::invalid_argument);  // no states

  inst.states = {random_tensor({2, 2}, 1)};
  CHECK_NOTHROW(inst.validate());

  LusdInstance wrong_shape = inst;
  wrong_shape.states.push_back(random_tensor({2, 3}, 2));
  CHECK_THROWS_AS(wrong_shape.validate(), std::invalid_argument);

  LusdInstance zero_state = inst;
  zero_state.states.push_back(Tensor({2, 2}));
  CHECK_THROWS_AS(zero_state.validate(), std::invalid_argument);

  LusdInstance bad_rank = inst;
  bad_rank.resource = Resource::ghz(0);
  CHECK_THROWS_AS(bad_rank.validate(), std::invalid_argument);

  LusdInstance tripartite;
  tripartite.local_dims = {2, 2, 2};
  tripartite.states = {random_tensor({2, 2, 2}, 3)};
  tripartite.resource = Resource::bipartite_schmidt(1);
  CHECK_THROWS_AS(tripartite.validate(), std::invalid_argument);

  CHECK_THROWS_AS(check_certificate(inst, {}), std::invalid_argument);
  CHECK_THROWS_AS(check_certificate(inst, {Tensor({2, 2})}), std::invalid_argument);
  CHECK_THROWS_AS(schmidt_rank(random_tensor({2, 2, 2}, 4)), std::invalid_argument);
  CHECK(schmidt_rank(random_tensor({3, 4}, 6)) == 3);
}
