#pragma once

#include <string>
#include <vector>

namespace entsub {

// A computed projective dimension or count.  value -1 encodes the empty
// projective set.  status is "exact" when a closed-form result covers the
// case, "expected-conjectural" when only the generic upper bound is used.
struct DimReport {
  long long value = 0;
  std::string status;
  std::string formula;
};

enum class VarietyKind { segre, veronese, grassmannian };

struct VarietySpec {
  VarietyKind kind = VarietyKind::segre;
  std::vector<int> dims;  // segre local dimensions d_1..d_m
  int d = 0;              // veronese / grassmannian ambient dimension
  int m = 0;              // veronese power / grassmannian factor count
  int r = 1;

  static VarietySpec segre(std::vector<int> dims, int r);
  static VarietySpec veronese(int d, int m, int r);
  static VarietySpec grassmannian(int d, int m, int r);

  long long ambient_affine_dim() const;
  long long ambient_projective_dim() const { return ambient_affine_dim() - 1; }
  long long variety_dim() const;  // projective dimension of the rank-1 locus
};

// Projective dimension of the r-th secant variety.
DimReport secant_dim(const VarietySpec& spec);

enum class SubspaceKind { standard, symmetric, antisymmetric };

SubspaceKind subspace_kind_from_string(const std::string& s);
std::string to_string(SubspaceKind k);

// Largest projective dimension of a subspace avoiding all border-rank-<=r
// states.  params: local dims for standard, {d, m} for symmetric and
// antisymmetric.
DimReport max_entangled_dim(SubspaceKind kind, const std::vector<int>& params, int r);

struct Resource {
  enum class Kind { none, ghz, bipartite_schmidt };
  Kind kind = Kind::none;
  int r = 1;

  static Resource none() { return {Kind::none, 1}; }
  static Resource ghz(int r) { return {Kind::ghz, r}; }
  static Resource bipartite_schmidt(int r) { return {Kind::bipartite_schmidt, r}; }
};

Resource resource_from_string(const std::string& s);
std::string to_string(const Resource& res);

// Largest n for which n generic states are locally unambiguously
// discriminable with the given resource.
DimReport lusd_generic_count(const std::vector<int>& local_dims, const Resource& res);

// Maximum negative-eigenvalue count of a witness for rank-r entanglement.
DimReport max_witness_neg_eigs(SubspaceKind kind, const std::vector<int>& params, int r);

long long binomial(long long n, long long k);

}  // namespace entsub
