#include "entsub/dims.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace entsub {

long long binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

VarietySpec VarietySpec::segre(std::vector<int> dims, int r) {
  VarietySpec s;
  s.kind = VarietyKind::segre;
  s.dims = std::move(dims);
  s.r = r;
  if (s.dims.size() < 2) throw std::invalid_argument("need at least two factors");
  for (int d : s.dims)
    if (d < 1) throw std::invalid_argument("local dimensions must be positive");
  if (r < 1) throw std::invalid_argument("r must be positive");
  return s;
}

VarietySpec VarietySpec::veronese(int d, int m, int r) {
  VarietySpec s;
  s.kind = VarietyKind::veronese;
  s.d = d;
  s.m = m;
  s.r = r;
  if (d < 1 || m < 2 || r < 1) throw std::invalid_argument("invalid veronese spec");
  return s;
}

VarietySpec VarietySpec::grassmannian(int d, int m, int r) {
  VarietySpec s;
  s.kind = VarietyKind::grassmannian;
  s.d = d;
  s.m = m;
  s.r = r;
  if (d < 1 || m < 1 || m > d || r < 1) throw std::invalid_argument("invalid grassmannian spec");
  return s;
}

long long VarietySpec::ambient_affine_dim() const {
  switch (kind) {
    case VarietyKind::segre: {
      long long p = 1;
      for (int di : dims) p *= di;
      return p;
    }
    case VarietyKind::veronese:
      return binomial(d + m - 1, m);
    case VarietyKind::grassmannian:
      return binomial(d, m);
  }
  return 0;
}

long long VarietySpec::variety_dim() const {
  switch (kind) {
    case VarietyKind::segre: {
      long long s = 0;
      for (int di : dims) s += di - 1;
      return s;
    }
    case VarietyKind::veronese:
      return d - 1;
    case VarietyKind::grassmannian:
      return static_cast<long long>(m) * (d - m);
  }
  return 0;
}

DimReport secant_dim(const VarietySpec& spec) {
  const long long ambient = spec.ambient_projective_dim();
  const long long dim_x = spec.variety_dim();
  const int r = spec.r;
  DimReport rep;

  if (r == 1) {
    rep.value = dim_x;
    rep.status = "exact";
    rep.formula = "dim of the rank-1 locus";
    return rep;
  }

  switch (spec.kind) {
    case VarietyKind::segre:
      if (spec.dims.size() == 2) {
        const long long d1 = spec.dims[0], d2 = spec.dims[1];
        const long long re = std::min<long long>(r, std::min(d1, d2));
        rep.value = d1 * d2 - 1 - (d1 - re) * (d2 - re);
        rep.status = "exact";
        rep.formula = "d1*d2 - 1 - (d1-min(d1,r))*(d2-min(d2,r)) (matrix rank locus)";
        return rep;
      }
      if (r == 2) {
        rep.value = std::min(ambient, 2 * dim_x + 1);
        rep.status = "exact";
        rep.formula = "min{D, 2*dim X + 1}; second secants of many-factor products are never defective";
        return rep;
      }
      break;
    case VarietyKind::veronese:
      if (spec.m == 2) {
        const long long re = std::min<long long>(r, spec.d);
        rep.value = re * spec.d - binomial(re, 2) - 1;
        rep.status = "exact";
        rep.formula = "r*d - C(r,2) - 1 (symmetric matrix rank locus, defective)";
        return rep;
      }
      break;
    case VarietyKind::grassmannian:
      if (spec.m == 2) {
        const long long re = std::min<long long>(r, spec.d / 2);
        rep.value = 2 * re * (spec.d - re) - re - 1;
        rep.status = "exact";
        rep.formula = "2r(d-r) - r - 1 (antisymmetric matrix rank locus, defective)";
        return rep;
      }
      break;
  }

  rep.value = std::min(ambient, static_cast<long long>(r) * dim_x + r - 1);
  rep.status = "expected-conjectural";
  rep.formula = "min{D, r*dim X + r - 1} (expected dimension bound)";
  return rep;
}

SubspaceKind subspace_kind_from_string(const std::string& s) {
  if (s == "standard") return SubspaceKind::standard;
  if (s == "symmetric") return SubspaceKind::symmetric;
  if (s == "antisymmetric") return SubspaceKind::antisymmetric;
  throw std::invalid_argument("unknown subspace kind: " + s);
}

std::string to_string(SubspaceKind k) {
  switch (k) {
    case SubspaceKind::standard: return "standard";
    case SubspaceKind::symmetric: return "symmetric";
    case SubspaceKind::antisymmetric: return "antisymmetric";
  }
  return "standard";
}

namespace {

VarietySpec spec_for(SubspaceKind kind, const std::vector<int>& params, int r) {
  switch (kind) {
    case SubspaceKind::standard:
      return VarietySpec::segre(params, r);
    case SubspaceKind::symmetric:
      if (params.size() != 2) throw std::invalid_argument("symmetric kind takes {d, m}");
      return VarietySpec::veronese(params[0], params[1], r);
    case SubspaceKind::antisymmetric:
      if (params.size() != 2) throw std::invalid_argument("antisymmetric kind takes {d, m}");
      return VarietySpec::grassmannian(params[0], params[1], r);
  }
  throw std::invalid_argument("bad kind");
}

}  // namespace

DimReport max_entangled_dim(SubspaceKind kind, const std::vector<int>& params, int r) {
  VarietySpec spec = spec_for(kind, params, r);
  DimReport sec = secant_dim(spec);
  DimReport rep;
  rep.value = spec.ambient_projective_dim() - sec.value - 1;
  rep.status = sec.status;
  rep.formula = "ambient projective dim - secant dim - 1, with " + sec.formula;
  return rep;
}

Resource resource_from_string(const std::string& s) {
  if (s == "none") return Resource::none();
  auto colon = s.find(':');
  if (colon != std::string::npos) {
    const std::string name = s.substr(0, colon);
    const int r = std::stoi(s.substr(colon + 1));
    if (name == "ghz") return Resource::ghz(r);
    if (name == "schmidt" || name == "bipartite_schmidt") return Resource::bipartite_schmidt(r);
  }
  throw std::invalid_argument("unknown resource: " + s + " (use none, ghz:R, schmidt:R)");
}

std::string to_string(const Resource& res) {
  switch (res.kind) {
    case Resource::Kind::none: return "none";
    case Resource::Kind::ghz: return "ghz:" + std::to_string(res.r);
    case Resource::Kind::bipartite_schmidt: return "schmidt:" + std::to_string(res.r);
  }
  return "none";
}

DimReport lusd_generic_count(const std::vector<int>& local_dims, const Resource& res) {
  if (res.r < 1) throw std::invalid_argument("resource rank must be positive");
  if (res.kind == Resource::Kind::bipartite_schmidt && local_dims.size() != 2)
    throw std::invalid_argument("bipartite_schmidt resource requires two factors");
  const int r = res.kind == Resource::Kind::none ? 1 : res.r;
  DimReport sec = secant_dim(VarietySpec::segre(local_dims, r));
  DimReport rep;
  rep.value = sec.value + 1;
  rep.status = sec.status;
  rep.formula = "dim of the reachable-state set + 1, with " + sec.formula;
  return rep;
}

DimReport max_witness_neg_eigs(SubspaceKind kind, const std::vector<int>& params, int r) {
  VarietySpec spec = spec_for(kind, params, r);
  DimReport sec = secant_dim(spec);
  DimReport rep;
  rep.value = spec.ambient_affine_dim() - sec.value - 1;
  rep.status = sec.status;
  rep.formula = "ambient affine dim - secant dim - 1, with " + sec.formula;
  return rep;
}

}  // namespace entsub
