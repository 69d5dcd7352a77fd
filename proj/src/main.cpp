#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "entsub/constructions.hpp"
#include "entsub/io.hpp"
#include "entsub/rng.hpp"

namespace {

using entsub::RunConfig;
using nlohmann::json;

void add_output_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--seed", cfg.seed, "random seed (also via ENTSUB_SEED)")
      ->envname("ENTSUB_SEED");
  cmd->add_option("--out", cfg.output_path, "write the report to this file instead of stdout");
  cmd->add_option("--format", cfg.format, "report format")
      ->check(CLI::IsMember({"json", "pretty-text"}))
      ->capture_default_str();
}

void require_positive(const std::map<std::string, double>& tols) {
  for (const auto& [name, value] : tols)
    if (!(value > 0.0)) throw std::invalid_argument("tolerance " + name + " must be positive");
}

entsub::ConstructionParams params_from_file(const std::string& path) {
  entsub::ConstructionParams params;
  json j = entsub::load_json_file(path);
  auto read_vec = [&](const char* name, Eigen::Vector4cd& into) {
    if (!j.contains(name)) return;
    const json& arr = j.at(name);
    if (!arr.is_array() || arr.size() != 4)
      throw std::invalid_argument(std::string("parameter ") + name +
                                  " must be an array of four [re, im] pairs");
    for (int i = 0; i < 4; ++i) into(i) = entsub::complex_from_json(arr[i]);
  };
  read_vec("delta", params.delta);
  read_vec("eps", params.eps);
  read_vec("theta", params.theta);
  read_vec("kappa", params.kappa);
  read_vec("phi", params.phi);
  read_vec("psi", params.psi);
  return params;
}

struct DimsArgs {
  std::string kind;
  std::string symmetry = "standard";
  std::string resource = "none";
  std::vector<int> dims;
  int d = 0, m = 0, r = 1;
};

int run_dims(const DimsArgs& a, RunConfig& cfg) {
  json report = entsub::make_report("dims", cfg);
  report["inputs"] = json{{"kind", a.kind}, {"dims", a.dims},      {"d", a.d},
                          {"m", a.m},       {"r", a.r},            {"symmetry", a.symmetry},
                          {"resource", a.resource}};
  entsub::DimReport rep;
  if (a.kind == "segre") {
    if (a.dims.empty()) throw std::invalid_argument("--kind segre needs --dims");
    rep = entsub::secant_dim(entsub::VarietySpec::segre(a.dims, a.r));
  } else if (a.kind == "veronese") {
    rep = entsub::secant_dim(entsub::VarietySpec::veronese(a.d, a.m, a.r));
  } else if (a.kind == "grassmannian") {
    rep = entsub::secant_dim(entsub::VarietySpec::grassmannian(a.d, a.m, a.r));
  } else if (a.kind == "max-entangled") {
    const entsub::SubspaceKind k = entsub::subspace_kind_from_string(a.symmetry);
    const std::vector<int> params =
        k == entsub::SubspaceKind::standard ? a.dims : std::vector<int>{a.d, a.m};
    rep = entsub::max_entangled_dim(k, params, a.r);
  } else if (a.kind == "lusd-count") {
    if (a.dims.empty()) throw std::invalid_argument("--kind lusd-count needs --dims");
    rep = entsub::lusd_generic_count(a.dims, entsub::resource_from_string(a.resource));
  } else if (a.kind == "witness-neg-eigs") {
    const entsub::SubspaceKind k = entsub::subspace_kind_from_string(a.symmetry);
    const std::vector<int> params =
        k == entsub::SubspaceKind::standard ? a.dims : std::vector<int>{a.d, a.m};
    rep = entsub::max_witness_neg_eigs(k, params, a.r);
  } else {
    throw std::invalid_argument("unknown --kind: " + a.kind);
  }
  report["outputs"]["dim_report"] = entsub::json_of(rep);
  report["provenance"]["formulas"].push_back(rep.formula);
  entsub::emit_report(report, cfg);
  return 0;
}

struct ConstructArgs {
  std::string kind;
  std::string params_file;
  int d = 0, m = 0, r = 1;
};

int run_construct(const ConstructArgs& a, RunConfig& cfg) {
  entsub::ConstructionParams params;
  if (!a.params_file.empty()) params = params_from_file(a.params_file);

  entsub::Subspace sub;
  entsub::DimReport dim;
  if (a.kind == "sym-bipartite") {
    sub = entsub::symmetric_bipartite_basis(a.d, a.r);
    dim = entsub::max_entangled_dim(entsub::SubspaceKind::symmetric, {a.d, 2}, a.r);
  } else if (a.kind == "antisym-bipartite") {
    sub = entsub::antisymmetric_bipartite_basis(a.d, a.r);
    dim = entsub::max_entangled_dim(entsub::SubspaceKind::antisymmetric, {a.d, 2}, a.r);
  } else if (a.kind == "sym-multipartite") {
    sub = entsub::symmetric_multipartite_r1_basis(a.d, a.m);
    dim = entsub::max_entangled_dim(entsub::SubspaceKind::symmetric, {a.d, a.m}, 1);
  } else if (a.kind == "antisym-multipartite") {
    sub = entsub::antisymmetric_multipartite_r1_subspace(a.d, a.m);
    dim = entsub::max_entangled_dim(entsub::SubspaceKind::antisymmetric, {a.d, a.m}, 1);
  } else if (a.kind == "qutrit-qutrit-qubit") {
    sub = entsub::qutrit_qutrit_qubit_basis(params);
    dim = entsub::max_entangled_dim(entsub::SubspaceKind::standard, {3, 3, 2}, 2);
  } else if (a.kind == "four-qubit") {
    sub = entsub::four_qubit_basis(params);
    dim = entsub::max_entangled_dim(entsub::SubspaceKind::standard, {2, 2, 2, 2}, 2);
  } else {
    throw std::invalid_argument("unknown construction kind: " + a.kind);
  }

  json report = entsub::make_report("construct", cfg);
  report["inputs"] = json{{"kind", a.kind}, {"d", a.d}, {"m", a.m}, {"r", a.r}};
  report["outputs"]["subspace"] = entsub::subspace_to_json(sub);
  report["outputs"]["affine_dim"] = sub.affine_dim();
  report["outputs"]["projective_dim"] = sub.projective_dim();
  report["outputs"]["max_entangled_dim"] = entsub::json_of(dim);
  report["provenance"]["formulas"].push_back(dim.formula);
  entsub::emit_report(report, cfg);
  return 0;
}

struct VerifyArgs {
  std::string subspace_path;
  int r = 0, starts = 64;
};

int run_verify(const VerifyArgs& a, RunConfig& cfg) {
  require_positive(cfg.tolerances);
  entsub::Subspace sub = entsub::load_subspace_file(a.subspace_path);
  if (!sub.validate()) throw std::invalid_argument("subspace basis is not linearly independent");
  entsub::SearchOptions opts;
  if (cfg.tolerances.count("tau_zero")) opts.tau_zero = cfg.tolerances.at("tau_zero");
  if (cfg.tolerances.count("tau_pos")) opts.tau_pos = cfg.tolerances.at("tau_pos");
  cfg.starts = a.starts;
  entsub::OptimizationReport rep =
      entsub::search_low_rank_element(sub, a.r, a.starts, cfg.seed, opts);

  json report = entsub::make_report("verify", cfg);
  report["inputs"] = json{{"subspace", a.subspace_path},
                          {"ambient_shape", sub.ambient_shape},
                          {"affine_dim", sub.affine_dim()},
                          {"r", a.r}};
  report["outputs"]["optimization"] = entsub::json_of(rep);
  entsub::emit_report(report, cfg);
  return rep.verdict == "inconclusive" ? 3 : 0;
}

struct CertifyArgs {
  std::vector<double> coeffs;
  std::string params_file;
};

int run_certify(const CertifyArgs& a, RunConfig& cfg) {
  Eigen::VectorXcd c(6);
  if (a.coeffs.size() == 6) {
    for (int i = 0; i < 6; ++i) c(i) = a.coeffs[i];
  } else if (a.coeffs.size() == 12) {
    for (int i = 0; i < 6; ++i) c(i) = entsub::cdouble(a.coeffs[2 * i], a.coeffs[2 * i + 1]);
  } else {
    throw std::invalid_argument(
        "--coeffs needs 6 real or 12 interleaved re,im values "
        "(lambda, gamma, two delta/eps and two theta/kappa coefficients)");
  }
  entsub::ConstructionParams params;
  if (!a.params_file.empty()) params = params_from_file(a.params_file);
  entsub::CertificateResult cert = entsub::case_tree_certificate(
      c(0), c(1), Eigen::Vector2cd(c(2), c(3)), Eigen::Vector2cd(c(4), c(5)), params);

  json coeffs = json::array();
  for (int i = 0; i < 6; ++i) coeffs.push_back(entsub::complex_to_json(c(i)));
  json report = entsub::make_report("certify-qqq", cfg);
  report["inputs"] = json{{"coeffs", std::move(coeffs)}, {"params_file", a.params_file}};
  report["outputs"]["certificate"] = entsub::json_of(cert);
  entsub::emit_report(report, cfg);
  return 0;
}

struct WitnessArgs {
  std::string subspace_path;
  int r = 0, starts = 256;
};

int run_witness(const WitnessArgs& a, RunConfig& cfg) {
  entsub::Subspace sub = entsub::load_subspace_file(a.subspace_path);
  if (!sub.validate()) throw std::invalid_argument("subspace basis is not linearly independent");
  cfg.starts = a.starts;
  entsub::WitnessReport rep = entsub::witness_report(sub, a.r, a.starts, cfg.seed);

  json report = entsub::make_report("witness", cfg);
  report["inputs"] = json{{"subspace", a.subspace_path},
                          {"ambient_shape", sub.ambient_shape},
                          {"affine_dim", sub.affine_dim()},
                          {"r", a.r}};
  report["outputs"]["witness"] = entsub::json_of(rep);
  entsub::emit_report(report, cfg);
  return 0;
}

struct LusdArgs {
  std::vector<int> dims;
  std::string resource = "none";
  std::string states_file;
  int n = 0, starts = 16;
};

entsub::LusdTols lusd_tols(const RunConfig& cfg) {
  entsub::LusdTols tols;
  if (cfg.tolerances.count("tau_rank")) tols.tau_rank = cfg.tolerances.at("tau_rank");
  if (cfg.tolerances.count("tau_diag")) tols.tau_diag = cfg.tolerances.at("tau_diag");
  if (cfg.tolerances.count("tau_off")) tols.tau_off = cfg.tolerances.at("tau_off");
  return tols;
}

int run_lusd(const LusdArgs& a, RunConfig& cfg) {
  require_positive(cfg.tolerances);
  entsub::LusdInstance inst;
  inst.local_dims = a.dims;
  inst.resource = entsub::resource_from_string(a.resource);
  json states_input;
  if (!a.states_file.empty()) {
    json j = entsub::load_json_file(a.states_file);
    const json& arr = j.is_array() ? j : j.at("states");
    for (const json& t : arr) inst.states.push_back(entsub::tensor_from_json(t));
    states_input = a.states_file;
  } else {
    if (a.n < 1) throw std::invalid_argument("either --n or --states-file is required");
    for (int i = 0; i < a.n; ++i)
      inst.states.push_back(entsub::random_tensor(a.dims, entsub::derive_seed(cfg.seed, 100 + i)));
    states_input = json{{"random_states", a.n}};
  }
  cfg.starts = a.starts;
  entsub::FindDualsReport rep =
      entsub::find_duals(inst, a.starts, entsub::derive_seed(cfg.seed, 7), lusd_tols(cfg));

  json report = entsub::make_report("lusd", cfg);
  report["inputs"] = json{{"dims", a.dims},
                          {"resource", entsub::to_string(inst.resource)},
                          {"states", states_input},
                          {"n", inst.n()}};
  report["outputs"]["lusd"] = entsub::json_of(rep);
  entsub::emit_report(report, cfg);
  return rep.ok ? 0 : 3;  // a missed dual is evidence, not proof
}

struct ThresholdArgs {
  std::vector<int> dims;
  std::string resource = "none";
  int trials = 50;
};

int run_threshold(const ThresholdArgs& a, RunConfig& cfg) {
  const entsub::Resource res = entsub::resource_from_string(a.resource);
  entsub::ThresholdStats stats = entsub::threshold_demo(a.dims, res, a.trials, cfg.seed);
  entsub::DimReport count = entsub::lusd_generic_count(a.dims, res);

  json report = entsub::make_report("lusd-threshold", cfg);
  report["inputs"] =
      json{{"dims", a.dims}, {"resource", entsub::to_string(res)}, {"trials", a.trials}};
  report["outputs"]["threshold"] = entsub::json_of(stats);
  report["outputs"]["generic_count"] = entsub::json_of(count);
  report["provenance"]["formulas"].push_back(count.formula);
  entsub::emit_report(report, cfg);
  return 0;
}

struct GrassmannArgs {
  std::vector<int> dims;
  int n = 0, trials = 100;
  double tol = 1e-9;
};

int run_grassmann(const GrassmannArgs& a, RunConfig& cfg) {
  if (!(a.tol > 0.0)) throw std::invalid_argument("--tol must be positive");
  if (a.n < 1) throw std::invalid_argument("--n must be at least 1");
  int passed = 0;
  double worst = 0.0;
  for (int t = 0; t < a.trials; ++t) {
    entsub::Subspace sub = entsub::random_subspace(a.dims, a.n, entsub::Symmetry::none,
                                                   entsub::derive_seed(cfg.seed, t));
    entsub::MinorDualityReport rep = entsub::complementary_minor_check(sub, a.tol);
    passed += rep.ok ? 1 : 0;
    worst = std::max(worst, rep.max_deviation);
  }
  json report = entsub::make_report("grassmann-check", cfg);
  report["inputs"] =
      json{{"dims", a.dims}, {"n", a.n}, {"trials", a.trials}, {"tol", a.tol}};
  report["outputs"]["minor_duality"] =
      json{{"trials", a.trials}, {"passed", passed}, {"max_deviation", worst},
           {"ok", passed == a.trials}};
  entsub::emit_report(report, cfg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"r-entangled subspaces: constructions, verification, witnesses, discrimination"};
  app.require_subcommand(1);

  RunConfig cfg;

  DimsArgs dims_args;
  CLI::App* dims = app.add_subcommand("dims", "dimension and count formulas");
  dims->add_option("--kind", dims_args.kind, "segre|veronese|grassmannian|max-entangled|lusd-count|witness-neg-eigs")
      ->required();
  dims->add_option("--dims", dims_args.dims, "local dimensions, comma separated")->delimiter(',');
  dims->add_option("--d", dims_args.d, "single local dimension");
  dims->add_option("--m", dims_args.m, "number of factors / power");
  dims->add_option("--r", dims_args.r, "rank parameter")->capture_default_str();
  dims->add_option("--symmetry", dims_args.symmetry, "standard|symmetric|antisymmetric")
      ->capture_default_str();
  dims->add_option("--resource", dims_args.resource, "none|ghz:R|schmidt:R")
      ->capture_default_str();
  add_output_options(dims, cfg);

  ConstructArgs con_args;
  CLI::App* con = app.add_subcommand("construct", "emit an r-entangled subspace");
  con->add_option("kind", con_args.kind,
                  "sym-bipartite|antisym-bipartite|sym-multipartite|antisym-multipartite|"
                  "qutrit-qutrit-qubit|four-qubit")
      ->required();
  con->add_option("--d", con_args.d, "local dimension");
  con->add_option("--m", con_args.m, "number of factors");
  con->add_option("--r", con_args.r, "entanglement rank")->capture_default_str();
  con->add_option("--params-file", con_args.params_file, "construction parameter overrides");
  add_output_options(con, cfg);

  VerifyArgs ver_args;
  CLI::App* ver = app.add_subcommand("verify", "search a subspace for border-rank-<=r elements");
  ver->add_option("--subspace", ver_args.subspace_path, "subspace JSON file")->required();
  ver->add_option("--r", ver_args.r, "entanglement rank to refute")->required();
  ver->add_option("--starts", ver_args.starts, "multistart count")->capture_default_str();
  ver->add_option("--tau-zero", cfg.tolerances["tau_zero"], "zero threshold")
      ->check(CLI::PositiveNumber);
  ver->add_option("--tau-pos", cfg.tolerances["tau_pos"], "positivity threshold")
      ->check(CLI::PositiveNumber);
  add_output_options(ver, cfg);

  CertifyArgs cert_args;
  CLI::App* cert = app.add_subcommand("certify-qqq",
                                      "exact rank-3 certificate for a qutrit-qutrit-qubit element");
  cert->add_option("--coeffs", cert_args.coeffs,
                   "6 real or 12 interleaved re,im coefficients, comma separated")
      ->required()
      ->delimiter(',');
  cert->add_option("--params-file", cert_args.params_file, "construction parameter overrides");
  add_output_options(cert, cfg);

  WitnessArgs wit_args;
  CLI::App* wit = app.add_subcommand("witness", "entanglement witness for a subspace");
  wit->add_option("--subspace", wit_args.subspace_path, "subspace JSON file")->required();
  wit->add_option("--r", wit_args.r, "entanglement rank")->required();
  wit->add_option("--starts", wit_args.starts, "ascent multistart count")->capture_default_str();
  add_output_options(wit, cfg);

  LusdArgs lusd_args;
  CLI::App* lusd = app.add_subcommand("lusd", "local unambiguous state discrimination duals");
  lusd->add_option("--dims", lusd_args.dims, "local dimensions, comma separated")
      ->required()
      ->delimiter(',');
  lusd->add_option("--resource", lusd_args.resource, "none|ghz:R|schmidt:R")
      ->capture_default_str();
  lusd->add_option("--n", lusd_args.n, "number of seeded random states");
  lusd->add_option("--states-file", lusd_args.states_file, "JSON file with explicit states");
  lusd->add_option("--starts", lusd_args.starts, "multistart count per dual")
      ->capture_default_str();
  lusd->add_option("--tau-rank", cfg.tolerances["tau_rank"], "membership residual tolerance")
      ->check(CLI::PositiveNumber);
  lusd->add_option("--tau-diag", cfg.tolerances["tau_diag"], "diagonal pairing tolerance")
      ->check(CLI::PositiveNumber);
  lusd->add_option("--tau-off", cfg.tolerances["tau_off"], "off-diagonal pairing tolerance")
      ->check(CLI::PositiveNumber);
  add_output_options(lusd, cfg);

  ThresholdArgs thr_args;
  CLI::App* thr = app.add_subcommand("lusd-threshold", "discrimination threshold demonstration");
  thr->add_option("--dims", thr_args.dims, "local dimensions, comma separated")
      ->required()
      ->delimiter(',');
  thr->add_option("--resource", thr_args.resource, "none|ghz:R|schmidt:R")
      ->capture_default_str();
  thr->add_option("--trials", thr_args.trials, "number of random instances")
      ->capture_default_str();
  add_output_options(thr, cfg);

  GrassmannArgs gr_args;
  CLI::App* gr = app.add_subcommand("grassmann-check", "complementary minor duality spot check");
  gr->add_option("--dims", gr_args.dims, "ambient shape, comma separated")
      ->required()
      ->delimiter(',');
  gr->add_option("--n", gr_args.n, "affine dimension of the sampled planes")->required();
  gr->add_option("--trials", gr_args.trials, "number of random planes")->capture_default_str();
  gr->add_option("--tol", gr_args.tol, "match tolerance")->capture_default_str();
  add_output_options(gr, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit cleanly, bad input does not
  }

  try {
    // CLI11 leaves defaulted map entries at 0.0 when the flag is absent; drop
    // them so the positivity rule only sees explicit overrides
    for (auto it = cfg.tolerances.begin(); it != cfg.tolerances.end();)
      it = it->second == 0.0 ? cfg.tolerances.erase(it) : std::next(it);

    if (*dims) return run_dims(dims_args, cfg);
    if (*con) return run_construct(con_args, cfg);
    if (*ver) return run_verify(ver_args, cfg);
    if (*cert) return run_certify(cert_args, cfg);
    if (*wit) return run_witness(wit_args, cfg);
    if (*lusd) return run_lusd(lusd_args, cfg);
    if (*thr) return run_threshold(thr_args, cfg);
    if (*gr) return run_grassmann(gr_args, cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
