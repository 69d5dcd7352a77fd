#include <cmath>
#include <filesystem>
#include <regex>
#include <stdexcept>

#include "doctest.h"
#include "entsub/io.hpp"
#include "entsub/rng.hpp"

using namespace entsub;
using nlohmann::json;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

Tensor counting_tensor(const std::vector<int>& shape) {
  Tensor t(shape);
  for (Eigen::Index i = 0; i < t.size(); ++i)
    t.data[i] = cdouble(1.0 / (3.0 + static_cast<double>(i)), std::sqrt(2.0 + i));
  return t;
}

}  // namespace

TEST_CASE("complex values round-trip through [re, im] pairs") {
  const cdouble z(1.0 / 3.0, -std::sqrt(2.0));
  const json j = complex_to_json(z);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  CHECK(complex_from_json(j) == z);  // bit-identical, not approximate

  CHECK(complex_from_json(json::parse("[0.1, -2]")) == cdouble(0.1, -2.0));
  CHECK_THROWS_AS(complex_from_json(json::parse("3.0")), std::invalid_argument);
  CHECK_THROWS_AS(complex_from_json(json::parse("[1, 2, 3]")), std::invalid_argument);
  CHECK_THROWS_AS(complex_from_json(json::parse("[1, \"i\"]")), std::invalid_argument);
}

TEST_CASE("tensor serialization keeps the last-index-fastest layout") {
  Tensor t({2, 3});
  t.at({1, 2}) = cdouble(0.0, 1.0);
  const json j = tensor_to_json(t);
  CHECK(j.at("shape") == json::array({2, 3}));
  REQUIRE(j.at("data").size() == 6);
  // linear position of (1, 2) in a 2x3 tensor is 1*3 + 2 = 5
  CHECK(j.at("data")[5] == json::array({0.0, 1.0}));
  CHECK(j.at("data")[0] == json::array({0.0, 0.0}));
}

TEST_CASE("tensor values survive serialize-parse exactly") {
  const Tensor t = counting_tensor({2, 2, 3});
  const Tensor back = tensor_from_json(tensor_to_json(t));
  REQUIRE(back.shape == t.shape);
  for (Eigen::Index i = 0; i < t.size(); ++i) CHECK(back.data[i] == t.data[i]);

  // and the canonical text form is a fixed point of parse + serialize
  const std::string s = tensor_to_json(t).dump();
  CHECK(tensor_to_json(tensor_from_json(json::parse(s))).dump() == s);
}

TEST_CASE("tensor parsing rejects malformed input") {
  CHECK_THROWS_AS(tensor_from_json(json::parse("{\"shape\": [2]}")), std::invalid_argument);
  CHECK_THROWS_AS(tensor_from_json(json::parse("{\"data\": []}")), std::invalid_argument);
  CHECK_THROWS_AS(tensor_from_json(json::parse("{\"shape\": [], \"data\": []}")),
                  std::invalid_argument);
  CHECK_THROWS_AS(tensor_from_json(json::parse("{\"shape\": [0], \"data\": []}")),
                  std::invalid_argument);
  CHECK_THROWS_AS(tensor_from_json(json::parse("{\"shape\": [2.5], \"data\": [[0,0],[0,0]]}")),
                  std::invalid_argument);
  CHECK_THROWS_AS(tensor_from_json(json::parse("{\"shape\": [2], \"data\": [[0,0]]}")),
                  std::invalid_argument);
  CHECK_THROWS_AS(tensor_from_json(json::parse("{\"shape\": [1], \"data\": [[0]]}")),
                  std::invalid_argument);
}

TEST_CASE("subspace serialization round-trips with the symmetry names") {
  Subspace sub = random_subspace({3, 3}, 2, Symmetry::symmetric, 17);
  const json j = subspace_to_json(sub);
  CHECK(j.at("symmetry") == "sym");
  CHECK(j.at("ambient_shape") == json::array({3, 3}));

  const Subspace back = subspace_from_json(j);
  CHECK(back.symmetry == Symmetry::symmetric);
  REQUIRE(back.basis.size() == sub.basis.size());
  for (std::size_t b = 0; b < sub.basis.size(); ++b)
    for (Eigen::Index i = 0; i < sub.basis[b].size(); ++i)
      CHECK(back.basis[b].data[i] == sub.basis[b].data[i]);

  Subspace plain = random_subspace({2, 2, 2}, 2, Symmetry::none, 18);
  CHECK(subspace_to_json(plain).at("symmetry") == "none");
  Subspace anti = random_subspace({4, 4}, 1, Symmetry::antisymmetric, 19);
  CHECK(subspace_to_json(anti).at("symmetry") == "antisym");
}

TEST_CASE("subspace parsing rejects malformed input") {
  json good = subspace_to_json(random_subspace({2, 2}, 1, Symmetry::none, 5));

  json missing = good;
  missing.erase("symmetry");
  CHECK_THROWS_AS(subspace_from_json(missing), std::invalid_argument);

  json unknown = good;
  unknown["symmetry"] = "hermitian";
  CHECK_THROWS_AS(subspace_from_json(unknown), std::invalid_argument);

  json mismatch = good;
  mismatch["basis"][0]["shape"] = json::array({4});
  mismatch["basis"][0]["data"] =
      json::array({json::array({1.0, 0.0}), json::array({0.0, 0.0}), json::array({0.0, 0.0}),
                   json::array({0.0, 0.0})});
  CHECK_THROWS_AS(subspace_from_json(mismatch), std::invalid_argument);

  json empty = good;
  empty["basis"] = json::array();
  CHECK_THROWS_AS(subspace_from_json(empty), std::invalid_argument);
}

TEST_CASE("report fragments carry the fields their consumers read") {
  DimReport dim{11, "exact", "min{D, 2*dim X + 1}"};
  json jd = json_of(dim);
  CHECK(jd.at("value") == 11);
  CHECK(jd.at("status") == "exact");
  CHECK(jd.at("formula") == dim.formula);

  CertificateResult miss;
  miss.found = false;
  miss.case_label = "3(b)(v)";
  json jm = json_of(miss);
  CHECK(jm.at("found") == false);
  CHECK(!jm.contains("matrix_choice"));
  CHECK(!jm.contains("determinant"));

  CertificateResult hit;
  hit.found = true;
  hit.matrix_choice = "M";
  hit.columns = {1, 4, 6};
  hit.case_label = "1(a)";
  hit.determinant = cdouble(2.0, 0.0);
  json jh = json_of(hit);
  CHECK(jh.at("matrix_choice") == "M");
  CHECK(jh.at("columns") == json::array({1, 4, 6}));
  CHECK(jh.at("determinant") == json::array({2.0, 0.0}));

  FindDualsReport fail;
  fail.ok = false;
  fail.failed_index = 2;
  fail.best_off_diagonal = {0.25};
  json jf = json_of(fail);
  CHECK(jf.at("ok") == false);
  CHECK(jf.at("failed_index") == 2);
  CHECK(!jf.contains("certificate"));

  ThresholdStats stats{3, 50, 50, 0, 50, "note"};
  json js = json_of(stats);
  CHECK(js.at("n_star") == 3);
  CHECK(js.at("conclusive_failures_above") == 50);

  MinorDualityReport minor{true, 1e-15};
  CHECK(json_of(minor).at("ok") == true);
}

TEST_CASE("report skeleton echoes the run configuration") {
  RunConfig cfg;
  cfg.seed = 7;
  cfg.starts = 64;
  cfg.tolerances["tau_pos"] = 1e-5;
  cfg.format = "json";
  const json report = make_report("verify", cfg);
  CHECK(report.at("report_version") == 1);
  CHECK(report.at("command") == "verify");
  CHECK(report.at("config").at("seed") == 7);
  CHECK(report.at("config").at("starts") == 64);
  CHECK(report.at("config").at("tolerances").at("tau_pos") == 1e-5);
  CHECK(report.at("inputs").is_object());
  CHECK(report.at("outputs").is_object());
  CHECK(report.at("provenance").at("formulas").is_array());

  const std::string stamp = report.at("timestamp").get<std::string>();
  CHECK(std::regex_match(stamp, std::regex(R"(\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}Z)")));
}

TEST_CASE("subspace files load bare or wrapped in a report") {
  const Subspace sub = random_subspace({2, 3}, 2, Symmetry::none, 23);
  const auto bare_path = temp_file("entsub_io_bare.json");
  const auto report_path = temp_file("entsub_io_report.json");

  write_text_file(bare_path.string(), subspace_to_json(sub).dump());
  Subspace loaded = load_subspace_file(bare_path.string());
  CHECK(loaded.affine_dim() == 2);
  CHECK(loaded.ambient_shape == std::vector<int>{2, 3});

  RunConfig cfg;
  json report = make_report("construct", cfg);
  report["outputs"]["subspace"] = subspace_to_json(sub);
  write_text_file(report_path.string(), report.dump());
  Subspace unwrapped = load_subspace_file(report_path.string());
  CHECK(unwrapped.affine_dim() == 2);
  for (Eigen::Index i = 0; i < sub.basis[0].size(); ++i)
    CHECK(unwrapped.basis[0].data[i] == sub.basis[0].data[i]);

  std::filesystem::remove(bare_path);
  std::filesystem::remove(report_path);

  CHECK_THROWS_WITH_AS(load_subspace_file("no_such_file.json"),
                       "cannot open file: no_such_file.json", std::runtime_error);

  const auto junk_path = temp_file("entsub_io_junk.json");
  write_text_file(junk_path.string(), "{not json");
  CHECK_THROWS_AS(load_subspace_file(junk_path.string()), std::runtime_error);
  write_text_file(junk_path.string(), "{\"outputs\": {}}");
  CHECK_THROWS_AS(load_subspace_file(junk_path.string()), std::runtime_error);
  std::filesystem::remove(junk_path);
}

TEST_CASE("pretty text renders nested reports without JSON syntax") {
  RunConfig cfg;
  json report = make_report("dims", cfg);
  report["inputs"]["dims"] = json::array({3, 3, 2});
  report["outputs"]["dim_report"] = json_of(DimReport{11, "exact", "f"});
  const std::string text = pretty_text(report);
  CHECK(text.find("command: \"dims\"") != std::string::npos);
  CHECK(text.find("dims: [3,3,2]") != std::string::npos);
  CHECK(text.find("value: 11") != std::string::npos);
  CHECK(text.find('{') == std::string::npos);
}

TEST_CASE("emit_report rejects unknown formats") {
  RunConfig cfg;
  cfg.format = "yaml";
  CHECK_THROWS_AS(emit_report(make_report("dims", cfg), cfg), std::invalid_argument);
}
