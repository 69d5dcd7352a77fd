#include "entsub/io.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace entsub {

using nlohmann::json;

json complex_to_json(cdouble z) { return json::array({z.real(), z.imag()}); }

cdouble complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw std::invalid_argument("complex values must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

json tensor_to_json(const Tensor& t) {
  json data = json::array();
  for (Eigen::Index i = 0; i < t.size(); ++i) data.push_back(complex_to_json(t.data[i]));
  return json{{"shape", t.shape}, {"data", std::move(data)}};
}

Tensor tensor_from_json(const json& j) {
  if (!j.is_object() || !j.contains("shape") || !j.contains("data"))
    throw std::invalid_argument("a tensor needs \"shape\" and \"data\" fields");
  std::vector<int> shape;
  for (const json& d : j.at("shape")) {
    if (!d.is_number_integer() || d.get<long long>() < 1)
      throw std::invalid_argument("tensor shape entries must be positive integers");
    shape.push_back(d.get<int>());
  }
  if (shape.empty()) throw std::invalid_argument("tensor shape must be nonempty");
  Tensor t(shape);
  const json& data = j.at("data");
  if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != t.size())
    throw std::invalid_argument("tensor data length does not match the shape");
  for (Eigen::Index i = 0; i < t.size(); ++i) t.data[i] = complex_from_json(data[i]);
  return t;
}

json subspace_to_json(const Subspace& s) {
  json basis = json::array();
  for (const Tensor& b : s.basis) basis.push_back(tensor_to_json(b));
  return json{{"ambient_shape", s.ambient_shape},
              {"symmetry", to_string(s.symmetry)},
              {"basis", std::move(basis)}};
}

Subspace subspace_from_json(const json& j) {
  if (!j.is_object() || !j.contains("ambient_shape") || !j.contains("symmetry") ||
      !j.contains("basis"))
    throw std::invalid_argument(
        "a subspace needs \"ambient_shape\", \"symmetry\" and \"basis\" fields");
  Subspace s;
  for (const json& d : j.at("ambient_shape")) s.ambient_shape.push_back(d.get<int>());
  s.symmetry = symmetry_from_string(j.at("symmetry").get<std::string>());
  for (const json& b : j.at("basis")) {
    Tensor t = tensor_from_json(b);
    if (t.shape != s.ambient_shape)
      throw std::invalid_argument("basis tensor shape does not match ambient_shape");
    s.basis.push_back(std::move(t));
  }
  if (s.basis.empty()) throw std::invalid_argument("subspace basis must be nonempty");
  return s;
}

json json_of(const DimReport& r) {
  return json{{"value", r.value}, {"status", r.status}, {"formula", r.formula}};
}

json json_of(const OptimizationReport& r) {
  json per_start = json::array();
  for (const StartRecord& s : r.per_start)
    per_start.push_back(json{{"seed", s.seed},
                             {"final_value", s.final_value},
                             {"iterations", s.iterations},
                             {"converged", s.converged}});
  json coeffs = json::array();
  for (Eigen::Index i = 0; i < r.best_point.size(); ++i)
    coeffs.push_back(complex_to_json(r.best_point[i]));
  return json{{"verdict", r.verdict},
              {"best_value", r.best_value},
              {"best_point", std::move(coeffs)},
              {"starts", r.starts},
              {"per_start", std::move(per_start)}};
}

json json_of(const CertificateResult& r) {
  json out{{"found", r.found}, {"case_label", r.case_label}};
  if (r.found) {
    out["matrix_choice"] = r.matrix_choice;
    out["columns"] = json::array({r.columns[0], r.columns[1], r.columns[2]});
    out["determinant"] = complex_to_json(r.determinant);
  }
  return out;
}

json json_of(const WitnessReport& r) {
  json detections = json::array();
  for (const auto& [name, value] : r.detection_examples)
    detections.push_back(json{{"state", name}, {"trace", value}});
  return json{{"alpha", r.alpha},
              {"epsilon_estimate", r.epsilon_estimate},
              {"negative_eigs", r.negative_eigs},
              {"detection_examples", std::move(detections)},
              {"ascent", json_of(r.ascent)}};
}

json json_of(const DualCertificate& c) {
  json duals = json::array();
  for (const Tensor& d : c.duals) duals.push_back(tensor_to_json(d));
  json pairing = json::array();
  for (Eigen::Index a = 0; a < c.pairing.rows(); ++a) {
    json row = json::array();
    for (Eigen::Index b = 0; b < c.pairing.cols(); ++b)
      row.push_back(complex_to_json(c.pairing(a, b)));
    pairing.push_back(std::move(row));
  }
  return json{{"ok", c.ok},
              {"duals", std::move(duals)},
              {"pairing", std::move(pairing)},
              {"rank_residuals", c.rank_residuals},
              {"failure", c.failure}};
}

json json_of(const FindDualsReport& r) {
  json out{{"ok", r.ok}, {"best_off_diagonal", r.best_off_diagonal}};
  if (r.ok)
    out["certificate"] = json_of(r.certificate);
  else
    out["failed_index"] = r.failed_index;
  return out;
}

json json_of(const ThresholdStats& s) {
  return json{{"n_star", s.n_star},
              {"trials", s.trials},
              {"successes_at_n", s.successes_at_n},
              {"successes_above", s.successes_above},
              {"conclusive_failures_above", s.conclusive_failures_above},
              {"note", s.note}};
}

json json_of(const MinorDualityReport& r) {
  return json{{"ok", r.ok}, {"max_deviation", r.max_deviation}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("cannot parse " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  out << contents;
  if (!out) throw std::runtime_error("failed writing file: " + path);
}

Subspace load_subspace_file(const std::string& path) {
  json j = load_json_file(path);
  if (j.is_object() && j.contains("outputs") && j.at("outputs").is_object() &&
      j.at("outputs").contains("subspace"))
    j = j.at("outputs").at("subspace");
  try {
    return subspace_from_json(j);
  } catch (const std::exception& e) {
    throw std::runtime_error("not a subspace file (" + path + "): " + e.what());
  }
}

json config_to_json(const RunConfig& cfg) {
  return json{{"seed", cfg.seed},
              {"starts", cfg.starts},
              {"tolerances", cfg.tolerances},
              {"output_path", cfg.output_path},
              {"format", cfg.format}};
}

json make_report(const std::string& command, const RunConfig& cfg) {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char stamp[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return json{{"report_version", 1},
              {"command", command},
              {"config", config_to_json(cfg)},
              {"timestamp", stamp},
              {"inputs", json::object()},
              {"outputs", json::object()},
              {"provenance", json{{"formulas", json::array()}}}};
}

namespace {

void pretty_lines(const json& j, const std::string& key, int depth, std::ostringstream& out) {
  const std::string pad(2 * static_cast<std::size_t>(depth), ' ');
  const std::string label = key.empty() ? "" : key + ": ";
  if (j.is_object()) {
    out << pad << (key.empty() ? "-" : key + ":") << "\n";
    for (const auto& [k, v] : j.items()) pretty_lines(v, k, depth + 1, out);
  } else if (j.is_array()) {
    bool scalars = true;
    for (const json& v : j) scalars = scalars && !v.is_structured();
    if (scalars) {
      out << pad << label << j.dump() << "\n";
    } else {
      out << pad << (key.empty() ? "-" : key + ":") << "\n";
      for (const json& v : j) pretty_lines(v, "", depth + 1, out);
    }
  } else {
    out << pad << label << j.dump() << "\n";
  }
}

}  // namespace

std::string pretty_text(const json& j) {
  std::ostringstream out;
  for (const auto& [k, v] : j.items()) pretty_lines(v, k, 0, out);
  return out.str();
}

void emit_report(const json& report, const RunConfig& cfg) {
  if (cfg.format != "json" && cfg.format != "pretty-text")
    throw std::invalid_argument("format must be json or pretty-text");
  const std::string rendered =
      cfg.format == "json" ? report.dump(2) + "\n" : pretty_text(report);
  if (cfg.output_path.empty())
    std::cout << rendered;
  else
    write_text_file(cfg.output_path, rendered);
}

}  // namespace entsub
