#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "json.hpp"

#include "entsub/dims.hpp"
#include "entsub/lusd.hpp"
#include "entsub/subspace.hpp"
#include "entsub/tensor.hpp"
#include "entsub/verify.hpp"
#include "entsub/witness.hpp"

namespace entsub {

// Everything here reads and writes nlohmann JSON values.  Complex numbers are
// explicit [re, im] pairs; doubles are emitted with enough digits to parse
// back bit-identically.

nlohmann::json complex_to_json(cdouble z);
cdouble complex_from_json(const nlohmann::json& j);

// {"shape":[...], "data":[[re,im],...]} with row-major, last-index-fastest
// ordering
nlohmann::json tensor_to_json(const Tensor& t);
Tensor tensor_from_json(const nlohmann::json& j);

// {"ambient_shape":[...], "symmetry":"none|sym|antisym", "basis":[tensor,...]}
nlohmann::json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(const nlohmann::json& j);

nlohmann::json json_of(const DimReport& r);
nlohmann::json json_of(const OptimizationReport& r);
nlohmann::json json_of(const CertificateResult& r);
nlohmann::json json_of(const WitnessReport& r);
nlohmann::json json_of(const DualCertificate& c);
nlohmann::json json_of(const FindDualsReport& r);
nlohmann::json json_of(const ThresholdStats& s);
nlohmann::json json_of(const MinorDualityReport& r);

// Parses a file; throws std::runtime_error naming the path on any failure.
nlohmann::json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

// Accepts either a bare subspace file or a report whose outputs carry one.
Subspace load_subspace_file(const std::string& path);

struct RunConfig {
  std::uint64_t seed = 0;
  int starts = 0;  // 0 means the subcommand default
  std::map<std::string, double> tolerances;
  std::string output_path;       // empty writes to stdout
  std::string format = "json";   // "json" or "pretty-text"
};

nlohmann::json config_to_json(const RunConfig& cfg);

// Versioned report skeleton: version, command, config, timestamp, and empty
// inputs/outputs/provenance objects for the caller to fill.
nlohmann::json make_report(const std::string& command, const RunConfig& cfg);

// Indented "key: value" rendering for format = pretty-text.
std::string pretty_text(const nlohmann::json& j);

// Writes the report to cfg.output_path (or stdout) in the configured format.
void emit_report(const nlohmann::json& report, const RunConfig& cfg);

}  // namespace entsub
