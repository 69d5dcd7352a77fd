#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>
#include <vector>

#include "entsub/constructions.hpp"
#include "entsub/dims.hpp"
#include "entsub/io.hpp"
#include "entsub/lusd.hpp"
#include "entsub/subspace.hpp"
#include "entsub/tensor.hpp"
#include "entsub/verify.hpp"
#include "entsub/witness.hpp"

namespace py = pybind11;
using namespace entsub;

namespace {

std::vector<cdouble> vec_of(const Eigen::VectorXcd& v) {
  return {v.data(), v.data() + v.size()};
}

Eigen::VectorXcd vec_from(const std::vector<cdouble>& v) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

// reports cross the boundary as plain dicts built from their JSON form
py::object to_py(const nlohmann::json& j) {
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      py::dict d;
      for (const auto& [k, v] : j.items()) d[py::str(k)] = to_py(v);
      return d;
    }
    case nlohmann::json::value_t::array: {
      py::list l;
      for (const auto& v : j) l.append(to_py(v));
      return l;
    }
    case nlohmann::json::value_t::string:
      return py::str(j.get<std::string>());
    case nlohmann::json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case nlohmann::json::value_t::number_integer:
      return py::int_(j.get<long long>());
    case nlohmann::json::value_t::number_unsigned:
      return py::int_(j.get<unsigned long long>());
    case nlohmann::json::value_t::number_float:
      return py::float_(j.get<double>());
    default:
      return py::none();
  }
}

Eigen::Vector2cd pair_from(const std::vector<cdouble>& v, const char* name) {
  if (v.size() != 2)
    throw std::invalid_argument(std::string(name) + " needs exactly two coefficients");
  return {v[0], v[1]};
}

}  // namespace

PYBIND11_MODULE(pyentsub, m) {
  m.doc() = "r-entangled subspaces: constructions, verification, witnesses, discrimination";

  py::class_<Tensor>(m, "Tensor")
      .def(py::init([](std::vector<int> shape, std::vector<cdouble> data) {
             Tensor t(shape);
             if (static_cast<Eigen::Index>(data.size()) != t.size())
               throw std::invalid_argument("data length does not match the shape");
             t.data = vec_from(data);
             return t;
           }),
           py::arg("shape"), py::arg("data"))
      .def_readonly("shape", &Tensor::shape)
      .def_property_readonly("data", [](const Tensor& t) { return vec_of(t.data); })
      .def("norm", &Tensor::norm)
      .def("__len__", [](const Tensor& t) { return t.size(); })
      .def("__repr__", [](const Tensor& t) {
        std::string r = "Tensor(shape=[";
        for (std::size_t i = 0; i < t.shape.size(); ++i)
          r += (i ? "," : "") + std::to_string(t.shape[i]);
        return r + "])";
      });

  py::class_<Subspace>(m, "Subspace")
      .def(py::init([](std::vector<int> shape, std::string symmetry, std::vector<Tensor> basis) {
             Subspace s;
             s.ambient_shape = std::move(shape);
             s.symmetry = symmetry_from_string(symmetry);
             s.basis = std::move(basis);
             return s;
           }),
           py::arg("ambient_shape"), py::arg("symmetry"), py::arg("basis"))
      .def_readonly("ambient_shape", &Subspace::ambient_shape)
      .def_property_readonly("symmetry",
                             [](const Subspace& s) { return to_string(s.symmetry); })
      .def_readonly("basis", &Subspace::basis)
      .def("affine_dim", &Subspace::affine_dim)
      .def("projective_dim", &Subspace::projective_dim)
      .def("element",
           [](const Subspace& s, const std::vector<cdouble>& coeffs) {
             return s.element(vec_from(coeffs));
           },
           py::arg("coeffs"))
      .def("__repr__", [](const Subspace& s) {
        return "Subspace(affine_dim=" + std::to_string(s.affine_dim()) + ")";
      });

  // --- tensors and ranks
  m.def("flattening_rank", &flattening_rank, py::arg("t"), py::arg("tol") = 1e-9);
  m.def("schmidt_rank", &schmidt_rank, py::arg("t"), py::arg("tol") = 1e-9);
  m.def("random_tensor", &random_tensor, py::arg("shape"), py::arg("seed"));
  m.def("random_product", &random_product, py::arg("shape"), py::arg("seed"));
  m.def("random_rank_r", &random_rank_r, py::arg("shape"), py::arg("r"), py::arg("seed"));

  // --- subspaces
  m.def(
      "span_of",
      [](const std::vector<Tensor>& tensors, double tol, const std::string& symmetry) {
        return span_of(tensors, tol, symmetry_from_string(symmetry));
      },
      py::arg("tensors"), py::arg("tol") = 1e-9, py::arg("symmetry") = "none");
  m.def(
      "random_subspace",
      [](const std::vector<int>& shape, int affine_dim, const std::string& symmetry,
         std::uint64_t seed) {
        return random_subspace(shape, affine_dim, symmetry_from_string(symmetry), seed);
      },
      py::arg("ambient_shape"), py::arg("affine_dim"), py::arg("symmetry"), py::arg("seed"));
  m.def(
      "complementary_minor_check",
      [](const Subspace& sub, double tol) { return to_py(json_of(complementary_minor_check(sub, tol))); },
      py::arg("subspace"), py::arg("tol") = 1e-9);

  // --- dimension formulas
  m.def(
      "segre_secant_dim",
      [](const std::vector<int>& dims, int r) {
        return to_py(json_of(secant_dim(VarietySpec::segre(dims, r))));
      },
      py::arg("dims"), py::arg("r"));
  m.def(
      "veronese_secant_dim",
      [](int d, int mm, int r) { return to_py(json_of(secant_dim(VarietySpec::veronese(d, mm, r)))); },
      py::arg("d"), py::arg("m"), py::arg("r"));
  m.def(
      "grassmannian_secant_dim",
      [](int d, int mm, int r) {
        return to_py(json_of(secant_dim(VarietySpec::grassmannian(d, mm, r))));
      },
      py::arg("d"), py::arg("m"), py::arg("r"));
  m.def(
      "max_entangled_dim",
      [](const std::string& kind, const std::vector<int>& params, int r) {
        return to_py(json_of(max_entangled_dim(subspace_kind_from_string(kind), params, r)));
      },
      py::arg("kind"), py::arg("params"), py::arg("r"));
  m.def(
      "lusd_generic_count",
      [](const std::vector<int>& dims, const std::string& resource) {
        return to_py(json_of(lusd_generic_count(dims, resource_from_string(resource))));
      },
      py::arg("dims"), py::arg("resource") = "none");
  m.def(
      "max_witness_neg_eigs",
      [](const std::string& kind, const std::vector<int>& params, int r) {
        return to_py(json_of(max_witness_neg_eigs(subspace_kind_from_string(kind), params, r)));
      },
      py::arg("kind"), py::arg("params"), py::arg("r"));

  // --- constructions
  m.def(
      "symmetric_bipartite_basis", [](int d, int r) { return symmetric_bipartite_basis(d, r); },
      py::arg("d"), py::arg("r"));
  m.def(
      "antisymmetric_bipartite_basis",
      [](int d, int r) { return antisymmetric_bipartite_basis(d, r); }, py::arg("d"),
      py::arg("r"));
  m.def("symmetric_multipartite_r1_basis", &symmetric_multipartite_r1_basis, py::arg("d"),
        py::arg("m"));
  m.def("antisymmetric_multipartite_r1_subspace", &antisymmetric_multipartite_r1_subspace,
        py::arg("d"), py::arg("m"));
  m.def(
      "qutrit_qutrit_qubit_basis", []() { return qutrit_qutrit_qubit_basis(); });
  m.def(
      "four_qubit_basis", []() { return four_qubit_basis(); });

  // --- verification
  m.def(
      "search_low_rank_element",
      [](const Subspace& sub, int r, int starts, std::uint64_t seed) {
        return to_py(json_of(search_low_rank_element(sub, r, starts, seed)));
      },
      py::arg("subspace"), py::arg("r"), py::arg("starts") = 64, py::arg("seed") = 0);
  m.def(
      "case_tree_certificate",
      [](cdouble lam, cdouble gam, const std::vector<cdouble>& c_de,
         const std::vector<cdouble>& c_tk) {
        return to_py(json_of(case_tree_certificate(lam, gam, pair_from(c_de, "c_de"),
                                                   pair_from(c_tk, "c_tk"))));
      },
      py::arg("lam"), py::arg("gam"), py::arg("c_de"), py::arg("c_tk"));

  // --- witnesses
  m.def(
      "witness_report",
      [](const Subspace& sub, int r, int starts, std::uint64_t seed) {
        return to_py(json_of(witness_report(sub, r, starts, seed)));
      },
      py::arg("subspace"), py::arg("r"), py::arg("starts") = 256, py::arg("seed") = 0);

  // --- discrimination
  m.def(
      "find_duals",
      [](const std::vector<int>& dims, const std::vector<Tensor>& states,
         const std::string& resource, int starts, std::uint64_t seed) {
        LusdInstance inst;
        inst.local_dims = dims;
        inst.states = states;
        inst.resource = resource_from_string(resource);
        return to_py(json_of(find_duals(inst, starts, seed)));
      },
      py::arg("dims"), py::arg("states"), py::arg("resource") = "none", py::arg("starts") = 16,
      py::arg("seed") = 0);
  m.def(
      "membership_residual",
      [](const Tensor& t, const std::string& resource, const std::vector<int>& dims) {
        return membership_residual(t, resource_from_string(resource), dims);
      },
      py::arg("t"), py::arg("resource"), py::arg("dims"));
  m.def(
      "threshold_demo",
      [](const std::vector<int>& dims, const std::string& resource, int trials,
         std::uint64_t seed) {
        return to_py(json_of(threshold_demo(dims, resource_from_string(resource), trials, seed)));
      },
      py::arg("dims"), py::arg("resource") = "none", py::arg("trials") = 50, py::arg("seed") = 0);
}
