#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "cohoforge/cohomology.hpp"
#include "cohoforge/errors.hpp"
#include "cohoforge/group_spec.hpp"
#include "cohoforge/presented_ring.hpp"
#include "cohoforge/resolution.hpp"
#include "cohoforge/scenarios.hpp"

namespace py = pybind11;
using namespace cohoforge;

namespace {

ResolutionPtr resolve(const std::string& spec, std::uint32_t p, std::size_t max_degree, const std::string& strategy) {
  return build_resolution(realize(spec), p, max_degree + 1, parse_strategy(strategy));
}

}  // namespace

PYBIND11_MODULE(_cohoforge, m) {
  m.doc() = "mod-p cohomology of finite groups";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<RealizeError>(m, "RealizeError", PyExc_ValueError);
  py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);

  m.def("group_order", [](const std::string& spec) { return realize(spec)->order(); }, py::arg("spec"));

  m.def(
      "cohomology_dims",
      [](const std::string& spec, std::uint32_t p, std::size_t max_degree, const std::string& strategy) {
        py::gil_scoped_release release;
        return cohomology_dims(*resolve(spec, p, max_degree, strategy), max_degree);
      },
      py::arg("spec"), py::arg("p"), py::arg("max_degree"), py::arg("strategy") = "minimal");

  m.def(
      "dec_dims",
      [](const std::string& spec, std::uint32_t p, std::size_t max_degree) {
        py::gil_scoped_release release;
        return dec_ladder(resolve(spec, p, max_degree, "minimal"), max_degree).dims();
      },
      py::arg("spec"), py::arg("p"), py::arg("max_degree"));

  m.def(
      "ring_fingerprint",
      [](const std::string& spec, std::uint32_t p, std::size_t max_degree) {
        RingFingerprint fp;
        {
          py::gil_scoped_release release;
          fp = ring_fingerprint(resolve(spec, p, max_degree, "minimal"), max_degree);
        }
        py::dict d;
        d["dims"] = fp.dims;
        d["dec_dims"] = fp.dec_dims;
        d["identities"] = fp.identities;
        return d;
      },
      py::arg("spec"), py::arg("p"), py::arg("max_degree"));

  m.def(
      "presented_ring_dims",
      [](std::uint32_t p, const std::vector<std::pair<std::string, std::size_t>>& generators,
         const std::vector<std::string>& relations, std::size_t max_degree, std::optional<bool> graded) {
        std::vector<RingGenerator> gens;
        for (const auto& [name, degree] : generators) gens.push_back({name, degree});
        const auto parity =
            graded ? (*graded ? Parity::graded : Parity::commutative) : default_parity(p);
        return presented_ring_dims(p, gens, relations, parity, max_degree);
      },
      py::arg("p"), py::arg("generators"), py::arg("relations"), py::arg("max_degree"),
      py::arg("graded") = py::none());

  m.def("scenario_ids", &scenario_ids);

  m.def(
      "run_scenario",
      [](const std::string& id, std::optional<std::uint32_t> p, std::optional<std::size_t> n,
         std::optional<std::size_t> d, std::optional<std::size_t> k, std::optional<std::size_t> max_degree,
         bool extended, std::size_t threads) {
        ScenarioOptions opts;
        opts.extended = extended;
        opts.threads = threads;
        std::string out;
        {
          py::gil_scoped_release release;
          out = to_json(run_scenario(id, ScenarioParams{p, n, d, k, max_degree}, opts)).dump();
        }
        return out;
      },
      py::arg("id"), py::arg("p") = py::none(), py::arg("n") = py::none(), py::arg("d") = py::none(),
      py::arg("k") = py::none(), py::arg("max_degree") = py::none(), py::arg("extended") = false,
      py::arg("threads") = 1);
}
