#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "decaynet/capacity.hpp"
#include "decaynet/generators.hpp"
#include "decaynet/io.hpp"
#include "decaynet/space_analysis.hpp"
#include "decaynet/verify.hpp"

namespace py = pybind11;
using namespace decaynet;
using io::json;

namespace {

// Reports cross the boundary as plain dicts and lists.
py::object to_py(const json& j) {
  switch (j.type()) {
    case json::value_t::null: return py::none();
    case json::value_t::boolean: return py::bool_(j.get<bool>());
    case json::value_t::number_integer: return py::int_(j.get<long long>());
    case json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
    case json::value_t::number_float: return py::float_(j.get<double>());
    case json::value_t::string: return py::str(j.get<std::string>());
    case json::value_t::array: {
      py::list out;
      for (const auto& x : j) out.append(to_py(x));
      return out;
    }
    case json::value_t::object: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = to_py(v);
      return out;
    }
    default: return py::none();
  }
}

json from_py(const py::handle& h) {
  if (h.is_none()) return nullptr;
  if (py::isinstance<py::bool_>(h)) return h.cast<bool>();
  if (py::isinstance<py::int_>(h)) return h.cast<long long>();
  if (py::isinstance<py::float_>(h)) return h.cast<double>();
  if (py::isinstance<py::str>(h)) return h.cast<std::string>();
  if (py::isinstance<py::dict>(h)) {
    json out = json::object();
    for (const auto& [k, v] : h.cast<py::dict>()) out[py::str(k).cast<std::string>()] = from_py(v);
    return out;
  }
  if (py::isinstance<py::sequence>(h)) {
    json out = json::array();
    for (const auto& x : h.cast<py::sequence>()) out.push_back(from_py(x));
    return out;
  }
  throw py::type_error("cannot convert value to JSON");
}

DecaySpace make_space(const std::vector<std::vector<double>>& f, const std::string& mode,
                      std::vector<std::string> labels) {
  return DecaySpace(SquareMatrix::from_rows(f), space_mode_from_string(mode), std::move(labels));
}

PowerAssignment make_power(const py::object& power) {
  if (py::isinstance<py::float_>(power) || py::isinstance<py::int_>(power))
    return PowerAssignment::uniform(power.cast<double>());
  return PowerAssignment::explicit_powers(power.cast<std::vector<double>>());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Decay-space SINR analysis";
  m.attr("__version__") = DECAYNET_VERSION;

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<StructuralError>(m, "StructuralError", error);
  py::register_exception<ValidationError>(m, "ValidationError", error);
  py::register_exception<PreconditionError>(m, "PreconditionError", error);
  py::register_exception<DrownedLinkError>(m, "DrownedLinkError", error);
  py::register_exception<TriangleViolationError>(m, "TriangleViolationError", error);

  py::class_<DecaySpace>(m, "DecaySpace")
      .def(py::init(&make_space), py::arg("f"), py::arg("mode") = "node-space",
           py::arg("labels") = std::vector<std::string>{})
      .def_property_readonly("size", &DecaySpace::size)
      .def_property_readonly("mode", [](const DecaySpace& s) { return to_string(s.mode()); })
      .def_property_readonly("labels", &DecaySpace::labels)
      .def("matrix", [](const DecaySpace& s) { return s.matrix().rows(); })
      .def("__call__", &DecaySpace::operator(), py::arg("p"), py::arg("q"))
      .def("__len__", &DecaySpace::size)
      .def("is_symmetric", &DecaySpace::is_symmetric, py::arg("rel_tol") = 0.0)
      .def("to_dict", [](const DecaySpace& s) { return to_py(io::to_json(s)); });

  py::class_<QuasiMetric>(m, "QuasiMetric")
      .def_property_readonly("zeta", &QuasiMetric::zeta)
      .def_property_readonly("size", &QuasiMetric::size)
      .def("__call__", &QuasiMetric::operator(), py::arg("p"), py::arg("q"))
      .def("matrix", [](const QuasiMetric& q) { return q.matrix().rows(); });

  py::class_<LinkSystem>(m, "LinkSystem")
      .def(py::init([](const DecaySpace& space, const std::vector<std::pair<NodeId, NodeId>>& links, double beta,
                       double noise, const py::object& power) {
             std::vector<Link> ls;
             for (auto [s, r] : links) ls.push_back({s, r});
             return LinkSystem(space, std::move(ls), SinrParams{beta, noise}, make_power(power));
           }),
           py::arg("space"), py::arg("links"), py::arg("beta") = 1.0, py::arg("noise") = 0.0,
           py::arg("power") = 1.0)
      .def_static("from_link_gain",
                  [](const DecaySpace& space, double beta, double noise, const py::object& power) {
                    return LinkSystem::from_link_gain(space, SinrParams{beta, noise}, make_power(power));
                  },
                  py::arg("space"), py::arg("beta") = 1.0, py::arg("noise") = 0.0, py::arg("power") = 1.0)
      .def_property_readonly("size", &LinkSystem::size)
      .def_property_readonly("space", &LinkSystem::space)
      .def_property_readonly("links", [](const LinkSystem& s) {
        std::vector<std::pair<NodeId, NodeId>> out;
        for (const auto& l : s.links()) out.emplace_back(l.sender, l.receiver);
        return out;
      })
      .def("__len__", &LinkSystem::size)
      .def("decay", &LinkSystem::decay, py::arg("w"), py::arg("v"))
      .def("is_drowned", &LinkSystem::is_drowned, py::arg("v"))
      .def("to_dict", [](const LinkSystem& s) { return to_py(io::to_json(s)); });

  m.def("validate_space", [](const DecaySpace& s) { return to_py(io::to_json(validate_space(s))); },
        py::arg("space"));
  m.def("compute_zeta", [](const DecaySpace& s, double tol) { return compute_zeta(s, tol).zeta; },
        py::arg("space"), py::arg("tol") = kDefaultZetaTol, "Metricity exponent (at least 1).");
  m.def("analyze_metricity", [](const DecaySpace& s, double tol) { return to_py(io::to_json(analyze_metricity(s, tol))); },
        py::arg("space"), py::arg("tol") = kDefaultZetaTol);
  m.def("quasi_distances", &quasi_distances, py::arg("space"), py::arg("zeta"), py::arg("tol") = 1e-9);
  m.def("metric_quasi_distances", &metric_quasi_distances, py::arg("space"), py::arg("tol") = kDefaultZetaTol);

  m.def("affectance", &affectance, py::arg("system"), py::arg("w"), py::arg("v"));
  m.def("is_feasible", [](const LinkSystem& s, const LinkSet& set, double K) { return is_feasible(s, set, K); },
        py::arg("system"), py::arg("links"), py::arg("K") = 1.0);
  m.def("sinr", [](const LinkSystem& s, const LinkSet& set, LinkId v) { return sinr(s, set, v); },
        py::arg("system"), py::arg("links"), py::arg("v"));
  m.def("pairwise_power_infeasible",
        [](const LinkSystem& s, LinkId v, LinkId w) { return pairwise_power_infeasible(s, v, w).infeasible; },
        py::arg("system"), py::arg("v"), py::arg("w"));
  m.def("interference_at",
        [](const DecaySpace& s, const NodeSet& senders, NodeId target, double power) {
          return interference_at(s, senders, target, power);
        },
        py::arg("space"), py::arg("senders"), py::arg("target"), py::arg("power") = 1.0);

  m.def("capacity_uniform",
        [](const LinkSystem& s, const QuasiMetric* quasi) {
          const auto q = quasi ? *quasi : metric_quasi_distances(s.space());
          return to_py(io::to_json(capacity_uniform(s, q)));
        },
        py::arg("system"), py::arg("quasi") = nullptr);
  m.def("capacity_with_oracle",
        [](const LinkSystem& s, std::size_t limit) {
          return to_py(io::to_json(capacity_with_oracle(s, metric_quasi_distances(s.space()), limit)));
        },
        py::arg("system"), py::arg("oracle_limit") = kDefaultOracleLimit);
  m.def("capacity_oracle",
        [](const LinkSystem& s, std::size_t max_n) {
          const auto r = capacity_oracle(s, max_n);
          return py::make_tuple(r.size, r.witness);
        },
        py::arg("system"), py::arg("max_n") = kDefaultOracleLimit, "Returns (optimum, witness set).");
  m.def("signal_strengthen",
        [](const LinkSystem& s, const LinkSet& set, double p, double q) {
          return to_py(io::to_json(signal_strengthen(s, set, p, q)));
        },
        py::arg("system"), py::arg("links"), py::arg("p") = 1.0, py::arg("q") = 3.0);
  m.def("separation_strengthen",
        [](const LinkSystem& s, const QuasiMetric& quasi, const LinkSet& set, double tau, double eta) {
          return to_py(io::to_json(separation_strengthen(s, quasi, set, tau, eta)));
        },
        py::arg("system"), py::arg("quasi"), py::arg("links"), py::arg("tau"), py::arg("eta"));
  m.def("check_onezetasep",
        [](const LinkSystem& s, const QuasiMetric& quasi, const LinkSet& set) {
          return to_string(check_onezetasep(s, quasi, set).status);
        },
        py::arg("system"), py::arg("quasi"), py::arg("links"));
  m.def("amicable_subset",
        [](const LinkSystem& s, const QuasiMetric& quasi, const LinkSet& set) {
          return to_py(io::to_json(amicable_subset(s, quasi, set)));
        },
        py::arg("system"), py::arg("quasi"), py::arg("links"));

  m.def("fading_parameter",
        [](const DecaySpace& s, double r, std::size_t exact_limit) {
          return to_py(io::to_json(fading_parameter(s, r, exact_limit)));
        },
        py::arg("space"), py::arg("r"), py::arg("exact_limit") = kDefaultExactLimit);
  m.def("assouad_estimate",
        [](const DecaySpace& s, std::optional<double> C, std::vector<double> q_grid) {
          if (q_grid.empty()) q_grid = default_q_grid();
          return to_py(io::to_json(assouad_estimate(s, C, q_grid)));
        },
        py::arg("space"), py::arg("C") = 1.0, py::arg("q_grid") = std::vector<double>{},
        "Pass C=None to fit the constant.");
  m.def("riemann_zeta_hat", &riemann_zeta_hat, py::arg("s"));
  m.def("fading_bound", &fading_bound, py::arg("C"), py::arg("A"));
  m.def("independence_dimension",
        [](const DecaySpace& s) { return to_py(io::to_json(independence_dimension(s, metric_quasi_distances(s)))); },
        py::arg("space"));
  m.def("guard_set",
        [](const DecaySpace& s, NodeId x) { return guard_set(s, metric_quasi_distances(s), x).guards; },
        py::arg("space"), py::arg("x"));

  m.def("generate",
        [](const std::string& family, const py::object& params, std::optional<std::uint64_t> seed) -> py::object {
          const auto generated = generate(io::generator_spec_from_json(family, from_py(params), seed));
          if (const auto* s = std::get_if<DecaySpace>(&generated)) return py::cast(*s);
          return py::cast(std::get<LinkSystem>(generated));
        },
        py::arg("family"), py::arg("params") = py::dict(), py::arg("seed") = py::none(),
        "Build an instance of the named family; returns a DecaySpace or LinkSystem.");
  m.def("load_space", &io::load_space, py::arg("path"));
  m.def("load_system", &io::load_system, py::arg("path"));
  m.def("verify",
        [](std::uint64_t seed) {
          VerifyOptions opts;
          opts.seed = seed;
          return to_py(to_json(run_verify(opts)));
        },
        py::arg("seed") = 1, "Run the built-in invariant corpus.");
}
