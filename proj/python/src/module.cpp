#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "liplab/dimension.hpp"
#include "liplab/errors.hpp"
#include "liplab/harness.hpp"
#include "liplab/instances.hpp"
#include "liplab/space_json.hpp"
#include "liplab/verify.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

// Everything crosses the boundary as JSON text; the Python package parses it.
json parse(const std::string& s) { return json::parse(s); }

class PyInstance {
 public:
  PyInstance(const std::string& space, const std::string& instance)
      : space_(liplab::make_space(parse(space))), inst_(liplab::make_instance(space_, parse(instance))) {}

  double mean(const std::string& point) const { return inst_->mean(space_->point_from_json(parse(point))); }
  double realize(std::uint64_t key, const std::string& point) const {
    return inst_->realize(key, space_->point_from_json(parse(point)));
  }
  double sup_mean() const { return inst_->sup_mean(); }
  std::string argmax() const { return space_->point_to_json(inst_->argmax()).dump(); }
  std::string describe() const { return inst_->describe().dump(); }

 private:
  liplab::SpacePtr space_;
  liplab::InstancePtr inst_;
};

class PySession {
 public:
  PySession(const std::string& space, const std::string& algorithm, std::uint64_t seed)
      : space_(liplab::make_space(parse(space))), s_(liplab::make_session(space_, parse(algorithm), seed)) {}

  // {"bet": p, "queries": [...], "observe": [...]}
  std::string choose() {
    const auto& a = s_->choose();
    json q = json::array(), obs = json::array();
    for (const auto& p : a.queries) q.push_back(space_->point_to_json(p));
    for (const auto& p : liplab::observed_points(s_->mode(), a)) obs.push_back(space_->point_to_json(p));
    return json{{"bet", space_->point_to_json(a.bet)}, {"queries", q}, {"observe", obs}}.dump();
  }
  void observe(const std::vector<double>& values) { s_->observe(values); }
  std::uint64_t t() const { return s_->t(); }
  std::string name() const { return s_->name(); }
  std::string mode() const { return liplab::to_string(s_->mode()); }
  std::string params() const { return s_->params().dump(); }
  std::string report() const { return s_->report().dump(); }

 private:
  liplab::SpacePtr space_;
  liplab::SessionPtr s_;
};

std::string simulate(const std::string& config, std::size_t parallelism, bool full_arrays) {
  auto cfg = liplab::ExperimentConfig::from_json(parse(config));
  liplab::ReplicateResult res;
  {
    py::gil_scoped_release release;
    res = liplab::run_replicates(cfg, parallelism);
  }
  json traces = json::array();
  for (const auto& tr : res.traces) traces.push_back(liplab::trace_to_json(tr, full_arrays));
  return json{{"config", cfg.to_json()}, {"aggregate", res.summary.to_json()}, {"traces", traces}, {"failures", res.failures}}
      .dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "liplab native core";

  py::register_exception<liplab::ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<liplab::ResolutionError>(m, "ResolutionError", PyExc_RuntimeError);
  py::register_exception<liplab::ProtocolError>(m, "ProtocolError", PyExc_RuntimeError);

  m.def("algorithm_names", &liplab::algorithm_names);
  m.def("round_key", &liplab::round_key, py::arg("seed"), py::arg("t"));
  m.def("simulate", &simulate, py::arg("config"), py::arg("parallelism") = 1, py::arg("full_arrays") = false);

  m.def(
      "dimension",
      [](const std::string& space, const std::string& mode, int lo, int hi) {
        auto s = liplab::make_space(parse(space));
        return liplab::estimate_dimension(*s, liplab::parse_dimension_mode(mode), liplab::dyadic_grid(lo, hi)).to_json().dump();
      },
      py::arg("space"), py::arg("mode") = "cov", py::arg("lo") = 4, py::arg("hi") = 12);

  m.def(
      "fit_exponent",
      [](const std::vector<double>& t, const std::vector<double>& r, double lo, double hi) {
        return liplab::fit_exponent(t, r, lo, hi).to_json().dump();
      },
      py::arg("t"), py::arg("r"), py::arg("t_lo"), py::arg("t_hi"));

  m.def("kl_bernoulli", &liplab::kl_bernoulli, py::arg("a"), py::arg("b"));
  m.def(
      "kl_divergence",
      [](std::vector<double> p, std::vector<double> q) {
        return liplab::kl_divergence(liplab::FiniteMeasure{std::move(p), {}}, liplab::FiniteMeasure{std::move(q), {}});
      },
      py::arg("p"), py::arg("q"));
  m.def("lb_time_threshold", &liplab::lb_time_threshold, py::arg("eps"), py::arg("delta"), py::arg("k"));

  py::class_<PyInstance>(m, "Instance")
      .def(py::init<const std::string&, const std::string&>(), py::arg("space"), py::arg("instance"))
      .def("mean", &PyInstance::mean)
      .def("realize", &PyInstance::realize, py::arg("key"), py::arg("point"))
      .def("sup_mean", &PyInstance::sup_mean)
      .def("argmax", &PyInstance::argmax)
      .def("describe", &PyInstance::describe);

  py::class_<PySession>(m, "Session")
      .def(py::init<const std::string&, const std::string&, std::uint64_t>(), py::arg("space"), py::arg("algorithm"),
           py::arg("seed") = 0)
      .def("choose", &PySession::choose)
      .def("observe", &PySession::observe, py::arg("values"))
      .def_property_readonly("t", &PySession::t)
      .def_property_readonly("name", &PySession::name)
      .def_property_readonly("mode", &PySession::mode)
      .def("params", &PySession::params)
      .def("report", &PySession::report);
}
