#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "mrl/alternatives.hpp"
#include "mrl/bahadur.hpp"
#include "mrl/error.hpp"
#include "mrl/inference.hpp"
#include "mrl/mc.hpp"
#include "mrl/null_dist.hpp"
#include "mrl/statistic.hpp"
#include "mrl/study_config.hpp"

namespace py = pybind11;

namespace {

mrl::Sample to_sample(const std::vector<double>& x) { return mrl::Sample(x); }

py::dict variance_dict(const mrl::VarianceEstimate& v) {
  py::dict d;
  d["sigma2_hat"] = v.sigma2_hat;
  d["t_over_n"] = v.t_over_n();
  d["tau2"] = v.tau2;
  d["s"] = std::vector<double>(v.s.begin(), v.s.end());
  return d;
}

py::list records(const mrl::StudyResult& r) {
  py::list out;
  for (const auto& rec : r.records) {
    py::dict d;
    d["study"] = rec.study;
    d["a"] = rec.a;
    d["model"] = rec.model;
    d["theta"] = rec.theta;
    d["beta"] = rec.beta;
    d["n"] = rec.n;
    d["metric"] = rec.metric;
    d["estimate"] = rec.estimate;
    d["mc_stderr"] = rec.mc_stderr;
    d["reps"] = rec.reps;
    d["degenerate"] = rec.degenerate;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Mean-residual-life test for exponentiality";

  auto value_error = py::reinterpret_borrow<py::object>(PyExc_ValueError);
  auto runtime_error = py::reinterpret_borrow<py::object>(PyExc_RuntimeError);
  py::register_exception<mrl::DataError>(m, "DataError", value_error);
  py::register_exception<mrl::UnsupportedFamily>(m, "UnsupportedFamily", value_error);
  py::register_exception<mrl::NonConvergence>(m, "NonConvergence", runtime_error);
  py::register_exception<mrl::UnsupportedRegion>(m, "UnsupportedRegion", runtime_error);
  py::register_exception<mrl::DegenerateVariance>(m, "DegenerateVariance", runtime_error);
  py::register_exception<mrl::InconsistentExtrapolation>(m, "InconsistentExtrapolation", runtime_error);

  m.def("statistic", [](const std::vector<double>& x, double a) {
    return mrl::statistic(to_sample(x), mrl::TuningParam(a));
  }, py::arg("x"), py::arg("a") = 1.0, "T_{n,a} of a positive sample.");

  m.def("cumulants", [](double a) {
    const auto c = mrl::cumulants(mrl::TuningParam(a));
    return std::vector<double>(c.kappa.begin(), c.kappa.end());
  }, py::arg("a"), "First four cumulants of the limiting null law.");

  m.def("eigenvalues", [](double a, int count) {
    return mrl::eigen_spectrum(mrl::TuningParam(a), count).lambdas;
  }, py::arg("a"), py::arg("count") = 20);

  m.def("eigenfunction", [](double a, int k, double t) {
    return mrl::eigenfunction(mrl::TuningParam(a), k, t);
  }, py::arg("a"), py::arg("k"), py::arg("t"));

  m.def("pearson_quantile", [](double a, double q) {
    return mrl::pearson_quantile(mrl::TuningParam(a), q);
  }, py::arg("a"), py::arg("q"));

  m.def("pearson_p_value", [](double a, double t) {
    return mrl::pearson_p_value(mrl::TuningParam(a), t);
  }, py::arg("a"), py::arg("t"), "Approximate (asymptotic) p-value of an observed T_{n,a}.");

  m.def("series_quantile", [](double a, double q, int terms, int reps, std::uint64_t seed, unsigned workers) {
    py::gil_scoped_release release;
    return mrl::series_quantile(mrl::TuningParam(a), q, terms, reps, seed, workers);
  }, py::arg("a"), py::arg("q"), py::arg("terms") = 100, py::arg("reps") = 200000,
     py::arg("seed") = 1, py::arg("workers") = 0);

  m.def("variance_estimate", [](const std::vector<double>& x, double a) {
    return variance_dict(mrl::variance_estimate(to_sample(x), mrl::TuningParam(a)));
  }, py::arg("x"), py::arg("a") = 1.0);

  m.def("confidence_interval", [](const std::vector<double>& x, double a, double alpha) {
    const auto ci = mrl::confidence_interval(to_sample(x), mrl::TuningParam(a), alpha);
    return py::make_tuple(ci.lower, ci.upper);
  }, py::arg("x"), py::arg("a") = 1.0, py::arg("alpha") = 0.05);

  m.def("neighbourhood_test", [](const std::vector<double>& x, double a, double delta_tilde, double alpha) {
    const auto r = mrl::neighbourhood_test(to_sample(x), mrl::TuningParam(a), delta_tilde, alpha);
    py::dict d;
    d["reject"] = r.reject;
    d["statistic"] = r.statistic;
    d["threshold"] = r.threshold;
    return d;
  }, py::arg("x"), py::arg("a"), py::arg("delta_tilde"), py::arg("alpha") = 0.05);

  m.def("delta", [](const std::string& model, double a) {
    return mrl::delta(mrl::parse_model(model).build(), mrl::TuningParam(a));
  }, py::arg("model"), py::arg("a"), "Delta_a of a model such as 'family=gamma_bb beta=3'.");

  m.def("sigma2", [](const std::string& model, double a) {
    return mrl::sigma2(mrl::parse_model(model).build(), mrl::TuningParam(a));
  }, py::arg("model"), py::arg("a"));

  m.def("sigma2_delta_method", [](const std::string& model, double a) {
    return mrl::sigma2_delta_method(mrl::parse_model(model).build(), mrl::TuningParam(a));
  }, py::arg("model"), py::arg("a"));

  m.def("efficiency", [](const std::string& family, double a, double beta) {
    const auto r = mrl::efficiency(mrl::FamilySpec{mrl::parse_family(family), beta}, mrl::TuningParam(a));
    py::dict d;
    d["b2"] = r.b2;
    d["kl"] = r.kl;
    d["lambda1"] = r.lambda1;
    d["eff"] = r.eff;
    return d;
  }, py::arg("family"), py::arg("a"), py::arg("beta") = 3.0);

  m.def("null_quantiles", [](double a, std::size_t n, int reps, const std::vector<double>& q,
                             std::uint64_t seed, unsigned workers) {
    py::gil_scoped_release release;
    return mrl::null_quantiles(a, n, reps, q, seed, workers);
  }, py::arg("a"), py::arg("n"), py::arg("reps"), py::arg("q"), py::arg("seed") = 1,
     py::arg("workers") = 0);

  m.def("run_study", [](const std::string& config) {
    const mrl::StudyConfig c = mrl::parse_study_config(config);
    mrl::StudyResult r;
    {
      py::gil_scoped_release release;
      r = mrl::run_study(c);
    }
    return records(r);
  }, py::arg("config"), "Run a study described in key = value or JSON text; returns a list of records.");
}
