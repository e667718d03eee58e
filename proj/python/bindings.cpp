#include <pybind11/pybind11.h>
#include <pybind11/complex.h>
#include <pybind11/stl.h>

#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>

#include "lawson/area.hpp"
#include "lawson/cli.hpp"
#include "lawson/errors.hpp"
#include "lawson/genus2.hpp"
#include "lawson/ift.hpp"
#include "lawson/mpl.hpp"
#include "lawson/mzv_symbolic.hpp"
#include "lawson/omega.hpp"
#include "lawson/series.hpp"

namespace py = pybind11;
using namespace lawson;

namespace {

// One cache per directory for the lifetime of the module.
MzvCache* cache_for(const std::optional<std::string>& dir) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<MzvCache>> caches;
  std::string d = dir.value_or("");
  if (d.empty())
    if (const char* env = std::getenv("LAWSON_CACHE_DIR")) d = env;
  if (d.empty()) return nullptr;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = caches[d];
  if (!slot) slot = std::make_unique<MzvCache>(d);
  return slot.get();
}

Endpoint parse_endpoint(const std::string& s) {
  if (s == "1") return Endpoint::one;
  if (s == "i") return Endpoint::i;
  throw py::value_error("endpoint must be '1' or 'i'");
}

OmegaRoute parse_route(const std::string& s) {
  if (s == "auto") return OmegaRoute::automatic;
  if (s == "zeta") return OmegaRoute::zeta;
  if (s == "integral") return OmegaRoute::integral;
  throw py::value_error("route must be 'auto', 'zeta' or 'integral'");
}

std::vector<CertifiedComplex> coefficients(const ScalarSeries& s, int N) {
  std::vector<CertifiedComplex> out;
  for (int k = 1; k <= N; ++k) out.push_back(s.coeff(k));
  return out;
}

py::dict constants_dict(const IftConstants& c) {
  py::dict d;
  d["C_G"] = c.C_G;
  d["C_Lip"] = c.C_Lip;
  d["C_K"] = c.C_K;
  d["T_prime"] = c.T_prime;
  d["genus"] = c.genus;
  return d;
}

}  // namespace

PYBIND11_MODULE(_lawson, m) {
  m.doc() = "Certified computations for the Lawson surfaces xi_{1,g}";

  py::register_exception<LawsonError>(m, "LawsonError", PyExc_RuntimeError);

  py::class_<CertifiedComplex>(m, "Disc", "Complex disc: exact center and an upper bound for the radius.")
      .def_property_readonly("center", [](const CertifiedComplex& z) { return std::complex<double>(z.re_double(), z.im_double()); })
      .def_property_readonly("real", &CertifiedComplex::re_double)
      .def_property_readonly("imag", &CertifiedComplex::im_double)
      .def_property_readonly("radius", &CertifiedComplex::radius)
      .def("re_str", [](const CertifiedComplex& z, int digits) { return z.re().to_string(digits); }, py::arg("digits") = 30)
      .def("im_str", [](const CertifiedComplex& z, int digits) { return z.im().to_string(digits); }, py::arg("digits") = 30)
      .def("contains", &CertifiedComplex::contains)
      .def("overlaps", &CertifiedComplex::overlaps)
      .def("contains_zero", &CertifiedComplex::contains_zero)
      .def("__complex__", [](const CertifiedComplex& z) { return std::complex<double>(z.re_double(), z.im_double()); })
      .def("__repr__", [](const CertifiedComplex& z) { return "Disc(" + z.to_string(20) + ")"; });

  m.def(
      "alphas",
      [](int order, int digits, std::optional<std::string> cache_dir, int jobs) {
        SeriesOptions o;
        o.precision = Precision{digits, true};
        o.mode = SeriesMode::minimal;
        o.cache = cache_for(cache_dir);
        o.jobs = jobs;
        ParamSeries ps(Angle::pi_fraction(1, 4), o);
        ps.extend_to(order);
        return coefficients(area_coefficients(ps, order), order);
      },
      "alpha_1..alpha_order of the area expansion 8 pi (1 - sum alpha_k s^k).", py::arg("order"),
      py::arg("digits") = 60, py::arg("cache_dir") = py::none(), py::arg("jobs") = 1,
      py::call_guard<py::gil_scoped_release>());

  m.def(
      "willmore_coefficients",
      [](const std::string& phi, int order, int digits, std::optional<std::string> cache_dir) {
        SeriesOptions o;
        o.precision = Precision{digits, true};
        o.cache = cache_for(cache_dir);
        ParamSeries ps(Angle::parse(phi), o);
        ps.extend_to(order);
        const auto wh = willmore_mean_curvature_coefficients(ps, order);
        return std::make_pair(coefficients(wh.W, order), coefficients(wh.H, order));
      },
      "(W_1..W_order, H_1..H_order) for the CMC surfaces at angle phi.", py::arg("phi"), py::arg("order"),
      py::arg("digits") = 40, py::arg("cache_dir") = py::none(), py::call_guard<py::gil_scoped_release>());

  m.def(
      "omega",
      [](const std::string& word, const std::string& endpoint, const std::string& phi, int digits,
         const std::string& route, std::optional<std::string> cache_dir) {
        OmegaOptions o;
        o.precision = Precision{digits, true};
        o.route = parse_route(route);
        o.cache = cache_for(cache_dir);
        return omega_eval(parse_word(word), parse_endpoint(endpoint), Angle::parse(phi), o);
      },
      "Omega_w(endpoint) at angle phi; word as '2,2,3'.", py::arg("word"), py::arg("endpoint") = "1",
      py::arg("phi") = "pi/4", py::arg("digits") = 40, py::arg("route") = "auto", py::arg("cache_dir") = py::none(),
      py::call_guard<py::gil_scoped_release>());

  m.def(
      "mzv",
      [](const std::string& index, int digits, std::optional<std::string> cache_dir) {
        return alternating_mzv(MzvIndex::parse(index), Precision{digits, true}, cache_for(cache_dir));
      },
      "Alternating multiple zeta value; index as '1b,2' for zeta(-1, 2).", py::arg("index"), py::arg("digits") = 40,
      py::arg("cache_dir") = py::none(), py::call_guard<py::gil_scoped_release>());

  m.def(
      "mzv_closed_form", [](const std::string& index) { return closed_form(MzvIndex::parse(index)).to_string(); },
      "Closed form of a weight <= 3 alternating zeta value.", py::arg("index"));
  m.def(
      "alpha3_exact", [] { return alpha3_exact().to_string(); }, "alpha_3 in exact arithmetic.");

  m.def(
      "area_table",
      [](int gmin, int gmax, int order, std::optional<double> ca, std::optional<double> tprime) {
        std::optional<TailConfig> tail;
        if (ca.has_value() != tprime.has_value()) throw py::value_error("ca and tprime go together");
        if (ca) tail = TailConfig{*ca, *tprime, 0};
        const auto rows = area_table(gmin, gmax, reference_alphas(Precision{40, true}.bits(), order), order, tail);
        py::list out;
        for (const auto& r : rows) {
          py::dict d;
          d["genus"] = r.genus;
          d["approx"] = r.approx.re_double();
          d["error_bound"] = r.error_bound ? py::cast(*r.error_bound) : py::none();
          d["K"] = r.K_used;
          out.append(d);
        }
        return out;
      },
      "Area approximations (tabulated alpha_k) and optional tail bounds.", py::arg("gmin") = 3, py::arg("gmax") = 10,
      py::arg("order") = 21, py::arg("ca") = py::none(), py::arg("tprime") = py::none());

  m.def(
      "genus2_bound",
      [](std::optional<std::array<double, 6>> params) {
        return bound(params ? TriangulationParams::from_array(*params) : TriangulationParams::paper());
      },
      "48 (sum of the four triangle areas) at (s0, s1, s2, s3, t1, t2); printed parameters by default.",
      py::arg("params") = py::none());

  m.def(
      "optimize_genus2",
      [](const std::string& seed, int restarts) {
        TriangulationParams start;
        if (seed == "paper") start = TriangulationParams::paper();
        else if (seed == "center") start = TriangulationParams::center();
        else throw py::value_error("seed must be 'paper' or 'center'");
        Genus2Options o;
        o.restarts = restarts;
        const Genus2Result r = [&] {
          py::gil_scoped_release release;
          return optimize_bound(start, o);
        }();
        py::dict d;
        d["params"] = r.params.as_array();
        d["bound"] = r.bound;
        d["certified"] = r.certified;
        return d;
      },
      py::arg("seed") = "center", py::arg("restarts") = 8);

  m.def(
      "ift_genus",
      [](int n, int derivs, bool quadratic, int restarts, unsigned seed, std::optional<std::string> cache_dir) {
        IftModelOptions mo;
        mo.cache = cache_for(cache_dir);
        IftOptimizeOptions oo;
        oo.restarts = restarts;
        oo.seed = seed;
        std::optional<IftModel> model;
        IftResult r;
        TailConfig tail;
        {
          py::gil_scoped_release release;
          model.emplace(IftSetup{n, derivs, quadratic}, mo);
          r = optimize_genus(*model, oo);
          tail = cauchy_config(*model, r.params, r.certified);
        }
        py::dict d;
        py::dict p;
        p["T"] = r.params.T;
        p["R"] = r.params.R;
        p["varrho"] = r.params.varrho;
        p["rho"] = r.params.rho;
        d["params"] = p;
        d["constants"] = constants_dict(r.constants);
        d["certified"] = constants_dict(r.certified);
        d["verified"] = r.verified;
        d["genus"] = r.certified.genus;
        d["C_A"] = tail.C_A;
        return d;
      },
      "Optimized IFT genus bound with its certified re-evaluation.", py::arg("n") = 1, py::arg("derivs") = 0,
      py::arg("quadratic") = false, py::arg("restarts") = 20, py::arg("seed") = 1, py::arg("cache_dir") = py::none());

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = run_cli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      "Run the command line front end; returns (exit code, stdout, stderr).", py::arg("args"));
}
