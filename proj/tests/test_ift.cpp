#include <doctest.h>

#include <cmath>
#include <complex>
#include <map>
#include <random>

#include "lawson/errors.hpp"
#include "lawson/ift.hpp"

using lawson::EvalMode;
using lawson::IftModel;
using lawson::IftParams;
using lawson::LaurentPoly;

namespace {

using cd = std::complex<double>;

const IftModel& model_n1() {
  static const IftModel m({1, 0, false});
  return m;
}

const IftModel& model_n2_N1() {
  static const IftModel m({2, 1, false});
  return m;
}

// max |p_d - expected_d| over all degrees
double coeff_error(const LaurentPoly& p, const std::map<int, cd>& expected) {
  double err = 0.0;
  p.for_each([&](int d, const lawson::CertifiedComplex& c) {
    cd e = 0.0;
    if (auto it = expected.find(d); it != expected.end()) e = it->second;
    err = std::max(err, std::abs(cd(c.re_double(), c.im_double()) - e) + c.radius());
  });
  for (const auto& [d, e] : expected)
    if (d < p.min_deg() || d > p.max_deg()) err = std::max(err, std::abs(e));
  return err;
}

double norm1(const LaurentPoly& p) {
  double s = 0.0;
  p.for_each([&](int, const lawson::CertifiedComplex& c) { s += c.center_abs_upper() + c.radius(); });
  return s;
}

IftParams sample_params() {
  IftParams p;
  p.T = 0.01;
  p.R = {0.01, 0.02, 0.005};
  p.varrho = {0.5, 0.4, 0.3};
  p.rho = 1.5;
  return p;
}

}  // namespace

TEST_CASE("x_j at u = 0 are the Clifford potential") {
  const auto& m = model_n1();
  const double r = 1.0 / (2.0 * std::sqrt(2.0));
  const lawson::Exponents zero{0, 0, 0, 0};
  CHECK(coeff_error(m.x(1).at(zero), {{-1, cd(0, 0.5)}, {1, cd(0, -0.5)}}) < 1e-25);
  CHECK(coeff_error(m.x(2).at(zero), {{-1, -r}, {1, -r}}) < 1e-15);
  CHECK(coeff_error(m.x(3).at(zero), {{-1, -r}, {1, -r}}) < 1e-15);
  // x1 = xbar1 + i lambda u1, x2 = xbar2 - u2 + lambda u3
  CHECK(coeff_error(m.x(1).at({0, 1, 0, 0}), {{1, cd(0, 1)}}) < 1e-25);
  CHECK(coeff_error(m.x(2).at({0, 0, 1, 0}), {{0, -1.0}}) < 1e-25);
  CHECK(coeff_error(m.x(2).at({0, 0, 0, 1}), {{1, 1.0}}) < 1e-25);
}

TEST_CASE("coefficients of K(u)") {
  const auto& m = model_n1();
  const double s2 = std::sqrt(2.0);
  CHECK(coeff_error(m.b(0, {0, 0, 0}), {{0, 1.0}}) < 1e-25);
  CHECK(coeff_error(m.b(0, {1, 0, 0}), {{0, -1.0}, {2, 1.0}}) < 1e-25);
  CHECK(coeff_error(m.b(0, {0, 1, 0}), {}) < 1e-25);
  CHECK(coeff_error(m.b(0, {0, 0, 1}), {{0, -s2}, {2, -s2}}) < 1e-15);
  CHECK(coeff_error(m.b(0, {2, 0, 0}), {{2, -1.0}}) < 1e-25);
  CHECK(coeff_error(m.b(0, {0, 2, 0}), {{0, 2.0}}) < 1e-25);
  CHECK(coeff_error(m.b(0, {0, 0, 2}), {{2, 2.0}}) < 1e-25);
  CHECK(coeff_error(m.b(0, {0, 1, 1}), {}) < 1e-25);
}

TEST_CASE("leading coefficients of the closing polynomial") {
  const auto& m = model_n1();
  const double c = M_PI / std::sqrt(2.0);
  // a_{0,0} = 2 pi xbar3
  CHECK(coeff_error(m.a(0, {0, 0, 0}), {{-1, -c}, {1, -c}}) < 1e-14);
  CHECK(coeff_error(m.a(0, {0, 1, 0}), {{0, 2 * M_PI}}) < 1e-14);
  CHECK(coeff_error(m.a(0, {0, 0, 1}), {{1, 2 * M_PI}}) < 1e-14);
}

TEST_CASE("Taylor corrections remove the first order alpha = 0 terms") {
  const auto& m0 = IftModel({2, 0, false});
  const auto& m1 = model_n2_N1();
  double with = 0.0, without = 0.0;
  for (const auto& p : m1.explicit_terms(1)) with += norm1(p);
  for (const auto& p : m0.explicit_terms(1)) without += norm1(p);
  CHECK(with < 1e-15);
  CHECK(without > 1e-3);
}

TEST_CASE("estimates vanish on the trivial box and grow with T and R") {
  const auto& m = model_n1();
  IftParams p;
  p.T = 0.0;
  p.R = {0.0, 0.0, 0.0};
  for (double g : m.estimate_G(p)) CHECK(g == doctest::Approx(0.0));

  const IftParams base = sample_params();
  const auto g0 = m.estimate_G(base);
  IftParams bigger_t = base;
  bigger_t.T *= 2;
  IftParams bigger_r = base;
  for (auto& r : bigger_r.R) r *= 2;
  const auto gt = m.estimate_G(bigger_t);
  const auto gr = m.estimate_G(bigger_r);
  for (int i = 0; i < 3; ++i) {
    const auto k = static_cast<std::size_t>(i);
    CHECK(gt[k] >= g0[k]);
    CHECK(gr[k] >= g0[k]);
  }
}

TEST_CASE("Lipschitz bounds are linear in varrho") {
  const auto& m = model_n1();
  IftParams p = sample_params();
  const auto l1 = m.estimate_Lip(p);
  for (auto& v : p.varrho) v *= 3.0;
  const auto l3 = m.estimate_Lip(p);
  for (std::size_t i = 0; i < 3; ++i) CHECK(l3[i] == doctest::Approx(3.0 * l1[i]).epsilon(1e-12));
}

TEST_CASE("grouped bounds never exceed the naive ones") {
  for (const IftModel* m : {&model_n1(), &model_n2_N1()}) {
    const IftParams p = sample_params();
    const auto g = m->estimate_G(p, EvalMode::fast, lawson::Grouping::grouped);
    const auto n = m->estimate_G(p, EvalMode::fast, lawson::Grouping::naive);
    const auto lg = m->estimate_Lip(p, EvalMode::fast, lawson::Grouping::grouped);
    const auto ln = m->estimate_Lip(p, EvalMode::fast, lawson::Grouping::naive);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(g[i] <= n[i] * (1 + 1e-12));
      CHECK(lg[i] <= ln[i] * (1 + 1e-12));
    }
  }
}

TEST_CASE("certified evaluation encloses the fast one") {
  const auto& m = model_n2_N1();
  const IftParams p = sample_params();
  const auto f = m.genus_bound(p, EvalMode::fast);
  const auto c = m.genus_bound(p, EvalMode::certified);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(c.C_G[i] >= f.C_G[i] * (1 - 1e-12));
    CHECK(c.C_Lip[i] >= f.C_Lip[i] * (1 - 1e-12));
  }
  CHECK(c.C_K >= f.C_K * (1 - 1e-12));
  CHECK(c.T_prime <= f.T_prime * (1 + 1e-12));
  CHECK(c.genus >= f.genus * (1 - 1e-12));
  CHECK(c.genus == doctest::Approx(f.genus).epsilon(1e-9));
}

TEST_CASE("Gronwall constants") {
  const auto& m = model_n1();
  IftParams p = sample_params();
  const auto g = m.gronwall_constants(p);
  const double rho = p.rho;
  CHECK(g.c[0] == doctest::Approx(rho + rho * p.R[0]));
  CHECK(g.c[1] == doctest::Approx(rho / std::sqrt(2.0) + p.R[1] + rho * p.R[2]));
  CHECK(g.c[2] == doctest::Approx(g.c[1]));
  const double k23 = 2 * M_PI + 4 * std::log(1 + std::sqrt(2.0));
  CHECK(g.C3 == doctest::Approx(M_PI * rho * p.varrho[0] + k23 * p.varrho[1] + rho * k23 * p.varrho[2]));
  CHECK(g.C0 > 0.0);
  CHECK(g.C1 > 0.0);

  IftParams q = p;
  for (auto& r : q.R) r *= 2;
  const auto h = m.gronwall_constants(q);
  CHECK(h.C0 >= g.C0);
  CHECK(h.C1 >= g.C1);
}

TEST_CASE("remainder weights come from walks of length n + 1") {
  const auto& w = model_n1().remainder_weights();
  REQUIRE_FALSE(w.empty());
  for (const auto& [counts, weight] : w) {
    CHECK(counts[0] + counts[1] + counts[2] == 2);
    CHECK(weight > 0.0);
  }
}

TEST_CASE("C_K bounds K(u)(1) - 1 on the box") {
  // at lambda = 1: K - 1 = -u1^2 + 2 u2^2 + 2 u3^2 - 2 sqrt2 u3
  const auto& m = model_n1();
  const IftParams p = sample_params();
  const double ck = m.C_K(p);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    std::array<cd, 3> u;
    for (std::size_t j = 0; j < 3; ++j) u[j] = std::polar(p.R[j] * std::sqrt(uni(rng)), 2 * M_PI * uni(rng));
    const cd k = -u[0] * u[0] + 2.0 * u[1] * u[1] + 2.0 * u[2] * u[2] - 2.0 * std::sqrt(2.0) * u[2];
    worst = std::max(worst, std::abs(k));
  }
  const double corner = p.R[0] * p.R[0] + 2 * p.R[1] * p.R[1] + 2 * p.R[2] * p.R[2] + 2 * std::sqrt(2.0) * p.R[2];
  CHECK(worst <= ck);
  CHECK(corner <= ck * (1 + 1e-12));
}

TEST_CASE("genus bound errors") {
  const auto& m = model_n1();
  IftParams p = sample_params();
  p.R = {1.0, 1.0, 1.0};
  CHECK_THROWS_AS(m.genus_bound(p), lawson::CKTooLarge);
}

TEST_CASE("Cauchy configuration without corrections") {
  const auto& m = model_n1();
  IftParams p = sample_params();
  lawson::IftConstants c;
  c.C_K = 0.0;
  c.T_prime = 0.1;
  const auto cfg = lawson::cauchy_config(m, p, c);
  CHECK(cfg.C_A == doctest::Approx(std::sqrt(2.0) * p.R[1]));
  CHECK(cfg.T_prime == doctest::Approx(0.1));
}

TEST_CASE("optimized genus bound for n = 1") {
  const auto r = lawson::optimize_genus(model_n1());
  CHECK(r.verified);
  CHECK(r.certified.genus == doctest::Approx(94.697).epsilon(0.05));
  CHECK(IftModel::constraints_hold(r.params, r.constants, 0.99999));
  CHECK(r.certified.genus >= r.constants.genus * (1 - 1e-9));
}

TEST_CASE("an unattainable contraction factor gives no feasible point") {
  lawson::IftOptimizeOptions o;
  o.kappa = 1e-6;
  o.restarts = 2;
  o.max_iterations = 500;
  bool infeasible = false;
  double genus = 0.0;
  try {
    genus = lawson::optimize_genus(model_n1(), o).constants.genus;
  } catch (const lawson::NoFeasiblePoint&) {
    infeasible = true;
  }
  CHECK((infeasible || genus > 94.0));
}
