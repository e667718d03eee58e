// Acceptance checks: one PASS/FAIL line per criterion.
//
//   lawson_acceptance [--cache-dir DIR] [--extended]
//
// --extended (or LAWSON_EXTENDED=1) adds the long IFT runs (n = 6 and
// n = 8 with seven Taylor corrections and the quadratic terms) that feed the
// area error column and the monotonicity certificate.
#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>

#include "lawson/area.hpp"
#include "lawson/errors.hpp"
#include "lawson/genus2.hpp"
#include "lawson/ift.hpp"
#include "lawson/mpl.hpp"
#include "lawson/mzv_symbolic.hpp"
#include "lawson/omega.hpp"
#include "lawson/series.hpp"
#include "lawson/wiener.hpp"

using namespace lawson;

namespace {

// Pinned tolerances.
constexpr int kDigits = 50;
constexpr double kAlphaRelTol = 1e-30;      // criterion 1: 30 significant digits
constexpr double kEvenRadius = 1e-25;       // criterion 3
constexpr double kTableTol = 1e-30;         // criterion 4
constexpr double kDepth2Radius = 1e-25;     // criterion 5
constexpr double kFirstOrderTol = 1e-25;    // criterion 6
constexpr double kOrder3Tol = 1e-20;        // criterion 7
constexpr double kAreaAbsTol = 5e-9;        // criterion 8: 10 printed digits
constexpr double kErrorFactor = 2.0;        // criterion 8, extended
constexpr double kMonotoneMax = -0.6;       // criterion 9
constexpr double kGenus2Printed = 22.45 + 1e-2;  // criterion 10
constexpr double kGenus2Optimized = 22.57;
constexpr double kIftN1 = 94.697;           // criterion 11
constexpr double kIftN1RelTol = 0.05;
constexpr double kIftExtendedRelTol = 0.10;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double v, int prec = 6) {
  std::ostringstream s;
  s.precision(prec);
  s << v;
  return s.str();
}

double rel_diff(const CertifiedComplex& a, const CertifiedComplex& b) {
  const CertifiedComplex d = a - b;
  return (d.center_abs_upper() + d.radius()) / b.center_abs_lower();
}

double abs_diff(const CertifiedComplex& a, const CertifiedComplex& b) {
  const CertifiedComplex d = a - b;
  return d.center_abs_upper() + d.radius();
}

struct Context {
  std::unique_ptr<MzvCache> cache;
  bool extended = false;
  Precision P{kDigits, true};
  mpfr_prec_t bits() const { return P.bits(); }

  // shared between criteria 1, 3 and 8
  std::optional<ScalarSeries> alphas;
  const ScalarSeries& minimal_alphas() {
    if (!alphas) {
      SeriesOptions o;
      o.precision = P;
      o.mode = SeriesMode::minimal;
      o.cache = cache.get();
      ParamSeries ps(Angle::pi_fraction(1, 4), o);
      ps.extend_to(11);
      alphas = area_coefficients(ps, 11);
    }
    return *alphas;
  }

  // IFT runs feeding criteria 8, 9 and 11
  std::optional<std::pair<TailConfig, double>> tail_desk, tail_extended;
  std::pair<TailConfig, double> tail_from(const IftSetup& s) {
    IftModelOptions mo;
    mo.cache = cache.get();
    const IftModel model(s, mo);
    const IftResult r = optimize_genus(model);
    if (!r.verified) throw PrecisionLoss("IFT bound did not verify");
    return {cauchy_config(model, r.params, r.certified), r.certified.genus};
  }
};

/* 1 */
Outcome alpha_values(Context& ctx) {
  const ScalarSeries& a = ctx.minimal_alphas();
  const ScalarSeries ref = reference_alphas(ctx.bits(), 11);
  Outcome o;
  double worst = 0.0;
  for (int k = 1; k <= 11; k += 2) {
    const double r = rel_diff(a.coeff(k), ref.coeff(k));
    worst = std::max(worst, r);
    if (!(r < kAlphaRelTol)) o.pass = false;
  }
  const bool log2_ok = a.coeff(1).overlaps(CertifiedComplex::log2(ctx.bits()));
  const bool z3_ok = a.coeff(3).overlaps(CertifiedComplex::zeta_ui(3, ctx.bits()) * 9 / 4);
  o.pass = o.pass && log2_ok && z3_ok;
  o.detail = "worst relative difference " + fmt(worst, 3) + ", alpha_1 contains log 2: " + (log2_ok ? "yes" : "no") +
             ", alpha_3 contains 9/4 zeta(3): " + (z3_ok ? "yes" : "no");
  return o;
}

/* 2 */
Outcome alpha3_symbolic(Context&) {
  const ConstExpr a3 = alpha3_exact();
  const ConstExpr expect = ConstExpr::rational(9, 4) * ConstExpr::zeta(3);
  const bool pi2log2 = a3.coeff(Monomial::pi(2) * Monomial::log2()).is_zero();
  const bool log3 = a3.coeff(Monomial::log2(3)).is_zero();
  return {a3 == expect && pi2log2 && log3, "alpha_3 = " + a3.to_string()};
}

/* 3 */
Outcome even_alphas(Context& ctx) {
  const ScalarSeries& a = ctx.minimal_alphas();
  Outcome o;
  double worst = 0.0;
  for (int k : {2, 4, 6}) {
    const CertifiedComplex& c = a.coeff(k);
    worst = std::max(worst, c.radius());
    if (!c.contains_zero() || !(c.radius() < kEvenRadius)) o.pass = false;
  }
  o.detail = "largest radius " + fmt(worst, 3);
  return o;
}

/* 4 */
Outcome closed_form_tables(Context& ctx) {
  int ok = 0, total = 0;
  for (const char* s : {"1b", "2", "2b", "1b,1b", "1b,1b,1b", "1b,2", "2,1b", "1,2b", "1b,2b", "2b,1b"}) {
    const MzvIndex idx = MzvIndex::parse(s);
    const CertifiedComplex v = alternating_mzv(idx, ctx.P, ctx.cache.get());
    const CertifiedComplex c = numeric(closed_form(idx), ctx.P);
    ++total;
    if (v.overlaps(c) && abs_diff(v, c) < kTableTol) ++ok;
  }
  OmegaOptions oo;
  oo.precision = ctx.P;
  oo.cache = ctx.cache.get();
  OmegaTable t(Angle::pi_fraction(1, 4), oo);
  for (const char* w : {"3", "2,1", "3,1,1", "2,2,3", "3,3,3", "2,1,1,1", "2,2,2,1", "3,1,2,3", "2,1,3,3", "3,3,2,1"}) {
    const std::vector<int> word = parse_word(w);
    const CertifiedComplex v = t.value(word, Endpoint::one);
    const CertifiedComplex c = numeric(omega_closed_form(word), ctx.P);
    ++total;
    if (v.overlaps(c) && abs_diff(v, c) < kTableTol) ++ok;
  }
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " closed forms contained"};
}

/* 5 */
Outcome depth2_general(Context& ctx) {
  OmegaOptions oo;
  oo.precision = Precision{40, true};
  oo.route = OmegaRoute::integral;
  Outcome o;
  double worst = 0.0;
  for (const char* a : {"pi/6", "pi/5", "pi/4", "pi/3", "1.2"}) {
    const Angle phi = Angle::parse(a);
    const CertifiedComplex v = omega_eval({2, 1}, Endpoint::one, phi, oo);
    const CertifiedComplex c = depth2_closed_form(Endpoint::one, phi, oo.precision.bits());
    const double r = v.radius() + c.radius();
    worst = std::max(worst, r);
    if (!v.overlaps(c) || !(r <= kDepth2Radius)) o.pass = false;
  }
  o.detail = "largest summed radius " + fmt(worst, 3);
  return o;
}

/* 6 */
Outcome first_order(Context&) {
  const Precision P{40, true};
  const mpfr_prec_t b = P.bits();
  Outcome o;
  double worst = 0.0;
  for (const char* a : {"pi/7", "pi/5", "pi/4", "pi/3", "0.9"}) {
    const Angle phi = Angle::parse(a);
    SeriesOptions so;
    so.precision = P;
    ParamSeries ps(phi, so);
    ps.extend_to(1);
    const CertifiedComplex f = phi.value(b), s = sin(f), c = cos(f);
    const CertifiedComplex theta1 = sin(f * 2) * 2 * log(s / c);
    const CertifiedComplex W1 = -(c * c * log(c) + s * s * log(s)) * 2;
    const auto wh = willmore_mean_curvature_coefficients(ps, 1);
    const double d1 = abs_diff(ps.theta(1), theta1), d2 = abs_diff(wh.W.coeff(1), W1);
    worst = std::max({worst, d1, d2});
    if (!(d1 < kFirstOrderTol && d2 < kFirstOrderTol)) o.pass = false;
    if (phi.is_quarter_pi() && !(abs_diff(wh.W.coeff(1), CertifiedComplex::log2(b)) < kFirstOrderTol)) o.pass = false;
  }
  o.detail = "largest deviation " + fmt(worst, 3) + "; W_1(pi/4) = log 2 checked";
  return o;
}

/* 7 */
Outcome order3(Context&) {
  const Precision P{40, true};
  const mpfr_prec_t b = P.bits();
  const Angle phi = Angle::pi_fraction(1, 3);
  SeriesOptions so;
  so.precision = P;
  ParamSeries ps(phi, so);
  ps.extend_to(3);
  const auto wh = willmore_mean_curvature_coefficients(ps, 3);

  // Independent evaluation of the third order formulas from Omega-values.
  OmegaOptions oo;
  oo.precision = P;
  OmegaTable t(phi, oo);
  auto O1 = [&](std::vector<int> w) { return t.value(w, Endpoint::one); };
  auto Oi = [&](std::vector<int> w) { return t.value(w, Endpoint::i); };
  const CertifiedComplex f = phi.value(b), s = sin(f), c = cos(f), pi = CertifiedComplex::pi(b);
  const CertifiedComplex i = CertifiedComplex::imag_unit();
  const CertifiedComplex c2 = cos(f * 2), c4 = cos(f * 4), s2 = sin(f * 2), s4 = sin(f * 4);
  const CertifiedComplex A = O1({2, 1}), B = Oi({3, 1});
  const CertifiedComplex p2 = pi * pi, p3 = p2 * pi;
  const CertifiedComplex s_2 = s * s, c_2 = c * c, s_4 = s_2 * s_2, c_4 = c_2 * c_2, s22 = s2 * s2;

  const CertifiedComplex W3 =
      -(i / p3) * s_4 * (c2 * 2 + 1) * A * A * A + (i / (p3 * 2)) * s_2 * (c2 * 3 + c4 * 3 + 4) * A * A * B -
      (i / p3) * c_4 * (c2 * 2 - 1) * B * B * B - (i / (p3 * 2)) * c_2 * (-(c2 * 3) + c4 * 3 + 4) * A * B * B -
      (s22 / (p2 * 4)) * A * (O1({3, 3, 3}) * 3 - Oi({2, 1, 1}) * 2 + Oi({3, 3, 2}) * 2) -
      (s22 / (p2 * 4)) * B * (Oi({2, 2, 2}) * 3 - O1({3, 1, 1}) * 2 + O1({2, 2, 3}) * 2) +
      (s_2 * (c2 - 2) / p2) * A * O1({3, 1, 1}) - (s_4 / p2) * A * O1({2, 2, 3}) -
      (c_2 * (c2 + 2) / p2) * B * Oi({2, 1, 1}) - (c_4 / p2) * B * Oi({3, 3, 2}) +
      (i / (pi * 4)) * s22 *
          (O1({2, 1, 3, 3}) - O1({3, 1, 2, 3}) + O1({3, 3, 2, 1}) + Oi({2, 1, 3, 2}) - Oi({2, 2, 3, 1}) -
           Oi({3, 1, 2, 2})) +
      (i / pi) * s_4 * O1({2, 2, 2, 1}) + (i * 3 / pi) * s_2 * O1({2, 1, 1, 1}) - (i / pi) * c_4 * Oi({3, 3, 3, 1}) -
      (i * 3 / pi) * c_2 * Oi({3, 1, 1, 1});

  const CertifiedComplex H3 =
      -(i * 2 / p3) * s_2 * s4 * A * A * A + (i * 8 / p3) * s * (c2 * 3 - 2) * c_2 * c * A * B * B +
      (i * 2 / p3) * c_2 * s4 * B * B * B - (i * 8 / p3) * s_2 * s * (c2 * 3 + 2) * c * A * A * B +
      (s * c_2 * c * 4 / p2) *
          (B * O1({3, 1, 1}) * 2 - B * O1({2, 2, 3}) * 2 + B * Oi({3, 3, 2}) - A * O1({3, 3, 3}) * 3) +
      (s_2 * s * c * 4 / p2) *
          (A * Oi({3, 3, 2}) * 2 - A * Oi({2, 1, 1}) * 2 - A * O1({2, 2, 3}) + B * Oi({2, 2, 2}) * 3) +
      (s4 / p2) * (B * Oi({2, 1, 1}) + A * O1({3, 1, 1})) + (i * 2 / pi) * s2 * (O1({2, 1, 1, 1}) + Oi({3, 1, 1, 1})) +
      (i * 4 / pi) * s * c_2 * c * (O1({2, 1, 3, 3}) - O1({3, 1, 2, 3}) + O1({3, 3, 2, 1}) + Oi({3, 3, 3, 1})) +
      (i * 4 / pi) * s_2 * s * c * (-Oi({2, 1, 3, 2}) + O1({2, 2, 2, 1}) + Oi({2, 2, 3, 1}) + Oi({3, 1, 2, 2}));

  const double dW = abs_diff(wh.W.coeff(3), W3), dH = abs_diff(wh.H.coeff(3), H3);
  return {dW < kOrder3Tol && dH < kOrder3Tol, "W_3 = " + fmt(W3.re_double(), 12) + " (|diff| " + fmt(dW, 3) +
                                                  "), H_3 = " + fmt(H3.re_double(), 12) + " (|diff| " + fmt(dH, 3) + ")"};
}

/* 8 */
Outcome area_table_check(Context& ctx) {
  static const char* printed[] = {"22.82027709", "23.32191299", "23.64134581", "23.86347454",
                                  "24.02726927", "24.15322275", "24.25318196", "24.33449044"};
  static const double printed_err[] = {0.244537,      0.000512743,  5.732114e-6,   1.4302993e-7,
                                       6.096336e-9,   3.847452e-10, 3.2867174e-11, 3.574938e-12};
  // computed alpha_1..alpha_11, tabulated alpha_13..alpha_21
  const ScalarSeries alphas = merge_alphas(ctx.minimal_alphas(), reference_alphas(ctx.bits(), 21));
  Outcome o;
  double worst = 0.0;
  for (int g = 3; g <= 10; ++g) {
    const double d = std::fabs(area_approx(g, alphas, 21).re_double() - std::strtod(printed[g - 3], nullptr));
    worst = std::max(worst, d);
    if (!(d <= kAreaAbsTol)) o.pass = false;
  }
  o.detail = "approx column max deviation " + fmt(worst, 3);

  if (ctx.extended) {
    if (!ctx.tail_extended) ctx.tail_extended = ctx.tail_from({8, 7, true});
    const auto rows = area_table(3, 10, alphas, 21, ctx.tail_extended->first);
    double worst_ratio = 1.0;
    int compared = 0;
    for (const auto& row : rows) {
      if (!row.error_bound) continue;
      const double ratio = *row.error_bound / printed_err[row.genus - 3];
      worst_ratio = std::max({worst_ratio, ratio, 1.0 / ratio});
      ++compared;
    }
    if (compared != 8 || !(worst_ratio <= kErrorFactor)) o.pass = false;
    o.detail += "; error column (n=8, N=7, quadratic): " + std::to_string(compared) +
                " rows, worst ratio to printed " + fmt(worst_ratio, 4);
  } else {
    if (!ctx.tail_desk) ctx.tail_desk = ctx.tail_from({4, 3, true});
    const auto rows = area_table(3, 10, alphas, 21, ctx.tail_desk->first);
    double prev = INFINITY;
    int bounded = 0;
    for (const auto& row : rows) {
      if (!row.error_bound) continue;
      ++bounded;
      if (!(*row.error_bound > 0 && *row.error_bound < prev)) o.pass = false;
      prev = *row.error_bound;
    }
    if (bounded == 0) o.pass = false;
    o.detail += "; error column property check (n=4, N=3, quadratic, T'=" + fmt(ctx.tail_desk->first.T_prime, 4) +
                "): " + std::to_string(bounded) + " rows bounded, positive and decreasing";
  }
  return o;
}

/* 9 */
Outcome monotonicity(Context& ctx) {
  const ScalarSeries alphas = merge_alphas(ctx.minimal_alphas(), reference_alphas(ctx.bits(), 21));
  if (ctx.extended) {
    if (!ctx.tail_extended) ctx.tail_extended = ctx.tail_from({8, 7, true});
    const auto m = monotonicity_certificate(alphas, ctx.tail_extended->first);
    return {m.holds && m.bound <= kMonotoneMax, "bound " + fmt(m.bound, 8) + " with extended constants"};
  }
  // synthetic constants: compare against the formula evaluated here
  const TailConfig cfg{0.01, 0.14, 7};
  const double T2 = 0.05;
  const auto m = monotonicity_certificate(alphas, cfg, T2);
  const double a1 = alphas.coeff(1).re_double(), a7 = std::fabs(alphas.coeff(7).re_double());
  const double expect =
      -a1 + 7 * a7 * std::pow(T2, 6) + 8 * cfg.C_A * std::pow(T2, 7) / std::pow(cfg.T_prime - T2, 8);
  const bool formula = std::fabs(m.bound - expect) < 1e-12 && m.bound >= expect;
  return {formula && m.holds && m.bound <= kMonotoneMax,
          "synthetic constants (C_A=0.01, T'=0.14): bound " + fmt(m.bound, 8) + ", formula " + fmt(expect, 8)};
}

/* 10 */
Outcome genus2(Context&) {
  const CertifiedComplex printed = certified_bound(TriangulationParams::paper());
  const double at_printed = printed.re_double() + printed.radius();
  const Genus2Result opt = optimize_bound(TriangulationParams::center());
  const double optimized = opt.certified.re_double() + opt.certified.radius();
  const bool ok = at_printed <= kGenus2Printed && optimized <= kGenus2Optimized;
  return {ok, "at printed parameters " + fmt(at_printed, 9) + " (limit " + fmt(kGenus2Printed, 5) +
                  "), optimizer from the box center " + fmt(optimized, 9) + " at s2 = " + fmt(opt.params.s2, 7) +
                  " (limit " + fmt(kGenus2Optimized, 5) + ")"};
}

/* 11 */
Outcome ift_n1(Context& ctx) {
  IftModelOptions mo;
  mo.cache = ctx.cache.get();
  const IftModel model({1, 0, false}, mo);
  const IftResult r = optimize_genus(model);
  const double g = r.certified.genus;
  Outcome o{r.verified && std::fabs(g - kIftN1) <= kIftN1RelTol * kIftN1,
            "n=1 genus " + fmt(g, 8) + (r.verified ? " (verified)" : " (NOT verified)")};
  if (ctx.extended) {
    const IftModel m6({6, 0, false}, mo);
    const IftResult r6 = optimize_genus(m6);
    if (!ctx.tail_extended) ctx.tail_extended = ctx.tail_from({8, 7, true});
    const double g8 = ctx.tail_extended->second;
    const bool ok6 = r6.verified && std::fabs(r6.certified.genus - 6.86426) <= kIftExtendedRelTol * 6.86426;
    const bool ok8 = std::fabs(g8 - 2.65404) <= kIftExtendedRelTol * 2.65404;
    o.pass = o.pass && ok6 && ok8;
    o.detail += "; n=6 genus " + fmt(r6.certified.genus, 7) + ", n=8 N=7 quadratic genus " + fmt(g8, 7);
  }
  return o;
}

/* 12 */
Outcome oracle_suites(Context&) {
  int bad = 0;
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  // fast MPL recursion against the nested sum
  std::uniform_int_distribution<int> dd(1, 3), aa(1, 3), nn(1, 50);
  int bad_mpl = 0;
  for (int it = 0; it < 200; ++it) {
    MplArgs args;
    const int d = dd(rng);
    for (int j = 0; j < d; ++j) {
      double x = 0.9 * u(rng), y = 0.9 * u(rng);
      const double m = std::hypot(x, y);
      if (m > 0.9) {
        x *= 0.9 / m;
        y *= 0.9 / m;
      }
      args.a.push_back(aa(rng));
      args.x.push_back(CertifiedComplex::from_double(x, y, 128));
    }
    const long N = nn(rng);
    if (!truncated_mpl(args, N).overlaps(truncated_mpl_naive(args, N))) ++bad_mpl;
  }

  // euclidean division re-expansion
  int bad_div = 0;
  std::uniform_int_distribution<int> deg(0, 12), nroots(1, 3);
  for (int it = 0; it < 1000; ++it) {
    LaurentPoly p;
    for (int d = 0, n = deg(rng); d <= n; ++d) p.at(d) = CertifiedComplex::from_double(u(rng), u(rng), 128);
    p.trim();
    std::vector<CertifiedComplex> roots;
    LaurentPoly prod(CertifiedComplex(1));
    for (int k = nroots(rng); k > 0; --k) {
      double a = u(rng), b = u(rng);
      const double m = std::hypot(a, b);
      if (m > 0.95) {
        a *= 0.95 / m;
        b *= 0.95 / m;
      }
      roots.push_back(CertifiedComplex::from_double(a, b, 128));
      prod *= LaurentPoly::monomial(1, CertifiedComplex(1)) - LaurentPoly(roots.back());
    }
    const auto res = divide_by_roots(p, roots);
    const LaurentPoly back = prod * res.q + res.r;
    for (int d = std::min(back.min_deg(), p.min_deg()); d <= std::max(back.max_deg(), p.max_deg()); ++d)
      if (!back.coeff(d).overlaps(p.coeff(d))) {
        ++bad_div;
        break;
      }
  }

  // subdivision invariance of iterated integrals
  int bad_sub = 0;
  const Precision p30{30, true};
  std::uniform_int_distribution<int> len(1, 4), pick(0, 3);
  for (int it = 0; it < 50; ++it) {
    std::vector<CertifiedComplex> alphabet;
    while (alphabet.size() < 4) {
      const double x = 1.5 * u(rng), y = 1.5 * u(rng);
      if (std::fabs(y) < 0.2) continue;
      alphabet.push_back(CertifiedComplex::from_double(x, y, 64));
    }
    IteratedWord w;
    for (int k = len(rng); k > 0; --k) w.poles.push_back(alphabet[static_cast<std::size_t>(pick(rng))]);
    w.start = CertifiedComplex(0);
    w.end = CertifiedComplex(1);
    if (!evaluate_iterated_integral(w, 0.5, p30).overlaps(evaluate_iterated_integral(w, 0.3, p30))) ++bad_sub;
  }

  // stuffle and shuffle identities among alternating zeta values
  const Precision p40{40, true};
  auto z = [&](const char* s) { return alternating_mzv(MzvIndex::parse(s), p40); };
  int bad_id = 0;
  if (!(z("1b") * z("2b")).overlaps(z("1b,2b") + z("2b,1b") + z("3"))) ++bad_id;
  if (!(z("1b") * z("2")).overlaps(z("1b,2") + z("1b,2b") + z("2b,1b"))) ++bad_id;
  const CertifiedComplex a = z("1b");
  if (!(a * a * a).overlaps(z("1b,1b,1b") * 6 + (z("1b,2") + z("2,1b")) * 3 + z("3b"))) ++bad_id;
  if (!(a * a).overlaps(z("1b,1b") * 2 + z("2"))) ++bad_id;

  bad = bad_mpl + bad_div + bad_sub + bad_id;
  return {bad == 0, "MPL recursion 200 cases: " + std::to_string(bad_mpl) + " bad; division 1000: " +
                        std::to_string(bad_div) + " bad; subdivision 50: " + std::to_string(bad_sub) +
                        " bad; stuffle/shuffle 4: " + std::to_string(bad_id) + " bad"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  std::string cache_dir;
  bool extended = false;
  app.add_option("--cache-dir", cache_dir, "MZV cache directory");
  app.add_flag("--extended", extended, "include the long IFT runs");
  CLI11_PARSE(app, argc, argv);
  if (const char* env = std::getenv("LAWSON_EXTENDED"); env && std::string(env) == "1") extended = true;
  if (cache_dir.empty())
    if (const char* env = std::getenv("LAWSON_CACHE_DIR")) cache_dir = env;

  Context ctx;
  ctx.extended = extended;
  if (!cache_dir.empty()) ctx.cache = std::make_unique<MzvCache>(cache_dir);

  const std::vector<std::pair<std::string, std::function<Outcome(Context&)>>> criteria{
      {"alpha_1..alpha_11 to 30 digits", alpha_values},
      {"exact alpha_3 = 9/4 zeta(3)", alpha3_symbolic},
      {"even alpha_k vanish", even_alphas},
      {"weight <= 3 zeta and Omega closed forms", closed_form_tables},
      {"Omega_2,1 by direct integration at five angles", depth2_general},
      {"theta' and W_1 at five angles", first_order},
      {"W_3 and H_3 at pi/3", order3},
      {"area table", area_table_check},
      {"monotonicity certificate", monotonicity},
      {"genus 2 triangulation bound", genus2},
      {"IFT genus bound for n = 1", ift_n1},
      {"oracle suites", oracle_suites},
  };

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second(ctx);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << k + 1 << "] " << criteria[k].first << ": " << o.detail
              << " (" << fmt(secs, 3) << " s)" << std::endl;
    if (!o.pass) ++failures;
  }
  std::cout << failures << " of " << criteria.size() << " criteria failed"
            << (extended ? "" : " (extended runs skipped)") << std::endl;
  return failures == 0 ? 0 : 1;
}
