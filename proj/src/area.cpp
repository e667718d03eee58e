#include "lawson/area.hpp"

#include <array>
#include <cmath>

#include "lawson/errors.hpp"

namespace lawson {

namespace {

// alpha_1, alpha_3, ..., alpha_21
const std::array<std::string, 11> kAlphas = {
    "0.693147180559945309417232121458176568075500134360255254120680",
    "2.704628032109087142149410863400762479221219157766122484032610",
    "3.699626994497618439893380135471044617736329548309105157162310",
    "-53.1688000602634657601186493744463143722221041377109549606883",
    "-459.565676371488633633252895256096561995526272030689845199417",
    "-260.931729774858246058852756835445016841900749580577223718493",
    "26311.75666632241667824049728000376568318761694887921531627959",
    "219897.7526067197482348266274038050133501624360107896585815548",
    "-204390.987496916879876223326569020676825058179523091704555104",
    "-19346782.5372543220622302604976526258798242712500787552866514",
    "-148960589.720279268862574700035701683223669243796252922710520",
};

int first_omitted_odd(int K) { return K % 2 == 0 ? K + 1 : K + 2; }

double s_of(int g) { return 1.0 / (2.0 * g + 2.0); }

// Upper bound for x^k, x >= 0.
double pow_up(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r = rad::mul(r, x);
  return r;
}

}  // namespace

const std::string& reference_alpha_string(int k) {
  if (k < 1 || k > 21 || k % 2 == 0) throw DomainError("no tabulated alpha_" + std::to_string(k));
  return kAlphas[static_cast<std::size_t>((k - 1) / 2)];
}

ScalarSeries reference_alphas(mpfr_prec_t prec, int order) {
  if (order < 0 || order > 21) throw DomainError("tabulated alphas stop at order 21");
  std::vector<CertifiedComplex> c(static_cast<std::size_t>(order + 1));
  for (int k = 1; k <= order; k += 2) {
    // 60 significant digits; the last one is uncertain by one unit
    const std::string& s = reference_alpha_string(k);
    CertifiedComplex a = CertifiedComplex::from_string(s, "0", prec);
    const double mag = std::fabs(a.re_double());
    const double ulp60 = std::pow(10.0, std::floor(std::log10(mag)) - 59.0);
    c[static_cast<std::size_t>(k)] = a.inflated(ulp60);
  }
  return ScalarSeries(std::move(c), ScalarSeries::Var::s);
}

ScalarSeries merge_alphas(const ScalarSeries& computed, const ScalarSeries& tabulated) {
  ScalarSeries r = tabulated;
  if (computed.order() > r.order()) r.c.resize(computed.c.size());
  for (int k = 0; k <= computed.order(); ++k) r.c[static_cast<std::size_t>(k)] = computed.c[static_cast<std::size_t>(k)];
  r.var = ScalarSeries::Var::s;
  return r;
}

CertifiedComplex area_approx(int g, const ScalarSeries& alphas, int K) {
  if (g < 1) throw DomainError("genus must be at least 1");
  if (K < 0) K = alphas.order();
  if (K > alphas.order()) throw MissingLowerOrder("area_approx: alphas only reach order " + std::to_string(alphas.order()));
  mpfr_prec_t prec = alphas.c.empty() ? 128 : alphas.c[0].prec();
  for (const auto& a : alphas.c) prec = std::max(prec, a.prec());
  const CertifiedComplex s = CertifiedComplex::rational(1, 2L * g + 2, prec);
  // Horner: sum_{k=1}^K alpha_k s^k
  CertifiedComplex acc;
  for (int k = K; k >= 1; --k) acc = (acc + alphas.coeff(k)) * s;
  return CertifiedComplex::pi(prec) * 8 * (CertifiedComplex(1).rounded_to(prec) - acc);
}

double area_error_bound(int g, int K, const TailConfig& cfg) {
  const double s = s_of(g);
  if (!(cfg.T_prime > 0.0) || s >= cfg.T_prime)
    throw SOutsideRadius("s = 1/" + std::to_string(2 * g + 2) + " is outside the radius T' = " + std::to_string(cfg.T_prime));
  const double q = rad::div(s, rad::down(cfg.T_prime));
  const int m = first_omitted_odd(K);
  const double denom = rad::down(1.0 - rad::mul(q, q));
  const double eight_pi = 25.132741228718348;  // 8 pi rounded up
  return rad::div(rad::mul(rad::mul(eight_pi, cfg.C_A), pow_up(q, m)), denom);
}

std::vector<AreaRow> area_table(int gmin, int gmax, const ScalarSeries& alphas, int K, const std::optional<TailConfig>& cfg) {
  if (gmin < 1 || gmax < gmin) throw DomainError("invalid genus range");
  if (K < 0) K = alphas.order();
  std::vector<AreaRow> rows;
  for (int g = gmin; g <= gmax; ++g) {
    AreaRow row;
    row.genus = g;
    row.K_used = K;
    row.approx = area_approx(g, alphas, K);
    if (cfg && s_of(g) < cfg->T_prime) row.error_bound = area_error_bound(g, K, *cfg);
    rows.push_back(std::move(row));
  }
  return rows;
}

MonotonicityResult monotonicity_certificate(const ScalarSeries& alphas, const TailConfig& cfg, double T2) {
  if (alphas.order() < 7) throw MissingLowerOrder("monotonicity needs alpha_1 .. alpha_7");
  for (int k : {3, 5}) {
    const CertifiedComplex a = alphas.coeff(k);
    if (a.re().sign() <= 0 || a.re_double() - a.radius() <= 0.0)
      throw DomainError("alpha_" + std::to_string(k) + " is not certified positive");
  }
  if (!(T2 > 0.0) || T2 >= cfg.T_prime) throw SOutsideRadius("T'' must lie in (0, T')");

  const CertifiedComplex a1 = alphas.coeff(1);
  const double minus_a1 = -rad::down(rad::down(a1.re_double()) - a1.radius());
  const double a7 = disc_abs_interval(alphas.coeff(7)).hi;
  const double term7 = rad::mul(rad::mul(7.0, a7), pow_up(T2, 6));
  const double gap = rad::down(cfg.T_prime - T2);
  double gap8 = 1.0;
  for (int i = 0; i < 8; ++i) gap8 = rad::down(gap8 * gap);
  const double tail = rad::div(rad::mul(rad::mul(8.0, cfg.C_A), pow_up(T2, 7)), gap8);
  MonotonicityResult r;
  r.bound = rad::add(rad::add(minus_a1, term7), tail);
  r.holds = r.bound < 0.0;
  return r;
}

}  // namespace lawson
