#include "lawson/ift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>

#include "lawson/errors.hpp"
#include "lawson/omega.hpp"
#include "lawson/series.hpp"
#include "walk_util.hpp"

namespace lawson {

namespace {

using Alpha = std::array<int, 3>;

/* ------------------------------------------------------- polynomials in (t, u) */

void add_to(MultiPoly& p, const Exponents& m, const LaurentPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = p.emplace(m, c);
  if (!inserted) it->second += c;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) add_to(r, Exponents{ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2], ma[3] + mb[3]}, ca * cb);
  return r;
}

MultiPoly operator+(MultiPoly a, const MultiPoly& b) {
  for (const auto& [m, c] : b) add_to(a, m, c);
  return a;
}

MultiPoly one_poly(mpfr_prec_t bits) { return MultiPoly{{Exponents{0, 0, 0, 0}, LaurentPoly(CertifiedComplex(1).rounded_to(bits))}}; }

Alpha alpha_of(const Exponents& m) { return {m[1], m[2], m[3]}; }
int degree(const Alpha& a) { return a[0] + a[1] + a[2]; }

LaurentPoly lp(int d, const CertifiedComplex& c) { return LaurentPoly::monomial(d, c); }

/// (u - u(1)) / (lambda^2 - 1) for even u with nonnegative degrees.
LaurentPoly apply_D(const LaurentPoly& u) {
  if (u.is_zero()) return u;
  // negative degrees may only carry enclosures of zero (cancelled terms)
  for (int d = u.min_deg(); d < 0; ++d)
    if (!u.coeff(d).contains_zero()) throw NegativeDegreeInput("D needs nonnegative degrees");
  LaurentPoly r;
  CertifiedComplex acc;
  // coefficient of lambda^{2j} is the sum of u_{2m} over m > j
  for (int d = u.max_deg(); d >= 2; --d) {
    if (d % 2 != 0) {
      if (!u.coeff(d).contains_zero()) throw DomainError("D needs an even function");
      continue;
    }
    acc += u.coeff(d);
    r.at(d - 2) = acc;
  }
  return r.trim();
}

/* ------------------------------------------------------- rounding policy */

double up(const CertifiedComplex& z) { return rad::add(rad::up(z.re_double()), z.radius()); }

struct Consts {
  double pi, inv2pi, s2over2pi, inv_sqrt2, log2, log2_over_sqrt2, K23;
};

Consts make_consts(bool upper) {
  const mpfr_prec_t b = 128;
  const CertifiedComplex pi = CertifiedComplex::pi(b);
  const CertifiedComplex two = CertifiedComplex(2).rounded_to(b);
  const CertifiedComplex s2 = sqrt(two);
  const CertifiedComplex l2 = CertifiedComplex::log2(b);
  const CertifiedComplex one = CertifiedComplex(1).rounded_to(b);
  const CertifiedComplex k23 = pi * 2 + log(one + s2) * 4;
  auto v = [&](const CertifiedComplex& z) { return upper ? up(z) : z.re_double(); };
  return {v(pi), v(one / (pi * 2)), v(s2 / (pi * 2)), v(one / s2), v(l2), v(l2 / s2), v(k23)};
}

const Consts& consts(EvalMode mode) {
  static const Consts fast = make_consts(false);
  static const Consts cert = make_consts(true);
  return mode == EvalMode::certified ? cert : fast;
}

// Arithmetic on nonnegative upper bounds.
struct Ar {
  bool cert;
  double add(double a, double b) const { return cert ? rad::add(a, b) : a + b; }
  double mul(double a, double b) const { return cert ? rad::mul(a, b) : a * b; }
  /// a / b with a an upper bound and b a lower bound
  double div(double a, double b) const { return cert ? rad::div(a, b) : a / b; }
  double pow(double x, int k) const {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r = mul(r, x);
    return r;
  }
  double lower(double x) const { return cert ? rad::down(x) : x; }
};

double monomial_bound(const Ar& ar, const std::array<double, 3>& R, const Alpha& a) {
  double r = 1.0;
  for (int i = 0; i < 3; ++i) r = ar.mul(r, ar.pow(R[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(i)]));
  return r;
}

/// d(R^alpha) . varrho
double monomial_diff(const Ar& ar, const std::array<double, 3>& R, const std::array<double, 3>& w, const Alpha& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    if (a[i] == 0) continue;
    double term = ar.mul(static_cast<double>(a[i]), w[i]);
    for (std::size_t j = 0; j < 3; ++j) term = ar.mul(term, ar.pow(R[j], j == i ? a[j] - 1 : a[j]));
    s = ar.add(s, term);
  }
  return s;
}

NormPoly norm_poly(const LaurentPoly& p) {
  NormPoly n;
  p.for_each([&](int d, const CertifiedComplex& c) {
    const auto e = static_cast<std::size_t>(std::abs(d));
    if (n.m.size() <= e) n.m.resize(e + 1, 0.0);
    n.m[e] = rad::add(n.m[e], disc_abs_interval(c).hi);
  });
  return n;
}

NormPoly scaled(NormPoly n, double s) {
  for (auto& v : n.m) v = rad::mul(v, s);
  return n;
}

void accumulate(NormPoly& into, const NormPoly& n) {
  if (into.m.size() < n.m.size()) into.m.resize(n.m.size(), 0.0);
  for (std::size_t e = 0; e < n.m.size(); ++e) into.m[e] = rad::add(into.m[e], n.m[e]);
}

}  // namespace

double NormPoly::eval(double rho, EvalMode mode) const {
  const Ar ar{mode == EvalMode::certified};
  double s = 0.0;
  for (std::size_t e = m.size(); e-- > 0;) s = ar.add(ar.mul(s, rho), m[e]);
  return s;
}

/* ------------------------------------------------------- model */

struct IftModel::Term {
  int k = 0;
  Alpha alpha{};
  bool explicit_norm = false;  // alpha = 0: g1, g2, g3 are the exact norms
  NormPoly g1, g1m, g2, g2m, g3;
  NormPoly nb, na_odd, na_even;  // for the naive bounds
};

struct IftModel::Data {
  std::vector<Term> terms;
  std::vector<std::pair<Exponents, double>> ck;     // |b_{k,alpha}(1)|
  std::vector<std::pair<Exponents, NormPoly>> rem;  // weighted x-products of length n+1
  std::vector<NormPoly> xk[3];                     // ||x_{j,k}||, k = 1..N
};

IftModel::IftModel(IftSetup setup, IftModelOptions options) : setup_(setup), opt_(options), bits_(options.precision.bits()) {
  if (setup_.n < 1) throw DomainError("expansion order n must be at least 1");
  if (setup_.N < 0 || setup_.N >= setup_.n) throw DomainError("need 0 <= N < n");

  const CertifiedComplex one = CertifiedComplex(1).rounded_to(bits_);
  const CertifiedComplex half = CertifiedComplex::rational(1, 2, bits_);
  const CertifiedComplex s2 = sqrt(CertifiedComplex(2).rounded_to(bits_));
  const CertifiedComplex l2 = CertifiedComplex::log2(bits_);
  const LaurentPoly inv_plus = lp(-1, one) + lp(1, one);
  const LaurentPoly inv_minus = lp(-1, one) - lp(1, one);

  // xbar at phi = pi/4
  const LaurentPoly xb1 = inv_minus * half.mul_i();
  const LaurentPoly xb23 = inv_plus * (-(half / s2));
  x_[0][Exponents{0, 0, 0, 0}] = xb1;
  x_[1][Exponents{0, 0, 0, 0}] = xb23;
  x_[2][Exponents{0, 0, 0, 0}] = xb23;
  x_[0][Exponents{0, 1, 0, 0}] = lp(1, one.mul_i());
  x_[1][Exponents{0, 0, 1, 0}] = LaurentPoly(-one);
  x_[2][Exponents{0, 0, 1, 0}] = LaurentPoly(one);
  x_[1][Exponents{0, 0, 0, 1}] = lp(1, one);
  x_[2][Exponents{0, 0, 0, 1}] = lp(1, one);
  if (setup_.quadratic) {
    const LaurentPoly q1 = (lp(2, one) + LaurentPoly(one)) * (l2 / s2);
    const LaurentPoly q3 = (lp(2, one) - LaurentPoly(one)) * l2;
    x_[2][Exponents{1, 1, 0, 0}] = q1;
    x_[1][Exponents{1, 1, 0, 0}] = -q1;
    x_[2][Exponents{1, 0, 0, 1}] = q3;
    x_[1][Exponents{1, 0, 0, 1}] = -q3;
  }
  if (setup_.N > 0) {
    ParamSeries series(Angle::pi_fraction(1, 4),
                       SeriesOptions{opt_.precision, SeriesMode::minimal, OmegaRoute::automatic, opt_.cache, opt_.jobs});
    series.extend_to(setup_.N);
    for (int k = 1; k <= setup_.N; ++k) {
      for (int j = 0; j < 3; ++j) add_to(x_[j], Exponents{k, 0, 0, 0}, series.x(j + 1, k));
      x2_const_.push_back(disc_abs_interval(series.x(2, k).coeff(0)).hi);
    }
  }

  // powers x_j^m, m <= n + 1
  const int n = setup_.n;
  std::vector<MultiPoly> pw[3];
  for (int j = 0; j < 3; ++j) {
    pw[j].push_back(one_poly(bits_));
    for (int m = 1; m <= n + 1; ++m) pw[j].push_back(pw[j].back() * x_[j]);
  }
  auto product = [&](const Alpha& c) { return pw[0][static_cast<std::size_t>(c[0])] * pw[1][static_cast<std::size_t>(c[1])] * pw[2][static_cast<std::size_t>(c[2])]; };

  OmegaTable omegas(Angle::pi_fraction(1, 4), OmegaOptions{opt_.precision, OmegaRoute::automatic, 0.55, opt_.cache});

  // polynomial part of phat: words of length L <= n ending at e1
  for (int L = 1; L <= n; ++L) {
    const auto words = walks_from_e3(L, 1);
    omegas.prefetch(words, Endpoint::one);
    std::map<Alpha, CertifiedComplex> sums;
    for (const auto& w : words) {
      Alpha cnt{0, 0, 0};
      for (int l : w) ++cnt[static_cast<std::size_t>(l - 1)];
      CertifiedComplex v = omegas.value(w, Endpoint::one);
      if (detail::walk_sign(w) < 0) v = -v;
      sums[cnt] += v;
    }
    const CertifiedComplex scale = detail::two_i_pow(L);
    std::vector<std::pair<Alpha, CertifiedComplex>> groups(sums.begin(), sums.end());
    std::vector<MultiPoly> parts(groups.size());
    detail::parallel_for(groups.size(), opt_.jobs, [&](std::size_t i) {
      MultiPoly p = product(groups[i].first);
      const CertifiedComplex f = groups[i].second * scale;
      MultiPoly r;
      for (auto& [m, c] : p) r.emplace(Exponents{m[0] + L - 1, m[1], m[2], m[3]}, c * f);
      parts[i] = std::move(r);
    });
    for (const auto& p : parts) a_ = a_ + p;
  }
  b_ = x_[0] * x_[0] + x_[1] * x_[1] + x_[2] * x_[2];

  // remainder weights: all walks of length n + 1 from e3
  {
    const auto words = walks_from_e3(n + 1, 0);
    omegas.prefetch_walks(words);
    const double scale = std::ldexp(1.0, n + 1);
    for (const auto& w : words) {
      Alpha cnt{0, 0, 0};
      for (int l : w) ++cnt[static_cast<std::size_t>(l - 1)];
      double& acc = rem_weights_[cnt];
      acc = rad::add(acc, rad::mul(scale, omegas.abs(w).hi));
    }
  }

  data_ = std::make_unique<Data>();
  {
    std::vector<std::pair<Alpha, double>> groups(rem_weights_.begin(), rem_weights_.end());
    std::vector<std::map<Exponents, NormPoly>> parts(groups.size());
    detail::parallel_for(groups.size(), opt_.jobs, [&](std::size_t i) {
      for (const auto& [m, c] : product(groups[i].first)) accumulate(parts[i][m], scaled(norm_poly(c), groups[i].second));
    });
    std::map<Exponents, NormPoly> rem;
    for (const auto& part : parts)
      for (const auto& [m, v] : part) accumulate(rem[m], v);
    data_->rem.assign(rem.begin(), rem.end());
  }
  for (int j = 0; j < 3; ++j)
    for (int k = 1; k <= setup_.N; ++k) {
      auto it = x_[j].find(Exponents{k, 0, 0, 0});
      data_->xk[j].push_back(it == x_[j].end() ? NormPoly{} : norm_poly(it->second));
    }
  build_norm_data();
}

IftModel::~IftModel() = default;
IftModel::IftModel(IftModel&&) noexcept = default;

const MultiPoly& IftModel::x(int j) const {
  if (j < 1 || j > 3) throw DomainError("x index must be 1, 2 or 3");
  return x_[j - 1];
}

LaurentPoly IftModel::a(int k, const std::array<int, 3>& alpha) const {
  auto it = a_.find(Exponents{k, alpha[0], alpha[1], alpha[2]});
  return it == a_.end() ? LaurentPoly() : it->second;
}

LaurentPoly IftModel::b(int k, const std::array<int, 3>& alpha) const {
  auto it = b_.find(Exponents{k, alpha[0], alpha[1], alpha[2]});
  return it == b_.end() ? LaurentPoly() : it->second;
}

std::array<LaurentPoly, 3> IftModel::explicit_terms(int k) const {
  const Alpha zero{0, 0, 0};
  const LaurentPoly av = a(k, zero);
  const LaurentPoly bv = b(k, zero);
  const CertifiedComplex one = CertifiedComplex(1).rounded_to(bits_);
  const CertifiedComplex pi = CertifiedComplex::pi(bits_);
  const CertifiedComplex s = sqrt(CertifiedComplex(2).rounded_to(bits_)) / (pi * 2);
  const LaurentPoly diff_pos = (av - av.star()).project(Projection::pos);
  const LaurentPoly d_odd = diff_pos.project(Projection::odd);
  const LaurentPoly d_even = diff_pos.project(Projection::even);
  const LaurentPoly g1 = apply_D(bv + (lp(-1, one) + lp(1, one)) * d_odd * s);
  const CertifiedComplex i = CertifiedComplex::imag_unit();
  const LaurentPoly g2 = d_even - LaurentPoly(eval(d_even, i)) + LaurentPoly(eval(av.project(Projection::even), i));
  return {g1, g2, d_odd};
}

void IftModel::build_norm_data() {
  const CertifiedComplex one = CertifiedComplex(1).rounded_to(bits_);
  const CertifiedComplex s = sqrt(CertifiedComplex(2).rounded_to(bits_)) / (CertifiedComplex::pi(bits_) * 2);
  const LaurentPoly l1 = lp(-1, one) + lp(1, one);

  std::map<Exponents, bool> keys;
  for (const auto& [m, c] : a_) keys[m] = true;
  for (const auto& [m, c] : b_) keys[m] = true;
  for (const auto& [m, unused] : keys) {
    const Alpha al = alpha_of(m);
    if (m[0] == 0 && degree(al) == 1) continue;  // cancelled by -u
    Term t;
    t.k = m[0];
    t.alpha = al;
    const LaurentPoly av = a(m[0], al);
    const LaurentPoly bv = b(m[0], al);
    const LaurentPoly aodd = av.project(Projection::odd);
    const LaurentPoly aeven = av.project(Projection::even);
    t.nb = norm_poly(bv);
    t.na_odd = norm_poly(aodd);
    t.na_even = norm_poly(aeven);
    if (degree(al) == 0) {
      t.explicit_norm = true;
      const auto ex = explicit_terms(m[0]);
      t.g1 = norm_poly(ex[0]);
      t.g2 = norm_poly(ex[1]);
      t.g3 = norm_poly(ex[2]);
    } else {
      t.g1 = norm_poly(bv + l1 * aodd.project(Projection::pos) * s);
      t.g1m = norm_poly(aodd.project(Projection::neg));
      t.g2 = t.na_even;
      t.g2m = norm_poly(aeven.project(Projection::neg));
      t.g3 = t.na_odd;
    }
    data_->terms.push_back(std::move(t));
  }
  for (const auto& [m, c] : b_) {
    if (m == Exponents{0, 0, 0, 0}) continue;
    data_->ck.emplace_back(m, disc_abs_interval(eval(c, CertifiedComplex(1).rounded_to(bits_))).hi);
  }
}

/* ------------------------------------------------------- estimates */

namespace {

struct RhoBits {
  double rho, inv_rho, inv_rho2, rho2m1_lo, rho_plus_inv, one_plus_rho2;
};

RhoBits rho_bits(const Ar& ar, double rho) {
  if (!(rho > 1.0)) throw DomainError("rho must exceed 1");
  RhoBits r;
  r.rho = rho;
  r.inv_rho = ar.div(1.0, rho);
  r.inv_rho2 = ar.mul(r.inv_rho, r.inv_rho);
  r.rho2m1_lo = ar.lower(ar.lower(rho * rho) - 1.0);
  r.rho_plus_inv = ar.add(rho, r.inv_rho);
  r.one_plus_rho2 = ar.add(1.0, ar.mul(rho, rho));
  return r;
}

void check_params(const IftParams& p) {
  if (!(p.T >= 0.0)) throw DomainError("T must be nonnegative");
  for (int i = 0; i < 3; ++i) {
    if (!(p.R[static_cast<std::size_t>(i)] >= 0.0)) throw DomainError("R must be nonnegative");
    if (!(p.varrho[static_cast<std::size_t>(i)] > 0.0)) throw DomainError("varrho must be positive");
  }
  if (!(p.rho > 1.0)) throw DomainError("rho must exceed 1");
}

// The remainder constants C^R_i.
std::array<double, 3> remainder_factors(const Ar& ar, const Consts& k, const RhoBits& r) {
  return {ar.div(ar.mul(k.s2over2pi, r.rho_plus_inv), r.rho2m1_lo), ar.mul(k.inv2pi, ar.add(1.0, ar.mul(2.0, r.inv_rho2))),
          ar.mul(k.inv2pi, r.inv_rho)};
}

}  // namespace

GronwallConstants IftModel::gronwall_constants(const IftParams& p, EvalMode mode) const {
  check_params(p);
  const Ar ar{mode == EvalMode::certified};
  const Consts& k = consts(mode);
  const RhoBits r = rho_bits(ar, p.rho);
  GronwallConstants g;

  // ||x_j(u)|| bounds
  double c1 = ar.add(r.rho, ar.mul(r.rho, p.R[0]));
  double c23 = ar.add(ar.add(ar.mul(r.rho, k.inv_sqrt2), p.R[1]), ar.mul(r.rho, p.R[2]));
  double corr1 = 0.0, corr2 = 0.0, corr3 = 0.0;
  for (int kk = 1; kk <= setup_.N; ++kk) {
    const double tk = ar.pow(p.T, kk);
    const auto idx = static_cast<std::size_t>(kk - 1);
    corr1 = ar.add(corr1, ar.mul(data_->xk[0][idx].eval(p.rho, mode), tk));
    corr2 = ar.add(corr2, ar.mul(data_->xk[1][idx].eval(p.rho, mode), tk));
    corr3 = ar.add(corr3, ar.mul(data_->xk[2][idx].eval(p.rho, mode), tk));
  }
  c1 = ar.add(c1, corr1);
  c23 = ar.add(c23, std::max(corr2, corr3));
  double q1 = 0.0, q3 = 0.0;  // norms of the quadratic correction coefficients
  if (setup_.quadratic) {
    q1 = ar.mul(k.log2_over_sqrt2, r.one_plus_rho2);
    q3 = ar.mul(k.log2, r.one_plus_rho2);
    c23 = ar.add(c23, ar.add(ar.mul(ar.mul(q1, p.T), p.R[0]), ar.mul(ar.mul(q3, p.T), p.R[2])));
  }
  g.c = {c1, c23, c23};

  // C0 = int_0^1 |||alpha_x|||
  if (mode == EvalMode::fast) {
    const double z0 = (std::sqrt(c1 * c1 + 2 * c23 * c23) - c1) / (std::sqrt(2.0) * c23);
    const double z2 = z0 * z0;
    g.C0 = 2 * c23 * std::log((z2 + std::sqrt(2.0) * z0 + 1) / (z2 - std::sqrt(2.0) * z0 + 1)) +
           c1 * (M_PI - 4 * std::atan(z2)) + 2 * M_PI * c23;
  } else {
    const mpfr_prec_t b = 128;
    const CertifiedComplex C1 = CertifiedComplex::from_double(c1, 0, b);
    const CertifiedComplex C2 = CertifiedComplex::from_double(c23, 0, b);
    const CertifiedComplex one = CertifiedComplex(1).rounded_to(b);
    const CertifiedComplex s2 = sqrt(CertifiedComplex(2).rounded_to(b));
    const CertifiedComplex pi = CertifiedComplex::pi(b);
    const CertifiedComplex z0 = (sqrt(C1 * C1 + C2 * C2 * 2) - C1) / (s2 * C2);
    const CertifiedComplex z2 = z0 * z0;
    const CertifiedComplex v = C2 * 2 * log((z2 + s2 * z0 + one) / (z2 - s2 * z0 + one)) + C1 * (pi - atan(z2) * 4) + pi * 2 * C2;
    g.C0 = up(v);
  }

  // C1, C2 from the weighted products of length n + 1
  for (const auto& [m, np] : data_->rem) {
    const double nv = ar.mul(np.eval(p.rho, mode), ar.pow(p.T, m[0]));
    const Alpha al = alpha_of(m);
    g.C1 = ar.add(g.C1, ar.mul(nv, monomial_bound(ar, p.R, al)));
    g.C2 = ar.add(g.C2, ar.mul(nv, monomial_diff(ar, p.R, p.varrho, al)));
  }

  // C3 = sum_i C_{3,i} varrho_i
  const double c31 = ar.add(ar.mul(k.pi, r.rho), ar.mul(ar.mul(q1, p.T), k.K23));
  const double c32 = k.K23;
  const double c33 = ar.mul(ar.add(r.rho, ar.mul(q3, p.T)), k.K23);
  g.C3 = ar.add(ar.add(ar.mul(c31, p.varrho[0]), ar.mul(c32, p.varrho[1])), ar.mul(c33, p.varrho[2]));
  return g;
}

namespace {

struct Bounds {
  std::array<double, 3> G{}, Lip{};
};

double exp_up(const Ar& ar, double x) {
  if (!ar.cert) return std::exp(x);
  return up(exp(CertifiedComplex::from_double(x, 0, 128)));
}

}  // namespace

std::array<double, 3> IftModel::estimate_G(const IftParams& p, EvalMode mode, Grouping grouping) const {
  check_params(p);
  const Ar ar{mode == EvalMode::certified};
  const Consts& k = consts(mode);
  const RhoBits r = rho_bits(ar, p.rho);
  const double inv2pi_rho = ar.mul(k.inv2pi, r.inv_rho);
  std::array<double, 3> G{};
  for (const Term& t : data_->terms) {
    const double tk = ar.pow(p.T, t.k);
    if (t.explicit_norm && grouping == Grouping::grouped) {
      G[0] = ar.add(G[0], ar.mul(tk, t.g1.eval(p.rho, mode)));
      G[1] = ar.add(G[1], ar.mul(ar.mul(tk, k.inv2pi), t.g2.eval(p.rho, mode)));
      G[2] = ar.add(G[2], ar.mul(ar.mul(tk, inv2pi_rho), t.g3.eval(p.rho, mode)));
      continue;
    }
    const double w = ar.mul(tk, monomial_bound(ar, p.R, t.alpha));
    double e1, e2, e3;
    if (grouping == Grouping::grouped) {
      e1 = ar.div(ar.add(t.g1.eval(p.rho, mode), ar.mul(ar.mul(k.s2over2pi, r.rho_plus_inv), t.g1m.eval(p.rho, mode))), r.rho2m1_lo);
      e2 = ar.mul(k.inv2pi, ar.add(t.g2.eval(p.rho, mode), ar.mul(ar.mul(2.0, r.inv_rho2), t.g2m.eval(p.rho, mode))));
      e3 = ar.mul(inv2pi_rho, t.g3.eval(p.rho, mode));
    } else {
      e1 = ar.div(ar.add(t.nb.eval(p.rho, mode), ar.mul(ar.mul(k.s2over2pi, r.rho_plus_inv), t.na_odd.eval(p.rho, mode))), r.rho2m1_lo);
      e2 = ar.mul(ar.mul(k.inv2pi, ar.add(1.0, ar.mul(2.0, r.inv_rho2))), t.na_even.eval(p.rho, mode));
      e3 = ar.mul(inv2pi_rho, t.na_odd.eval(p.rho, mode));
    }
    G[0] = ar.add(G[0], ar.mul(w, e1));
    G[1] = ar.add(G[1], ar.mul(w, e2));
    G[2] = ar.add(G[2], ar.mul(w, e3));
  }
  const GronwallConstants g = gronwall_constants(p, mode);
  const auto cr = remainder_factors(ar, k, r);
  const double rem = ar.mul(ar.mul(exp_up(ar, ar.mul(g.C0, p.T)), g.C1), ar.pow(p.T, setup_.n));
  for (std::size_t i = 0; i < 3; ++i) G[i] = ar.add(G[i], ar.mul(cr[i], rem));
  return G;
}

std::array<double, 3> IftModel::estimate_Lip(const IftParams& p, EvalMode mode, Grouping grouping) const {
  check_params(p);
  const Ar ar{mode == EvalMode::certified};
  const Consts& k = consts(mode);
  const RhoBits r = rho_bits(ar, p.rho);
  const double inv2pi_rho = ar.mul(k.inv2pi, r.inv_rho);
  std::array<double, 3> L{};
  for (const Term& t : data_->terms) {
    if (degree(t.alpha) == 0) continue;  // independent of u
    const double w = ar.mul(ar.pow(p.T, t.k), monomial_diff(ar, p.R, p.varrho, t.alpha));
    double e1, e2, e3;
    if (grouping == Grouping::grouped) {
      e1 = ar.div(ar.add(t.g1.eval(p.rho, mode), ar.mul(ar.mul(k.s2over2pi, r.rho_plus_inv), t.g1m.eval(p.rho, mode))), r.rho2m1_lo);
      e2 = ar.mul(k.inv2pi, ar.add(t.g2.eval(p.rho, mode), ar.mul(ar.mul(2.0, r.inv_rho2), t.g2m.eval(p.rho, mode))));
      e3 = ar.mul(inv2pi_rho, t.g3.eval(p.rho, mode));
    } else {
      e1 = ar.div(ar.add(t.nb.eval(p.rho, mode), ar.mul(ar.mul(k.s2over2pi, r.rho_plus_inv), t.na_odd.eval(p.rho, mode))), r.rho2m1_lo);
      e2 = ar.mul(ar.mul(k.inv2pi, ar.add(1.0, ar.mul(2.0, r.inv_rho2))), t.na_even.eval(p.rho, mode));
      e3 = ar.mul(inv2pi_rho, t.na_odd.eval(p.rho, mode));
    }
    L[0] = ar.add(L[0], ar.mul(w, e1));
    L[1] = ar.add(L[1], ar.mul(w, e2));
    L[2] = ar.add(L[2], ar.mul(w, e3));
  }
  const GronwallConstants g = gronwall_constants(p, mode);
  const auto cr = remainder_factors(ar, k, r);
  const double e = exp_up(ar, ar.mul(g.C0, p.T));
  const double tn = ar.pow(p.T, setup_.n);
  const double rem = ar.add(ar.mul(ar.mul(e, g.C2), tn), ar.mul(ar.mul(ar.mul(ar.mul(e, e), g.C1), g.C3), ar.mul(tn, p.T)));
  for (std::size_t i = 0; i < 3; ++i) L[i] = ar.add(L[i], ar.mul(cr[i], rem));
  return L;
}

double IftModel::C_K(const IftParams& p, EvalMode mode) const {
  check_params(p);
  const Ar ar{mode == EvalMode::certified};
  double s = 0.0;
  for (const auto& [m, v] : data_->ck) s = ar.add(s, ar.mul(ar.mul(v, ar.pow(p.T, m[0])), monomial_bound(ar, p.R, alpha_of(m))));
  return s;
}

IftConstants IftModel::genus_bound(const IftParams& p, EvalMode mode) const {
  const Ar ar{mode == EvalMode::certified};
  IftConstants c;
  c.C_K = C_K(p, mode);
  if (!(c.C_K < 1.0)) throw CKTooLarge("C_K = " + std::to_string(c.C_K) + " is not below 1");
  if (!(p.T > 0.0)) throw DomainError("T must be positive for a genus bound");
  c.C_G = estimate_G(p, mode);
  c.C_Lip = estimate_Lip(p, mode);
  c.gronwall = gronwall_constants(p, mode);
  // T' is needed as a lower bound, genus as an upper bound
  c.T_prime = ar.lower(p.T * ar.lower(std::sqrt(ar.lower(1.0 - c.C_K))));
  c.genus = ar.add(ar.div(1.0, ar.lower(2.0 * c.T_prime)), -1.0);
  return c;
}

bool IftModel::constraints_hold(const IftParams& p, const IftConstants& c, double kappa) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (!(c.C_G[i] <= rad::down(kappa * p.R[i]))) return false;
    if (!(c.C_Lip[i] <= rad::down(kappa * p.varrho[i]))) return false;
  }
  return c.C_K < 1.0;
}

/* ------------------------------------------------------- optimisation */

namespace {

constexpr int kDim = 7;
using Vec = std::array<double, kDim>;

// y -> params: T, R and varrho_1,2 in log scale, varrho_3 = 1, rho = 1 + e^y.
IftParams decode(const Vec& y, double kappa) {
  IftParams p;
  p.T = std::exp(y[0]);
  p.R = {std::exp(y[1]), std::exp(y[2]), std::exp(y[3])};
  p.varrho = {std::exp(y[4]), std::exp(y[5]), 1.0};
  p.rho = 1.0 + std::exp(y[6]);
  p.kappa = kappa;
  return p;
}

Vec encode(const IftParams& p) {
  return {std::log(p.T), std::log(p.R[0]), std::log(p.R[1]), std::log(p.R[2]),
          std::log(p.varrho[0] / p.varrho[2]), std::log(p.varrho[1] / p.varrho[2]), std::log(p.rho - 1.0)};
}

struct Eval {
  double genus = std::numeric_limits<double>::infinity();
  double worst = std::numeric_limits<double>::infinity();  // max of C / (kappa bound)
};

Eval evaluate(const IftModel& model, const IftParams& p) {
  Eval e;
  try {
    const IftConstants c = model.genus_bound(p, EvalMode::fast);
    double worst = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      worst = std::max(worst, c.C_G[i] / (p.kappa * p.R[i]));
      worst = std::max(worst, c.C_Lip[i] / (p.kappa * p.varrho[i]));
    }
    if (!std::isfinite(worst) || !std::isfinite(c.genus)) return e;
    e.genus = c.genus;
    e.worst = worst;
  } catch (const LawsonError&) {
  }
  return e;
}

template <class F>
Vec nelder_mead(F&& f, Vec x0, double step, int max_iter, double tol) {
  std::array<Vec, kDim + 1> s;
  std::array<double, kDim + 1> fs{};
  s[0] = x0;
  for (int i = 0; i < kDim; ++i) {
    s[static_cast<std::size_t>(i + 1)] = x0;
    s[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(i)] += step;
  }
  for (std::size_t i = 0; i <= kDim; ++i) fs[i] = f(s[i]);
  for (int it = 0; it < max_iter; ++it) {
    std::array<std::size_t, kDim + 1> idx{};
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
    auto s2 = s;
    auto f2 = fs;
    for (std::size_t i = 0; i <= kDim; ++i) {
      s[i] = s2[idx[i]];
      fs[i] = f2[idx[i]];
    }
    if (std::isfinite(fs[kDim]) && fs[kDim] - fs[0] <= tol * (std::fabs(fs[0]) + 1e-300)) break;
    Vec c{};
    for (std::size_t i = 0; i < kDim; ++i)
      for (std::size_t j = 0; j < kDim; ++j) c[j] += s[i][j] / kDim;
    auto along = [&](double coef) {
      Vec r;
      for (std::size_t j = 0; j < kDim; ++j) r[j] = c[j] + coef * (s[kDim][j] - c[j]);
      return r;
    };
    const Vec xr = along(-1.0);
    const double fr = f(xr);
    if (fr < fs[0]) {
      const Vec xe = along(-2.0);
      const double fe = f(xe);
      if (fe < fr) {
        s[kDim] = xe;
        fs[kDim] = fe;
      } else {
        s[kDim] = xr;
        fs[kDim] = fr;
      }
    } else if (fr < fs[kDim - 1]) {
      s[kDim] = xr;
      fs[kDim] = fr;
    } else {
      const Vec xc = fr < fs[kDim] ? along(-0.5) : along(0.5);
      const double fc = f(xc);
      if (fc < std::min(fr, fs[kDim])) {
        s[kDim] = xc;
        fs[kDim] = fc;
      } else {
        for (std::size_t i = 1; i <= kDim; ++i) {
          for (std::size_t j = 0; j < kDim; ++j) s[i][j] = s[0][j] + 0.5 * (s[i][j] - s[0][j]);
          fs[i] = f(s[i]);
        }
      }
    }
  }
  return s[static_cast<std::size_t>(std::min_element(fs.begin(), fs.end()) - fs.begin())];
}

// A strictly feasible starting point: small T, and R from a few rounds of R <- 2 C_G(R) / kappa.
std::optional<IftParams> initial_point(const IftModel& model, double kappa) {
  for (double T = 1e-3; T > 1e-12; T /= 4) {
    IftParams p;
    p.T = T;
    p.rho = 2.0;
    p.kappa = kappa;
    p.R = {T, T, T};
    for (int it = 0; it < 60; ++it) {
      std::array<double, 3> G;
      try {
        G = model.estimate_G(p, EvalMode::fast);
      } catch (const LawsonError&) {
        break;
      }
      for (std::size_t i = 0; i < 3; ++i) p.R[i] = std::max(2.0 * G[i] / kappa, 1e-6 * T);
    }
    const Eval e = evaluate(model, p);
    if (e.worst < 1.0) return p;
  }
  return std::nullopt;
}

}  // namespace

IftResult optimize_genus(const IftModel& model, const IftOptimizeOptions& options) {
  const double kappa = options.kappa;
  const auto start = initial_point(model, kappa);
  if (!start) throw NoFeasiblePoint("no strictly feasible starting point");

  Vec best = encode(*start);
  Eval best_eval = evaluate(model, *start);
  std::mt19937 rng(options.seed);
  std::normal_distribution<double> noise(0.0, 0.3);

  for (int restart = 0; restart < std::max(1, options.restarts); ++restart) {
    Vec y = best;
    if (restart > 0)
      for (auto& v : y) v += noise(rng);
    if (!(evaluate(model, decode(y, kappa)).worst < 1.0)) y = best;
    // barrier weight shrinks towards the boundary of the feasible set
    for (double mu = 1e-2; mu >= 1e-9; mu *= 1e-2) {
      const double scale = best_eval.genus;
      auto f = [&](const Vec& v) {
        const Eval e = evaluate(model, decode(v, kappa));
        if (!(e.worst < 1.0)) return std::numeric_limits<double>::infinity();
        return e.genus - mu * scale * std::log(1.0 - e.worst);
      };
      y = nelder_mead(f, y, mu > 1e-4 ? 0.5 : 0.05, options.max_iterations, 1e-12);
    }
    const Eval e = evaluate(model, decode(y, kappa));
    if (e.worst < 1.0 && e.genus < best_eval.genus) {
      best = y;
      best_eval = e;
    }
  }

  IftResult r;
  r.params = decode(best, kappa);
  r.constants = model.genus_bound(r.params, EvalMode::fast);
  r.certified = model.genus_bound(r.params, EvalMode::certified);
  r.verified = IftModel::constraints_hold(r.params, r.certified, kappa * (1.0 + kVerifySlack));
  return r;
}

TailConfig cauchy_config(const IftModel& model, const IftParams& p, const IftConstants& c) {
  if (!(c.C_K < 1.0)) throw CKTooLarge("C_K must be below 1");
  const Ar ar{true};
  const Consts& k = consts(EvalMode::certified);
  double inner = p.R[1];
  if (model.setup().quadratic)
    inner = ar.add(inner, ar.add(ar.mul(ar.mul(k.log2_over_sqrt2, p.T), p.R[0]), ar.mul(ar.mul(k.log2, p.T), p.R[2])));
  const auto& x2 = model.x2_constant_terms();
  for (std::size_t kk = 1; kk <= x2.size(); ++kk) {
    const double grow = rad::up(rad::up(rad::up(std::pow(ar.add(1.0, c.C_K), 0.5 * static_cast<double>(kk + 1)))) - 1.0);
    inner = ar.add(inner, ar.mul(ar.mul(x2[kk - 1], ar.pow(p.T, static_cast<int>(kk))), grow));
  }
  const double sqrt2_up = 1.4142135623730952;
  const double denom = rad::down(std::sqrt(rad::down(1.0 - c.C_K)));
  TailConfig cfg;
  cfg.C_A = ar.div(ar.mul(sqrt2_up, inner), rad::down(denom));
  cfg.T_prime = c.T_prime;
  cfg.N_derivatives = model.setup().N;
  return cfg;
}

}  // namespace lawson
