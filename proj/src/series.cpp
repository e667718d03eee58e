#include "lawson/series.hpp"

#include <algorithm>
#include <string>

#include "lawson/errors.hpp"
#include "walk_util.hpp"

namespace lawson {

/* ------------------------------------------------------- scalar series */

ScalarSeries ScalarSeries::constant(const CertifiedComplex& a, int N, Var v) {
  ScalarSeries s(std::vector<CertifiedComplex>(static_cast<std::size_t>(N + 1)), v);
  s.c[0] = a;
  return s;
}

ScalarSeries ScalarSeries::identity(int N, Var v) {
  ScalarSeries s(std::vector<CertifiedComplex>(static_cast<std::size_t>(N + 1)), v);
  if (N >= 1) s.c[1] = CertifiedComplex(1);
  return s;
}

ScalarSeries ScalarSeries::truncated(int N) const {
  ScalarSeries s(*this);
  s.c.resize(static_cast<std::size_t>(N + 1));
  return s;
}

namespace {

std::size_t common_size(const ScalarSeries& a, const ScalarSeries& b) { return std::min(a.c.size(), b.c.size()); }

ScalarSeries blank(std::size_t n, ScalarSeries::Var v) {
  return ScalarSeries(std::vector<CertifiedComplex>(n), v);
}

}  // namespace

ScalarSeries operator+(const ScalarSeries& a, const ScalarSeries& b) {
  ScalarSeries r = blank(common_size(a, b), a.var);
  for (std::size_t k = 0; k < r.c.size(); ++k) r.c[k] = a.c[k] + b.c[k];
  return r;
}

ScalarSeries operator-(const ScalarSeries& a, const ScalarSeries& b) {
  ScalarSeries r = blank(common_size(a, b), a.var);
  for (std::size_t k = 0; k < r.c.size(); ++k) r.c[k] = a.c[k] - b.c[k];
  return r;
}

ScalarSeries operator*(const ScalarSeries& a, const ScalarSeries& b) {
  ScalarSeries r = blank(common_size(a, b), a.var);
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    if (a.c[i].is_exact_zero()) continue;
    for (std::size_t j = 0; i + j < r.c.size(); ++j) {
      if (b.c[j].is_exact_zero()) continue;
      r.c[i + j].addmul(a.c[i], b.c[j]);
    }
  }
  return r;
}

ScalarSeries operator*(const ScalarSeries& a, const CertifiedComplex& s) {
  ScalarSeries r(a);
  for (auto& c : r.c) c *= s;
  return r;
}

ScalarSeries inverse(const ScalarSeries& a) {
  if (a.c.empty()) return a;
  ScalarSeries b = blank(a.c.size(), a.var);
  const CertifiedComplex inv0 = CertifiedComplex(1) / a.c[0];
  b.c[0] = inv0;
  for (std::size_t k = 1; k < a.c.size(); ++k) {
    CertifiedComplex acc;
    for (std::size_t j = 1; j <= k; ++j) acc.addmul(a.c[j], b.c[k - j]);
    b.c[k] = -(acc * inv0);
  }
  return b;
}

ScalarSeries sqrt(const ScalarSeries& a) {
  if (a.c.empty()) return a;
  ScalarSeries b = blank(a.c.size(), a.var);
  b.c[0] = sqrt(a.c[0]);
  const CertifiedComplex half_inv = CertifiedComplex(1) / (b.c[0] * 2);
  for (std::size_t k = 1; k < a.c.size(); ++k) {
    CertifiedComplex acc = a.c[k];
    for (std::size_t j = 1; j < k; ++j) acc -= b.c[j] * b.c[k - j];
    b.c[k] = acc * half_inv;
  }
  return b;
}

ScalarSeries exp(const ScalarSeries& a) {
  if (a.c.empty()) return a;
  ScalarSeries b = blank(a.c.size(), a.var);
  b.c[0] = a.c[0].is_exact_zero() ? CertifiedComplex(1) : exp(a.c[0]);
  // k b_k = sum_j j a_j b_{k-j}
  for (std::size_t k = 1; k < a.c.size(); ++k) {
    CertifiedComplex acc;
    for (std::size_t j = 1; j <= k; ++j) {
      if (a.c[j].is_exact_zero()) continue;
      acc.addmul(a.c[j] * static_cast<long>(j), b.c[k - j]);
    }
    b.c[k] = acc / static_cast<long>(k);
  }
  return b;
}

namespace {

ScalarSeries times_i(const ScalarSeries& a) {
  ScalarSeries r(a);
  for (auto& c : r.c) c = c.mul_i();
  return r;
}

}  // namespace

ScalarSeries sin(const ScalarSeries& a) {
  // (e^{ia} - e^{-ia}) / (2i)
  const ScalarSeries ep = exp(times_i(a)), em = exp(times_i(a) * CertifiedComplex(-1));
  ScalarSeries d = ep - em;
  for (auto& c : d.c) c = (-c.mul_i()).mul_2exp(-1);
  return d;
}

ScalarSeries cos(const ScalarSeries& a) {
  const ScalarSeries ep = exp(times_i(a)), em = exp(times_i(a) * CertifiedComplex(-1));
  ScalarSeries d = ep + em;
  for (auto& c : d.c) c = c.mul_2exp(-1);
  return d;
}

ScalarSeries tan(const ScalarSeries& a) { return sin(a) * inverse(cos(a)); }

ScalarSeries compose(const ScalarSeries& f, const ScalarSeries& g) {
  if (!g.c.empty() && !g.c[0].is_exact_zero()) throw DomainError("compose: inner series must vanish at 0");
  const std::size_t n = std::min(f.c.size(), g.c.size());
  ScalarSeries r = blank(n, g.var);
  if (n == 0) return r;
  ScalarSeries gt(g);
  gt.c.resize(n);
  for (int k = static_cast<int>(n) - 1; k >= 0; --k) {
    r = r * gt;
    r.c[0] += f.c[static_cast<std::size_t>(k)];
  }
  return r;
}

ScalarSeries reversion(const ScalarSeries& g) {
  if (g.c.size() < 2) throw DomainError("reversion needs a linear term");
  if (!g.c[0].is_exact_zero()) throw DomainError("reversion: series must vanish at 0");
  const int N = g.order();
  // g(t) = g1 t (1 + h(t)); iterate t <- s / (g1 (1 + h(t)))
  ScalarSeries h = blank(g.c.size(), g.var);
  const CertifiedComplex inv1 = CertifiedComplex(1) / g.c[1];
  for (int k = 0; k < N; ++k) h.c[static_cast<std::size_t>(k)] = g.c[static_cast<std::size_t>(k + 1)] * inv1;
  const ScalarSeries hinv = inverse(h);
  ScalarSeries t = ScalarSeries::identity(N, g.var) * inv1;
  const ScalarSeries s = ScalarSeries::identity(N, g.var);
  for (int it = 0; it < N; ++it) t = s * compose(hinv, t) * inv1;
  return t;
}

ScalarSeries s_to_t(const ScalarSeries& K) {
  const int N = K.order();
  const ScalarSeries rs = inverse(sqrt(K));
  const ScalarSeries s = ScalarSeries::identity(N, ScalarSeries::Var::s);
  ScalarSeries t = s;
  // each pass fixes one more coefficient
  for (int it = 0; it < N; ++it) t = s * compose(rs, t);
  t.var = ScalarSeries::Var::s;
  return t;
}

ScalarSeries reparametrize(const ScalarSeries& series_in_t, const ScalarSeries& K) {
  const int N = std::min(series_in_t.order(), K.order());
  ScalarSeries r = compose(series_in_t.truncated(N), s_to_t(K.truncated(N)));
  r.var = ScalarSeries::Var::s;
  return r;
}

/* ------------------------------------------------------- helpers */

namespace {

using LSeries = std::vector<LaurentPoly>;
using detail::next_vertex;
using detail::parallel_for;
using detail::step_sign;
using detail::two_i_pow;


LSeries mul(const LSeries& a, const LSeries& b, int order) {
  LSeries r(static_cast<std::size_t>(order + 1));
  for (int i = 0; i <= order && i < static_cast<int>(a.size()); ++i) {
    if (a[static_cast<std::size_t>(i)].is_zero()) continue;
    for (int j = 0; i + j <= order && j < static_cast<int>(b.size()); ++j) {
      if (b[static_cast<std::size_t>(j)].is_zero()) continue;
      r[static_cast<std::size_t>(i + j)] += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    }
  }
  return r;
}


// A value that must vanish: returns exact 0 or reports the failure.
CertifiedComplex forced_zero(const CertifiedComplex& z, const std::string& what) {
  if (!z.contains_zero()) throw PrecisionLoss(what + " should vanish but its enclosure excludes 0");
  return CertifiedComplex();
}

CertifiedComplex forced_real(const CertifiedComplex& z, const std::string& what) {
  if (!z.imag_part().contains_zero()) throw PrecisionLoss(what + " should be real but its enclosure is not");
  return z.real_part();
}

// Powers of Lambda(t) = i exp(i Psi(t)) used to evaluate Laurent polynomials at lambda = e^{i theta(t)}.
class LambdaPowers {
 public:
  LambdaPowers(const ScalarSeries& psi) {
    ScalarSeries ip = psi;
    for (auto& c : ip.c) c = c.mul_i();
    ScalarSeries mp = ip * CertifiedComplex(-1);
    up_.push_back(ScalarSeries::constant(CertifiedComplex(1), psi.order()));
    down_.push_back(up_.front());
    const ScalarSeries e = exp(ip), f = exp(mp);
    l_ = e;
    for (auto& c : l_.c) c = c.mul_i();
    linv_ = f;
    for (auto& c : linv_.c) c = -c.mul_i();
  }

  const ScalarSeries& power(int d) {
    auto& v = d >= 0 ? up_ : down_;
    const ScalarSeries& base = d >= 0 ? l_ : linv_;
    const std::size_t k = static_cast<std::size_t>(std::abs(d));
    while (v.size() <= k) v.push_back(v.back() * base);
    return v[k];
  }

  // coefficient of t^j in P(Lambda(t))
  CertifiedComplex coeff(const LaurentPoly& P, int j) {
    CertifiedComplex acc;
    P.for_each([&](int d, const CertifiedComplex& c) { acc.addmul(c, power(d).coeff(j)); });
    return acc;
  }

 private:
  ScalarSeries l_, linv_;
  std::vector<ScalarSeries> up_, down_;
};

}  // namespace

/* ------------------------------------------------------- ParamSeries */

ParamSeries::ParamSeries(Angle phi, SeriesOptions options)
    : phi_(std::move(phi)), opt_(options), bits_(options.precision.bits()) {
  if (opt_.mode == SeriesMode::minimal && !phi_.is_quarter_pi())
    throw DomainError("the minimal-surface recursion needs phi = pi/4");
  omegas_ = std::make_unique<OmegaTable>(phi_, OmegaOptions{opt_.precision, opt_.route, 0.55, opt_.cache});
  const CertifiedComplex f = phi_.value(bits_ + 16);
  cphi_ = cos(f).rounded_to(bits_);
  sphi_ = sin(f).rounded_to(bits_);
  pi_ = CertifiedComplex::pi(bits_);

  const CertifiedComplex half = CertifiedComplex::rational(1, 2, bits_);
  LaurentPoly linv_plus_l = LaurentPoly::monomial(-1, CertifiedComplex(1)) + LaurentPoly::monomial(1, CertifiedComplex(1));
  LaurentPoly linv_minus_l = LaurentPoly::monomial(-1, CertifiedComplex(1)) - LaurentPoly::monomial(1, CertifiedComplex(1));
  x_[0].push_back(linv_minus_l * half.mul_i());
  x_[1].push_back(linv_plus_l * (-(sphi_ * half)));
  x_[2].push_back(linv_plus_l * (-(cphi_ * half)));
  CertifiedComplex pi2 = pi_;
  theta_.push_back(pi2.mul_2exp(-1));
  K_.push_back(CertifiedComplex(1).rounded_to(bits_));
}

ParamSeries::~ParamSeries() = default;
ParamSeries::ParamSeries(ParamSeries&&) noexcept = default;

const LaurentPoly& ParamSeries::x(int j, int n) const {
  if (j < 1 || j > 3) throw DomainError("x index must be 1, 2 or 3");
  if (n < 0 || n > order()) throw MissingLowerOrder("order " + std::to_string(n) + " not computed");
  return x_[j - 1][static_cast<std::size_t>(n)];
}

const CertifiedComplex& ParamSeries::theta(int n) const {
  if (n < 0 || n > order()) throw MissingLowerOrder("order " + std::to_string(n) + " not computed");
  return theta_[static_cast<std::size_t>(n)];
}

const CertifiedComplex& ParamSeries::K(int n) const {
  if (n < 0 || n > order()) throw MissingLowerOrder("order " + std::to_string(n) + " not computed");
  return K_[static_cast<std::size_t>(n)];
}

const std::map<ParamSeries::Counts, CertifiedComplex>& ParamSeries::word_sums(int L, Endpoint endpoint) {
  auto& cache = sums_[endpoint == Endpoint::one ? 0 : 1];
  auto it = cache.find(L);
  if (it != cache.end()) return it->second;

  const auto words = walks_from_e3(L, endpoint == Endpoint::one ? 1 : 2);
  omegas_->prefetch(words, endpoint);
  const CertifiedComplex scale = two_i_pow(L);
  std::map<Counts, CertifiedComplex> sums;
  for (const auto& w : words) {
    int v = 3, sign = 1, cnt[3] = {0, 0, 0};
    for (int l : w) {
      sign *= step_sign(v, l);
      v = next_vertex(v, l);
      ++cnt[l - 1];
    }
    CertifiedComplex val = omegas_->value(w, endpoint);
    if (sign < 0) val = -val;
    sums[Counts{cnt[0], cnt[1], cnt[2]}] += val;
  }
  for (auto& [k, v] : sums) v *= scale;
  return cache.emplace(L, std::move(sums)).first->second;
}

LaurentPoly ParamSeries::phat_lower(int n, Endpoint endpoint) {
  if (n < 1) throw DomainError("phat_lower needs n >= 1");
  if (n > order() + 1) throw MissingLowerOrder("phat_lower(" + std::to_string(n) + ") needs all orders below it");
  auto& memo = endpoint == Endpoint::one ? plower_ : qlower_;
  if (auto it = memo.find(n); it != memo.end()) return it->second;

  // truncated powers X_j^a; only orders <= n + 1 - a are ever needed
  const int top = n - 1;
  auto ord = [&](int a) { return std::min(top, n + 1 - a); };
  std::vector<LSeries> P[3];
  for (int j = 0; j < 3; ++j) {
    LSeries X(x_[j].begin(), x_[j].begin() + top + 1);
    P[j].push_back(LSeries{LaurentPoly(CertifiedComplex(1))});
    P[j].back().resize(static_cast<std::size_t>(top + 1));
    for (int a = 1; a <= n + 1; ++a) P[j].push_back(mul(P[j].back(), X, ord(a)));
  }

  struct Term {
    int a, b, c, k;
    CertifiedComplex w;
  };
  std::vector<Term> terms;
  std::map<std::pair<int, int>, LSeries> Y;
  for (int L = 2; L <= n + 1; ++L) {
    for (const auto& [cnt, w] : word_sums(L, endpoint)) {
      if (w.is_exact_zero()) continue;
      const auto [a, b, c] = cnt;
      terms.push_back({a, b, c, n - L + 1, w});
      Y[{a, b}];
    }
  }
  std::vector<std::pair<const std::pair<int, int>, LSeries>*> ykeys;
  for (auto& kv : Y) ykeys.push_back(&kv);
  parallel_for(ykeys.size(), opt_.jobs, [&](std::size_t i) {
    const auto [a, b] = ykeys[i]->first;
    ykeys[i]->second = mul(P[0][static_cast<std::size_t>(a)], P[1][static_cast<std::size_t>(b)], std::min(top, n + 1 - a - b));
  });

  std::vector<LaurentPoly> partial(terms.size());
  parallel_for(terms.size(), opt_.jobs, [&](std::size_t i) {
    const Term& t = terms[i];
    const LSeries& y = Y.at({t.a, t.b});
    const LSeries& z = P[2][static_cast<std::size_t>(t.c)];
    LaurentPoly acc;
    for (int m = 0; m <= t.k; ++m) {
      const std::size_t ym = static_cast<std::size_t>(m), zm = static_cast<std::size_t>(t.k - m);
      if (ym >= y.size() || zm >= z.size() || y[ym].is_zero() || z[zm].is_zero()) continue;
      acc += y[ym] * z[zm];
    }
    partial[i] = acc * t.w;
  });
  LaurentPoly sum;
  for (auto& p : partial) sum += p;
  memo.emplace(n, sum);
  return sum;
}

void ParamSeries::step(int n) {
  if (n != order() + 1) throw MissingLowerOrder("step(" + std::to_string(n) + ") requires order " + std::to_string(n - 1));
  const bool minimal = opt_.mode == SeriesMode::minimal;
  const bool even = n % 2 == 0;
  const CertifiedComplex two_pi = pi_.mul_2exp(1);
  const CertifiedComplex m_inv_2pi = -(CertifiedComplex(1) / two_pi);
  const std::string tag = " at order " + std::to_string(n);

  const LaurentPoly pl = phat_lower(n, Endpoint::one);
  const LaurentPoly xp3 = (pl - conj_star(pl)).project(Projection::pos) * m_inv_2pi;
  LaurentPoly ql, xp2;
  if (minimal) {
    xp2 = even ? xp3 : -xp3;
  } else {
    ql = phat_lower(n, Endpoint::i);
    xp2 = (ql - conj_star(ql)).project(Projection::pos) * m_inv_2pi;
  }

  // lambda K_lower = (lambda^2 - 1) Q + R
  LaurentPoly Kl = (x_[1][0] * xp2 + x_[2][0] * xp3) * CertifiedComplex(2);
  for (int j = 0; j < 3; ++j)
    for (int k = 1; k < n; ++k) Kl += x_[j][static_cast<std::size_t>(k)] * x_[j][static_cast<std::size_t>(n - k)];
  const DivisionResult qr = divide_by_roots(Kl.shifted(1), {CertifiedComplex(1), CertifiedComplex(-1)});
  const CertifiedComplex R0 = qr.r.coeff(0);

  CertifiedComplex th, x30, x20;
  const CertifiedComplex i_unit = CertifiedComplex::imag_unit();
  if (minimal) {
    x30 = (xp3.eval(i_unit, -i_unit) * two_pi + pl.eval(i_unit, -i_unit)) * m_inv_2pi;
    x20 = even ? x30 : -x30;
  } else {
    ScalarSeries psi = ScalarSeries::constant(CertifiedComplex(), n);
    for (int k = 1; k < n; ++k) psi.c[static_cast<std::size_t>(k)] = theta_[static_cast<std::size_t>(k)];
    LambdaPowers lp(psi);
    CertifiedComplex H1, H2;
    for (int m = 0; m <= n; ++m) {
      const LaurentPoly& a3 = m == n ? xp3 : x_[2][static_cast<std::size_t>(m)];
      const LaurentPoly& a2 = m == n ? xp2 : x_[1][static_cast<std::size_t>(m)];
      H1 += two_pi * lp.coeff(a3, n - m);
      H2 += two_pi * lp.coeff(a2, n - m);
      if (m >= 1) {
        H1 += lp.coeff(m == n ? pl : plower_.at(m), n - m);
        H2 += lp.coeff(m == n ? ql : qlower_.at(m), n - m);
      }
    }
    th = -(sphi_ * H2 + cphi_ * H1) / two_pi - R0.mul_2exp(-1);
    th = even ? forced_zero(th, "theta" + tag) : forced_real(th, "theta" + tag);
    x30 = -(H1 + two_pi * cphi_ * th) / two_pi;
    x20 = -(H2 + two_pi * sphi_ * th) / two_pi;
  }
  if (even) {
    x30 = forced_zero(x30, "x3^0" + tag);
    x20 = forced_zero(x20, "x2^0" + tag);
  }

  LaurentPoly x1 = LaurentPoly(R0 * CertifiedComplex::rational(1, 2, bits_).mul_i()) - qr.q * i_unit;
  if (minimal && !even) {
    x1.for_each([&](int, const CertifiedComplex& c) { forced_zero(c, "x1" + tag); });
    x1 = LaurentPoly();
  }
  x_[0].push_back(std::move(x1));
  x_[1].push_back(xp2 + LaurentPoly(x20));
  x_[2].push_back(xp3 + LaurentPoly(x30));
  theta_.push_back(th);
  K_.push_back(qr.r.coeff(1));
  check_invariants(n);
}

void ParamSeries::check_invariants(int n) {
  const int parity = (n + 1) % 2;
  for (int j = 0; j < 3; ++j) {
    LaurentPoly& p = x_[j][static_cast<std::size_t>(n)];
    LaurentPoly clean;
    p.for_each([&](int d, const CertifiedComplex& c) {
      const bool ok = d >= 0 && d <= n + 1 && ((d % 2 + 2) % 2) == parity;
      if (ok) clean.at(d) = c;
      else forced_zero(c, "x" + std::to_string(j + 1) + "," + std::to_string(n) + " coefficient of lambda^" + std::to_string(d));
    });
    p = clean.trim();
  }
}

void ParamSeries::extend_to(int N) {
  for (int n = order() + 1; n <= N; ++n) step(n);
}

ScalarSeries ParamSeries::theta_shift_series() const {
  ScalarSeries s = ScalarSeries::constant(CertifiedComplex(), order());
  for (int k = 1; k <= order(); ++k) s.c[static_cast<std::size_t>(k)] = theta_[static_cast<std::size_t>(k)];
  return s;
}

ScalarSeries ParamSeries::K_series() const { return ScalarSeries(K_); }

ScalarSeries ParamSeries::x0_series(int j) const {
  ScalarSeries s = ScalarSeries::constant(CertifiedComplex(), order());
  for (int k = 0; k <= order(); ++k) s.c[static_cast<std::size_t>(k)] = x(j, k).coeff(0);
  return s;
}

/* ------------------------------------------------------- energies */

namespace {

void require_order(const ParamSeries& state, int N) {
  if (N < 1 || state.order() < N)
    throw MissingLowerOrder("series computed to order " + std::to_string(state.order()) + ", need " + std::to_string(N));
}

// K^{-1/2} (cos(phi) x_2^0 - sin(phi) x_3^0) in t
ScalarSeries willmore_in_t(const ParamSeries& state, int N) {
  const mpfr_prec_t bits = state.options().precision.bits();
  const CertifiedComplex f = state.phi().value(bits + 16);
  const CertifiedComplex c = cos(f).rounded_to(bits), s = sin(f).rounded_to(bits);
  const ScalarSeries K = state.K_series().truncated(N);
  const ScalarSeries body = state.x0_series(2).truncated(N) * c - state.x0_series(3).truncated(N) * s;
  return inverse(sqrt(K)) * body;
}

}  // namespace

ScalarSeries area_coefficients(const ParamSeries& state, int N) {
  require_order(state, N);
  return reparametrize(willmore_in_t(state, N), state.K_series().truncated(N));
}

WillmoreMeanCurvature willmore_mean_curvature_coefficients(const ParamSeries& state, int N) {
  require_order(state, N);
  const ScalarSeries K = state.K_series().truncated(N);
  WillmoreMeanCurvature out;
  out.W = reparametrize(willmore_in_t(state, N), K);
  // cot(pi/2 + Theta) = -tan(Theta)
  out.H = reparametrize(tan(state.theta_shift_series().truncated(N)) * CertifiedComplex(-1), K);
  return out;
}

}  // namespace lawson
