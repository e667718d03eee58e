#include "lawson/wiener.hpp"

#include <cmath>

namespace lawson {

DivisionResult divide_by_roots(const LaurentPoly& p, const std::vector<CertifiedComplex>& roots) {
  LaurentPoly u = p;
  for (int d = p.min_deg(); d < 0; ++d) {
    if (!is_exact_zero(p.coeff(d))) throw NegativeDegreeInput("divide_by_roots: negative degree in dividend");
  }
  u = u.project(Projection::nonneg);

  // remainder = sum_j c_j prod_{i<j} (lambda - mu_i), c_j = q_{j-1}(mu_j)
  LaurentPoly rem;
  LaurentPoly basis(CertifiedComplex(1));
  for (const CertifiedComplex& mu : roots) {
    // synthetic division: u = (lambda - mu) q + u(mu)
    LaurentPoly q;
    CertifiedComplex carry;
    for (int d = u.max_deg(); d >= 0; --d) {
      carry = carry * mu + u.coeff(d);
      if (d > 0) q.at(d - 1) = carry;
    }
    q.trim();
    rem += basis * carry;
    LaurentPoly lin = LaurentPoly::monomial(1, CertifiedComplex(1)) - LaurentPoly(mu);
    basis *= lin;
    u = std::move(q);
  }
  return {std::move(u), std::move(rem)};
}

CertifiedComplex eval(const LaurentPoly& p, const CertifiedComplex& lambda0) {
  if (p.is_zero()) return CertifiedComplex();
  if (p.min_deg() < 0) {
    if (lambda0.contains_zero()) throw PoleAtZero("evaluation of negative powers at a disc containing 0");
    return p.eval(lambda0, CertifiedComplex(1) / lambda0);
  }
  return p.eval(lambda0, CertifiedComplex(1));
}

AbsInterval rho_norm(const LaurentPoly& p, double rho) {
  double lo = 0.0, hi = 0.0;
  p.for_each([&](int d, const CertifiedComplex& c) {
    const AbsInterval a = disc_abs_interval(c);
    const int k = std::abs(d);
    const double pw = std::pow(rho, k);
    // pow is accurate to a few ulps; widen by a relative 1e-14
    hi = rad::add(hi, rad::mul(a.hi, rad::up(pw * (1.0 + 1e-14))));
    lo = lo + rad::down(a.lo * rad::down(pw * (1.0 - 1e-14)));
  });
  return {rad::down(lo), hi};
}

LaurentPoly conj_star(const LaurentPoly& p) {
  LaurentPoly r;
  p.for_each([&](int d, const CertifiedComplex& c) { r.at(-d) = c.conj(); });
  return r.trim();
}

double max_radius(const LaurentPoly& p) {
  double r = 0.0;
  p.for_each([&](int, const CertifiedComplex& c) { r = std::max(r, c.radius()); });
  return r;
}

}  // namespace lawson
