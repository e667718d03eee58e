#include "lawson/cdisc.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstring>
#include <limits>

namespace lawson {

mpfr_prec_t Precision::bits() const {
  const double b = std::ceil(static_cast<double>(digits) * 3.3219280948873623);
  return static_cast<mpfr_prec_t>(b) + 32;
}

/* ---------------------------------------------------------------- Real */

Real::Real(mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

Real::Real(const Real& other) {
  mpfr_init2(v_, other.prec());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

// Moves steal the limb pointer; a moved-from value only supports
// destruction and assignment.
Real::Real(Real&& other) noexcept {
  std::memcpy(v_, other.v_, sizeof(mpfr_t));
  other.v_->_mpfr_d = nullptr;
}

Real& Real::operator=(const Real& other) {
  if (this == &other) return *this;
  if (v_->_mpfr_d == nullptr) {
    mpfr_init2(v_, other.prec());
  } else if (prec() != other.prec()) {
    mpfr_set_prec(v_, other.prec());
  }
  mpfr_set(v_, other.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  std::swap(v_[0], other.v_[0]);
  return *this;
}

Real::~Real() {
  if (v_->_mpfr_d != nullptr) mpfr_clear(v_);
}

Real Real::from_long(long v, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_set_si(r.v_, v, MPFR_RNDN);
  return r;
}

Real Real::from_string(const std::string& s, mpfr_prec_t prec) {
  Real r(prec);
  if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0) {
    // mpfr_set_str returns -1 on a malformed string
    if (mpfr_nan_p(r.v_) || s.empty()) throw DomainError("malformed number: " + s);
  }
  return r;
}

double Real::abs_upper() const { return std::fabs(mpfr_get_d(v_, MPFR_RNDA)); }
double Real::abs_lower() const { return std::fabs(mpfr_get_d(v_, MPFR_RNDZ)); }

double Real::ulp() const {
  if (mpfr_zero_p(v_)) return 0.0;
  const long e = static_cast<long>(mpfr_get_exp(v_)) - static_cast<long>(prec());
  if (e < -1074) return DBL_TRUE_MIN;
  return std::ldexp(1.0, static_cast<int>(e));
}

std::string Real::to_string(int digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", std::max(digits - 1, 0), v_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

std::string Real::to_hex() const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%Ra", v_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

Real Real::from_hex(const std::string& s, mpfr_prec_t prec) {
  Real r(prec);
  if (mpfr_set_str(r.v_, s.c_str(), 16, MPFR_RNDN) != 0 && mpfr_nan_p(r.v_))
    throw DomainError("malformed hex number: " + s);
  return r;
}

/* ----------------------------------------------------------- radii */

namespace rad {

double up(double x) {
  if (x == 0.0) return 0.0;
  return std::nextafter(x, std::numeric_limits<double>::infinity());
}

double down(double x) {
  if (x <= 0.0) return 0.0;
  return std::nextafter(x, 0.0);
}

double add(double a, double b) { return up(a + b); }

double mul(double a, double b) {
  const double p = a * b;
  if (p == 0.0 && a != 0.0 && b != 0.0) return DBL_TRUE_MIN;
  return up(p);
}

double div(double a, double b) {
  const double q = a / b;
  if (q == 0.0 && a != 0.0) return DBL_TRUE_MIN;
  return up(q);
}

}  // namespace rad

namespace {

mpfr_prec_t max_prec(const CertifiedComplex& a, const CertifiedComplex& b) {
  return std::max(a.prec(), b.prec());
}

void raise_prec(Real& x, mpfr_prec_t p) {
  if (x.prec() < p) mpfr_prec_round(x.ptr(), p, MPFR_RNDN);  // exact when increasing
}

double hypot_up(double a, double b) { return rad::up(rad::up(std::hypot(a, b))); }
double hypot_down(double a, double b) { return rad::down(rad::down(std::hypot(a, b))); }

}  // namespace

/* ------------------------------------------------- CertifiedComplex */

CertifiedComplex::CertifiedComplex() : re_(64), im_(64) {}

CertifiedComplex::CertifiedComplex(long re) : re_(Real::from_long(re)), im_(64) {}

CertifiedComplex::CertifiedComplex(long re, long im)
    : re_(Real::from_long(re)), im_(Real::from_long(im)) {}

CertifiedComplex::CertifiedComplex(Real re, Real im, double radius, bool certified)
    : re_(std::move(re)), im_(std::move(im)), rad_(certified ? radius : 0.0), cert_(certified) {
  const mpfr_prec_t p = std::max(re_.prec(), im_.prec());
  raise_prec(re_, p);
  raise_prec(im_, p);
}

mpfr_prec_t CertifiedComplex::prec() const { return std::max(re_.prec(), im_.prec()); }

CertifiedComplex CertifiedComplex::from_double(double re, double im, mpfr_prec_t prec) {
  Real r(std::max<mpfr_prec_t>(prec, 53)), i(std::max<mpfr_prec_t>(prec, 53));
  mpfr_set_d(r.ptr(), re, MPFR_RNDN);
  mpfr_set_d(i.ptr(), im, MPFR_RNDN);
  return CertifiedComplex(std::move(r), std::move(i));
}

CertifiedComplex CertifiedComplex::from_string(const std::string& re, const std::string& im,
                                               mpfr_prec_t prec) {
  Real r(prec), i(prec);
  const int tr = mpfr_set_str(r.ptr(), re.c_str(), 10, MPFR_RNDN);
  const int ti = mpfr_set_str(i.ptr(), im.c_str(), 10, MPFR_RNDN);
  if (mpfr_nan_p(r.ptr()) || mpfr_nan_p(i.ptr())) throw DomainError("malformed number");
  CertifiedComplex z(std::move(r), std::move(i));
  // mpfr_set_str does not report inexactness; assume one ulp each.
  (void)tr;
  (void)ti;
  z.add_rounding(1, 1);
  return z;
}

CertifiedComplex CertifiedComplex::rational(long p, long q, mpfr_prec_t prec) {
  if (q == 0) throw DivisorContainsZero("rational with zero denominator");
  Real r(prec);
  mpfr_set_si(r.ptr(), p, MPFR_RNDN);
  const int t = mpfr_div_si(r.ptr(), r.ptr(), q, MPFR_RNDN);
  CertifiedComplex z(std::move(r), Real(prec));
  z.add_rounding(t, 0);
  return z;
}

CertifiedComplex CertifiedComplex::pi(mpfr_prec_t prec) {
  Real r(prec);
  const int t = mpfr_const_pi(r.ptr(), MPFR_RNDN);
  CertifiedComplex z(std::move(r), Real(prec));
  z.add_rounding(t, 0);
  return z;
}

CertifiedComplex CertifiedComplex::log2(mpfr_prec_t prec) {
  Real r(prec);
  const int t = mpfr_const_log2(r.ptr(), MPFR_RNDN);
  CertifiedComplex z(std::move(r), Real(prec));
  z.add_rounding(t, 0);
  return z;
}

CertifiedComplex CertifiedComplex::zeta_ui(unsigned long k, mpfr_prec_t prec) {
  if (k < 2) throw DomainError("zeta(1) diverges");
  Real r(prec);
  const int t = mpfr_zeta_ui(r.ptr(), k, MPFR_RNDN);
  CertifiedComplex z(std::move(r), Real(prec));
  z.add_rounding(t, 0);
  return z;
}

void CertifiedComplex::add_rounding(int ternary_re, int ternary_im, int ulps) {
  if (!cert_) return;
  double e = 0.0;
  if (ternary_re != 0) e = rad::add(e, re_.ulp());
  if (ternary_im != 0) e = rad::add(e, im_.ulp());
  if (e != 0.0) rad_ = rad::add(rad_, rad::mul(e, static_cast<double>(ulps)));
}

void CertifiedComplex::finish() {
  if (!cert_) rad_ = 0.0;
  if (!std::isfinite(rad_)) throw PrecisionLoss("radius overflow");
}

CertifiedComplex CertifiedComplex::inflated(double extra) const {
  CertifiedComplex z(*this);
  if (z.cert_) z.rad_ = rad::add(z.rad_, extra);
  return z;
}

CertifiedComplex CertifiedComplex::with_certified(bool certified) const {
  CertifiedComplex z(*this);
  z.cert_ = certified;
  if (!certified) z.rad_ = 0.0;
  return z;
}

CertifiedComplex CertifiedComplex::rounded_to(mpfr_prec_t prec) const {
  Real r(prec), i(prec);
  const int tr = mpfr_set(r.ptr(), re_.ptr(), MPFR_RNDN);
  const int ti = mpfr_set(i.ptr(), im_.ptr(), MPFR_RNDN);
  CertifiedComplex z(std::move(r), std::move(i), rad_, cert_);
  z.add_rounding(tr, ti);
  return z;
}

double CertifiedComplex::center_abs_upper() const {
  if (im_.is_zero()) return re_.abs_upper();
  if (re_.is_zero()) return im_.abs_upper();
  return hypot_up(re_.abs_upper(), im_.abs_upper());
}

double CertifiedComplex::center_abs_lower() const {
  if (im_.is_zero()) return re_.abs_lower();
  if (re_.is_zero()) return im_.abs_lower();
  return hypot_down(re_.abs_lower(), im_.abs_lower());
}

bool CertifiedComplex::contains_zero() const { return center_abs_lower() <= rad_; }

bool CertifiedComplex::contains(const CertifiedComplex& other) const {
  const mpfr_prec_t p = max_prec(*this, other) + 8;
  Real dr(p), di(p);
  mpfr_sub(dr.ptr(), re_.ptr(), other.re_.ptr(), MPFR_RNDN);
  mpfr_sub(di.ptr(), im_.ptr(), other.im_.ptr(), MPFR_RNDN);
  double d = hypot_up(dr.abs_upper(), di.abs_upper());
  if (d == 0.0) return other.rad_ <= rad_;
  d = rad::mul(d, 1.0 + 1e-15);
  return rad::add(d, other.rad_) <= rad_;
}

bool CertifiedComplex::overlaps(const CertifiedComplex& other) const {
  const mpfr_prec_t p = max_prec(*this, other) + 8;
  Real dr(p), di(p);
  mpfr_sub(dr.ptr(), re_.ptr(), other.re_.ptr(), MPFR_RNDN);
  mpfr_sub(di.ptr(), im_.ptr(), other.im_.ptr(), MPFR_RNDN);
  const double d = hypot_down(dr.abs_lower(), di.abs_lower());
  return d * (1.0 - 1e-15) <= rad::add(rad_, other.rad_);
}

CertifiedComplex CertifiedComplex::conj() const {
  CertifiedComplex z(*this);
  mpfr_neg(z.im_.ptr(), z.im_.ptr(), MPFR_RNDN);
  return z;
}

CertifiedComplex CertifiedComplex::real_part() const {
  return CertifiedComplex(re_, Real(prec()), rad_, cert_);
}

CertifiedComplex CertifiedComplex::imag_part() const {
  return CertifiedComplex(im_, Real(prec()), rad_, cert_);
}

CertifiedComplex CertifiedComplex::mul_i() const {
  Real r(im_);
  mpfr_neg(r.ptr(), r.ptr(), MPFR_RNDN);
  return CertifiedComplex(std::move(r), re_, rad_, cert_);
}

CertifiedComplex CertifiedComplex::mul_2exp(long e) const {
  CertifiedComplex z(*this);
  mpfr_mul_2si(z.re_.ptr(), z.re_.ptr(), e, MPFR_RNDN);
  mpfr_mul_2si(z.im_.ptr(), z.im_.ptr(), e, MPFR_RNDN);
  if (z.cert_) z.rad_ = rad::up(std::ldexp(z.rad_, static_cast<int>(e)));
  return z;
}

CertifiedComplex CertifiedComplex::operator-() const {
  CertifiedComplex z(*this);
  mpfr_neg(z.re_.ptr(), z.re_.ptr(), MPFR_RNDN);
  mpfr_neg(z.im_.ptr(), z.im_.ptr(), MPFR_RNDN);
  return z;
}

CertifiedComplex& CertifiedComplex::operator+=(const CertifiedComplex& b) {
  const mpfr_prec_t p = max_prec(*this, b);
  raise_prec(re_, p);
  raise_prec(im_, p);
  const int tr = mpfr_add(re_.ptr(), re_.ptr(), b.re_.ptr(), MPFR_RNDN);
  const int ti = mpfr_add(im_.ptr(), im_.ptr(), b.im_.ptr(), MPFR_RNDN);
  cert_ = cert_ && b.cert_;
  if (cert_) rad_ = rad::add(rad_, b.rad_);
  add_rounding(tr, ti);
  finish();
  return *this;
}

CertifiedComplex& CertifiedComplex::operator-=(const CertifiedComplex& b) {
  const mpfr_prec_t p = max_prec(*this, b);
  raise_prec(re_, p);
  raise_prec(im_, p);
  const int tr = mpfr_sub(re_.ptr(), re_.ptr(), b.re_.ptr(), MPFR_RNDN);
  const int ti = mpfr_sub(im_.ptr(), im_.ptr(), b.im_.ptr(), MPFR_RNDN);
  cert_ = cert_ && b.cert_;
  if (cert_) rad_ = rad::add(rad_, b.rad_);
  add_rounding(tr, ti);
  finish();
  return *this;
}

CertifiedComplex operator*(const CertifiedComplex& a, const CertifiedComplex& b) {
  const mpfr_prec_t p = max_prec(a, b);
  Real re(p), im(p);
  int tr = 0, ti = 0;
  if (b.im_.is_zero()) {
    tr = mpfr_mul(re.ptr(), a.re_.ptr(), b.re_.ptr(), MPFR_RNDN);
    ti = mpfr_mul(im.ptr(), a.im_.ptr(), b.re_.ptr(), MPFR_RNDN);
  } else if (a.im_.is_zero()) {
    tr = mpfr_mul(re.ptr(), a.re_.ptr(), b.re_.ptr(), MPFR_RNDN);
    ti = mpfr_mul(im.ptr(), a.re_.ptr(), b.im_.ptr(), MPFR_RNDN);
  } else {
    tr = mpfr_fmms(re.ptr(), a.re_.ptr(), b.re_.ptr(), a.im_.ptr(), b.im_.ptr(), MPFR_RNDN);
    ti = mpfr_fmma(im.ptr(), a.re_.ptr(), b.im_.ptr(), a.im_.ptr(), b.re_.ptr(), MPFR_RNDN);
  }
  const bool cert = a.cert_ && b.cert_;
  double r = 0.0;
  if (cert && (a.rad_ != 0.0 || b.rad_ != 0.0)) {
    r = rad::add(rad::mul(a.center_abs_upper(), b.rad_), rad::mul(b.center_abs_upper(), a.rad_));
    r = rad::add(r, rad::mul(a.rad_, b.rad_));
  }
  CertifiedComplex z(std::move(re), std::move(im), r, cert);
  z.add_rounding(tr, ti);
  z.finish();
  return z;
}

CertifiedComplex& CertifiedComplex::operator*=(const CertifiedComplex& b) {
  *this = *this * b;
  return *this;
}

CertifiedComplex operator/(const CertifiedComplex& a, const CertifiedComplex& b) {
  const bool cert = a.cert_ && b.cert_;
  const double blo = b.center_abs_lower();
  if (b.is_exact_zero() || (cert && blo <= b.rad_) || blo == 0.0)
    throw DivisorContainsZero("divisor disc contains zero");
  const mpfr_prec_t p = max_prec(a, b);
  Real re(p), im(p);
  int ulps = 1;
  int tr = 0, ti = 0;
  if (b.im_.is_zero()) {
    tr = mpfr_div(re.ptr(), a.re_.ptr(), b.re_.ptr(), MPFR_RNDN);
    ti = mpfr_div(im.ptr(), a.im_.ptr(), b.re_.ptr(), MPFR_RNDN);
  } else {
    Real den(p + 16), nr(p + 16), ni(p + 16);
    mpfr_fmma(den.ptr(), b.re_.ptr(), b.re_.ptr(), b.im_.ptr(), b.im_.ptr(), MPFR_RNDN);
    mpfr_fmma(nr.ptr(), a.re_.ptr(), b.re_.ptr(), a.im_.ptr(), b.im_.ptr(), MPFR_RNDN);
    mpfr_fmms(ni.ptr(), a.im_.ptr(), b.re_.ptr(), a.re_.ptr(), b.im_.ptr(), MPFR_RNDN);
    mpfr_div(re.ptr(), nr.ptr(), den.ptr(), MPFR_RNDN);
    mpfr_div(im.ptr(), ni.ptr(), den.ptr(), MPFR_RNDN);
    tr = ti = 1;
    ulps = 2;
  }
  double r = 0.0;
  if (cert && (a.rad_ != 0.0 || b.rad_ != 0.0)) {
    const double bup = b.center_abs_upper();
    const double num = rad::add(rad::mul(a.rad_, bup), rad::mul(a.center_abs_upper(), b.rad_));
    const double den = rad::down(blo * rad::down(blo - b.rad_));
    r = rad::div(num, den);
  }
  CertifiedComplex z(std::move(re), std::move(im), r, cert);
  z.add_rounding(tr, ti, ulps);
  z.finish();
  return z;
}

CertifiedComplex& CertifiedComplex::operator/=(const CertifiedComplex& b) {
  *this = *this / b;
  return *this;
}

CertifiedComplex& CertifiedComplex::operator*=(long k) {
  const int tr = mpfr_mul_si(re_.ptr(), re_.ptr(), k, MPFR_RNDN);
  const int ti = mpfr_mul_si(im_.ptr(), im_.ptr(), k, MPFR_RNDN);
  if (cert_) rad_ = rad::mul(rad_, std::fabs(static_cast<double>(k)));
  add_rounding(tr, ti);
  finish();
  return *this;
}

CertifiedComplex& CertifiedComplex::operator/=(long k) {
  if (k == 0) throw DivisorContainsZero("division by integer zero");
  const int tr = mpfr_div_si(re_.ptr(), re_.ptr(), k, MPFR_RNDN);
  const int ti = mpfr_div_si(im_.ptr(), im_.ptr(), k, MPFR_RNDN);
  if (cert_) rad_ = rad::div(rad_, std::fabs(static_cast<double>(k)));
  add_rounding(tr, ti);
  finish();
  return *this;
}

CertifiedComplex& CertifiedComplex::addmul(const CertifiedComplex& a, const CertifiedComplex& b) {
  return *this += a * b;
}

std::string CertifiedComplex::to_string(int digits) const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", rad_);
  return re_.to_string(digits) + " " + im_.to_string(digits) + " +/- " + buf;
}

/* ------------------------------------------------------ functions */

namespace {

// Upper bound for the real center as a signed double, rounded up.
double upper_signed(const Real& x) { return mpfr_get_d(x.ptr(), MPFR_RNDU); }

CertifiedComplex make(Real re, Real im, double r, bool cert, int ulps) {
  CertifiedComplex z(std::move(re), std::move(im), r, cert);
  // every center component below is produced by a short chain of correctly
  // rounded operations; `ulps` covers the accumulated relative error.
  return z.inflated(cert ? rad::mul(static_cast<double>(ulps),
                                    rad::add(z.re().ulp(), z.im().ulp()))
                         : 0.0);
}

}  // namespace

CertifiedComplex exp(const CertifiedComplex& z) {
  const mpfr_prec_t p = z.prec();
  Real ex(p), c(p), s(p), re(p), im(p);
  mpfr_exp(ex.ptr(), z.re().ptr(), MPFR_RNDN);
  if (z.im().is_zero()) {
    re = ex;
  } else {
    mpfr_sin_cos(s.ptr(), c.ptr(), z.im().ptr(), MPFR_RNDN);
    mpfr_mul(re.ptr(), ex.ptr(), c.ptr(), MPFR_RNDN);
    mpfr_mul(im.ptr(), ex.ptr(), s.ptr(), MPFR_RNDN);
  }
  double r = 0.0;
  if (z.certified() && z.radius() != 0.0) {
    const double bound = rad::up(rad::up(std::exp(rad::add(upper_signed(z.re()), z.radius()))));
    r = rad::mul(z.radius(), bound);
  }
  return make(std::move(re), std::move(im), r, z.certified(), 4);
}

CertifiedComplex log(const CertifiedComplex& z, LogBranch branch) {
  if (branch == LogBranch::positive_real) {
    // arg in (0, 2pi): log(z) = log(-z) + i pi
    CertifiedComplex w = log(-z, LogBranch::principal);
    return w + CertifiedComplex::pi(z.prec()).mul_i();
  }
  const bool cert = z.certified();
  const double lo = z.center_abs_lower();
  if (z.is_exact_zero() || (cert && lo <= z.radius())) throw DomainError("log of a disc containing 0");
  const double dist = z.re().sign() > 0 ? lo : z.im().abs_lower();
  if (z.re().sign() <= 0 && (dist <= (cert ? z.radius() : 0.0)))
    throw BranchCutViolation("log: disc meets the branch cut (-inf, 0]");
  const mpfr_prec_t p = z.prec();
  Real m(p + 16), re(p), im(p);
  mpfr_hypot(m.ptr(), z.re().ptr(), z.im().ptr(), MPFR_RNDN);
  mpfr_log(re.ptr(), m.ptr(), MPFR_RNDN);
  mpfr_atan2(im.ptr(), z.im().ptr(), z.re().ptr(), MPFR_RNDN);
  double r = 0.0;
  if (cert) {
    if (z.radius() != 0.0) r = rad::div(z.radius(), rad::down(lo - z.radius()));
    // rounding of |z| perturbs log|z| by a relative 2^-(p+15)
    r = rad::add(r, std::ldexp(1.0, -static_cast<int>(p)));
  }
  return make(std::move(re), std::move(im), r, cert, 2);
}

CertifiedComplex sqrt(const CertifiedComplex& z) {
  if (z.is_exact_zero()) return z;
  const bool cert = z.certified();
  const double lo = z.center_abs_lower();
  if (cert && lo <= z.radius()) throw DomainError("sqrt of a disc containing 0");
  const double dist = z.re().sign() > 0 ? lo : z.im().abs_lower();
  if (z.re().sign() < 0 && dist <= (cert ? z.radius() : 0.0))
    throw BranchCutViolation("sqrt: disc meets the branch cut (-inf, 0]");
  const mpfr_prec_t p = z.prec();
  Real re(p), im(p);
  if (z.im().is_zero()) {
    mpfr_sqrt(re.ptr(), z.re().ptr(), MPFR_RNDN);
  } else {
    Real m(p + 16), w(p + 16), t(p + 16);
    mpfr_hypot(m.ptr(), z.re().ptr(), z.im().ptr(), MPFR_RNDN);
    mpfr_abs(t.ptr(), z.re().ptr(), MPFR_RNDN);
    mpfr_add(w.ptr(), m.ptr(), t.ptr(), MPFR_RNDN);
    mpfr_div_2ui(w.ptr(), w.ptr(), 1, MPFR_RNDN);
    mpfr_sqrt(w.ptr(), w.ptr(), MPFR_RNDN);  // sqrt((|z|+|x|)/2)
    mpfr_div(t.ptr(), z.im().ptr(), w.ptr(), MPFR_RNDN);
    mpfr_div_2ui(t.ptr(), t.ptr(), 1, MPFR_RNDN);  // y / (2w)
    if (z.re().sign() >= 0) {
      mpfr_set(re.ptr(), w.ptr(), MPFR_RNDN);
      mpfr_set(im.ptr(), t.ptr(), MPFR_RNDN);
    } else {
      mpfr_abs(re.ptr(), t.ptr(), MPFR_RNDN);
      mpfr_copysign(im.ptr(), w.ptr(), z.im().ptr(), MPFR_RNDN);
    }
  }
  double r = 0.0;
  if (cert && z.radius() != 0.0)
    r = rad::div(z.radius(), rad::down(2.0 * rad::down(std::sqrt(rad::down(lo - z.radius())))));
  return make(std::move(re), std::move(im), r, cert, 4);
}

namespace {

CertifiedComplex sin_or_cos(const CertifiedComplex& z, bool want_sin) {
  const mpfr_prec_t p = z.prec();
  Real s(p + 8), c(p + 8), sh(p + 8), ch(p + 8), re(p), im(p);
  mpfr_sin_cos(s.ptr(), c.ptr(), z.re().ptr(), MPFR_RNDN);
  if (z.im().is_zero()) {
    mpfr_set(re.ptr(), want_sin ? s.ptr() : c.ptr(), MPFR_RNDN);
  } else {
    mpfr_sinh_cosh(sh.ptr(), ch.ptr(), z.im().ptr(), MPFR_RNDN);
    if (want_sin) {
      // sin(x+iy) = sin x cosh y + i cos x sinh y
      mpfr_mul(re.ptr(), s.ptr(), ch.ptr(), MPFR_RNDN);
      mpfr_mul(im.ptr(), c.ptr(), sh.ptr(), MPFR_RNDN);
    } else {
      // cos(x+iy) = cos x cosh y - i sin x sinh y
      mpfr_mul(re.ptr(), c.ptr(), ch.ptr(), MPFR_RNDN);
      mpfr_mul(im.ptr(), s.ptr(), sh.ptr(), MPFR_RNDN);
      mpfr_neg(im.ptr(), im.ptr(), MPFR_RNDN);
    }
  }
  double r = 0.0;
  if (z.certified() && z.radius() != 0.0) {
    const double y = rad::add(z.im().abs_upper(), z.radius());
    r = rad::mul(z.radius(), rad::up(rad::up(std::cosh(y))));
  }
  return make(std::move(re), std::move(im), r, z.certified(), 4);
}

void require_real(const CertifiedComplex& z, const char* fn) {
  if (!z.im().is_zero()) throw DomainError(std::string(fn) + " is only provided on real discs");
}

}  // namespace

CertifiedComplex cos(const CertifiedComplex& z) { return sin_or_cos(z, false); }
CertifiedComplex sin(const CertifiedComplex& z) { return sin_or_cos(z, true); }

CertifiedComplex acos(const CertifiedComplex& z) {
  require_real(z, "acos");
  const bool cert = z.certified();
  const double x = z.re().abs_upper();
  const double r0 = cert ? z.radius() : 0.0;
  if (r0 == 0.0) {
    if (mpfr_cmp_si(z.re().ptr(), 1) > 0 || mpfr_cmp_si(z.re().ptr(), -1) < 0)
      throw DomainError("acos argument outside [-1, 1]");
  } else if (rad::add(x, r0) >= 1.0) {
    throw DomainError("acos: disc reaches the branch points +-1");
  }
  const mpfr_prec_t p = z.prec();
  Real re(p);
  mpfr_acos(re.ptr(), z.re().ptr(), MPFR_RNDN);
  double r = 0.0;
  if (r0 != 0.0) {
    const double a = rad::down(1.0 - r0);
    const double d = rad::down(rad::down(a * a) - rad::mul(x, x));
    if (d <= 0.0) throw DomainError("acos: disc too close to +-1");
    r = rad::div(r0, rad::down(std::sqrt(d)));
  }
  return make(std::move(re), Real(p), r, cert, 1);
}

CertifiedComplex atan(const CertifiedComplex& z) {
  require_real(z, "atan");
  const bool cert = z.certified();
  const double r0 = cert ? z.radius() : 0.0;
  if (r0 >= 1.0) throw DomainError("atan: disc reaches the branch points +-i");
  const mpfr_prec_t p = z.prec();
  Real re(p);
  mpfr_atan(re.ptr(), z.re().ptr(), MPFR_RNDN);
  double r = 0.0;
  if (r0 != 0.0) {
    const double x = z.re().abs_lower();
    const double d = rad::down(rad::down(std::sqrt(rad::down(1.0 + rad::down(x * x)))) - r0);
    r = rad::div(r0, rad::down(d * d));
  }
  return make(std::move(re), Real(p), r, cert, 1);
}

CertifiedComplex abs(const CertifiedComplex& z) {
  const mpfr_prec_t p = z.prec();
  Real re(p);
  mpfr_hypot(re.ptr(), z.re().ptr(), z.im().ptr(), MPFR_RNDN);
  return make(std::move(re), Real(p), z.radius(), z.certified(), 1);
}

CertifiedComplex pow(const CertifiedComplex& z, const CertifiedComplex& p) {
  return exp(p * log(z));
}

CertifiedComplex pow(const CertifiedComplex& z, long n) {
  if (n < 0) return CertifiedComplex(1) / pow(z, -n);
  CertifiedComplex result(1);
  CertifiedComplex base(z);
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

AbsInterval disc_abs_interval(const CertifiedComplex& z) {
  const double hi = rad::add(z.center_abs_upper(), z.radius());
  const double lo = std::max(0.0, rad::down(z.center_abs_lower() - z.radius()));
  return {lo, hi};
}

}  // namespace lawson
