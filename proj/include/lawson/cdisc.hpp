// Complex disc arithmetic on top of MPFR.
//
// A CertifiedComplex is a center (two MPFR reals) together with a radius
// stored as a double.  Every operation returns a disc that contains all
// results obtainable from points of the operand discs; the rounding error of
// the center computation is folded into the radius.  Radii are always rounded
// towards +infinity.
//
// Precision is a property of each value: binary operations work at the larger
// of the two operand precisions, so there is no global precision state.
#pragma once

#include <mpfr.h>

#include <cstdint>
#include <string>
#include <utility>

#include "lawson/errors.hpp"

namespace lawson {

/// Working precision.  `digits` is in decimal digits; `certified == false`
/// turns radius tracking off (used only in optimizer inner loops).
struct Precision {
  int digits = 60;
  bool certified = true;

  /// MPFR precision in bits, with a fixed guard of 32 bits.
  mpfr_prec_t bits() const;

  static Precision digits_of(int d) { return Precision{d, true}; }
};

/// Minimal RAII wrapper around mpfr_t.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 64);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  static Real from_long(long v, mpfr_prec_t prec = 64);
  static Real from_string(const std::string& s, mpfr_prec_t prec);

  mpfr_ptr ptr() { return v_; }
  mpfr_srcptr ptr() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Upper bound for |x| as a double.
  double abs_upper() const;
  /// Lower bound for |x| as a double.
  double abs_lower() const;
  /// Size of one unit in the last place of x (0 for x = 0).
  double ulp() const;

  /// Scientific notation with `digits` significant digits.
  std::string to_string(int digits) const;
  /// Exact hexadecimal rendering, parseable by from_hex.
  std::string to_hex() const;
  static Real from_hex(const std::string& s, mpfr_prec_t prec);

  void swap(Real& other) noexcept { mpfr_swap(v_, other.v_); }

 private:
  mpfr_t v_;
};

/// Outward-rounded double helpers for radii.
namespace rad {
double up(double x);
double down(double x);
double add(double a, double b);
double mul(double a, double b);
double div(double a, double b);
}  // namespace rad

class CertifiedComplex {
 public:
  /// Exact zero.
  CertifiedComplex();
  /// Exact integer.
  CertifiedComplex(long re);  // NOLINT(google-explicit-constructor)
  CertifiedComplex(long re, long im);
  CertifiedComplex(Real re, Real im, double radius = 0.0, bool certified = true);

  static CertifiedComplex from_double(double re, double im, mpfr_prec_t prec);
  static CertifiedComplex from_string(const std::string& re, const std::string& im, mpfr_prec_t prec);
  static CertifiedComplex rational(long p, long q, mpfr_prec_t prec);
  static CertifiedComplex pi(mpfr_prec_t prec);
  static CertifiedComplex log2(mpfr_prec_t prec);
  static CertifiedComplex zeta_ui(unsigned long k, mpfr_prec_t prec);
  static CertifiedComplex imag_unit() { return CertifiedComplex(0, 1); }

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  double radius() const { return rad_; }
  mpfr_prec_t prec() const;
  bool certified() const { return cert_; }

  /// Same center, radius enlarged by `extra` (outward rounded).
  CertifiedComplex inflated(double extra) const;
  CertifiedComplex with_certified(bool certified) const;
  /// Round the center to `prec` bits, accounting for the rounding error.
  CertifiedComplex rounded_to(mpfr_prec_t prec) const;

  bool is_exact_zero() const { return rad_ == 0.0 && re_.is_zero() && im_.is_zero(); }
  bool contains_zero() const;
  /// True when the disc of `other` lies inside this disc.
  bool contains(const CertifiedComplex& other) const;
  bool overlaps(const CertifiedComplex& other) const;
  /// Upper / lower bounds for the modulus of the center.
  double center_abs_upper() const;
  double center_abs_lower() const;

  double re_double() const { return re_.to_double(); }
  double im_double() const { return im_.to_double(); }

  CertifiedComplex conj() const;
  CertifiedComplex real_part() const;
  CertifiedComplex imag_part() const;  // Im(z) as a real disc
  CertifiedComplex mul_i() const;      // i*z, exact
  CertifiedComplex mul_2exp(long e) const;
  CertifiedComplex operator-() const;

  CertifiedComplex& operator+=(const CertifiedComplex& b);
  CertifiedComplex& operator-=(const CertifiedComplex& b);
  CertifiedComplex& operator*=(const CertifiedComplex& b);
  CertifiedComplex& operator/=(const CertifiedComplex& b);
  CertifiedComplex& operator*=(long k);
  CertifiedComplex& operator/=(long k);
  /// this += a*b
  CertifiedComplex& addmul(const CertifiedComplex& a, const CertifiedComplex& b);

  friend CertifiedComplex operator+(CertifiedComplex a, const CertifiedComplex& b) { return a += b; }
  friend CertifiedComplex operator-(CertifiedComplex a, const CertifiedComplex& b) { return a -= b; }
  friend CertifiedComplex operator*(const CertifiedComplex& a, const CertifiedComplex& b);
  friend CertifiedComplex operator/(const CertifiedComplex& a, const CertifiedComplex& b);
  friend CertifiedComplex operator*(CertifiedComplex a, long k) { return a *= k; }
  friend CertifiedComplex operator*(long k, CertifiedComplex a) { return a *= k; }
  friend CertifiedComplex operator/(CertifiedComplex a, long k) { return a /= k; }

  /// "re_center im_center radius" with `digits` significant digits.
  std::string to_string(int digits = 20) const;

 private:
  void add_rounding(int ternary_re, int ternary_im, int ulps = 1);
  void finish();

  Real re_;
  Real im_;
  double rad_ = 0.0;
  bool cert_ = true;
};

enum class LogBranch {
  principal,      // cut along (-inf, 0], argument in (-pi, pi]
  positive_real,  // cut along [0, +inf), argument in (0, 2pi)
};

CertifiedComplex exp(const CertifiedComplex& z);
CertifiedComplex log(const CertifiedComplex& z, LogBranch branch = LogBranch::principal);
CertifiedComplex sqrt(const CertifiedComplex& z);
CertifiedComplex cos(const CertifiedComplex& z);
CertifiedComplex sin(const CertifiedComplex& z);
/// Real discs only (imaginary center must be exactly 0).
CertifiedComplex acos(const CertifiedComplex& z);
CertifiedComplex atan(const CertifiedComplex& z);
CertifiedComplex abs(const CertifiedComplex& z);
/// z^p = exp(p log z) on the principal branch.
CertifiedComplex pow(const CertifiedComplex& z, const CertifiedComplex& p);
CertifiedComplex pow(const CertifiedComplex& z, long n);

struct AbsInterval {
  double lo;
  double hi;
};

/// (max(0, |c| - r), |c| + r), outward rounded.
AbsInterval disc_abs_interval(const CertifiedComplex& z);

}  // namespace lawson
