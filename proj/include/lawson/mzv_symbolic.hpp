// Exact constants: Gaussian-rational combinations of monomials in
// pi, log 2 and odd zeta values, graded by weight.
#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "lawson/cdisc.hpp"
#include "lawson/mpl.hpp"

namespace lawson {

/// Exponent vector over the symbols pi, log 2, zeta(3), zeta(5), ...
/// Exponents of pi may be negative.
struct Monomial {
  std::vector<int> exps;  // exps[0]: pi, exps[1]: log 2, exps[k >= 2]: zeta(2k - 1)

  static Monomial one() { return {}; }
  static Monomial pi(int e = 1);
  static Monomial log2(int e = 1);
  static Monomial zeta(int odd_k, int e = 1);

  int weight() const;
  Monomial operator*(const Monomial& o) const;
  bool operator<(const Monomial& o) const { return exps < o.exps; }
  bool operator==(const Monomial& o) const { return exps == o.exps; }
  std::string to_string() const;  // "pi^2*log(2)", "1" for the empty monomial

 private:
  void trim();
};

struct GaussianRational {
  mpq_class re, im;
  bool is_zero() const { return re == 0 && im == 0; }
};

class ConstExpr {
 public:
  ConstExpr() = default;
  ConstExpr(long v);  // NOLINT(google-explicit-constructor)
  ConstExpr(const mpq_class& re, const mpq_class& im, const Monomial& m);

  static ConstExpr rational(long p, long q) { return ConstExpr(mpq_class(p, q), 0, Monomial::one()); }
  static ConstExpr imag_unit() { return ConstExpr(0, 1, Monomial::one()); }
  static ConstExpr pi() { return ConstExpr(1, 0, Monomial::pi()); }
  static ConstExpr log2() { return ConstExpr(1, 0, Monomial::log2()); }
  static ConstExpr zeta(int odd_k) { return ConstExpr(1, 0, Monomial::zeta(odd_k)); }

  bool is_zero() const { return terms_.empty(); }
  /// Common weight of all monomials; -1 for the zero expression.
  int weight() const;
  const std::map<Monomial, GaussianRational>& terms() const { return terms_; }
  GaussianRational coeff(const Monomial& m) const;

  ConstExpr& operator+=(const ConstExpr& o);
  ConstExpr& operator-=(const ConstExpr& o);
  ConstExpr& operator*=(const ConstExpr& o);
  ConstExpr operator-() const;
  friend ConstExpr operator+(ConstExpr a, const ConstExpr& b) { return a += b; }
  friend ConstExpr operator-(ConstExpr a, const ConstExpr& b) { return a -= b; }
  friend ConstExpr operator*(ConstExpr a, const ConstExpr& b) { return a *= b; }
  bool operator==(const ConstExpr& o) const;

  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const mpq_class& re, const mpq_class& im);
  std::map<Monomial, GaussianRational> terms_;
};

/// Closed forms of the alternating zeta values of weight <= 3 (and the
/// empty index); throws UnknownIndex otherwise.
ConstExpr closed_form(const MzvIndex& idx);

/// Omega_w at phi = pi/4 for an endpoint-1 walk whose zeta value is tabulated.
ConstExpr omega_closed_form(const std::vector<int>& word);

/// alpha_3 from the weight <= 4 Omega closed forms; equals 9/4 zeta(3).
ConstExpr alpha3_exact();

CertifiedComplex numeric(const ConstExpr& e, Precision precision);

}  // namespace lawson
