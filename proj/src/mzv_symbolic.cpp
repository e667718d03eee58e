#include "lawson/mzv_symbolic.hpp"

#include <sstream>

#include "lawson/errors.hpp"
#include "lawson/omega.hpp"

namespace lawson {

/* ----------------------------------------------------------- monomials */

Monomial Monomial::pi(int e) {
  Monomial m;
  m.exps = {e};
  m.trim();
  return m;
}

Monomial Monomial::log2(int e) {
  Monomial m;
  m.exps = {0, e};
  m.trim();
  return m;
}

Monomial Monomial::zeta(int odd_k, int e) {
  if (odd_k < 3 || odd_k % 2 == 0) throw DomainError("zeta symbol needs an odd argument >= 3");
  Monomial m;
  m.exps.assign(static_cast<std::size_t>((odd_k + 1) / 2 + 1), 0);
  m.exps.back() = e;
  m.trim();
  return m;
}

void Monomial::trim() {
  while (!exps.empty() && exps.back() == 0) exps.pop_back();
}

int Monomial::weight() const {
  int w = 0;
  for (std::size_t k = 0; k < exps.size(); ++k) w += exps[k] * (k < 2 ? 1 : static_cast<int>(2 * k - 1));
  return w;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial m;
  m.exps.assign(std::max(exps.size(), o.exps.size()), 0);
  for (std::size_t k = 0; k < exps.size(); ++k) m.exps[k] += exps[k];
  for (std::size_t k = 0; k < o.exps.size(); ++k) m.exps[k] += o.exps[k];
  m.trim();
  return m;
}

std::string Monomial::to_string() const {
  std::string s;
  for (std::size_t k = 0; k < exps.size(); ++k) {
    if (exps[k] == 0) continue;
    if (!s.empty()) s += '*';
    s += k == 0 ? "pi" : k == 1 ? "log(2)" : "zeta(" + std::to_string(2 * k - 1) + ")";
    if (exps[k] != 1) s += "^" + std::to_string(exps[k]);
  }
  return s.empty() ? "1" : s;
}

/* ------------------------------------------------------- expressions */

ConstExpr::ConstExpr(long v) {
  if (v != 0) add_term(Monomial::one(), v, 0);
}

ConstExpr::ConstExpr(const mpq_class& re, const mpq_class& im, const Monomial& m) { add_term(m, re, im); }

void ConstExpr::add_term(const Monomial& m, const mpq_class& re, const mpq_class& im) {
  if (re == 0 && im == 0) return;
  if (!terms_.empty() && terms_.begin()->first.weight() != m.weight())
    throw DomainError("adding constants of different weight");
  GaussianRational& c = terms_[m];
  c.re += re;
  c.im += im;
  if (c.is_zero()) terms_.erase(m);
}

int ConstExpr::weight() const { return terms_.empty() ? -1 : terms_.begin()->first.weight(); }

GaussianRational ConstExpr::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? GaussianRational{} : it->second;
}

ConstExpr& ConstExpr::operator+=(const ConstExpr& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c.re, c.im);
  return *this;
}

ConstExpr& ConstExpr::operator-=(const ConstExpr& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c.re, -c.im);
  return *this;
}

ConstExpr& ConstExpr::operator*=(const ConstExpr& o) {
  ConstExpr r;
  for (const auto& [m1, a] : terms_)
    for (const auto& [m2, b] : o.terms_) r.add_term(m1 * m2, a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  *this = std::move(r);
  return *this;
}

ConstExpr ConstExpr::operator-() const {
  ConstExpr r;
  r -= *this;
  return r;
}

bool ConstExpr::operator==(const ConstExpr& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (auto a = terms_.begin(), b = o.terms_.begin(); a != terms_.end(); ++a, ++b)
    if (!(a->first == b->first) || a->second.re != b->second.re || a->second.im != b->second.im) return false;
  return true;
}

std::string ConstExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string coef;
    bool negative = false;
    if (c.im == 0) {
      negative = c.re < 0;
      coef = mpq_class(abs(c.re)).get_str();
    } else if (c.re == 0) {
      negative = c.im < 0;
      coef = mpq_class(abs(c.im)).get_str() + "*i";
      if (abs(c.im) == 1) coef = "i";
    } else {
      coef = "(" + c.re.get_str() + (c.im < 0 ? "-" : "+") + mpq_class(abs(c.im)).get_str() + "*i)";
    }
    os << (first ? (negative ? "-" : "") : (negative ? " - " : " + "));
    const std::string ms = m.to_string();
    if (ms == "1") os << coef;
    else if (coef == "1") os << ms;
    else os << coef << '*' << ms;
    first = false;
  }
  return os.str();
}

/* --------------------------------------------------------- the table */

ConstExpr closed_form(const MzvIndex& idx) {
  const ConstExpr l = ConstExpr::log2(), p = ConstExpr::pi(), z = ConstExpr::zeta(3);
  const ConstExpr p2 = p * p;
  auto q = [](long a, long b) { return ConstExpr::rational(a, b); };
  const std::string key = idx.entries.empty() ? "" : idx.to_string();
  if (key.empty()) return 1;
  if (key == "1b") return -l;
  if (key == "2") return q(1, 6) * p2;
  if (key == "2b") return q(-1, 12) * p2;
  if (key == "3") return z;
  if (key == "3b") return q(-3, 4) * z;
  if (key == "1b,1b") return q(1, 2) * l * l - q(1, 12) * p2;
  if (key == "1b,1b,1b") return q(-1, 6) * l * l * l + q(1, 12) * p2 * l - q(1, 4) * z;
  if (key == "1b,2") return q(-1, 4) * p2 * l + z;
  if (key == "2,1b") return q(1, 12) * p2 * l - q(1, 4) * z;
  if (key == "1,2b") return q(1, 8) * z;
  if (key == "1b,2b") return q(1, 4) * p2 * l - q(13, 8) * z;
  if (key == "2b,1b") return q(-1, 6) * p2 * l + q(5, 8) * z;
  throw UnknownIndex("no closed form for zeta(" + key + ")");
}

ConstExpr omega_closed_form(const std::vector<int>& word) {
  auto [sign, idx] = omega_to_mzv(word);
  ConstExpr v = ConstExpr::imag_unit() * ConstExpr::pi() * closed_form(idx);
  return sign < 0 ? -v : v;
}

ConstExpr alpha3_exact() {
  auto om = [](const char* w) { return omega_closed_form(parse_word(w)); };
  const ConstExpr i = ConstExpr::imag_unit();
  const ConstExpr pinv(1, 0, Monomial::pi(-1));
  const ConstExpr o21 = om("2,1");
  ConstExpr a = -(i * pinv * pinv * pinv * o21 * o21 * o21);
  a += ConstExpr::rational(1, 2) * pinv * pinv * o21 * (om("2,2,3") - 6 * om("3,1,1") - 3 * om("3,3,3"));
  a += ConstExpr::rational(1, 2) * i * pinv *
       (6 * om("2,1,1,1") + om("2,2,2,1") - om("3,1,2,3") + om("2,1,3,3") + om("3,3,2,1"));
  return a;
}

CertifiedComplex numeric(const ConstExpr& e, Precision precision) {
  const mpfr_prec_t bits = precision.bits() + 16;
  CertifiedComplex sum;
  std::map<std::size_t, CertifiedComplex> base;
  auto symbol = [&](std::size_t k) -> const CertifiedComplex& {
    auto it = base.find(k);
    if (it != base.end()) return it->second;
    CertifiedComplex v = k == 0   ? CertifiedComplex::pi(bits)
                         : k == 1 ? CertifiedComplex::log2(bits)
                                  : CertifiedComplex::zeta_ui(2 * k - 1, bits);
    return base.emplace(k, std::move(v)).first->second;
  };
  auto rat = [&](const mpq_class& r) {
    Real out(bits);
    mpfr_set_q(out.ptr(), r.get_mpq_t(), MPFR_RNDN);
    CertifiedComplex z(std::move(out), Real(bits));
    // one ulp for the rounding of the quotient
    return z.inflated(z.re().ulp());
  };
  for (const auto& [m, c] : e.terms()) {
    CertifiedComplex t = c.im == 0 ? rat(c.re) : rat(c.re) + rat(c.im).mul_i();
    for (std::size_t k = 0; k < m.exps.size(); ++k) {
      const int x = m.exps[k];
      if (x == 0) continue;
      CertifiedComplex p = pow(symbol(k), static_cast<long>(std::abs(x)));
      t = x > 0 ? t * p : t / p;
    }
    sum += t;
  }
  return sum.with_certified(precision.certified);
}

}  // namespace lawson
