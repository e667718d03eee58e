// Laurent polynomials in the loop parameter lambda.
//
// BasicLaurent<T> stores coefficients densely over [min_deg, max_deg].  The
// coefficient type only needs +, -, * and a value-initialised zero, so the
// same code serves certified discs and exact symbolic constants.
#pragma once

#include <algorithm>
#include <cstdlib>
#include <utility>
#include <vector>

#include "lawson/cdisc.hpp"

namespace lawson {

inline bool is_exact_zero(const CertifiedComplex& z) { return z.is_exact_zero(); }

enum class Projection {
  even,
  odd,
  pos,       // degrees > 0
  nonneg,    // degrees >= 0
  neg,       // degrees < 0
  constant,  // degree 0
};

template <class T>
class BasicLaurent {
 public:
  BasicLaurent() = default;
  explicit BasicLaurent(T c) : lo_(0), c_{std::move(c)} { trim(); }

  static BasicLaurent monomial(int deg, T c) {
    BasicLaurent p;
    p.lo_ = deg;
    p.c_.push_back(std::move(c));
    p.trim();
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  int min_deg() const { return c_.empty() ? 0 : lo_; }
  int max_deg() const { return c_.empty() ? -1 : lo_ + static_cast<int>(c_.size()) - 1; }
  std::size_t size() const { return c_.size(); }

  T coeff(int d) const {
    if (c_.empty() || d < lo_ || d > max_deg()) return T{};
    return c_[static_cast<std::size_t>(d - lo_)];
  }

  /// Mutable access; extends the support if needed.
  T& at(int d) {
    if (c_.empty()) {
      lo_ = d;
      c_.emplace_back();
    } else if (d < lo_) {
      c_.insert(c_.begin(), static_cast<std::size_t>(lo_ - d), T{});
      lo_ = d;
    } else if (d > max_deg()) {
      c_.resize(static_cast<std::size_t>(d - lo_ + 1));
    }
    return c_[static_cast<std::size_t>(d - lo_)];
  }

  /// Drop exactly-zero coefficients at both ends.
  BasicLaurent& trim() {
    std::size_t first = 0;
    while (first < c_.size() && is_exact_zero(c_[first])) ++first;
    if (first == c_.size()) {
      c_.clear();
      lo_ = 0;
      return *this;
    }
    std::size_t last = c_.size();
    while (last > first && is_exact_zero(c_[last - 1])) --last;
    if (first > 0 || last < c_.size()) {
      c_ = std::vector<T>(std::make_move_iterator(c_.begin() + static_cast<long>(first)),
                          std::make_move_iterator(c_.begin() + static_cast<long>(last)));
      lo_ += static_cast<int>(first);
    }
    return *this;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < c_.size(); ++k) f(lo_ + static_cast<int>(k), c_[k]);
  }

  BasicLaurent& operator+=(const BasicLaurent& q) {
    if (q.is_zero()) return *this;
    at(q.min_deg());
    at(q.max_deg());
    for (std::size_t k = 0; k < q.c_.size(); ++k) c_[static_cast<std::size_t>(q.lo_ - lo_) + k] += q.c_[k];
    return trim();
  }

  BasicLaurent& operator-=(const BasicLaurent& q) {
    if (q.is_zero()) return *this;
    at(q.min_deg());
    at(q.max_deg());
    for (std::size_t k = 0; k < q.c_.size(); ++k) c_[static_cast<std::size_t>(q.lo_ - lo_) + k] -= q.c_[k];
    return trim();
  }

  BasicLaurent operator-() const {
    BasicLaurent r(*this);
    for (auto& c : r.c_) c = -c;
    return r;
  }

  BasicLaurent& operator*=(const T& s) {
    for (auto& c : c_) c = c * s;
    return trim();
  }

  friend BasicLaurent operator+(BasicLaurent a, const BasicLaurent& b) { return a += b; }
  friend BasicLaurent operator-(BasicLaurent a, const BasicLaurent& b) { return a -= b; }
  friend BasicLaurent operator*(BasicLaurent a, const T& s) { return a *= s; }
  friend BasicLaurent operator*(const T& s, BasicLaurent a) { return a *= s; }

  friend BasicLaurent operator*(const BasicLaurent& a, const BasicLaurent& b) {
    BasicLaurent r;
    if (a.is_zero() || b.is_zero()) return r;
    r.lo_ = a.lo_ + b.lo_;
    r.c_.resize(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (is_exact_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        if (is_exact_zero(b.c_[j])) continue;
        r.c_[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return r.trim();
  }

  BasicLaurent& operator*=(const BasicLaurent& b) { return *this = *this * b; }

  /// Multiply by lambda^k.
  BasicLaurent shifted(int k) const {
    BasicLaurent r(*this);
    if (!r.is_zero()) r.lo_ += k;
    return r;
  }

  /// lambda^k -> lambda^-k, coefficients unchanged (the holomorphic star).
  BasicLaurent star() const {
    BasicLaurent r;
    if (is_zero()) return r;
    r.lo_ = -max_deg();
    r.c_.assign(c_.rbegin(), c_.rend());
    return r;
  }

  BasicLaurent project(Projection which) const {
    BasicLaurent r;
    for_each([&](int d, const T& c) {
      bool keep = false;
      switch (which) {
        case Projection::even: keep = (d % 2 == 0); break;
        case Projection::odd: keep = (d % 2 != 0); break;
        case Projection::pos: keep = d > 0; break;
        case Projection::nonneg: keep = d >= 0; break;
        case Projection::neg: keep = d < 0; break;
        case Projection::constant: keep = d == 0; break;
      }
      if (keep) r.at(d) = c;
    });
    return r.trim();
  }

  /// p(-lambda)
  BasicLaurent reflected() const {
    BasicLaurent r(*this);
    for_each([&](int d, const T&) {
      if (d % 2 != 0) {
        T& c = r.at(d);
        c = -c;
      }
    });
    return r;
  }

  /// Evaluate at lambda0 given also its inverse (only used for negative degrees).
  T eval(const T& x, const T& xinv) const {
    if (is_zero()) return T{};
    // Horner over nonnegative and negative parts separately.
    T pos{};
    for (int d = max_deg(); d >= std::max(0, lo_); --d) pos = pos * x + coeff(d);
    if (lo_ > 0) {
      T xp = x;
      T acc = pos;
      for (int k = 0; k < lo_; ++k) acc = acc * xp;
      return acc;
    }
    T neg{};
    for (int d = lo_; d <= -1; ++d) neg = (neg + coeff(d)) * xinv;
    return pos + neg;
  }

 private:
  int lo_ = 0;
  std::vector<T> c_;
};

using LaurentPoly = BasicLaurent<CertifiedComplex>;

/// Euclidean division by prod (lambda - mu_i): p = prod(lambda - mu_i) q + r.
struct DivisionResult {
  LaurentPoly q;
  LaurentPoly r;
};

/// Requires p to have no negative-degree coefficients.
DivisionResult divide_by_roots(const LaurentPoly& p, const std::vector<CertifiedComplex>& roots);

/// Evaluate p at lambda0; throws PoleAtZero when p has negative degrees and
/// the disc lambda0 contains 0.
CertifiedComplex eval(const LaurentPoly& p, const CertifiedComplex& lambda0);

/// Enclosure of sum |p_k| rho^|k|.
AbsInterval rho_norm(const LaurentPoly& p, double rho);

/// u*(lambda) = conj(u(1 / conj(lambda))): reflects degrees and conjugates.
LaurentPoly conj_star(const LaurentPoly& p);

/// Largest radius among the coefficients.
double max_radius(const LaurentPoly& p);

}  // namespace lawson
