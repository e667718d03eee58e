// Taylor expansion of the DPW potential parameters in the neck size t.
//
// x_j(t) = sum_n x_{j,n} t^n   (Laurent polynomials in lambda)
// theta(t) = sum_n theta_n t^n,  K(t) = sum_n K_n t^n
//
// The coefficients are determined order by order from the closing
// conditions p(t) = q(t) = 0 at lambda = e^{i theta(t)} and the requirement
// that x_1^2 + x_2^2 + x_3^2 be constant in lambda.
#pragma once

#include <map>
#include <memory>
#include <tuple>
#include <utility>
#include <vector>

#include "lawson/cdisc.hpp"
#include "lawson/omega.hpp"
#include "lawson/wiener.hpp"

namespace lawson {

/// Truncated power series c_0 + c_1 v + ... + c_N v^N.
struct ScalarSeries {
  enum class Var { t, s };

  std::vector<CertifiedComplex> c;
  Var var = Var::t;

  ScalarSeries() = default;
  explicit ScalarSeries(std::vector<CertifiedComplex> coeffs, Var v = Var::t) : c(std::move(coeffs)), var(v) {}
  /// The constant `a` to order N.
  static ScalarSeries constant(const CertifiedComplex& a, int N, Var v = Var::t);
  /// The variable itself to order N.
  static ScalarSeries identity(int N, Var v = Var::t);

  int order() const { return static_cast<int>(c.size()) - 1; }
  CertifiedComplex coeff(int k) const { return k >= 0 && k <= order() ? c[static_cast<std::size_t>(k)] : CertifiedComplex(); }
  ScalarSeries truncated(int N) const;
};

// Arithmetic truncates to the smaller of the two orders.
ScalarSeries operator+(const ScalarSeries& a, const ScalarSeries& b);
ScalarSeries operator-(const ScalarSeries& a, const ScalarSeries& b);
ScalarSeries operator*(const ScalarSeries& a, const ScalarSeries& b);
ScalarSeries operator*(const ScalarSeries& a, const CertifiedComplex& s);

ScalarSeries inverse(const ScalarSeries& a);  // c_0 must not contain 0
ScalarSeries sqrt(const ScalarSeries& a);     // principal branch at c_0
ScalarSeries exp(const ScalarSeries& a);
ScalarSeries sin(const ScalarSeries& a);
ScalarSeries cos(const ScalarSeries& a);
ScalarSeries tan(const ScalarSeries& a);
/// f(g(v)); g_0 must be exactly 0.
ScalarSeries compose(const ScalarSeries& f, const ScalarSeries& g);
/// Compositional inverse of g with g_0 = 0 and g_1 invertible.
ScalarSeries reversion(const ScalarSeries& g);

/// t as a series in s, where s = t sqrt(K(t)) and K_0 = 1.
ScalarSeries s_to_t(const ScalarSeries& K);
/// Re-expand a series in t as a series in s = t sqrt(K(t)).
ScalarSeries reparametrize(const ScalarSeries& series_in_t, const ScalarSeries& K);

enum class SeriesMode {
  general,  // any phi in (0, pi/2)
  minimal,  // phi = pi/4, using the symmetries of the minimal surface
};

struct SeriesOptions {
  Precision precision{};
  SeriesMode mode = SeriesMode::general;
  OmegaRoute route = OmegaRoute::automatic;
  MzvCache* cache = nullptr;
  int jobs = 1;
};

class ParamSeries {
 public:
  ParamSeries(Angle phi, SeriesOptions options);
  ~ParamSeries();
  ParamSeries(ParamSeries&&) noexcept;

  const Angle& phi() const { return phi_; }
  SeriesMode mode() const { return opt_.mode; }
  const SeriesOptions& options() const { return opt_; }
  /// Highest order computed so far.
  int order() const { return static_cast<int>(theta_.size()) - 1; }

  /// Compute order n; orders below n must be present.
  void step(int n);
  void extend_to(int N);

  /// x_{j,n} for j = 1, 2, 3.
  const LaurentPoly& x(int j, int n) const;
  const CertifiedComplex& theta(int n) const;
  const CertifiedComplex& K(int n) const;

  /// Coefficient of t^n in the part of p/t (endpoint 1) or q/t (endpoint i)
  /// coming from words of length >= 2.  Needs orders < n.
  LaurentPoly phat_lower(int n, Endpoint endpoint);

  /// theta(t) - pi/2, K(t) and the constant terms x_j^0(t) as series in t.
  ScalarSeries theta_shift_series() const;
  ScalarSeries K_series() const;
  ScalarSeries x0_series(int j) const;

  OmegaTable& omegas() { return *omegas_; }

 private:
  using Counts = std::tuple<int, int, int>;
  const std::map<Counts, CertifiedComplex>& word_sums(int L, Endpoint endpoint);
  void check_invariants(int n);

  Angle phi_;
  SeriesOptions opt_;
  mpfr_prec_t bits_;
  CertifiedComplex cphi_, sphi_, pi_;
  std::unique_ptr<OmegaTable> omegas_;
  std::vector<LaurentPoly> x_[3];
  std::vector<CertifiedComplex> theta_, K_;
  std::map<int, LaurentPoly> plower_, qlower_;
  std::map<int, std::map<Counts, CertifiedComplex>> sums_[2];
};

/// alpha_k with Area = 8 pi (1 - sum alpha_k s^k), s = 1/(2g+2); state must reach order N.
ScalarSeries area_coefficients(const ParamSeries& state, int N);

struct WillmoreMeanCurvature {
  ScalarSeries W;  // Willmore = 8 pi (1 - sum W_k s^k)
  ScalarSeries H;  // mean curvature = sum H_k s^k
};
WillmoreMeanCurvature willmore_mean_curvature_coefficients(const ParamSeries& state, int N);

}  // namespace lawson
