// Area of the Lawson surfaces from the expansion
//
//   Area(xi_{1,g}) = 8 pi (1 - sum_k alpha_k s^k),   s = 1/(2g+2),
//
// with Cauchy-estimate bounds |alpha_k| <= C_A / T'^k for the omitted tail.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lawson/cdisc.hpp"
#include "lawson/series.hpp"

namespace lawson {

struct TailConfig {
  double C_A = 0.0;
  double T_prime = 0.0;
  int N_derivatives = 0;
};

struct AreaRow {
  int genus = 0;
  CertifiedComplex approx;
  std::optional<double> error_bound;  // absent when no tail configuration applies
  int K_used = 0;
};

/// Tabulated values of alpha_1, alpha_3, ..., alpha_21 (60 digits); even
/// coefficients are zero.  Used to fill orders beyond a computed series.
ScalarSeries reference_alphas(mpfr_prec_t prec, int order = 21);
/// Decimal strings of the tabulated odd coefficients, indexed by k.
const std::string& reference_alpha_string(int k);

/// Replace the coefficients of `computed` where it has them, keep the
/// tabulated values above its order.
ScalarSeries merge_alphas(const ScalarSeries& computed, const ScalarSeries& tabulated);

/// 8 pi (1 - sum_{k<=K} alpha_k s^k); K = -1 uses every coefficient.
CertifiedComplex area_approx(int g, const ScalarSeries& alphas, int K = -1);

/// 8 pi C_A (s/T')^m / (1 - (s/T')^2) with m the first odd index above K.
/// Throws SOutsideRadius when s >= T'.
double area_error_bound(int g, int K, const TailConfig& cfg);

std::vector<AreaRow> area_table(int gmin, int gmax, const ScalarSeries& alphas, int K,
                                const std::optional<TailConfig>& cfg);

struct MonotonicityResult {
  double bound = 0.0;  // upper bound for A'(s) on (0, T'')
  bool holds = false;
};

/// -alpha_1 + 7 |alpha_7| T''^6 + 8 C_A T''^7 / (T' - T'')^8, rounded upwards.
/// Requires alpha_3 > 0 and alpha_5 > 0 (certified) and T'' < T'.
MonotonicityResult monotonicity_certificate(const ScalarSeries& alphas, const TailConfig& cfg, double T2 = 0.05);

}  // namespace lawson
