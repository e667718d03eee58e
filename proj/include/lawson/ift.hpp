// Quantitative implicit function theorem at phi = pi/4.
//
// The potential parameters are written as
//
//   x1 = xbar1 + i lambda u1
//   x2 = xbar2 - u2 + lambda u3
//   x3 = xbar3 + u2 + lambda u3
//
// (optionally plus the Taylor terms sum_{k<=N} x_{j,k} t^k and the
// quadratic corrections in t u1, t u3).  The closing conditions become a
// fixed point problem -G(t, u) = u on the box ||u_j||_rho <= R_j; bounding
// G and its Lipschitz constant on |t| <= T gives a disc of convergence for
// the expansion in t and hence a genus above which the area series converges.
#pragma once

#include <array>
#include <map>
#include <memory>
#include <vector>

#include "lawson/area.hpp"
#include "lawson/cdisc.hpp"
#include "lawson/mpl.hpp"
#include "lawson/wiener.hpp"

namespace lawson {

struct IftSetup {
  int n = 1;               // words of length <= n are expanded exactly
  int N = 0;               // Taylor corrections x_{j,k}, k <= N (N < n)
  bool quadratic = false;  // add the t u1, t u3 corrections to x2, x3
};

struct IftParams {
  double T = 0.0;
  std::array<double, 3> R{};
  std::array<double, 3> varrho{1.0, 1.0, 1.0};
  double rho = 2.0;
  double kappa = 0.99999;
};

struct GronwallConstants {
  std::array<double, 3> c{};  // bounds for ||x_j(u)||_rho
  double C0 = 0, C1 = 0, C2 = 0, C3 = 0;
};

struct IftConstants {
  std::array<double, 3> C_G{}, C_Lip{};
  GronwallConstants gronwall;
  double C_K = 0.0;
  double T_prime = 0.0;
  double genus = 0.0;
};

/// fast: plain double arithmetic (optimizer inner loop);
/// certified: every operation rounded outwards, constants from MPFR enclosures.
enum class EvalMode { fast, certified };

/// grouped: the cancellation-aware bounds; naive: triangle inequality per term.
enum class Grouping { grouped, naive };

struct IftModelOptions {
  Precision precision{30, true};
  MzvCache* cache = nullptr;
  int jobs = 1;
};

/// Exponents of (t, u1, u2, u3).
using Exponents = std::array<int, 4>;
using MultiPoly = std::map<Exponents, LaurentPoly>;

/// sum |c_d| rho^|d|, as upper bounds collected by |d|.
struct NormPoly {
  std::vector<double> m;
  double eval(double rho, EvalMode mode) const;
};

class IftModel {
 public:
  explicit IftModel(IftSetup setup, IftModelOptions options = {});
  ~IftModel();
  IftModel(IftModel&&) noexcept;

  const IftSetup& setup() const { return setup_; }

  /// x_j(t, u) as a polynomial in (t, u).
  const MultiPoly& x(int j) const;
  /// Polynomial part of phat(t, u) and K(t, u): coefficients a_{k,alpha}, b_{k,alpha}.
  const MultiPoly& a() const { return a_; }
  const MultiPoly& b() const { return b_; }
  LaurentPoly a(int k, const std::array<int, 3>& alpha) const;
  LaurentPoly b(int k, const std::array<int, 3>& alpha) const;

  /// Exact G_i^{k,0}: the three Laurent polynomials whose rho-norms (times
  /// T^k, 1/(2 pi), 1/(2 pi rho)) bound the alpha = 0 terms.
  std::array<LaurentPoly, 3> explicit_terms(int k) const;

  /// Upper bounds for ||G_i|| and Lip(G_i) on |t| <= T, u in B_R.
  std::array<double, 3> estimate_G(const IftParams& p, EvalMode mode = EvalMode::fast,
                                   Grouping grouping = Grouping::grouped) const;
  std::array<double, 3> estimate_Lip(const IftParams& p, EvalMode mode = EvalMode::fast,
                                     Grouping grouping = Grouping::grouped) const;
  GronwallConstants gronwall_constants(const IftParams& p, EvalMode mode = EvalMode::fast) const;
  /// Bound for |K(u)(1) - 1| over the box.
  double C_K(const IftParams& p, EvalMode mode = EvalMode::fast) const;
  /// All constants and genus(T, R).  Throws CKTooLarge when C_K >= 1.
  IftConstants genus_bound(const IftParams& p, EvalMode mode = EvalMode::fast) const;

  /// C_G_i <= kappa R_i and C_Lip_i <= kappa varrho_i for all i.
  static bool constraints_hold(const IftParams& p, const IftConstants& c, double kappa);

  /// |x^0_{2,k}| for k = 1..N (upper bounds).
  const std::vector<double>& x2_constant_terms() const { return x2_const_; }

  /// sum over walks w of length n+1 from e3 of 2^{n+1} |Omega_w(1)|, grouped by letter counts.
  const std::map<std::array<int, 3>, double>& remainder_weights() const { return rem_weights_; }

 private:
  struct Term;
  struct Data;
  void build_norm_data();

  IftSetup setup_;
  IftModelOptions opt_;
  mpfr_prec_t bits_;
  MultiPoly x_[3];
  MultiPoly a_, b_;
  std::vector<double> x2_const_;
  std::map<std::array<int, 3>, double> rem_weights_;
  std::unique_ptr<Data> data_;
};

struct IftOptimizeOptions {
  double kappa = 0.99999;
  int restarts = 20;
  int max_iterations = 20000;
  unsigned seed = 1;
};

struct IftResult {
  IftParams params;
  IftConstants constants;  // fast evaluation at params
  IftConstants certified;  // certified re-evaluation
  bool verified = false;   // certified constraints hold with kappa (1 + 1e-5)
};

/// Minimise genus(T, R) subject to the box and contraction constraints.
/// Throws NoFeasiblePoint when no strictly feasible point is found.
IftResult optimize_genus(const IftModel& model, const IftOptimizeOptions& options = {});

/// Relative slack allowed in the certified re-verification.
inline constexpr double kVerifySlack = 1e-5;

/// C_A and T' for the area tail bounds (uses the x^0_{2,k} of the model).
TailConfig cauchy_config(const IftModel& model, const IftParams& p, const IftConstants& c);

}  // namespace lawson
