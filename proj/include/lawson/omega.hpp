// Omega-values: iterated integrals of the three logarithmic forms
//
//   w_1 = eta_1 - eta_2 + eta_3 - eta_4,
//   w_2 = eta_1 - eta_2 - eta_3 + eta_4,
//   w_3 = eta_1 + eta_2 - eta_3 - eta_4,     eta_k = dz / (z - p_k),
//
// on the sphere punctured at p_1 = e^{i phi}, p_2 = -e^{-i phi},
// p_3 = -e^{i phi}, p_4 = e^{-i phi}, integrated from 0 to z = 1 or z = i.
#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "lawson/cdisc.hpp"
#include "lawson/mpl.hpp"

namespace lawson {

/// An angle of the form q*pi + s*x with q rational and x a decimal literal.
/// Keeping the exact part symbolic lets phi = pi/4 be recognised and the
/// complement pi/2 - phi be formed without loss.
class Angle {
 public:
  Angle() : pi_coeff_(1, 4) {}
  static Angle pi_fraction(long num, long den);
  static Angle decimal(const std::string& literal);
  /// Accepts "pi/4", "3pi/8", "3*pi/8", "pi" or a decimal number.
  static Angle parse(const std::string& text);

  CertifiedComplex value(mpfr_prec_t prec) const;
  double to_double() const;
  bool is_quarter_pi() const { return offset_.empty() && pi_coeff_ == mpq_class(1, 4); }
  /// pi/2 - phi
  Angle complement() const;
  std::string to_string() const;

  bool operator<(const Angle& o) const;
  bool operator==(const Angle& o) const {
    return pi_coeff_ == o.pi_coeff_ && offset_ == o.offset_ && offset_sign_ == o.offset_sign_;
  }

 private:
  mpq_class pi_coeff_;
  std::string offset_;  // empty: no decimal part
  int offset_sign_ = 1;
};

enum class Endpoint { one, i };

/// Vertices of the triangle graph are 1, 2, 3; edges e1-e2, e2-e3, e1-e3
/// carry labels 1, 2, 3.  Walks start at e3.
struct WalkCheck {
  bool valid = false;
  std::vector<int> trail;  // v_0 = 3, v_1, ..., v_n (empty when the word is not a walk)
};

/// Walk from e3 following the labels; `target` 0 accepts any end vertex.
WalkCheck walk_from_e3(const std::vector<int>& word, int target = 0);
/// Endpoint 1 words end at e1, endpoint i words at e2.
WalkCheck is_valid_word(const std::vector<int>& word, Endpoint endpoint);

/// All walks of the given length from e3 ending at `target` (0: anywhere),
/// in lexicographic order.
std::vector<std::vector<int>> walks_from_e3(int length, int target = 0);

std::string word_to_string(const std::vector<int>& word);  // "2,2,3"
std::vector<int> parse_word(const std::string& text);

/// Omega_j(endpoint) for a single letter j (closed forms exist for all j).
CertifiedComplex depth1_closed_form(int j, Endpoint endpoint, const Angle& phi, mpfr_prec_t prec);

/// Omega_{2,1}(1) = 2 pi i log sin(phi) and Omega_{3,1}(i) = -2 pi i log cos(phi).
CertifiedComplex depth2_closed_form(Endpoint endpoint, const Angle& phi, mpfr_prec_t prec);

/// For phi = pi/4 and a valid endpoint 1 word: Omega_w = sign * i pi * zeta(idx).
std::pair<int, MzvIndex> omega_to_mzv(const std::vector<int>& word);

/// Omega_w(i)(phi) = sign * Omega_{w'}(1)(pi/2 - phi).
std::pair<int, std::vector<int>> endpoint_i_reduction(const std::vector<int>& word);

enum class OmegaRoute {
  automatic,  // zeta values when phi = pi/4, direct integration otherwise
  zeta,       // force the zeta-value route (phi = pi/4, endpoint-1 walks only)
  integral,   // force direct integration
};

struct OmegaOptions {
  Precision precision{};
  OmegaRoute route = OmegaRoute::automatic;
  double alpha_max = 0.55;
  MzvCache* cache = nullptr;
};

/// Memoized Omega-values at a fixed angle.  Endpoint-i values are reduced to
/// endpoint-1 values at the complementary angle.  Thread-safe.
class OmegaTable {
 public:
  OmegaTable(Angle phi, OmegaOptions options);
  ~OmegaTable();

  const Angle& phi() const { return phi_; }
  const OmegaOptions& options() const { return opt_; }

  /// Omega_w(endpoint); the word must be a valid walk for the endpoint.
  CertifiedComplex value(const std::vector<int>& word, Endpoint endpoint);
  /// Evaluates a batch of words at once (shares work between words).
  void prefetch(const std::vector<std::vector<int>>& words, Endpoint endpoint);

  /// Omega_w(1) for any walk from e3 (no restriction on the end vertex) or any single letter.
  CertifiedComplex walk_value(const std::vector<int>& word);
  void prefetch_walks(const std::vector<std::vector<int>>& words);

  /// |Omega_w(1)| for the same words as walk_value.
  AbsInterval abs(const std::vector<int>& word);

  std::size_t size() const;

 private:
  OmegaTable& complement();
  void compute(const std::vector<std::vector<int>>& words);

  Angle phi_;
  OmegaOptions opt_;
  mutable std::mutex mu_;
  std::map<std::vector<int>, CertifiedComplex> memo_;  // endpoint-1 integrals
  std::unique_ptr<OmegaTable> complement_;
};

/// One-shot evaluation.
CertifiedComplex omega_eval(const std::vector<int>& word, Endpoint endpoint, const Angle& phi,
                            OmegaOptions options = {});

/// |Omega_w(1)| as an interval; the word must be a walk from e3.
AbsInterval omega_abs(const std::vector<int>& word, const Angle& phi, OmegaOptions options = {});

}  // namespace lawson
