// Multiple polylogarithms, iterated integrals of simple-pole forms and
// alternating multiple zeta values.
//
// Conventions.  For forms eta_y = dt/(t - y) and a path gamma from p to q,
//
//     I(w_1 ... w_n) = int_{0 < t_1 < ... < t_n < 1} w_1(gamma(t_1)) ... w_n(gamma(t_n)),
//
// so the first letter is integrated closest to the start of the path.  On the
// unit segment from 0 to 1,
//
//     Li_{a_1..a_d}(x_1..x_d) = sum_{0 < n_1 < ... < n_d} prod_j x_j^{n_j} / n_j^{a_j}
//                             = (-1)^d I(eta_{1/delta_1} eta_0^{a_1-1} ... eta_{1/delta_d} eta_0^{a_d-1}),
//
// with delta_j = x_j x_{j+1} ... x_d.
#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lawson/cdisc.hpp"

namespace lawson {

/* ------------------------------------------------------------ indices */

struct MzvEntry {
  int n = 1;     // positive integer
  int sign = 1;  // +1 or -1 (a "barred" entry)
  bool operator==(const MzvEntry& o) const { return n == o.n && sign == o.sign; }
  bool operator<(const MzvEntry& o) const { return n != o.n ? n < o.n : sign < o.sign; }
};

/// Index of an alternating multiple zeta value
///   zeta(n_1..n_d; e_1..e_d) = sum_{0 < k_1 < ... < k_d} prod_j e_j^{k_j} / k_j^{n_j}.
struct MzvIndex {
  std::vector<MzvEntry> entries;

  MzvIndex() = default;
  MzvIndex(std::initializer_list<MzvEntry> e) : entries(e) {}

  int depth() const { return static_cast<int>(entries.size()); }
  int weight() const;
  /// The series converges unless the last entry is (1, +1).
  bool convergent() const;

  /// Compact text form, e.g. "1b,2,2b" for zeta(-1, 2, -2).
  std::string to_string() const;
  static MzvIndex parse(const std::string& s);

  bool operator==(const MzvIndex& o) const { return entries == o.entries; }
  bool operator<(const MzvIndex& o) const { return entries < o.entries; }
};

/// Pole sequence (values in {0, 1, -1}) of the iterated-integral word
/// representing idx; zeta(idx) = (-1)^depth * I(word) on [0, 1].
std::vector<int> mzv_word(const MzvIndex& idx);

/// Inverse of mzv_word: the word's poles must lie in {0, 1, -1} with a
/// nonzero first letter.  Returns the index and the sign s with
/// I(word) = s * zeta(idx).
std::pair<int, MzvIndex> word_to_mzv(const std::vector<int>& word);

/* ----------------------------------------------------------- series */

struct MplArgs {
  std::vector<int> a;
  std::vector<CertifiedComplex> x;
};

/// Li_{N; a}(x) = sum_{0 < n_1 < ... < n_d <= N}, by the O(N d) recursion.
CertifiedComplex truncated_mpl(const MplArgs& args, long N);

/// Brute-force O(N^d) nested sum, used as an oracle.
CertifiedComplex truncated_mpl_naive(const MplArgs& args, long N);

/// Upper bound on |Li_a(x) - Li_{N;a}(x)| when every |delta_j| <= alpha.
double tail_bound(const std::vector<int>& a, double alpha, long N);

/// |q - p| / min |y - p| over poles y != p (1/2 when no such pole exists).
double convergence_rate(const std::vector<CertifiedComplex>& poles, const CertifiedComplex& p,
                        const CertifiedComplex& q);

/* ------------------------------------------------ iterated integrals */

/// A letter is a linear combination sum_k c_k eta_{y_k} over a fixed pole list.
struct FormLetter {
  std::vector<std::pair<int, CertifiedComplex>> terms;  // (pole index, coefficient)
};

struct IntegralOptions {
  double alpha_max = 0.5;
  Precision precision{};
};

/// Evaluates many words over a common alphabet along a common path.  Every
/// word is split along the path segments; within a segment all requested
/// subwords are evaluated together by a depth-first walk over their prefix
/// tree, so shared prefixes are computed once.
class IteratedIntegralEngine {
 public:
  IteratedIntegralEngine(std::vector<CertifiedComplex> poles, std::vector<FormLetter> letters,
                         IntegralOptions options);

  /// path: start point, optional waypoints, end point.
  std::vector<CertifiedComplex> evaluate(const std::vector<std::vector<int>>& words,
                                         const std::vector<CertifiedComplex>& path) const;

  struct Segment {
    CertifiedComplex a, b;
    bool base_at_start = true;
    double alpha = 0.0;
  };
  /// The segmentation used for a path (exposed for tests and diagnostics).
  std::vector<Segment> segments(const std::vector<CertifiedComplex>& path) const;

 private:
  using ValueMap = std::unordered_map<std::string, CertifiedComplex>;
  ValueMap evaluate_segment(const Segment& seg, const std::vector<std::string>& roots) const;

  std::vector<CertifiedComplex> poles_;
  std::vector<FormLetter> letters_;
  IntegralOptions opt_;
};

struct IteratedWord {
  std::vector<CertifiedComplex> poles;  // y_1 .. y_n, one per letter
  CertifiedComplex start;
  CertifiedComplex end;
  std::vector<CertifiedComplex> waypoints;  // interior points of the path
};

CertifiedComplex evaluate_iterated_integral(const IteratedWord& w, double alpha_max, Precision precision);

/* -------------------------------------------- alternating zeta values */

/// Thread-safe memo of zeta values keyed by (index, digits), optionally
/// persisted to an append-only text file.
class MzvCache {
 public:
  MzvCache() = default;
  /// Uses `<dir>/mzv-v1.cache`; creates the directory if needed.
  explicit MzvCache(const std::string& dir);

  bool lookup(const MzvIndex& idx, int digits, CertifiedComplex& out) const;
  void insert(const MzvIndex& idx, int digits, const CertifiedComplex& value);
  std::size_t size() const;
  const std::string& path() const { return path_; }

 private:
  static std::string key(const MzvIndex& idx, int digits);
  mutable std::mutex mu_;
  std::unordered_map<std::string, CertifiedComplex> map_;
  std::string path_;
};

CertifiedComplex alternating_mzv(const MzvIndex& idx, Precision precision, MzvCache* cache = nullptr,
                                 double alpha_max = 0.5);

/// Batch version sharing all prefix computations.
std::vector<CertifiedComplex> alternating_mzv_batch(const std::vector<MzvIndex>& idx, Precision precision,
                                                    MzvCache* cache = nullptr, double alpha_max = 0.5);

/// Partial sum over 0 < k_1 < ... < k_d <= N.
CertifiedComplex mzv_naive_sum(const MzvIndex& idx, long N, mpfr_prec_t prec = 128);

}  // namespace lawson
