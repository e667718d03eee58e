#include "lawson/mpl.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace lawson {

/* ------------------------------------------------------------ indices */

int MzvIndex::weight() const {
  int w = 0;
  for (const auto& e : entries) w += e.n;
  return w;
}

bool MzvIndex::convergent() const {
  if (entries.empty()) return true;
  const MzvEntry& last = entries.back();
  return !(last.n == 1 && last.sign == 1);
}

std::string MzvIndex::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(entries[i].n);
    if (entries[i].sign < 0) s += 'b';
  }
  return s;
}

MzvIndex MzvIndex::parse(const std::string& s) {
  MzvIndex idx;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    MzvEntry e;
    if (tok.back() == 'b' || tok.back() == 'B') {
      e.sign = -1;
      tok.pop_back();
    } else if (tok.front() == '-') {
      e.sign = -1;
      tok.erase(tok.begin());
    }
    try {
      e.n = std::stoi(tok);
    } catch (const std::exception&) {
      throw UnknownIndex("cannot parse index entry '" + tok + "'");
    }
    if (e.n < 1) throw UnknownIndex("index entries must be positive");
    idx.entries.push_back(e);
  }
  return idx;
}

std::vector<int> mzv_word(const MzvIndex& idx) {
  std::vector<int> word;
  const int d = idx.depth();
  for (int j = 0; j < d; ++j) {
    int delta = 1;
    for (int i = j; i < d; ++i) delta *= idx.entries[static_cast<std::size_t>(i)].sign;
    word.push_back(delta);
    for (int k = 1; k < idx.entries[static_cast<std::size_t>(j)].n; ++k) word.push_back(0);
  }
  return word;
}

std::pair<int, MzvIndex> word_to_mzv(const std::vector<int>& word) {
  MzvIndex idx;
  if (word.empty()) return {1, idx};
  if (word.front() == 0) throw NonIntegrableEndpoint("word starts with eta_0");
  std::vector<int> z;
  for (int y : word) {
    if (y != 0 && y != 1 && y != -1) throw InvalidWord("letters must be 0 or +-1");
    if (y != 0) {
      z.push_back(y);
      idx.entries.push_back({1, 1});
    } else {
      idx.entries.back().n += 1;
    }
  }
  const std::size_t d = z.size();
  for (std::size_t j = 0; j < d; ++j) idx.entries[j].sign = (j + 1 < d) ? z[j] * z[j + 1] : z[j];
  return {(d % 2 == 0) ? 1 : -1, idx};
}

/* ----------------------------------------------------------- series */

CertifiedComplex truncated_mpl(const MplArgs& args, long N) {
  const std::size_t d = args.a.size();
  if (args.x.size() != d) throw DomainError("truncated_mpl: size mismatch");
  if (d == 0) return CertifiedComplex(1);
  // v[r] = Li_{i; a_1..a_r}(x_1..x_r) after step i
  std::vector<CertifiedComplex> v(d + 1), pw(d + 1);
  v[0] = CertifiedComplex(1);
  for (std::size_t r = 1; r <= d; ++r) pw[r] = CertifiedComplex(1);
  for (long i = 1; i <= N; ++i) {
    for (std::size_t r = 1; r <= d; ++r) pw[r] *= args.x[r - 1];
    for (std::size_t r = d; r >= 1; --r) {
      if (v[r - 1].is_exact_zero()) continue;
      CertifiedComplex term = v[r - 1] * pw[r];
      for (int k = 0; k < args.a[r - 1]; ++k) term /= i;
      v[r] += term;
    }
  }
  return v[d];
}

namespace {

void naive_rec(const MplArgs& args, std::size_t r, long lo, long N, const CertifiedComplex& acc,
               CertifiedComplex& out) {
  if (r == args.a.size()) {
    out += acc;
    return;
  }
  for (long n = lo + 1; n <= N; ++n) {
    CertifiedComplex t = acc * pow(args.x[r], n);
    for (int k = 0; k < args.a[r]; ++k) t /= n;
    naive_rec(args, r + 1, n, N, t, out);
  }
}

}  // namespace

CertifiedComplex truncated_mpl_naive(const MplArgs& args, long N) {
  CertifiedComplex out;
  naive_rec(args, 0, 0, N, CertifiedComplex(1), out);
  return out;
}

double tail_bound(const std::vector<int>& a, double alpha, long N) {
  if (!(alpha < 1.0)) throw AlphaOutOfRange("tail_bound requires alpha < 1");
  if (alpha <= 0.0) return 0.0;
  const std::size_t d = a.size();
  if (d == 0) return 0.0;
  const double beta = alpha / (1.0 - alpha);
  const double lN = std::log(static_cast<double>(N));
  double total = 0.0;
  long A = 0;  // a_i + ... + a_d
  for (std::size_t i = d; i >= 1; --i) {
    A += a[i - 1];
    const double e = static_cast<double>(N) * std::log(alpha) + (static_cast<double>(i) - 1.0 - static_cast<double>(A)) * lN +
                     static_cast<double>(d - i + 1) * std::log(beta);
    total += std::exp(e);
  }
  total *= 1.0 + 1e-12;
  if (total == 0.0) return DBL_TRUE_MIN;
  return rad::up(total);
}

namespace {

bool identical(const CertifiedComplex& a, const CertifiedComplex& b) {
  return a.radius() == 0.0 && b.radius() == 0.0 && mpfr_equal_p(a.re().ptr(), b.re().ptr()) &&
         mpfr_equal_p(a.im().ptr(), b.im().ptr());
}

double dist_upper(const CertifiedComplex& a, const CertifiedComplex& b) {
  CertifiedComplex d = a - b;
  return disc_abs_interval(d).hi;
}

double dist_lower(const CertifiedComplex& a, const CertifiedComplex& b) {
  CertifiedComplex d = a - b;
  return disc_abs_interval(d).lo;
}

CertifiedComplex exact_center(const CertifiedComplex& z) { return CertifiedComplex(z.re(), z.im()); }

}  // namespace

double convergence_rate(const std::vector<CertifiedComplex>& poles, const CertifiedComplex& p,
                        const CertifiedComplex& q) {
  const double num = dist_upper(q, p);
  if (num == 0.0) return 0.0;
  double m = std::numeric_limits<double>::infinity();
  for (const auto& y : poles) {
    if (identical(y, p)) continue;
    m = std::min(m, dist_lower(y, p));
  }
  if (!std::isfinite(m)) return 0.5;
  if (m == 0.0) return std::numeric_limits<double>::infinity();
  return rad::div(num, m);
}

/* ------------------------------------------------ iterated integrals */

IteratedIntegralEngine::IteratedIntegralEngine(std::vector<CertifiedComplex> poles,
                                               std::vector<FormLetter> letters, IntegralOptions options)
    : poles_(std::move(poles)), letters_(std::move(letters)), opt_(options) {
  if (!(opt_.alpha_max > 0.0 && opt_.alpha_max < 1.0)) throw AlphaOutOfRange("alpha_max must lie in (0,1)");
  if (letters_.size() > 250) throw DomainError("too many letters");
}

std::vector<IteratedIntegralEngine::Segment> IteratedIntegralEngine::segments(
    const std::vector<CertifiedComplex>& path_in) const {
  if (path_in.size() < 2) throw DomainError("a path needs at least two points");
  std::vector<CertifiedComplex> path;
  for (std::size_t i = 0; i < path_in.size(); ++i) {
    if ((i == 0 || i + 1 == path_in.size()) && path_in[i].radius() != 0.0)
      throw DomainError("path endpoints must be exact");
    path.push_back(exact_center(path_in[i]));
  }
  const CertifiedComplex& start = path.front();
  const CertifiedComplex& end = path.back();

  auto is_pole = [&](const CertifiedComplex& z) {
    for (const auto& y : poles_)
      if (identical(y, z)) return true;
    return false;
  };

  // poles may only touch the path at its two endpoints
  for (std::size_t leg = 0; leg + 1 < path.size(); ++leg) {
    const double ax = path[leg].re_double(), ay = path[leg].im_double();
    const double bx = path[leg + 1].re_double(), by = path[leg + 1].im_double();
    const double len2 = (bx - ax) * (bx - ax) + (by - ay) * (by - ay);
    for (const auto& y : poles_) {
      if (identical(y, start) || identical(y, end)) continue;
      const double yx = y.re_double(), yy = y.im_double();
      double t = len2 > 0 ? ((yx - ax) * (bx - ax) + (yy - ay) * (by - ay)) / len2 : 0.0;
      t = std::clamp(t, 0.0, 1.0);
      const double dx = ax + t * (bx - ax) - yx, dy = ay + t * (by - ay) - yy;
      if (std::hypot(dx, dy) <= 1e-12 * (1.0 + std::sqrt(len2)) + y.radius())
        throw PoleOnPath("a pole lies on the integration path");
    }
  }

  std::vector<Segment> out;
  const double amax = opt_.alpha_max * (1.0 + 1e-12);
  std::function<void(const CertifiedComplex&, const CertifiedComplex&, int)> split =
      [&](const CertifiedComplex& u, const CertifiedComplex& v, int depth) {
        if (depth > 60) throw PoleOnPath("path subdivision does not converge");
        const bool up = is_pole(u), vp = is_pole(v);
        const double ru = convergence_rate(poles_, u, v);
        const double rv = convergence_rate(poles_, v, u);
        bool have = false, at_start = true;
        double rate = 0.0;
        if (up && vp) {
          have = false;
        } else if (up) {
          have = true, at_start = true, rate = ru;
        } else if (vp) {
          have = true, at_start = false, rate = rv;
        } else {
          have = true;
          at_start = ru <= rv;
          rate = std::min(ru, rv);
        }
        if (have && rate <= amax) {
          out.push_back(Segment{u, v, at_start, rate});
          return;
        }
        CertifiedComplex mid = exact_center((u + v).mul_2exp(-1));
        split(u, mid, depth + 1);
        split(mid, v, depth + 1);
      };
  for (std::size_t leg = 0; leg + 1 < path.size(); ++leg) split(path[leg], path[leg + 1], 0);
  return out;
}

namespace {

// Largest tail bound over all eta-expansions of a word of length n whose
// first letter has a nonzero pole: the excess of a block sum sits in the
// first block in the worst case.
double tail_worst(int n, double alpha, long N) {
  double worst = 0.0;
  for (int d = 1; d <= n; ++d) {
    std::vector<int> a(static_cast<std::size_t>(d), 1);
    a[0] = n - d + 1;
    worst = std::max(worst, tail_bound(a, alpha, N));
  }
  return worst;
}

struct TrieNode {
  int letter = -1;
  std::vector<int> children;  // indices into the node array, sorted by letter
};

}  // namespace

IteratedIntegralEngine::ValueMap IteratedIntegralEngine::evaluate_segment(
    const Segment& seg, const std::vector<std::string>& roots) const {
  ValueMap values;
  const mpfr_prec_t bits = opt_.precision.bits();
  const bool cert = opt_.precision.certified;
  const CertifiedComplex base = seg.base_at_start ? seg.a : seg.b;
  const CertifiedComplex other = seg.base_at_start ? seg.b : seg.a;
  const CertifiedComplex scale = (other - base).rounded_to(bits);

  const std::size_t P = poles_.size();
  std::vector<bool> zero_pole(P, false);
  std::vector<CertifiedComplex> delta(P);
  double alpha = 0.0;
  for (std::size_t k = 0; k < P; ++k) {
    if (identical(poles_[k], base)) {
      zero_pole[k] = true;
      continue;
    }
    CertifiedComplex y = poles_[k].rounded_to(std::max(bits, poles_[k].prec()));
    delta[k] = (scale / (y - base)).with_certified(cert);
    alpha = std::max(alpha, disc_abs_interval(delta[k]).hi);
  }
  if (!(alpha < 1.0)) throw AlphaOutOfRange("segment is not geometrically convergent");

  // build the prefix tree of all requested words
  std::vector<TrieNode> nodes(1);
  std::size_t max_depth = 0;
  for (const std::string& w : roots) {
    int cur = 0;
    for (char ch : w) {
      const int l = static_cast<unsigned char>(ch);
      int next = -1;
      for (int c : nodes[static_cast<std::size_t>(cur)].children)
        if (nodes[static_cast<std::size_t>(c)].letter == l) next = c;
      if (next < 0) {
        next = static_cast<int>(nodes.size());
        nodes.push_back(TrieNode{l, {}});
        nodes[static_cast<std::size_t>(cur)].children.push_back(next);
      }
      cur = next;
    }
    max_depth = std::max(max_depth, w.size());
  }
  if (max_depth == 0) return values;

  // coefficient mass per letter: sum of |c_k|
  std::vector<double> mass(letters_.size(), 0.0);
  std::vector<bool> pure(letters_.size(), true);
  for (std::size_t l = 0; l < letters_.size(); ++l) {
    for (const auto& [k, c] : letters_[l].terms) mass[l] = rad::add(mass[l], disc_abs_interval(c).hi);
    pure[l] = letters_[l].terms.size() == 1;
  }
  double max_mass = 1.0;
  for (double m : mass) max_mass = std::max(max_mass, m);

  // truncation order: least N with (mass^depth) * tail <= 10^-(digits+5)
  const double target = std::pow(10.0, -(opt_.precision.digits + 5));
  const double total_mass = std::pow(max_mass, static_cast<double>(max_depth));
  long N = std::max<long>(8, static_cast<long>(std::log(target) / std::log(std::max(alpha, 1e-300))));
  if (alpha > 0.0) {
    while (total_mass * tail_worst(static_cast<int>(max_depth), alpha, N) > target) N += std::max<long>(4, N / 20);
  } else {
    N = static_cast<long>(max_depth);
  }

  // depth-first evaluation; U[r][m] holds the series of the current prefix of length r
  std::vector<std::vector<CertifiedComplex>> U(max_depth + 1, std::vector<CertifiedComplex>(static_cast<std::size_t>(N + 1)));
  U[0][0] = CertifiedComplex(1);
  std::string key;
  std::vector<std::vector<int>> blocks(max_depth + 1);  // a-vectors of pure prefixes
  std::vector<double> path_mass(max_depth + 1, 1.0);
  std::vector<bool> path_pure(max_depth + 1, true);

  std::function<void(int, std::size_t)> visit = [&](int node, std::size_t r) {
    const int l = nodes[static_cast<std::size_t>(node)].letter;
    const FormLetter& letter = letters_[static_cast<std::size_t>(l)];
    std::vector<CertifiedComplex>& out = U[r];
    const std::vector<CertifiedComplex>& par = U[r - 1];
    for (auto& v : out) v = CertifiedComplex();
    CertifiedComplex w, t;
    bool has_zero = false, has_nonzero = false;
    for (const auto& [k, c] : letter.terms) {
      if (c.is_exact_zero()) continue;
      const bool unit = c.radius() == 0.0 && c.im().is_zero() &&
                        (mpfr_cmp_si(c.re().ptr(), 1) == 0 || mpfr_cmp_si(c.re().ptr(), -1) == 0);
      const bool neg_unit = unit && mpfr_sgn(c.re().ptr()) < 0;
      if (zero_pole[static_cast<std::size_t>(k)]) {
        has_zero = true;
        if (r == 1) throw NonIntegrableEndpoint("first form has its pole at the base point of the path");
        for (long m = 1; m <= N; ++m) {
          if (par[static_cast<std::size_t>(m)].is_exact_zero()) continue;
          t = par[static_cast<std::size_t>(m)] / m;
          if (unit) {
            if (neg_unit) out[static_cast<std::size_t>(m)] -= t;
            else out[static_cast<std::size_t>(m)] += t;
          } else {
            out[static_cast<std::size_t>(m)] += c * t;
          }
        }
      } else {
        has_nonzero = true;
        const CertifiedComplex& dk = delta[static_cast<std::size_t>(k)];
        w = CertifiedComplex();
        for (long m = 1; m <= N; ++m) {
          w += par[static_cast<std::size_t>(m - 1)];
          if (w.is_exact_zero()) continue;
          w *= dk;
          t = w / m;
          // the eta-letter with a nonzero pole carries a factor -1
          if (unit) {
            if (neg_unit) out[static_cast<std::size_t>(m)] += t;
            else out[static_cast<std::size_t>(m)] -= t;
          } else {
            out[static_cast<std::size_t>(m)] -= c * t;
          }
        }
      }
    }
    (void)has_nonzero;

    // tail profile of this prefix
    path_mass[r] = rad::mul(path_mass[r - 1], mass[static_cast<std::size_t>(l)]);
    path_pure[r] = path_pure[r - 1] && pure[static_cast<std::size_t>(l)];
    double tail = 0.0;
    if (alpha > 0.0) {
      if (path_pure[r]) {
        blocks[r] = blocks[r - 1];
        if (has_zero) blocks[r].back() += 1;
        else blocks[r].push_back(1);
        tail = rad::mul(path_mass[r], tail_bound(blocks[r], alpha, N));
      } else {
        tail = rad::mul(path_mass[r], tail_worst(static_cast<int>(r), alpha, N));
      }
    }
    CertifiedComplex sum;
    for (long m = 1; m <= N; ++m) sum += out[static_cast<std::size_t>(m)];
    values.emplace(key, cert ? sum.inflated(tail) : sum);

    for (int c : nodes[static_cast<std::size_t>(node)].children) {
      key.push_back(static_cast<char>(nodes[static_cast<std::size_t>(c)].letter));
      visit(c, r + 1);
      key.pop_back();
    }
  };

  for (int c : nodes[0].children) {
    key.assign(1, static_cast<char>(nodes[static_cast<std::size_t>(c)].letter));
    visit(c, 1);
  }
  return values;
}

std::vector<CertifiedComplex> IteratedIntegralEngine::evaluate(const std::vector<std::vector<int>>& words,
                                                               const std::vector<CertifiedComplex>& path) const {
  const std::vector<Segment> segs = segments(path);
  const std::size_t K = segs.size();
  auto to_key = [](const std::vector<int>& w, std::size_t from, std::size_t to) {
    std::string s;
    for (std::size_t i = from; i < to; ++i) s.push_back(static_cast<char>(w[i]));
    return s;
  };
  for (const auto& w : words)
    for (int l : w)
      if (l < 0 || static_cast<std::size_t>(l) >= letters_.size()) throw InvalidWord("letter out of range");

  std::vector<ValueMap> maps(K);
  for (std::size_t k = 0; k < K; ++k) {
    const bool first = k == 0, last = k + 1 == K;
    std::set<std::string> roots;
    for (const auto& w : words) {
      const std::size_t n = w.size();
      if (n == 0) continue;
      if (segs[k].base_at_start) {
        const std::size_t i_end = first ? 1 : n;
        for (std::size_t i = 0; i < i_end; ++i) roots.insert(to_key(w, i, n));
      } else {
        const std::size_t j_begin = last ? n : 1;
        for (std::size_t j = j_begin; j <= n; ++j) {
          std::string s = to_key(w, 0, j);
          std::reverse(s.begin(), s.end());
          roots.insert(s);
        }
      }
    }
    maps[k] = evaluate_segment(segs[k], std::vector<std::string>(roots.begin(), roots.end()));
  }

  std::vector<CertifiedComplex> results;
  results.reserve(words.size());
  for (const auto& w : words) {
    const std::size_t n = w.size();
    if (n == 0) {
      results.emplace_back(1);
      continue;
    }
    std::vector<CertifiedComplex> T(n + 1);
    T[0] = CertifiedComplex(1);
    for (std::size_t k = 0; k < K; ++k) {
      const bool last = k + 1 == K;
      auto lookup = [&](std::size_t i, std::size_t j) -> CertifiedComplex {
        if (i == j) return CertifiedComplex(1);
        std::string s = to_key(w, i, j);
        if (segs[k].base_at_start) return maps[k].at(s);
        std::reverse(s.begin(), s.end());
        CertifiedComplex v = maps[k].at(s);
        return ((j - i) % 2 == 0) ? v : -v;
      };
      std::vector<CertifiedComplex> Tn(n + 1);
      const std::size_t j_begin = last ? n : 0;
      for (std::size_t j = j_begin; j <= n; ++j) {
        for (std::size_t i = 0; i <= j; ++i) {
          if (T[i].is_exact_zero()) continue;
          Tn[j] += T[i] * lookup(i, j);
        }
      }
      T = std::move(Tn);
    }
    results.push_back(T[n]);
  }
  return results;
}

CertifiedComplex evaluate_iterated_integral(const IteratedWord& w, double alpha_max, Precision precision) {
  std::vector<CertifiedComplex> poles;
  std::vector<FormLetter> letters;
  std::vector<int> word;
  for (const auto& y : w.poles) {
    int id = -1;
    for (std::size_t k = 0; k < poles.size(); ++k)
      if (identical(poles[k], y)) id = static_cast<int>(k);
    if (id < 0) {
      id = static_cast<int>(poles.size());
      poles.push_back(y);
      letters.push_back(FormLetter{{{id, CertifiedComplex(1)}}});
    }
    word.push_back(id);
  }
  IteratedIntegralEngine engine(poles, letters, IntegralOptions{alpha_max, precision});
  std::vector<CertifiedComplex> path{w.start};
  path.insert(path.end(), w.waypoints.begin(), w.waypoints.end());
  path.push_back(w.end);
  return engine.evaluate({word}, path).front();
}

/* -------------------------------------------- alternating zeta values */

MzvCache::MzvCache(const std::string& dir) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  path_ = (std::filesystem::path(dir) / "mzv-v1.cache").string();
  std::ifstream in(path_);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string version, idx, re, im;
    int digits = 0;
    double r = 0.0;
    if (!(ls >> version >> idx >> digits >> re >> im >> r) || version != "v1") continue;
    // enough bits to hold the printed mantissa exactly
    const auto bits = static_cast<mpfr_prec_t>(
        std::max<std::size_t>(Precision{digits, true}.bits(), 4 * std::max(re.size(), im.size())));
    try {
      CertifiedComplex z(Real::from_hex(re, bits), Real::from_hex(im, bits), r);
      map_.insert_or_assign(idx + "@" + std::to_string(digits), z);
    } catch (const LawsonError&) {
      continue;  // skip damaged records
    }
  }
}

std::string MzvCache::key(const MzvIndex& idx, int digits) {
  return (idx.entries.empty() ? std::string("-") : idx.to_string()) + "@" + std::to_string(digits);
}

bool MzvCache::lookup(const MzvIndex& idx, int digits, CertifiedComplex& out) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = map_.find(key(idx, digits));
  if (it == map_.end()) return false;
  out = it->second;
  return true;
}

void MzvCache::insert(const MzvIndex& idx, int digits, const CertifiedComplex& value) {
  if (!value.certified()) return;
  std::lock_guard<std::mutex> lock(mu_);
  map_.insert_or_assign(key(idx, digits), value);
  if (path_.empty()) return;
  std::ofstream out(path_, std::ios::app);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value.radius());
  out << "v1 " << (idx.entries.empty() ? std::string("-") : idx.to_string()) << ' ' << digits << ' '
      << value.re().to_hex() << ' ' << value.im().to_hex() << ' ' << buf << '\n';
}

std::size_t MzvCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return map_.size();
}

std::vector<CertifiedComplex> alternating_mzv_batch(const std::vector<MzvIndex>& idx, Precision precision,
                                                    MzvCache* cache, double alpha_max) {
  std::vector<CertifiedComplex> out(idx.size());
  std::vector<std::size_t> todo;
  std::vector<std::vector<int>> words;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (!idx[i].convergent()) throw DivergentIndex("divergent index " + idx[i].to_string());
    if (idx[i].entries.empty()) {
      out[i] = CertifiedComplex(1);
      continue;
    }
    if (cache && precision.certified && cache->lookup(idx[i], precision.digits, out[i])) continue;
    std::vector<int> w;
    for (int y : mzv_word(idx[i])) w.push_back(y == 0 ? 0 : (y == 1 ? 1 : 2));
    words.push_back(std::move(w));
    todo.push_back(i);
  }
  if (todo.empty()) return out;

  const mpfr_prec_t bits = precision.bits();
  std::vector<CertifiedComplex> poles{CertifiedComplex(0), CertifiedComplex(1), CertifiedComplex(-1)};
  for (auto& p : poles) p = p.rounded_to(bits);
  std::vector<FormLetter> letters{FormLetter{{{0, CertifiedComplex(1)}}}, FormLetter{{{1, CertifiedComplex(1)}}},
                                  FormLetter{{{2, CertifiedComplex(1)}}}};
  IteratedIntegralEngine engine(poles, letters, IntegralOptions{alpha_max, precision});
  std::vector<CertifiedComplex> vals = engine.evaluate(words, {poles[0], poles[1]});
  for (std::size_t k = 0; k < todo.size(); ++k) {
    const std::size_t i = todo[k];
    out[i] = (idx[i].depth() % 2 == 0) ? vals[k] : -vals[k];
    if (cache && precision.certified) cache->insert(idx[i], precision.digits, out[i]);
  }
  return out;
}

CertifiedComplex alternating_mzv(const MzvIndex& idx, Precision precision, MzvCache* cache, double alpha_max) {
  return alternating_mzv_batch({idx}, precision, cache, alpha_max).front();
}

namespace {

void naive_mzv_rec(const MzvIndex& idx, std::size_t r, long lo, long N, const CertifiedComplex& acc,
                   CertifiedComplex& out) {
  if (r == idx.entries.size()) {
    out += acc;
    return;
  }
  const MzvEntry& e = idx.entries[r];
  for (long k = lo + 1; k <= N; ++k) {
    CertifiedComplex t = acc;
    for (int j = 0; j < e.n; ++j) t /= k;
    if (e.sign < 0 && (k % 2 == 1)) t = -t;
    naive_mzv_rec(idx, r + 1, k, N, t, out);
  }
}

}  // namespace

CertifiedComplex mzv_naive_sum(const MzvIndex& idx, long N, mpfr_prec_t prec) {
  if (!idx.convergent()) throw DivergentIndex("divergent index " + idx.to_string());
  CertifiedComplex out;
  naive_mzv_rec(idx, 0, 0, N, CertifiedComplex(1).rounded_to(prec), out);
  return out;
}

}  // namespace lawson
