#include "lawson/omega.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "lawson/errors.hpp"

namespace lawson {

/* -------------------------------------------------------------- angle */

Angle Angle::pi_fraction(long num, long den) {
  if (den == 0) throw DomainError("angle with zero denominator");
  Angle a;
  a.pi_coeff_ = mpq_class(num, den);
  a.pi_coeff_.canonicalize();
  return a;
}

Angle Angle::decimal(const std::string& literal) {
  char* end = nullptr;
  std::strtod(literal.c_str(), &end);
  if (literal.empty() || end == nullptr || *end != '\0') throw DomainError("malformed angle: " + literal);
  Angle a;
  a.pi_coeff_ = 0;
  if (literal.front() == '-') {
    a.offset_ = literal.substr(1);
    a.offset_sign_ = -1;
  } else {
    a.offset_ = literal.front() == '+' ? literal.substr(1) : literal;
  }
  return a;
}

Angle Angle::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += static_cast<char>(std::tolower(c));
  const auto at = s.find("pi");
  if (at == std::string::npos) return decimal(s);
  std::string num = s.substr(0, at);
  if (!num.empty() && num.back() == '*') num.pop_back();
  std::string rest = s.substr(at + 2);
  long n = 1, d = 1;
  try {
    if (num == "-") n = -1;
    else if (!num.empty()) {
      std::size_t used = 0;
      n = std::stol(num, &used);
      if (used != num.size()) throw DomainError("");
    }
    if (!rest.empty()) {
      if (rest.front() != '/') throw DomainError("");
      std::size_t used = 0;
      d = std::stol(rest.substr(1), &used);
      if (used != rest.size() - 1) throw DomainError("");
    }
  } catch (const std::exception&) {
    throw DomainError("malformed angle: " + text);
  }
  return pi_fraction(n, d);
}

CertifiedComplex Angle::value(mpfr_prec_t prec) const {
  CertifiedComplex v;
  if (pi_coeff_ != 0) {
    v = CertifiedComplex::pi(prec) * pi_coeff_.get_num().get_si();
    v /= pi_coeff_.get_den().get_si();
  }
  if (!offset_.empty()) {
    CertifiedComplex x = CertifiedComplex::from_string(offset_, "0", prec);
    if (offset_sign_ < 0) v -= x;
    else v += x;
  }
  return v;
}

double Angle::to_double() const { return value(64).re_double(); }

Angle Angle::complement() const {
  Angle a(*this);
  a.pi_coeff_ = mpq_class(1, 2) - pi_coeff_;
  if (!offset_.empty()) a.offset_sign_ = -offset_sign_;
  return a;
}

std::string Angle::to_string() const {
  std::string pi_part;
  if (pi_coeff_ != 0) {
    const mpz_class& n = pi_coeff_.get_num();
    if (n == -1) pi_part = "-";
    else if (n != 1) pi_part = n.get_str();
    pi_part += "pi";
    if (pi_coeff_.get_den() != 1) pi_part += "/" + pi_coeff_.get_den().get_str();
  }
  if (offset_.empty()) return pi_part.empty() ? "0" : pi_part;
  const std::string sign = offset_sign_ < 0 ? "-" : (pi_part.empty() ? "" : "+");
  return pi_part + sign + offset_;
}

bool Angle::operator<(const Angle& o) const {
  if (pi_coeff_ != o.pi_coeff_) return pi_coeff_ < o.pi_coeff_;
  if (offset_ != o.offset_) return offset_ < o.offset_;
  return offset_sign_ < o.offset_sign_;
}

/* -------------------------------------------------------------- words */

namespace {

// other end of the edge with label `label` at vertex v, or 0
int step(int v, int label) {
  switch (label) {
    case 1: return v == 1 ? 2 : v == 2 ? 1 : 0;
    case 2: return v == 2 ? 3 : v == 3 ? 2 : 0;
    case 3: return v == 1 ? 3 : v == 3 ? 1 : 0;
    default: return 0;
  }
}

}  // namespace

WalkCheck walk_from_e3(const std::vector<int>& word, int target) {
  WalkCheck out;
  if (word.empty()) return out;
  std::vector<int> trail{3};
  for (int l : word) {
    const int v = step(trail.back(), l);
    if (v == 0) return out;
    trail.push_back(v);
  }
  if (target != 0 && trail.back() != target) return out;
  out.valid = true;
  out.trail = std::move(trail);
  return out;
}

WalkCheck is_valid_word(const std::vector<int>& word, Endpoint endpoint) {
  return walk_from_e3(word, endpoint == Endpoint::one ? 1 : 2);
}

std::vector<std::vector<int>> walks_from_e3(int length, int target) {
  std::vector<std::vector<int>> out;
  if (length <= 0) return out;
  std::vector<int> w;
  // depth-first, trying labels in increasing order
  auto rec = [&](auto&& self, int v) -> void {
    if (static_cast<int>(w.size()) == length) {
      if (target == 0 || v == target) out.push_back(w);
      return;
    }
    for (int l = 1; l <= 3; ++l) {
      const int u = step(v, l);
      if (u == 0) continue;
      w.push_back(l);
      self(self, u);
      w.pop_back();
    }
  };
  rec(rec, 3);
  return out;
}

std::string word_to_string(const std::vector<int>& word) {
  std::string s;
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(word[k]);
  }
  return s;
}

// letters are single digits, so "2,2,3" and "223" parse the same way
std::vector<int> parse_word(const std::string& text) {
  std::vector<int> w;
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) continue;
    if (c < '1' || c > '3') throw InvalidWord("letters must be 1, 2 or 3: " + text);
    w.push_back(c - '0');
  }
  if (w.empty()) throw InvalidWord("empty word");
  return w;
}

/* ------------------------------------------------------- closed forms */

CertifiedComplex depth1_closed_form(int j, Endpoint endpoint, const Angle& phi, mpfr_prec_t prec) {
  const CertifiedComplex f = phi.value(prec);
  const CertifiedComplex pi = CertifiedComplex::pi(prec);
  if (endpoint == Endpoint::one) {
    switch (j) {
      case 1: return (pi - f * 2).mul_i();
      case 2: {
        const CertifiedComplex c = cos(f);
        return log((CertifiedComplex(1) - c) / (CertifiedComplex(1) + c));
      }
      case 3: return pi.mul_i();
      default: break;
    }
  } else {
    switch (j) {
      case 1: return -(f * 2).mul_i();
      case 2: return -pi.mul_i();
      case 3: {
        const CertifiedComplex s = sin(f);
        return log((CertifiedComplex(1) - s) / (CertifiedComplex(1) + s));
      }
      default: break;
    }
  }
  throw InvalidWord("letter must be 1, 2 or 3");
}

CertifiedComplex depth2_closed_form(Endpoint endpoint, const Angle& phi, mpfr_prec_t prec) {
  const CertifiedComplex f = phi.value(prec);
  const CertifiedComplex twopi = CertifiedComplex::pi(prec) * 2;
  if (endpoint == Endpoint::one) return (twopi * log(sin(f))).mul_i();
  return -(twopi * log(cos(f))).mul_i();
}

std::pair<int, MzvIndex> omega_to_mzv(const std::vector<int>& word) {
  const WalkCheck wc = is_valid_word(word, Endpoint::one);
  if (!wc.valid) throw InvalidWord("not a walk from e3 to e1: " + word_to_string(word));
  static constexpr int f[4] = {0, 1, -1, 0};
  std::vector<int> poles;
  for (std::size_t k = 1; k + 1 < wc.trail.size(); ++k) poles.push_back(f[wc.trail[k]]);
  int sign = 1;
  for (int l : word)
    if (l == 1) sign = -sign;
  auto [s, idx] = word_to_mzv(poles);
  return {sign * s, idx};
}

std::pair<int, std::vector<int>> endpoint_i_reduction(const std::vector<int>& word) {
  if (!is_valid_word(word, Endpoint::i).valid)
    throw InvalidWord("not a walk from e3 to e2: " + word_to_string(word));
  static constexpr int to[4] = {0, 1, 3, 2};
  static constexpr int sg[4] = {0, -1, -1, 1};
  int sign = 1;
  std::vector<int> out;
  for (int l : word) {
    out.push_back(to[l]);
    sign *= sg[l];
  }
  return {sign, out};
}

/* -------------------------------------------------------------- table */

OmegaTable::OmegaTable(Angle phi, OmegaOptions options) : phi_(std::move(phi)), opt_(options) {
  const double f = phi_.to_double();
  if (!(f > 0.0 && f < 1.5707963267948966)) throw DomainError("phi must lie in (0, pi/2)");
}

OmegaTable::~OmegaTable() = default;

OmegaTable& OmegaTable::complement() {
  if (phi_.is_quarter_pi()) return *this;
  std::lock_guard<std::mutex> lock(mu_);
  if (!complement_) complement_ = std::make_unique<OmegaTable>(phi_.complement(), opt_);
  return *complement_;
}

std::size_t OmegaTable::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return memo_.size() + (complement_ ? complement_->size() : 0);
}

void OmegaTable::compute(const std::vector<std::vector<int>>& words) {
  std::vector<std::vector<int>> todo;
  {
    std::lock_guard<std::mutex> lock(mu_);
    for (const auto& w : words)
      if (!memo_.count(w)) todo.push_back(w);
  }
  std::sort(todo.begin(), todo.end());
  todo.erase(std::unique(todo.begin(), todo.end()), todo.end());
  if (todo.empty()) return;

  const mpfr_prec_t bits = opt_.precision.bits();
  std::vector<std::vector<int>> via_zeta, via_integral;
  for (auto& w : todo) {
    const bool ends_at_e1 = walk_from_e3(w, 1).valid;
    const bool zeta_ok = phi_.is_quarter_pi() && ends_at_e1;
    if (opt_.route == OmegaRoute::zeta && !zeta_ok)
      throw InvalidWord("zeta route needs phi = pi/4 and a walk to e1: " + word_to_string(w));
    if (zeta_ok && opt_.route != OmegaRoute::integral) via_zeta.push_back(w);
    else via_integral.push_back(w);
  }

  std::vector<std::pair<std::vector<int>, CertifiedComplex>> results;
  if (!via_zeta.empty()) {
    std::vector<MzvIndex> idx;
    std::vector<int> sign;
    for (const auto& w : via_zeta) {
      auto [s, i] = omega_to_mzv(w);
      sign.push_back(s);
      idx.push_back(std::move(i));
    }
    const std::vector<CertifiedComplex> z = alternating_mzv_batch(idx, opt_.precision, opt_.cache);
    const CertifiedComplex ipi = CertifiedComplex::pi(bits).mul_i();
    for (std::size_t k = 0; k < via_zeta.size(); ++k) {
      CertifiedComplex v = ipi * z[k];
      if (sign[k] < 0) v = -v;
      results.emplace_back(via_zeta[k], std::move(v));
    }
  }
  if (!via_integral.empty()) {
    const mpfr_prec_t pb = bits + 16;
    const CertifiedComplex f = phi_.value(pb);
    const CertifiedComplex c = cos(f), s = sin(f);
    const CertifiedComplex is = s.mul_i();
    std::vector<CertifiedComplex> poles{c + is, -c + is, -c - is, c - is};
    auto letter = [](int a, int b, int cc, int d) {
      FormLetter l;
      const int sg[4] = {a, b, cc, d};
      for (int k = 0; k < 4; ++k) l.terms.emplace_back(k, CertifiedComplex(sg[k]));
      return l;
    };
    std::vector<FormLetter> letters{letter(1, -1, 1, -1), letter(1, -1, -1, 1), letter(1, 1, -1, -1)};
    IteratedIntegralEngine engine(poles, letters, IntegralOptions{opt_.alpha_max, opt_.precision});
    std::vector<std::vector<int>> ids;
    for (const auto& w : via_integral) {
      std::vector<int> v;
      for (int l : w) v.push_back(l - 1);
      ids.push_back(std::move(v));
    }
    const std::vector<CertifiedComplex> path{CertifiedComplex(0), CertifiedComplex::rational(1, 3, bits),
                                             CertifiedComplex::rational(2, 3, bits), CertifiedComplex(1)};
    std::vector<CertifiedComplex> vals = engine.evaluate(ids, path);
    for (std::size_t k = 0; k < via_integral.size(); ++k) results.emplace_back(via_integral[k], std::move(vals[k]));
  }

  std::lock_guard<std::mutex> lock(mu_);
  for (auto& [w, v] : results) memo_.insert_or_assign(w, std::move(v));
}

void OmegaTable::prefetch_walks(const std::vector<std::vector<int>>& words) {
  // single letters are accepted too: they are plain logarithms
  for (const auto& w : words)
    if (w.size() != 1 && !walk_from_e3(w).valid) throw InvalidWord("not a walk from e3: " + word_to_string(w));
  compute(words);
}

CertifiedComplex OmegaTable::walk_value(const std::vector<int>& word) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(word);
    if (it != memo_.end()) return it->second;
  }
  prefetch_walks({word});
  std::lock_guard<std::mutex> lock(mu_);
  return memo_.at(word);
}

void OmegaTable::prefetch(const std::vector<std::vector<int>>& words, Endpoint endpoint) {
  if (endpoint == Endpoint::one) {
    for (const auto& w : words)
      if (!is_valid_word(w, Endpoint::one).valid) throw InvalidWord("not a walk from e3 to e1: " + word_to_string(w));
    compute(words);
    return;
  }
  std::vector<std::vector<int>> reduced;
  for (const auto& w : words) reduced.push_back(endpoint_i_reduction(w).second);
  complement().compute(reduced);
}

CertifiedComplex OmegaTable::value(const std::vector<int>& word, Endpoint endpoint) {
  if (endpoint == Endpoint::one) {
    if (!is_valid_word(word, Endpoint::one).valid)
      throw InvalidWord("not a walk from e3 to e1: " + word_to_string(word));
    return walk_value(word);
  }
  auto [sign, w] = endpoint_i_reduction(word);
  CertifiedComplex v = complement().walk_value(w);
  return sign < 0 ? -v : v;
}

AbsInterval OmegaTable::abs(const std::vector<int>& word) { return disc_abs_interval(walk_value(word)); }

CertifiedComplex omega_eval(const std::vector<int>& word, Endpoint endpoint, const Angle& phi, OmegaOptions options) {
  OmegaTable t(phi, options);
  return t.value(word, endpoint);
}

AbsInterval omega_abs(const std::vector<int>& word, const Angle& phi, OmegaOptions options) {
  OmegaTable t(phi, options);
  return t.abs(word);
}

}  // namespace lawson
