#include "lawson/genus2.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "lawson/errors.hpp"

namespace lawson {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kBoxHi = kPi / 2 - 1e-12;

// Arithmetic hooks so the geometry is written once for doubles and discs.
struct DoubleOps {
  using T = double;
  mpfr_prec_t prec = 53;
  T num(double v) const { return v; }
  T pi() const { return kPi; }
  static T sqrt(const T& v) { return std::sqrt(v); }
  static T acos(const T& v) { return std::acos(std::clamp(v, -1.0, 1.0)); }
  static T cos(const T& v) { return std::cos(v); }
  static T sin(const T& v) { return std::sin(v); }
};

struct DiscOps {
  using T = CertifiedComplex;
  mpfr_prec_t prec;
  T num(double v) const { return CertifiedComplex::from_double(v, 0.0, prec); }
  T pi() const { return CertifiedComplex::pi(prec); }
  static T sqrt(const T& v) { return lawson::sqrt(v); }
  static T acos(const T& v) { return lawson::acos(v); }
  static T cos(const T& v) { return lawson::cos(v); }
  static T sin(const T& v) { return lawson::sin(v); }
};

template <class Ops>
using Pt = BasicS3Point<typename Ops::T>;

template <class Ops>
typename Ops::T dot(const Pt<Ops>& a, const Pt<Ops>& b) {
  typename Ops::T s = a.x[0] * b.x[0];
  for (int k = 1; k < 4; ++k) s = s + a.x[static_cast<std::size_t>(k)] * b.x[static_cast<std::size_t>(k)];
  return s;
}

// cos(a) P + sin(a) Q for points given in polar form e^{i phi}
template <class Ops>
Pt<Ops> combo(const Ops& ops, double a, const typename Ops::T& phiz, const typename Ops::T& phiw) {
  const auto ca = Ops::cos(ops.num(a));
  const auto sa = Ops::sin(ops.num(a));
  return Pt<Ops>::from_complex(ca * Ops::cos(phiz), ca * Ops::sin(phiz), sa * Ops::cos(phiw), sa * Ops::sin(phiw));
}

template <class Ops>
std::array<Pt<Ops>, 4> extra_vertices(const Ops& ops, const TriangulationParams& p) {
  const auto pi = ops.pi();
  const auto pi4 = pi / 4;
  const auto pi6 = pi / 6;
  const auto zero = ops.num(0.0);
  Pt<Ops> M = combo(ops, p.s0, pi4, pi6);
  Pt<Ops> A = combo(ops, p.s1, pi4, ops.num(p.t1));
  // B = cos(s2) (0, e^{i pi/6}) + sin(s2) (e^{i t2}, 0)
  const auto c2 = Ops::cos(ops.num(p.s2));
  const auto s2 = Ops::sin(ops.num(p.s2));
  const auto t2 = ops.num(p.t2);
  Pt<Ops> B = Pt<Ops>::from_complex(s2 * Ops::cos(t2), s2 * Ops::sin(t2), c2 * Ops::cos(pi6), c2 * Ops::sin(pi6));
  // C = (0, cos s3, sin s3, 0) in real coordinates, on the edge Q1 P2
  Pt<Ops> C = Pt<Ops>::from_complex(zero, Ops::cos(ops.num(p.s3)), Ops::sin(ops.num(p.s3)), zero);
  return {M, A, B, C};
}

template <class Ops>
typename Ops::T angle(const Ops& ops, const Pt<Ops>& A, const Pt<Ops>& B, const Pt<Ops>& C) {
  const auto one = ops.num(1.0);
  const auto ab = dot<Ops>(A, B);
  const auto ac = dot<Ops>(A, C);
  const auto bc = dot<Ops>(B, C);
  // <B - ab A, C - ac A> = bc - ab ac
  const auto num = bc - ab * ac;
  const auto den = Ops::sqrt((one - ab * ab) * (one - ac * ac));
  return Ops::acos(num / den);
}

template <class Ops>
typename Ops::T area(const Ops& ops, const Pt<Ops>& A, const Pt<Ops>& B, const Pt<Ops>& C) {
  return angle(ops, A, B, C) + angle(ops, B, C, A) + angle(ops, C, A, B) - ops.pi();
}

template <class Ops>
typename Ops::T total(const Ops& ops, const TriangulationParams& p) {
  const auto [M, A, B, C] = extra_vertices(ops, p);
  const auto zero = ops.num(0.0);
  const auto one = ops.num(1.0);
  const Pt<Ops> p2 = Pt<Ops>::from_complex(zero, one, zero, zero);
  const Pt<Ops> q1 = Pt<Ops>::from_complex(zero, zero, one, zero);
  const auto sum = area(ops, q1, A, C) + area(ops, A, M, B) + area(ops, A, B, C) + area(ops, B, C, p2);
  return sum * ops.num(48.0);
}

void check_params(const TriangulationParams& p) {
  for (double v : p.as_array())
    if (!(v >= 0.0 && v < kPi / 2)) throw DomainError("triangulation parameters must lie in [0, pi/2)");
}

std::array<double, 6> clamp_box(std::array<double, 6> a) {
  for (auto& v : a) v = std::clamp(v, 0.0, kBoxHi);
  return a;
}

}  // namespace

TriangulationParams TriangulationParams::paper() { return {1.13641, 1.27441, 0.848594, 1.06941, 0.134219, 1.4755}; }
TriangulationParams TriangulationParams::center() { return {kPi / 4, kPi / 4, kPi / 4, kPi / 4, kPi / 4, kPi / 4}; }

S3Point P1() { return S3Point::from_complex(1, 0, 0, 0); }
S3Point P2() { return S3Point::from_complex(0, 1, 0, 0); }
S3Point Q1() { return S3Point::from_complex(0, 0, 1, 0); }
S3Point Q2() { return S3Point::from_complex(0, 0, 0.5, std::sqrt(3.0) / 2); }

Vertices vertices(const TriangulationParams& p) {
  check_params(p);
  const auto v = extra_vertices(DoubleOps{}, p);
  return {v[0], v[1], v[2], v[3]};
}

double vertex_angle(const S3Point& A, const S3Point& B, const S3Point& C) {
  const double ab = dot<DoubleOps>(A, B);
  const double ac = dot<DoubleOps>(A, C);
  if (1.0 - std::fabs(ab) < 1e-14 || 1.0 - std::fabs(ac) < 1e-14)
    throw AntipodalOrEqual("vertex_angle: the geodesic from A is not unique");
  return angle(DoubleOps{}, A, B, C);
}

double triangle_area(const S3Point& A, const S3Point& B, const S3Point& C) {
  try {
    const double a = vertex_angle(A, B, C) + vertex_angle(B, C, A) + vertex_angle(C, A, B) - kPi;
    return std::max(a, 0.0);
  } catch (const AntipodalOrEqual& e) {
    throw DegenerateTriangle(std::string("triangle_area: ") + e.what());
  }
}

double bound(const TriangulationParams& p) {
  check_params(p);
  const auto v = vertices(p);
  return 48.0 * (triangle_area(Q1(), v.A, v.C) + triangle_area(v.A, v.M, v.B) + triangle_area(v.A, v.B, v.C) +
                 triangle_area(v.B, v.C, P2()));
}

CertifiedComplex certified_bound(const TriangulationParams& p, mpfr_prec_t prec) {
  check_params(p);
  return total(DiscOps{prec}, p).real_part();
}

Genus2Result optimize_bound(const TriangulationParams& seed, const Genus2Options& options) {
  using Vec = std::array<double, 6>;
  int evals = 0;
  auto f = [&](const Vec& x) {
    ++evals;
    try {
      return bound(TriangulationParams::from_array(clamp_box(x)));
    } catch (const LawsonError&) {
      return 1e9;
    }
  };

  std::mt19937 rng(options.seed);
  std::uniform_real_distribution<double> jitter(-0.2, 0.2);
  Vec best = clamp_box(seed.as_array());
  double fbest = f(best);

  for (int restart = 0; restart < std::max(1, options.restarts); ++restart) {
    // simplex around the incumbent; later restarts also perturb it
    Vec x0 = best;
    if (restart > 0 && restart % 2 == 0)
      for (auto& v : x0) v += jitter(rng);
    x0 = clamp_box(x0);
    const double step = restart == 0 ? 0.25 : 0.1;
    std::array<Vec, 7> s;
    std::array<double, 7> fs{};
    s[0] = x0;
    for (int i = 0; i < 6; ++i) {
      s[static_cast<std::size_t>(i + 1)] = x0;
      double& c = s[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(i)];
      c = c + step <= kBoxHi ? c + step : c - step;
    }
    for (std::size_t i = 0; i < 7; ++i) fs[i] = f(s[i]);

    for (int it = 0; it < options.max_iterations; ++it) {
      std::array<std::size_t, 7> idx{};
      std::iota(idx.begin(), idx.end(), 0);
      std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
      std::array<Vec, 7> s2;
      std::array<double, 7> f2{};
      for (std::size_t i = 0; i < 7; ++i) {
        s2[i] = s[idx[i]];
        f2[i] = fs[idx[i]];
      }
      s = s2;
      fs = f2;
      if (fs[6] - fs[0] < options.tolerance) break;

      Vec centroid{};
      for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t k = 0; k < 6; ++k) centroid[k] += s[i][k] / 6.0;
      auto along = [&](double coef) {
        Vec r;
        for (std::size_t k = 0; k < 6; ++k) r[k] = centroid[k] + coef * (s[6][k] - centroid[k]);
        return clamp_box(r);
      };
      const Vec xr = along(-1.0);
      const double fr = f(xr);
      if (fr < fs[0]) {
        const Vec xe = along(-2.0);
        const double fe = f(xe);
        if (fe < fr) {
          s[6] = xe;
          fs[6] = fe;
        } else {
          s[6] = xr;
          fs[6] = fr;
        }
      } else if (fr < fs[5]) {
        s[6] = xr;
        fs[6] = fr;
      } else {
        const Vec xc = fr < fs[6] ? along(-0.5) : along(0.5);
        const double fc = f(xc);
        if (fc < std::min(fr, fs[6])) {
          s[6] = xc;
          fs[6] = fc;
        } else {
          for (std::size_t i = 1; i < 7; ++i) {
            for (std::size_t k = 0; k < 6; ++k) s[i][k] = s[0][k] + 0.5 * (s[i][k] - s[0][k]);
            fs[i] = f(s[i]);
          }
        }
      }
    }
    const auto m = static_cast<std::size_t>(std::min_element(fs.begin(), fs.end()) - fs.begin());
    if (fs[m] < fbest) {
      fbest = fs[m];
      best = s[m];
    }
  }

  Genus2Result r;
  r.params = TriangulationParams::from_array(best);
  r.bound = fbest;
  r.certified = certified_bound(r.params);
  r.evaluations = evals;
  return r;
}

}  // namespace lawson
