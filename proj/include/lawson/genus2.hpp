// Triangulated upper bound for the area of the genus-2 Lawson surface.
//
// The fundamental 4-gon with vertices P1, P2, Q1, Q2 is filled by geodesic
// triangles through the extra vertices M, A, B, C; 48 copies of the four
// triangles Q1AC, AMB, ABC, BCP2 cover the surface.
#pragma once

#include <array>
#include <complex>

#include "lawson/cdisc.hpp"

namespace lawson {

/// Point of S^3 in C^2, stored as the real 4-vector (Re z, Im z, Re w, Im w).
template <class T>
struct BasicS3Point {
  std::array<T, 4> x{};

  static BasicS3Point from_complex(const T& zr, const T& zi, const T& wr, const T& wi) {
    return BasicS3Point{{zr, zi, wr, wi}};
  }
};

using S3Point = BasicS3Point<double>;
using CertifiedS3Point = BasicS3Point<CertifiedComplex>;

struct TriangulationParams {
  double s0 = 0, s1 = 0, s2 = 0, s3 = 0, t1 = 0, t2 = 0;

  static TriangulationParams paper();   // the printed minimizer
  static TriangulationParams center();  // all parameters pi/4
  std::array<double, 6> as_array() const { return {s0, s1, s2, s3, t1, t2}; }
  static TriangulationParams from_array(const std::array<double, 6>& a) { return {a[0], a[1], a[2], a[3], a[4], a[5]}; }
};

/// The four fixed vertices.
S3Point P1();
S3Point P2();
S3Point Q1();
S3Point Q2();

struct Vertices {
  S3Point M, A, B, C;
};
Vertices vertices(const TriangulationParams& p);

/// Angle at A between the geodesics AB and AC.  Throws AntipodalOrEqual.
double vertex_angle(const S3Point& A, const S3Point& B, const S3Point& C);
/// alpha + beta + gamma - pi.  Throws DegenerateTriangle for collinear input.
double triangle_area(const S3Point& A, const S3Point& B, const S3Point& C);

/// 48 [Area(Q1AC) + Area(AMB) + Area(ABC) + Area(BCP2)].
double bound(const TriangulationParams& p);
/// The same sum in disc arithmetic.
CertifiedComplex certified_bound(const TriangulationParams& p, mpfr_prec_t prec = 128);

struct Genus2Options {
  int restarts = 8;
  int max_iterations = 4000;
  double tolerance = 1e-12;
  unsigned seed = 12345;
};

struct Genus2Result {
  TriangulationParams params;
  double bound = 0.0;
  CertifiedComplex certified;  // re-evaluation of the returned parameters
  int evaluations = 0;
};

/// Nelder-Mead over the box [0, pi/2)^6 with restarts.
Genus2Result optimize_bound(const TriangulationParams& seed, const Genus2Options& options = {});

}  // namespace lawson
