#include <doctest.h>

#include <cmath>
#include <random>

#include "lawson/cdisc.hpp"
#include "test_support.hpp"

using lawson::CertifiedComplex;
using testing_support::num;

TEST_CASE("exact integer arithmetic keeps zero radius") {
  CertifiedComplex a(1), b(2);
  CertifiedComplex p = a * b;
  CHECK(p.radius() == 0.0);
  CHECK(p.re().to_double() == 2.0);
  CertifiedComplex z;
  CertifiedComplex s = z + num("0.3", "-1.25");
  CHECK(s.contains(num("0.3", "-1.25")));
}

TEST_CASE("division by a disc containing zero throws") {
  CertifiedComplex one = CertifiedComplex(1).inflated(0.1);
  CertifiedComplex den = CertifiedComplex(1).inflated(0.6);
  CHECK_NOTHROW(one / CertifiedComplex(3));
  CertifiedComplex den2 = CertifiedComplex(1).inflated(1.5);
  CHECK_THROWS_AS(one / den2, lawson::DivisorContainsZero);
  // |c| = 1 > 0.6, so this divisor is admissible
  CHECK_NOTHROW(one / den);
}

TEST_CASE("elementary functions on exact inputs") {
  const mpfr_prec_t p = 200;
  CertifiedComplex l = lawson::log(CertifiedComplex(1));
  CHECK(l.contains_zero());
  CertifiedComplex ipi = CertifiedComplex::pi(p).mul_i();
  CertifiedComplex e = lawson::exp(ipi);
  CHECK(e.contains(CertifiedComplex(-1)));
  CHECK(e.radius() < 1e-55);
  CertifiedComplex a = lawson::abs(CertifiedComplex(3, 4));
  CHECK(a.contains(CertifiedComplex(5)));
  CertifiedComplex s = lawson::sqrt(CertifiedComplex(2).rounded_to(p));
  CHECK((s * s).contains(CertifiedComplex(2)));
  CertifiedComplex ac = lawson::acos(CertifiedComplex::rational(1, 2, p));
  CHECK((ac * 3).overlaps(CertifiedComplex::pi(p)));
  CertifiedComplex at = lawson::atan(CertifiedComplex(1).rounded_to(p));
  CHECK((at * 4).overlaps(CertifiedComplex::pi(p)));
  CHECK_THROWS_AS(lawson::log(CertifiedComplex(-1)), lawson::BranchCutViolation);
  CertifiedComplex lm = lawson::log(CertifiedComplex(-1).rounded_to(p), lawson::LogBranch::positive_real);
  CHECK(lm.overlaps(ipi));
  CHECK_THROWS_AS(lawson::log(CertifiedComplex(2).rounded_to(p), lawson::LogBranch::positive_real),
                  lawson::BranchCutViolation);
  CHECK_THROWS_AS(lawson::acos(CertifiedComplex(1, 1)), lawson::DomainError);
}

TEST_CASE("disc_abs_interval") {
  auto a = lawson::disc_abs_interval(CertifiedComplex().inflated(0.5));
  CHECK(a.lo == 0.0);
  CHECK(a.hi >= 0.5);
  CHECK(a.hi < 0.5 + 1e-15);
  auto b = lawson::disc_abs_interval(CertifiedComplex(3).inflated(1.0));
  CHECK(b.lo <= 2.0);
  CHECK(b.lo > 2.0 - 1e-15);
  CHECK(b.hi >= 4.0);
  auto c = lawson::disc_abs_interval(CertifiedComplex(0, 1));
  CHECK(c.lo <= 1.0);
  CHECK(c.hi >= 1.0);
}

namespace {

CertifiedComplex random_disc(std::mt19937_64& rng, double rmax) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_real_distribution<double> r(0.0, rmax);
  return CertifiedComplex::from_double(u(rng), u(rng), 64).inflated(r(rng));
}

// a random point of the disc z, represented exactly at 128 bits
CertifiedComplex random_point(std::mt19937_64& rng, const CertifiedComplex& z) {
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  CertifiedComplex off = CertifiedComplex::from_double(u(rng) * z.radius(), u(rng) * z.radius(), 128);
  CertifiedComplex c(z.re(), z.im());
  return (c.rounded_to(128) + off).with_certified(true);
}

}  // namespace

TEST_CASE("containment under doubled precision, 10^4 random operand pairs") {
  std::mt19937_64 rng(12345);
  int failures = 0;
  for (int it = 0; it < 10000; ++it) {
    const bool exact = it % 2 == 0;
    CertifiedComplex a = random_disc(rng, exact ? 0.0 : 1e-3);
    CertifiedComplex b = random_disc(rng, exact ? 0.0 : 1e-3);
    CertifiedComplex pa = exact ? a.rounded_to(128) : random_point(rng, a);
    CertifiedComplex pb = exact ? b.rounded_to(128) : random_point(rng, b);
    auto check = [&](const CertifiedComplex& lo, const CertifiedComplex& hi) {
      CertifiedComplex point(hi.re(), hi.im());
      if (!lo.inflated(hi.radius()).contains(point)) ++failures;
    };
    switch (it % 8) {
      case 0: check(a + b, pa + pb); break;
      case 1: check(a - b, pa - pb); break;
      case 2: check(a * b, pa * pb); break;
      case 3:
        if (!b.contains_zero()) check(a / b, pa / pb);
        break;
      case 4: check(lawson::exp(a), lawson::exp(pa)); break;
      case 5: check(lawson::sin(a), lawson::sin(pa)); break;
      case 6:
        if (!a.contains_zero() && a.re().sign() > 0) {
          check(lawson::log(a), lawson::log(pa));
          check(lawson::sqrt(a), lawson::sqrt(pa));
        }
        break;
      case 7: check(lawson::cos(a), lawson::cos(pa)); break;
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("raising the precision does not enlarge the radius") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 200; ++it) {
    CertifiedComplex a = random_disc(rng, 0.0);
    CertifiedComplex b = random_disc(rng, 0.0);
    if (b.contains_zero()) continue;
    auto expr = [](const CertifiedComplex& x, const CertifiedComplex& y) {
      return lawson::exp(x * y) / y + x * x;
    };
    CertifiedComplex lo = expr(a.rounded_to(100), b.rounded_to(100));
    CertifiedComplex hi = expr(a.rounded_to(200), b.rounded_to(200));
    CHECK(hi.radius() <= lo.radius() + lo.re().ulp() + lo.im().ulp());
  }
}

TEST_CASE("uncertified mode drops radii") {
  CertifiedComplex a = CertifiedComplex::pi(100).with_certified(false);
  CertifiedComplex b = a * a / CertifiedComplex(7);
  CHECK(b.radius() == 0.0);
  CHECK_FALSE(b.certified());
}
