#include <doctest.h>

#include <cmath>
#include <complex>
#include <filesystem>
#include <random>

#include "lawson/mpl.hpp"
#include "test_support.hpp"

using lawson::CertifiedComplex;
using lawson::MzvIndex;
using testing_support::num;

namespace {

const lawson::Precision kP{40, true};

CertifiedComplex pi() { return CertifiedComplex::pi(kP.bits()); }
CertifiedComplex log2() { return CertifiedComplex::log2(kP.bits()); }
CertifiedComplex z3() { return CertifiedComplex::zeta_ui(3, kP.bits()); }

CertifiedComplex mzv(const char* s) { return lawson::alternating_mzv(MzvIndex::parse(s), kP); }

}  // namespace

TEST_CASE("index parsing and words") {
  MzvIndex i = MzvIndex::parse("1b,2,2b");
  CHECK(i.depth() == 3);
  CHECK(i.weight() == 5);
  CHECK(i.to_string() == "1b,2,2b");
  CHECK_FALSE(MzvIndex::parse("2,1").convergent());
  CHECK(MzvIndex::parse("1b").convergent());
  // zeta(2) = -I(eta_1 eta_0)
  CHECK(lawson::mzv_word(MzvIndex::parse("2")) == std::vector<int>{1, 0});
  // round trip through the word dictionary
  for (const char* s : {"1b", "2", "1b,2b", "2b,1b", "3,1b,2", "1,1,1b", "2b,2,2b,1b"}) {
    MzvIndex idx = MzvIndex::parse(s);
    auto [sign, back] = lawson::word_to_mzv(lawson::mzv_word(idx));
    CHECK(back == idx);
    CHECK(sign == (idx.depth() % 2 == 0 ? 1 : -1));
  }
}

TEST_CASE("truncated polylogarithms") {
  const mpfr_prec_t p = kP.bits();
  lawson::MplArgs a1{{1}, {CertifiedComplex::rational(1, 2, p)}};
  CertifiedComplex li = lawson::truncated_mpl(a1, 60);
  const double tb = lawson::tail_bound({1}, 0.5, 60);
  CHECK(li.inflated(tb).overlaps(log2()));

  lawson::MplArgs a2{{2}, {CertifiedComplex(1)}};
  CertifiedComplex s = lawson::truncated_mpl(a2, 10);
  CertifiedComplex direct;
  for (long k = 1; k <= 10; ++k) direct += CertifiedComplex(1).rounded_to(p) / (k * k);
  CHECK(s.overlaps(direct));
}

TEST_CASE("fast recursion equals the nested sum, 200 random cases") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  std::uniform_int_distribution<int> dd(1, 3), aa(1, 3), nn(1, 50);
  int bad = 0;
  for (int it = 0; it < 200; ++it) {
    lawson::MplArgs args;
    const int d = dd(rng);
    for (int j = 0; j < d; ++j) {
      double x = u(rng), y = u(rng);
      const double m = std::hypot(x, y);
      if (m > 0.9) { x *= 0.9 / m; y *= 0.9 / m; }
      args.a.push_back(aa(rng));
      args.x.push_back(CertifiedComplex::from_double(x, y, 128));
    }
    const long N = d == 3 ? std::min(nn(rng), 30) : nn(rng);
    if (!lawson::truncated_mpl(args, N).overlaps(lawson::truncated_mpl_naive(args, N))) ++bad;
  }
  CHECK(bad == 0);
}

TEST_CASE("tail bound") {
  CHECK(lawson::tail_bound({1}, 0.5, 10) == doctest::Approx(std::pow(0.5, 10) / 10).epsilon(1e-10));
  CHECK(lawson::tail_bound({2, 1}, 1e-30, 10) < 1e-290);
  CHECK_THROWS_AS(lawson::tail_bound({1}, 1.0, 10), lawson::AlphaOutOfRange);

  // |Li_{2N} - Li_N| <= tail(N) on random geometric arguments
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  int bad = 0;
  for (int it = 0; it < 100; ++it) {
    lawson::MplArgs args;
    const int d = 1 + it % 3;
    double alpha = 0.0;
    std::vector<std::complex<double>> xs;
    for (int j = 0; j < d; ++j) {
      xs.emplace_back(u(rng), u(rng));
      args.a.push_back(1 + (it / 3) % 2);
    }
    for (int j = 0; j < d; ++j) {
      std::complex<double> delta = 1.0;
      for (int i = j; i < d; ++i) delta *= xs[static_cast<std::size_t>(i)];
      alpha = std::max(alpha, std::abs(delta));
    }
    for (auto& x : xs) args.x.push_back(CertifiedComplex::from_double(x.real(), x.imag(), 128));
    alpha = std::min(alpha * (1 + 1e-12), 0.99);
    const long N = 20;
    CertifiedComplex diff = lawson::truncated_mpl(args, 2 * N) - lawson::truncated_mpl(args, N);
    if (lawson::disc_abs_interval(diff).lo > lawson::tail_bound(args.a, alpha, N)) ++bad;
  }
  CHECK(bad == 0);
}

TEST_CASE("convergence rate") {
  std::vector<CertifiedComplex> poles{CertifiedComplex(0), CertifiedComplex(1), CertifiedComplex(-1)};
  CHECK(lawson::convergence_rate(poles, CertifiedComplex(0), CertifiedComplex::rational(1, 2, 128)) ==
        doctest::Approx(0.5));
  CertifiedComplex r1 = CertifiedComplex::rational(3, 10, 128) + CertifiedComplex::rational(-9, 16, 128).mul_i();
  CertifiedComplex r2 = CertifiedComplex::rational(1, 2, 128) + CertifiedComplex::rational(-5, 16, 128).mul_i();
  CHECK(lawson::convergence_rate(poles, r2, r1) == doctest::Approx(0.542984).epsilon(1e-6));
  // |-i - r1| / |-i| = sqrt(0.3^2 + 0.4375^2)
  CHECK(lawson::convergence_rate(poles, CertifiedComplex(0, -1), r1) ==
        doctest::Approx(std::hypot(0.3, 0.4375)).epsilon(1e-12));
  CHECK(lawson::convergence_rate(poles, CertifiedComplex(1), CertifiedComplex(1)) == 0.0);
}

TEST_CASE("simple iterated integrals") {
  lawson::IteratedWord w1{{CertifiedComplex(-1)}, CertifiedComplex(0), CertifiedComplex(1), {}};
  CHECK(lawson::evaluate_iterated_integral(w1, 0.5, kP).overlaps(log2()));
  lawson::IteratedWord w2{{CertifiedComplex(1), CertifiedComplex(0)}, CertifiedComplex(0), CertifiedComplex(1), {}};
  CertifiedComplex z2 = pi() * pi() / 6;
  CHECK(lawson::evaluate_iterated_integral(w2, 0.5, kP).overlaps(-z2));
  // eta_0 as first letter from 0 diverges
  lawson::IteratedWord w3{{CertifiedComplex(0), CertifiedComplex(1)}, CertifiedComplex(0), CertifiedComplex(1), {}};
  CHECK_THROWS_AS(lawson::evaluate_iterated_integral(w3, 0.5, kP), lawson::NonIntegrableEndpoint);
  // pole in the middle of the path
  lawson::IteratedWord w4{{CertifiedComplex::rational(1, 2, 64)}, CertifiedComplex(0), CertifiedComplex(1), {}};
  CHECK_THROWS_AS(lawson::evaluate_iterated_integral(w4, 0.5, kP), lawson::PoleOnPath);
}

TEST_CASE("subdivision invariance and path reversal, 50 random words") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::uniform_int_distribution<int> len(1, 4), pick(0, 3);
  const lawson::Precision p{30, true};
  int bad_sub = 0, bad_rev = 0;
  for (int it = 0; it < 50; ++it) {
    std::vector<CertifiedComplex> alphabet;
    while (alphabet.size() < 4) {
      const double x = u(rng), y = u(rng);
      if (std::fabs(y) < 0.2) continue;  // keep away from the real segment [0,1]
      alphabet.push_back(CertifiedComplex::from_double(x, y, 64));
    }
    lawson::IteratedWord w;
    const int n = len(rng);
    for (int k = 0; k < n; ++k) w.poles.push_back(alphabet[static_cast<std::size_t>(pick(rng))]);
    w.start = CertifiedComplex(0);
    w.end = CertifiedComplex(1);
    CertifiedComplex a = lawson::evaluate_iterated_integral(w, 0.5, p);
    CertifiedComplex b = lawson::evaluate_iterated_integral(w, 0.3, p);
    if (!a.overlaps(b)) ++bad_sub;
    lawson::IteratedWord r;
    r.poles.assign(w.poles.rbegin(), w.poles.rend());
    r.start = w.end;
    r.end = w.start;
    CertifiedComplex c = lawson::evaluate_iterated_integral(r, 0.5, p);
    if (n % 2) c = -c;
    if (!a.overlaps(c)) ++bad_rev;
  }
  CHECK(bad_sub == 0);
  CHECK(bad_rev == 0);
}

TEST_CASE("alternating zeta values against closed forms") {
  CertifiedComplex l = log2(), p2 = pi() * pi(), z = z3();
  CHECK(mzv("2b").overlaps(-p2 / 12));
  CHECK(mzv("1b,1b").overlaps(l * l / 2 - p2 / 12));
  CHECK(mzv("2,1b").overlaps(p2 * l / 12 - z / 4));
  CHECK(mzv("3").overlaps(z));
  CHECK(mzv("3b").overlaps(-z * 3 / 4));
  CHECK(mzv("1b").radius() < 1e-40);
  CHECK_THROWS_AS(mzv("2,1"), lawson::DivergentIndex);
}

TEST_CASE("stuffle and shuffle identities") {
  CertifiedComplex lhs1 = mzv("1b") * mzv("2b");
  CertifiedComplex rhs1 = mzv("1b,2b") + mzv("2b,1b") + mzv("3");
  CHECK(lhs1.overlaps(rhs1));
  CertifiedComplex lhs2 = mzv("1b") * mzv("2");
  CertifiedComplex rhs2 = mzv("1b,2") + mzv("1b,2b") + mzv("2b,1b");
  CHECK(lhs2.overlaps(rhs2));
  CertifiedComplex a = mzv("1b");
  CertifiedComplex rhs3 = mzv("1b,1b,1b") * 6 + (mzv("1b,2") + mzv("2,1b")) * 3 + mzv("3b");
  CHECK((a * a * a).overlaps(rhs3));
}

TEST_CASE("naive partial sums") {
  CHECK(lawson::mzv_naive_sum(MzvIndex{}, 10).overlaps(CertifiedComplex(1)));
  CertifiedComplex s = lawson::mzv_naive_sum(MzvIndex::parse("1b"), 1000000, 96);
  CHECK(testing_support::dist(s, -log2()) < 1e-6);
  CertifiedComplex t = lawson::mzv_naive_sum(MzvIndex::parse("3"), 1000, 96);
  CHECK(testing_support::dist(t, z3()) < 1e-6);
  CHECK(testing_support::dist(t, z3()) > 1e-7);
}

TEST_CASE("batch evaluation with a persistent cache") {
  const std::string dir = "mzv-cache-test";
  std::filesystem::remove_all(dir);
  std::vector<MzvIndex> idx{MzvIndex::parse("1b,2"), MzvIndex::parse("2b,1b"), MzvIndex::parse("1b,1b,1b")};
  std::vector<CertifiedComplex> first;
  {
    lawson::MzvCache cache(dir);
    first = lawson::alternating_mzv_batch(idx, kP, &cache);
    CHECK(cache.size() == 3);
  }
  lawson::MzvCache again(dir);
  CHECK(again.size() == 3);
  CertifiedComplex v;
  REQUIRE(again.lookup(idx[1], kP.digits, v));
  CHECK(v.contains(first[1]));
  CHECK(first[1].contains(v));
  std::filesystem::remove_all(dir);
}
