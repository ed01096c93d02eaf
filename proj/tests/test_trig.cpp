#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "torusspec/trig.hpp"

using namespace torusspec;

namespace {

constexpr double pi = std::numbers::pi;

TrigPoly random_poly(std::mt19937& rng, int degree) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::vector<double> a(degree + 1), b(degree + 1);
  for (int n = 0; n <= degree; ++n) {
    a[n] = coeff(rng);
    b[n] = n == 0 ? 0.0 : coeff(rng);
  }
  return TrigPoly(std::move(a), std::move(b));
}

double max_coeff_diff(const TrigPoly& p, const TrigPoly& q) {
  double m = 0.0;
  const int N = std::max(p.degree(), q.degree());
  for (int n = 0; n <= N; ++n) {
    m = std::max(m, std::abs(p.a(n) - q.a(n)));
    m = std::max(m, std::abs(p.b(n) - q.b(n)));
  }
  return m;
}

}  // namespace

TEST_CASE("trig: evaluation of simple polynomials") {
  TrigPoly p = TrigPoly(1.0) + TrigPoly::harmonic_cos(1);
  CHECK(p.eval(0.0) == doctest::Approx(2.0));
  CHECK(p.eval(0.5) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(p.eval(0.25) == doctest::Approx(1.0));
  TrigPoly s = TrigPoly::harmonic_sin(1);
  CHECK(s.eval(0.25) == doctest::Approx(1.0));
  CHECK(s.eval(1.25) == doctest::Approx(1.0));  // periodic
}

TEST_CASE("trig: derivative") {
  TrigPoly s = TrigPoly::harmonic_sin(1);
  TrigPoly d = s.derivative();
  CHECK(d.a(1) == doctest::Approx(2 * pi));
  CHECK(d.b(1) == 0.0);

  // second derivative of cos(4 pi t) is -16 pi^2 cos(4 pi t)
  TrigPoly c2 = TrigPoly::harmonic_cos(2);
  TrigPoly dd = c2.derivative().derivative();
  CHECK(dd.a(2) == doctest::Approx(-16 * pi * pi));
  CHECK(dd.a(1) == 0.0);
}

TEST_CASE("trig: integrate returns the mean") {
  TrigPoly p = TrigPoly(0.75) + TrigPoly::harmonic_cos(3, 2.0) +
               TrigPoly::harmonic_sin(1, -1.0);
  CHECK(integrate(p) == 0.75);
  CHECK(integrate(TrigPoly::harmonic_sin(2)) == 0.0);
}

TEST_CASE("trig: exact products") {
  // (1 + c/2)^2 = 9/8 + cos + cos(2.)/8
  TrigPoly p = TrigPoly(1.0) + TrigPoly::harmonic_cos(1, 0.5);
  TrigPoly sq = p * p;
  CHECK(sq.degree() == 2);
  CHECK(sq.a(0) == doctest::Approx(9.0 / 8.0));
  CHECK(sq.a(1) == doctest::Approx(1.0));
  CHECK(sq.a(2) == doctest::Approx(1.0 / 8.0));

  // sin * cos = sin(2.)/2
  TrigPoly sc = TrigPoly::harmonic_sin(1) * TrigPoly::harmonic_cos(1);
  CHECK(sc.a(0) == doctest::Approx(0.0));
  CHECK(sc.b(2) == doctest::Approx(0.5));
  CHECK(sc.b(1) == doctest::Approx(0.0));

  // sin(2 pi t) * sin(4 pi t) = (cos(2 pi t) - cos(6 pi t)) / 2
  TrigPoly s12 = TrigPoly::harmonic_sin(1) * TrigPoly::harmonic_sin(2);
  CHECK(s12.a(1) == doctest::Approx(0.5));
  CHECK(s12.a(3) == doctest::Approx(-0.5));
  CHECK(s12.a(0) == doctest::Approx(0.0));
}

TEST_CASE("trig: product agrees with pointwise multiplication") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 5; ++trial) {
    TrigPoly p = random_poly(rng, 7);
    TrigPoly q = random_poly(rng, 5);
    TrigPoly pq = p * q;
    CHECK(pq.degree() == 12);
    for (double t : {0.0, 0.113, 0.25, 0.5, 0.77}) {
      CHECK(pq.eval(t) == doctest::Approx(p.eval(t) * q.eval(t)).epsilon(1e-12));
    }
  }
}

TEST_CASE("trig: Parseval identity for the product mean") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    TrigPoly p = random_poly(rng, 9);
    TrigPoly q = random_poly(rng, 9);
    double direct = integrate(p * q);
    double parseval = p.a(0) * q.a(0);
    for (int n = 1; n <= 9; ++n)
      parseval += 0.5 * (p.a(n) * q.a(n) + p.b(n) * q.b(n));
    CHECK(direct == doctest::Approx(parseval).epsilon(1e-12));
    CHECK(integrate(p * p) ==
          doctest::Approx(p.norm_l2() * p.norm_l2()).epsilon(1e-12));
  }
}

TEST_CASE("trig: sampling and quadrature") {
  // quadrature is exact for trig polynomials of degree < M
  std::mt19937 rng(3);
  TrigPoly p = random_poly(rng, 6);
  GridFn g = sample(p, 16);
  CHECK(quadrature(g) == doctest::Approx(integrate(p)).epsilon(1e-13));

  GridFn c = sample(TrigPoly::harmonic_cos(1), 16);
  CHECK(std::abs(quadrature(c)) < 1e-14);

  GridFn ones = sample(TrigPoly(1.0), 8);
  CHECK(quadrature(ones) == 1.0);
}

TEST_CASE("trig: quadrature of a kinked integrand") {
  // int_0^1 sqrt(1 - cos(4 pi t)) dt = 2 sqrt(2) / pi
  GridFn g = sample_fn(4096, [](double t) {
    return std::sqrt(std::max(0.0, 1.0 - std::cos(4 * pi * t)));
  });
  CHECK(quadrature(g) ==
        doctest::Approx(2.0 * std::sqrt(2.0) / pi).epsilon(1e-4));
}

TEST_CASE("trig: from_samples recovers exact polynomials") {
  std::mt19937 rng(11);
  TrigPoly p = random_poly(rng, 8);

  SUBCASE("power of two grid") {
    TrigPoly r = from_samples(sample(p, 64), 8);
    CHECK(max_coeff_diff(p, r) < 1e-12);
  }
  SUBCASE("minimal odd grid, M = 2N+1") {
    TrigPoly r = from_samples(sample(p, 17), 8);
    CHECK(max_coeff_diff(p, r) < 1e-12);
  }
  SUBCASE("undersampled grid is rejected") {
    CHECK_THROWS_AS(from_samples(sample(p, 16), 8), UndersampledGrid);
  }
}

TEST_CASE("trig: from_samples of a smooth non-polynomial") {
  GridFn g = sample_fn(4096, [](double t) {
    return std::sqrt(1.0 - 0.5 * std::cos(4 * pi * t));
  });
  TrigPoly p = from_samples(g, 32);
  for (int j = 0; j < 64; ++j) {
    double t = j / 64.0;
    CHECK(p.eval(t) ==
          doctest::Approx(std::sqrt(1.0 - 0.5 * std::cos(4 * pi * t)))
              .epsilon(1e-6));
  }
}

TEST_CASE("trig: periodic Poisson solve") {
  constexpr double four_pi_sq = 4 * pi * pi;

  SUBCASE("pure second derivative, omega = 0") {
    TrigPoly f = TrigPoly::harmonic_cos(2);
    TrigPoly c = solve_poisson_periodic(f, 0.0);
    CHECK(c.a(2) == doctest::Approx(-1.0 / (16 * pi * pi)));
    CHECK(c.mean() == 0.0);
    TrigPoly check = c.derivative().derivative();
    CHECK(max_coeff_diff(check, f) < 1e-12);
  }

  SUBCASE("mean forcing violates solvability at omega = 0") {
    TrigPoly f = TrigPoly(3.0) + TrigPoly::harmonic_cos(2);
    CHECK_THROWS_AS(solve_poisson_periodic(f, 0.0), SolvabilityViolated);
  }

  SUBCASE("omega^2 = 4 pi^2 with non-resonant forcing") {
    TrigPoly f = TrigPoly::harmonic_sin(2);
    TrigPoly c = solve_poisson_periodic(f, four_pi_sq);
    CHECK(c.b(2) == doctest::Approx(-1.0 / (12 * pi * pi)));
    // kernel modes stay zero
    CHECK(c.a(1) == 0.0);
    CHECK(c.b(1) == 0.0);
    TrigPoly check = c.derivative().derivative() + four_pi_sq * c;
    CHECK(max_coeff_diff(check, f) < 1e-12);
  }

  SUBCASE("resonant forcing at omega^2 = 4 pi^2") {
    TrigPoly f = TrigPoly::harmonic_sin(1);
    CHECK_THROWS_AS(solve_poisson_periodic(f, four_pi_sq), SolvabilityViolated);
  }

  SUBCASE("round trip on random admissible forcings") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 4; ++trial) {
      TrigPoly f = random_poly(rng, 12);
      // zero the kernel components for omega = 0
      std::vector<double> a(13), b(13);
      for (int n = 0; n <= 12; ++n) { a[n] = f.a(n); b[n] = f.b(n); }
      a[0] = 0.0;
      TrigPoly f0(std::move(a), std::move(b));
      TrigPoly c = solve_poisson_periodic(f0, 0.0);
      CHECK(max_coeff_diff(c.derivative().derivative(), f0) < 1e-10);
    }
  }
}

TEST_CASE("trig: symmetry defect") {
  CHECK(TrigPoly::harmonic_cos(3).symmetry_defect() == 0.0);
  CHECK(TrigPoly::harmonic_sin(2, 0.25).symmetry_defect() ==
        doctest::Approx(0.5));
}
