#include <doctest.h>

#include <cmath>
#include <numbers>

#include "torusspec/spectral.hpp"

using namespace torusspec;

namespace {
constexpr double pi = std::numbers::pi;
constexpr double pi2 = pi * pi;

ConformalMetric cos_metric(int n, double E, bool allow_degenerate = false) {
  return family_eval({TrigPoly::harmonic_cos(n), TrigPoly()}, E,
                     allow_degenerate);
}

double weighted_norm(const EigenMode& mode, const ConformalMetric& m) {
  GridFn a = sample(mode.coefficients, 4096);
  GridFn h4 = m.h4_grid(4096);
  double s = 0.0;
  for (int i = 0; i < 4096; ++i) s += a[i] * a[i] * h4[i];
  return s / 4096;
}

// Reduced l=1 potential of the family h^4 = 1 + E cos(2 pi n t), closed form.
struct FamilyPotential {
  int n;
  double E;
  double w(double t) const { return 1 + E * std::cos(2 * pi * n * t); }
  double w1(double t) const { return -2 * pi * n * E * std::sin(2 * pi * n * t); }
  double w2(double t) const {
    return -4 * pi2 * n * n * E * std::cos(2 * pi * n * t);
  }
  double V(double t) const {
    const double W = w(t), W1 = w1(t), W2 = w2(t);
    return 4 * pi2 - pi * W1 / W - W2 / (4 * W) +
           5.0 / 16.0 * W1 * W1 / (W * W);
  }
};

// Floquet discriminant of -y'' + V y = lam w y over one period, by RK4 on the
// transfer matrix. Periodic eigenvalues satisfy D(lam) = 2. Shares nothing
// with the Galerkin path, so it serves as an independent eigenvalue oracle.
double floquet_discriminant(const FamilyPotential& f, double lam,
                            int steps = 20000) {
  double y[4] = {1, 0, 0, 1};  // columns (y1, y1'), (y2, y2')
  const double h = 1.0 / steps;
  auto rhs = [&](double t, const double* u, double* du) {
    const double q = f.V(t) - lam * f.w(t);
    du[0] = u[1];
    du[1] = q * u[0];
    du[2] = u[3];
    du[3] = q * u[2];
  };
  double k1[4], k2[4], k3[4], k4[4], tmp[4];
  for (int i = 0; i < steps; ++i) {
    const double t = i * h;
    rhs(t, y, k1);
    for (int j = 0; j < 4; ++j) tmp[j] = y[j] + 0.5 * h * k1[j];
    rhs(t + 0.5 * h, tmp, k2);
    for (int j = 0; j < 4; ++j) tmp[j] = y[j] + 0.5 * h * k2[j];
    rhs(t + 0.5 * h, tmp, k3);
    for (int j = 0; j < 4; ++j) tmp[j] = y[j] + h * k3[j];
    rhs(t + h, tmp, k4);
    for (int j = 0; j < 4; ++j)
      y[j] += h / 6.0 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
  }
  return y[0] + y[3];
}
}  // namespace

TEST_CASE("spectral: galerkin matrix of the unit weight is the identity") {
  SymMatrix b = galerkin_matrix(TrigPoly(1.0), 4);
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j)
      CHECK(b(i, j) == doctest::Approx(i == j ? 1.0 : 0.0));
}

TEST_CASE("spectral: galerkin matrix against direct quadrature") {
  // weight with all coefficient types exercised
  TrigPoly w = TrigPoly(1.3) + TrigPoly::harmonic_cos(1, 0.4) +
               TrigPoly::harmonic_sin(2, -0.7) + TrigPoly::harmonic_cos(3, 0.2) +
               TrigPoly::harmonic_sin(1, 0.1);
  const int N = 5;
  SymMatrix b = galerkin_matrix(w, N);

  auto basis_fn = [](int idx, double t) {
    if (idx == 0) return 1.0;
    const int n = (idx + 1) / 2;
    const double r2 = std::sqrt(2.0);
    return idx % 2 == 1 ? r2 * std::cos(2 * pi * n * t)
                        : r2 * std::sin(2 * pi * n * t);
  };
  const int M = 512;
  for (int i = 0; i < 2 * N + 1; ++i)
    for (int j = i; j < 2 * N + 1; ++j) {
      double s = 0.0;
      for (int g = 0; g < M; ++g) {
        const double t = static_cast<double>(g) / M;
        s += w.eval(t) * basis_fn(i, t) * basis_fn(j, t);
      }
      s /= M;
      CHECK(b(i, j) == doctest::Approx(s).epsilon(1e-12));
    }
}

TEST_CASE("spectral: flat k=0 spectrum") {
  auto modes = solve({OperatorKind::laplace, 0, ConformalMetric::flat()}, 5);
  CHECK(std::abs(modes[0].value) < 1e-10);
  CHECK(modes[1].value == doctest::Approx(4 * pi2));
  CHECK(modes[2].value == doctest::Approx(4 * pi2));
  CHECK(modes[3].value == doctest::Approx(16 * pi2));
  CHECK(modes[4].value == doctest::Approx(16 * pi2));
  for (const auto& m : modes) CHECK(m.residual < 1e-8);
}

TEST_CASE("spectral: flat Dirac l=1 ground state is the constant") {
  auto modes = solve({OperatorKind::dirac, 1, ConformalMetric::flat()}, 2);
  CHECK(modes[0].value == doctest::Approx(4 * pi2));
  CHECK(modes[0].positive);
  CHECK(modes[0].coefficients.a(0) == doctest::Approx(1.0));
  CHECK(modes[0].coefficients.norm_l2() == doctest::Approx(1.0));
  CHECK(modes[1].value == doctest::Approx(8 * pi2));
}

TEST_CASE("spectral: dirac assembly matches the closed-form potential") {
  const double E = -0.3;
  const int N = 16;
  ConformalMetric m = cos_metric(2, E);
  auto [k, b] = assemble({OperatorKind::dirac, 1, m, N, 4096});

  SymMatrix k_ref = galerkin_matrix(
      from_samples(mathieu_potential_closed_form(E, 1, 4096), 2 * N), N);
  double scale = k_ref.frobenius();
  for (int n = 1; n <= N; ++n) {
    const double stiff = 4 * pi2 * n * n;
    k_ref.set(2 * n - 1, 2 * n - 1, k_ref(2 * n - 1, 2 * n - 1) + stiff);
    k_ref.set(2 * n, 2 * n, k_ref(2 * n, 2 * n) + stiff);
  }
  for (int i = 0; i < 2 * N + 1; ++i)
    for (int j = 0; j < 2 * N + 1; ++j)
      CHECK(k(i, j) == doctest::Approx(k_ref(i, j)).epsilon(1e-8).scale(scale));
}

TEST_CASE("spectral: l=0 Galerkin eigenvalues match the closed form") {
  for (double E : {-0.5, 0.5}) {
    ConformalMetric m = cos_metric(1, E);
    auto modes = solve({OperatorKind::dirac, 0, m, 48, 4096}, 7);
    CHECK(std::abs(modes[0].value) < 1e-6);
    for (int n = 1; n <= 3; ++n) {
      const double expect = dirac_l0_closed_form(m, n);
      CHECK(modes[2 * n - 1].value == doctest::Approx(expect).epsilon(1e-6));
      CHECK(modes[2 * n].value == doctest::Approx(expect).epsilon(1e-6));
    }
  }
}

TEST_CASE("spectral: l=0 closed form at the degenerate endpoint") {
  // int h^2 = int sqrt(1 - cos 4 pi t) = 2 sqrt(2)/pi, so the n=1 value
  // is pi^4 / 2
  ConformalMetric m = cos_metric(2, -1.0, true);
  CHECK(dirac_l0_closed_form(m, 1, 8192) ==
        doctest::Approx(pi2 * pi2 / 2).epsilon(1e-4));
}

TEST_CASE("spectral: eigenfunction normalization and residual") {
  ConformalMetric m = cos_metric(2, -0.3);
  for (OperatorKind kind : {OperatorKind::laplace, OperatorKind::dirac}) {
    auto modes = solve({kind, 1, m, 32, 4096}, 2);
    for (const auto& mode : modes) {
      CHECK(weighted_norm(mode, m) == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(mode.residual <= 1e-6 * std::abs(mode.value));
    }
  }
}

TEST_CASE("spectral: ground states are sign-definite, excited states are not") {
  ConformalMetric m = cos_metric(2, -0.5);
  auto dirac = solve({OperatorKind::dirac, 1, m, 32, 4096}, 2);
  CHECK(dirac[0].positive);
  CHECK_FALSE(dirac[1].positive);
  // gap above the ground state
  CHECK(dirac[1].value > dirac[0].value + 1e-6);

  auto lap = solve({OperatorKind::laplace, 0, m, 32, 4096}, 2);
  CHECK(std::abs(lap[0].value) < 1e-10 * 4 * pi2);
  CHECK(lap[0].positive);  // kernel mode is constant
}

TEST_CASE("spectral: parity blocks of a symmetric metric") {
  ConformalMetric m = cos_metric(2, -0.3);
  auto odd = solve_k0_parity(m, Parity::odd, 32, 4096, 2);
  auto even = solve_k0_parity(m, Parity::even, 32, 4096, 2);

  // mu1 branch deforms sin(2 pi t) downward, mu2 deforms cos(2 pi t) upward
  CHECK(odd[0].value < 4 * pi2);
  CHECK(std::abs(even[0].value) < 1e-10 * 4 * pi2);
  CHECK(even[1].value > 4 * pi2);

  // linear response +-2 pi^2 E at small E, quadratic residue ~2 pi^2 E^2
  auto ms = cos_metric(2, -0.05);
  CHECK(solve_k0_parity(ms, Parity::odd, 32, 4096, 1)[0].value ==
        doctest::Approx(4 * pi2 + 2 * pi2 * (-0.05)).epsilon(1e-3));
  CHECK(solve_k0_parity(ms, Parity::even, 32, 4096, 2)[1].value ==
        doctest::Approx(4 * pi2 - 2 * pi2 * (-0.05)).epsilon(1e-3));

  // odd eigenfunctions carry sine coefficients only
  for (int n = 0; n <= odd[0].coefficients.degree(); ++n)
    CHECK(std::abs(odd[0].coefficients.a(n)) < 1e-12);

  CHECK_THROWS_AS(solve_k0_parity(ConformalMetric::from_h4(
                      TrigPoly(1.0) + TrigPoly::harmonic_sin(1, 0.3)),
                                  Parity::odd, 16, 4096, 1),
                  MetricNotSymmetric);
}

TEST_CASE("spectral: first positive Laplace eigenvalue") {
  SUBCASE("flat torus") {
    FirstPositive fp = first_positive_laplace(ConformalMetric::flat());
    CHECK(fp.value == doctest::Approx(4 * pi2));
  }
  SUBCASE("Mathieu family at E = -0.3 is led by the odd k=0 branch") {
    FirstPositive fp = first_positive_laplace(cos_metric(2, -0.3));
    CHECK(fp.weight_index == 0);
    CHECK(fp.value < 4 * pi2);
    CHECK(fp.mode.has_value());
    // predominantly the sin(2 pi t) deformation
    CHECK(std::abs(fp.mode->coefficients.b(1)) > 1.0);
  }
  SUBCASE("single-cosine family at E = -0.9 is led by k = +-1") {
    FirstPositive fp = first_positive_laplace(cos_metric(1, -0.9), 64);
    CHECK(fp.weight_index == 1);
    CHECK(fp.value == doctest::Approx(31.09).epsilon(1e-2));
  }
}

TEST_CASE("spectral: first positive Dirac eigenvalue") {
  SUBCASE("flat torus: closed form ties the l = +-1 branch") {
    FirstPositive fp = first_positive_dirac(ConformalMetric::flat());
    CHECK(fp.value == doctest::Approx(4 * pi2));
    CHECK(fp.weight_index == 0);
    CHECK_FALSE(fp.mode.has_value());
  }
  SUBCASE("single-cosine family at E = -0.9 is led by l = +-1") {
    FirstPositive fp = first_positive_dirac(cos_metric(1, -0.9), 96);
    CHECK(fp.weight_index == 1);
    CHECK(fp.value == doctest::Approx(32.681389).epsilon(1e-5));
    // independent Floquet check of the same eigenvalue
    CHECK(std::abs(floquet_discriminant({1, -0.9}, fp.value) - 2.0) < 1e-6);
  }
  SUBCASE("degenerate metrics are rejected") {
    CHECK_THROWS_AS(first_positive_dirac(cos_metric(2, -1.0, true)),
                    DegenerateMetric);
  }
}

TEST_CASE("spectral: l = +1 and l = -1 spectra coincide for symmetric metrics") {
  ConformalMetric m = cos_metric(1, -0.5);
  auto plus = solve({OperatorKind::dirac, 1, m, 48, 4096}, 3);
  auto minus = solve({OperatorKind::dirac, -1, m, 48, 4096}, 3);
  for (int i = 0; i < 3; ++i)
    CHECK(plus[i].value ==
          doctest::Approx(minus[i].value).epsilon(1e-9));
}

TEST_CASE("spectral: Galerkin truncation is converged at moderate deformation") {
  for (double E : {-0.5, 0.5}) {
    ConformalMetric m = cos_metric(2, E);
    auto v32 = solve({OperatorKind::dirac, 1, m, 32, 4096}, 1);
    auto v48 = solve({OperatorKind::dirac, 1, m, 48, 4096}, 1);
    CHECK(std::abs(v48[0].value - v32[0].value) <= 1e-6 * std::abs(v48[0].value));

    auto l32 = solve({OperatorKind::laplace, 1, m, 32, 4096}, 1);
    auto l48 = solve({OperatorKind::laplace, 1, m, 48, 4096}, 1);
    CHECK(std::abs(l48[0].value - l32[0].value) <= 1e-6 * std::abs(l48[0].value));
  }
}

TEST_CASE("spectral: higher k modes never beat the first positive eigenvalue") {
  for (double E : {-0.5, 0.5}) {
    ConformalMetric m = cos_metric(1, E);
    const double fp = first_positive_laplace(m).value;
    for (int k = 2; k <= 4; ++k) {
      auto modes = solve({OperatorKind::laplace, k, m, 32, 4096}, 1);
      CHECK(modes[0].value > fp);
    }
  }
}

TEST_CASE("spectral: volume inequalities") {
  for (double E : {-0.9, -0.5, 0.5}) {
    ConformalMetric m = cos_metric(2, E);
    const double vol = m.volume();
    // Dirac side: lambda^2 vol >= 4 pi^2 (Cauchy-Schwarz, equality iff flat)
    CHECK(dirac_l0_closed_form(m, 1) * vol >= 4 * pi2 - 1e-8);
    // Laplace side: mu(g; k=1) vol <= 4 pi^2
    auto k1 = solve({OperatorKind::laplace, 1, m, 48, 4096}, 1);
    CHECK(k1[0].value * vol <= 4 * pi2 + 1e-8);
  }
}

TEST_CASE("spectral: hamiltonian minimum spectrum") {
  CHECK(hamiltonian_min_spec(ConformalMetric::flat(), 1) ==
        doctest::Approx(4 * pi2));
  CHECK(std::abs(hamiltonian_min_spec(ConformalMetric::flat(), 0)) < 1e-10);
  // strictly positive for l != 0 even at strong deformation
  CHECK(hamiltonian_min_spec(cos_metric(2, -0.9), 1, 64) > 0.0);
  CHECK(hamiltonian_min_spec(cos_metric(2, -0.9), -1, 64) > 0.0);
}

TEST_CASE("spectral: Mathieu normal-form parameters") {
  MathieuParameters p = mathieu_parameters(4 * pi2, -1.0, 0);
  CHECK(p.a == doctest::Approx(1.0));
  CHECK(p.q == doctest::Approx(-1.0 / 16.0));
  MathieuParameters pk = mathieu_parameters(8 * pi2, 0.5, 1);
  CHECK(pk.a == doctest::Approx(1.0));
  CHECK(pk.q == doctest::Approx(pi2 / (16 * pi2) * 0.5 * 8 / 4));  // E mu / 64 pi^2
}

TEST_CASE("spectral: squared ground state expansion") {
  SUBCASE("flat") {
    auto modes = solve({OperatorKind::dirac, 1, ConformalMetric::flat()}, 1);
    TrigPoly sq = spinor_square_expansion(modes[0], 8);
    CHECK(sq.mean() == doctest::Approx(1.0));
    CHECK(sq.max_abs_coeff() == doctest::Approx(1.0));  // constant
  }
  SUBCASE("sign-changing modes are rejected") {
    auto modes = solve({OperatorKind::dirac, 1, cos_metric(2, -0.5)}, 2);
    CHECK_THROWS_AS(spinor_square_expansion(modes[1], 8), NotPositiveMode);
  }
  SUBCASE("strong Mathieu deformation: squared ground state harmonics") {
    auto modes = solve({OperatorKind::dirac, 1, cos_metric(2, -0.9), 64, 4096}, 1);
    TrigPoly sq = spinor_square_expansion(modes[0], 16);
    CHECK(sq.mean() == 1.0);
    CHECK(sq.b(2) == doctest::Approx(0.4366).epsilon(1e-3));
    CHECK(sq.a(2) == doctest::Approx(0.1717).epsilon(1e-3));
    CHECK(sq.b(4) == doctest::Approx(0.0797).epsilon(1e-3));
    CHECK(sq.a(4) == doctest::Approx(0.1814).epsilon(1e-3));

    auto m95 = solve({OperatorKind::dirac, 1, cos_metric(2, -0.95), 96, 4096}, 1);
    TrigPoly sq95 = spinor_square_expansion(m95[0], 16);
    CHECK(sq95.b(2) == doctest::Approx(0.44962).epsilon(1e-3));
    CHECK(sq95.a(2) == doctest::Approx(0.25835).epsilon(1e-3));
  }
}

TEST_CASE("spectral: tracked branches of the Mathieu family") {
  SpectralFunctions f = spectral_functions(cos_metric(2, -0.3), 48);
  CHECK(f.mu1 < f.mu3);
  CHECK(f.mu3 < f.mu2);
  CHECK(f.dirac_ok);
  CHECK(f.lam23sq == doctest::Approx(39.4829313893).epsilon(1e-9));
  CHECK(std::abs(floquet_discriminant({2, -0.3}, f.lam23sq) - 2.0) < 1e-6);
  CHECK(f.lam1sq == doctest::Approx(dirac_l0_closed_form(cos_metric(2, -0.3), 1)));
  CHECK(f.max_residual < 1e-6 * f.mu2);

  SpectralFunctions fd = spectral_functions(cos_metric(2, -1.0, true), 48);
  CHECK_FALSE(fd.dirac_ok);
  CHECK(std::isnan(fd.lam23sq));
  CHECK(fd.mu1 > 0.0);
}
