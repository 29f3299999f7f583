#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nhdyn/errors.hpp"
#include "nhdyn/model.hpp"

#include <cmath>
#include <fstream>
#include <random>

using namespace nhdyn;

TEST_CASE("polar form of constant coefficients") {
  const CoeffSample s = eval_coeffs(constant_coefficients(1.0, 0.2, 0.2), 3.7);
  CHECK(s.polar.mod_omega == 1.0);
  CHECK(s.polar.arg_omega == 0.0);
  CHECK(s.polar.mod_alpha == doctest::Approx(0.2));
  CHECK(s.polar.arg_alpha == 0.0);
  CHECK(s.polar.mod_beta == doctest::Approx(0.2));

  const PolarCoeffs p = to_polar({cplx(0, 1), 0.0, 0.0});
  CHECK(p.mod_omega == doctest::Approx(1.0));
  CHECK(p.arg_omega == doctest::Approx(pi / 2));
  CHECK(p.arg_alpha == 0.0);
}

TEST_CASE("polar form round trip") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 200; ++k) {
    const CoeffValues v{cplx(u(rng), u(rng)), cplx(u(rng), u(rng)), cplx(u(rng), u(rng))};
    const PolarCoeffs p = to_polar(v);
    CHECK(std::abs(std::polar(p.mod_omega, p.arg_omega) - v.omega) <= 1e-14 * std::abs(v.omega));
    CHECK(std::abs(std::polar(p.mod_alpha, p.arg_alpha) - v.alpha) <= 1e-14 * std::abs(v.alpha));
    CHECK(std::abs(std::polar(p.mod_beta, p.arg_beta) - v.beta) <= 1e-14 * std::abs(v.beta));
  }
}

TEST_CASE("sinusoid profile") {
  const TimeProfile a = SinusoidProfile{0.05, 2.0, 0.0, 0.2};
  CHECK(std::abs(evaluate(a, pi / 4) - cplx(0.25)) < 1e-15);
}

TEST_CASE("table profile") {
  std::vector<double> t{0.0, 1.0, 2.0, 3.0};
  std::vector<cplx> v{cplx(0, 0), cplx(1, -1), cplx(4, -4), cplx(9, -9)};
  const TableProfile lin(t, v, Interpolation::linear);
  CHECK(std::abs(lin(1.5) - cplx(2.5, -2.5)) < 1e-15);
  const TableProfile cub(t, v, Interpolation::cubic);
  for (double x : t) CHECK(std::abs(cub(x) - v[static_cast<std::size_t>(x)]) < 1e-14);
  CHECK_THROWS_AS(evaluate(TimeProfile{cub}, 3.5), DomainError);
  CHECK_THROWS_AS(cub(-0.1), DomainError);
  CHECK_THROWS(TableProfile({0.0, 0.0, 1.0}, {0.0, 1.0, 2.0}));
}

TEST_CASE("table from CSV") {
  const TableProfile p = load_table_csv(NHDYN_TEST_DATA_DIR "/omega_table.csv");
  CHECK(p.t_min() == 0.0);
  CHECK(std::abs(p(p.t_min()) - p.values().front()) == 0.0);
  try {
    load_table_csv("/nonexistent/omega.csv");
    FAIL("expected an error");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find("/nonexistent/omega.csv") != std::string::npos);
  }
}

TEST_CASE("Hamiltonian matrix") {
  const Representation r = build_su2_rep(0.5);
  const cplx w(0.7, 0.1), a(0.3, -0.2), b(-0.4, 0.5);
  const Matrix h = h_matrix(CoeffValues{w, a, b}, r);
  Matrix expected(2, 2);
  expected << w, 2.0 * b, 2.0 * a, -w;
  CHECK(max_abs(h - expected) < 1e-15);

  const Representation r3 = build_su2_rep(1.5);
  const Matrix diag = h_matrix(CoeffValues{1.3, 0.0, 0.0}, r3);
  CHECK(max_abs(Matrix(diag - Matrix(diag.diagonal().asDiagonal()))) == 0.0);

  const Representation f = build_su11_boson_rep(12);
  const cplx al(0.1, 0.07);
  const Matrix herm = h_matrix(CoeffValues{0.8, al, std::conj(al)}, f);
  CHECK(max_abs(herm - herm.adjoint()) < 1e-14);
}
