#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "hexband/errors.hpp"
#include "hexband/oracle.hpp"
#include "hexband/spectral_core.hpp"

using namespace hexband;

namespace {

// Laplace expansion along the first row; independent of the LU path in the oracle.
Complex det3(const Complex m[3][3]) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Complex cofactor_det(const MMatrix& m) {
  Complex total = 0.0;
  for (int col = 0; col < 4; ++col) {
    Complex minor[3][3];
    for (int r = 1; r < 4; ++r) {
      int cc = 0;
      for (int c = 0; c < 4; ++c) {
        if (c == col) continue;
        minor[r - 1][cc++] = m(r, c);
      }
    }
    const double sign = (col % 2 == 0) ? 1.0 : -1.0;
    total += sign * m(0, col) * det3(minor);
  }
  return total;
}

}  // namespace

TEST_CASE("HexGeometry validates lengths") {
  CHECK_THROWS_AS(HexGeometry(0.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(HexGeometry(1.0, -2.0, 1.0), DomainError);
  CHECK_THROWS_AS(HexGeometry(1.0, 1.0, std::nan("")), DomainError);
  CHECK_THROWS_AS(HexGeometry(1.0, 1.0, std::numeric_limits<double>::infinity()), DomainError);
  CHECK(HexGeometry(2.0, 0.5, 1.5).ell_min() == 0.5);
  CHECK(HexGeometry(1.0, 1.0, 1.0).ell_min() == 1.0);
  CHECK_THROWS_AS(VertexCoupling{std::numeric_limits<double>::infinity()}, DomainError);
  CHECK(VertexCoupling(0.0).kirchhoff());
}

TEST_CASE("EnergyPoint round trip") {
  for (double k : {0.1, 1.0, 7.3, 123.0}) {
    const auto e = EnergyPoint::positive(k);
    CHECK(e.energy() == doctest::Approx(k * k));
    const auto back = EnergyPoint::from_energy(e.energy());
    CHECK(back.is_positive());
    CHECK(back.parameter() == doctest::Approx(k).epsilon(1e-15));

    const auto n = EnergyPoint::negative(k);
    CHECK(n.energy() == doctest::Approx(-k * k));
    const auto nb = EnergyPoint::from_energy(n.energy());
    CHECK(nb.is_negative());
    CHECK(nb.parameter() == doctest::Approx(k).epsilon(1e-15));
  }
  CHECK(EnergyPoint::from_energy(0.0).is_zero());
  CHECK(EnergyPoint::zero().energy() == 0.0);
  CHECK_THROWS_AS(EnergyPoint::positive(0.0), DomainError);
  CHECK_THROWS_AS(EnergyPoint::negative(-1.0), DomainError);
}

TEST_CASE("FloquetPhase wraps into (-pi, pi]") {
  CHECK(FloquetPhase::wrap(kPi) == doctest::Approx(kPi));
  CHECK(FloquetPhase::wrap(-kPi) == doctest::Approx(kPi));
  CHECK(FloquetPhase::wrap(3 * kPi) == doctest::Approx(kPi));
  CHECK(FloquetPhase::wrap(2 * kPi + 0.25) == doctest::Approx(0.25));
  CHECK(FloquetPhase::wrap(-2.5) == doctest::Approx(-2.5));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int i = 0; i < 1000; ++i) {
    const double t = FloquetPhase::wrap(u(rng));
    CHECK(t > -kPi);
    CHECK(t <= kPi);
  }
}

TEST_CASE("sine_triple") {
  const auto s1 = sine_triple(HexGeometry(1, 1, 1), kPi / 2);
  CHECK(s1.s_a() == doctest::Approx(1.0));
  CHECK(s1.s_b() == doctest::Approx(1.0));
  CHECK(s1.s_c() == doctest::Approx(1.0));
  CHECK_FALSE(s1.any_vanishes());

  const auto s2 = sine_triple(HexGeometry(1, 2, 3), kPi);
  CHECK(s2.all_vanish());
  CHECK(std::abs(s2.s_a()) < 1e-12);

  const auto s3 = sine_triple(HexGeometry(1, std::sqrt(2.0), 1), kPi);
  CHECK(s3.vanishes[0]);
  CHECK_FALSE(s3.vanishes[1]);
  CHECK(s3.vanishes[2]);
  CHECK(s3.s_b() == doctest::Approx(std::sin(std::sqrt(2.0L) * 3.141592653589793238L)).epsilon(1e-12));
  CHECK(s3.s_b() == doctest::Approx(-0.9639).epsilon(1e-4));

  // The guard scales with ℓk, so large multiples of π are still caught.
  const auto far = sine_triple(HexGeometry(1, 1, 1), 1000.0 * kPi);
  CHECK(far.all_vanish());
  for (double v : far.values) CHECK(std::abs(v) <= 1.0);
}

TEST_CASE("dispersion") {
  const HexGeometry eq(1, 1, 1);
  CHECK(dispersion(eq, VertexCoupling(0), kPi / 2) == doctest::Approx(0.0));
  CHECK(dispersion(eq, VertexCoupling(3), kPi / 2) == doctest::Approx(6.0 / kPi));
  CHECK(dispersion(eq, VertexCoupling(3), kPi / 2) == doctest::Approx(1.9099).epsilon(1e-4));

  const long double ref = 1.0L / std::tan(1.0L) + 1.0L / std::tan(2.0L) + 1.0L / std::tan(3.0L) + 1.0L;
  const double d = dispersion(HexGeometry(1, 2, 3), VertexCoupling(1), 1.0);
  CHECK(d == doctest::Approx(static_cast<double>(ref)).epsilon(1e-13));
  CHECK(d == doctest::Approx(-5.8309).epsilon(1e-4));

  CHECK_THROWS_AS(dispersion(eq, VertexCoupling(0), kPi), DirichletPointError);
  try {
    dispersion(HexGeometry(1, 2, 3), VertexCoupling(0), 2 * kPi);
  } catch (const DirichletPointError& e) {
    CHECK(e.k() == doctest::Approx(2 * kPi));
  }
}

TEST_CASE("dispersion is pi-periodic for the equilateral Kirchhoff cell") {
  const HexGeometry eq(1, 1, 1);
  for (double k : {0.3, 1.1, 2.0, 2.9, 4.4}) {
    CHECK(dispersion(eq, VertexCoupling(0), k + kPi) == doctest::Approx(dispersion(eq, VertexCoupling(0), k)));
  }
}

TEST_CASE("dispersion_negative") {
  const HexGeometry eq(1, 1, 1);
  CHECK(dispersion_negative(eq, VertexCoupling(0), 40.0) == doctest::Approx(3.0));
  const double kappa = 1e-4;
  CHECK(kappa * dispersion_negative(eq, VertexCoupling(-6), kappa) == doctest::Approx(-3.0).epsilon(1e-6));
  const double ref = 3.0 / std::tanh(1.0) - 3.0;
  CHECK(dispersion_negative(eq, VertexCoupling(-3), 1.0) == doctest::Approx(ref));
  CHECK(dispersion_negative(eq, VertexCoupling(-3), 1.0) == doctest::Approx(0.9390).epsilon(1e-4));
  CHECK_THROWS_AS(dispersion_negative(eq, VertexCoupling(0), 0.0), DomainError);
}

TEST_CASE("M matrix structure") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> len(0.5, 3.0), kk(0.2, 20.0), th(-kPi, kPi), al(-5, 5);
  for (int i = 0; i < 50; ++i) {
    const HexGeometry g(len(rng), len(rng), len(rng));
    const double k = kk(rng);
    if (std::abs(std::sin(g.a() * k)) < 1e-3) continue;
    const FloquetPhase ph(th(rng), th(rng));
    const MMatrix m = assemble_m_matrix(g, VertexCoupling(al(rng)), k, ph);
    CHECK(m(0, 0) == Complex(1, 0));
    CHECK(m(0, 1) == Complex(1, 0));
    CHECK(m(0, 2) == Complex(-1, 0));
    CHECK(m(0, 3) == Complex(-1, 0));
    CHECK(m(2, 2) == Complex(0, 1));
    CHECK(m(2, 3) == Complex(0, -1));
    const Complex I(0, 1);
    const Complex e43 = -I * std::exp(I * (g.c() * k - ph.theta2()));
    const Complex e44 = I * std::exp(I * (-g.c() * k - ph.theta2()));
    CHECK(std::abs(m(3, 2) - e43) < 1e-12);
    CHECK(std::abs(m(3, 3) - e44) < 1e-12);
  }
  CHECK_THROWS_AS(assemble_m_matrix(HexGeometry(1, 1, 1), VertexCoupling(0), kPi, FloquetPhase()),
                  DirichletPointError);
}

TEST_CASE("determinant at the reference point") {
  const HexGeometry eq(1, 1, 1);
  const MMatrix m = assemble_m_matrix(eq, VertexCoupling(0), 1.0, FloquetPhase(0, 0));
  const Complex closed = det_m_closed_form(eq, VertexCoupling(0), 1.0, FloquetPhase(0, 0));
  const Complex lu = det_numeric(m);
  const Complex laplace = cofactor_det(m);
  CHECK(std::abs(closed - laplace) / (1.0 + std::abs(laplace)) < 1e-12);
  CHECK(std::abs(lu - laplace) / (1.0 + std::abs(laplace)) < 1e-12);
  CHECK(closed.real() == doctest::Approx(25.49).epsilon(1e-3));
  CHECK(std::abs(closed.imag()) < 1e-12);
}

TEST_CASE("determinant scaling near a Dirichlet point") {
  const double eps = 1e-3;
  auto ratio = [&](const HexGeometry& g, double alpha) {
    const VertexCoupling c(alpha);
    const Complex d1 = det_m_closed_form(g, c, 2 * kPi + eps, FloquetPhase(0, 0));
    const Complex d2 = det_m_closed_form(g, c, 2 * kPi + eps / 2, FloquetPhase(0, 0));
    const Complex r1 = cofactor_det(assemble_m_matrix(g, c, 2 * kPi + eps, FloquetPhase(0, 0)));
    const Complex r2 = cofactor_det(assemble_m_matrix(g, c, 2 * kPi + eps / 2, FloquetPhase(0, 0)));
    CHECK(std::abs(d1 - r1) / (1.0 + std::abs(r1)) < 1e-9);
    CHECK(std::abs(d2 - r2) / (1.0 + std::abs(r2)) < 1e-9);
    return std::abs(d2) / std::abs(d1);
  };
  // Only sin(ak) vanishes: the bracket stays finite and 1/sin(ak) dominates.
  const HexGeometry lone(1, std::sqrt(2.0), std::sqrt(2.0));
  CHECK(ratio(lone, 0.0) == doctest::Approx(2.0).epsilon(1e-2));
  CHECK(ratio(lone, 1.0) == doctest::Approx(2.0).epsilon(1e-2));
  // Equilateral cell: all three sines vanish at 2π and the bracket vanishes with them.
  const HexGeometry eq(1, 1, 1);
  CHECK(ratio(eq, 1.0) == doctest::Approx(0.5).epsilon(1e-2));
  CHECK(ratio(eq, 0.0) == doctest::Approx(0.25).epsilon(1e-2));
}

TEST_CASE("phase factor leaves |det| unchanged when the bracket is") {
  const HexGeometry g(1, 1.3, 0.7);
  const VertexCoupling c(1.5);
  const double k = 2.2;
  // The bracket depends on θ1, θ2 only through cos θ1, cos θ2, cos(θ1-θ2); flipping both signs keeps it.
  const Complex d1 = det_m_closed_form(g, c, k, FloquetPhase(0.4, -1.1));
  const Complex d2 = det_m_closed_form(g, c, k, FloquetPhase(-0.4, 1.1));
  CHECK(std::abs(d1) == doctest::Approx(std::abs(d2)));
}

TEST_CASE("closed-form determinant matches numeric determinant on 1000 random tuples") {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> len(0.5, 3.0), al(-5, 5), kk(0.1, 30.0), th(-kPi, kPi);
  int done = 0;
  double worst = 0.0;
  while (done < 1000) {
    const HexGeometry g(len(rng), len(rng), len(rng));
    const VertexCoupling c(al(rng));
    const double k = kk(rng);
    const FloquetPhase ph(th(rng), th(rng));
    if (std::abs(std::sin(g.a() * k)) <= 1e-3) continue;
    const Complex closed = det_m_closed_form(g, c, k, ph);
    const Complex ref = cofactor_det(assemble_m_matrix(g, c, k, ph));
    worst = std::max(worst, std::abs(closed - ref) / (1.0 + std::abs(ref)));
    ++done;
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("bracket symmetric under b<->c with theta1<->theta2") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> len(0.5, 3.0), al(-5, 5), kk(0.1, 30.0), th(-kPi, kPi);
  for (int i = 0; i < 500; ++i) {
    const double a = len(rng), b = len(rng), c = len(rng), k = kk(rng), t1 = th(rng), t2 = th(rng);
    const VertexCoupling cp(al(rng));
    const double lhs = det_bracket(HexGeometry(a, b, c), cp, k, FloquetPhase(t1, t2));
    const double rhs = det_bracket(HexGeometry(a, c, b), cp, k, FloquetPhase(t2, t1));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("trig kernels reduce large arguments") {
  const double k = 1e6 * kPi + 0.5;
  const long double ref = std::sin(static_cast<long double>(0.5));
  CHECK(sin_of(2.0, k) == doctest::Approx(std::sin(1.0)).epsilon(1e-6));
  CHECK(sin_of(1.0, 1e6 * kPi + 0.5) == doctest::Approx(static_cast<double>(ref)).epsilon(1e-6));
  CHECK(std::abs(reduce_angle(8 * kPiL)) < 1e-15);
}
