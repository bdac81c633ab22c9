#include "hexband/spectral_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hexband/errors.hpp"

namespace hexband {

namespace {

constexpr long double kTwoPiL = 2.0L * kPiL;

long double reduce_long(long double x) noexcept {
  long double r = std::fmod(x, kTwoPiL);
  if (r > kPiL) r -= kTwoPiL;
  if (r <= -kPiL) r += kTwoPiL;
  return r;
}

void require_positive_finite(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(name) + " must be positive and finite");
  }
}

Complex unit(long double angle) {
  const long double r = reduce_long(angle);
  return {static_cast<double>(std::cos(r)), static_cast<double>(std::sin(r))};
}

}  // namespace

HexGeometry::HexGeometry(double a, double b, double c) : a_(a), b_(b), c_(c) {
  require_positive_finite(a, "edge length a");
  require_positive_finite(b, "edge length b");
  require_positive_finite(c, "edge length c");
}

double HexGeometry::ell_min() const noexcept { return std::min({a_, b_, c_}); }

VertexCoupling::VertexCoupling(double value) : alpha(value) {
  if (!std::isfinite(value)) throw DomainError("coupling alpha must be finite");
}

EnergyPoint EnergyPoint::positive(double k) {
  require_positive_finite(k, "k");
  return EnergyPoint(Positive{k});
}

EnergyPoint EnergyPoint::negative(double kappa) {
  require_positive_finite(kappa, "kappa");
  return EnergyPoint(Negative{kappa});
}

EnergyPoint EnergyPoint::from_energy(double energy) {
  if (!std::isfinite(energy)) throw DomainError("energy must be finite");
  if (energy > 0.0) return positive(std::sqrt(energy));
  if (energy < 0.0) return negative(std::sqrt(-energy));
  return zero();
}

double EnergyPoint::energy() const noexcept {
  if (const auto* p = std::get_if<Positive>(&branch_)) return p->k * p->k;
  if (const auto* n = std::get_if<Negative>(&branch_)) return -n->kappa * n->kappa;
  return 0.0;
}

double EnergyPoint::parameter() const noexcept {
  if (const auto* p = std::get_if<Positive>(&branch_)) return p->k;
  if (const auto* n = std::get_if<Negative>(&branch_)) return n->kappa;
  return 0.0;
}

FloquetPhase::FloquetPhase(double theta1, double theta2)
    : theta1_(wrap(theta1)), theta2_(wrap(theta2)) {}

double FloquetPhase::wrap(double theta) {
  if (!std::isfinite(theta)) throw DomainError("Floquet phase must be finite");
  double r = std::remainder(theta, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

double reduce_angle(long double x) noexcept { return static_cast<double>(reduce_long(x)); }

double sin_of(double length, double k) noexcept {
  return static_cast<double>(std::sin(reduce_long(static_cast<long double>(length) * k)));
}

double cos_of(double length, double k) noexcept {
  return static_cast<double>(std::cos(reduce_long(static_cast<long double>(length) * k)));
}

SineTriple sine_triple(const HexGeometry& geom, double k, double dirichlet_tol) {
  require_positive_finite(k, "k");
  require_positive_finite(dirichlet_tol, "dirichlet_tol");
  SineTriple out;
  const auto lengths = geom.lengths();
  for (std::size_t i = 0; i < 3; ++i) {
    out.values[i] = sin_of(lengths[i], k);
    const double scale = std::max(1.0, lengths[i] * k);
    out.vanishes[i] = std::abs(out.values[i]) <= dirichlet_tol * scale;
  }
  return out;
}

double dispersion(const HexGeometry& geom, const VertexCoupling& coupling, double k,
                  double dirichlet_tol) {
  const SineTriple s = sine_triple(geom, k, dirichlet_tol);
  if (s.any_vanishes()) throw DirichletPointError("dispersion evaluated at a Dirichlet point", k);
  const auto lengths = geom.lengths();
  double sum = coupling.alpha / k;
  for (std::size_t i = 0; i < 3; ++i) sum += cos_of(lengths[i], k) / s.values[i];
  return sum;
}

double dispersion_negative(const HexGeometry& geom, const VertexCoupling& coupling,
                           double kappa) {
  require_positive_finite(kappa, "kappa");
  double sum = coupling.alpha / kappa;
  for (double ell : geom.lengths()) sum += 1.0 / std::tanh(ell * kappa);
  return sum;
}

MMatrix assemble_m_matrix(const HexGeometry& geom, const VertexCoupling& coupling, double k,
                          const FloquetPhase& phase, double dirichlet_tol) {
  const SineTriple s = sine_triple(geom, k, dirichlet_tol);
  if (s.vanishes[0]) throw DirichletPointError("assemble_m_matrix requires sin(ak) != 0", k);

  const long double ak = static_cast<long double>(geom.a()) * k;
  const long double bk = static_cast<long double>(geom.b()) * k;
  const long double ck = static_cast<long double>(geom.c()) * k;
  const long double t1 = phase.theta1();
  const long double t2 = phase.theta2();
  const double sa = s.s_a();
  const double ak_ratio = coupling.alpha / k;
  const Complex i{0.0, 1.0};

  MMatrix m;
  m(0, 0) = 1.0;
  m(0, 1) = 1.0;
  m(0, 2) = -1.0;
  m(0, 3) = -1.0;

  m(1, 0) = unit(bk - t1);
  m(1, 1) = unit(-bk - t1);
  m(1, 2) = -unit(ck - t2);
  m(1, 3) = -unit(-ck - t2);

  for (int j = 0; j < 2; ++j) {
    const long double sigma = (j == 0) ? 1.0L : -1.0L;
    const Complex floquet_b = unit(sigma * bk - t1);
    m(2, j) = (-unit(-sigma * ak) + floquet_b) / sa - ak_ratio;
    m(3, j) = (-unit(sigma * ak + sigma * bk - t1) + 1.0) / sa - ak_ratio * floquet_b;
  }
  m(2, 2) = i;
  m(2, 3) = -i;
  m(3, 2) = -i * unit(ck - t2);
  m(3, 3) = i * unit(-ck - t2);
  return m;
}

double det_bracket(const HexGeometry& geom, const VertexCoupling& coupling, double k,
                   const FloquetPhase& phase) {
  const double sa = sin_of(geom.a(), k), ca = cos_of(geom.a(), k);
  const double sb = sin_of(geom.b(), k), cb = cos_of(geom.b(), k);
  const double sc = sin_of(geom.c(), k), cc = cos_of(geom.c(), k);
  const double t1 = phase.theta1(), t2 = phase.theta2();
  const double r = coupling.alpha / k;

  return 2.0 * sa * cb * cc + 2.0 * ca * sb * cc + 2.0 * ca * cb * sc - 3.0 * sa * sb * sc
         - 2.0 * sa * std::cos(t1 - t2) - 2.0 * sc * std::cos(t1) - 2.0 * sb * std::cos(t2)
         + 2.0 * r * (ca * sb * sc + sa * cb * sc + sa * sb * cc) + r * r * sa * sb * sc;
}

Complex det_m_closed_form(const HexGeometry& geom, const VertexCoupling& coupling, double k,
                          const FloquetPhase& phase, double dirichlet_tol) {
  const SineTriple s = sine_triple(geom, k, dirichlet_tol);
  if (s.vanishes[0]) throw DirichletPointError("det_m_closed_form requires sin(ak) != 0", k);
  const double bracket = det_bracket(geom, coupling, k, phase);
  const Complex phase_factor = std::polar(1.0, -(phase.theta1() + phase.theta2()));
  return -4.0 * bracket * phase_factor / s.s_a();
}

}  // namespace hexband
