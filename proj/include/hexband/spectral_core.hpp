#pragma once

// Data model of the dilated honeycomb cell and the secular determinant of its
// Floquet-reduced cell problem.

#include <array>
#include <complex>
#include <variant>

namespace hexband {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr long double kPiL = 3.141592653589793238462643383279502884L;

/// Default relative Dirichlet guard: |sin(ℓk)| <= tol * max(1, ℓk).
inline constexpr double kDefaultDirichletTol = 1e-9;

/// Edge lengths of the hexagonal cell: two antipodal edges of each length a, b, c.
class HexGeometry {
 public:
  HexGeometry(double a, double b, double c);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double c() const noexcept { return c_; }
  double ell_min() const noexcept;
  std::array<double, 3> lengths() const noexcept { return {a_, b_, c_}; }

  bool operator==(const HexGeometry&) const = default;

 private:
  double a_, b_, c_;
};

/// δ-coupling strength at every vertex; alpha = 0 is Kirchhoff.
struct VertexCoupling {
  double alpha = 0.0;

  explicit VertexCoupling(double value = 0.0);
  bool kirchhoff() const noexcept { return alpha == 0.0; }
};

/// Spectral parameter on one of the three branches: E = k², E = 0 or E = -κ².
class EnergyPoint {
 public:
  struct Positive { double k; };
  struct Zero {};
  struct Negative { double kappa; };

  static EnergyPoint positive(double k);
  static EnergyPoint zero() { return EnergyPoint(Zero{}); }
  static EnergyPoint negative(double kappa);
  static EnergyPoint from_energy(double energy);

  double energy() const noexcept;
  bool is_positive() const noexcept { return std::holds_alternative<Positive>(branch_); }
  bool is_zero() const noexcept { return std::holds_alternative<Zero>(branch_); }
  bool is_negative() const noexcept { return std::holds_alternative<Negative>(branch_); }
  /// k on the positive branch, κ on the negative branch, 0 at E = 0.
  double parameter() const noexcept;

  const std::variant<Positive, Zero, Negative>& branch() const noexcept { return branch_; }

 private:
  template <class B>
  explicit EnergyPoint(B b) : branch_(b) {}
  std::variant<Positive, Zero, Negative> branch_;
};

/// Floquet quasi-momenta, wrapped into (-π, π].
class FloquetPhase {
 public:
  FloquetPhase() = default;
  FloquetPhase(double theta1, double theta2);

  double theta1() const noexcept { return theta1_; }
  double theta2() const noexcept { return theta2_; }

  static double wrap(double theta);

 private:
  double theta1_ = 0.0;
  double theta2_ = 0.0;
};

/// The 4×4 system acting on (C2+, C2-, C3+, C3-).
struct MMatrix {
  std::array<std::array<Complex, 4>, 4> entries{};

  Complex& operator()(int row, int col) { return entries[row][col]; }
  const Complex& operator()(int row, int col) const { return entries[row][col]; }
};

struct SineTriple {
  std::array<double, 3> values{};      // sin(ak), sin(bk), sin(ck)
  std::array<bool, 3> vanishes{};      // flagged as numerically zero

  double s_a() const noexcept { return values[0]; }
  double s_b() const noexcept { return values[1]; }
  double s_c() const noexcept { return values[2]; }
  bool any_vanishes() const noexcept { return vanishes[0] || vanishes[1] || vanishes[2]; }
  bool all_vanish() const noexcept { return vanishes[0] && vanishes[1] && vanishes[2]; }
};

// Trigonometric kernels with the argument reduced modulo 2π in long double.
double reduce_angle(long double x) noexcept;
double sin_of(double length, double k) noexcept;
double cos_of(double length, double k) noexcept;

/// sin(ℓk) for the three edges; flagged when |sin ℓk| <= tol * max(1, ℓk).
SineTriple sine_triple(const HexGeometry& geom, double k,
                       double dirichlet_tol = kDefaultDirichletTol);

/// D(k) = cot ak + cot bk + cot ck + α/k. Throws DirichletPointError at Dirichlet points.
double dispersion(const HexGeometry& geom, const VertexCoupling& coupling, double k,
                  double dirichlet_tol = kDefaultDirichletTol);

/// D⁻(κ) = coth aκ + coth bκ + coth cκ + α/κ.
double dispersion_negative(const HexGeometry& geom, const VertexCoupling& coupling,
                           double kappa);

MMatrix assemble_m_matrix(const HexGeometry& geom, const VertexCoupling& coupling, double k,
                          const FloquetPhase& phase,
                          double dirichlet_tol = kDefaultDirichletTol);

/// Real bracket of the closed-form determinant, det(M) = -4·bracket·e^{-i(θ1+θ2)}/sin(ak).
double det_bracket(const HexGeometry& geom, const VertexCoupling& coupling, double k,
                   const FloquetPhase& phase);

Complex det_m_closed_form(const HexGeometry& geom, const VertexCoupling& coupling, double k,
                          const FloquetPhase& phase,
                          double dirichlet_tol = kDefaultDirichletTol);

}  // namespace hexband
