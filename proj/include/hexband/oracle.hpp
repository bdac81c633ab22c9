#pragma once

// Brute-force reference evaluations over the Floquet phase torus. Slow on purpose.

#include "hexband/band_engine.hpp"
#include "hexband/spectral_core.hpp"

namespace hexband {

/// n points per θ axis at θ = -π + 2πj/n (j = 1..n), then `refine_rounds` passes of
/// golden-section line searches around the best grid point.
struct GridSpec {
  std::size_t n = 1024;
  std::size_t refine_rounds = 2;

  GridSpec() = default;
  GridSpec(std::size_t points, std::size_t rounds);
};

struct Extrema {
  double min = 0.0;
  double max = 0.0;
};

/// Extrema of the right-hand side of the positive spectral condition over the phase grid.
Extrema rhs_extrema_grid(const HexGeometry& geom, double k, const GridSpec& grid);
/// Same for the hyperbolic right-hand side at E = -κ².
Extrema rhs_extrema_grid_negative(const HexGeometry& geom, double kappa, const GridSpec& grid);

/// D² against the grid range of the right-hand side.
BandDecision band_membership_grid(const HexGeometry& geom, const VertexCoupling& coupling,
                                  const EnergyPoint& E, const GridSpec& grid);

/// Determinant by LU with partial pivoting.
Complex det_numeric(const MMatrix& m);

/// Minimum of A cos(θ1 - θ2) + B cos θ2 + C cos θ1 over the grid, any signs.
double trig_min_grid(double A, double B, double C, const GridSpec& grid);

/// Band membership from the assembled matrix alone: the refined minimum of the real function
/// det(M)·e^{i(θ1+θ2)} over the phases is <= 0 and its maximum >= 0 (`zero_tol` relative slack).
BandDecision band_membership_det(const HexGeometry& geom, const VertexCoupling& coupling, double k,
                                 const GridSpec& grid, double zero_tol = 1e-10);

}  // namespace hexband
