#include "hexband/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "hexband/errors.hpp"

namespace hexband {

namespace {

using PhaseFn = std::function<double(double, double)>;

double grid_angle(std::size_t j, std::size_t n) {
  return -kPi + 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
}

/// Golden-section search for the minimum of g on [lo, hi].
double golden_min(const std::function<double(double)>& g, double lo, double hi, double& best) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
  double f1 = g(x1), f2 = g(x2);
  for (int it = 0; it < 80 && hi - lo > 1e-14; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - r * (hi - lo);
      f1 = g(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + r * (hi - lo);
      f2 = g(x2);
    }
  }
  const double x = (f1 < f2) ? x1 : x2;
  best = std::min(f1, f2);
  return x;
}

/// Newton steps from central differences, halved until f decreases. At a saddle
/// the search follows the negative-curvature direction instead.
double newton_polish(const PhaseFn& f, double& t1, double& t2, double best, double h) {
  const double e = 1e-5;
  for (int it = 0; it < 40; ++it) {
    const double f0 = f(t1, t2);
    const double fxp = f(t1 + e, t2), fxm = f(t1 - e, t2);
    const double fyp = f(t1, t2 + e), fym = f(t1, t2 - e);
    const double gx = (fxp - fxm) / (2 * e), gy = (fyp - fym) / (2 * e);
    const double hxx = (fxp - 2 * f0 + fxm) / (e * e), hyy = (fyp - 2 * f0 + fym) / (e * e);
    const double hxy = (f(t1 + e, t2 + e) - f(t1 + e, t2 - e) - f(t1 - e, t2 + e) + f(t1 - e, t2 - e)) /
                       (4 * e * e);
    const double det = hxx * hyy - hxy * hxy;
    double dx = 0.0, dy = 0.0;
    if (hxx > 0.0 && det > 0.0) {
      dx = -(hyy * gx - hxy * gy) / det;
      dy = -(hxx * gy - hxy * gx) / det;
    } else {
      // Eigenvector of the smaller Hessian eigenvalue.
      const double lambda = 0.5 * (hxx + hyy) - std::hypot(0.5 * (hxx - hyy), hxy);
      double vx = hxy, vy = lambda - hxx;
      if (std::abs(vx) + std::abs(vy) == 0.0) {
        vx = (hxx <= hyy) ? 1.0 : 0.0;
        vy = 1.0 - vx;
      }
      const double norm = std::hypot(vx, vy);
      double value = 0.0;
      const double s = golden_min([&](double t) { return f(t1 + t * vx / norm, t2 + t * vy / norm); }, -h, h,
                                  value);
      dx = s * vx / norm;
      dy = s * vy / norm;
    }
    double v = f(t1 + dx, t2 + dy);
    for (int half = 0; half < 30 && !(v < best); ++half) {
      dx *= 0.5;
      dy *= 0.5;
      v = f(t1 + dx, t2 + dy);
    }
    if (!(v < best)) break;
    best = v;
    t1 += dx;
    t2 += dy;
    if (std::abs(dx) + std::abs(dy) < 1e-12) break;
  }
  return best;
}

/// Minimum of f over the grid, polished by compass line searches around the best point.
double grid_minimize(const PhaseFn& f, const GridSpec& grid) {
  const std::size_t n = grid.n;
  double best = std::numeric_limits<double>::infinity();
  double t1 = 0.0, t2 = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const double x = grid_angle(i, n);
    for (std::size_t j = 1; j <= n; ++j) {
      const double y = grid_angle(j, n);
      const double v = f(x, y);
      if (v < best) {
        best = v;
        t1 = x;
        t2 = y;
      }
    }
  }
  double h = 2.0 * kPi / static_cast<double>(n);
  const double dirs[4][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};
  for (std::size_t round = 0; round < grid.refine_rounds; ++round) {
    // Sweep until a full pass stops improving; narrow valleys need several passes.
    for (int sweep = 0; sweep < 64; ++sweep) {
      const double before = best;
      for (const auto& d : dirs) {
        double value = 0.0;
        const double s = golden_min([&](double t) { return f(t1 + t * d[0], t2 + t * d[1]); }, -h, h,
                                    value);
        if (value < best) {
          best = value;
          t1 += s * d[0];
          t2 += s * d[1];
        }
      }
      if (before - best <= 1e-15 * std::max(1.0, std::abs(best))) break;
    }
    h /= 4.0;
  }
  if (grid.refine_rounds > 0) best = newton_polish(f, t1, t2, best, 2.0 * kPi / static_cast<double>(n));
  return best;
}

Extrema extrema(const PhaseFn& f, const GridSpec& grid) {
  const double lo = grid_minimize(f, grid);
  const double hi = -grid_minimize([&](double x, double y) { return -f(x, y); }, grid);
  return {lo, hi};
}

PhaseFn rhs_function(double sa, double sb, double sc) {
  const double diag = 1.0 / (sa * sa) + 1.0 / (sb * sb) + 1.0 / (sc * sc);
  const double cab = 2.0 / (sa * sb), cac = 2.0 / (sa * sc), cbc = 2.0 / (sb * sc);
  return [=](double t1, double t2) {
    return diag + cab * std::cos(t1) + cac * std::cos(t2) + cbc * std::cos(t1 - t2);
  };
}

}  // namespace

GridSpec::GridSpec(std::size_t points, std::size_t rounds) : n(points), refine_rounds(rounds) {
  if (points < 8) throw DomainError("grid needs at least 8 points per axis");
}

Extrema rhs_extrema_grid(const HexGeometry& geom, double k, const GridSpec& grid) {
  const SineTriple s = sine_triple(geom, k);
  if (s.any_vanishes()) throw DirichletPointError("right-hand side undefined at a Dirichlet point", k);
  return extrema(rhs_function(s.s_a(), s.s_b(), s.s_c()), grid);
}

Extrema rhs_extrema_grid_negative(const HexGeometry& geom, double kappa, const GridSpec& grid) {
  if (!(kappa > 0.0)) throw DomainError("kappa must be positive");
  return extrema(rhs_function(std::sinh(geom.a() * kappa), std::sinh(geom.b() * kappa),
                              std::sinh(geom.c() * kappa)),
                 grid);
}

BandDecision band_membership_grid(const HexGeometry& geom, const VertexCoupling& coupling,
                                  const EnergyPoint& E, const GridSpec& grid) {
  double lhs = 0.0;
  Extrema range;
  if (E.is_positive()) {
    const double k = E.parameter();
    const SineTriple s = sine_triple(geom, k);
    if (s.any_vanishes()) return {BandDecision::Kind::DirichletPoint, s.vanishes};
    double D = coupling.alpha / k;
    for (double ell : geom.lengths()) D += cos_of(ell, k) / sin_of(ell, k);
    lhs = D * D;
    range = rhs_extrema_grid(geom, k, grid);
  } else if (E.is_negative()) {
    const double kappa = E.parameter();
    double D = coupling.alpha / kappa;
    for (double ell : geom.lengths()) D += std::cosh(ell * kappa) / std::sinh(ell * kappa);
    lhs = D * D;
    range = rhs_extrema_grid_negative(geom, kappa, grid);
  } else {
    // k → 0 limit of k²·(both sides): sin ℓk ~ ℓk.
    double D = coupling.alpha;
    for (double ell : geom.lengths()) D += 1.0 / ell;
    lhs = D * D;
    range = extrema(rhs_function(geom.a(), geom.b(), geom.c()), grid);
  }
  return (range.min <= lhs && lhs <= range.max) ? BandDecision::in_band() : BandDecision::in_gap();
}

Complex det_numeric(const MMatrix& input) {
  MMatrix m = input;
  Complex det = 1.0;
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 4; ++r) {
      if (std::abs(m(r, col)) > std::abs(m(pivot, col))) pivot = r;
    }
    if (m(pivot, col) == Complex(0.0)) return 0.0;
    if (pivot != col) {
      std::swap(m.entries[pivot], m.entries[col]);
      det = -det;
    }
    det *= m(col, col);
    for (int r = col + 1; r < 4; ++r) {
      const Complex f = m(r, col) / m(col, col);
      for (int c = col; c < 4; ++c) m(r, c) -= f * m(col, c);
    }
  }
  return det;
}

double trig_min_grid(double A, double B, double C, const GridSpec& grid) {
  return grid_minimize(
      [=](double t1, double t2) { return A * std::cos(t1 - t2) + B * std::cos(t2) + C * std::cos(t1); },
      grid);
}

BandDecision band_membership_det(const HexGeometry& geom, const VertexCoupling& coupling, double k,
                                 const GridSpec& grid, double zero_tol) {
  const SineTriple s = sine_triple(geom, k);
  if (s.any_vanishes()) return {BandDecision::Kind::DirichletPoint, s.vanishes};
  // Re(det·e^{i(θ1+θ2)}) is real up to rounding; the cell problem is solvable where it has a zero.
  const PhaseFn f = [&](double t1, double t2) {
    const FloquetPhase phase(t1, t2);
    return (det_numeric(assemble_m_matrix(geom, coupling, k, phase)) * std::polar(1.0, t1 + t2)).real();
  };
  const Extrema ex = extrema(f, grid);
  const double scale = std::max({1.0, std::abs(ex.min), std::abs(ex.max)});
  const bool straddles = ex.min <= zero_tol * scale && ex.max >= -zero_tol * scale;
  return straddles ? BandDecision::in_band() : BandDecision::in_gap();
}

}  // namespace hexband
