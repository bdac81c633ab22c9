#pragma once

// Band membership from the closed-form envelope, window scans and flat bands.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hexband/number_theory.hpp"
#include "hexband/spectral_core.hpp"

namespace hexband {

/// Range [lower, upper] of the square root of the spectral right-hand side over all phases.
struct RhsEnvelope {
  double lower = 0.0;
  double upper = 0.0;
};

/// Coefficients of f(θ1, θ2) = A cos(θ1 - θ2) + B cos θ2 + C cos θ1.
class TrigCoefficients {
 public:
  TrigCoefficients(double A, double B, double C);  // requires A·B·C > 0

  double A() const noexcept { return A_; }
  double B() const noexcept { return B_; }
  double C() const noexcept { return C_; }

  /// True when 1/|A| + 1/|B| + 1/|C| >= 2 max(1/|A|, 1/|B|, 1/|C|) (interior minimum).
  bool interior_case() const noexcept;

 private:
  double A_, B_, C_;
};

struct BandDecision {
  enum class Kind { InBand, InGap, DirichletPoint };
  Kind kind = Kind::InGap;
  std::array<bool, 3> dirichlet_edges{};  // a, b, c; set only for DirichletPoint

  static BandDecision in_band() { return {Kind::InBand, {}}; }
  static BandDecision in_gap() { return {Kind::InGap, {}}; }
  bool in_spectrum() const noexcept { return kind == Kind::InBand; }
};

std::string to_string(BandDecision::Kind kind);

enum class Branch { Positive, Negative };

std::string to_string(Branch branch);

/// Closed interval on the scan axis together with its image in energy units.
struct SpectralInterval {
  double param_lo = 0.0;  // k (positive branch) or κ (negative branch)
  double param_hi = 0.0;
  double E_lo = 0.0;
  double E_hi = 0.0;

  bool operator==(const SpectralInterval&) const = default;
};

struct FlatBand {
  double k = 0.0;
  double E = 0.0;
  double residual = 0.0;
  bool full_period = false;  // ka, kb, kc ∈ 2πZ; otherwise only ∈ πZ
  bool embedded = false;     // lies inside a reported band
};

struct DirichletPoint {
  double k = 0.0;
  double E = 0.0;
  std::array<bool, 3> edges{};
};

struct ScanSample {
  double param = 0.0;
  double E = 0.0;
  double absD = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  BandDecision::Kind decision = BandDecision::Kind::InGap;
};

struct ScanMeta {
  std::size_t n_samples = 0;
  double grid_spacing = 0.0;
  double edge_tol = 0.0;
  double dirichlet_tol = kDefaultDirichletTol;
  std::size_t threads = 1;
  bool under_resolved = false;
  std::vector<std::string> warnings;
  /// Negative branch: decision at the smallest κ of the window (gap touching E = 0⁻).
  std::optional<bool> gap_adjacent_to_zero;
};

struct SpectrumReport {
  Branch branch = Branch::Positive;
  double param_lo = 0.0, param_hi = 0.0;  // scan axis window
  double E_lo = 0.0, E_hi = 0.0;          // energy window, E_lo < E_hi
  std::vector<SpectralInterval> bands;    // increasing E
  std::vector<SpectralInterval> gaps;     // open intervals, increasing E
  std::vector<FlatBand> flat_bands;
  std::vector<DirichletPoint> dirichlet_points;
  ScanMeta meta;
  std::vector<ScanSample> samples;        // increasing scan parameter; not serialized to JSON
};

struct ScanOptions {
  double dirichlet_tol = kDefaultDirichletTol;
  std::size_t threads = 0;          // 0: hardware concurrency; HEXBAND_THREADS caps either way
  double flat_band_tol = 1e-8;      // residual accepted by verify_flat_band
  double probe_offset = 1e-7;       // relative offset of the probes around Dirichlet points
  bool keep_samples = true;
};

/// Coefficient amplitudes on the six half-edges of the cell, C_i^± on ψ_i and D_i^± on φ_i.
struct CellWavefunction {
  std::array<Complex, 3> C_plus{}, C_minus{};
  std::array<Complex, 3> D_plus{}, D_minus{};
};

double trig_min_f(const TrigCoefficients& coeff);

RhsEnvelope rhs_envelope(const HexGeometry& geom, double k,
                         double dirichlet_tol = kDefaultDirichletTol);
RhsEnvelope rhs_envelope_negative(const HexGeometry& geom, double kappa);
/// Limit of k·envelope as k → 0 (used at E = 0).
RhsEnvelope rhs_envelope_zero(const HexGeometry& geom);

BandDecision band_membership(const HexGeometry& geom, const VertexCoupling& coupling,
                             const EnergyPoint& E, double dirichlet_tol = kDefaultDirichletTol);

SpectrumReport scan_spectrum(const HexGeometry& geom, const VertexCoupling& coupling,
                             double k_lo, double k_hi, std::size_t n_samples, double edge_tol,
                             const ScanOptions& options = {});

/// κ-scan of the negative branch over [kappa_lo, kappa_hi], reported in increasing E = -κ².
SpectrumReport negative_spectrum_scan(const HexGeometry& geom, const VertexCoupling& coupling,
                                      double kappa_lo, double kappa_hi, std::size_t n_samples,
                                      double edge_tol, const ScanOptions& options = {});

/// k_n = 2πn/d for n = 1..n_max.
std::vector<double> flat_band_energies(const CommensurabilityWitness& witness, std::size_t n_max);
/// Same, after deriving the witness from the lengths; throws DomainError when there is none.
std::vector<double> flat_band_energies(const HexGeometry& geom, std::size_t n_max);

/// Largest violation of the vertex conditions by sin(ks) carried around one hexagon
/// (edges a, b, c, a, b, c) and zero on the outgoing edges. Derivative mismatches are divided by k.
double verify_flat_band(const HexGeometry& geom, double k, double alpha = 0.0);

/// Solution of the cell problem at a phase where det M vanishes (null vector of M normalized
/// to unit length, then the remaining amplitudes from the Floquet and continuity conditions).
CellWavefunction reconstruct_wavefunction(const HexGeometry& geom, const VertexCoupling& coupling,
                                          double k, const FloquetPhase& phase);

/// Largest violation of continuity, δ-coupling and Floquet conditions by `wf`, relative to the
/// amplitude scale; derivative conditions divided by k.
double cell_residual(const HexGeometry& geom, const VertexCoupling& coupling, double k,
                     const FloquetPhase& phase, const CellWavefunction& wf);

/// Worker count after applying the HEXBAND_THREADS cap.
std::size_t worker_count(std::size_t requested);

}  // namespace hexband
