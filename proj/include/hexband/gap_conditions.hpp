#pragma once

// Explicit gap criteria, their b = c reformulations and the coupling thresholds.

#include <optional>
#include <string>
#include <vector>

#include "hexband/number_theory.hpp"
#include "hexband/spectral_core.hpp"

namespace hexband {

/// {x} = x - nearest integer, in [-1/2, 1/2]; half-integers map to +1/2.
struct FracPart {
  double value = 0.0;
};

FracPart nearest_int_frac(double x);

/// Strict inequalities are tested as lhs > rhs + slack.
struct GapOptions {
  double slack = 0.0;
  double dirichlet_tol = kDefaultDirichletTol;
};

/// |D(k)| > Σ 1/|sin ℓk|.
bool gc1(const HexGeometry& geom, const VertexCoupling& coupling, double k,
         const GapOptions& opt = {});
/// 2 max 1/|sin ℓk| - Σ 1/|sin ℓk| > |D(k)|.
bool gc2(const HexGeometry& geom, const VertexCoupling& coupling, double k,
         const GapOptions& opt = {});
/// Sign condition on the cotangents plus F(k) < |α|/k; requires k >= |α|.
bool gc1_tangent_form(const HexGeometry& geom, const VertexCoupling& coupling, double k,
                      const GapOptions& opt = {});

/// Σ_ℓ |tan({ℓk/π} π/2)| over the three edges.
double capital_F(const HexGeometry& geom, double k);
/// b = c form: |tan({ak/π} π/2)| + 2 |tan({bk/π} π/2)|.
double capital_F_bc(double a, double b, double k);
/// |cot ak| - 2 |cot bk|.
double capital_G(double a, double b, double k, double dirichlet_tol = kDefaultDirichletTol);
/// 2(1/|sin bk| - |cot bk|) - (1/|sin ak| - |cot ak|). Can be negative (down to -1).
double capital_W(double a, double b, double k, double dirichlet_tol = kDefaultDirichletTol);

struct GapDiagnostics {
  double F = 0.0;
  double G = 0.0;
  double W = 0.0;
};

GapDiagnostics gap_diagnostics(double a, double b, double k,
                               double dirichlet_tol = kDefaultDirichletTol);

/// The four-condition form of GC2 for geometry (a, b, b); requires k > |α|.
bool gc2_equivalent_bc(double a, double b, const VertexCoupling& coupling, double k,
                       const GapOptions& opt = {});

struct NegativeGapFlags {
  bool gc1_neg = false;
  bool gc2_neg = false;
};

NegativeGapFlags gc_negative(const HexGeometry& geom, const VertexCoupling& coupling, double kappa,
                             double slack = 0.0);

enum class ZeroGapCase { GapCase1, GapCase2, NoGap };

std::string to_string(ZeroGapCase c);

ZeroGapCase negative_gap_at_zero(const HexGeometry& geom, const VertexCoupling& coupling);

struct Threshold {
  std::optional<double> value;  // absent when the statement does not apply to the class
  std::string provenance;
};

struct ThresholdReport {
  double a = 0.0, b = 0.0;
  RatioClass::Kind ratio_class = RatioClass::Kind::UnknownNumeric;
  std::optional<double> gamma;
  Threshold gc1_guarantee;
  Threshold gc1_nogap_bound;
  Threshold gc2_guarantee;
  Threshold gc2_nogap_bound;
  Threshold g_lower_bound;  // rational ratio: G(k) >= c on the GC2-relevant set
  /// (2π/√5) min{2/a, 1/b}: the sharper constant reached at the end of the GC1 argument.
  double gc1_guarantee_alternative = 0.0;
  std::vector<std::string> notes;
};

/// Thresholds for geometry (a, b, b). `gamma` is required for BadlyApproximable.
ThresholdReport thresholds_bc(double a, double b, const RatioClass& ratio_class,
                              std::optional<double> gamma);

/// Which criterion explains a gap interior point k (positive branch).
enum class GapAttribution { GC1, GC2, None };

std::string to_string(GapAttribution g);

GapAttribution attribute_gap(const HexGeometry& geom, const VertexCoupling& coupling, double k,
                             const GapOptions& opt = {});

}  // namespace hexband
