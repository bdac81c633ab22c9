#include "hexband/gap_conditions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hexband/band_engine.hpp"
#include "hexband/errors.hpp"

namespace hexband {

namespace {

int sgn(double x) { return (x > 0.0) - (x < 0.0); }

double tan_term(double ell, double k) {
  const long double x = static_cast<long double>(ell) * k / kPiL;
  const long double frac = x - std::ceil(x - 0.5L);
  return static_cast<double>(std::abs(std::tan(frac * kPiL / 2.0L)));
}

struct Trig {
  double s, c;  // sin, cos of ℓk
};

Trig trig(double ell, double k, double tol) {
  if (!(k > 0.0)) throw DomainError("k must be positive");
  const double s = sin_of(ell, k);
  if (std::abs(s) <= tol * std::max(1.0, ell * k)) {
    throw DirichletPointError("sin(lk) vanishes at this k", k);
  }
  return {s, cos_of(ell, k)};
}

}  // namespace

FracPart nearest_int_frac(double x) {
  if (!std::isfinite(x)) throw DomainError("x must be finite");
  return {x - std::ceil(x - 0.5)};
}

bool gc1(const HexGeometry& geom, const VertexCoupling& coupling, double k, const GapOptions& opt) {
  const double D = dispersion(geom, coupling, k, opt.dirichlet_tol);
  const RhsEnvelope env = rhs_envelope(geom, k, opt.dirichlet_tol);
  return std::abs(D) > env.upper + opt.slack;
}

bool gc2(const HexGeometry& geom, const VertexCoupling& coupling, double k, const GapOptions& opt) {
  const double D = dispersion(geom, coupling, k, opt.dirichlet_tol);
  const SineTriple s = sine_triple(geom, k, opt.dirichlet_tol);
  double sum = 0.0, largest = 0.0;
  for (double v : s.values) {
    sum += 1.0 / std::abs(v);
    largest = std::max(largest, 1.0 / std::abs(v));
  }
  return 2.0 * largest - sum > std::abs(D) + opt.slack;
}

bool gc1_tangent_form(const HexGeometry& geom, const VertexCoupling& coupling, double k,
                      const GapOptions& opt) {
  if (!(k > 0.0)) throw DomainError("k must be positive");
  if (k < std::abs(coupling.alpha)) throw DomainError("tangent form requires k >= |alpha|");
  const int want = sgn(coupling.alpha);
  if (want == 0) return false;
  for (double ell : geom.lengths()) {
    const Trig t = trig(ell, k, opt.dirichlet_tol);
    if (sgn(t.c / t.s) != want) return false;
  }
  return capital_F(geom, k) < std::abs(coupling.alpha) / k - opt.slack;
}

double capital_F(const HexGeometry& geom, double k) {
  double sum = 0.0;
  for (double ell : geom.lengths()) sum += tan_term(ell, k);
  return sum;
}

double capital_F_bc(double a, double b, double k) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("lengths must be positive");
  return tan_term(a, k) + 2.0 * tan_term(b, k);
}

double capital_G(double a, double b, double k, double dirichlet_tol) {
  const Trig ta = trig(a, k, dirichlet_tol), tb = trig(b, k, dirichlet_tol);
  return std::abs(ta.c / ta.s) - 2.0 * std::abs(tb.c / tb.s);
}

double capital_W(double a, double b, double k, double dirichlet_tol) {
  const Trig ta = trig(a, k, dirichlet_tol), tb = trig(b, k, dirichlet_tol);
  const double wa = (1.0 - std::abs(ta.c)) / std::abs(ta.s);
  const double wb = (1.0 - std::abs(tb.c)) / std::abs(tb.s);
  return 2.0 * wb - wa;
}

GapDiagnostics gap_diagnostics(double a, double b, double k, double dirichlet_tol) {
  return {capital_F_bc(a, b, k), capital_G(a, b, k, dirichlet_tol), capital_W(a, b, k, dirichlet_tol)};
}

bool gc2_equivalent_bc(double a, double b, const VertexCoupling& coupling, double k,
                       const GapOptions& opt) {
  if (!(k > std::abs(coupling.alpha))) throw DomainError("four-condition form requires k > |alpha|");
  const Trig ta = trig(a, k, opt.dirichlet_tol), tb = trig(b, k, opt.dirichlet_tol);
  const double inv_a = 1.0 / std::abs(ta.s), inv_b = 1.0 / std::abs(tb.s);
  const double cot_a = ta.c / ta.s, cot_b = tb.c / tb.s;
  if (!(inv_a > 2.0 * inv_b)) return false;
  if (!(cot_a * cot_b < 0.0)) return false;
  if (!(coupling.alpha * cot_a < 0.0)) return false;
  const double G = std::abs(cot_a) - 2.0 * std::abs(cot_b);
  return std::abs(G - std::abs(coupling.alpha) / k) < inv_a - 2.0 * inv_b - opt.slack;
}

NegativeGapFlags gc_negative(const HexGeometry& geom, const VertexCoupling& coupling, double kappa,
                             double slack) {
  const double D = std::abs(dispersion_negative(geom, coupling, kappa));
  double sum = 0.0;
  for (double ell : geom.lengths()) sum += 1.0 / std::sinh(ell * kappa);
  const double dominant = 2.0 / std::sinh(geom.ell_min() * kappa);
  return {D > sum + slack, D < dominant - sum - slack};
}

std::string to_string(ZeroGapCase c) {
  switch (c) {
    case ZeroGapCase::GapCase1: return "GapCase1";
    case ZeroGapCase::GapCase2: return "GapCase2";
    case ZeroGapCase::NoGap: return "NoGap";
  }
  return "NoGap";
}

ZeroGapCase negative_gap_at_zero(const HexGeometry& geom, const VertexCoupling& coupling) {
  const double inv_sum = 1.0 / geom.a() + 1.0 / geom.b() + 1.0 / geom.c();
  const double abs_alpha = std::abs(coupling.alpha);
  if (abs_alpha > 2.0 * inv_sum) return ZeroGapCase::GapCase1;
  const double dominant = 2.0 / geom.ell_min();
  if (dominant > inv_sum && 2.0 * inv_sum - dominant < abs_alpha && abs_alpha < dominant) {
    return ZeroGapCase::GapCase2;
  }
  return ZeroGapCase::NoGap;
}

ThresholdReport thresholds_bc(double a, double b, const RatioClass& ratio_class,
                              std::optional<double> gamma) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("a and b must be positive and finite");
  }
  using Kind = RatioClass::Kind;
  const double pi = std::numbers::pi, sqrt5 = std::sqrt(5.0);
  if (ratio_class.kind == Kind::BadlyApproximable && !(gamma && *gamma > 0.0)) {
    throw DomainError("badly approximable class needs a positive gamma estimate");
  }
  if (gamma && !(*gamma > 0.0)) throw DomainError("gamma estimate must be positive");

  ThresholdReport r;
  r.a = a;
  r.b = b;
  r.ratio_class = ratio_class.kind;
  r.gamma = gamma;

  const double gc1_formula = 4.0 * pi / sqrt5 * std::min(2.0 / a, 1.0 / b);
  const double gc2_formula = 4.0 * pi / (sqrt5 * a);
  r.gc1_guarantee_alternative = 2.0 * pi / sqrt5 * std::min(2.0 / a, 1.0 / b);

  r.gc1_guarantee = {gc1_formula, "GC1 infinitely many gaps for badly approximable a/b when "
                                  "|alpha| > (4 pi/sqrt 5) min{2/a, 1/b}"};
  r.gc1_nogap_bound = {0.0, "GC1 yields gaps for every alpha != 0 in this class"};
  r.gc2_guarantee = {std::nullopt, "no GC2 guarantee for this class"};
  r.gc2_nogap_bound = {std::nullopt, "no GC2 no-gap bound for this class"};
  r.g_lower_bound = {std::nullopt, "G lower bound only defined for rational a/b"};
  r.notes.push_back("the GC1 guarantee argument ends with (2 pi/sqrt 5) min{2/a, 1/b}; that value is "
                    "kept as gc1_guarantee_alternative");

  switch (ratio_class.kind) {
    case Kind::Rational: {
      if (!ratio_class.reduced) throw DomainError("rational class needs the reduced p/q");
      const auto& [p, q] = *ratio_class.reduced;
      const double c = 9.0 * pi / (2.0 * (6.0 * static_cast<double>(p) + pi * static_cast<double>(q)));
      r.g_lower_bound = {c, "rational a/b = p/q: G(k) >= 9 pi/(2(6p + pi q)) whenever "
                            "cot(ak) cot(bk) < 0 and |sin bk| >= 2 |sin ak|"};
      r.gc2_nogap_bound = {std::nullopt, "rational a/b: GC2 generates at most finitely many gaps"};
      r.gc1_guarantee.provenance = "(4 pi/sqrt 5) min{2/a, 1/b}; for rational a/b any alpha != 0 "
                                   "already opens infinitely many GC1 gaps";
      r.notes.push_back("rational ratio: GC1 generates infinitely many gaps for any alpha != 0");
      break;
    }
    case Kind::LastAdmissible:
      r.gc1_guarantee.provenance = "GC1 infinitely many gaps for any alpha != 0 (unbounded partial quotients)";
      r.gc1_guarantee.value = 0.0;
      r.gc2_guarantee = {0.0, "GC2 infinitely many gaps for any alpha != 0 (unbounded partial quotients)"};
      r.notes.push_back("Last admissible ratio: both criteria open gaps for any alpha != 0");
      break;
    case Kind::BadlyApproximable:
    case Kind::UnknownNumeric: {
      r.gc2_guarantee = {gc2_formula, "GC2 infinitely many gaps for badly approximable a/b when "
                                      "|alpha| >= 4 pi/(sqrt 5 a)"};
      if (gamma) {
        r.gc1_nogap_bound = {*gamma * pi * pi * std::min(1.0 / a, 1.0 / (2.0 * b)),
                             "GC1 yields no gaps for 0 < |alpha| < gamma pi^2 min{1/a, 1/(2b)}"};
        r.gc2_nogap_bound = {15.0 * pi * pi * *gamma / (4.0 * (6.0 * a + pi * b)),
                             "GC2 yields no gaps for |alpha| below 15 pi^2 gamma/(4(6a + pi b))"};
      } else {
        r.gc1_nogap_bound = {std::nullopt, "needs a gamma estimate"};
      }
      if (ratio_class.kind == Kind::UnknownNumeric) {
        r.notes.push_back("ratio class not certified: thresholds assume a badly approximable ratio");
      } else {
        r.notes.push_back("gamma is estimated over convergents only");
      }
      break;
    }
  }
  return r;
}

std::string to_string(GapAttribution g) {
  switch (g) {
    case GapAttribution::GC1: return "GC1";
    case GapAttribution::GC2: return "GC2";
    case GapAttribution::None: return "";
  }
  return "";
}

GapAttribution attribute_gap(const HexGeometry& geom, const VertexCoupling& coupling, double k,
                             const GapOptions& opt) {
  const SineTriple s = sine_triple(geom, k, opt.dirichlet_tol);
  if (s.any_vanishes()) return GapAttribution::None;
  if (gc1(geom, coupling, k, opt)) return GapAttribution::GC1;
  if (gc2(geom, coupling, k, opt)) return GapAttribution::GC2;
  return GapAttribution::None;
}

}  // namespace hexband
