#include "hexband/band_engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>

#include "hexband/errors.hpp"

namespace hexband {

namespace {

struct Evaluation {
  BandDecision decision;
  double absD = 0.0;
  RhsEnvelope env;
};

Evaluation evaluate_positive(const HexGeometry& geom, const VertexCoupling& coupling, double k,
                             double dirichlet_tol) {
  Evaluation out;
  const SineTriple s = sine_triple(geom, k, dirichlet_tol);
  if (s.any_vanishes()) {
    out.decision = {BandDecision::Kind::DirichletPoint, s.vanishes};
    out.absD = std::numeric_limits<double>::infinity();
    out.env = {0.0, std::numeric_limits<double>::infinity()};
    return out;
  }
  out.env = rhs_envelope(geom, k, dirichlet_tol);
  out.absD = std::abs(dispersion(geom, coupling, k, dirichlet_tol));
  const bool in = out.env.lower <= out.absD && out.absD <= out.env.upper;
  out.decision = in ? BandDecision::in_band() : BandDecision::in_gap();
  return out;
}

Evaluation evaluate_negative(const HexGeometry& geom, const VertexCoupling& coupling,
                             double kappa) {
  Evaluation out;
  out.env = rhs_envelope_negative(geom, kappa);
  out.absD = std::abs(dispersion_negative(geom, coupling, kappa));
  const bool in = out.env.lower <= out.absD && out.absD <= out.env.upper;
  out.decision = in ? BandDecision::in_band() : BandDecision::in_gap();
  return out;
}

void require_window(double lo, double hi, std::size_t n, double edge_tol) {
  if (!(lo > 0.0) || !std::isfinite(hi) || !(lo < hi)) {
    throw DomainError("scan window must satisfy 0 < lo < hi");
  }
  if (n < 2) throw DomainError("n_samples must be at least 2");
  if (!(edge_tol > 0.0)) throw DomainError("edge_tol must be positive");
}

/// Runs fn(i) for i in [0, n) over `workers` threads in contiguous blocks.
template <class Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn fn) {
  workers = std::max<std::size_t>(1, std::min(workers, n / 256 + 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t block = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * block, hi = std::min(n, lo + block);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

enum class PointKind { Grid, ProbeLeft, ProbeRight };

struct ScanPoint {
  double param;
  PointKind kind;
  std::size_t cluster;  // Dirichlet cluster for probes
  Evaluation eval;
};

struct Cluster {
  double k;        // representative Dirichlet point
  double lo, hi;   // extent of the merged points
  double offset;   // probe distance
};

std::vector<Cluster> dirichlet_clusters(const HexGeometry& geom, double k_lo, double k_hi,
                                        double rel_offset) {
  std::vector<double> pts;
  for (double ell : geom.lengths()) {
    const auto m_lo = static_cast<long long>(std::ceil(k_lo * ell / kPi));
    const auto m_hi = static_cast<long long>(std::floor(k_hi * ell / kPi));
    for (long long m = std::max(1LL, m_lo); m <= m_hi; ++m) {
      const double k = static_cast<double>(static_cast<long double>(m) * kPiL / ell);
      if (k >= k_lo && k <= k_hi) pts.push_back(k);
    }
  }
  std::sort(pts.begin(), pts.end());
  std::vector<Cluster> out;
  for (double k : pts) {
    const double offset = rel_offset * std::max(1.0, k);
    if (!out.empty() && k - out.back().hi <= 2.0 * offset) {
      out.back().hi = k;
      continue;
    }
    out.push_back({k, k, k, offset});
  }
  for (auto& c : out) {
    c.k = 0.5 * (c.lo + c.hi);
    c.offset = rel_offset * std::max(1.0, c.hi) + (c.hi - c.lo);
  }
  return out;
}

/// Bisects between two points of different membership; returns the band-side endpoint.
template <class Member>
double bisect_edge(double lo, bool lo_in, double hi, double edge_tol, Member member) {
  while (hi - lo > edge_tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (member(mid) == lo_in) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo_in ? lo : hi;
}

struct Transition {
  double edge;
  bool into_band;
};

/// Turns sorted membership points into alternating closed bands / open gaps on the param axis.
template <class Member>
std::pair<std::vector<std::pair<double, double>>, std::vector<std::pair<double, double>>>
tile(const std::vector<ScanPoint>& pts, double lo, double hi, double edge_tol, Member member,
     const std::vector<Cluster>& clusters) {
  std::vector<Transition> transitions;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const ScanPoint& p = pts[i - 1];
    const ScanPoint& q = pts[i];
    const bool pin = p.eval.decision.in_spectrum();
    const bool qin = q.eval.decision.in_spectrum();
    if (pin == qin) continue;
    double edge;
    if (p.kind == PointKind::ProbeLeft && q.kind == PointKind::ProbeRight && p.cluster == q.cluster) {
      edge = clusters[p.cluster].k;
    } else {
      edge = bisect_edge(p.param, pin, q.param, edge_tol, member);
    }
    transitions.push_back({edge, qin});
  }

  std::vector<std::pair<double, double>> bands, gaps;
  bool state = pts.front().eval.decision.in_spectrum();
  double start = lo;
  for (const auto& t : transitions) {
    (state ? bands : gaps).emplace_back(start, t.edge);
    start = t.edge;
    state = t.into_band;
  }
  (state ? bands : gaps).emplace_back(start, hi);
  return {bands, gaps};
}

void add_resolution_warnings(ScanMeta& meta, const std::vector<std::pair<double, double>>& bands,
                             const std::vector<std::pair<double, double>>& gaps) {
  std::size_t narrow = 0;
  for (const auto* list : {&bands, &gaps}) {
    for (const auto& [lo, hi] : *list) {
      if (hi - lo < meta.grid_spacing) ++narrow;
    }
  }
  if (narrow > 0) {
    meta.under_resolved = true;
    meta.warnings.push_back("narrow features: " + std::to_string(narrow) +
                            " interval(s) narrower than the grid spacing; neighbouring features may be missed");
  }
}

}  // namespace

std::string to_string(BandDecision::Kind kind) {
  switch (kind) {
    case BandDecision::Kind::InBand: return "InBand";
    case BandDecision::Kind::InGap: return "InGap";
    case BandDecision::Kind::DirichletPoint: return "DirichletPoint";
  }
  return "InGap";
}

std::string to_string(Branch branch) {
  return branch == Branch::Positive ? "positive" : "negative";
}

TrigCoefficients::TrigCoefficients(double A, double B, double C) : A_(A), B_(B), C_(C) {
  if (!std::isfinite(A) || !std::isfinite(B) || !std::isfinite(C)) {
    throw DomainError("trig coefficients must be finite");
  }
  if (!(A * B * C > 0.0)) throw DomainError("trig coefficients need A*B*C > 0");
}

bool TrigCoefficients::interior_case() const noexcept {
  const double ia = 1.0 / std::abs(A_), ib = 1.0 / std::abs(B_), ic = 1.0 / std::abs(C_);
  return ia + ib + ic >= 2.0 * std::max({ia, ib, ic});
}

double trig_min_f(const TrigCoefficients& coeff) {
  const double A = coeff.A(), B = coeff.B(), C = coeff.C();
  if (coeff.interior_case()) {
    return -(A * B * C / 2.0) * (1.0 / (A * A) + 1.0 / (B * B) + 1.0 / (C * C));
  }
  const double aa = std::abs(A), ab = std::abs(B), ac = std::abs(C);
  return -(aa + ab + ac) + 2.0 * std::min({aa, ab, ac});
}

RhsEnvelope rhs_envelope(const HexGeometry& geom, double k, double dirichlet_tol) {
  const SineTriple s = sine_triple(geom, k, dirichlet_tol);
  if (s.any_vanishes()) throw DirichletPointError("envelope undefined at a Dirichlet point", k);
  double sum = 0.0, largest = 0.0;
  for (double v : s.values) {
    const double inv = 1.0 / std::abs(v);
    sum += inv;
    largest = std::max(largest, inv);
  }
  return {std::max(0.0, 2.0 * largest - sum), sum};
}

RhsEnvelope rhs_envelope_negative(const HexGeometry& geom, double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw DomainError("kappa must be positive and finite");
  double sum = 0.0;
  for (double ell : geom.lengths()) sum += 1.0 / std::sinh(ell * kappa);
  const double dominant = 1.0 / std::sinh(geom.ell_min() * kappa);
  return {std::max(0.0, 2.0 * dominant - sum), sum};
}

RhsEnvelope rhs_envelope_zero(const HexGeometry& geom) {
  const double sum = 1.0 / geom.a() + 1.0 / geom.b() + 1.0 / geom.c();
  return {std::max(0.0, 2.0 / geom.ell_min() - sum), sum};
}

BandDecision band_membership(const HexGeometry& geom, const VertexCoupling& coupling,
                             const EnergyPoint& E, double dirichlet_tol) {
  if (E.is_positive()) return evaluate_positive(geom, coupling, E.parameter(), dirichlet_tol).decision;
  if (E.is_negative()) return evaluate_negative(geom, coupling, E.parameter()).decision;
  // E = 0: compare the k → 0 limits of k·|D| and k·envelope.
  const RhsEnvelope env = rhs_envelope_zero(geom);
  const double absD = std::abs(env.upper + coupling.alpha);
  return (env.lower <= absD && absD <= env.upper) ? BandDecision::in_band() : BandDecision::in_gap();
}

std::size_t worker_count(std::size_t requested) {
  std::size_t n = requested;
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("HEXBAND_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min<std::size_t>(n, static_cast<std::size_t>(cap));
  }
  return n;
}

SpectrumReport scan_spectrum(const HexGeometry& geom, const VertexCoupling& coupling, double k_lo,
                             double k_hi, std::size_t n_samples, double edge_tol,
                             const ScanOptions& options) {
  require_window(k_lo, k_hi, n_samples, edge_tol);
  const double tol = options.dirichlet_tol;

  SpectrumReport report;
  report.branch = Branch::Positive;
  report.param_lo = k_lo;
  report.param_hi = k_hi;
  report.E_lo = k_lo * k_lo;
  report.E_hi = k_hi * k_hi;
  ScanMeta& meta = report.meta;
  meta.n_samples = n_samples;
  meta.grid_spacing = (k_hi - k_lo) / static_cast<double>(n_samples - 1);
  meta.edge_tol = edge_tol;
  meta.dirichlet_tol = tol;
  meta.threads = worker_count(options.threads);

  const double ell_max = std::max({geom.a(), geom.b(), geom.c()});
  if (n_samples < 8 || meta.grid_spacing > (kPi / ell_max) / 8.0) {
    meta.under_resolved = true;
    meta.warnings.push_back("coarse grid: spacing exceeds 1/8 of the Dirichlet spacing pi/ell_max; "
                            "bands or gaps may be missed");
  }

  const auto clusters = dirichlet_clusters(geom, k_lo, k_hi, std::max({options.probe_offset, 10.0 * tol, 1e-12}));

  std::vector<ScanPoint> pts;
  pts.reserve(n_samples + 2 * clusters.size());
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double k = (i + 1 == n_samples) ? k_hi : k_lo + static_cast<double>(i) * meta.grid_spacing;
    auto it = std::lower_bound(clusters.begin(), clusters.end(), k,
                               [](const Cluster& c, double v) { return c.hi + c.offset < v; });
    if (it != clusters.end() && k >= it->lo - it->offset) continue;
    pts.push_back({k, PointKind::Grid, 0, {}});
  }
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    const double left = clusters[c].lo - clusters[c].offset;
    const double right = clusters[c].hi + clusters[c].offset;
    if (left > k_lo) pts.push_back({left, PointKind::ProbeLeft, c, {}});
    if (right < k_hi) pts.push_back({right, PointKind::ProbeRight, c, {}});
  }
  std::sort(pts.begin(), pts.end(), [](const ScanPoint& x, const ScanPoint& y) {
    return x.param < y.param;
  });

  parallel_for(pts.size(), meta.threads, [&](std::size_t i) {
    pts[i].eval = evaluate_positive(geom, coupling, pts[i].param, tol);
  });
  std::erase_if(pts, [](const ScanPoint& p) {
    return p.eval.decision.kind == BandDecision::Kind::DirichletPoint;
  });
  if (pts.empty()) throw NumericError("every sample fell on a Dirichlet point");

  auto member = [&](double k) {
    return evaluate_positive(geom, coupling, k, tol).decision.in_spectrum();
  };
  const auto [bands, gaps] = tile(pts, k_lo, k_hi, edge_tol, member, clusters);
  add_resolution_warnings(meta, bands, gaps);

  for (const auto& [lo, hi] : bands) report.bands.push_back({lo, hi, lo * lo, hi * hi});
  for (const auto& [lo, hi] : gaps) report.gaps.push_back({lo, hi, lo * lo, hi * hi});

  for (const auto& c : clusters) {
    const SineTriple s = sine_triple(geom, c.k, std::max(tol, 1e-9));
    DirichletPoint dp{c.k, c.k * c.k, s.vanishes};
    if (!s.any_vanishes()) {
      // Merged cluster whose centre is off every member; record the edges individually.
      for (std::size_t e = 0; e < 3; ++e) {
        const double ell = geom.lengths()[e];
        const double m_lo = std::ceil(c.lo * ell / kPi - 1e-9), m_hi = std::floor(c.hi * ell / kPi + 1e-9);
        dp.edges[e] = m_lo <= m_hi;
      }
    }
    report.dirichlet_points.push_back(dp);
    if (!s.all_vanish()) continue;
    const double residual = verify_flat_band(geom, c.k, coupling.alpha);
    if (residual > options.flat_band_tol) continue;
    FlatBand fb;
    fb.k = c.k;
    fb.E = c.k * c.k;
    fb.residual = residual;
    fb.full_period = true;
    for (double ell : geom.lengths()) {
      const double turns = ell * c.k / (2.0 * kPi);
      if (std::abs(turns - std::round(turns)) > 1e-6 * std::max(1.0, turns)) fb.full_period = false;
    }
    for (const auto& band : report.bands) {
      if (band.param_lo < c.k && c.k < band.param_hi) fb.embedded = true;
    }
    report.flat_bands.push_back(fb);
  }

  if (options.keep_samples) {
    report.samples.reserve(pts.size());
    for (const auto& p : pts) {
      report.samples.push_back({p.param, p.param * p.param, p.eval.absD, p.eval.env.lower,
                                p.eval.env.upper, p.eval.decision.kind});
    }
  }
  return report;
}

SpectrumReport negative_spectrum_scan(const HexGeometry& geom, const VertexCoupling& coupling,
                                      double kappa_lo, double kappa_hi, std::size_t n_samples,
                                      double edge_tol, const ScanOptions& options) {
  require_window(kappa_lo, kappa_hi, n_samples, edge_tol);

  SpectrumReport report;
  report.branch = Branch::Negative;
  report.param_lo = kappa_lo;
  report.param_hi = kappa_hi;
  report.E_lo = -kappa_hi * kappa_hi;
  report.E_hi = -kappa_lo * kappa_lo;
  ScanMeta& meta = report.meta;
  meta.n_samples = n_samples;
  meta.grid_spacing = (kappa_hi - kappa_lo) / static_cast<double>(n_samples - 1);
  meta.edge_tol = edge_tol;
  meta.dirichlet_tol = options.dirichlet_tol;
  meta.threads = worker_count(options.threads);
  if (n_samples < 8) {
    meta.under_resolved = true;
    meta.warnings.push_back("coarse grid: fewer than 8 samples; bands or gaps may be missed");
  }

  std::vector<ScanPoint> pts(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double kappa =
        (i + 1 == n_samples) ? kappa_hi : kappa_lo + static_cast<double>(i) * meta.grid_spacing;
    pts[i] = {kappa, PointKind::Grid, 0, {}};
  }
  parallel_for(pts.size(), meta.threads, [&](std::size_t i) {
    pts[i].eval = evaluate_negative(geom, coupling, pts[i].param);
  });

  auto member = [&](double kappa) {
    return evaluate_negative(geom, coupling, kappa).decision.in_spectrum();
  };
  const auto [bands, gaps] = tile(pts, kappa_lo, kappa_hi, edge_tol, member, {});
  add_resolution_warnings(meta, bands, gaps);
  meta.gap_adjacent_to_zero = !pts.front().eval.decision.in_spectrum();

  // Increasing E = -κ² means decreasing κ.
  for (auto it = bands.rbegin(); it != bands.rend(); ++it) {
    report.bands.push_back({it->first, it->second, -it->second * it->second, -it->first * it->first});
  }
  for (auto it = gaps.rbegin(); it != gaps.rend(); ++it) {
    report.gaps.push_back({it->first, it->second, -it->second * it->second, -it->first * it->first});
  }
  if (options.keep_samples) {
    report.samples.reserve(pts.size());
    for (const auto& p : pts) {
      report.samples.push_back({p.param, -p.param * p.param, p.eval.absD, p.eval.env.lower,
                                p.eval.env.upper, p.eval.decision.kind});
    }
  }
  return report;
}

std::vector<double> flat_band_energies(const CommensurabilityWitness& witness, std::size_t n_max) {
  if (!(witness.d > 0.0) || witness.p < 1 || witness.q < 1 || witness.r < 1) {
    throw DomainError("invalid commensurability witness");
  }
  std::vector<double> ks;
  ks.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    ks.push_back(static_cast<double>(2.0L * kPiL * static_cast<long double>(n) / witness.d));
  }
  return ks;
}

std::vector<double> flat_band_energies(const HexGeometry& geom, std::size_t n_max) {
  const auto w = commensurability_witness(geom.a(), geom.b(), geom.c());
  if (!w) throw DomainError("edge lengths are not commensurate: no flat bands of the 2*pi*n/d family");
  return flat_band_energies(*w, n_max);
}

double verify_flat_band(const HexGeometry& geom, double k, double alpha) {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("k must be positive and finite");
  const std::array<double, 6> edges{geom.a(), geom.b(), geom.c(), geom.a(), geom.b(), geom.c()};
  std::array<long double, 7> s{};
  for (std::size_t j = 0; j < 6; ++j) s[j + 1] = s[j] + edges[j];

  auto sin_at = [k](long double pos) { return std::sin(static_cast<long double>(reduce_angle(pos * k))); };
  auto cos_at = [k](long double pos) { return std::cos(static_cast<long double>(reduce_angle(pos * k))); };

  long double worst = 0.0L;
  for (std::size_t j = 0; j < 6; ++j) {
    const long double end_in = (j == 0) ? s[6] : s[j];
    const long double v_in = sin_at(end_in);
    const long double v_out = sin_at(s[j]);
    // The third edge at each cycle vertex carries zero.
    worst = std::max({worst, std::abs(v_in - v_out), std::abs(v_in), std::abs(v_out)});
    const long double derivative_sum = k * cos_at(s[j]) - k * cos_at(end_in);
    worst = std::max(worst, std::abs(derivative_sum - alpha * v_out) / k);
  }
  return static_cast<double>(worst);
}

namespace {

/// Null vector of a (numerically) singular 4×4 matrix by complete-pivoting elimination.
std::array<Complex, 4> null_vector(MMatrix m) {
  std::array<int, 4> col{0, 1, 2, 3};
  for (int step = 0; step < 3; ++step) {
    int pr = step, pc = step;
    double best = -1.0;
    for (int r = step; r < 4; ++r) {
      for (int c = step; c < 4; ++c) {
        if (std::abs(m(r, c)) > best) {
          best = std::abs(m(r, c));
          pr = r;
          pc = c;
        }
      }
    }
    if (best == 0.0) throw NumericError("cell matrix has rank below 3");
    std::swap(m.entries[step], m.entries[pr]);
    for (int r = 0; r < 4; ++r) std::swap(m(r, step), m(r, pc));
    std::swap(col[step], col[pc]);
    for (int r = step + 1; r < 4; ++r) {
      const Complex f = m(r, step) / m(step, step);
      for (int c = step; c < 4; ++c) m(r, c) -= f * m(step, c);
    }
  }
  std::array<Complex, 4> y{};
  y[3] = 1.0;
  for (int i = 2; i >= 0; --i) {
    Complex acc = 0.0;
    for (int j = i + 1; j < 4; ++j) acc += m(i, j) * y[j];
    y[i] = -acc / m(i, i);
  }
  std::array<Complex, 4> x{};
  double norm = 0.0;
  for (int i = 0; i < 4; ++i) {
    x[col[i]] = y[i];
    norm += std::norm(y[i]);
  }
  norm = std::sqrt(norm);
  for (auto& v : x) v /= norm;
  return x;
}

Complex expi(long double angle) {
  const double r = reduce_angle(angle);
  return {std::cos(r), std::sin(r)};
}

Complex value(Complex plus, Complex minus, double k, long double x) {
  return plus * expi(k * x) + minus * expi(-k * x);
}

Complex slope(Complex plus, Complex minus, double k, long double x) {
  return Complex(0.0, k) * (plus * expi(k * x) - minus * expi(-k * x));
}

}  // namespace

CellWavefunction reconstruct_wavefunction(const HexGeometry& geom, const VertexCoupling& coupling,
                                          double k, const FloquetPhase& phase) {
  const MMatrix m = assemble_m_matrix(geom, coupling, k, phase);
  const auto x = null_vector(m);
  const long double a = geom.a(), b = geom.b(), c = geom.c();
  const long double t1 = phase.theta1(), t2 = phase.theta2();

  CellWavefunction wf;
  wf.C_plus[1] = x[0];
  wf.C_minus[1] = x[1];
  wf.C_plus[2] = x[2];
  wf.C_minus[2] = x[3];
  wf.D_plus[1] = x[0] * expi(b * k - t1);
  wf.D_minus[1] = x[1] * expi(-b * k - t1);
  wf.D_plus[2] = x[2] * expi(c * k - t2);
  wf.D_minus[2] = x[3] * expi(-c * k - t2);

  // ψ1(a/2) and φ1(-a/2) equal the two vertex values.
  const Complex v1 = x[0] + x[1];
  const Complex v2 = wf.D_plus[1] + wf.D_minus[1];
  const Complex denom = Complex(0.0, 2.0) * sin_of(geom.a(), k);
  wf.C_plus[0] = (v1 * expi(k * a / 2) - v2 * expi(-k * a / 2)) / denom;
  wf.C_minus[0] = (v2 * expi(k * a / 2) - v1 * expi(-k * a / 2)) / denom;
  wf.D_plus[0] = wf.C_plus[0];
  wf.D_minus[0] = wf.C_minus[0];
  return wf;
}

double cell_residual(const HexGeometry& geom, const VertexCoupling& coupling, double k,
                     const FloquetPhase& phase, const CellWavefunction& wf) {
  const long double a = geom.a(), b = geom.b(), c = geom.c();
  const Complex e1 = expi(phase.theta1()), e2 = expi(phase.theta2());
  const double alpha = coupling.alpha;

  auto psi = [&](int i, long double x) { return value(wf.C_plus[i], wf.C_minus[i], k, x); };
  auto dpsi = [&](int i, long double x) { return slope(wf.C_plus[i], wf.C_minus[i], k, x); };
  auto phi = [&](int i, long double x) { return value(wf.D_plus[i], wf.D_minus[i], k, x); };
  auto dphi = [&](int i, long double x) { return slope(wf.D_plus[i], wf.D_minus[i], k, x); };

  const Complex v1 = psi(1, 0), v2 = phi(1, 0);
  std::vector<Complex> r{
      psi(1, 0) - psi(2, 0),
      psi(1, 0) - psi(0, a / 2),
      (dpsi(1, 0) + dpsi(2, 0) - dpsi(0, a / 2) - alpha * v1) / k,
      phi(1, 0) - phi(2, 0),
      phi(1, 0) - phi(0, -a / 2),
      (-dphi(1, 0) - dphi(2, 0) + dphi(0, -a / 2) - alpha * v2) / k,
      psi(1, b / 2) - e1 * phi(1, -b / 2),
      psi(2, c / 2) - e2 * phi(2, -c / 2),
      (dpsi(1, b / 2) - e1 * dphi(1, -b / 2)) / k,
      (dpsi(2, c / 2) - e2 * dphi(2, -c / 2)) / k,
      wf.C_plus[0] - wf.D_plus[0],
      wf.C_minus[0] - wf.D_minus[0],
  };
  double scale = 0.0;
  for (int i = 0; i < 3; ++i) {
    scale = std::max({scale, std::abs(wf.C_plus[i]), std::abs(wf.C_minus[i]),
                      std::abs(wf.D_plus[i]), std::abs(wf.D_minus[i])});
  }
  if (scale == 0.0) throw NumericError("trivial wavefunction");
  double worst = 0.0;
  for (const auto& v : r) worst = std::max(worst, std::abs(v));
  return worst / scale;
}

}  // namespace hexband
