#include "hexband/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <random>
#include <regex>

#include "hexband/band_engine.hpp"
#include "hexband/errors.hpp"
#include "hexband/gap_conditions.hpp"
#include "hexband/oracle.hpp"
#include "hexband/report_io.hpp"

namespace hexband::cli {

namespace {

struct CommonArgs {
  std::string a, b, c;
  double alpha = 0.0;
  std::string format = "json";
  std::string output = "-";
  std::string config;
  double dirichlet_tol = kDefaultDirichletTol;
  double ratio_tol = 1e-14;
  long long max_den = 1000000;
};

struct ScanArgs {
  double kmin = 0.01;
  double kmax = 10.0 * std::numbers::pi;
  std::size_t samples = 20001;
  double edge_tol = 1e-10;
  bool negative = false;
  double kappa_min = 1e-4;
  double kappa_max = 5.0;
  std::size_t kappa_samples = 20001;
  std::size_t threads = 0;
};

struct ClassifyArgs {
  std::size_t depth = 20;
  std::size_t count = 3;
  std::size_t terms = 20;
};

struct FlatArgs {
  std::size_t n_max = 3;
};

struct VerifyArgs {
  std::string suite = "all";
  std::size_t det_samples = 1000;
  std::size_t envelope_samples = 20;
  std::size_t trig_samples = 200;
  std::size_t grid_n = 1024;
  std::size_t refine = 2;
  double det_tol = 1e-9;
  double envelope_tol = 1e-3;
  double trig_tol = 1e-6;
  std::uint64_t seed = 20240601;
};

struct Lengths {
  RatioInput a, b, c;
  HexGeometry geom;
};

BigInt parse_big(const std::string& s) { return BigInt(s); }

Lengths load_lengths(const CommonArgs& args, bool need_c) {
  if (args.a.empty()) throw ConfigError("--a: required");
  if (args.b.empty()) throw ConfigError("--b: required");
  std::string c_text = args.c;
  if (c_text.empty()) {
    if (need_c) throw ConfigError("--c: required");
    c_text = args.b;
  }
  RatioInput a = parse_length(args.a, "--a");
  RatioInput b = parse_length(args.b, "--b");
  RatioInput c = parse_length(c_text, "--c");
  HexGeometry geom(a.to_double(), b.to_double(), c.to_double());
  return {std::move(a), std::move(b), std::move(c), geom};
}

VertexCoupling load_coupling(const CommonArgs& args) {
  if (!std::isfinite(args.alpha)) throw ConfigError("--alpha: must be finite");
  return VertexCoupling(args.alpha);
}

void check_format(const CommonArgs& args) {
  if (args.format != "json" && args.format != "csv") {
    throw ConfigError("--format: expected 'json' or 'csv', got '" + args.format + "'");
  }
}

void check_scan(const ScanArgs& s) {
  if (!(s.kmin > 0.0)) throw ConfigError("--kmin: must be positive");
  if (!(s.kmax > s.kmin)) throw ConfigError("--kmax: must exceed --kmin");
  if (s.samples < 2) throw ConfigError("--samples: must be at least 2");
  if (!(s.edge_tol > 0.0)) throw ConfigError("--edge-tol: must be positive");
  if (s.negative) {
    if (!(s.kappa_min > 0.0)) throw ConfigError("--kappa-min: must be positive");
    if (!(s.kappa_max > s.kappa_min)) throw ConfigError("--kappa-max: must exceed --kappa-min");
    if (s.kappa_samples < 2) throw ConfigError("--kappa-samples: must be at least 2");
  }
}

Json input_json(const CommonArgs& args, const Lengths& len) {
  return Json{{"a", args.a},
              {"b", args.b},
              {"c", args.c.empty() ? args.b : args.c},
              {"a_value", len.geom.a()},
              {"b_value", len.geom.b()},
              {"c_value", len.geom.c()},
              {"alpha", args.alpha}};
}

void emit(const CommonArgs& args, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (args.output.empty() || args.output == "-") {
    body(out);
    return;
  }
  std::ofstream file(args.output);
  if (!file) throw ConfigError("--output: cannot open '" + args.output + "' for writing");
  body(file);
}

void add_common(CLI::App* sub, CommonArgs& args, bool with_c) {
  sub->add_option("--a", args.a, "edge length a (decimal, p/q or (P+sqrt(D))/Q)");
  sub->add_option("--b", args.b, "edge length b");
  if (with_c) sub->add_option("--c", args.c, "edge length c");
  sub->add_option("--alpha", args.alpha, "delta-coupling strength");
  sub->add_option("--format", args.format, "csv or json");
  sub->add_option("--output", args.output, "output path, '-' for stdout");
  sub->add_option("--config", args.config, "JSON file mirroring the flags; flags win");
  sub->add_option("--dirichlet-tol", args.dirichlet_tol, "relative Dirichlet guard");
  sub->add_option("--ratio-tol", args.ratio_tol, "rational reconstruction tolerance");
  sub->add_option("--max-den", args.max_den, "rational reconstruction denominator cap");
}

void add_scan(CLI::App* sub, ScanArgs& s) {
  sub->add_option("--kmin", s.kmin, "lower end of the k window");
  sub->add_option("--kmax", s.kmax, "upper end of the k window");
  sub->add_option("--samples", s.samples, "uniform k samples");
  sub->add_option("--edge-tol", s.edge_tol, "bisection width for band edges");
  sub->add_flag("--negative", s.negative, "also scan the negative branch");
  sub->add_option("--kappa-min", s.kappa_min, "lower end of the kappa window");
  sub->add_option("--kappa-max", s.kappa_max, "upper end of the kappa window");
  sub->add_option("--kappa-samples", s.kappa_samples, "uniform kappa samples");
  sub->add_option("--threads", s.threads, "worker threads (0: all cores; HEXBAND_THREADS caps)");
}

void apply_config(CLI::App* sub, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config: cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("--config: '" + path + "' is not valid JSON");
  }
  if (!j.is_object()) throw ConfigError("--config: top level must be an object");
  for (const auto& [key, value] : j.items()) {
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr || key == "config") throw ConfigError("--config: unknown field '" + key + "'");
    if (opt->count() > 0) continue;
    std::string text;
    if (value.is_string()) {
      text = value.get<std::string>();
    } else if (value.is_boolean()) {
      text = value.get<bool>() ? "true" : "false";
    } else if (value.is_number()) {
      text = value.dump();
    } else {
      throw ConfigError("--config: field '" + key + "' must be a string, number or boolean");
    }
    try {
      opt->add_result(text);
      opt->run_callback();
    } catch (const CLI::Error&) {
      throw ConfigError("--" + key + ": invalid value '" + text + "' in config file");
    }
  }
}

ScanOptions scan_options(const CommonArgs& args, const ScanArgs& s) {
  ScanOptions o;
  o.dirichlet_tol = args.dirichlet_tol;
  o.threads = s.threads;
  return o;
}

// ---------------------------------------------------------------- bands

int cmd_bands(const CommonArgs& args, const ScanArgs& scan, std::ostream& out) {
  check_format(args);
  check_scan(scan);
  const Lengths len = load_lengths(args, true);
  const VertexCoupling coupling = load_coupling(args);
  const ScanOptions opts = scan_options(args, scan);

  const SpectrumReport pos =
      scan_spectrum(len.geom, coupling, scan.kmin, scan.kmax, scan.samples, scan.edge_tol, opts);
  std::optional<SpectrumReport> neg;
  if (scan.negative) {
    neg = negative_spectrum_scan(len.geom, coupling, scan.kappa_min, scan.kappa_max,
                                 scan.kappa_samples, scan.edge_tol, opts);
  }

  emit(args, out, [&](std::ostream& os) {
    if (args.format == "csv") {
      if (neg) {
        SpectrumReport rev = *neg;
        std::reverse(rev.samples.begin(), rev.samples.end());
        write_samples_csv(os, rev);
        SpectrumReport body = pos;
        std::ostringstream tmp;
        write_samples_csv(tmp, body);
        const std::string text = tmp.str();
        os << text.substr(text.find('\n') + 1);
      } else {
        write_samples_csv(os, pos);
      }
      return;
    }
    Json j = to_json(pos);
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "bands";
    doc["input"] = input_json(args, len);
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.key() != "schema_version") doc[it.key()] = it.value();
    }
    if (neg) doc["negative"] = to_json(*neg);
    os << doc.dump(2) << '\n';
  });
  return kOk;
}

// ---------------------------------------------------------------- gaps

struct GapRow {
  std::string branch;
  SpectralInterval iv;
  std::string attribution;
  std::optional<PredictedCenter> center;
};

int cmd_gaps(const CommonArgs& args, const ScanArgs& scan, std::ostream& out) {
  check_format(args);
  check_scan(scan);
  const Lengths len = load_lengths(args, true);
  const VertexCoupling coupling = load_coupling(args);
  const ScanOptions opts = scan_options(args, scan);
  GapOptions gopt;
  gopt.dirichlet_tol = args.dirichlet_tol;

  const SpectrumReport pos =
      scan_spectrum(len.geom, coupling, scan.kmin, scan.kmax, scan.samples, scan.edge_tol, opts);

  // Predicted centres apply to b = c with irrational a/b.
  std::vector<PredictedCenter> centers;
  std::string centers_note;
  if (len.geom.b() == len.geom.c() && coupling.alpha != 0.0) {
    const RatioInput theta = ratio_of(len.a, len.b);
    if (theta.is_rational()) {
      centers_note = "a/b rational: gaps sit at the commensurability points";
    } else {
      const double top = std::max(len.geom.a(), len.geom.b());
      const auto count = static_cast<std::size_t>(scan.kmax * top / std::numbers::pi) + 2;
      centers = predicted_gap_centers(theta, len.geom.b(), coupling.alpha, std::min<std::size_t>(count, 40));
    }
  }

  std::vector<GapRow> rows;
  for (const auto& g : pos.gaps) {
    GapRow row{"positive", g, "", std::nullopt};
    const double mid = 0.5 * (g.param_lo + g.param_hi);
    row.attribution = to_string(attribute_gap(len.geom, coupling, mid, gopt));
    const double slack = std::max(scan.edge_tol, 1e-9 * std::max(1.0, g.param_hi));
    for (const auto& c : centers) {
      if (c.k >= g.param_lo - slack && c.k <= g.param_hi + slack) {
        row.center = c;
        break;
      }
    }
    rows.push_back(std::move(row));
  }
  if (scan.negative) {
    const SpectrumReport neg = negative_spectrum_scan(len.geom, coupling, scan.kappa_min, scan.kappa_max,
                                                      scan.kappa_samples, scan.edge_tol, opts);
    std::vector<GapRow> neg_rows;
    for (const auto& g : neg.gaps) {
      GapRow row{"negative", g, "", std::nullopt};
      const auto flags = gc_negative(len.geom, coupling, 0.5 * (g.param_lo + g.param_hi));
      row.attribution = flags.gc1_neg ? "GC1" : (flags.gc2_neg ? "GC2" : "");
      neg_rows.push_back(std::move(row));
    }
    rows.insert(rows.begin(), neg_rows.begin(), neg_rows.end());
  }

  emit(args, out, [&](std::ostream& os) {
    if (args.format == "csv") {
      os << "branch,k_lo,k_hi,E_lo,E_hi,attribution,predicted_center,family\n";
      for (const auto& r : rows) {
        os << r.branch << ',' << format_double(r.iv.param_lo) << ',' << format_double(r.iv.param_hi) << ','
           << format_double(r.iv.E_lo) << ',' << format_double(r.iv.E_hi) << ',' << r.attribution << ','
           << (r.center ? format_double(r.center->k) : "") << ','
           << (r.center ? to_string(r.center->family) : "") << '\n';
      }
      return;
    }
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "gaps";
    doc["input"] = input_json(args, len);
    Json list = Json::array();
    for (const auto& r : rows) {
      Json g = to_json(r.iv);
      g["branch"] = r.branch;
      g["attribution"] = r.attribution;
      g["predicted_center"] = r.center ? to_json(*r.center) : Json(nullptr);
      list.push_back(std::move(g));
    }
    doc["gaps"] = std::move(list);
    Json pc = Json::array();
    for (const auto& c : centers) pc.push_back(to_json(c));
    doc["predicted_centers"] = std::move(pc);
    if (!centers_note.empty()) doc["note"] = centers_note;
    doc["meta"] = to_json(pos)["meta"];
    os << doc.dump(2) << '\n';
  });
  return kOk;
}

// ---------------------------------------------------------------- classify

int cmd_classify(const CommonArgs& args, const ClassifyArgs& cl, std::ostream& out) {
  check_format(args);
  if (cl.depth < 2) throw ConfigError("--depth: must be at least 2");
  const Lengths len = load_lengths(args, false);
  const RatioInput theta = ratio_of(len.a, len.b);
  const RatioClass cls = classify_ratio(theta, cl.depth);

  std::optional<double> gamma;
  if (cls.kind == RatioClass::Kind::BadlyApproximable) {
    gamma = approx_constant(theta, cl.depth);
  } else if (cls.kind == RatioClass::Kind::UnknownNumeric && cls.gamma_lower > 0.0) {
    gamma = cls.gamma_lower;
  }
  const ThresholdReport thresholds = thresholds_bc(len.geom.a(), len.geom.b(), cls, gamma);

  const ContinuedFraction cf = cf_expand(theta, std::max<std::size_t>(cl.depth, cl.terms));
  const std::size_t n_conv = std::min<std::size_t>(cl.terms, cf.available() == std::numeric_limits<std::size_t>::max()
                                                                 ? cl.terms
                                                                 : cf.available() + 1);
  const auto cs = convergents(cf, theta, std::max<std::size_t>(1, n_conv));

  std::vector<PredictedCenter> centers;
  if (!theta.is_rational() && args.alpha != 0.0) {
    centers = predicted_gap_centers(theta, len.geom.b(), args.alpha, cl.count);
  }

  emit(args, out, [&](std::ostream& os) {
    if (args.format == "csv") {
      os << "field,value\n";
      os << "theta," << theta.to_string() << '\n';
      os << "class," << to_string(cls.kind) << '\n';
      os << "certification," << cls.certification << '\n';
      os << "gamma," << (gamma ? format_double(*gamma) : "") << '\n';
      auto th = [&](const char* name, const Threshold& t) {
        os << name << ',' << (t.value ? format_double(*t.value) : "") << '\n';
      };
      th("gc1_guarantee", thresholds.gc1_guarantee);
      th("gc1_nogap_bound", thresholds.gc1_nogap_bound);
      th("gc2_guarantee", thresholds.gc2_guarantee);
      th("gc2_nogap_bound", thresholds.gc2_nogap_bound);
      th("g_lower_bound", thresholds.g_lower_bound);
      os << "gc1_guarantee_alternative," << format_double(thresholds.gc1_guarantee_alternative) << '\n';
      for (const auto& c : centers) os << "predicted_center," << format_double(c.k) << '\n';
      return;
    }
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "classify";
    doc["input"] = Json{{"a", args.a}, {"b", args.b}, {"alpha", args.alpha}, {"theta", theta.to_string()}};
    if (!args.c.empty() && len.geom.c() != len.geom.b()) {
      doc["warning"] = "thresholds assume b = c; the given c differs from b";
    }
    doc["classification"] = to_json(cls);
    doc["continued_fraction"] = to_json(cf, cl.terms);
    doc["convergents"] = to_json(cs);
    doc["thresholds"] = to_json(thresholds);
    Json pc = Json::array();
    for (const auto& c : centers) pc.push_back(to_json(c));
    doc["predicted_centers"] = std::move(pc);
    os << doc.dump(2) << '\n';
  });
  return kOk;
}

// ---------------------------------------------------------------- flatbands

int cmd_flatbands(const CommonArgs& args, const FlatArgs& fl, std::ostream& out, std::ostream& err) {
  check_format(args);
  if (fl.n_max < 1) throw ConfigError("--n-max: must be at least 1");
  if (!(args.ratio_tol > 0.0)) throw ConfigError("--ratio-tol: must be positive");
  if (args.max_den < 1) throw ConfigError("--max-den: must be at least 1");
  const Lengths len = load_lengths(args, true);

  std::optional<CommensurabilityWitness> witness;
  if (len.a.is_exact() && len.b.is_exact() && len.c.is_exact() && !len.a.is_generated()) {
    witness = commensurability_witness(len.a, len.b, len.c);
  } else {
    witness = commensurability_witness(len.geom.a(), len.geom.b(), len.geom.c(), args.ratio_tol, args.max_den);
  }

  struct Row {
    std::size_t n;
    double k, E, residual;
  };
  std::vector<Row> rows;
  if (witness) {
    const auto ks = flat_band_energies(*witness, fl.n_max);
    for (std::size_t i = 0; i < ks.size(); ++i) {
      rows.push_back({i + 1, ks[i], ks[i] * ks[i], verify_flat_band(len.geom, ks[i], args.alpha)});
    }
  }
  const std::string message =
      witness ? "" : "edge lengths are incommensurate: no flat bands (a common unit d with a, b, c in dZ does not exist)";
  if (!witness) err << message << '\n';

  emit(args, out, [&](std::ostream& os) {
    if (args.format == "csv") {
      os << "n,k,E,residual\n";
      for (const auto& r : rows) {
        os << r.n << ',' << format_double(r.k) << ',' << format_double(r.E) << ',' << format_double(r.residual) << '\n';
      }
      return;
    }
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "flatbands";
    doc["input"] = input_json(args, len);
    doc["witness"] = witness ? Json{{"d", witness->d}, {"p", witness->p}, {"q", witness->q},
                                    {"r", witness->r}, {"exact", witness->exact}}
                             : Json(nullptr);
    Json list = Json::array();
    for (const auto& r : rows) {
      list.push_back(Json{{"n", r.n}, {"k", r.k}, {"E", r.E}, {"residual", r.residual}});
    }
    doc["flat_bands"] = std::move(list);
    if (!witness) doc["message"] = message;
    os << doc.dump(2) << '\n';
  });
  return kOk;
}

// ---------------------------------------------------------------- verify

struct SuiteResult {
  std::string name;
  std::size_t samples = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

SuiteResult verify_det(const VerifyArgs& v, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> len(0.5, 3.0), al(-5.0, 5.0), kk(0.1, 30.0), th(-kPi, kPi);
  SuiteResult r{"det", 0, 0.0, v.det_tol, false};
  while (r.samples < v.det_samples) {
    const HexGeometry g(len(rng), len(rng), len(rng));
    const VertexCoupling c(al(rng));
    const double k = kk(rng);
    const FloquetPhase ph(th(rng), th(rng));
    if (std::abs(sin_of(g.a(), k)) <= 1e-3) continue;
    const Complex closed = det_m_closed_form(g, c, k, ph);
    const Complex numeric = det_numeric(assemble_m_matrix(g, c, k, ph));
    r.max_deviation = std::max(r.max_deviation, std::abs(closed - numeric) / (1.0 + std::abs(numeric)));
    ++r.samples;
  }
  r.pass = r.max_deviation <= r.tolerance;
  return r;
}

SuiteResult verify_envelope(const VerifyArgs& v, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> len(0.5, 3.0), kk(0.1, 30.0);
  SuiteResult r{"envelope", 0, 0.0, v.envelope_tol, false};
  const GridSpec grid(v.grid_n, v.refine);
  while (r.samples < v.envelope_samples) {
    const HexGeometry g(len(rng), len(rng), len(rng));
    const double k = kk(rng);
    const SineTriple s = sine_triple(g, k);
    if (std::min({std::abs(s.s_a()), std::abs(s.s_b()), std::abs(s.s_c())}) < 0.05) continue;
    const RhsEnvelope env = rhs_envelope(g, k);
    const Extrema ex = rhs_extrema_grid(g, k, grid);
    r.max_deviation = std::max({r.max_deviation, std::abs(ex.min - env.lower * env.lower),
                                std::abs(ex.max - env.upper * env.upper)});
    ++r.samples;
  }
  r.pass = r.max_deviation <= r.tolerance;
  return r;
}

SuiteResult verify_trig(const VerifyArgs& v, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mag(0.1, 10.0);
  std::bernoulli_distribution flip(0.5);
  SuiteResult r{"trig_min", 0, 0.0, v.trig_tol, false};
  const GridSpec grid(std::max<std::size_t>(v.grid_n / 4, 8), v.refine);
  while (r.samples < v.trig_samples) {
    double A = mag(rng), B = mag(rng), C = mag(rng);
    if (flip(rng)) {
      A = -A;
      B = -B;
    }
    const double closed = trig_min_f(TrigCoefficients(A, B, C));
    const double grid_min = trig_min_grid(A, B, C, grid);
    r.max_deviation = std::max(r.max_deviation, std::abs(closed - grid_min));
    ++r.samples;
  }
  r.pass = r.max_deviation <= r.tolerance;
  return r;
}

int cmd_verify(const CommonArgs& args, const VerifyArgs& v, std::ostream& out) {
  check_format(args);
  if (v.suite != "all" && v.suite != "det" && v.suite != "envelope" && v.suite != "trig") {
    throw ConfigError("--suite: expected all, det, envelope or trig");
  }
  if (v.grid_n < 8) throw ConfigError("--grid-n: must be at least 8");
  if (!(v.det_tol >= 0.0)) throw ConfigError("--det-tol: must be nonnegative");
  if (!(v.envelope_tol >= 0.0)) throw ConfigError("--envelope-tol: must be nonnegative");
  if (!(v.trig_tol >= 0.0)) throw ConfigError("--trig-tol: must be nonnegative");

  std::mt19937_64 rng(v.seed);
  std::vector<SuiteResult> results;
  if (v.suite == "all" || v.suite == "det") results.push_back(verify_det(v, rng));
  if (v.suite == "all" || v.suite == "envelope") results.push_back(verify_envelope(v, rng));
  if (v.suite == "all" || v.suite == "trig") results.push_back(verify_trig(v, rng));
  const bool pass = std::all_of(results.begin(), results.end(), [](const SuiteResult& r) { return r.pass; });

  emit(args, out, [&](std::ostream& os) {
    if (args.format == "csv") {
      os << "suite,samples,max_deviation,tolerance,pass\n";
      for (const auto& r : results) {
        os << r.name << ',' << r.samples << ',' << format_double(r.max_deviation) << ','
           << format_double(r.tolerance) << ',' << (r.pass ? "true" : "false") << '\n';
      }
      return;
    }
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "verify";
    doc["seed"] = v.seed;
    Json list = Json::array();
    for (const auto& r : results) {
      list.push_back(Json{{"suite", r.name},
                          {"samples", r.samples},
                          {"max_deviation", r.max_deviation},
                          {"tolerance", r.tolerance},
                          {"pass", r.pass}});
    }
    doc["suites"] = std::move(list);
    doc["pass"] = pass;
    os << doc.dump(2) << '\n';
  });
  return pass ? kOk : kVerifyFailure;
}

}  // namespace

RatioInput parse_length(const std::string& raw, const std::string& field) {
  static const std::regex rational_re(R"(^\s*(\d+)\s*(?:/\s*(\d+))?\s*$)");
  static const std::regex surd_re(
      R"(^\s*\(?\s*([+-]?\d+)?\s*([+-])?\s*sqrt\(\s*(\d+)\s*\)\s*\)?\s*(?:/\s*([+-]?\d+))?\s*$)");
  std::smatch m;
  try {
    if (std::regex_match(raw, m, rational_re)) {
      const BigInt p = parse_big(m[1].str()), q = m[2].matched ? parse_big(m[2].str()) : BigInt(1);
      if (p == 0 || q == 0) throw ConfigError(field + ": must be positive, got '" + raw + "'");
      return RatioInput::rational(p, q);
    }
    if (std::regex_match(raw, m, surd_re)) {
      const bool has_paren = raw.find('(') < raw.find("sqrt");
      if (m[1].matched && !m[2].matched) throw ConfigError(field + ": malformed surd '" + raw + "'");
      if (m[4].matched && !has_paren && m[1].matched) throw ConfigError(field + ": malformed surd '" + raw + "'");
      const BigInt P = m[1].matched ? parse_big(m[1].str()[0] == '+' ? m[1].str().substr(1) : m[1].str()) : BigInt(0);
      const bool minus = m[2].matched && m[2].str() == "-";
      const BigInt D = parse_big(m[3].str());
      BigInt Q = m[4].matched ? parse_big(m[4].str()[0] == '+' ? m[4].str().substr(1) : m[4].str()) : BigInt(1);
      if (Q == 0) throw ConfigError(field + ": zero denominator in '" + raw + "'");
      const BigInt s = boost::multiprecision::sqrt(D);
      if (s * s == D) {
        // Perfect square: the value is rational.
        const BigInt num = minus ? BigInt(P - s) : BigInt(P + s);
        if ((num > 0) != (Q > 0) || num == 0) throw ConfigError(field + ": must be positive, got '" + raw + "'");
        return RatioInput::rational(num < 0 ? BigInt(-num) : num, Q < 0 ? BigInt(-Q) : Q);
      }
      // (P - √D)/Q = (-P + √D)/(-Q)
      return minus ? RatioInput::quadratic(-P, -Q, D) : RatioInput::quadratic(P, Q, D);
    }
    double x = 0.0;
    const char* first = raw.data();
    const char* last = raw.data() + raw.size();
    const auto res = std::from_chars(first, last, x);
    if (res.ec != std::errc() || res.ptr != last) {
      throw ConfigError(field + ": cannot parse '" + raw + "' (expected decimal, p/q or (P+sqrt(D))/Q)");
    }
    if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError(field + ": must be positive and finite, got '" + raw + "'");
    return RatioInput::numeric(x);
  } catch (const DomainError& e) {
    throw ConfigError(field + ": " + e.what());
  }
}

RatioInput ratio_of(const RatioInput& a, const RatioInput& b) {
  const auto exact_field = [](const RatioInput& x) { return x.is_rational() || x.is_quadratic(); };
  if (exact_field(a) && exact_field(b)) {
    const auto q = QuadraticNumber::divide(QuadraticNumber::from_ratio(a), QuadraticNumber::from_ratio(b));
    if (q) return q->to_ratio();
  }
  return RatioInput::numeric(a.to_double() / b.to_double());
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Band and gap structure of the dilated honeycomb quantum graph with delta coupling", "hexband"};
  app.require_subcommand(1);

  CommonArgs common;
  ScanArgs scan;
  ClassifyArgs classify;
  FlatArgs flat;
  VerifyArgs verify;

  auto* bands = app.add_subcommand("bands", "scan the spectrum into bands and gaps");
  add_common(bands, common, true);
  add_scan(bands, scan);

  auto* gaps = app.add_subcommand("gaps", "gap table with GC1/GC2 attribution");
  add_common(gaps, common, true);
  add_scan(gaps, scan);

  auto* cls = app.add_subcommand("classify", "classify a/b and report coupling thresholds (b = c)");
  add_common(cls, common, true);
  cls->add_option("--depth", classify.depth, "convergent depth for gamma");
  cls->add_option("--count", classify.count, "predicted gap centres per family");
  cls->add_option("--terms", classify.terms, "continued-fraction terms to print");

  auto* fb = app.add_subcommand("flatbands", "flat bands of commensurate geometries");
  add_common(fb, common, true);
  fb->add_option("--n-max", flat.n_max, "number of flat-band energies");

  auto* ver = app.add_subcommand("verify", "compare closed forms against the brute-force oracle");
  add_common(ver, common, true);
  ver->add_option("--suite", verify.suite, "all, det, envelope or trig");
  ver->add_option("--det-samples", verify.det_samples);
  ver->add_option("--envelope-samples", verify.envelope_samples);
  ver->add_option("--trig-samples", verify.trig_samples);
  ver->add_option("--grid-n", verify.grid_n, "phase grid points per axis");
  ver->add_option("--refine", verify.refine, "refinement rounds");
  ver->add_option("--det-tol", verify.det_tol);
  ver->add_option("--envelope-tol", verify.envelope_tol);
  ver->add_option("--trig-tol", verify.trig_tol);
  ver->add_option("--seed", verify.seed);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "hexband: " << e.what() << '\n';
    return kConfigError;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    if (!common.config.empty()) apply_config(sub, common.config);
    if (sub == bands) return cmd_bands(common, scan, out);
    if (sub == gaps) return cmd_gaps(common, scan, out);
    if (sub == cls) return cmd_classify(common, classify, out);
    if (sub == fb) return cmd_flatbands(common, flat, out, err);
    return cmd_verify(common, verify, out);
  } catch (const ConfigError& e) {
    err << "hexband: config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DirichletPointError& e) {
    err << "hexband: numeric error: " << e.what() << " (k = " << format_double(e.k()) << ")\n";
    return kNumericError;
  } catch (const DomainError& e) {
    err << "hexband: config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericError& e) {
    err << "hexband: numeric error: " << e.what() << '\n';
    return kNumericError;
  } catch (const std::exception& e) {
    err << "hexband: numeric error: " << e.what() << '\n';
    return kNumericError;
  }
}

}  // namespace hexband::cli
