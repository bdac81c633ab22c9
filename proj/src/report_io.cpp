#include "hexband/report_io.hpp"

#include <ostream>
#include <sstream>

#include "hexband/errors.hpp"

namespace hexband {

namespace {

Json optional_number(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json to_json(const Threshold& t) {
  return Json{{"value", optional_number(t.value)}, {"provenance", t.provenance}};
}

std::string big_to_string(const BigInt& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

Json edges_json(const std::array<bool, 3>& e) {
  Json out = Json::array();
  const char* names[3] = {"a", "b", "c"};
  for (int i = 0; i < 3; ++i) {
    if (e[i]) out.push_back(names[i]);
  }
  return out;
}

std::array<bool, 3> edges_from_json(const Json& j) {
  std::array<bool, 3> e{};
  for (const auto& name : j) {
    const auto s = name.get<std::string>();
    if (s == "a") e[0] = true;
    if (s == "b") e[1] = true;
    if (s == "c") e[2] = true;
  }
  return e;
}

SpectralInterval interval_from_json(const Json& j) {
  return {j.at("param_lo").get<double>(), j.at("param_hi").get<double>(), j.at("E_lo").get<double>(),
          j.at("E_hi").get<double>()};
}

}  // namespace

std::string format_double(double x) {
  return Json(x).dump();
}

Json to_json(const SpectralInterval& iv) {
  return Json{{"param_lo", iv.param_lo}, {"param_hi", iv.param_hi}, {"E_lo", iv.E_lo}, {"E_hi", iv.E_hi}};
}

Json to_json(const SpectrumReport& r) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["branch"] = to_string(r.branch);
  j["window"] = Json{{"param_lo", r.param_lo}, {"param_hi", r.param_hi}, {"E_lo", r.E_lo}, {"E_hi", r.E_hi}};
  j["bands"] = Json::array();
  for (const auto& b : r.bands) j["bands"].push_back(to_json(b));
  j["gaps"] = Json::array();
  for (const auto& g : r.gaps) j["gaps"].push_back(to_json(g));
  j["flat_bands"] = Json::array();
  for (const auto& f : r.flat_bands) {
    j["flat_bands"].push_back(Json{{"k", f.k},
                                   {"E", f.E},
                                   {"residual", f.residual},
                                   {"full_period", f.full_period},
                                   {"embedded", f.embedded},
                                   {"multiplicity", "infinite"}});
  }
  j["dirichlet_points"] = Json::array();
  for (const auto& d : r.dirichlet_points) {
    j["dirichlet_points"].push_back(Json{{"k", d.k}, {"E", d.E}, {"edges", edges_json(d.edges)}});
  }
  Json meta;
  meta["n_samples"] = r.meta.n_samples;
  meta["grid_spacing"] = r.meta.grid_spacing;
  meta["edge_tol"] = r.meta.edge_tol;
  meta["dirichlet_tol"] = r.meta.dirichlet_tol;
  meta["under_resolved"] = r.meta.under_resolved;
  meta["warnings"] = r.meta.warnings;
  meta["gap_adjacent_to_zero"] =
      r.meta.gap_adjacent_to_zero ? Json(*r.meta.gap_adjacent_to_zero) : Json(nullptr);
  j["meta"] = std::move(meta);
  return j;
}

SpectrumReport spectrum_report_from_json(const Json& j) {
  if (j.value("schema_version", 0) != kSchemaVersion) {
    throw DomainError("unsupported spectrum report schema_version");
  }
  SpectrumReport r;
  const auto branch = j.at("branch").get<std::string>();
  if (branch != "positive" && branch != "negative") throw DomainError("unknown branch '" + branch + "'");
  r.branch = branch == "positive" ? Branch::Positive : Branch::Negative;
  const Json& w = j.at("window");
  r.param_lo = w.at("param_lo").get<double>();
  r.param_hi = w.at("param_hi").get<double>();
  r.E_lo = w.at("E_lo").get<double>();
  r.E_hi = w.at("E_hi").get<double>();
  for (const auto& b : j.at("bands")) r.bands.push_back(interval_from_json(b));
  for (const auto& g : j.at("gaps")) r.gaps.push_back(interval_from_json(g));
  for (const auto& f : j.at("flat_bands")) {
    r.flat_bands.push_back({f.at("k").get<double>(), f.at("E").get<double>(),
                            f.at("residual").get<double>(), f.at("full_period").get<bool>(),
                            f.at("embedded").get<bool>()});
  }
  for (const auto& d : j.at("dirichlet_points")) {
    r.dirichlet_points.push_back({d.at("k").get<double>(), d.at("E").get<double>(), edges_from_json(d.at("edges"))});
  }
  const Json& m = j.at("meta");
  r.meta.n_samples = m.at("n_samples").get<std::size_t>();
  r.meta.grid_spacing = m.at("grid_spacing").get<double>();
  r.meta.edge_tol = m.at("edge_tol").get<double>();
  r.meta.dirichlet_tol = m.at("dirichlet_tol").get<double>();
  r.meta.under_resolved = m.at("under_resolved").get<bool>();
  r.meta.warnings = m.at("warnings").get<std::vector<std::string>>();
  if (!m.at("gap_adjacent_to_zero").is_null()) r.meta.gap_adjacent_to_zero = m.at("gap_adjacent_to_zero").get<bool>();
  return r;
}

void write_samples_csv(std::ostream& os, const SpectrumReport& report) {
  os << "k,E,absD,lower,upper,decision\n";
  for (const auto& s : report.samples) {
    os << format_double(s.param) << ',' << format_double(s.E) << ',' << format_double(s.absD) << ','
       << format_double(s.lower) << ',' << format_double(s.upper) << ',' << to_string(s.decision) << '\n';
  }
}

Json to_json(const ThresholdReport& r) {
  Json j;
  j["a"] = r.a;
  j["b"] = r.b;
  j["ratio_class"] = to_string(r.ratio_class);
  j["gamma"] = optional_number(r.gamma);
  j["gc1_guarantee"] = to_json(r.gc1_guarantee);
  j["gc1_nogap_bound"] = to_json(r.gc1_nogap_bound);
  j["gc2_guarantee"] = to_json(r.gc2_guarantee);
  j["gc2_nogap_bound"] = to_json(r.gc2_nogap_bound);
  j["g_lower_bound"] = to_json(r.g_lower_bound);
  j["gc1_guarantee_alternative"] = r.gc1_guarantee_alternative;
  j["notes"] = r.notes;
  return j;
}

Json to_json(const RatioClass& cls) {
  Json j;
  j["kind"] = to_string(cls.kind);
  j["certification"] = cls.certification;
  if (cls.kind == RatioClass::Kind::Rational && cls.reduced) {
    j["reduced"] = Json{{"p", big_to_string(cls.reduced->first)}, {"q", big_to_string(cls.reduced->second)}};
  } else {
    j["gamma_lower"] = cls.gamma_lower;
    j["gamma_all_convergents"] = cls.gamma_all_convergents;
    j["gamma_scope"] = "convergent-restricted";
  }
  j["note"] = cls.note;
  return j;
}

Json to_json(const ContinuedFraction& cf, std::size_t shown_terms) {
  Json j;
  j["a0"] = big_to_string(cf.a0);
  Json terms = Json::array();
  const std::size_t n = std::min(shown_terms, cf.available());
  for (std::size_t i = 1; i <= n; ++i) terms.push_back(big_to_string(cf.term(i)));
  j["partials"] = std::move(terms);
  j["period"] = cf.period ? Json{{"start", cf.period->start}, {"length", cf.period->length}} : Json(nullptr);
  j["terminates"] = cf.terminates;
  j["precision_exhausted"] = cf.precision_exhausted;
  return j;
}

Json to_json(const std::vector<Convergent>& cs) {
  Json out = Json::array();
  for (const auto& c : cs) {
    out.push_back(Json{{"p", big_to_string(c.p)},
                       {"q", big_to_string(c.q)},
                       {"approach_sign", c.approach_sign},
                       {"quality", c.quality}});
  }
  return out;
}

Json to_json(const PredictedCenter& pc) {
  return Json{{"k", pc.k}, {"q", big_to_string(pc.q)}, {"family", to_string(pc.family)},
              {"approach_sign", pc.approach_sign}};
}

}  // namespace hexband
