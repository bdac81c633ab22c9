#pragma once

// JSON and CSV emitters for reports; JSON spectrum reports can be read back.

#include <iosfwd>
#include <vector>

#include <json.hpp>

#include "hexband/band_engine.hpp"
#include "hexband/gap_conditions.hpp"
#include "hexband/number_theory.hpp"

namespace hexband {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const SpectralInterval& iv);
Json to_json(const SpectrumReport& report);
SpectrumReport spectrum_report_from_json(const Json& j);

/// Header k,E,absD,lower,upper,decision; one row per evaluated sample.
void write_samples_csv(std::ostream& os, const SpectrumReport& report);

Json to_json(const ThresholdReport& report);
Json to_json(const RatioClass& cls);
Json to_json(const ContinuedFraction& cf, std::size_t shown_terms);
Json to_json(const std::vector<Convergent>& cs);
Json to_json(const PredictedCenter& pc);

/// Shortest round-trip decimal form of x.
std::string format_double(double x);

}  // namespace hexband
