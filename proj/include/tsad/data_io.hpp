#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tsad/core.hpp"

namespace tsad {

// Header `timestamp,value` or `timestamp,value,label`; rejects non-finite
// values with the offending row number.
std::pair<Series, std::optional<LabelSeries>> read_csv(const std::string& path);

void write_series_csv(const std::string& path, const Series& series,
                      const std::optional<LabelSeries>& labels);

// Chronological prefix/suffix split at floor(fraction * n).
std::pair<Series, Series> split(const Series& series, double fraction);

struct RegimeSpec {
    std::size_t length = 0;
    double mean = 0.0;
    double std = 1.0;
};

struct BurstSpec {
    std::size_t start = 0;
    std::size_t length = 0;
    double offset = 0.0;
};

struct SynthSpec {
    std::size_t n = 0;
    std::vector<RegimeSpec> regimes;
    double anomaly_rate = 0.0;
    double anomaly_magnitude_sigmas = 6.0;
    std::optional<BurstSpec> burst;
    std::uint64_t seed = 0;
};

// Deterministic synthetic nonstationary series: mt19937_64 noise via
// Box-Muller, spike anomalies with alternating sign, optional level burst.
std::pair<Series, LabelSeries> generate(const SynthSpec& spec);

}  // namespace tsad
