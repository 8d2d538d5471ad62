#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsad/core.hpp"

namespace tsad {

enum class ScorerKind { identity, abs_diff, rolling_residual };

struct ScorerSpec {
    ScorerKind kind = ScorerKind::abs_diff;
    std::size_t window = 20;  // rolling_residual only, >= 2
    std::optional<std::size_t> seasonal_lag;  // applied before scoring

    std::string id() const;
    static ScorerSpec parse(const std::string& name);
};

// output[t] = value[t] - value[t-lag] for t >= lag; first `lag` outputs are 0.
std::vector<double> deseasonalize(const std::vector<double>& values, std::size_t lag);

ScoreSeries score(const std::vector<double>& values, const ScorerSpec& spec);

}  // namespace tsad
