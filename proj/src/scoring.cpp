#include "tsad/scoring.hpp"

#include <cmath>
#include <stdexcept>

namespace tsad {

std::string ScorerSpec::id() const {
    switch (kind) {
        case ScorerKind::identity: return "identity";
        case ScorerKind::abs_diff: return "abs_diff";
        case ScorerKind::rolling_residual: return "rolling_residual";
    }
    return "?";
}

ScorerSpec ScorerSpec::parse(const std::string& name) {
    ScorerSpec spec;
    if (name == "identity") spec.kind = ScorerKind::identity;
    else if (name == "abs_diff") spec.kind = ScorerKind::abs_diff;
    else if (name == "rolling_residual") spec.kind = ScorerKind::rolling_residual;
    else throw std::invalid_argument("unknown scorer: " + name);
    return spec;
}

std::vector<double> deseasonalize(const std::vector<double>& values, std::size_t lag) {
    if (lag >= values.size()) throw std::invalid_argument("lag exceeds series");
    std::vector<double> out(values.size(), 0.0);
    for (std::size_t t = lag; t < values.size(); ++t)
        out[t] = values[t] - values[t - lag];
    return out;
}

ScoreSeries score(const std::vector<double>& values, const ScorerSpec& spec) {
    if (values.empty()) throw std::invalid_argument("empty series");
    if (spec.kind == ScorerKind::rolling_residual && spec.window < 2)
        throw std::invalid_argument("rolling_residual window must be >= 2");

    const std::vector<double>* input = &values;
    std::vector<double> deseasoned;
    if (spec.seasonal_lag) {
        deseasoned = deseasonalize(values, *spec.seasonal_lag);
        input = &deseasoned;
    }
    const std::vector<double>& x = *input;

    ScoreSeries out;
    out.scorer_id = spec.id();
    out.scores.resize(x.size());

    switch (spec.kind) {
        case ScorerKind::identity:
            out.scores = x;
            break;
        case ScorerKind::abs_diff:
            out.scores[0] = 0.0;
            for (std::size_t t = 1; t < x.size(); ++t)
                out.scores[t] = std::abs(x[t] - x[t - 1]);
            break;
        case ScorerKind::rolling_residual: {
            // Trailing window of size min(window, t+1), current point included.
            double sum = 0.0;
            for (std::size_t t = 0; t < x.size(); ++t) {
                sum += x[t];
                if (t >= spec.window) sum -= x[t - spec.window];
                const auto w = std::min(spec.window, t + 1);
                out.scores[t] = std::abs(x[t] - sum / static_cast<double>(w));
            }
            break;
        }
    }
    return out;
}

}  // namespace tsad
