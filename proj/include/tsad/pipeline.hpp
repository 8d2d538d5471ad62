#pragma once

#include <string>
#include <vector>

#include "tsad/core.hpp"
#include "tsad/detectors.hpp"
#include "tsad/evaluation.hpp"
#include "tsad/report.hpp"
#include "tsad/scoring.hpp"

namespace tsad {

enum class Method { baseline, scs_apca, scs_kmeans, macs };

Method parse_method(const std::string& name);
std::string method_name(Method method);

struct PipelineOptions {
    ScorerSpec scorer;
    double split_fraction = 0.7;  // baseline/SCS fit prefix; MACS is rolling
    RunConfig config;
};

struct MethodRun {
    ScoreSeries scores;
    Verdicts verdicts;  // over the full series
};

MethodRun run_method(const std::vector<double>& values, Method method,
                     const PipelineOptions& options);

// Baseline plus each requested (method, confidence) pair on identical scores;
// deltas are proportional improvements over the baseline.
DetectionReport compare(const std::vector<double>& values,
                        const LabelSeries& labels,
                        const std::vector<Method>& methods,
                        const std::vector<double>& confidence_grid,
                        const PipelineOptions& options);

}  // namespace tsad
