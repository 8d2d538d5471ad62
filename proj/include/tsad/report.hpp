#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tsad/core.hpp"
#include "tsad/evaluation.hpp"

namespace tsad {

struct MethodResult {
    std::optional<ConfusionCounts> confusion;
    std::optional<MetricSet> metrics;
    std::vector<std::size_t> anomaly_indices;

    bool operator==(const MethodResult&) const = default;
};

struct DetectionReport {
    std::map<std::string, std::string> config;
    std::map<std::string, MethodResult> methods;
    std::optional<std::map<std::string, DeltaRow>> deltas;

    bool operator==(const DetectionReport&) const = default;
};

// JSON document with stable key order; floats carry 17 significant digits.
void write_report(const DetectionReport& report, const std::string& path);

DetectionReport read_report(const std::string& path);

}  // namespace tsad
