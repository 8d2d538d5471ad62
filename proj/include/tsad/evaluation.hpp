#pragma once

#include <map>
#include <string>
#include <vector>

#include "tsad/core.hpp"

namespace tsad {

ConfusionCounts confusion(const std::vector<std::uint8_t>& flags,
                          const LabelSeries& labels);

MetricSet metrics(const ConfusionCounts& c);

// (new - old) / old; errors on a zero baseline metric.
double proportional_improvement(double new_value, double old_value);

struct DeltaRow {
    double d_accuracy = 0.0;
    double d_precision = 0.0;
    double d_recall = 0.0;
    double d_f1 = 0.0;
    bool operator==(const DeltaRow&) const = default;
};

std::map<std::string, DeltaRow> delta_report(
    const std::map<std::string, ConfusionCounts>& method_counts,
    const ConfusionCounts& baseline_counts);

}  // namespace tsad
