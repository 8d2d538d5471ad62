#include "tsad/evaluation.hpp"

#include <stdexcept>

namespace tsad {

ConfusionCounts confusion(const std::vector<std::uint8_t>& flags,
                          const LabelSeries& labels) {
    if (flags.size() != labels.size())
        throw std::invalid_argument("verdict/label length mismatch");
    ConfusionCounts c;
    for (std::size_t i = 0; i < flags.size(); ++i) {
        const bool flagged = flags[i] != 0;
        const bool anomalous = labels.labels[i] == Label::anomalous;
        if (flagged && anomalous) ++c.tp;
        else if (flagged && !anomalous) ++c.fp;
        else if (!flagged && anomalous) ++c.fn;
        else ++c.tn;
    }
    return c;
}

MetricSet metrics(const ConfusionCounts& c) {
    if (c.total() == 0) throw std::invalid_argument("empty confusion counts");
    MetricSet m;
    m.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
    m.precision = c.tp + c.fp > 0
                      ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp)
                      : 0.0;
    m.recall = c.tp + c.fn > 0
                   ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn)
                   : 0.0;
    m.f1 = m.precision + m.recall > 0.0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    return m;
}

double proportional_improvement(double new_value, double old_value) {
    if (old_value == 0.0) throw std::invalid_argument("baseline metric zero");
    return (new_value - old_value) / old_value;
}

std::map<std::string, DeltaRow> delta_report(
    const std::map<std::string, ConfusionCounts>& method_counts,
    const ConfusionCounts& baseline_counts) {
    const MetricSet base = metrics(baseline_counts);
    std::map<std::string, DeltaRow> rows;
    for (const auto& [name, counts] : method_counts) {
        const MetricSet m = metrics(counts);
        DeltaRow row;
        row.d_accuracy = proportional_improvement(m.accuracy, base.accuracy);
        row.d_precision = proportional_improvement(m.precision, base.precision);
        row.d_recall = proportional_improvement(m.recall, base.recall);
        row.d_f1 = proportional_improvement(m.f1, base.f1);
        rows.emplace(name, row);
    }
    return rows;
}

}  // namespace tsad
