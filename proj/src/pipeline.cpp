#include "tsad/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <stdexcept>

namespace tsad {
namespace {

std::vector<double> train_prefix(const std::vector<double>& scores,
                                 double fraction) {
    if (!(fraction > 0.0 && fraction < 1.0))
        throw std::invalid_argument("split fraction out of (0,1)");
    const auto cut = static_cast<std::size_t>(
        std::floor(fraction * static_cast<double>(scores.size())));
    if (cut == 0) throw std::invalid_argument("empty train split");
    if (cut == scores.size()) throw std::invalid_argument("empty test split");
    return {scores.begin(), scores.begin() + static_cast<std::ptrdiff_t>(cut)};
}

std::string confidence_tag(double confidence) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", confidence);
    return buf;
}

}  // namespace

Method parse_method(const std::string& name) {
    if (name == "baseline") return Method::baseline;
    if (name == "scs-apca") return Method::scs_apca;
    if (name == "scs-kmeans") return Method::scs_kmeans;
    if (name == "macs") return Method::macs;
    throw std::invalid_argument("unknown method: " + name);
}

std::string method_name(Method method) {
    switch (method) {
        case Method::baseline: return "baseline";
        case Method::scs_apca: return "scs-apca";
        case Method::scs_kmeans: return "scs-kmeans";
        case Method::macs: return "macs";
    }
    return "?";
}

MethodRun run_method(const std::vector<double>& values, Method method,
                     const PipelineOptions& options) {
    options.config.validate();
    MethodRun run;
    run.scores = score(values, options.scorer);
    const std::vector<double>& s = run.scores.scores;

    switch (method) {
        case Method::baseline: {
            const double threshold =
                baseline_fit(train_prefix(s, options.split_fraction),
                             options.config.baseline_percentile);
            run.verdicts = baseline_detect(s, threshold);
            break;
        }
        case Method::scs_apca:
        case Method::scs_kmeans: {
            RunConfig config = options.config;
            config.segmentation_method = method == Method::scs_apca
                                             ? SegmentationMethod::apca
                                             : SegmentationMethod::kmeans;
            const ScsModel model =
                scs_fit(train_prefix(s, options.split_fraction), config);
            run.verdicts = scs_detect(s, model);
            break;
        }
        case Method::macs:
            run.verdicts = macs_detect(s, options.config);
            break;
    }
    return run;
}

DetectionReport compare(const std::vector<double>& values,
                        const LabelSeries& labels,
                        const std::vector<Method>& methods,
                        const std::vector<double>& confidence_grid,
                        const PipelineOptions& options) {
    if (labels.size() != values.size())
        throw std::invalid_argument("labels required");
    if (confidence_grid.empty())
        throw std::invalid_argument("empty confidence grid");

    struct Job {
        std::string name;
        Method method;
        double confidence;
    };
    std::vector<Job> jobs;
    jobs.push_back({"baseline", Method::baseline, confidence_grid.front()});
    for (const Method m : methods) {
        if (m == Method::baseline) continue;
        for (const double conf : confidence_grid)
            jobs.push_back({method_name(m) + "@" + confidence_tag(conf), m, conf});
    }

    std::vector<std::future<MethodRun>> futures;
    futures.reserve(jobs.size());
    for (const Job& job : jobs) {
        futures.push_back(std::async(std::launch::async, [&, job] {
            PipelineOptions opt = options;
            opt.config.confidence_level = job.confidence;
            return run_method(values, job.method, opt);
        }));
    }

    DetectionReport report;
    std::map<std::string, ConfusionCounts> method_counts;
    ConfusionCounts baseline_counts;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const MethodRun run = futures[i].get();
        MethodResult result;
        result.confusion = confusion(run.verdicts.final_anomaly, labels);
        result.metrics = metrics(*result.confusion);
        result.anomaly_indices = run.verdicts.anomaly_indices();
        if (jobs[i].method == Method::baseline)
            baseline_counts = *result.confusion;
        else
            method_counts.emplace(jobs[i].name, *result.confusion);
        report.methods.emplace(jobs[i].name, std::move(result));
    }
    // A baseline-only comparison still gets a (all-zero) delta row.
    for (const Method m : methods)
        if (m == Method::baseline)
            method_counts.emplace("baseline", baseline_counts);
    report.deltas = delta_report(method_counts, baseline_counts);
    return report;
}

}  // namespace tsad
