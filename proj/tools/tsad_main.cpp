#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "tsad/data_io.hpp"
#include "tsad/pipeline.hpp"

namespace {

using namespace tsad;

struct CommonFlags {
    std::string input;
    std::string output = "report.json";
    std::string scorer = "abs_diff";
    std::size_t scorer_window = 20;
    std::size_t seasonal_lag = 0;
    double split_fraction = 0.7;
    std::string filter_percentile = "off";
    double baseline_percentile = 0.99;
    std::size_t n_segments = 5;
    std::size_t min_segment_length = 10;
    std::string windows = "50,100,500";
    std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--input", flags.input, "Input CSV (timestamp,value[,label])")
        ->required();
    cmd->add_option("--output", flags.output, "Report path");
    cmd->add_option("--scorer", flags.scorer,
                    "identity | abs_diff | rolling_residual");
    cmd->add_option("--scorer-window", flags.scorer_window,
                    "Window for rolling_residual");
    cmd->add_option("--seasonal-lag", flags.seasonal_lag,
                    "Difference at this lag before scoring (0 = off)");
    cmd->add_option("--split", flags.split_fraction,
                    "Train fraction for baseline/SCS fitting");
    cmd->add_option("--filter-percentile", flags.filter_percentile,
                    "Global percentile filter in (0,1), or 'off'");
    cmd->add_option("--baseline-percentile", flags.baseline_percentile,
                    "Baseline threshold percentile");
    cmd->add_option("--segments", flags.n_segments, "K-means cluster count");
    cmd->add_option("--min-segment-length", flags.min_segment_length,
                    "Minimum segment length");
    cmd->add_option("--windows", flags.windows,
                    "MACS windows as short,medium,long");
    cmd->add_option("--seed", flags.seed, "Seed for randomized steps");
}

std::vector<double> parse_doubles(const std::string& csv, const char* what) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string("bad ") + what + " '" + item +
                                        "'");
        }
    }
    if (out.empty()) throw std::invalid_argument(std::string("empty ") + what);
    return out;
}

PipelineOptions make_options(const CommonFlags& flags, double confidence) {
    PipelineOptions opt;
    opt.scorer = ScorerSpec::parse(flags.scorer);
    opt.scorer.window = flags.scorer_window;
    if (flags.seasonal_lag > 0) opt.scorer.seasonal_lag = flags.seasonal_lag;
    opt.split_fraction = flags.split_fraction;
    opt.config.confidence_level = confidence;
    opt.config.n_segments = flags.n_segments;
    opt.config.min_segment_length = flags.min_segment_length;
    opt.config.baseline_percentile = flags.baseline_percentile;
    opt.config.seed = flags.seed;
    opt.config.scorer_id = opt.scorer.id();
    if (flags.filter_percentile != "off") {
        try {
            opt.config.filter_percentile = std::stod(flags.filter_percentile);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad filter percentile '" +
                                        flags.filter_percentile + "'");
        }
    }
    const auto ws = parse_doubles(flags.windows, "windows");
    if (ws.size() != 3) throw std::invalid_argument("windows needs 3 values");
    opt.config.windows.short_w = static_cast<std::size_t>(ws[0]);
    opt.config.windows.medium_w = static_cast<std::size_t>(ws[1]);
    opt.config.windows.long_w = static_cast<std::size_t>(ws[2]);
    opt.config.validate();
    return opt;
}

std::map<std::string, std::string> echo_config(const CommonFlags& flags,
                                               const std::string& confidence,
                                               const std::string& method) {
    std::map<std::string, std::string> config;
    config["input"] = flags.input;
    config["method"] = method;
    config["scorer"] = flags.scorer;
    config["confidence"] = confidence;
    config["split"] = std::to_string(flags.split_fraction);
    config["filter_percentile"] = flags.filter_percentile;
    config["baseline_percentile"] = std::to_string(flags.baseline_percentile);
    config["n_segments"] = std::to_string(flags.n_segments);
    config["min_segment_length"] = std::to_string(flags.min_segment_length);
    config["windows"] = flags.windows;
    config["seed"] = std::to_string(flags.seed);
    return config;
}

int run_detect(const CommonFlags& flags, const std::string& method_name,
               double confidence) {
    const Method method = parse_method(method_name);
    const PipelineOptions opt = make_options(flags, confidence);
    auto [series, labels] = read_csv(flags.input);
    const MethodRun run = run_method(series.values(), method, opt);

    DetectionReport report;
    report.config = echo_config(flags, std::to_string(confidence), method_name);
    MethodResult result;
    if (labels) {
        result.confusion = confusion(run.verdicts.final_anomaly, *labels);
        result.metrics = metrics(*result.confusion);
    }
    result.anomaly_indices = run.verdicts.anomaly_indices();
    const std::size_t count = result.anomaly_indices.size();
    report.methods.emplace(method_name, std::move(result));
    write_report(report, flags.output);
    std::cout << count << " anomalies (" << method_name << ", " << flags.input
              << ")\n";
    return 0;
}

int run_compare(const CommonFlags& flags, const std::string& methods_csv,
                const std::string& confidence_csv) {
    auto [series, labels] = read_csv(flags.input);
    if (!labels) throw std::invalid_argument("labels required");

    std::vector<Method> methods;
    std::stringstream ss(methods_csv);
    std::string item;
    while (std::getline(ss, item, ',')) methods.push_back(parse_method(item));
    const auto grid = parse_doubles(confidence_csv, "confidence");

    const PipelineOptions opt = make_options(flags, grid.front());
    DetectionReport report = compare(series.values(), *labels, methods, grid, opt);
    report.config = echo_config(flags, confidence_csv, methods_csv);
    write_report(report, flags.output);
    std::cout << report.methods.size() << " methods compared, report in "
              << flags.output << "\n";
    return 0;
}

int run_plotdata(const CommonFlags& flags, const std::string& method_name,
                 double confidence) {
    const Method method = parse_method(method_name);
    const PipelineOptions opt = make_options(flags, confidence);
    auto [series, labels] = read_csv(flags.input);
    const MethodRun run = run_method(series.values(), method, opt);

    std::ofstream out(flags.output);
    if (!out) throw std::runtime_error("cannot write " + flags.output);
    out << "index,score,lower,upper,flag\n";
    char buf[64];
    for (std::size_t i = 0; i < run.scores.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", run.scores.scores[i]);
        out << i << ',' << buf;
        std::snprintf(buf, sizeof(buf), "%.17g", run.verdicts.lower[i]);
        out << ',' << buf;
        std::snprintf(buf, sizeof(buf), "%.17g", run.verdicts.upper[i]);
        out << ',' << buf << ','
            << static_cast<int>(run.verdicts.final_anomaly[i]) << '\n';
    }
    std::cout << run.scores.size() << " points traced to " << flags.output << "\n";
    return 0;
}

SynthSpec parse_synth(std::size_t n, const std::string& regimes_csv, double rate,
                      double magnitude, const std::string& burst,
                      std::uint64_t seed) {
    SynthSpec spec;
    spec.n = n;
    spec.anomaly_rate = rate;
    spec.anomaly_magnitude_sigmas = magnitude;
    spec.seed = seed;
    std::stringstream ss(regimes_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::stringstream rs(item);
        std::string len, mean, std_;
        if (!std::getline(rs, len, ':') || !std::getline(rs, mean, ':') ||
            !std::getline(rs, std_, ':'))
            throw std::invalid_argument("bad regime '" + item + "'");
        RegimeSpec regime;
        try {
            regime.length = std::stoul(len);
            regime.mean = std::stod(mean);
            regime.std = std::stod(std_);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad regime '" + item + "'");
        }
        spec.regimes.push_back(regime);
    }
    if (!burst.empty()) {
        std::stringstream bs(burst);
        std::string start, len, offset;
        if (!std::getline(bs, start, ':') || !std::getline(bs, len, ':') ||
            !std::getline(bs, offset, ':'))
            throw std::invalid_argument("bad burst '" + burst + "'");
        BurstSpec b;
        try {
            b.start = std::stoul(start);
            b.length = std::stoul(len);
            b.offset = std::stod(offset);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad burst '" + burst + "'");
        }
        spec.burst = b;
    }
    return spec;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive-threshold anomaly detection for nonstationary series"};
    app.require_subcommand(1);

    CommonFlags detect_flags, compare_flags, plot_flags;
    std::string detect_method = "macs", plot_method = "macs";
    double detect_conf = 0.99, plot_conf = 0.99;
    std::string compare_methods = "scs-apca,scs-kmeans,macs";
    std::string compare_conf = "0.99,0.95";

    auto* detect = app.add_subcommand("detect", "Run one detector over a CSV");
    add_common(detect, detect_flags);
    detect->add_option("--method", detect_method,
                       "baseline | scs-apca | scs-kmeans | macs");
    detect->add_option("--confidence", detect_conf, "Confidence level in (0,1)");

    auto* cmp = app.add_subcommand("compare",
                                   "Baseline vs adaptive methods with deltas");
    add_common(cmp, compare_flags);
    cmp->add_option("--methods", compare_methods, "Comma-separated method list");
    cmp->add_option("--confidence", compare_conf, "Comma-separated grid");

    auto* plot = app.add_subcommand("plotdata", "Emit per-point band trace CSV");
    add_common(plot, plot_flags);
    plot->add_option("--method", plot_method, "Method to trace");
    plot->add_option("--confidence", plot_conf, "Confidence level in (0,1)");
    plot_flags.output = "plot.csv";

    auto* synth = app.add_subcommand("synth", "Generate a labeled synthetic CSV");
    std::size_t synth_n = 1000;
    std::string synth_regimes = "1000:0:1";
    double synth_rate = 0.01, synth_magnitude = 6.0;
    std::string synth_burst, synth_output = "synth.csv";
    std::uint64_t synth_seed = 0;
    synth->add_option("--n", synth_n, "Series length")->required();
    synth->add_option("--regimes", synth_regimes,
                      "len:mean:std[,len:mean:std...]");
    synth->add_option("--rate", synth_rate, "Anomaly rate in [0,1)");
    synth->add_option("--magnitude", synth_magnitude, "Spike size in regime sigmas");
    synth->add_option("--burst", synth_burst, "start:len:offset");
    synth->add_option("--seed", synth_seed, "PRNG seed");
    synth->add_option("--output", synth_output, "Output CSV path");

    try {
        app.parse(argc, argv);
        if (detect->parsed())
            return run_detect(detect_flags, detect_method, detect_conf);
        if (cmp->parsed())
            return run_compare(compare_flags, compare_methods, compare_conf);
        if (plot->parsed())
            return run_plotdata(plot_flags, plot_method, plot_conf);
        if (synth->parsed()) {
            const SynthSpec spec =
                parse_synth(synth_n, synth_regimes, synth_rate, synth_magnitude,
                            synth_burst, synth_seed);
            auto [series, labels] = generate(spec);
            write_series_csv(synth_output, series, labels);
            std::cout << series.size() << " rows written to " << synth_output
                      << "\n";
            return 0;
        }
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
