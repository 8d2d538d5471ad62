#include "tsad/data_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace tsad {
namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_double(const std::string& text, std::size_t row, const char* what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        if (!std::isfinite(v)) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("row " + std::to_string(row) + ": bad " + what +
                                 " '" + text + "'");
    }
}

}  // namespace

std::pair<Series, std::optional<LabelSeries>> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    bool has_labels = false;
    if (line == "timestamp,value") has_labels = false;
    else if (line == "timestamp,value,label") has_labels = true;
    else throw std::runtime_error(path + ": missing header 'timestamp,value[,label]'");

    Series series;
    LabelSeries labels;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != (has_labels ? 3u : 2u))
            throw std::runtime_error("row " + std::to_string(row) +
                                     ": wrong field count");
        SeriesSample sample;
        sample.index = series.size();
        sample.timestamp = fields[0];
        sample.value = parse_double(fields[1], row, "value");
        series.samples.push_back(std::move(sample));
        if (has_labels) {
            if (fields[2] == "0") labels.labels.push_back(Label::normal);
            else if (fields[2] == "1") labels.labels.push_back(Label::anomalous);
            else
                throw std::runtime_error("row " + std::to_string(row) +
                                         ": bad label '" + fields[2] + "'");
        }
    }
    if (has_labels) return {std::move(series), std::move(labels)};
    return {std::move(series), std::nullopt};
}

void write_series_csv(const std::string& path, const Series& series,
                      const std::optional<LabelSeries>& labels) {
    if (labels && labels->size() != series.size())
        throw std::invalid_argument("label/series length mismatch");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << (labels ? "timestamp,value,label\n" : "timestamp,value\n");
    char buf[64];
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series.samples[i];
        std::snprintf(buf, sizeof(buf), "%.17g", s.value);
        out << s.timestamp << ',' << buf;
        if (labels)
            out << ',' << (labels->labels[i] == Label::anomalous ? '1' : '0');
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::pair<Series, Series> split(const Series& series, double fraction) {
    if (!(fraction > 0.0 && fraction < 1.0))
        throw std::invalid_argument("split fraction out of (0,1)");
    const auto cut = static_cast<std::size_t>(
        std::floor(fraction * static_cast<double>(series.size())));
    if (cut == 0) throw std::invalid_argument("empty train split");
    if (cut == series.size()) throw std::invalid_argument("empty test split");
    Series train, test;
    train.samples.assign(series.samples.begin(),
                         series.samples.begin() + static_cast<std::ptrdiff_t>(cut));
    test.samples.assign(series.samples.begin() + static_cast<std::ptrdiff_t>(cut),
                        series.samples.end());
    return {std::move(train), std::move(test)};
}

std::pair<Series, LabelSeries> generate(const SynthSpec& spec) {
    std::size_t total = 0;
    for (const auto& r : spec.regimes) total += r.length;
    if (total != spec.n || spec.n == 0)
        throw std::invalid_argument("regime lengths must sum to n");
    if (!(spec.anomaly_rate >= 0.0 && spec.anomaly_rate < 1.0))
        throw std::invalid_argument("anomaly rate out of [0,1)");
    if (spec.burst && spec.burst->start + spec.burst->length > spec.n)
        throw std::invalid_argument("burst exceeds series");

    std::mt19937_64 rng(spec.seed);
    // Box-Muller over uniform (0,1]; fixed so output is identical everywhere.
    auto gauss = [&rng]() {
        const double u1 =
            (static_cast<double>(rng() >> 11) + 1.0) / 9007199254740993.0;
        const double u2 = static_cast<double>(rng() >> 11) / 9007199254740992.0;
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    };

    Series series;
    series.samples.resize(spec.n);
    LabelSeries labels;
    labels.labels.assign(spec.n, Label::normal);

    std::vector<double> regime_std(spec.n);
    std::vector<std::uint8_t> regime_first(spec.n, 0);
    std::size_t pos = 0;
    for (const auto& r : spec.regimes) {
        regime_first[pos] = 1;
        for (std::size_t i = 0; i < r.length; ++i, ++pos) {
            series.samples[pos].index = pos;
            series.samples[pos].timestamp = "t" + std::to_string(pos);
            series.samples[pos].value = r.mean + r.std * gauss();
            regime_std[pos] = r.std;
        }
    }

    // Spike anomalies at indices drawn without replacement, never on a regime's
    // first index; sign alternates by draw order.
    const auto n_anom = static_cast<std::size_t>(
        std::floor(spec.anomaly_rate * static_cast<double>(spec.n)));
    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < spec.n; ++i)
        if (!regime_first[i]) eligible.push_back(i);
    if (n_anom > eligible.size())
        throw std::invalid_argument("anomaly rate too high for series");
    for (std::size_t d = 0; d < n_anom; ++d) {
        const std::size_t j = d + rng() % (eligible.size() - d);
        std::swap(eligible[d], eligible[j]);
        const std::size_t idx = eligible[d];
        const double sign = d % 2 == 0 ? 1.0 : -1.0;
        series.samples[idx].value +=
            sign * spec.anomaly_magnitude_sigmas * regime_std[idx];
        labels.labels[idx] = Label::anomalous;
    }

    if (spec.burst) {
        for (std::size_t i = spec.burst->start;
             i < spec.burst->start + spec.burst->length; ++i) {
            series.samples[i].value += spec.burst->offset;
            labels.labels[i] = Label::anomalous;
        }
    }
    return {std::move(series), std::move(labels)};
}

}  // namespace tsad
