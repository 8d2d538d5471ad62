#include "tsad/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace tsad {
namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

}  // namespace

void write_report(const DetectionReport& report, const std::string& path) {
    std::ostringstream os;
    os << "{\n  \"config\": {";
    bool first = true;
    for (const auto& [k, v] : report.config) {
        os << (first ? "\n" : ",\n") << "    " << quote(k) << ": " << quote(v);
        first = false;
    }
    os << "\n  },\n  \"methods\": {";
    first = true;
    for (const auto& [name, result] : report.methods) {
        os << (first ? "\n" : ",\n") << "    " << quote(name) << ": {\n";
        if (result.confusion) {
            const auto& c = *result.confusion;
            os << "      \"confusion\": {\"tp\": " << c.tp << ", \"fp\": " << c.fp
               << ", \"tn\": " << c.tn << ", \"fn\": " << c.fn << "},\n";
        }
        if (result.metrics) {
            const auto& m = *result.metrics;
            os << "      \"metrics\": {\"accuracy\": " << fmt(m.accuracy)
               << ", \"precision\": " << fmt(m.precision)
               << ", \"recall\": " << fmt(m.recall) << ", \"f1\": " << fmt(m.f1)
               << "},\n";
        }
        os << "      \"anomaly_indices\": [";
        for (std::size_t i = 0; i < result.anomaly_indices.size(); ++i)
            os << (i ? ", " : "") << result.anomaly_indices[i];
        os << "]\n    }";
        first = false;
    }
    os << "\n  }";
    if (report.deltas) {
        os << ",\n  \"deltas\": {";
        first = true;
        for (const auto& [name, row] : *report.deltas) {
            os << (first ? "\n" : ",\n") << "    " << quote(name)
               << ": {\"accuracy\": " << fmt(row.d_accuracy)
               << ", \"precision\": " << fmt(row.d_precision)
               << ", \"recall\": " << fmt(row.d_recall)
               << ", \"f1\": " << fmt(row.d_f1) << "}";
            first = false;
        }
        os << "\n  }";
    }
    os << "\n}\n";

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << os.str();
    if (!out) throw std::runtime_error("write failed: " + path);
}

DetectionReport read_report(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    in >> j;

    DetectionReport report;
    for (const auto& [k, v] : j.at("config").items())
        report.config[k] = v.get<std::string>();
    for (const auto& [name, m] : j.at("methods").items()) {
        MethodResult result;
        if (m.contains("confusion")) {
            ConfusionCounts c;
            c.tp = m["confusion"]["tp"].get<std::uint64_t>();
            c.fp = m["confusion"]["fp"].get<std::uint64_t>();
            c.tn = m["confusion"]["tn"].get<std::uint64_t>();
            c.fn = m["confusion"]["fn"].get<std::uint64_t>();
            result.confusion = c;
        }
        if (m.contains("metrics")) {
            MetricSet ms;
            ms.accuracy = m["metrics"]["accuracy"].get<double>();
            ms.precision = m["metrics"]["precision"].get<double>();
            ms.recall = m["metrics"]["recall"].get<double>();
            ms.f1 = m["metrics"]["f1"].get<double>();
            result.metrics = ms;
        }
        for (const auto& idx : m.at("anomaly_indices"))
            result.anomaly_indices.push_back(idx.get<std::size_t>());
        report.methods.emplace(name, std::move(result));
    }
    if (j.contains("deltas")) {
        std::map<std::string, DeltaRow> deltas;
        for (const auto& [name, d] : j["deltas"].items()) {
            DeltaRow row;
            row.d_accuracy = d["accuracy"].get<double>();
            row.d_precision = d["precision"].get<double>();
            row.d_recall = d["recall"].get<double>();
            row.d_f1 = d["f1"].get<double>();
            deltas.emplace(name, row);
        }
        report.deltas = std::move(deltas);
    }
    return report;
}

}  // namespace tsad
