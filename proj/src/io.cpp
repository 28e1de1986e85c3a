#include "cps/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cps/errors.hpp"
#include "json.hpp"

namespace cps {

using nlohmann::json;

std::string format_double(double v) {
    if (v == 0.0) return "0";
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

std::string label_text(const PeakLabel& label) {
    if (label.kind == PeakLabel::Kind::fraction) return label.fraction.str();
    if (label.kind == PeakLabel::Kind::coeffs) {
        std::string out;
        for (std::size_t i = 0; i < label.coeffs.size(); ++i) {
            if (i) out += ";";
            out += std::to_string(label.coeffs[i]);
        }
        return out;
    }
    return "";
}

std::string label_json(const PeakLabel& label) {
    if (label.kind == PeakLabel::Kind::fraction) {
        std::string out = "\"m\": " + std::to_string(label.fraction.num) +
                          ", \"q\": " + std::to_string(label.fraction.den);
        long long q = label.fraction.den;
        if ((q & (q - 1)) == 0) {
            int r = 0;
            for (long long v = q; v > 1; v /= 2) ++r;
            out += ", \"r\": " + std::to_string(r);
        }
        return out;
    }
    if (label.kind == PeakLabel::Kind::coeffs && label.coeffs.size() == 2) {
        return "\"n\": " + std::to_string(label.coeffs[0]) +
               ", \"m\": " + std::to_string(label.coeffs[1]);
    }
    std::string out = "\"coeffs\": [";
    for (std::size_t i = 0; i < label.coeffs.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(label.coeffs[i]);
    }
    return out + "]";
}

std::string int_list(const std::vector<long long>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(v[i]);
    }
    return out + "]";
}

}  // namespace

EuclideanScheme read_scheme_json(const std::string& path) {
    const json doc = json::parse(read_file(path));
    const int d = doc.at("d").get<int>();
    const int n = doc.at("n").get<int>();
    const auto values = doc.at("basis").get<std::vector<double>>();
    const int dim = d + n;
    if (static_cast<int>(values.size()) != dim * dim)
        throw Error("basis needs (d+n)^2 entries in row-major order");
    Eigen::MatrixXd basis(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) basis(i, j) = values[static_cast<std::size_t>(i * dim + j)];
    return build_scheme(basis, d, n);
}

std::string scheme_to_json(const EuclideanScheme& scheme) {
    std::string out = "{\n  \"d\": " + std::to_string(scheme.dim_physical) +
                      ",\n  \"n\": " + std::to_string(scheme.dim_internal) + ",\n  \"basis\": [";
    const int dim = scheme.dim_total();
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            if (i + j) out += ", ";
            out += format_double(scheme.basis(i, j));
        }
    }
    return out + "]\n}\n";
}

IntervalWindow read_window_json(const std::string& path) {
    const json doc = json::parse(read_file(path));
    const auto closure_name = doc.value("closure", std::string("half_open_right"));
    Closure closure;
    if (closure_name == "half_open_right") {
        closure = Closure::half_open_right;
    } else if (closure_name == "closed") {
        closure = Closure::closed;
    } else {
        throw Error("unknown window closure: " + closure_name);
    }
    return make_window(doc.at("lower").get<double>(), doc.at("upper").get<double>(), closure);
}

std::string window_to_json(const IntervalWindow& window) {
    return "{\n  \"lower\": " + format_double(window.lower) +
           ",\n  \"upper\": " + format_double(window.upper) + ",\n  \"closure\": \"" +
           (window.closure == Closure::closed ? "closed" : "half_open_right") + "\"\n}\n";
}

ResidueScheme read_residue_config_json(const std::string& path) {
    const json doc = json::parse(read_file(path));
    const auto kind = doc.at("kind").get<std::string>();
    if (kind == "squarefree") return squarefree_scheme(doc.value("prime_bound", 100));
    if (kind == "period_doubling") return period_doubling_scheme(doc.value("depth", 16));
    throw Error("unknown residue scheme kind: " + kind);
}

std::string points_to_csv(const PointSet& ps) {
    std::string out = "x,weight\n";
    for (std::size_t i = 0; i < ps.size(); ++i)
        out += format_double(ps.points[i]) + "," + format_double(ps.weights[i]) + "\n";
    return out;
}

std::string autocorrelation_to_csv(const AutocorrelationEstimate& ac) {
    std::string out = "z,eta\n";
    for (const auto& e : ac.entries) out += format_double(e.z) + "," + format_double(e.eta) + "\n";
    return out;
}

std::string points_to_json(const PointSet& ps) {
    std::string out = "{\n  \"region\": [" + format_double(ps.region_lo) + ", " +
                      format_double(ps.region_hi) + "],\n  \"points\": [";
    for (std::size_t i = 0; i < ps.size(); ++i) {
        out += i ? ",\n    " : "\n    ";
        out += "{\"x\": " + format_double(ps.points[i]) +
               ", \"weight\": " + format_double(ps.weights[i]);
        if (i < ps.labels.size()) out += ", \"label\": " + int_list(ps.labels[i]);
        out += "}";
    }
    return out + "\n  ]\n}\n";
}

std::string autocorrelation_to_json(const AutocorrelationEstimate& ac) {
    std::string out =
        "{\n  \"region_measure\": " + format_double(ac.region_measure) + ",\n  \"entries\": [";
    for (std::size_t i = 0; i < ac.entries.size(); ++i) {
        const auto& e = ac.entries[i];
        out += i ? ",\n    " : "\n    ";
        out += "{\"z\": " + format_double(e.z) + ", \"eta\": " + format_double(e.eta);
        if (!e.label.empty()) out += ", \"label\": " + int_list(e.label);
        out += "}";
    }
    return out + "\n  ]\n}\n";
}

std::string spectrum_to_csv(const Spectrum& spectrum, bool with_log) {
    std::string out =
        with_log ? "label,frequency,intensity,log10_intensity\n" : "label,frequency,intensity\n";
    for (const auto& p : spectrum.peaks) {
        out += label_text(p.label) + "," + format_double(p.frequency) + "," +
               format_double(p.intensity);
        if (with_log) out += "," + format_double(std::log10(p.intensity));
        out += "\n";
    }
    return out;
}

std::string spectrum_to_json(const Spectrum& spectrum) {
    std::string out = "{\n  \"frequency_bound\": " + format_double(spectrum.frequency_bound) +
                      ",\n  \"peaks\": [";
    for (std::size_t i = 0; i < spectrum.peaks.size(); ++i) {
        const auto& p = spectrum.peaks[i];
        out += i ? ",\n    " : "\n    ";
        out += "{" + label_json(p.label) + ", \"frequency\": " + format_double(p.frequency) +
               ", \"intensity\": " + format_double(p.intensity) + "}";
    }
    return out + "\n  ]\n}\n";
}

std::string comparison_to_json(const ComparisonReport& report) {
    std::string out = "{\n  \"max_relative_error\": " + format_double(report.max_relative_error) +
                      ",\n  \"rows\": [";
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const auto& r = report.rows[i];
        out += i ? ",\n    " : "\n    ";
        out += "{\"label\": \"" + label_text(r.peak.label) +
               "\", \"frequency\": " + format_double(r.peak.frequency) +
               ", \"predicted\": " + format_double(r.peak.intensity) +
               ", \"measured\": " + format_double(r.measured) +
               ", \"relative_error\": " + format_double(r.relative_error) + "}";
    }
    return out + "\n  ]\n}\n";
}

std::string comparison_to_csv(const ComparisonReport& report) {
    std::string out = "label,frequency,predicted,measured,relative_error\n";
    for (const auto& r : report.rows) {
        out += label_text(r.peak.label) + "," + format_double(r.peak.frequency) + "," +
               format_double(r.peak.intensity) + "," + format_double(r.measured) + "," +
               format_double(r.relative_error) + "\n";
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (out) out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        out.close();
        std::error_code ec;
        std::filesystem::remove(path, ec);
        throw Error("cannot write " + path);
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace cps
