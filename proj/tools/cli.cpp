#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "cps/errors.hpp"
#include "cps/io.hpp"
#include "cps/pointset.hpp"
#include "cps/spectrum.hpp"
#include "cps/verify.hpp"

namespace cps::cli {

namespace {

struct Job {
    std::string scheme{"fibonacci"};
    long long region_size{100};
    long long prime_bound{100};
    int depth{16};
    std::string scheme_file;
    std::string window_file;
    std::string out_path;
    std::string format{"csv"};
    bool seedless{false};

    long long index_bound{20};
    double intensity_floor{1e-6};
    long long denominator_bound{30};
    int r_bound{6};
    double frequency_bound{2.0};
    long long sample{0};
    int top{10};
    bool plot_data{false};

    double zmax{10.0};

    std::string verify_scheme;
    long long verify_region{0};
};

// Either a Euclidean scheme with an interval window or a residue scheme
// with a residue window, plus the region convention that goes with it.
struct Setup {
    bool euclidean{false};
    EuclideanScheme escheme;
    IntervalWindow window;
    ResidueScheme rscheme;
    ResidueWindow rwindow;
    double region_lo{0.0};
    double region_hi{0.0};
    double closed_density{0.0};
};

Setup load_setup(const Job& job) {
    Setup s;
    const double N = static_cast<double>(job.region_size);
    if (job.scheme == "fibonacci" || job.scheme == "custom") {
        s.euclidean = true;
        if (job.scheme == "fibonacci") {
            s.escheme = fibonacci_scheme();
            s.window = fibonacci_window();
        } else {
            if (job.scheme_file.empty() || job.window_file.empty())
                throw Error("custom scheme needs --scheme-file and --window-file");
            s.escheme = read_scheme_json(job.scheme_file);
            s.window = read_window_json(job.window_file);
        }
        s.region_lo = -N;
        s.region_hi = N;
        s.closed_density = s.escheme.lattice_density() * s.window.length();
    } else if (job.scheme == "squarefree") {
        s.rscheme = squarefree_scheme(job.prime_bound);
        s.rwindow = squarefree_window(s.rscheme);
        s.region_lo = 1.0;
        s.region_hi = N;
        s.closed_density = s.rscheme.lattice_density * s.rwindow.measure(s.rscheme);
    } else if (job.scheme == "period_doubling") {
        s.rscheme = period_doubling_scheme(job.depth);
        s.rwindow = period_doubling_window(s.rscheme);
        s.region_lo = 0.0;
        s.region_hi = N;
        s.closed_density = s.rscheme.lattice_density * s.rwindow.measure(s.rscheme);
    } else {
        throw Error("unknown scheme: " + job.scheme);
    }
    return s;
}

PointSet points_of(const Setup& s) {
    if (s.euclidean) return generate(s.escheme, s.window, s.region_lo, s.region_hi);
    return generate(s.rscheme, s.rwindow, s.region_lo, s.region_hi);
}

void require_format(const Job& job) {
    if (job.format != "csv" && job.format != "json")
        throw Error("unknown format: " + job.format);
}

std::string sibling_path(const std::string& path, const std::string& tag) {
    const auto dot = path.rfind('.');
    const auto slash = path.find_last_of("/\\");
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + tag;
    return path.substr(0, dot) + tag + path.substr(dot);
}

struct Result {
    std::vector<std::pair<std::string, std::string>> files;
    std::string summary;
    int exit_code{0};

    bool operator==(const Result& o) const {
        return files == o.files && summary == o.summary && exit_code == o.exit_code;
    }
};

// Compute fully, then write; a failed write removes everything written so
// error exits leave no files behind. With --seedless the computation runs
// twice and the bytes must agree before anything is written.
int drive(const Job& job, std::ostream& out, std::ostream& err,
          const std::function<Result()>& compute) {
    Result result;
    try {
        result = compute();
        if (job.seedless && !(compute() == result)) {
            err << "seedless check failed: repeated runs differ\n";
            return 1;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    out << result.summary;
    std::vector<std::string> written;
    try {
        for (const auto& [path, text] : result.files) {
            write_file(path, text);
            written.push_back(path);
        }
    } catch (const std::exception& e) {
        for (const auto& path : written) {
            std::error_code ec;
            std::filesystem::remove(path, ec);
        }
        err << "error: " << e.what() << "\n";
        return 3;
    }
    return result.exit_code;
}

int cmd_gen(const Job& job, std::ostream& out, std::ostream& err) {
    return drive(job, out, err, [&job] {
        require_format(job);
        const auto setup = load_setup(job);
        const auto ps = points_of(setup);
        Result r;
        r.summary = std::to_string(ps.size()) + " points in [" + format_double(ps.region_lo) +
                    ", " + format_double(ps.region_hi) + "]\ndensity estimate " +
                    format_double(density_estimate(ps)) + "\n";
        if (!job.out_path.empty())
            r.files.emplace_back(job.out_path,
                                 job.format == "json" ? points_to_json(ps) : points_to_csv(ps));
        return r;
    });
}

int cmd_density(const Job& job, std::ostream& out, std::ostream& err) {
    return drive(job, out, err, [&job] {
        require_format(job);
        const auto setup = load_setup(job);
        const auto ps = points_of(setup);
        const double estimate = density_estimate(ps);
        Result r;
        r.summary = std::to_string(ps.size()) + " points in [" + format_double(ps.region_lo) +
                    ", " + format_double(ps.region_hi) + "]\ndensity estimate " +
                    format_double(estimate) + "\nclosed form " +
                    format_double(setup.closed_density) + "\ndifference " +
                    format_double(std::abs(estimate - setup.closed_density)) + "\n";
        if (!job.out_path.empty()) {
            std::string text = r.summary;
            if (job.format == "json")
                text = "{\n  \"points\": " + std::to_string(ps.size()) +
                       ",\n  \"density_estimate\": " + format_double(estimate) +
                       ",\n  \"closed_form\": " + format_double(setup.closed_density) + "\n}\n";
            r.files.emplace_back(job.out_path, text);
        }
        return r;
    });
}

int cmd_autocorr(const Job& job, std::ostream& out, std::ostream& err) {
    return drive(job, out, err, [&job] {
        require_format(job);
        const auto setup = load_setup(job);
        const auto ac = empirical_autocorrelation(points_of(setup), job.zmax);
        Result r;
        r.summary = std::to_string(ac.entries.size()) + " displacements with |z| <= " +
                    format_double(job.zmax) + "\n";
        if (!job.out_path.empty())
            r.files.emplace_back(job.out_path, job.format == "json"
                                                   ? autocorrelation_to_json(ac)
                                                   : autocorrelation_to_csv(ac));
        return r;
    });
}

Spectrum diffraction_of(const Job& job, const Setup& setup) {
    if (job.scheme == "fibonacci" || job.scheme == "custom")
        return euclidean_model_set_spectrum(setup.escheme, setup.window, job.index_bound,
                                            job.intensity_floor);
    if (job.scheme == "squarefree")
        return extend_periodically(squarefree_spectrum(job.denominator_bound, job.prime_bound),
                                   job.frequency_bound);
    const long long m_bound =
        std::max<long long>(1, std::llround(job.frequency_bound * std::pow(2.0, job.r_bound)));
    Spectrum sp = period_doubling_spectrum(job.r_bound, m_bound);
    std::vector<Peak> kept;
    for (const auto& p : sp.peaks)
        if (std::abs(p.frequency) <= job.frequency_bound + 1e-12) kept.push_back(p);
    sp.peaks = std::move(kept);
    sp.frequency_bound = job.frequency_bound;
    return sp;
}

int cmd_diffract(const Job& job, std::ostream& out, std::ostream& err) {
    return drive(job, out, err, [&job] {
        require_format(job);
        const auto setup = load_setup(job);
        const auto sp = diffraction_of(job, setup);
        Result r;
        r.summary = std::to_string(sp.peaks.size()) + " peaks\n";
        if (!job.out_path.empty())
            r.files.emplace_back(job.out_path, job.format == "json"
                                                   ? spectrum_to_json(sp)
                                                   : spectrum_to_csv(sp, job.plot_data));
        if (job.sample > 0) {
            const double span = static_cast<double>(job.sample) / setup.closed_density;
            Job sized = job;
            sized.region_size = static_cast<long long>(
                std::ceil(setup.euclidean ? span / 2.0 : span + setup.region_lo));
            const auto report = compare(sp, points_of(load_setup(sized)), job.top);
            r.summary += "sampled comparison of the top " +
                         std::to_string(report.rows.size()) + " peaks: max relative error " +
                         format_double(report.max_relative_error) + "\n";
            if (!job.out_path.empty())
                r.files.emplace_back(sibling_path(job.out_path, "_compare"),
                                     job.format == "json" ? comparison_to_json(report)
                                                          : comparison_to_csv(report));
        }
        return r;
    });
}

int cmd_verify(const Job& job, std::ostream& out, std::ostream& err) {
    return drive(job, out, err, [&job] {
        VerifyOptions options;
        options.scheme = job.verify_scheme;
        options.prime_bound = job.prime_bound;
        options.region = job.verify_region;
        const auto results = run_verification(options);
        Result r;
        int passed = 0;
        for (const auto& check : results) {
            passed += check.passed ? 1 : 0;
            r.summary += std::string(check.passed ? "PASS " : "FAIL ") + check.name + "\n";
        }
        r.summary += std::to_string(passed) + "/" + std::to_string(results.size()) +
                     " checks passed\n";
        r.exit_code = passed == static_cast<int>(results.size()) ? 0 : 1;
        if (!job.out_path.empty())
            r.files.emplace_back(job.out_path, verification_report_json(results));
        return r;
    });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Job job;
    CLI::App app{"cut-and-project point sets, autocorrelation, and pure point diffraction"};
    app.require_subcommand(1);

    const auto add_common = [&job](CLI::App* cmd) {
        cmd->add_option("--scheme", job.scheme,
                        "fibonacci | squarefree | period_doubling | custom");
        cmd->add_option("--N", job.region_size, "region size");
        cmd->add_option("--P", job.prime_bound, "largest sieve prime for squarefree");
        cmd->add_option("--depth", job.depth, "odometer truncation depth for period doubling");
        cmd->add_option("--scheme-file", job.scheme_file, "custom scheme json");
        cmd->add_option("--window-file", job.window_file, "custom window json");
        cmd->add_option("--out", job.out_path, "output file path");
        cmd->add_option("--format", job.format, "csv | json");
        cmd->add_flag("--seedless", job.seedless, "recompute and require identical bytes");
    };

    auto* gen = app.add_subcommand("gen", "generate a point sample");
    add_common(gen);
    auto* density = app.add_subcommand("density", "sampled density against the closed form");
    add_common(density);
    auto* autocorr = app.add_subcommand("autocorr", "empirical autocorrelation coefficients");
    add_common(autocorr);
    autocorr->add_option("--zmax", job.zmax, "largest displacement");
    auto* diffract = app.add_subcommand("diffract", "closed-form diffraction spectrum");
    add_common(diffract);
    diffract->add_option("--index", job.index_bound, "dual lattice coefficient bound");
    diffract->add_option("--floor", job.intensity_floor,
                         "drop peaks below this fraction of the maximal intensity");
    diffract->add_option("--Q", job.denominator_bound, "largest peak denominator");
    diffract->add_option("--rmax", job.r_bound, "largest dyadic level");
    diffract->add_option("--kmax", job.frequency_bound, "frequency window half-width");
    diffract->add_option("--sample", job.sample,
                         "also compare against a sample of about this many points");
    diffract->add_option("--top", job.top, "number of peaks in the comparison");
    diffract->add_flag("--plot-data", job.plot_data, "add a log10 intensity column");
    auto* verify = app.add_subcommand("verify", "run the cross-validation suite");
    verify->add_option("--scheme", job.verify_scheme,
                       "restrict to one scheme family (default: all)");
    verify->add_option("--N", job.verify_region, "region size override");
    verify->add_option("--P", job.prime_bound, "largest sieve prime for squarefree checks");
    verify->add_option("--out", job.out_path, "report file path");
    verify->add_option("--format", job.format, "report format (always json)");
    verify->add_flag("--seedless", job.seedless, "recompute and require identical bytes");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    if (gen->parsed()) return cmd_gen(job, out, err);
    if (density->parsed()) return cmd_density(job, out, err);
    if (autocorr->parsed()) return cmd_autocorr(job, out, err);
    if (diffract->parsed()) return cmd_diffract(job, out, err);
    return cmd_verify(job, out, err);
}

}  // namespace cps::cli
