#include "cps/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cps/errors.hpp"

namespace cps {

namespace {

std::complex<double> phase(double turns) {
    const double arg = -2.0 * std::numbers::pi * turns;
    return {std::cos(arg), std::sin(arg)};
}

// Transform magnitude of an interval indicator of length len at y, center
// factored out: |sin(pi len y) / (pi y)|, with the removable singularity
// expanded below 1e-8 where the quotient loses digits.
double interval_transform(double len, double y) {
    if (std::abs(y) < 1e-8) {
        const double t = std::numbers::pi * len * y;
        return len * (1.0 - t * t / 6.0);
    }
    return std::sin(std::numbers::pi * len * y) / (std::numbers::pi * y);
}

void sort_by_frequency(Spectrum& sp) {
    std::sort(sp.peaks.begin(), sp.peaks.end(), [](const Peak& a, const Peak& b) {
        if (a.frequency != b.frequency) return a.frequency < b.frequency;
        return a.label.coeffs < b.label.coeffs;
    });
}

}  // namespace

StructureFactorSample structure_factor(const PointSet& ps, const std::vector<double>& frequencies) {
    StructureFactorSample out;
    out.frequencies = frequencies;
    out.region_measure = ps.region_measure();
    out.values.assign(frequencies.size(), {0.0, 0.0});
    out.intensities.assign(frequencies.size(), 0.0);

    const auto count = static_cast<std::ptrdiff_t>(frequencies.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t f = 0; f < count; ++f) {
        const double s = frequencies[static_cast<std::size_t>(f)];
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t i = 0; i < ps.size(); ++i) {
            acc += ps.weights[i] * phase(s * ps.points[i]);
        }
        out.values[static_cast<std::size_t>(f)] = acc;
        out.intensities[static_cast<std::size_t>(f)] =
            std::norm(acc) / (out.region_measure * out.region_measure);
    }
    return out;
}

Spectrum lattice_spectrum(const EuclideanScheme& scheme, double frequency_bound) {
    const int d = scheme.dim_physical;
    const int n = scheme.dim_internal;
    for (int i = 0; i < d + n; ++i) {
        for (int j = 0; j < d + n; ++j) {
            const bool off_block = (i < d) != (j < d);
            if (off_block && std::abs(scheme.basis(i, j)) > 1e-12)
                throw SchemeNotSplit("basis mixes physical and internal axes");
        }
    }
    if (d != 1) throw Error("lattice diffraction is computed on the line");

    const double a = std::abs(scheme.basis(0, 0));
    const double dens = 1.0 / a;
    Spectrum sp;
    sp.frequency_bound = frequency_bound;
    const auto jmax = static_cast<long long>(std::floor(frequency_bound * a + 1e-12));
    for (long long j = -jmax; j <= jmax; ++j) {
        Peak p;
        p.frequency = static_cast<double>(j) / a;
        p.intensity = dens * dens;
        p.label.kind = PeakLabel::Kind::coeffs;
        p.label.coeffs = {j};
        sp.peaks.push_back(p);
    }
    sort_by_frequency(sp);
    return sp;
}

Spectrum euclidean_model_set_spectrum(const EuclideanScheme& scheme, const IntervalWindow& window,
                                      long long index_bound, double intensity_floor) {
    if (scheme.dim_physical != 1 || scheme.dim_internal != 1)
        throw WindowNotInterval("model set diffraction needs d = n = 1");

    const auto dual = dual_lattice(scheme);
    const double dens = scheme.lattice_density();
    const double len = window.length();
    const double top = dens * dens * len * len;
    const double cutoff = intensity_floor * top;

    Spectrum sp;
    sp.intensity_floor = intensity_floor;
    for (long long c1 = -index_bound; c1 <= index_bound; ++c1) {
        for (long long c2 = -index_bound; c2 <= index_bound; ++c2) {
            const Eigen::VectorXd x = dual.embed({c1, c2});
            const double amplitude = dens * interval_transform(len, x[1]);
            const double intensity = amplitude * amplitude;
            if (intensity < cutoff) continue;
            Peak p;
            p.frequency = x[0];
            p.intensity = intensity;
            p.label.kind = PeakLabel::Kind::coeffs;
            p.label.coeffs = {c1, c2};
            sp.peaks.push_back(p);
            sp.frequency_bound = std::max(sp.frequency_bound, std::abs(x[0]));
        }
    }
    sort_by_frequency(sp);
    return sp;
}

Spectrum fibonacci_spectrum(long long index_bound, double intensity_floor) {
    return euclidean_model_set_spectrum(fibonacci_scheme(), fibonacci_window(), index_bound,
                                        intensity_floor);
}

Spectrum squarefree_spectrum(long long denominator_bound, long long prime_bound) {
    const auto scheme = squarefree_scheme(prime_bound);
    Spectrum sp;
    sp.frequency_bound = 1.0;
    for (const auto& label : dual_frequency_module(scheme, denominator_bound)) {
        const auto amplitude = limit_window_transform(scheme, label.frequency);
        Peak p;
        p.frequency = label.frequency.value();
        p.intensity = std::norm(amplitude);
        p.label.kind = PeakLabel::Kind::fraction;
        p.label.fraction = label.frequency;
        sp.peaks.push_back(p);
    }
    sort_by_frequency(sp);
    return sp;
}

Spectrum extend_periodically(const Spectrum& spectrum, double frequency_bound) {
    Spectrum out;
    out.frequency_bound = frequency_bound;
    out.intensity_floor = spectrum.intensity_floor;
    for (const auto& p : spectrum.peaks) {
        if (p.label.kind != PeakLabel::Kind::fraction) throw Error("peak class without a fraction");
        const Rational base = p.label.fraction;
        for (long long t = static_cast<long long>(std::ceil(-frequency_bound - base.value()));
             ; ++t) {
            const Rational shifted{base.num + t * base.den, base.den};
            if (shifted.value() > frequency_bound + 1e-12) break;
            if (shifted.value() < -frequency_bound - 1e-12) continue;
            Peak q = p;
            q.frequency = shifted.value();
            q.label.fraction = shifted;
            out.peaks.push_back(q);
        }
    }
    sort_by_frequency(out);
    return out;
}

Spectrum period_doubling_spectrum(int r_bound, long long m_bound) {
    Spectrum sp;
    for (int r = 0; r <= r_bound; ++r) {
        const long long q = 1LL << r;
        const double intensity = std::pow(4.0, 1 - r) / 9.0;
        for (long long m = -m_bound; m <= m_bound; ++m) {
            if (r > 0 && m % 2 == 0) continue;
            Peak p;
            p.frequency = static_cast<double>(m) / static_cast<double>(q);
            p.intensity = intensity;
            p.label.kind = PeakLabel::Kind::fraction;
            p.label.fraction = Rational(m, q);
            sp.peaks.push_back(p);
            sp.frequency_bound = std::max(sp.frequency_bound, std::abs(p.frequency));
        }
    }
    sort_by_frequency(sp);
    return sp;
}

ComparisonReport compare(const Spectrum& spectrum, const PointSet& ps, int top_n) {
    std::vector<Peak> ranked = spectrum.peaks;
    std::sort(ranked.begin(), ranked.end(), [](const Peak& a, const Peak& b) {
        if (a.intensity != b.intensity) return a.intensity > b.intensity;
        if (std::abs(a.frequency) != std::abs(b.frequency))
            return std::abs(a.frequency) < std::abs(b.frequency);
        return a.frequency < b.frequency;
    });
    if (static_cast<int>(ranked.size()) > top_n) ranked.resize(static_cast<std::size_t>(top_n));

    std::vector<double> freqs;
    for (const auto& p : ranked) freqs.push_back(p.frequency);
    const auto sf = structure_factor(ps, freqs);

    ComparisonReport report;
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        PeakComparison row;
        row.peak = ranked[i];
        row.measured = sf.intensities[i];
        row.relative_error = std::abs(row.measured - row.peak.intensity) / row.peak.intensity;
        report.max_relative_error = std::max(report.max_relative_error, row.relative_error);
        report.rows.push_back(row);
    }
    return report;
}

PsfCheck psf_gaussian(double spacing, double radius) {
    PsfCheck check;
    const auto nmax = static_cast<long long>(std::floor(radius / spacing));
    for (long long i = -nmax; i <= nmax; ++i) {
        const double x = static_cast<double>(i) * spacing;
        check.direct_sum += std::exp(-std::numbers::pi * x * x);
    }
    const double dual_spacing = 1.0 / spacing;
    const auto kmax = static_cast<long long>(std::floor(radius / dual_spacing));
    for (long long i = -kmax; i <= kmax; ++i) {
        const double k = static_cast<double>(i) * dual_spacing;
        check.dual_sum += dual_spacing * std::exp(-std::numbers::pi * k * k);
    }
    return check;
}

PsfCheck psf_hat(double spacing, double half_width, double radius) {
    PsfCheck check;
    const auto nmax = static_cast<long long>(std::floor(radius / spacing));
    for (long long i = -nmax; i <= nmax; ++i) {
        const double x = static_cast<double>(i) * spacing;
        check.direct_sum += std::max(0.0, 2.0 * half_width - std::abs(x));
    }
    const double dual_spacing = 1.0 / spacing;
    const auto kmax = static_cast<long long>(std::floor(radius / dual_spacing));
    for (long long i = -kmax; i <= kmax; ++i) {
        if (i == 0) {
            check.dual_sum += dual_spacing * 4.0 * half_width * half_width;
            continue;
        }
        const double k = static_cast<double>(i) * dual_spacing;
        const double num = std::sin(2.0 * std::numbers::pi * k * half_width);
        check.dual_sum += dual_spacing * (num * num) / (std::numbers::pi * std::numbers::pi * k * k);
    }
    return check;
}

}  // namespace cps
