#include "cps/pointset.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "cps/errors.hpp"

namespace cps {

double PointSet::total_weight() const {
    double t = 0.0;
    for (double w : weights) t += w;
    return t;
}

PointSet generate(const EuclideanScheme& scheme, const IntervalWindow& window, double region_lo,
                  double region_hi) {
    if (!(region_lo < region_hi)) throw EmptyRegion("region has no measure");
    if (scheme.dim_internal != 1)
        throw WindowNotInterval("interval windows need a one-dimensional internal space");
    if (scheme.dim_physical != 1) throw Error("line samples need a one-dimensional physical space");

    const auto pts = enumerate_box(scheme, {region_lo, window.lower}, {region_hi, window.upper});
    PointSet ps;
    ps.region_lo = region_lo;
    ps.region_hi = region_hi;
    for (const auto& p : pts) {
        if (!window.contains(p.internal[0])) continue;
        ps.points.push_back(p.physical[0]);
        ps.weights.push_back(1.0);
        ps.labels.push_back(p.coeffs);
    }
    return ps;
}

PointSet generate(const ResidueScheme& scheme, const ResidueWindow& window, double region_lo,
                  double region_hi) {
    if (!(region_lo < region_hi)) throw EmptyRegion("region has no measure");
    PointSet ps;
    ps.region_lo = region_lo;
    ps.region_hi = region_hi;
    const auto first = static_cast<long long>(std::ceil(region_lo));
    const auto last = static_cast<long long>(std::floor(region_hi));
    for (long long n = first; n <= last; ++n) {
        if (!window.contains(scheme, n)) continue;
        ps.points.push_back(static_cast<double>(n));
        ps.weights.push_back(1.0);
        ps.labels.push_back({n});
    }
    return ps;
}

double density_estimate(const PointSet& ps) { return ps.total_weight() / ps.region_measure(); }

const AutocorrEntry* AutocorrelationEstimate::find(double z, double tol) const {
    const auto it = std::lower_bound(
        entries.begin(), entries.end(), z - tol,
        [](const AutocorrEntry& e, double value) { return e.z < value; });
    if (it == entries.end() || std::abs(it->z - z) > tol) return nullptr;
    return &*it;
}

AutocorrelationEstimate empirical_autocorrelation(const PointSet& ps, double max_displacement) {
    if (!(max_displacement > 0.0)) throw Error("displacement bound must be positive");
    if (max_displacement >= ps.region_measure())
        throw Error("displacement bound exceeds the sampled region");

    const bool labelled = ps.labels.size() == ps.size();
    struct Bucket {
        double z{0.0};
        std::vector<long long> label;
        double weight{0.0};
    };
    std::map<std::vector<long long>, Bucket> buckets;

    for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t j = i; j < ps.size(); ++j) {
            const double z = ps.points[j] - ps.points[i];
            if (z > max_displacement + 1e-9) break;
            std::vector<long long> key;
            if (labelled) {
                key.resize(ps.labels[i].size());
                for (std::size_t k = 0; k < key.size(); ++k)
                    key[k] = ps.labels[j][k] - ps.labels[i][k];
            } else {
                key.push_back(std::llround(z * 1e9));
            }
            auto& b = buckets[key];
            if (b.weight == 0.0) {
                b.z = z;
                b.label = labelled ? key : std::vector<long long>{};
            }
            b.weight += ps.weights[i] * ps.weights[j];
        }
    }

    AutocorrelationEstimate ac;
    ac.region_measure = ps.region_measure();
    for (const auto& [key, b] : buckets) {
        AutocorrEntry e{b.z, b.label, b.weight / ac.region_measure};
        ac.entries.push_back(e);
        if (b.z > 1e-12) {
            AutocorrEntry mirror = e;
            mirror.z = -e.z;
            for (auto& v : mirror.label) v = -v;
            ac.entries.push_back(mirror);
        }
    }
    std::sort(ac.entries.begin(), ac.entries.end(),
              [](const AutocorrEntry& a, const AutocorrEntry& b) { return a.z < b.z; });
    return ac;
}

double predicted_autocorrelation(const EuclideanScheme& scheme, const IntervalWindow& window,
                                 const std::vector<long long>& displacement_coeffs) {
    const double zs = scheme.internal(displacement_coeffs)[0];
    const double overlap = std::max(0.0, window.length() - std::abs(zs));
    return scheme.lattice_density() * overlap;
}

double predicted_autocorrelation(const ResidueScheme& scheme, const ResidueWindow& window,
                                 long long displacement) {
    if (scheme.kind != window.kind) throw KindMismatch("window and scheme kinds differ");
    if (scheme.kind == ResidueKind::product) {
        double eta = 1.0;
        for (std::size_t i = 0; i < scheme.moduli.size(); ++i) {
            const long long m = scheme.moduli[i];
            const auto& f = window.forbidden[i];
            // |S cap (S - z)| = m - |F| - |F - z| + |F cap (F - z)|
            long long overlap = 0;
            for (long long h : f) {
                const long long shifted = ((h + displacement) % m + m) % m;
                if (std::find(f.begin(), f.end(), shifted) != f.end()) ++overlap;
            }
            const long long allowed = m - 2 * static_cast<long long>(f.size()) + overlap;
            eta *= static_cast<double>(allowed) / static_cast<double>(m);
        }
        return eta;
    }

    // pairwise coset intersections; the moduli form a divisibility chain
    double eta = 0.0;
    for (const auto& [ai, mi] : window.classes) {
        for (const auto& [aj, mj] : window.classes) {
            const long long lo = std::min(mi, mj);
            const long long hi = std::max(mi, mj);
            const long long diff = ((aj - displacement - ai) % lo + lo) % lo;
            if (diff == 0) eta += 1.0 / static_cast<double>(hi);
        }
    }
    return eta;
}

double predicted_autocorrelation(const EuclideanScheme& scheme, const IntervalWindow& window,
                                 double z) {
    const double span = 3.0 * (std::abs(window.lower) + std::abs(window.upper) + window.length());
    const auto candidates = enumerate_box(scheme, {z - 1e-9, -span}, {z + 1e-9, span});
    const LatticePoint* best = nullptr;
    for (const auto& p : candidates) {
        if (!best || std::abs(p.physical[0] - z) < std::abs(best->physical[0] - z)) best = &p;
    }
    if (!best) throw DisplacementNotInModule("no lattice point projects near the displacement");
    return predicted_autocorrelation(scheme, window, best->coeffs);
}

}  // namespace cps
