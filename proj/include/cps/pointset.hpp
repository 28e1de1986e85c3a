#pragma once

#include <cstdint>
#include <vector>

#include "cps/euclid.hpp"
#include "cps/residue.hpp"

namespace cps {

// Finite weighted sample of a model set or lattice, sorted by position.
// labels[i] holds the exact lattice coefficients of points[i] when the
// scheme provides them (Euclidean: basis coefficients; residue: the
// integer itself).
struct PointSet {
    std::vector<double> points;
    std::vector<double> weights;
    std::vector<std::vector<long long>> labels;
    double region_lo{0.0};
    double region_hi{0.0};

    double region_measure() const { return region_hi - region_lo; }
    std::size_t size() const { return points.size(); }
    double total_weight() const;
};

// Points x in [region_lo, region_hi] with (x, x*) in L and x* in the
// window. Throws EmptyRegion when the region is degenerate, and
// WindowNotInterval when the scheme's internal dimension is not 1.
PointSet generate(const EuclideanScheme& scheme, const IntervalWindow& window,
                  double region_lo, double region_hi);

// Sieve over the integers of [region_lo, region_hi].
PointSet generate(const ResidueScheme& scheme, const ResidueWindow& window,
                  double region_lo, double region_hi);

// Weighted count / region measure.
double density_estimate(const PointSet& ps);

struct AutocorrEntry {
    double z{0.0};
    std::vector<long long> label;  // displacement label when points carry labels
    double eta{0.0};
};

// eta(z) keyed by displacement, two-sided (entries for z and -z), sorted
// by z. Displacements are grouped by exact label difference when labels
// exist, by a 1e-9 grid otherwise; the realized displacement set of a
// model set is uniformly discrete, so the grid cannot merge distinct
// displacements.
struct AutocorrelationEstimate {
    std::vector<AutocorrEntry> entries;
    double region_measure{0.0};

    const AutocorrEntry* find(double z, double tol = 1e-9) const;
};

// eta(z) = (1/region_measure) sum_{x, x+z in ps} w(x) w(x+z) for all
// realized |z| <= max_displacement; two-pointer sweep over the sorted
// points.
AutocorrelationEstimate empirical_autocorrelation(const PointSet& ps, double max_displacement);

// dens(L) * covariogram(z*) with the covariogram 1_W * ~1_W evaluated in
// closed form: interval overlap max(0, length - |z*|) for Euclidean
// windows, product of per-component overlap fractions for residue
// windows.
double predicted_autocorrelation(const EuclideanScheme& scheme, const IntervalWindow& window,
                                 const std::vector<long long>& displacement_coeffs);
double predicted_autocorrelation(const ResidueScheme& scheme, const ResidueWindow& window,
                                 long long displacement);

// Convenience for a raw displacement value: recovers the lattice label by
// box enumeration near z (internal bounded by three window spans) and
// throws DisplacementNotInModule when no lattice point projects to z.
double predicted_autocorrelation(const EuclideanScheme& scheme, const IntervalWindow& window,
                                 double z);

}  // namespace cps
