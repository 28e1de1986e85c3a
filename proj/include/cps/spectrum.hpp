#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "cps/euclid.hpp"
#include "cps/pointset.hpp"
#include "cps/rational.hpp"
#include "cps/residue.hpp"

namespace cps {

// Exact frequency label of a Bragg peak. Euclidean peaks carry the dual
// lattice coefficients, residue peaks the reduced fraction m/q (dyadic
// q = 2^r for the odometer).
struct PeakLabel {
    enum class Kind { none, coeffs, fraction };
    Kind kind{Kind::none};
    std::vector<long long> coeffs;
    Rational fraction;
};

struct Peak {
    double frequency{0.0};
    double intensity{0.0};
    PeakLabel label;
};

// Pure point diffraction: a finite list of Bragg peaks, intensities
// normalized as point masses of the diffraction measure (per volume
// squared). Sorted by frequency; intensities at k and -k are equal.
struct Spectrum {
    std::vector<Peak> peaks;
    double frequency_bound{0.0};
    double intensity_floor{0.0};
};

struct StructureFactorSample {
    std::vector<double> frequencies;
    std::vector<std::complex<double>> values;       // F(s) = sum w(p) e^{-2 pi i s p}
    std::vector<double> intensities;                // |F|^2 / region_measure^2
    double region_measure{0.0};
};

// Direct summation over the sorted points, one frequency at a time; the
// per-frequency sum order is fixed, so results do not depend on how the
// frequency loop is scheduled.
StructureFactorSample structure_factor(const PointSet& ps, const std::vector<double>& frequencies);

// Wiener diagram of a lattice: peaks at the dual lattice with constant
// intensity dens^2. Requires a basis splitting into physical and internal
// blocks (throws SchemeNotSplit) and a one-dimensional physical part; the
// lattice is the physical block's column span.
Spectrum lattice_spectrum(const EuclideanScheme& scheme, double frequency_bound);

// Model-set diffraction for d = n = 1: peaks at physical projections of
// dual lattice points with coefficients |c_i| <= index_bound, intensity
// dens(L)^2 |1^_W(k*)|^2 with the interval transform sin(pi L k*)/(pi k*)
// (series branch below |k*| < 1e-8). Peaks under the floor are dropped.
Spectrum euclidean_model_set_spectrum(const EuclideanScheme& scheme, const IntervalWindow& window,
                                      long long index_bound, double intensity_floor);

// Specialization to the Fibonacci scheme and window; peak labels are the
// exact integer pairs (n, m) with k = (n + m tau)/sqrt(2+tau).
Spectrum fibonacci_spectrum(long long index_bound, double intensity_floor);

// Peaks at all reduced m/q in [0, 1) with q cubefree, prime factors <= P,
// q <= denominator_bound; intensity (6/pi^2)^2 prod_{p|q} 1/(p^2-1)^2.
// The full diffraction is the Z-periodic extension of these classes.
Spectrum squarefree_spectrum(long long denominator_bound, long long prime_bound);

// Replicates peak classes of a [0,1)-spectrum at integer translates
// within [-frequency_bound, frequency_bound].
Spectrum extend_periodically(const Spectrum& spectrum, double frequency_bound);

// Peaks at m/2^r under the unique parametrisation (r = 0, m integer) or
// (r >= 1, m odd), |m| <= m_bound, r <= r_bound; intensity 4^{1-r}/9.
Spectrum period_doubling_spectrum(int r_bound, long long m_bound);

struct PeakComparison {
    Peak peak;
    double measured{0.0};
    double relative_error{0.0};
};

struct ComparisonReport {
    std::vector<PeakComparison> rows;
    double max_relative_error{0.0};
};

// Structure factor of the sample at the top_n highest-intensity predicted
// peaks (ties broken toward small |frequency|), with per-peak relative
// errors.
ComparisonReport compare(const Spectrum& spectrum, const PointSet& ps, int top_n);

// Two sides of the lattice Poisson summation identity
// sum_{l in aZ} g(l) = (1/a) sum_{k in (1/a)Z} g^(k), both truncated at
// |argument| <= radius.
struct PsfCheck {
    double direct_sum{0.0};
    double dual_sum{0.0};
    double difference() const { return direct_sum - dual_sum; }
};

// Gaussian e^{-pi x^2}, a fixed point of the transform.
PsfCheck psf_gaussian(double spacing, double radius);

// Hat function f * ~f for f the indicator of [-w, w]: direct side sums the
// tent max(0, 2w - |x|), dual side its transform (sin(2 pi k w)/(pi k))^2.
PsfCheck psf_hat(double spacing, double half_width, double radius);

}  // namespace cps
