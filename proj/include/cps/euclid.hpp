#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace cps {

// One-dimensional window in internal space. Half-open [a, b) is the
// default so that model sets such as the Fibonacci chain come out with
// exactly two neighbour distances; "closed" keeps both endpoints.
struct IntervalWindow {
    enum class Closure { half_open_right, closed };

    double lower{0.0};
    double upper{0.0};
    Closure closure{Closure::half_open_right};

    double length() const { return upper - lower; }
    double center() const { return 0.5 * (lower + upper); }

    bool contains(double y) const {
        if (closure == Closure::closed) return lower <= y && y <= upper;
        return lower <= y && y < upper;
    }

    IntervalWindow shifted(double t) const { return {lower + t, upper + t, closure}; }
};

using Closure = IntervalWindow::Closure;

// Validates lower < upper.
IntervalWindow make_window(double lower, double upper,
                           Closure closure = Closure::half_open_right);

// Cut-and-project scheme (R^d, R^n, L) where L is spanned by the columns
// of `basis`. Physical coordinates are the first d rows, internal the
// last n.
struct EuclideanScheme {
    int dim_physical{1};
    int dim_internal{1};
    Eigen::MatrixXd basis;
    std::vector<std::string> warnings;  // projection spot-check findings

    int dim_total() const { return dim_physical + dim_internal; }
    double covolume() const;
    double lattice_density() const { return 1.0 / covolume(); }

    Eigen::VectorXd embed(const std::vector<long long>& coeffs) const;
    Eigen::VectorXd physical(const std::vector<long long>& coeffs) const;
    Eigen::VectorXd internal(const std::vector<long long>& coeffs) const;
};

// Lattice point with its exact integer coefficient vector; the real
// coordinates are derived from the coefficients, never primary.
struct LatticePoint {
    std::vector<long long> coeffs;
    Eigen::VectorXd physical;
    Eigen::VectorXd internal;
};

// Throws SingularBasis if |det| < 1e-12. Runs a finite injectivity
// spot-check of the physical projection and records warnings (the
// projection assumptions are asymptotic and cannot be proven from a box).
EuclideanScheme build_scheme(const Eigen::MatrixXd& basis, int d, int n);

// Scheme of the rotated integer lattice with basis columns
// u1 = (1, tau)/sqrt(2+tau), u2 = (tau, -1)/sqrt(2+tau). Lattice points
// carry exact labels (n, m): physical (n + m tau)/sqrt(2+tau), internal
// (n tau - m)/sqrt(2+tau).
EuclideanScheme fibonacci_scheme();

// Annihilator lattice: basis is the inverse transpose, densities swap
// with covolumes.
EuclideanScheme dual_lattice(const EuclideanScheme& scheme);

// Projection of the Fibonacci unit cell onto the internal axis, centered
// at 0: [-(1+tau)/(2 sqrt(2+tau)), +(1+tau)/(2 sqrt(2+tau))).
IntervalWindow fibonacci_window();

double golden_ratio();

// All lattice points with embed(coeffs) inside the box [lo, hi]
// componentwise (dim_total entries). Interval bounds per coordinate are
// derived from the inverse basis with a +1 safety margin, so no point in
// the box is missed; returned sorted by physical coordinate(s), then by
// coefficients.
std::vector<LatticePoint> enumerate_box(const EuclideanScheme& scheme,
                                        const std::vector<double>& lo,
                                        const std::vector<double>& hi);

}  // namespace cps
