#include "cps/euclid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>

#include "cps/errors.hpp"

namespace cps {

IntervalWindow make_window(double lower, double upper, Closure closure) {
    if (!(lower < upper)) throw WindowNotInterval("window requires lower < upper");
    return {lower, upper, closure};
}

double EuclideanScheme::covolume() const { return std::abs(basis.determinant()); }

Eigen::VectorXd EuclideanScheme::embed(const std::vector<long long>& coeffs) const {
    Eigen::VectorXd c(basis.cols());
    for (Eigen::Index i = 0; i < basis.cols(); ++i)
        c[i] = static_cast<double>(coeffs[static_cast<std::size_t>(i)]);
    return basis * c;
}

Eigen::VectorXd EuclideanScheme::physical(const std::vector<long long>& coeffs) const {
    return embed(coeffs).head(dim_physical);
}

Eigen::VectorXd EuclideanScheme::internal(const std::vector<long long>& coeffs) const {
    return embed(coeffs).tail(dim_internal);
}

namespace {

std::string coeff_text(const std::vector<long long>& c) {
    std::string out = "(";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(c[i]);
    }
    return out + ")";
}

// Finite injectivity probe of the physical projection. Distinct lattice
// points closer than 1e-9 in physical space within the probe box are
// reported; the box proves nothing asymptotically, it only catches
// schemes that are degenerate near the origin.
std::vector<std::string> projection_spot_check(const EuclideanScheme& s) {
    const int dim = s.dim_total();
    int span = 8;
    while (span > 2 && std::pow(2.0 * span + 1.0, dim) > 25000.0) --span;

    std::vector<std::vector<long long>> coeffs;
    std::vector<long long> current(static_cast<std::size_t>(dim), 0);
    std::function<void(int)> fill = [&](int level) {
        if (level == dim) {
            coeffs.push_back(current);
            return;
        }
        for (long long v = -span; v <= span; ++v) {
            current[static_cast<std::size_t>(level)] = v;
            fill(level + 1);
        }
    };
    fill(0);

    struct Probe {
        Eigen::VectorXd x;
        std::size_t idx;
    };
    std::vector<Probe> probes;
    probes.reserve(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        probes.push_back({s.physical(coeffs[i]), i});
    std::sort(probes.begin(), probes.end(),
              [](const Probe& a, const Probe& b) { return a.x[0] < b.x[0]; });

    std::vector<std::string> warnings;
    for (std::size_t i = 0; i + 1 < probes.size() && warnings.size() < 4; ++i) {
        for (std::size_t j = i + 1; j < probes.size(); ++j) {
            if (probes[j].x[0] - probes[i].x[0] > 1e-9) break;
            if ((probes[j].x - probes[i].x).norm() < 1e-9) {
                warnings.push_back("physical projection identifies " +
                                   coeff_text(coeffs[probes[i].idx]) + " and " +
                                   coeff_text(coeffs[probes[j].idx]));
                break;
            }
        }
    }
    return warnings;
}

}  // namespace

EuclideanScheme build_scheme(const Eigen::MatrixXd& basis, int d, int n) {
    if (d < 1 || n < 0) throw Error("scheme needs d >= 1 and n >= 0");
    if (basis.rows() != basis.cols() || basis.rows() != d + n)
        throw Error("basis must be square of size d + n");
    if (std::abs(basis.determinant()) < 1e-12) throw SingularBasis("basis determinant is zero");

    EuclideanScheme s;
    s.dim_physical = d;
    s.dim_internal = n;
    s.basis = basis;
    s.warnings = projection_spot_check(s);
    return s;
}

double golden_ratio() { return (1.0 + std::sqrt(5.0)) / 2.0; }

EuclideanScheme fibonacci_scheme() {
    const double tau = golden_ratio();
    const double s = std::sqrt(2.0 + tau);
    Eigen::MatrixXd basis(2, 2);
    basis << 1.0 / s, tau / s, tau / s, -1.0 / s;
    return build_scheme(basis, 1, 1);
}

EuclideanScheme dual_lattice(const EuclideanScheme& scheme) {
    const Eigen::MatrixXd dual = scheme.basis.inverse().transpose();
    return build_scheme(dual, scheme.dim_physical, scheme.dim_internal);
}

IntervalWindow fibonacci_window() {
    const double half = (1.0 + golden_ratio()) / (2.0 * std::sqrt(2.0 + golden_ratio()));
    return make_window(-half, half);
}

namespace {

struct CoeffBounds {
    std::vector<double> lo, hi;
};

// Outer interval per coefficient from the inverse image of the box
// corners, widened by 1 so edge effects cannot drop candidates.
CoeffBounds outer_bounds(const EuclideanScheme& s, const std::vector<double>& lo,
                         const std::vector<double>& hi) {
    const int dim = s.dim_total();
    const Eigen::MatrixXd inv = s.basis.inverse();
    CoeffBounds b;
    b.lo.assign(static_cast<std::size_t>(dim), 0.0);
    b.hi.assign(static_cast<std::size_t>(dim), 0.0);
    for (int j = 0; j < dim; ++j) {
        double cmin = 0.0, cmax = 0.0;
        for (int k = 0; k < dim; ++k) {
            const double a = inv(j, k) * lo[static_cast<std::size_t>(k)];
            const double c = inv(j, k) * hi[static_cast<std::size_t>(k)];
            cmin += std::min(a, c);
            cmax += std::max(a, c);
        }
        b.lo[static_cast<std::size_t>(j)] = cmin - 1.0;
        b.hi[static_cast<std::size_t>(j)] = cmax + 1.0;
    }
    return b;
}

}  // namespace

std::vector<LatticePoint> enumerate_box(const EuclideanScheme& scheme,
                                        const std::vector<double>& lo,
                                        const std::vector<double>& hi) {
    const int dim = scheme.dim_total();
    if (static_cast<int>(lo.size()) != dim || static_cast<int>(hi.size()) != dim)
        throw Error("box bounds must have one entry per lattice dimension");

    const CoeffBounds outer = outer_bounds(scheme, lo, hi);
    const Eigen::MatrixXd& B = scheme.basis;

    std::vector<LatticePoint> out;
    std::vector<long long> coeffs(static_cast<std::size_t>(dim), 0);
    // residual[i] = sum over fixed coefficients of B(i, k) * c_k
    Eigen::VectorXd residual = Eigen::VectorXd::Zero(dim);

    std::function<void(int)> descend = [&](int level) {
        if (level == dim) {
            const Eigen::VectorXd x = scheme.embed(coeffs);
            for (int i = 0; i < dim; ++i) {
                const auto iu = static_cast<std::size_t>(i);
                if (!(lo[iu] <= x[i] && x[i] <= hi[iu])) return;
            }
            LatticePoint p;
            p.coeffs = coeffs;
            p.physical = x.head(scheme.dim_physical);
            p.internal = x.tail(scheme.dim_internal);
            out.push_back(std::move(p));
            return;
        }

        // intersect the row constraints: for each row i,
        //   lo_i <= residual_i + B(i,level) c + (later columns) <= hi_i
        // with the later columns bounded by their outer intervals.
        double clo = outer.lo[static_cast<std::size_t>(level)];
        double chi = outer.hi[static_cast<std::size_t>(level)];
        for (int i = 0; i < dim; ++i) {
            const double bij = B(i, level);
            if (std::abs(bij) < 1e-12) continue;
            double slack_min = 0.0, slack_max = 0.0;
            for (int k = level + 1; k < dim; ++k) {
                const auto ku = static_cast<std::size_t>(k);
                const double a = B(i, k) * outer.lo[ku];
                const double c = B(i, k) * outer.hi[ku];
                slack_min += std::min(a, c);
                slack_max += std::max(a, c);
            }
            const auto iu = static_cast<std::size_t>(i);
            const double left = lo[iu] - residual[i] - slack_max;
            const double right = hi[iu] - residual[i] - slack_min;
            const double a = left / bij;
            const double c = right / bij;
            clo = std::max(clo, std::min(a, c));
            chi = std::min(chi, std::max(a, c));
        }

        const auto first = static_cast<long long>(std::ceil(clo - 1e-9));
        const auto last = static_cast<long long>(std::floor(chi + 1e-9));
        const Eigen::VectorXd base = residual;
        for (long long v = first; v <= last; ++v) {
            coeffs[static_cast<std::size_t>(level)] = v;
            for (int i = 0; i < dim; ++i) residual[i] = base[i] + B(i, level) * static_cast<double>(v);
            descend(level + 1);
        }
        residual = base;
    };
    descend(0);

    std::sort(out.begin(), out.end(), [](const LatticePoint& a, const LatticePoint& b) {
        for (Eigen::Index i = 0; i < a.physical.size(); ++i) {
            if (a.physical[i] != b.physical[i]) return a.physical[i] < b.physical[i];
        }
        return a.coeffs < b.coeffs;
    });
    return out;
}

}  // namespace cps
