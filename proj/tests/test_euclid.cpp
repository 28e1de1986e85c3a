#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "cps/errors.hpp"
#include "cps/euclid.hpp"
#include "doctest.h"

using namespace cps;

namespace {

Eigen::MatrixXd mat2(double a, double b, double c, double d) {
    Eigen::MatrixXd m(2, 2);
    m << a, b, c, d;
    return m;
}

// Independent enumeration oracle: nested coefficient loops over a wide
// margin, membership by direct coordinate test.
std::set<std::vector<long long>> brute_force_coeffs(const EuclideanScheme& s,
                                                    const std::vector<double>& lo,
                                                    const std::vector<double>& hi,
                                                    long long coeff_span) {
    std::set<std::vector<long long>> out;
    for (long long c0 = -coeff_span; c0 <= coeff_span; ++c0) {
        for (long long c1 = -coeff_span; c1 <= coeff_span; ++c1) {
            const std::vector<long long> c{c0, c1};
            const Eigen::VectorXd x = s.embed(c);
            bool inside = true;
            for (int i = 0; i < 2; ++i) inside = inside && lo[i] <= x[i] && x[i] <= hi[i];
            if (inside) out.insert(c);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("build_scheme densities and errors") {
    const auto unit = build_scheme(mat2(1, 0, 0, 1), 1, 1);
    CHECK(unit.lattice_density() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(unit.covolume() == doctest::Approx(1.0).epsilon(1e-14));

    const auto stretched = build_scheme(mat2(2, 0, 0, 1), 1, 1);
    CHECK(stretched.lattice_density() == doctest::Approx(0.5).epsilon(1e-14));

    CHECK_THROWS_AS(build_scheme(mat2(1, 2, 2, 4), 1, 1), SingularBasis);
    CHECK_THROWS_AS(build_scheme(mat2(1, 0, 0, 1), 0, 2), Error);
}

TEST_CASE("density times covolume is 1 for random well-conditioned bases") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int accepted = 0;
    while (accepted < 25) {
        Eigen::MatrixXd b(2, 2);
        b << u(rng), u(rng), u(rng), u(rng);
        if (std::abs(b.determinant()) < 0.3) continue;
        ++accepted;
        const auto s = build_scheme(b, 1, 1);
        CHECK(std::abs(s.lattice_density() * std::abs(b.determinant()) - 1.0) < 1e-12);
    }
}

TEST_CASE("fibonacci scheme star map is exact in the labels") {
    const double tau = golden_ratio();
    const double s = std::sqrt(2.0 + tau);
    CHECK(tau == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-15));

    const auto fib = fibonacci_scheme();
    CHECK(fib.dim_physical == 1);
    CHECK(fib.dim_internal == 1);
    // det = -(1 + tau^2)/(2 + tau) = -1 since tau^2 = tau + 1
    CHECK(std::abs(fib.covolume() - 1.0) < 1e-14);
    CHECK(fib.warnings.empty());

    const auto origin = fib.embed({0, 0});
    CHECK(origin[0] == 0.0);
    CHECK(origin[1] == 0.0);

    const auto e1 = fib.embed({1, 0});
    CHECK(e1[0] == doctest::Approx(1.0 / s).epsilon(1e-15));      // 0.525731...
    CHECK(e1[1] == doctest::Approx(tau / s).epsilon(1e-15));      // 0.850651...
    CHECK(fib.physical({1, 0})[0] == doctest::Approx(0.5257311121191336).epsilon(1e-12));
    CHECK(fib.internal({1, 0})[0] == doctest::Approx(0.8506508083520400).epsilon(1e-12));

    const auto p = fib.embed({3, -2});
    CHECK(p[0] == doctest::Approx((3.0 - 2.0 * tau) / s).epsilon(1e-14));
    CHECK(p[1] == doctest::Approx((3.0 * tau + 2.0) / s).epsilon(1e-14));
}

TEST_CASE("lattice points reconstruct from integer labels") {
    const auto fib = fibonacci_scheme();
    const auto pts = enumerate_box(fib, {-10.0, -1.0}, {10.0, 1.0});
    REQUIRE(!pts.empty());
    for (const auto& p : pts) {
        const Eigen::VectorXd x = fib.embed(p.coeffs);
        CHECK(std::abs(x[0] - p.physical[0]) < 1e-12);
        CHECK(std::abs(x[1] - p.internal[0]) < 1e-12);
    }
}

TEST_CASE("dual lattice inverse transpose and involution") {
    const auto unit = build_scheme(mat2(1, 0, 0, 1), 1, 1);
    const auto unit_dual = dual_lattice(unit);
    CHECK((unit_dual.basis - unit.basis).norm() < 1e-15);

    const auto diag = build_scheme(mat2(2, 0, 0, 1), 1, 1);
    const auto diag_dual = dual_lattice(diag);
    CHECK(diag_dual.basis(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(diag_dual.basis(1, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(diag_dual.basis(0, 1)) < 1e-15);
    CHECK(std::abs(diag_dual.basis(1, 0)) < 1e-15);
    CHECK(diag_dual.lattice_density() == doctest::Approx(diag.covolume()).epsilon(1e-14));

    const auto fib = fibonacci_scheme();
    const auto back = dual_lattice(dual_lattice(fib));
    CHECK((back.basis - fib.basis).norm() < 1e-12);
}

TEST_CASE("fibonacci lattice is self-dual as a point set") {
    const auto fib = fibonacci_scheme();
    const auto dual = dual_lattice(fib);
    const std::vector<double> lo{-8.0, -8.0};
    const std::vector<double> hi{8.0, 8.0};
    const auto a = enumerate_box(fib, lo, hi);
    const auto b = enumerate_box(dual, lo, hi);
    REQUIRE(a.size() == b.size());
    REQUIRE(a.size() > 100);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(std::abs(a[i].physical[0] - b[i].physical[0]) < 1e-9);
        CHECK(std::abs(a[i].internal[0] - b[i].internal[0]) < 1e-9);
    }
}

TEST_CASE("fibonacci window geometry") {
    const double tau = golden_ratio();
    const double s = std::sqrt(2.0 + tau);
    const auto w = fibonacci_window();

    CHECK(w.length() == doctest::Approx((1.0 + tau) / s).epsilon(1e-15));
    CHECK(w.length() == doctest::Approx(1.3763819204711736).epsilon(1e-12));

    // length equals the sum of the internal projections of both basis vectors
    const auto fib = fibonacci_scheme();
    const double proj = std::abs(fib.basis(1, 0)) + std::abs(fib.basis(1, 1));
    CHECK(w.length() == doctest::Approx(proj).epsilon(1e-14));

    CHECK(w.center() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(w.closure == IntervalWindow::Closure::half_open_right);
    CHECK(w.contains(w.lower));
    CHECK(!w.contains(w.upper));
}

TEST_CASE("make_window validates the interval") {
    CHECK_THROWS_AS(make_window(1.0, 1.0), WindowNotInterval);
    CHECK_THROWS_AS(make_window(2.0, -1.0), WindowNotInterval);
    const auto w = make_window(-1.0, 1.0, IntervalWindow::Closure::closed);
    CHECK(w.contains(1.0));
}

TEST_CASE("box enumeration misses no lattice point") {
    const auto fib = fibonacci_scheme();
    {
        const std::vector<double> lo{-30.0, -0.7};
        const std::vector<double> hi{30.0, 0.7};
        const auto pts = enumerate_box(fib, lo, hi);
        std::set<std::vector<long long>> got;
        for (const auto& p : pts) got.insert(p.coeffs);
        CHECK(got == brute_force_coeffs(fib, lo, hi, 60));
        CHECK(std::is_sorted(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
            return a.physical[0] < b.physical[0];
        }));
    }
    {
        const auto sheared = build_scheme(mat2(1.0, 0.3, 0.2, 1.1), 1, 1);
        const std::vector<double> lo{-10.0, -3.0};
        const std::vector<double> hi{10.0, 3.0};
        const auto pts = enumerate_box(sheared, lo, hi);
        std::set<std::vector<long long>> got;
        for (const auto& p : pts) got.insert(p.coeffs);
        CHECK(got == brute_force_coeffs(sheared, lo, hi, 40));
    }
}

TEST_CASE("physical projection injectivity on a large fibonacci box") {
    const auto fib = fibonacci_scheme();
    const auto pts = enumerate_box(fib, {-100.0, -2.0}, {100.0, 2.0});
    REQUIRE(pts.size() > 500);
    double min_gap = 1e9;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        min_gap = std::min(min_gap, pts[i].physical[0] - pts[i - 1].physical[0]);
    }
    CHECK(min_gap > 1e-6);
}

TEST_CASE("projection spot check warns on non-injective schemes") {
    const auto unit = build_scheme(mat2(1, 0, 0, 1), 1, 1);
    CHECK(!unit.warnings.empty());  // (0, 1) projects onto 0
    const auto fib = fibonacci_scheme();
    CHECK(fib.warnings.empty());
}
