#include <cmath>
#include <complex>
#include <numbers>
#include <set>
#include <vector>

#include "cps/errors.hpp"
#include "cps/residue.hpp"
#include "doctest.h"

using namespace cps;

namespace {

std::vector<long long> sieve_primes(long long n) {
    std::vector<bool> is(n + 1, true);
    if (n >= 0) is[0] = false;
    if (n >= 1) is[1] = false;
    for (long long i = 2; i * i <= n; ++i)
        if (is[i])
            for (long long j = i * i; j <= n; j += i) is[j] = false;
    std::vector<long long> out;
    for (long long i = 2; i <= n; ++i)
        if (is[i]) out.push_back(i);
    return out;
}

bool squarefree_by_trial_division(long long n) {
    for (long long d = 2; d * d <= n; ++d) {
        if (n % (d * d) == 0) return false;
    }
    return n != 0;
}

// Direct finite-group transform (1/2^J) sum_{h in W} e^{-2 pi i x h}.
std::complex<double> direct_odometer_transform(const ResidueScheme& s, const ResidueWindow& w,
                                               double x) {
    const long long order = s.odometer_modulus();
    std::complex<double> acc{0.0, 0.0};
    for (long long h = 0; h < order; ++h) {
        if (!w.contains(s, h)) continue;
        const double arg = -2.0 * std::numbers::pi * x * static_cast<double>(h);
        acc += std::complex<double>(std::cos(arg), std::sin(arg));
    }
    return acc / static_cast<double>(order);
}

}  // namespace

TEST_CASE("squarefree scheme moduli are prime squares") {
    const auto s2 = squarefree_scheme(2);
    CHECK(s2.moduli == std::vector<long long>{4});

    const auto s10 = squarefree_scheme(10);
    std::vector<long long> expected;
    for (long long p : sieve_primes(10)) expected.push_back(p * p);
    CHECK(s10.moduli == expected);
    CHECK(s10.moduli == std::vector<long long>{4, 9, 25, 49});
    CHECK(s10.lattice_density == doctest::Approx(1.0));

    CHECK_THROWS_AS(squarefree_scheme(1), Error);
}

TEST_CASE("squarefree window measure and tail bound") {
    const auto s2 = squarefree_scheme(2);
    CHECK(squarefree_window(s2).measure(s2) == doctest::Approx(0.75).epsilon(1e-15));

    const double zeta2_inv = 6.0 / (std::numbers::pi * std::numbers::pi);

    // tail sum of 1/p^2 over 100 < p <= 1e6 by direct summation
    double tail = 0.0;
    for (long long p : sieve_primes(1000000))
        if (p > 100) tail += 1.0 / (static_cast<double>(p) * static_cast<double>(p));

    const auto s100 = squarefree_scheme(100);
    const double m100 = squarefree_window(s100).measure(s100);
    CHECK(m100 >= zeta2_inv);
    CHECK(m100 <= zeta2_inv * std::exp(2.0 * tail));

    // monotone decreasing in the prime bound
    double prev = 1.0;
    for (long long P : {2, 3, 5, 10, 50, 100}) {
        const auto s = squarefree_scheme(P);
        const double m = squarefree_window(s).measure(s);
        CHECK(m < prev);
        prev = m;
    }
}

TEST_CASE("squarefree membership matches trial division on small integers") {
    const auto s = squarefree_scheme(100);
    const auto w = squarefree_window(s);
    CHECK(!w.contains(s, 12));  // 4 | 12
    for (long long n = 1; n <= 1000; ++n) {
        CHECK(w.contains(s, n) == squarefree_by_trial_division(n));
    }
}

TEST_CASE("sieve vs oracle mismatches only at large prime squares") {
    const long long N = 100000;
    const auto s = squarefree_scheme(100);
    const auto w = squarefree_window(s);

    const auto primes = sieve_primes(317);
    long long mismatches = 0;
    for (long long n = 1; n <= N; ++n) {
        const bool truncated = w.contains(s, n);
        const bool truth = squarefree_by_trial_division(n);
        if (truncated == truth) continue;
        ++mismatches;
        CHECK(truncated);  // the truncated window can only over-accept
        bool explained = false;
        for (long long p : primes)
            if (p > 100 && n % (p * p) == 0) explained = true;
        CHECK(explained);
    }
    double tail = 0.0;
    for (long long p : primes)
        if (p > 100) tail += 1.0 / (static_cast<double>(p) * static_cast<double>(p));
    CHECK(mismatches > 0);
    CHECK(static_cast<double>(mismatches) <= static_cast<double>(N) * tail + 66.0);
}

TEST_CASE("period doubling scheme basics") {
    const auto s = period_doubling_scheme(4);
    CHECK(s.kind == ResidueKind::odometer);
    CHECK(s.odometer_modulus() == 16);
    CHECK(s.moduli == std::vector<long long>{2, 4, 8, 16});
    CHECK_THROWS_AS(period_doubling_scheme(1), Error);
}

TEST_CASE("period doubling window classes, measure, disjointness") {
    const auto s5 = period_doubling_scheme(5);
    const auto w5 = period_doubling_window(s5);
    const std::vector<std::pair<long long, long long>> expected{{0, 2}, {3, 8}, {15, 32}};
    CHECK(w5.classes == expected);
    CHECK(w5.measure(s5) == doctest::Approx(0.65625).epsilon(1e-15));
    CHECK(w5.measure(s5) + w5.truncation_defect() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    // exhaustive disjointness over the 32 residues
    for (long long h = 0; h < 32; ++h) {
        int hits = 0;
        for (const auto& [a, mod] : w5.classes)
            if (h % mod == a) ++hits;
        CHECK(hits <= 1);
    }

    // boundary residues -1 mod 2^J belong to no truncated class
    const auto s10 = period_doubling_scheme(10);
    const auto w10 = period_doubling_window(s10);
    CHECK(!w10.contains(s10, 1023));
    CHECK(!w10.contains(s10, 2 * 1024 - 1));
}

TEST_CASE("kind mismatches are rejected") {
    CHECK_THROWS_AS(squarefree_window(period_doubling_scheme(5)), KindMismatch);
    CHECK_THROWS_AS(period_doubling_window(squarefree_scheme(10)), KindMismatch);
}

TEST_CASE("dual frequency module admissible denominators") {
    const auto sf = squarefree_scheme(100);
    {
        std::set<long long> dens;
        for (const auto& l : dual_frequency_module(sf, 4)) dens.insert(l.frequency.den);
        CHECK(dens == std::set<long long>{1, 2, 3, 4});
    }
    {
        std::set<long long> dens;
        for (const auto& l : dual_frequency_module(sf, 9)) dens.insert(l.frequency.den);
        CHECK(dens.count(9) == 1);  // 9 = 3^2 cubefree
        CHECK(dens.count(8) == 0);  // 8 = 2^3 not cubefree
    }
    {
        const auto od = period_doubling_scheme(10);
        std::vector<Rational> freqs;
        for (const auto& l : dual_frequency_module(od, 4)) freqs.push_back(l.frequency);
        const std::vector<Rational> expected{{0, 1}, {1, 4}, {1, 2}, {3, 4}};
        CHECK(freqs == expected);
    }
    {
        // prime factors above the prime bound are not representable
        const auto tiny = squarefree_scheme(3);
        std::set<long long> dens;
        for (const auto& l : dual_frequency_module(tiny, 36)) dens.insert(l.frequency.den);
        CHECK(dens.count(5) == 0);
        CHECK(dens.count(35) == 0);
        CHECK(dens.count(36) == 1);  // 4 * 9
    }
}

TEST_CASE("label_for_frequency rejects labels outside the module") {
    const auto sf = squarefree_scheme(100);
    CHECK_THROWS_AS(label_for_frequency(sf, Rational(1, 8)), LabelOutOfModule);
    CHECK_THROWS_AS(label_for_frequency(squarefree_scheme(3), Rational(1, 25)), LabelOutOfModule);
    const auto od = period_doubling_scheme(10);
    CHECK_THROWS_AS(label_for_frequency(od, Rational(1, 3)), LabelOutOfModule);
    CHECK_THROWS_AS(label_for_frequency(od, Rational(1, 2048)), LabelOutOfModule);
    CHECK_NOTHROW(label_for_frequency(od, Rational(1, 1024)));
}

TEST_CASE("window transform at the trivial character is the measure") {
    const auto sf = squarefree_scheme(50);
    const auto wsf = squarefree_window(sf);
    const auto l0 = label_for_frequency(sf, Rational(0, 1));
    CHECK(window_fourier_transform(sf, wsf, l0).real() ==
          doctest::Approx(wsf.measure(sf)).epsilon(1e-15));
    CHECK(window_fourier_transform(sf, wsf, l0).imag() == 0.0);

    const auto od = period_doubling_scheme(12);
    const auto wod = period_doubling_window(od);
    const auto l0d = label_for_frequency(od, Rational(0, 1));
    CHECK(window_fourier_transform(od, wod, l0d).real() ==
          doctest::Approx(wod.measure(od)).epsilon(1e-15));
}

TEST_CASE("squarefree window transform closed form") {
    const double zeta2_inv = 6.0 / (std::numbers::pi * std::numbers::pi);
    const auto s = squarefree_scheme(100);
    const auto w = squarefree_window(s);

    // trivial character approaches 1/zeta(2) from above as P grows
    CHECK(w.measure(s) == doctest::Approx(zeta2_inv).epsilon(3e-3));

    // truncated product: for x = 1/4 the p=2 component contributes -1/4
    const auto l = label_for_frequency(s, Rational(1, 4));
    double expected = -0.25;
    for (long long p : sieve_primes(100))
        if (p != 2) expected *= 1.0 - 1.0 / (static_cast<double>(p) * static_cast<double>(p));
    const auto t = window_fourier_transform(s, w, l);
    CHECK(t.real() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(t.imag()) < 1e-15);

    // untruncated limit: (-1)^omega(q) (6/pi^2) / prod_{p|q} (p^2 - 1)
    const auto lim = limit_window_transform(s, Rational(1, 4));
    CHECK(lim.real() == doctest::Approx(-zeta2_inv / 3.0).epsilon(1e-14));
    const auto lim36 = limit_window_transform(s, Rational(1, 36));
    CHECK(lim36.real() == doctest::Approx(zeta2_inv / (3.0 * 8.0)).epsilon(1e-14));
}

TEST_CASE("odometer window transform closed form") {
    const auto s = period_doubling_scheme(20);
    const auto w = period_doubling_window(s);

    // full closed form at x = 0 and x = 1/2
    CHECK(limit_window_transform(s, Rational(0, 1)).real() ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    const auto half = limit_window_transform(s, Rational(1, 2));
    CHECK(half.real() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(std::abs(half.imag()) < 1e-14);

    // truncated transform differs from the limit by at most the defect
    const auto l0 = label_for_frequency(s, Rational(0, 1));
    CHECK(std::abs(window_fourier_transform(s, w, l0) -
                   limit_window_transform(s, Rational(0, 1))) <= w.truncation_defect() + 1e-15);
}

TEST_CASE("odometer transform equals the direct finite-group sum") {
    for (int J : {6, 8, 10}) {
        const auto s = period_doubling_scheme(J);
        const auto w = period_doubling_window(s);
        for (int r = 0; r <= std::min(8, J - 2); ++r) {
            const long long q = 1LL << r;
            for (long long m = (r == 0 ? 0 : 1); m < q; m += (r == 0 ? 1 : 2)) {
                const Rational x(m, q);
                const auto label = label_for_frequency(s, x);
                const auto closed = window_fourier_transform(s, w, label);
                const auto direct = direct_odometer_transform(s, w, x.value());
                CHECK(std::abs(closed - direct) < 1e-10);
                if (r == 0 && m == 0) break;
            }
        }
    }
}

TEST_CASE("transform magnitude never exceeds the window measure") {
    const auto sf = squarefree_scheme(30);
    const auto wsf = squarefree_window(sf);
    for (const auto& l : dual_frequency_module(sf, 20)) {
        CHECK(std::abs(window_fourier_transform(sf, wsf, l)) <= wsf.measure(sf) + 1e-12);
    }
    const auto od = period_doubling_scheme(10);
    const auto wod = period_doubling_window(od);
    for (const auto& l : dual_frequency_module(od, 64)) {
        CHECK(std::abs(window_fourier_transform(od, wod, l)) <= wod.measure(od) + 1e-12);
    }
}
