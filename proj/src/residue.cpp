#include "cps/residue.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "cps/errors.hpp"

namespace cps {

namespace {

std::vector<long long> primes_up_to(long long n) {
    std::vector<bool> is(static_cast<std::size_t>(n + 1), true);
    std::vector<long long> out;
    for (long long i = 2; i <= n; ++i) {
        if (!is[static_cast<std::size_t>(i)]) continue;
        out.push_back(i);
        for (long long j = i * i; j <= n; j += i) is[static_cast<std::size_t>(j)] = false;
    }
    return out;
}

long long mod_inverse(long long a, long long m) {
    long long t = 0, new_t = 1;
    long long r = m, new_r = ((a % m) + m) % m;
    while (new_r != 0) {
        const long long q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    return ((t % m) + m) % m;
}

std::complex<double> unit_phase(double turns) {
    const double arg = -2.0 * std::numbers::pi * turns;
    return {std::cos(arg), std::sin(arg)};
}

bool is_power_of_two(long long v) { return v > 0 && (v & (v - 1)) == 0; }

}  // namespace

long long ResidueScheme::odometer_modulus() const {
    if (kind != ResidueKind::odometer) throw KindMismatch("odometer modulus of a product scheme");
    return 1LL << depth;
}

ResidueScheme squarefree_scheme(long long prime_bound) {
    if (prime_bound < 2) throw Error("squarefree scheme needs a prime bound >= 2");
    ResidueScheme s;
    s.kind = ResidueKind::product;
    s.prime_bound = prime_bound;
    s.primes = primes_up_to(prime_bound);
    for (long long p : s.primes) s.moduli.push_back(p * p);
    return s;
}

ResidueScheme period_doubling_scheme(int depth) {
    if (depth < 2) throw Error("odometer truncation needs depth >= 2");
    ResidueScheme s;
    s.kind = ResidueKind::odometer;
    s.depth = depth;
    for (int j = 1; j <= depth; ++j) s.moduli.push_back(1LL << j);
    return s;
}

double ResidueWindow::measure(const ResidueScheme& scheme) const {
    if (kind != scheme.kind) throw KindMismatch("window and scheme kinds differ");
    if (kind == ResidueKind::product) {
        double m = 1.0;
        for (std::size_t i = 0; i < scheme.moduli.size(); ++i) {
            const double mod = static_cast<double>(scheme.moduli[i]);
            m *= (mod - static_cast<double>(forbidden[i].size())) / mod;
        }
        return m;
    }
    double m = 0.0;
    for (const auto& [a, mod] : classes) m += 1.0 / static_cast<double>(mod);
    return m;
}

double ResidueWindow::truncation_defect() const {
    if (kind == ResidueKind::product) return 0.0;
    double m = 0.0;
    for (const auto& [a, mod] : classes) m += 1.0 / static_cast<double>(mod);
    return 2.0 / 3.0 - m;
}

bool ResidueWindow::contains(const ResidueScheme& scheme, long long n) const {
    if (kind != scheme.kind) throw KindMismatch("window and scheme kinds differ");
    if (kind == ResidueKind::product) {
        for (std::size_t i = 0; i < scheme.moduli.size(); ++i) {
            const long long m = scheme.moduli[i];
            const long long r = ((n % m) + m) % m;
            if (std::find(forbidden[i].begin(), forbidden[i].end(), r) != forbidden[i].end())
                return false;
        }
        return true;
    }
    for (const auto& [a, mod] : classes) {
        if (((n % mod) + mod) % mod == a) return true;
    }
    return false;
}

ResidueWindow squarefree_window(const ResidueScheme& scheme) {
    if (scheme.kind != ResidueKind::product)
        throw KindMismatch("squarefree window needs a product scheme");
    ResidueWindow w;
    w.kind = ResidueKind::product;
    w.forbidden.assign(scheme.moduli.size(), {0});
    return w;
}

ResidueWindow period_doubling_window(const ResidueScheme& scheme) {
    if (scheme.kind != ResidueKind::odometer)
        throw KindMismatch("period doubling window needs an odometer scheme");
    ResidueWindow w;
    w.kind = ResidueKind::odometer;
    const long long order = scheme.odometer_modulus();
    for (int j = 0;; ++j) {
        const long long mod = 2LL << (2 * j);
        if (mod > order) break;
        w.classes.emplace_back((1LL << (2 * j)) - 1, mod);
    }
    return w;
}

namespace {

// q as a cubefree product of primes within the scheme's bound; empty on
// violation.
struct Factorization {
    std::vector<std::pair<long long, int>> factors;  // (p, exponent in {1, 2})
    bool ok{false};
};

Factorization admissible_denominator(const ResidueScheme& scheme, long long q) {
    Factorization f;
    long long rest = q;
    for (long long p : scheme.primes) {
        if (rest == 1) break;
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        if (e > 2) return f;
        if (e > 0) f.factors.push_back({p, e});
    }
    f.ok = rest == 1;
    return f;
}

DualCharacterLabel product_label(const ResidueScheme& scheme, const Rational& x,
                                 const Factorization& f) {
    DualCharacterLabel label;
    label.frequency = x;
    const long long q = x.den;
    long long m = ((x.num % q) + q) % q;
    label.k = (x.num - m) / q;
    for (const auto& [p, e] : f.factors) {
        const long long pe = e == 1 ? p : p * p;
        const long long rest = q / pe;
        const long long a = (m % pe) * mod_inverse(rest % pe, pe) % pe;
        const long long ell = a * (e == 1 ? p : 1);  // component character mod p^2
        label.fractional_parts.push_back({ell, p * p});
    }
    return label;
}

}  // namespace

std::vector<DualCharacterLabel> dual_frequency_module(const ResidueScheme& scheme,
                                                      long long denominator_bound) {
    std::vector<DualCharacterLabel> out;
    if (scheme.kind == ResidueKind::product) {
        for (long long q = 1; q <= denominator_bound; ++q) {
            const auto f = admissible_denominator(scheme, q);
            if (!f.ok) continue;
            for (long long m = 0; m < q; ++m) {
                if (std::gcd(m, q) != 1 && !(m == 0 && q == 1)) continue;
                out.push_back(product_label(scheme, Rational(m, q), f));
            }
        }
    } else {
        const long long order = scheme.odometer_modulus();
        for (long long q = 1; q <= std::min(denominator_bound, order); q *= 2) {
            for (long long m = 0; m < q; ++m) {
                if (q > 1 && m % 2 == 0) continue;
                DualCharacterLabel label;
                label.frequency = Rational(m, q);
                if (m != 0) label.fractional_parts.push_back({m, q});
                out.push_back(label);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const DualCharacterLabel& a, const DualCharacterLabel& b) {
        return a.frequency < b.frequency;
    });
    return out;
}

DualCharacterLabel label_for_frequency(const ResidueScheme& scheme, const Rational& frequency) {
    if (scheme.kind == ResidueKind::product) {
        const auto f = admissible_denominator(scheme, frequency.den);
        if (!f.ok)
            throw LabelOutOfModule("denominator " + std::to_string(frequency.den) +
                                   " is not cubefree over the scheme's primes");
        return product_label(scheme, frequency, f);
    }
    if (!is_power_of_two(frequency.den) || frequency.den > scheme.odometer_modulus())
        throw LabelOutOfModule("denominator " + std::to_string(frequency.den) +
                               " is not a dyadic power within the truncation");
    DualCharacterLabel label;
    label.frequency = frequency;
    const long long q = frequency.den;
    const long long m = ((frequency.num % q) + q) % q;
    label.k = (frequency.num - m) / q;
    if (m != 0) label.fractional_parts.push_back({m, q});
    return label;
}

std::complex<double> window_fourier_transform(const ResidueScheme& scheme,
                                              const ResidueWindow& window,
                                              const DualCharacterLabel& label) {
    if (scheme.kind != window.kind) throw KindMismatch("window and scheme kinds differ");
    if (scheme.kind == ResidueKind::product) {
        // component factor: (1/m) sum over the allowed residues; with a
        // nontrivial component character the full-ring sum vanishes, so
        // the factor is minus the forbidden-residue sum
        std::complex<double> t{1.0, 0.0};
        for (std::size_t i = 0; i < scheme.moduli.size(); ++i) {
            const long long mod = scheme.moduli[i];
            long long ell = 0;
            for (const auto& [l, m] : label.fractional_parts)
                if (m == mod) ell = l;
            if (ell == 0) {
                t *= (static_cast<double>(mod) - static_cast<double>(window.forbidden[i].size())) /
                     static_cast<double>(mod);
                continue;
            }
            std::complex<double> forbidden_sum{0.0, 0.0};
            for (long long h : window.forbidden[i])
                forbidden_sum += unit_phase(static_cast<double>(ell) * static_cast<double>(h) /
                                            static_cast<double>(mod));
            t *= -forbidden_sum / static_cast<double>(mod);
        }
        return t;
    }

    // class (a mod M) contributes (1/M) e^{-2 pi i x a} when the character
    // is constant on the class, i.e. when den(x) divides M, and 0 otherwise
    const double x = label.frequency.value();
    const long long q = label.frequency.den;
    std::complex<double> t{0.0, 0.0};
    for (const auto& [a, mod] : window.classes) {
        if (mod % q != 0) continue;
        t += unit_phase(x * static_cast<double>(a)) / static_cast<double>(mod);
    }
    return t;
}

std::complex<double> limit_window_transform(const ResidueScheme& scheme,
                                            const Rational& frequency) {
    if (scheme.kind == ResidueKind::product) {
        const auto f = admissible_denominator(scheme, frequency.den);
        if (!f.ok)
            throw LabelOutOfModule("denominator " + std::to_string(frequency.den) +
                                   " is not cubefree over the scheme's primes");
        double value = 6.0 / (std::numbers::pi * std::numbers::pi);
        for (const auto& [p, e] : f.factors) {
            value /= -static_cast<double>(p * p - 1);
            (void)e;
        }
        return {value, 0.0};
    }

    if (!is_power_of_two(frequency.den) || frequency.den > scheme.odometer_modulus())
        throw LabelOutOfModule("denominator " + std::to_string(frequency.den) +
                               " is not a dyadic power within the truncation");
    int r = 0;
    for (long long v = frequency.den; v > 1; v /= 2) ++r;
    const double magnitude = (r % 2 == 0 ? 1.0 : -1.0) * std::pow(2.0, 1 - r) / 3.0;
    return magnitude * unit_phase(-frequency.value());
}

}  // namespace cps
