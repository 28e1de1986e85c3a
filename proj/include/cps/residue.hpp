#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "cps/rational.hpp"

namespace cps {

enum class ResidueKind { product, odometer };

// Scheme (R, H, {(n, n*)}) with compact internal group H truncated to a
// finite quotient: product of pairwise coprime residue rings, or the
// 2-adic odometer represented canonically by a single residue mod 2^J.
struct ResidueScheme {
    ResidueKind kind{ResidueKind::product};
    std::vector<long long> moduli;  // product: p^2 per prime; odometer: chain 2, 4, ..., 2^J
    std::vector<long long> primes;  // product kind only
    long long prime_bound{0};       // product kind only
    int depth{0};                   // odometer kind only (J)
    double lattice_density{1.0};

    long long odometer_modulus() const;  // 2^J
};

// H = prod_{p <= P} Z/p^2 Z.
ResidueScheme squarefree_scheme(long long prime_bound);

// Odometer truncated at depth J (internal group Z/2^J Z).
ResidueScheme period_doubling_scheme(int depth);

// Window in a residue internal space. Product kind: per-component
// forbidden residues (the allowed set is the complement, which is the
// smaller description for the squarefree window). Odometer kind: a
// disjoint union of residue classes (a_j mod 2*4^j) truncated at depth J;
// the remaining classes accumulate at the boundary point (-1)* and their
// mass is recorded as the truncation defect.
struct ResidueWindow {
    ResidueKind kind{ResidueKind::product};
    std::vector<std::vector<long long>> forbidden;            // product kind, per component
    std::vector<std::pair<long long, long long>> classes;     // odometer kind: (a_j, 2*4^j)

    double measure(const ResidueScheme& scheme) const;
    double truncation_defect() const;  // 0 for product kind
    bool contains(const ResidueScheme& scheme, long long n) const;
};

// W = prod_p (Z/p^2 Z minus {0}). Throws KindMismatch on an odometer scheme.
ResidueWindow squarefree_window(const ResidueScheme& scheme);

// Classes (4^j - 1 mod 2*4^j) for all j with 2*4^j <= 2^J. Throws
// KindMismatch on a product scheme.
ResidueWindow period_doubling_window(const ResidueScheme& scheme);

// Character of the internal group attached to a frequency of the Fourier
// module. frequency = k + sum of fractional parts, held exactly.
struct DualCharacterLabel {
    long long k{0};
    std::vector<std::pair<long long, long long>> fractional_parts;  // (ell_i, m_i), ell_i nonzero
    Rational frequency;
};

// All reduced fractions m/q in [0, 1) with q <= denominator_bound and q
// admissible: cubefree with prime factors <= P (squarefree scheme), or a
// power of 2 <= 2^J (odometer).
std::vector<DualCharacterLabel> dual_frequency_module(const ResidueScheme& scheme,
                                                      long long denominator_bound);

// Label for one frequency; throws LabelOutOfModule if the reduced
// denominator is not admissible for the scheme.
DualCharacterLabel label_for_frequency(const ResidueScheme& scheme, const Rational& frequency);

// Transform of the (truncated) window at the given character,
// (1/|H|) sum_{h in W} e^{-2 pi i x h}. At the trivial character this is
// exactly the window's Haar measure.
std::complex<double> window_fourier_transform(const ResidueScheme& scheme,
                                              const ResidueWindow& window,
                                              const DualCharacterLabel& label);

// Untruncated closed form of the window transform for the infinite
// internal group: squarefree (-1)^{omega(q)} (6/pi^2) prod_{p|q} 1/(p^2-1);
// odometer (-1)^r (2^{1-r}/3) e^{+2 pi i x} at x = m/2^r. Feeds the
// spectrum generators.
std::complex<double> limit_window_transform(const ResidueScheme& scheme, const Rational& frequency);

}  // namespace cps
