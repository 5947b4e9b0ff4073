#pragma once

/// @file forms.hpp
/// @brief Three 2-forms on the piecewise-sl2 algebra and its lambda-length
/// coordinates: the breakpoint cocycle gamma, the triangle-sum form omega on
/// edge tangents, and the numeric Fourier-mode pairing kappa_a; plus the
/// report asserting their proportionality.

#include <farey/harmonic.hpp>

namespace farey {

/// A finite-support perturbation of log lambda-length coordinates.
using EdgeTangent = std::map<EdgeKey, Rat>;

/// gamma(f, g) = 1/2 sum over breakpoints x of g of
/// tr{(f(x+) + f(x-)) (g(x+) - g(x-))}, exact.  Bilinear and antisymmetric.
Rat la_cocycle(const PiecewiseField& f, const PiecewiseField& g);

/// omega(t1, t2) = -2 sum over tessellation triangles with apex generation in
/// [1, G] of the cyclic wedge sum of the three clockwise-ordered edges,
/// evaluated at the identity decoration (all lambda = 1).  Antisymmetric.
Rat wp_form(const EdgeTangent& t1, const EdgeTangent& t2, long G);

/// Mode pairing sum a (m^3 - m) c_m(f) c_{-m}(g) over common modes of two
/// coefficient maps.
Complex kk_pairing(const std::map<int, Complex>& cf, const std::map<int, Complex>& cg,
                   const Complex& a);

struct KKResult {
    Complex value;
    double tail_bound;  ///< estimate of the omitted |m| > M mass
};

/// Truncation of the pairing at 2 <= |m| <= M with oracle Fourier
/// coefficients; the terms decay cubically for once-differentiable fields.
KKResult kk_form(const PiecewiseField& f, const PiecewiseField& g, const Complex& a, int M);

/// One adjacent-edge pair with its exact gamma and omega values.
struct RatioEntry {
    EdgeKey e1, e2;
    Rat gamma, omega;
};

/// gamma and omega on matched normalized-wavelet / edge-basis pairs for every
/// adjacent (triangle-sharing) edge pair within generation G.
struct RatioReport {
    std::vector<RatioEntry> entries;
    Rat ratio;       ///< the common gamma/omega value
    bool constant;   ///< true iff the ratio is the same on every pair
    std::string to_json() const;
};

RatioReport ratio_report(long G);

}  // namespace farey
