#pragma once

/// @file harmonic.hpp
/// @brief Fourier analysis of piecewise fields: closed-form coefficients for
/// wavelets and hyperfans, circle-generator expansions over wavelets, and an
/// independent quadrature oracle based on per-piece antiderivatives.

#include <farey/wavelets.hpp>

#include <complex>
#include <map>

namespace farey {

using Complex = std::complex<double>;

/// Angle in [0, 2pi) of the circle image of x.
double angle_of(const ExtendedRational& x);

/// Scalar value of the field at the circle point with angle theta (the
/// coefficient of the counterclockwise unit vector field).
double scalar_at_angle(const PiecewiseField& f, double theta);

/// A truncated Fourier expansion sum c_n e^{i n theta} d/dtheta.
struct FourierSeries {
    std::map<int, Complex> coefficients;
    int nmax{0};
};

/// n-th Fourier coefficient of the scalar function of f, computed by exact
/// per-piece antiderivatives (each piece is a trigonometric polynomial).
Complex quadrature_oracle(const PiecewiseField& f, int n);

/// Closed-form Fourier coefficient of the normalized wavelet of A for
/// n^2 > 1 (the four-term expression over unit-modulus ratios divided by
/// pi i (n^3 - n)); throws for |n| <= 1.
Complex wavelet_fourier(const GroupElement& A, int n);

/// Closed-form Fourier coefficient of hyperfan(A), any n, from the boundary
/// circle points zeta_-, zeta_+ of the labeling edge.
Complex hyperfan_fourier(const GroupElement& A, int n);

/// Closed forms for |n| <= nmax collected into a series.
FourierSeries wavelet_series(const GroupElement& A, int nmax);

/// Coefficient of the normalized wavelet of the edge with the given ideal
/// endpoints in the expansion of e^{i n theta} d/dtheta over wavelets:
/// (i/4) { n (xi^n + eta^n) + ((eta + xi)/(eta - xi)) (xi^n - eta^n) }.
/// Symmetric in the two endpoints.
Complex witt_edge_coefficient(int n, const ExtendedRational& x, const ExtendedRational& y);

/// The constant, e^{i theta} and e^{-i theta} corrections of the expansion,
/// by the residue class of n mod 4.
std::array<Complex, 3> witt_low_modes(int n);

/// Value at angle theta of the expansion truncated to edges within
/// generation G; converges to e^{i n theta} as G grows.
Complex witt_partial_sum(int n, long G, double theta);

}  // namespace farey
