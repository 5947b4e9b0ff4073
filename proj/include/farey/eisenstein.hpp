#pragma once

/// @file eisenstein.hpp
/// @brief The weight-2 Eisenstein q-series and its modular correction, lifts
/// of modular forms to automorphic functions on the group, the Cayley-basis
/// action by finite differences, and the Casimir operator.

#include <farey/rational.hpp>

#include <array>
#include <complex>
#include <functional>
#include <vector>

namespace farey {

using Cx = std::complex<double>;

/// Exact integer coefficients a_0 .. a_N of a q-expansion.
struct QSeries {
    std::vector<Int> coefficients;
    int N{0};
};

/// 1 - 24 sum sigma(n) q^n truncated at q^N, exact coefficients.
QSeries e2_series(int N);

/// Series evaluation with a rigorous bound on the omitted tail.
struct SeriesEval {
    Cx value;
    double tail_bound;
};

/// The holomorphic quasi-modular series at z (Im z > 0), truncated at N.
/// Points with small imaginary part are first moved into the fundamental
/// domain by translations and inversions, using the exact transformation
/// law, so the tail bound stays tiny for every input.
SeriesEval e2_eval_bounded(Cx z, int N = 200);
Cx e2_eval(Cx z, int N = 200);

/// The weight-2 modular (non-holomorphic) correction: e2_eval(z) - 3/(pi Im z).
Cx e2_corrected(Cx z, int N = 200);

/// The weight-4 holomorphic series 1 + 240 sum sigma_3(n) q^n (comparison
/// fixture for the operator conventions), with the same reduction.
Cx e4_eval(Cx z, int N = 200);

/// Iwasawa coordinates on the group: x-translation, y-dilation, rotation
/// angle.  Requires y > 0.
struct GroupPoint {
    double x{0}, y{1}, theta{0};
};

/// The matrix (a b; c d), row major, of the Iwasawa product
/// (1 x; 0 1) diag(sqrt y, 1/sqrt y) (cos t, sin t; -sin t, cos t).
std::array<double, 4> iwasawa_matrix(const GroupPoint& g);

/// The weight-2k automorphic lift (ci + d)^{-2k} f(g * i) for a real matrix
/// g = (a b; c d) of determinant 1, acting by Moebius transformations.
Cx lift(const std::array<double, 4>& g, int k, const std::function<Cx(Cx)>& f);
Cx lift(const GroupPoint& g, int k, const std::function<Cx(Cx)>& f);

/// The lift as a function of Iwasawa coordinates (equals
/// y^k e^{2 i k theta} f(x + i y)).
std::function<Cx(GroupPoint)> lifted(int k, std::function<Cx(Cx)> f);

/// The lift of the corrected weight-2 series at truncation N.
std::function<Cx(GroupPoint)> lifted_e2(int N = 200);

enum class CayleyOp { H, E, F };

/// The Cayley-basis action on automorphic functions in Iwasawa coordinates,
///   H = -i d/dtheta,
///   E = 2 i e^{2 i theta} (y d/dzbar - 1/4 d/dtheta),
///   F = -2 i e^{-2 i theta} (y d/dzbar - 1/4 d/dtheta),
/// by second-order central differences with step h.  On a weight-2k lift,
/// H reproduces the weight: H phi = 2k phi.
Cx cayley_action(CayleyOp op, const std::function<Cx(GroupPoint)>& phi, const GroupPoint& g,
                 double h = 1e-4);

/// The Casimir operator y^2 (d^2/dx^2 + d^2/dy^2) - y d^2/(dx dtheta) by
/// central differences; annihilates the corrected weight-2 lift, and gives
/// k(k-1) times a holomorphic weight-2k lift.
Cx casimir(const std::function<Cx(GroupPoint)>& phi, const GroupPoint& g, double h = 1e-4);

}  // namespace farey
