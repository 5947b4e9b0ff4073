#pragma once

/// @file wavelets.hpp
/// @brief Distinguished elements of the piecewise-sl2 algebra: the
/// quadrant-deformation family, the mother wavelet and its conjugates,
/// hyperfans, the difference identity expressing sl2 in hyperfans, the
/// structure constants of basic brackets, fan partial sums, and expansion in
/// the oriented-edge hyperfan basis.

#include <farey/fields.hpp>
#include <farey/halfplane.hpp>

#include <array>
#include <map>

namespace farey {

/// The one-parameter piecewise-unimodular family with breakpoints at the
/// four generation-at-most-one circle points, one Moebius piece per quadrant
/// (counterclockwise from infinity).  The pieces meet once-continuously
/// differentiably, the family is multiplicative in s, and its derivative at
/// s = 1 is the mother wavelet.
struct LambdaFamily {
    Rat s;
    std::array<Mat2Q, 4> quadrant;  ///< pieces on quadrants I..IV

    /// Transport a decorated point by the piece owning its center (at a
    /// breakpoint the adjacent pieces agree to first order, so either works).
    DecoratedPoint apply(const DecoratedPoint& p) const;
};

/// Builds the family at parameter s > 0 and verifies the pieces glue C^1 at
/// all four breakpoints (value fixed, one-sided derivatives equal).
LambdaFamily lambda_family(const Rat& s);

/// The four-quadrant field with values h+2e, -h+2f, -h-2f, h-2e; vanishes at
/// each breakpoint and equals the s-derivative of lambda_family at s = 1.
PiecewiseField mother_wavelet();

/// The framing (0/1, 1/0, 1/1) used for all series normalizations.
Framing standard_framing();

/// Conjugate of the mother wavelet by A; invariant under A -> S*A.
PiecewiseField wavelet(const GroupElement& A);

/// wavelet(A) minus its global sl2 part with respect to F.
PiecewiseField normalized_wavelet(const GroupElement& A, const Framing& F);

/// The elementary hyperfan: value A^-1 e A = (cd d^2; -c^2 -cd) on the arc
/// to the left of the oriented edge of A, zero elsewhere.  Satisfies
/// conjugate(hyperfan(A), B) = hyperfan(A*B).
PiecewiseField hyperfan(const GroupElement& A);

/// hyperfan(I) + hyperfan(US) - hyperfan(S) - hyperfan(U^-1) - f: equals h on
/// the half-circle left of the doe and zero elsewhere.
PiecewiseField hyperfan_h_combination();

/// The second difference of hyperfans across the two sides of an edge
/// relation: psi_STA - 2 psi_SA + psi_ST^-1A - (psi_UA - 2 psi_A + psi_U^-1A).
/// Always a global field, equal to
///   {c(d+b)+a(d-b)} h + (d^2-b^2+2bd) e + (a^2-c^2-2ac) f.
/// Throws if the combination fails to be global (an implementation bug).
Sl2Element usa_deficiency(const GroupElement& A);

/// A finite rational combination of hyperfans plus a global sl2 part.
struct BasisExpansion {
    std::map<GroupElement, Rat> coefficients;
    Sl2Element global{};

    std::string to_json() const;
};

/// Sum of coefficient * hyperfan(label) plus the global part.
PiecewiseField materialize(const BasisExpansion& x);

/// (h, e, f) written as exact hyperfan combinations via the inverse of the
/// specialization matrix of usa_deficiency at I, T, U^-1.
std::array<BasisExpansion, 3> sl2_from_hyperfans();

/// The matrix of x -> A^-1 x A on sl2 in coordinates (e, f, h): columns are
/// the images of e, f, h.  Satisfies M(A*B) = M(B)*M(A) and
/// M(A)^-1 = M(A^-1).
std::array<std::array<Rat, 3>, 3> adjoint_matrix(const GroupElement& A);

/// The bracket [hyperfan(I), hyperfan(A)] as an explicit finite combination,
/// classified by the circular position of the edge of A.
struct BracketStructure {
    /// 0: c = 0 (bracket vanishes); 1..4: the four edge-position cases
    /// (bottom right-to-left, bottom left-to-right, top left-to-right,
    /// top right-to-left).
    int case_tag{0};
    std::vector<std::pair<GroupElement, Rat>> hyperfan_terms;
    std::vector<std::pair<Sl2Element, Rat>> global_terms;

    PiecewiseField materialized() const;
};

BracketStructure bracket_structure(const GroupElement& A);

/// Partial sum over n = 0..N of normalized_wavelet(U^n * A) (direction +1)
/// or of normalized_wavelet(U^-n * A) (direction -1), standard framing.
PiecewiseField fan_partial_sum(const GroupElement& A, int N, int direction = +1);

/// Same with weight n (direction +1) or -n (direction -1): the hyperfan
/// series truncation.
PiecewiseField hyperfan_partial_sum(const GroupElement& A, int N, int direction = +1);

/// Writes f exactly as a combination of hyperfans over oriented edges (doe
/// from 0/1 to 1/0, all other edges from lower to higher generation) plus a
/// global part, by an exact linear solve over the edges with endpoints among
/// the breakpoints of f.  Throws std::runtime_error if f is not in that span.
BasisExpansion expand_in_basis(const PiecewiseField& f);

}  // namespace farey
