#pragma once

/// @file halfplane.hpp
/// @brief Decorated hyperbolic geometry in framed holographic coordinates:
/// lambda lengths, h-lengths, Moebius action, framing matrices,
/// stabilization, Ptolemy flips on triangulated polygons, and finite-depth
/// construction of a decorated tessellation from lambda lengths.

#include <farey/modular.hpp>

#include <optional>
#include <set>

namespace farey {

/// A framed holographic coordinate pair: center on the circle (as a point of
/// Rhat) and positive horocycle diameter (height coordinate when s = oo).
struct DecoratedPoint {
    ExtendedRational s;
    Rat delta{1};

    DecoratedPoint() = default;
    DecoratedPoint(ExtendedRational center, Rat diameter);
    bool operator==(const DecoratedPoint&) const = default;
};

/// An ordered triple of pairwise-distinct circle points, clockwise-oriented
/// like the standard frame (0/1, 1/0, 1/1).
struct Framing {
    ExtendedRational u, v, w;
    Framing(ExtendedRational u_, ExtendedRational v_, ExtendedRational w_);
};

/// A 2x2 exact-rational matrix of positive determinant, used projectively
/// (up to positive scale) as an element of PSL2(R) with rational entries.
struct Mat2Q {
    Rat a{1}, b{0}, c{0}, d{1};

    Mat2Q() = default;
    Mat2Q(Rat a_, Rat b_, Rat c_, Rat d_);
    explicit Mat2Q(const GroupElement& g);

    Rat det() const { return a * d - b * c; }
    Mat2Q operator*(const Mat2Q& o) const;
    Mat2Q inverse() const;  ///< adjugate (projective inverse)
    /// Projective equality: equal up to positive scale.
    bool proportional(const Mat2Q& o) const;
};

/// Exact square of the lambda length between two decorated points:
/// (s1-s2)^2/(d1 d2) for finite centers, d_oo/d when one center is oo.
Rat lambda_sq(const DecoratedPoint& p1, const DecoratedPoint& p2);

/// The lambda length itself when its square is a rational square.
std::optional<Rat> lambda_exact(const DecoratedPoint& p1, const DecoratedPoint& p2);

double lambda_numeric(const DecoratedPoint& p1, const DecoratedPoint& p2);

/// h-length opposite the edge of length li in a triangle with edges li,lj,lk:
/// li/(lj lk).
Rat h_length(const Rat& li, const Rat& lj, const Rat& lk);

/// The flipped diagonal of a quadrilateral with cyclic sides a,b,c,d and
/// diagonal e: f = (ac + bd)/e.
Rat ptolemy_flip(const Rat& a, const Rat& b, const Rat& c, const Rat& d, const Rat& e);

/// An ideally triangulated polygon: n boundary vertices 0..n-1 in cyclic
/// (counterclockwise) order, n-3 pairwise non-crossing diagonals, optional
/// oriented distinguished edge.
struct TriangulatedPolygon {
    int n{3};
    std::set<std::pair<int, int>> diagonals;  ///< stored with first < second
    std::optional<std::pair<int, int>> doe;   ///< oriented

    /// True if {i,j} is a boundary edge or diagonal.
    bool has_edge(int i, int j) const;
    bool operator==(const TriangulatedPolygon&) const = default;
};

/// Fan triangulation of the n-gon from vertex 0 (diagonals (0,2)..(0,n-2)).
TriangulatedPolygon fan_polygon(int n, std::optional<std::pair<int, int>> doe = std::nullopt);

/// Replaces an interior diagonal by the opposite diagonal of its
/// quadrilateral.  If the doe is the flipped edge it rotates counterclockwise
/// within the quadrilateral (so four doe-flips restore it).  Throws if the
/// edge is not an interior diagonal.
TriangulatedPolygon polygon_flip(const TriangulatedPolygon& P, std::pair<int, int> diagonal);

/// Moebius action on framed holographic coordinates for A = (a b; c d):
/// s -> (ds - b)/(-cs + a), delta -> delta * det/(a - cs)^2, with the limit
/// conventions: a - cs = 0 -> (oo, det/(c^2 delta)); s = oo, c != 0 ->
/// (-d/c, det/(c^2 delta)); s = oo, c = 0 -> (oo, d^2 delta/det).
DecoratedPoint mobius_on_coordinates(const DecoratedPoint& p, const Mat2Q& A);

/// The projective matrix whose right action sends (u,v,w) to (0/1,1/0,1/1).
Mat2Q framing_matrix(const Framing& F);

/// L_F composed with the projective inverse of L_Fbar.
Mat2Q transition(const Framing& F, const Framing& Fbar);

ExtendedRational act_right(const ExtendedRational& x, const Mat2Q& A);

/// Inserts the new point into the slot determined by its center and applies
/// transition(F, Fbar) to every coordinate; with Fbar = F this is pure
/// insertion and re-indexing.  Throws on duplicate centers.
std::vector<DecoratedPoint> stabilize(const std::vector<DecoratedPoint>& coords,
                                      const Framing& F, const DecoratedPoint& added,
                                      const Framing& Fbar);

/// Unordered Farey edge key (endpoints in circular order from 0/1).
struct EdgeKey {
    ExtendedRational lo, hi;
    EdgeKey(ExtendedRational x, ExtendedRational y);
    bool operator<(const EdgeKey& o) const;
    bool operator==(const EdgeKey&) const = default;
};

/// A decorated tessellation truncated at generation G: decorated points for
/// every Farey vertex of generation <= G and exact lambda-length squares for
/// every Farey edge within the truncation.
struct DecoratedTessellationTruncation {
    long G{0};
    std::map<ExtendedRational, DecoratedPoint> vertices;
    std::map<EdgeKey, Rat> lambda_sqs;

    /// Checks that stored lambda squares match the decorated points exactly.
    bool consistent() const;
    std::string to_json() const;
    static DecoratedTessellationTruncation from_json(const std::string& text);
};

/// All Farey edges with both endpoints of generation <= G.
std::vector<EdgeKey> farey_edges(long G);

/// Builds the decorated truncation realizing the given lambda-length squares:
/// 0/1 at (0, 1/lambda_sq(doe)), 1/0 at (oo, 1), then each mediant vertex is
/// solved from its two parent edges, the center strictly between its parents
/// in circular order.  Requires every needed square root to be rational
/// (guaranteed when all inputs are squares of rationals).
DecoratedTessellationTruncation build_tessellation(const std::map<EdgeKey, Rat>& lambda_sq_in,
                                                   long G);

/// Cross ratio ac/(bd) of the cyclically ordered quadrilateral sides around
/// an edge (the shear coordinate is its logarithm).
Rat cross_ratio_shear(const Rat& a, const Rat& b, const Rat& c, const Rat& d);

}  // namespace farey
