#pragma once

/// @file modular.hpp
/// @brief Exact PSL2(Z) arithmetic: extended rationals on the circle, group
/// elements and words, Farey generation and enumeration, circular order,
/// commutant cosets, and the enumeration-to-tessellation construction.

#include <farey/rational.hpp>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace farey {

/// A point of the extended rationals Qhat = Q u {oo}, stored as a coprime
/// pair p/q with q >= 0; infinity is 1/0.  The representation is unique.
struct ExtendedRational {
    Int p{0};
    Int q{1};

    ExtendedRational() = default;
    ExtendedRational(Int pp, Int qq);

    bool is_infinity() const { return q == 0; }
    Rat value() const;  ///< throws on infinity

    bool operator==(const ExtendedRational&) const = default;
    /// Linear order on Rhat: finite values by size, infinity largest.
    bool operator<(const ExtendedRational& o) const;

    std::string str() const { return p.str() + "/" + q.str(); }
};

ExtendedRational make_xrat(long p, long q);
ExtendedRational parse_xrat(const std::string& s);

/// Real and imaginary parts of the circle image ((p^2-q^2) - 2pq i)/(p^2+q^2)
/// of p/q, as exact rationals.
std::pair<Rat, Rat> circle_image(const ExtendedRational& x);

/// A PSL2(Z) element as a sign-normalized integer matrix (a b; c d) with
/// ad - bc = 1.  Normal form: c > 0, or c = 0 and a > 0.
struct GroupElement {
    Int a{1}, b{0}, c{0}, d{1};

    GroupElement() = default;
    GroupElement(Int a_, Int b_, Int c_, Int d_);

    GroupElement operator*(const GroupElement& o) const;
    GroupElement inverse() const;
    bool operator==(const GroupElement&) const = default;
    bool operator<(const GroupElement& o) const;  ///< for use as map key

    std::string str() const;
};

/// Generators: S = (0 -1; 1 0), T = (1 1; 0 1), U = (1 0; 1 1),
/// R = T^-1 U = (0 -1; 1 1).
GroupElement gen_S();
GroupElement gen_T();
GroupElement gen_U();
GroupElement gen_R();
GroupElement identity();

/// Letters of group words.
enum class Letter { R, R2, S, T, Tinv, U, Uinv };

/// A word in the generators; evaluates to a GroupElement.
struct GroupWord {
    std::vector<Letter> letters;

    std::string str() const;  ///< e.g. "T.U-1.S"
};

GroupWord parse_word(const std::string& s);

/// Right action of A = (a b; c d) on x: p/q -> (pd - qb)/(qa - pc).
/// Anti-homomorphism: act_right(act_right(x,A),B) = act_right(x, A*B).
ExtendedRational act_right(const ExtendedRational& x, const GroupElement& A);

/// Endpoints (-b/a, -d/c) of the oriented edge labeled by A; equals
/// (act_right(0/1, A), act_right(1/0, A)).
std::pair<ExtendedRational, ExtendedRational> edge_endpoints(const GroupElement& A);

/// The sign-normalized label whose oriented edge runs from x to y; requires
/// |p1 q2 - p2 q1| = 1.
GroupElement element_from_edge(const ExtendedRational& x, const ExtendedRational& y);

GroupElement word_to_matrix(const GroupWord& w);

/// Inverse of word_to_matrix up to the relations S^2 = 1 = R^3: a word over
/// {U, T, T^-1, U^-1, S} found by Euclidean division on the matrix columns;
/// quotient ties are resolved toward non-negative quotients.
GroupWord matrix_to_word(const GroupElement& A);

/// Class of A in the abelianization Z/6: the exponent sum of U and of T^-1
/// (i.e. #U - #U^-1 + #T^-1 - #T) of any word for A, mod 6.  A homomorphism;
/// its kernel is the commutator subgroup.
int commutant_coset(const GroupElement& A);

/// Farey generation: 0 for 0/1 and 1/0, otherwise the depth of x in the
/// mediant recursion seeded by the generation-zero pair.
long generation(const ExtendedRational& x);

/// The bijection Z>=0 -> Qhat ordered by generation, then counterclockwise
/// on the circle starting from 0/1.
ExtendedRational farey_enumeration(long n);

/// All Farey points of generation <= G in counterclockwise circular order
/// starting at 0/1.
std::vector<ExtendedRational> farey_circle_order(long G);

/// Strict total order by circular position counterclockwise from 0/1:
/// 0/1, then positive rationals increasing, then infinity, then negatives.
bool circle_less(const ExtendedRational& x, const ExtendedRational& y);

/// True iff the circle images of a, b, c occur in counterclockwise order
/// (exact integer arithmetic; counterclockwise = increasing on Rhat).
/// Rejects repeated arguments.
bool ccw(const ExtendedRational& a, const ExtendedRational& b, const ExtendedRational& c);

/// A point on the circle used as the target of an enumeration: either an
/// extended rational (via the circle correspondence) or an exact number of
/// turns t in [0,1).  All points of one enumeration must share a kind.
struct CirclePoint {
    enum class Kind { rational, turn } kind{Kind::rational};
    ExtendedRational r{};  ///< when kind == rational
    Rat t{};               ///< when kind == turn

    static CirclePoint from_rational(ExtendedRational x);
    static CirclePoint from_turn(Rat turns);
    bool operator==(const CirclePoint&) const = default;
    bool operator<(const CirclePoint& o) const;  ///< position ccw from 0/1
    std::string str() const;
};

/// True iff a, b, c occur counterclockwise on the circle.
bool ccw(const CirclePoint& a, const CirclePoint& b, const CirclePoint& c);

/// The correspondence built from an enumeration of circle points: Farey
/// points of generation <= G are matched to listed points so that each new
/// Farey point goes to the least-index listed point inside its gap.
struct EnumerationCorrespondence {
    long G{0};
    std::map<ExtendedRational, CirclePoint> vertex_map;
    /// Edge set: pairs of image points corresponding to the Farey edges with
    /// both endpoints of generation <= G.
    std::vector<std::pair<CirclePoint, CirclePoint>> edges;
};

EnumerationCorrespondence tessellation_from_enumeration(
    const std::vector<CirclePoint>& points, long G);

/// A truncated tessellation with distinguished oriented edge, abstractly: its
/// vertices in circular order plus, for each oriented edge and side, the apex
/// of the adjacent triangle.
struct TruncatedTessellation {
    std::vector<CirclePoint> vertices;                        ///< ccw order
    std::vector<std::pair<CirclePoint, CirclePoint>> edges;   ///< unoriented
    std::pair<CirclePoint, CirclePoint> doe;                  ///< oriented

    /// Apex of the triangle adjacent to oriented edge (u,v) on its left
    /// (counterclockwise) side, if present in the truncation.
    std::optional<CirclePoint> apex_left(const CirclePoint& u, const CirclePoint& v) const;

  private:
    mutable std::map<CirclePoint, std::vector<CirclePoint>> adjacency_;  // lazy
    void ensure_adjacency() const;
};

/// The standard Farey tessellation truncated at generation G, with doe e_A.
TruncatedTessellation farey_tessellation(long G, const GroupElement& A = identity());

/// Tessellation induced by an enumeration correspondence (doe = image of the
/// standard doe).
TruncatedTessellation tessellation_of_correspondence(const EnumerationCorrespondence& c);

/// The characteristic map: sends a Farey point x of generation <= G to the
/// vertex of tess matched by recursive triangle-matching from the doe.
/// Throws if the recursion runs out of triangles.
CirclePoint characteristic_map(const TruncatedTessellation& tess, const ExtendedRational& x);

}  // namespace farey
