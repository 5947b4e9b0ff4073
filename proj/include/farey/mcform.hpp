#pragma once

/// @file mcform.hpp
/// @brief The edge-indexed 1-form assigning to each lambda-length deformation
/// its normalized wavelet, the earthquake-log construction of wavelets for
/// edges of a flipped (non-Farey) tessellation, and the exact arc-by-arc
/// verification that the 1-form is invariant under a flip of the doe at the
/// identity decoration.

#include <farey/forms.hpp>
#include <farey/wavelets.hpp>

namespace farey {

/// The traceless matrix with eigenvalue +1 along (p1, q1) and -1 along
/// (p2, q2): the logarithm of the primitive hyperbolic with oriented axis
/// u -> v.  Reversing the orientation negates it.
Sl2Element hyperbolic_log(const ExtendedRational& u, const ExtendedRational& v);

/// The wavelet of the edge (u, v) of any tessellation in which the adjacent
/// triangle apexes are wl (left of u -> v) and wr (right): the four-piece
/// field with breakpoints at the quadrilateral vertices, equal on each arc to
/// the signed logarithm of the side subtending it,
///   +X(v->wl), -X(wl->u), +X(u->wr), -X(wr->v)
/// counterclockwise.  For Farey edges this coincides with
/// wavelet(element_from_edge(u, v)); the sign convention is fixed by that
/// agreement.
PiecewiseField tessellation_wavelet(const ExtendedRational& u, const ExtendedRational& v,
                                    const ExtendedRational& wl, const ExtendedRational& wr);

/// Finite truncation of the 1-form: one normalized wavelet per unoriented
/// Farey edge with both endpoints of generation <= G.
struct OneFormTruncation {
    Framing F;
    long G{0};
    std::map<EdgeKey, PiecewiseField> table;
};

/// Builds the edge table; each entry is normalized_wavelet of the edge label
/// against F.  Well defined on unoriented edges since the wavelet is
/// invariant under reversing the edge orientation.
OneFormTruncation one_form(const Framing& F, long G);

/// Sum of t(e) * table(e); linear in t.  Throws std::invalid_argument if t
/// is supported outside the truncation.
PiecewiseField apply(const OneFormTruncation& form, const EdgeTangent& t);

/// Wavelets of the five interior edges of the once-flipped tessellation: the
/// flip removes the doe (0/1, 1/0) and inserts the edge f from 1/1 to -1/1.
/// Keys 'a', 'b', 'c', 'd' are the quadrilateral sides counterclockwise from
/// infinity, 'f' the new edge; every field is normalized against F.
std::map<char, PiecewiseField> flipped_wavelets(const Framing& F = standard_framing());

/// One coefficient comparison: on the named sub-arc, the coefficient of the
/// named edge deformation in the unflipped truncation (lhs) and in the
/// flipped truncation after the Ptolemy substitution (rhs).
struct FlipArcCheck {
    std::string arc;  ///< "I-", "I+", ..., "IV+"
    char var;         ///< 'a', 'b', 'c', 'd', 'e'
    Sl2Element lhs, rhs;
    bool ok{false};
};

/// Proof report for one relative position of the doe and the flipped edge.
struct FlipReport {
    int doe_case{0};  ///< 0: doe on the flipped edge; 1..4: doe on side a..d
    bool ok{false};
    std::vector<FlipArcCheck> checks;  ///< 8 arcs x 5 coefficients
    std::string failed_arc;            ///< first offending arc, if any

    std::string to_json() const;
};

/// Verifies, exactly and arc by arc, that the truncated 1-form applied to an
/// arbitrary deformation gives the same field before and after flipping the
/// edge (0/1, 1/0), at the identity decoration.  The flipped chart is
/// rewritten in the unflipped coordinates through the linearized Ptolemy
/// relation e~ + f~ = (a~ + b~ + c~ + d~)/2; equality is then demanded for
/// each of the five coefficient fields on each of the eight sub-arcs cut out
/// by the generation-<=2 quadrilateral vertices.  The five cases use the five
/// normalizing framings induced by the generation-<=1 edges (the flipped edge
/// itself, then one per quadrant).
FlipReport verify_flip_invariance(int doe_case);

}  // namespace farey
