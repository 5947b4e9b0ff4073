#pragma once

/// @file fields.hpp
/// @brief Piecewise sl2 vector fields on the circle with exact rational
/// breakpoints: evaluation, Lie bracket, conjugation by group elements, and
/// normalization against a framing.

#include <farey/halfplane.hpp>
#include <farey/modular.hpp>

namespace farey {

/// A traceless 2x2 rational matrix (alpha beta; gamma -alpha), identified
/// with the vector field {(gamma+beta)cos t + 2 alpha sin t + (gamma-beta)}
/// d/dt on the circle.
struct Sl2Element {
    Rat alpha{0}, beta{0}, gamma{0};

    Sl2Element() = default;
    Sl2Element(Rat a, Rat b, Rat g)
        : alpha(std::move(a)), beta(std::move(b)), gamma(std::move(g)) {}

    bool operator==(const Sl2Element&) const = default;
    bool is_zero() const { return alpha == 0 && beta == 0 && gamma == 0; }
    Sl2Element operator+(const Sl2Element& o) const;
    Sl2Element operator-(const Sl2Element& o) const;
    Sl2Element operator*(const Rat& r) const;
    std::string str() const;
};

Sl2Element sl2_e();  ///< (0 1; 0 0)
Sl2Element sl2_f();  ///< (0 0; 1 0)
Sl2Element sl2_h();  ///< (1 0; 0 -1)

/// Matrix commutator [x, y] = xy - yx.
Sl2Element sl2_bracket(const Sl2Element& x, const Sl2Element& y);

/// A⁻¹ x A for unimodular integer A.
Sl2Element sl2_conjugate(const Sl2Element& x, const GroupElement& A);

/// Scalar value of the vector field of x at the circle point p/q, using the
/// exact substitution cos t = (p²-q²)/(p²+q²), sin t = -2pq/(p²+q²).
Rat sl2_scalar(const Sl2Element& x, const ExtendedRational& at);

/// An element of ppsl2: finitely many breakpoints in counterclockwise order,
/// each opening an arc on which the field is a constant Sl2Element; no
/// breakpoints means a single global value.  Always kept canonical: adjacent
/// values distinct, breakpoints in circular order.
class PiecewiseField {
  public:
    PiecewiseField() = default;
    /// Global field.
    explicit PiecewiseField(Sl2Element global);
    /// From (breakpoint, value-on-arc-after) pairs, canonicalized.
    explicit PiecewiseField(std::vector<std::pair<ExtendedRational, Sl2Element>> pieces);

    bool is_global() const { return pieces_.empty(); }
    const Sl2Element& global_value() const;
    const std::vector<std::pair<ExtendedRational, Sl2Element>>& pieces() const {
        return pieces_;
    }

    /// Value on the open arc immediately counterclockwise of x (also correct
    /// on the whole arc when x is a breakpoint).
    const Sl2Element& value_after(const ExtendedRational& x) const;
    /// Value on the open arc immediately clockwise of x.
    const Sl2Element& value_before(const ExtendedRational& x) const;

    bool operator==(const PiecewiseField&) const = default;

    std::string to_json() const;
    static PiecewiseField from_json(const std::string& text);

  private:
    // empty -> global field with value global_
    std::vector<std::pair<ExtendedRational, Sl2Element>> pieces_;
    Sl2Element global_{};
};

/// Scalar of fld at x; at a breakpoint, the average of the one-sided values.
Rat evaluate(const PiecewiseField& fld, const ExtendedRational& x);

PiecewiseField operator+(const PiecewiseField& f, const PiecewiseField& g);
PiecewiseField operator-(const PiecewiseField& f, const PiecewiseField& g);
PiecewiseField operator*(const PiecewiseField& f, const Rat& r);

/// Arcwise Lie bracket after common refinement, coalesced.
PiecewiseField bracket(const PiecewiseField& f, const PiecewiseField& g);

/// The right conjugation action: values x -> A⁻¹ x A, breakpoints moved by
/// act_right(·, A).  Satisfies conjugate(conjugate(f,A),B) = conjugate(f,A·B)
/// and sends the field (e on the left of the doe) to (A⁻¹eA left of e_A).
PiecewiseField conjugate(const PiecewiseField& f, const GroupElement& A);

/// The unique global field agreeing with f at the three framing points
/// (exact 3x3 solve), together with the normalized remainder f - X.
std::pair<PiecewiseField, Sl2Element> normalize(const PiecewiseField& f, const Framing& F);

}  // namespace farey
