#include <farey/wavelets.hpp>

#include <json.hpp>

#include <algorithm>
#include <stdexcept>

namespace farey {

// ------------------------------------------------------------ lambda family

namespace {

/// Value of the right-action Moebius map of M at a finite point, as a
/// rational (throws if the image is infinite).
Rat mobius_value(const Mat2Q& M, const Rat& x) {
    Rat den = M.a - M.c * x;
    if (den == 0) throw std::logic_error("mobius_value: pole");
    return (M.d * x - M.b) / den;
}

/// First derivative of the right-action Moebius map at a finite point.
Rat mobius_derivative(const Mat2Q& M, const Rat& x) {
    Rat den = M.a - M.c * x;
    return M.det() / (den * den);
}

/// Derivative at infinity in the reciprocal chart; requires the map to fix
/// infinity (c = 0).
Rat mobius_derivative_at_infinity(const Mat2Q& M) {
    if (M.c != 0) throw std::logic_error("mobius map does not fix infinity");
    return M.det() / (M.d * M.d);
}

int quadrant_of(const ExtendedRational& x) {
    if (x.is_infinity()) return 0;
    Rat v = x.value();
    if (v < -1) return 0;
    if (v < 0) return 1;
    if (v < 1) return 2;
    return 3;
}

}  // namespace

DecoratedPoint LambdaFamily::apply(const DecoratedPoint& p) const {
    return mobius_on_coordinates(p, quadrant[quadrant_of(p.s)]);
}

LambdaFamily lambda_family(const Rat& s) {
    if (s == 0) throw std::invalid_argument("lambda_family: s must be nonzero");
    Rat si = 1 / s;
    LambdaFamily fam{s,
                     {Mat2Q(s, s - si, 0, si), Mat2Q(si, 0, s - si, s),
                      Mat2Q(si, 0, si - s, s), Mat2Q(s, si - s, 0, si)}};
    // C^1 gluing at the four breakpoints: each is fixed by both adjacent
    // pieces with equal one-sided derivatives
    const Rat finite_bps[3] = {Rat(-1), Rat(0), Rat(1)};
    const int left_of[3] = {0, 1, 2};  // piece clockwise of -1, 0, 1
    for (int k = 0; k < 3; ++k) {
        const Mat2Q& L = fam.quadrant[left_of[k]];
        const Mat2Q& R = fam.quadrant[left_of[k] + 1];
        if (mobius_value(L, finite_bps[k]) != finite_bps[k] ||
            mobius_value(R, finite_bps[k]) != finite_bps[k])
            throw std::logic_error("lambda_family: breakpoint not fixed");
        if (mobius_derivative(L, finite_bps[k]) != mobius_derivative(R, finite_bps[k]))
            throw std::logic_error("lambda_family: not C^1 at a breakpoint");
    }
    if (mobius_derivative_at_infinity(fam.quadrant[3]) !=
        mobius_derivative_at_infinity(fam.quadrant[0]))
        throw std::logic_error("lambda_family: not C^1 at infinity");
    return fam;
}

// ------------------------------------------------------- wavelets, hyperfans

PiecewiseField mother_wavelet() {
    std::vector<std::pair<ExtendedRational, Sl2Element>> pieces;
    pieces.emplace_back(make_xrat(1, 0), sl2_h() + sl2_e() * 2);
    pieces.emplace_back(make_xrat(-1, 1), sl2_h() * -1 + sl2_f() * 2);
    pieces.emplace_back(make_xrat(0, 1), sl2_h() * -1 - sl2_f() * 2);
    pieces.emplace_back(make_xrat(1, 1), sl2_h() - sl2_e() * 2);
    return PiecewiseField(std::move(pieces));
}

Framing standard_framing() {
    return Framing(make_xrat(0, 1), make_xrat(1, 0), make_xrat(1, 1));
}

PiecewiseField wavelet(const GroupElement& A) { return conjugate(mother_wavelet(), A); }

PiecewiseField normalized_wavelet(const GroupElement& A, const Framing& F) {
    return normalize(wavelet(A), F).first;
}

PiecewiseField hyperfan(const GroupElement& A) {
    auto [from, to] = edge_endpoints(A);
    std::vector<std::pair<ExtendedRational, Sl2Element>> pieces;
    pieces.emplace_back(to, Sl2Element(Rat(A.c * A.d), Rat(A.d * A.d), Rat(-A.c * A.c)));
    pieces.emplace_back(from, Sl2Element());
    return PiecewiseField(std::move(pieces));
}

PiecewiseField hyperfan_h_combination() {
    GroupElement U = gen_U(), S = gen_S();
    return hyperfan(identity()) + hyperfan(U * S) - hyperfan(S) - hyperfan(U.inverse()) -
           PiecewiseField(sl2_f());
}

Sl2Element usa_deficiency(const GroupElement& A) {
    GroupElement S = gen_S(), T = gen_T(), U = gen_U();
    PiecewiseField psi =
        hyperfan(S * T * A) - hyperfan(S * A) * 2 + hyperfan(S * T.inverse() * A) -
        (hyperfan(U * A) - hyperfan(A) * 2 + hyperfan(U.inverse() * A));
    if (!psi.is_global()) throw std::logic_error("usa_deficiency: non-global combination");
    return psi.global_value();
}

// ------------------------------------------------------------ basis algebra

PiecewiseField materialize(const BasisExpansion& x) {
    PiecewiseField acc{x.global};
    for (const auto& [label, coef] : x.coefficients) acc = acc + hyperfan(label) * coef;
    return acc;
}

namespace {

void add_deficiency_labels(BasisExpansion& out, const GroupElement& X, const Rat& scale) {
    GroupElement S = gen_S(), T = gen_T(), U = gen_U();
    const std::pair<GroupElement, int> parts[6] = {
        {S * T * X, 1}, {S * X, -2}, {S * T.inverse() * X, 1},
        {U * X, -1},    {X, 2},      {U.inverse() * X, -1}};
    for (const auto& [label, c] : parts) {
        Rat v = out.coefficients[label] += scale * c;
        if (v == 0) out.coefficients.erase(label);
    }
}

}  // namespace

std::array<BasisExpansion, 3> sl2_from_hyperfans() {
    GroupElement I = identity(), T = gen_T(), Ui = gen_U().inverse();
    BasisExpansion h, e, f;
    add_deficiency_labels(h, I, 1);
    add_deficiency_labels(h, T, Rat(-1, 3));
    add_deficiency_labels(h, Ui, Rat(-1, 3));
    add_deficiency_labels(e, T, Rat(2, 3));
    add_deficiency_labels(e, Ui, Rat(-1, 3));
    add_deficiency_labels(f, T, Rat(-1, 3));
    add_deficiency_labels(f, Ui, Rat(2, 3));
    return {h, e, f};
}

std::array<std::array<Rat, 3>, 3> adjoint_matrix(const GroupElement& A) {
    Rat a(A.a), b(A.b), c(A.c), d(A.d);
    return {{{d * d, -b * b, 2 * b * d},
             {-c * c, a * a, -2 * a * c},
             {c * d, -a * b, a * d + b * c}}};
}

// -------------------------------------------------------- structure constants

PiecewiseField BracketStructure::materialized() const {
    PiecewiseField acc{Sl2Element()};
    for (const auto& [label, coef] : hyperfan_terms) acc = acc + hyperfan(label) * coef;
    for (const auto& [x, coef] : global_terms) acc = acc + PiecewiseField(x) * coef;
    return acc;
}

namespace {

bool in_bottom_half(const ExtendedRational& x) { return x.is_infinity() || x.p >= 0; }
bool in_top_half(const ExtendedRational& x) { return x.is_infinity() || x.p <= 0; }

/// Order along the top half-circle (counterclockwise = from infinity through
/// the negatives toward 0), i.e. the linear order with infinity smallest.
bool top_less(const ExtendedRational& x, const ExtendedRational& y) {
    if (x == y) return false;
    if (x.is_infinity()) return true;
    if (y.is_infinity()) return false;
    return x < y;
}

void push_term(std::vector<std::pair<GroupElement, Rat>>& terms, const GroupElement& A,
               const Rat& coef) {
    if (coef == 0) return;
    for (auto& [label, c] : terms)
        if (label == A) {
            c += coef;
            return;
        }
    terms.emplace_back(A, coef);
}

}  // namespace

BracketStructure bracket_structure(const GroupElement& A) {
    BracketStructure out;
    if (A.c == 0) return out;  // edge of A shares both endpoints' stabilizer axis
    auto [i, t] = edge_endpoints(A);
    Rat a(A.a), c(A.c), d(A.d);
    GroupElement S = gen_S(), U = gen_U();
    if (in_bottom_half(i) && in_bottom_half(t)) {
        if (t < i) {
            out.case_tag = 1;  // disjoint supports
            return out;
        }
        out.case_tag = 2;
    } else if (in_top_half(i) && in_top_half(t)) {
        out.case_tag = top_less(t, i) ? 3 : 4;
    } else {
        throw std::logic_error("bracket_structure: edge crosses the horizontal axis");
    }
    if (out.case_tag == 2 || out.case_tag == 4) {
        // value [e, A^-1 e A] = -2cd e - c^2 h on the support of hyperfan(I)
        push_term(out.hyperfan_terms, identity(), -c * (2 * d + c));
        push_term(out.hyperfan_terms, S, c * c);
        push_term(out.hyperfan_terms, U.inverse(), c * c);
        push_term(out.hyperfan_terms, U * S, -c * c);
        out.global_terms.emplace_back(sl2_f(), c * c);
    }
    if (out.case_tag == 3) {
        // same value restricted to the support of hyperfan(A), re-expressed
        // through the adjoint: coefficients (-2ac, 0, c^2) in (e, f, h)
        push_term(out.hyperfan_terms, A, c * (c - 2 * a));
        push_term(out.hyperfan_terms, U * S * A, c * c);
        push_term(out.hyperfan_terms, S * A, -c * c);
        push_term(out.hyperfan_terms, U.inverse() * A, -c * c);
        out.global_terms.emplace_back(sl2_conjugate(sl2_f(), A), -c * c);
    }
    if (out.case_tag == 4) {
        // subtract the piece supported left of the reversed edge,
        // coefficients (0, 2ac, -c^2) in (e, f, h) conjugated by S*A
        GroupElement SA = S * A;
        push_term(out.hyperfan_terms, A, -2 * a * c - c * c);
        push_term(out.hyperfan_terms, SA, c * c);
        push_term(out.hyperfan_terms, U * A, c * c);
        push_term(out.hyperfan_terms, U.inverse() * SA, -c * c);
        out.global_terms.emplace_back(sl2_conjugate(sl2_f(), SA), -2 * a * c - c * c);
    }
    return out;
}

// ------------------------------------------------------------- partial sums

PiecewiseField fan_partial_sum(const GroupElement& A, int N, int direction) {
    Framing F = standard_framing();
    GroupElement step = direction >= 0 ? gen_U() : gen_U().inverse();
    PiecewiseField acc{Sl2Element()};
    GroupElement P = A;
    for (int n = 0; n <= N; ++n) {
        acc = acc + normalized_wavelet(P, F);
        P = step * P;
    }
    return acc;
}

PiecewiseField hyperfan_partial_sum(const GroupElement& A, int N, int direction) {
    Framing F = standard_framing();
    GroupElement step = direction >= 0 ? gen_U() : gen_U().inverse();
    int sign = direction >= 0 ? 1 : -1;
    PiecewiseField acc{Sl2Element()};
    GroupElement P = A;
    for (int n = 0; n <= N; ++n) {
        if (n > 0) acc = acc + normalized_wavelet(P, F) * Rat(sign * n);
        P = step * P;
    }
    return acc;
}

// --------------------------------------------------------- basis expansion

namespace {

/// True iff u lies on the half-open arc counterclockwise from t to i.
bool in_left_arc(const ExtendedRational& u, const ExtendedRational& t,
                 const ExtendedRational& i) {
    if (u == t) return true;
    if (u == i) return false;
    return ccw(t, u, i);
}

/// The lowest-generation rational strictly inside the open interval
/// (lo, hi) with 0 <= lo < hi <= infinity, by the Stern-Brocot walk.
ExtendedRational simplest_between_nonneg(const ExtendedRational& lo,
                                         const ExtendedRational& hi) {
    Int lp = 0, lq = 1, hp = 1, hq = 0;
    while (true) {
        Int mp = lp + hp, mq = lq + hq;
        if (mp * lo.q <= lo.p * mq) {  // mediant <= lo
            lp = mp;
            lq = mq;
        } else if (!hi.is_infinity() && mp * hi.q >= hi.p * mq) {  // mediant >= hi
            hp = mp;
            hq = mq;
        } else {
            return ExtendedRational(mp, mq);
        }
    }
}

/// Same for an arc between circularly adjacent points; because 0/1 and 1/0
/// are always present the arc lies within the closed upper or lower
/// half-circle, and the negative side is the mirror of the positive one.
ExtendedRational simplest_in_arc(const ExtendedRational& from, const ExtendedRational& to) {
    bool negative_side = from.is_infinity() || from.p < 0;
    if (!negative_side) return simplest_between_nonneg(from, to);
    ExtendedRational lo = to.p == 0 ? to : ExtendedRational(-to.p, to.q);
    ExtendedRational hi = from.is_infinity() ? from : ExtendedRational(-from.p, from.q);
    ExtendedRational m = simplest_between_nonneg(lo, hi);
    return ExtendedRational(-m.p, m.q);
}

/// Attempt the exact solve of f = sum c_A hyperfan(A) + global over the
/// basis-oriented edges with both endpoints in pts; returns false when the
/// system is inconsistent over that candidate set.
bool try_expand(const PiecewiseField& f, const std::vector<ExtendedRational>& pts,
                BasisExpansion& out) {
    std::vector<GroupElement> cand;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = 0; j < pts.size(); ++j) {
            if (i == j) continue;
            const ExtendedRational &x = pts[i], &y = pts[j];
            Int det = x.p * y.q - y.p * x.q;
            if (det != 1 && det != -1) continue;
            bool doe = x.p == 0 && y.is_infinity();
            if (!doe && !(generation(x) < generation(y))) continue;
            cand.push_back(element_from_edge(x, y));
        }

    const size_t n = cand.size() + 3;  // edge coefficients plus the global part
    std::vector<std::array<ExtendedRational, 2>> arcs;  // (terminal, initial)
    arcs.reserve(cand.size());
    for (const auto& A : cand) {
        auto [ini, ter] = edge_endpoints(A);
        arcs.push_back({ter, ini});
    }
    std::vector<std::vector<Rat>> rows;  // augmented matrix, last column = rhs
    for (const auto& u : pts) {
        const Sl2Element& v = f.value_after(u);
        const Rat comp[3] = {v.alpha, v.beta, v.gamma};
        for (int c = 0; c < 3; ++c) {
            std::vector<Rat> row(n + 1, Rat(0));
            for (size_t k = 0; k < cand.size(); ++k) {
                if (!in_left_arc(u, arcs[k][0], arcs[k][1])) continue;
                const GroupElement& A = cand[k];
                const Rat vals[3] = {Rat(A.c * A.d), Rat(A.d * A.d), Rat(-A.c * A.c)};
                row[k] = vals[c];
            }
            row[cand.size() + c] = 1;  // global component
            row[n] = comp[c];
            rows.push_back(std::move(row));
        }
    }

    // exact Gaussian elimination; free variables are set to zero
    std::vector<Rat> sol(n, Rat(0));
    std::vector<size_t> pivot_col;
    size_t r = 0;
    for (size_t col = 0; col < n && r < rows.size(); ++col) {
        size_t piv = r;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        Rat inv = 1 / rows[r][col];
        for (size_t j = col; j <= n; ++j) rows[r][j] *= inv;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][col] == 0) continue;
            Rat factor = rows[i][col];
            for (size_t j = col; j <= n; ++j) rows[i][j] -= factor * rows[r][j];
        }
        pivot_col.push_back(col);
        ++r;
    }
    for (size_t i = r; i < rows.size(); ++i)
        if (rows[i][n] != 0) return false;
    for (size_t i = 0; i < r; ++i) sol[pivot_col[i]] = rows[i][n];

    out = BasisExpansion{};
    for (size_t k = 0; k < cand.size(); ++k)
        if (sol[k] != 0) out.coefficients[cand[k]] = sol[k];
    out.global = Sl2Element(sol[cand.size()], sol[cand.size() + 1], sol[cand.size() + 2]);
    return true;
}

}  // namespace

BasisExpansion expand_in_basis(const PiecewiseField& f) {
    // A span member can require basis labels whose edges subdivide the arcs
    // between the breakpoints of f (the six-term relations rewrite wrongly
    // oriented labels into interior ones), so the candidate point set starts
    // from breakpoints(f) + {0/1, 1/0} and is refined by inserting the
    // lowest-generation point of each gap until the exact linear solve over
    // the basis-oriented candidate edges succeeds.
    std::vector<ExtendedRational> pts{make_xrat(0, 1), make_xrat(1, 0)};
    for (const auto& p : f.pieces()) pts.push_back(p.first);
    std::sort(pts.begin(), pts.end(), circle_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    constexpr int kMaxRefinements = 5;
    constexpr size_t kMaxPoints = 160;
    for (int depth = 0;; ++depth) {
        BasisExpansion out;
        if (try_expand(f, pts, out)) {
            if (!(materialize(out) == f))
                throw std::logic_error("expand_in_basis: reconstruction mismatch");
            return out;
        }
        if (depth == kMaxRefinements || pts.size() > kMaxPoints)
            throw std::runtime_error(
                "expand_in_basis: field is not in the hyperfan span (refinement limit)");
        std::vector<ExtendedRational> next;
        next.reserve(2 * pts.size());
        for (size_t i = 0; i < pts.size(); ++i) {
            const ExtendedRational& from = pts[i];
            const ExtendedRational& to = pts[(i + 1) % pts.size()];
            next.push_back(from);
            next.push_back(simplest_in_arc(from, to));
        }
        std::sort(next.begin(), next.end(), circle_less);
        next.erase(std::unique(next.begin(), next.end()), next.end());
        pts = std::move(next);
    }
}

std::string BasisExpansion::to_json() const {
    nlohmann::ordered_json j;
    j["terms"] = nlohmann::ordered_json::array();
    for (const auto& [label, coef] : coefficients) {
        nlohmann::ordered_json jt;
        jt["word"] = matrix_to_word(label).str();
        jt["coef"] = rat_str(coef);
        j["terms"].push_back(jt);
    }
    j["global"]["alpha"] = rat_str(global.alpha);
    j["global"]["beta"] = rat_str(global.beta);
    j["global"]["gamma"] = rat_str(global.gamma);
    return j.dump(2);
}

}  // namespace farey
