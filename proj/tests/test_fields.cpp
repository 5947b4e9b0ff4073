#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <farey/fields.hpp>

#include <random>

using namespace farey;

namespace {

GroupElement random_element(std::mt19937& rng, int len) {
    std::uniform_int_distribution<int> pick(0, 4);
    GroupWord w;
    const Letter alphabet[5] = {Letter::S, Letter::T, Letter::Tinv, Letter::U, Letter::Uinv};
    for (int i = 0; i < len; ++i) w.letters.push_back(alphabet[pick(rng)]);
    return word_to_matrix(w);
}

/// The four-quadrant field: +h+2e, -h+2f, -h-2f, +h-2e counterclockwise from
/// infinity; vanishes and is once-differentiable at its breakpoints.
PiecewiseField mother() {
    std::vector<std::pair<ExtendedRational, Sl2Element>> pieces;
    pieces.emplace_back(make_xrat(1, 0), sl2_h() + sl2_e() * 2);
    pieces.emplace_back(make_xrat(-1, 1), sl2_h() * -1 + sl2_f() * 2);
    pieces.emplace_back(make_xrat(0, 1), sl2_h() * -1 - sl2_f() * 2);
    pieces.emplace_back(make_xrat(1, 1), sl2_h() - sl2_e() * 2);
    return PiecewiseField(std::move(pieces));
}

/// The basic hyperfan: e on the half-circle counterclockwise from infinity
/// to zero, vanishing elsewhere.
PiecewiseField psi_identity() {
    std::vector<std::pair<ExtendedRational, Sl2Element>> pieces;
    pieces.emplace_back(make_xrat(1, 0), sl2_e());
    pieces.emplace_back(make_xrat(0, 1), Sl2Element());
    return PiecewiseField(std::move(pieces));
}

PiecewiseField random_field(std::mt19937& rng) {
    std::uniform_int_distribution<int> nb(2, 5), idx(0, 40), coef(-3, 3);
    std::vector<std::pair<ExtendedRational, Sl2Element>> pieces;
    int n = nb(rng);
    for (int i = 0; i < n; ++i) {
        ExtendedRational at = farey_enumeration(idx(rng));
        bool dup = false;
        for (const auto& p : pieces) dup = dup || p.first == at;
        if (dup) continue;
        pieces.emplace_back(at, Sl2Element(coef(rng), coef(rng), coef(rng)));
    }
    return PiecewiseField(std::move(pieces));
}

/// Sample points covering all quadrants, avoiding none in particular.
std::vector<ExtendedRational> sample_points() {
    std::vector<ExtendedRational> pts;
    for (int i = 0; i < 20; ++i) pts.push_back(farey_enumeration(i));
    return pts;
}

}  // namespace

TEST_CASE("sl2 generators bracket like sl2") {
    CHECK(sl2_bracket(sl2_e(), sl2_f()) == sl2_h());
    CHECK(sl2_bracket(sl2_h(), sl2_e()) == sl2_e() * 2);
    CHECK(sl2_bracket(sl2_h(), sl2_f()) == sl2_f() * -2);
    Sl2Element x(Rat(3, 2), Rat(-1, 5), Rat(7));
    CHECK(sl2_bracket(x, x).is_zero());
}

TEST_CASE("scalar evaluation of global fields") {
    PiecewiseField ge(sl2_e());
    CHECK(evaluate(ge, make_xrat(1, 0)) == 0);   // cos 0 - 1
    CHECK(evaluate(ge, make_xrat(0, 1)) == -2);  // cos pi - 1
    // generic point: e gives cos t - 1 = -2q^2/(p^2+q^2)
    CHECK(evaluate(ge, make_xrat(2, 3)) == Rat(-18, 13));
}

TEST_CASE("four-quadrant field vanishes at breakpoints and keeps four pieces") {
    PiecewiseField m = mother();
    REQUIRE(!m.is_global());
    CHECK(m.pieces().size() == 4);  // once- but not twice-differentiable: no coalescing
    for (const auto& p : m.pieces()) CHECK(evaluate(m, p.first) == 0);
    // interior spot checks
    CHECK(evaluate(m, make_xrat(-1, 2)) == Rat(-4, 5));  // quadrant II
    CHECK(evaluate(m, make_xrat(1, 2)) != 0);
}

TEST_CASE("canonicalization coalesces equal neighbours including wraparound") {
    std::vector<std::pair<ExtendedRational, Sl2Element>> pieces;
    pieces.emplace_back(make_xrat(0, 1), sl2_e());
    pieces.emplace_back(make_xrat(1, 1), sl2_e());
    pieces.emplace_back(make_xrat(1, 0), sl2_f());
    PiecewiseField f{std::move(pieces)};
    REQUIRE(f.pieces().size() == 2);
    CHECK(f.value_after(make_xrat(1, 1)) == sl2_e());

    // equal across the seam: the first breakpoint is spurious
    std::vector<std::pair<ExtendedRational, Sl2Element>> wrap;
    wrap.emplace_back(make_xrat(0, 1), sl2_h());
    wrap.emplace_back(make_xrat(1, 0), sl2_e());
    wrap.emplace_back(make_xrat(-1, 1), sl2_h());
    PiecewiseField g{std::move(wrap)};
    REQUIRE(g.pieces().size() == 2);
    CHECK(g.value_after(make_xrat(-1, 1)) == sl2_h());
    CHECK(g.value_before(make_xrat(1, 0)) == sl2_h());

    // a single piece covers the whole circle
    std::vector<std::pair<ExtendedRational, Sl2Element>> one;
    one.emplace_back(make_xrat(3, 7), sl2_f());
    PiecewiseField h{std::move(one)};
    CHECK(h.is_global());
    CHECK(h.global_value() == sl2_f());

    std::vector<std::pair<ExtendedRational, Sl2Element>> dup;
    dup.emplace_back(make_xrat(0, 1), sl2_e());
    dup.emplace_back(make_xrat(0, 1), sl2_f());
    CHECK_THROWS(PiecewiseField{std::move(dup)});
}

TEST_CASE("breakpoint evaluation averages the one-sided values") {
    std::vector<std::pair<ExtendedRational, Sl2Element>> pieces;
    pieces.emplace_back(make_xrat(1, 0), sl2_e());
    pieces.emplace_back(make_xrat(0, 1), Sl2Element());
    PiecewiseField f{std::move(pieces)};
    // at 0/1: e-side gives cos pi - 1 = -2, zero side gives 0
    CHECK(evaluate(f, make_xrat(0, 1)) == -1);
    CHECK(evaluate(f, make_xrat(1, 0)) == 0);
}

TEST_CASE("bracket lifts the pointwise bracket and coalesces") {
    PiecewiseField ge(sl2_e()), gf(sl2_f());
    PiecewiseField gh = bracket(ge, gf);
    REQUIRE(gh.is_global());
    CHECK(gh.global_value() == sl2_h());
    CHECK(bracket(gf, gf) == PiecewiseField(Sl2Element()));
    // self-bracket of a piecewise field collapses to the global zero
    CHECK(bracket(mother(), mother()).is_global());
    CHECK(bracket(mother(), mother()).global_value().is_zero());
}

TEST_CASE("hyperfans with disjoint supports commute") {
    GroupElement A(1, -2, 1, -1);
    PiecewiseField psiA = conjugate(psi_identity(), A);
    // support of psi_A is the arc from 1/1 to 2/1, disjoint from (1/0, 0/1)
    CHECK(psiA.value_after(make_xrat(1, 1)) == sl2_conjugate(sl2_e(), A));
    PiecewiseField br = bracket(psi_identity(), psiA);
    REQUIRE(br.is_global());
    CHECK(br.global_value().is_zero());
}

TEST_CASE("conjugation fixes the identity and sends the basic hyperfan to -f") {
    std::mt19937 rng(20260823);
    for (int i = 0; i < 5; ++i) {
        PiecewiseField f = random_field(rng);
        CHECK(conjugate(f, identity()) == f);
    }
    PiecewiseField psiS = conjugate(psi_identity(), gen_S());
    REQUIRE(psiS.pieces().size() == 2);
    CHECK(psiS.value_after(make_xrat(0, 1)) == sl2_f() * -1);
    CHECK(psiS.value_after(make_xrat(1, 0)).is_zero());
}

TEST_CASE("conjugated hyperfan breaks exactly at the edge endpoints") {
    std::mt19937 rng(7);
    for (int i = 0; i < 30; ++i) {
        GroupElement A = random_element(rng, 6);
        PiecewiseField psiA = conjugate(psi_identity(), A);
        auto [from, to] = edge_endpoints(A);
        REQUIRE(psiA.pieces().size() == 2);
        CHECK(((psiA.pieces()[0].first == from && psiA.pieces()[1].first == to) ||
               (psiA.pieces()[0].first == to && psiA.pieces()[1].first == from)));
    }
}

TEST_CASE("conjugation is a right action") {
    std::mt19937 rng(99);
    auto pts = sample_points();
    for (int i = 0; i < 25; ++i) {
        PiecewiseField f = random_field(rng);
        GroupElement A = random_element(rng, 4), B = random_element(rng, 4);
        PiecewiseField lhs = conjugate(conjugate(f, A), B);
        PiecewiseField rhs = conjugate(f, A * B);
        CHECK(lhs == rhs);
        for (const auto& x : pts) CHECK(evaluate(lhs, x) == evaluate(rhs, x));
    }
}

TEST_CASE("conjugation respects the bracket") {
    std::mt19937 rng(123);
    for (int i = 0; i < 20; ++i) {
        PiecewiseField f = random_field(rng), g = random_field(rng);
        GroupElement A = random_element(rng, 5);
        CHECK(conjugate(bracket(f, g), A) == bracket(conjugate(f, A), conjugate(g, A)));
    }
}

TEST_CASE("Jacobi identity holds exactly") {
    std::mt19937 rng(2024);
    PiecewiseField zero{Sl2Element()};
    for (int i = 0; i < 50; ++i) {
        PiecewiseField x = random_field(rng), y = random_field(rng), z = random_field(rng);
        PiecewiseField jac = bracket(bracket(x, y), z) + bracket(bracket(y, z), x) +
                             bracket(bracket(z, x), y);
        CHECK(jac == zero);
    }
}

TEST_CASE("evaluation is equivariant under conjugation") {
    // scalar of the conjugated field at x equals the scalar of the original at
    // the pulled-back point y = x.A^-1 times the derivative factor
    // (1+y^2) / ((1+x^2) (a - c y)^2) for A = (a b; c d).
    std::mt19937 rng(5150);
    for (int i = 0; i < 20; ++i) {
        PiecewiseField f = random_field(rng);
        GroupElement A = random_element(rng, 5);
        PiecewiseField fA = conjugate(f, A);
        for (int n = 3; n < 23; ++n) {
            ExtendedRational x = farey_enumeration(n);
            ExtendedRational y = act_right(x, A.inverse());
            if (x.is_infinity() || y.is_infinity()) continue;
            Rat xv = x.value(), yv = y.value();
            Rat denom = Rat(A.a) - Rat(A.c) * yv;
            if (denom == 0) continue;
            Rat factor = (1 + yv * yv) / ((1 + xv * xv) * denom * denom);
            CHECK(evaluate(fA, x) == evaluate(f, y) * factor);
        }
    }
}

TEST_CASE("normalization of a global field returns it whole") {
    Framing F{make_xrat(0, 1), make_xrat(1, 0), make_xrat(1, 1)};
    PiecewiseField g(Sl2Element(Rat(2), Rat(-1, 3), Rat(5)));
    auto [rem, X] = normalize(g, F);
    CHECK(X == Sl2Element(Rat(2), Rat(-1, 3), Rat(5)));
    CHECK(rem.is_global());
    CHECK(rem.global_value().is_zero());
}

TEST_CASE("normalized wavelet along the first flipped edge") {
    // The wavelet transported by S*T subdivides the quadrant between infinity
    // and -1 at -2/1; against the standard framing its global part is h and
    // the remainder takes the value -2f between -1 and 0.
    Framing F{make_xrat(0, 1), make_xrat(1, 0), make_xrat(1, 1)};
    GroupElement ST = gen_S() * gen_T();
    PiecewiseField w = conjugate(mother(), ST);
    REQUIRE(w.pieces().size() == 4);
    // transported breakpoints
    CHECK(w.value_after(make_xrat(-3, 2)) == Sl2Element(-3, -4, 2));
    CHECK(w.value_after(make_xrat(-1, 2)) == Sl2Element(1, 0, -2));
    auto [rem, X] = normalize(w, F);
    CHECK(X == sl2_h());
    CHECK(rem.value_after(make_xrat(-1, 2)) == sl2_f() * -2);
    CHECK(rem.value_after(make_xrat(1, 2)).is_zero());  // between 0 and infinity
    for (const auto& p : {F.u, F.v, F.w}) CHECK(evaluate(rem, p) == 0);
    // orientation reversal of the edge gives the same wavelet
    CHECK(conjugate(mother(), gen_S() * ST) == w);
    // idempotence
    auto [rem2, X2] = normalize(rem, F);
    CHECK(X2.is_zero());
    CHECK(rem2 == rem);
}

TEST_CASE("json roundtrip preserves fields exactly") {
    std::mt19937 rng(31337);
    for (int i = 0; i < 10; ++i) {
        PiecewiseField f = random_field(rng);
        CHECK(PiecewiseField::from_json(f.to_json()) == f);
    }
    PiecewiseField g(Sl2Element(Rat(1, 7), Rat(0), Rat(-4)));
    CHECK(PiecewiseField::from_json(g.to_json()) == g);
    CHECK(g.to_json().find("global") != std::string::npos);
}
