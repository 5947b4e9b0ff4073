#include <farey/fields.hpp>

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace farey {

// -------------------------------------------------------------- sl2 algebra

Sl2Element Sl2Element::operator+(const Sl2Element& o) const {
    return Sl2Element(alpha + o.alpha, beta + o.beta, gamma + o.gamma);
}

Sl2Element Sl2Element::operator-(const Sl2Element& o) const {
    return Sl2Element(alpha - o.alpha, beta - o.beta, gamma - o.gamma);
}

Sl2Element Sl2Element::operator*(const Rat& r) const {
    return Sl2Element(alpha * r, beta * r, gamma * r);
}

std::string Sl2Element::str() const {
    std::ostringstream os;
    os << "(" << rat_str(alpha) << " " << rat_str(beta) << "; " << rat_str(gamma) << " -"
       << rat_str(alpha) << ")";
    return os.str();
}

Sl2Element sl2_e() { return Sl2Element(0, 1, 0); }
Sl2Element sl2_f() { return Sl2Element(0, 0, 1); }
Sl2Element sl2_h() { return Sl2Element(1, 0, 0); }

Sl2Element sl2_bracket(const Sl2Element& x, const Sl2Element& y) {
    return Sl2Element(x.beta * y.gamma - x.gamma * y.beta,
                      2 * (x.alpha * y.beta - y.alpha * x.beta),
                      2 * (x.gamma * y.alpha - y.gamma * x.alpha));
}

Sl2Element sl2_conjugate(const Sl2Element& x, const GroupElement& A) {
    Rat a(A.a), b(A.b), c(A.c), d(A.d);
    return Sl2Element(x.alpha * (a * d + b * c) + x.beta * c * d - x.gamma * a * b,
                      2 * x.alpha * b * d + x.beta * d * d - x.gamma * b * b,
                      -2 * x.alpha * a * c - x.beta * c * c + x.gamma * a * a);
}

Rat sl2_scalar(const Sl2Element& x, const ExtendedRational& at) {
    Int n = at.p * at.p + at.q * at.q;
    Rat cos_t(at.p * at.p - at.q * at.q, n);
    Rat sin_t(-2 * at.p * at.q, n);
    return (x.gamma + x.beta) * cos_t + 2 * x.alpha * sin_t + (x.gamma - x.beta);
}

// ---------------------------------------------------------- piecewise fields

PiecewiseField::PiecewiseField(Sl2Element global) : global_(std::move(global)) {}

PiecewiseField::PiecewiseField(std::vector<std::pair<ExtendedRational, Sl2Element>> pieces) {
    if (pieces.empty()) return;
    std::sort(pieces.begin(), pieces.end(),
              [](const auto& x, const auto& y) { return circle_less(x.first, y.first); });
    for (size_t i = 0; i + 1 < pieces.size(); ++i)
        if (pieces[i].first == pieces[i + 1].first)
            throw std::invalid_argument("PiecewiseField: duplicate breakpoint");
    // coalesce cyclically: a breakpoint with equal values on both sides is
    // not an actual breakpoint
    std::vector<std::pair<ExtendedRational, Sl2Element>> out;
    for (auto& piece : pieces) {
        if (!out.empty() && out.back().second == piece.second) continue;
        out.push_back(std::move(piece));
    }
    while (out.size() > 1 && out.front().second == out.back().second) out.erase(out.begin());
    if (out.size() == 1) {
        global_ = std::move(out.front().second);
        return;
    }
    pieces_ = std::move(out);
}

const Sl2Element& PiecewiseField::global_value() const {
    if (!is_global()) throw std::logic_error("global_value() of a non-global field");
    return global_;
}

const Sl2Element& PiecewiseField::value_after(const ExtendedRational& x) const {
    if (is_global()) return global_;
    // owning piece: the last breakpoint at or before x in circular order
    size_t lo = 0, hi = pieces_.size();
    if (circle_less(x, pieces_.front().first)) return pieces_.back().second;
    while (lo + 1 < hi) {
        size_t mid = (lo + hi) / 2;
        if (circle_less(x, pieces_[mid].first)) hi = mid;
        else lo = mid;
    }
    return pieces_[lo].second;
}

const Sl2Element& PiecewiseField::value_before(const ExtendedRational& x) const {
    if (is_global()) return global_;
    for (size_t i = 0; i < pieces_.size(); ++i)
        if (pieces_[i].first == x)
            return pieces_[(i + pieces_.size() - 1) % pieces_.size()].second;
    return value_after(x);
}

Rat evaluate(const PiecewiseField& fld, const ExtendedRational& x) {
    Rat after = sl2_scalar(fld.value_after(x), x);
    Rat before = sl2_scalar(fld.value_before(x), x);
    return (after + before) / 2;
}

// ------------------------------------------------------- arcwise combination

template <typename Op>
static PiecewiseField combine(const PiecewiseField& f, const PiecewiseField& g, Op op) {
    if (f.is_global() && g.is_global())
        return PiecewiseField(op(f.global_value(), g.global_value()));
    std::vector<ExtendedRational> cuts;
    for (const auto& p : f.pieces()) cuts.push_back(p.first);
    for (const auto& p : g.pieces()) cuts.push_back(p.first);
    std::sort(cuts.begin(), cuts.end(), circle_less);
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<std::pair<ExtendedRational, Sl2Element>> pieces;
    pieces.reserve(cuts.size());
    for (const auto& c : cuts) pieces.emplace_back(c, op(f.value_after(c), g.value_after(c)));
    return PiecewiseField(std::move(pieces));
}

PiecewiseField operator+(const PiecewiseField& f, const PiecewiseField& g) {
    return combine(f, g, [](const Sl2Element& x, const Sl2Element& y) { return x + y; });
}

PiecewiseField operator-(const PiecewiseField& f, const PiecewiseField& g) {
    return combine(f, g, [](const Sl2Element& x, const Sl2Element& y) { return x - y; });
}

PiecewiseField operator*(const PiecewiseField& f, const Rat& r) {
    if (f.is_global()) return PiecewiseField(f.global_value() * r);
    std::vector<std::pair<ExtendedRational, Sl2Element>> pieces;
    for (const auto& p : f.pieces()) pieces.emplace_back(p.first, p.second * r);
    return PiecewiseField(std::move(pieces));
}

PiecewiseField bracket(const PiecewiseField& f, const PiecewiseField& g) {
    return combine(f, g, sl2_bracket);
}

PiecewiseField conjugate(const PiecewiseField& f, const GroupElement& A) {
    if (f.is_global()) return PiecewiseField(sl2_conjugate(f.global_value(), A));
    std::vector<std::pair<ExtendedRational, Sl2Element>> pieces;
    for (const auto& p : f.pieces())
        pieces.emplace_back(act_right(p.first, A), sl2_conjugate(p.second, A));
    return PiecewiseField(std::move(pieces));
}

std::pair<PiecewiseField, Sl2Element> normalize(const PiecewiseField& f, const Framing& F) {
    // solve for the global (alpha,beta,gamma) matching f at the three points:
    // 2 sin(t_i) alpha + (cos(t_i) - 1) beta + (cos(t_i) + 1) gamma = v_i
    const ExtendedRational pts[3] = {F.u, F.v, F.w};
    Rat M[3][3], rhs[3];
    for (int i = 0; i < 3; ++i) {
        Int n = pts[i].p * pts[i].p + pts[i].q * pts[i].q;
        Rat cos_t(pts[i].p * pts[i].p - pts[i].q * pts[i].q, n);
        Rat sin_t(-2 * pts[i].p * pts[i].q, n);
        M[i][0] = 2 * sin_t;
        M[i][1] = cos_t - 1;
        M[i][2] = cos_t + 1;
        rhs[i] = evaluate(f, pts[i]);
    }
    auto det3 = [](const Rat m[3][3]) {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    Rat D = det3(M);
    if (D == 0) throw std::logic_error("normalize: singular framing system");
    Rat sol[3];
    for (int k = 0; k < 3; ++k) {
        Rat Mk[3][3];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) Mk[i][j] = (j == k) ? rhs[i] : M[i][j];
        sol[k] = det3(Mk) / D;
    }
    Sl2Element X(sol[0], sol[1], sol[2]);
    return {f - PiecewiseField(X), X};
}

// --------------------------------------------------------------------- JSON

static nlohmann::ordered_json sl2_json(const Sl2Element& x) {
    nlohmann::ordered_json j;
    j["alpha"] = rat_str(x.alpha);
    j["beta"] = rat_str(x.beta);
    j["gamma"] = rat_str(x.gamma);
    return j;
}

static Sl2Element sl2_from_json(const nlohmann::json& j) {
    return Sl2Element(parse_rat(j.at("alpha").get<std::string>()),
                      parse_rat(j.at("beta").get<std::string>()),
                      parse_rat(j.at("gamma").get<std::string>()));
}

std::string PiecewiseField::to_json() const {
    nlohmann::ordered_json j;
    if (is_global()) {
        j["global"] = sl2_json(global_);
    } else {
        j["pieces"] = nlohmann::ordered_json::array();
        for (const auto& p : pieces_) {
            nlohmann::ordered_json jp;
            jp["at"] = p.first.str();
            jp["alpha"] = rat_str(p.second.alpha);
            jp["beta"] = rat_str(p.second.beta);
            jp["gamma"] = rat_str(p.second.gamma);
            j["pieces"].push_back(jp);
        }
    }
    return j.dump(2);
}

PiecewiseField PiecewiseField::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    if (j.contains("global")) return PiecewiseField(sl2_from_json(j.at("global")));
    std::vector<std::pair<ExtendedRational, Sl2Element>> pieces;
    for (const auto& jp : j.at("pieces"))
        pieces.emplace_back(parse_xrat(jp.at("at").get<std::string>()), sl2_from_json(jp));
    return PiecewiseField(std::move(pieces));
}

}  // namespace farey
