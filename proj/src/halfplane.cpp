#include <farey/halfplane.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace farey {

// ------------------------------------------------------------------- points

DecoratedPoint::DecoratedPoint(ExtendedRational center, Rat diameter)
    : s(std::move(center)), delta(std::move(diameter)) {
    if (delta <= 0) throw std::domain_error("DecoratedPoint: diameter must be positive");
}

Framing::Framing(ExtendedRational u_, ExtendedRational v_, ExtendedRational w_)
    : u(std::move(u_)), v(std::move(v_)), w(std::move(w_)) {
    if (u == v || v == w || u == w) throw std::domain_error("Framing: points must be distinct");
}

// ----------------------------------------------------------------- matrices

Mat2Q::Mat2Q(Rat a_, Rat b_, Rat c_, Rat d_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
    if (det() <= 0) throw std::domain_error("Mat2Q: determinant must be positive");
}

Mat2Q::Mat2Q(const GroupElement& g) : a(g.a), b(g.b), c(g.c), d(g.d) {}

Mat2Q Mat2Q::operator*(const Mat2Q& o) const {
    return Mat2Q(a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d);
}

Mat2Q Mat2Q::inverse() const { return Mat2Q(d, -b, -c, a); }

bool Mat2Q::proportional(const Mat2Q& o) const {
    return a * o.b == b * o.a && a * o.c == c * o.a && a * o.d == d * o.a &&
           b * o.c == c * o.b && b * o.d == d * o.b && c * o.d == d * o.c;
}

// ------------------------------------------------------------ lambda lengths

Rat lambda_sq(const DecoratedPoint& p1, const DecoratedPoint& p2) {
    if (p1.s == p2.s) throw std::domain_error("lambda_sq: coincident centers");
    if (p1.s.is_infinity()) return p1.delta / p2.delta;
    if (p2.s.is_infinity()) return p2.delta / p1.delta;
    Rat diff = p1.s.value() - p2.s.value();
    return diff * diff / (p1.delta * p2.delta);
}

std::optional<Rat> lambda_exact(const DecoratedPoint& p1, const DecoratedPoint& p2) {
    Rat root;
    if (rational_square(lambda_sq(p1, p2), root)) return root;
    return std::nullopt;
}

double lambda_numeric(const DecoratedPoint& p1, const DecoratedPoint& p2) {
    return std::sqrt(static_cast<double>(lambda_sq(p1, p2)));
}

Rat h_length(const Rat& li, const Rat& lj, const Rat& lk) {
    if (li <= 0 || lj <= 0 || lk <= 0) throw std::domain_error("h_length: lengths must be positive");
    return li / (lj * lk);
}

Rat ptolemy_flip(const Rat& a, const Rat& b, const Rat& c, const Rat& d, const Rat& e) {
    if (a <= 0 || b <= 0 || c <= 0 || d <= 0 || e <= 0)
        throw std::domain_error("ptolemy_flip: lengths must be positive");
    return (a * c + b * d) / e;
}

Rat cross_ratio_shear(const Rat& a, const Rat& b, const Rat& c, const Rat& d) {
    if (a <= 0 || b <= 0 || c <= 0 || d <= 0)
        throw std::domain_error("cross_ratio_shear: lengths must be positive");
    return a * c / (b * d);
}

// ----------------------------------------------------------------- polygons

bool TriangulatedPolygon::has_edge(int i, int j) const {
    if (i == j) return false;
    if (i > j) std::swap(i, j);
    if (j - i == 1 || (i == 0 && j == n - 1)) return true;  // boundary
    return diagonals.count({i, j}) > 0;
}

TriangulatedPolygon fan_polygon(int n, std::optional<std::pair<int, int>> doe) {
    TriangulatedPolygon P;
    P.n = n;
    for (int k = 2; k <= n - 2; ++k) P.diagonals.insert({0, k});
    P.doe = doe;
    return P;
}

// True if k lies strictly inside the cyclic interval (i, j) of 0..n-1.
static bool in_cyclic_interval(int k, int i, int j, int n) {
    int rel = ((k - i) % n + n) % n;
    int len = ((j - i) % n + n) % n;
    return rel > 0 && rel < len;
}

TriangulatedPolygon polygon_flip(const TriangulatedPolygon& P, std::pair<int, int> diagonal) {
    int i = diagonal.first, j = diagonal.second;
    if (i > j) std::swap(i, j);
    if (!P.diagonals.count({i, j}))
        throw std::invalid_argument("polygon_flip: not an interior diagonal");
    // apexes of the two adjacent triangles: common neighbors on each side
    std::optional<int> x, y;  // x in cyclic (i,j), y in cyclic (j,i)
    for (int k = 0; k < P.n; ++k) {
        if (k == i || k == j) continue;
        if (!P.has_edge(i, k) || !P.has_edge(k, j)) continue;
        if (in_cyclic_interval(k, i, j, P.n)) {
            if (!x) x = k;
        } else if (!y) {
            y = k;
        }
    }
    if (!x || !y) throw std::logic_error("polygon_flip: triangulation is not valid");
    TriangulatedPolygon Q = P;
    Q.diagonals.erase({i, j});
    int nx = *x, ny = *y;
    Q.diagonals.insert({std::min(nx, ny), std::max(nx, ny)});
    if (P.doe) {
        // counterclockwise rotation within the quadrilateral (i, x, j, y)
        if (P.doe == std::pair(i, j)) Q.doe = {nx, ny};
        else if (P.doe == std::pair(j, i)) Q.doe = {ny, nx};
    }
    return Q;
}

// ------------------------------------------------------------ Moebius action

ExtendedRational act_right(const ExtendedRational& x, const Mat2Q& A) {
    Rat num = Rat(x.p) * A.d - Rat(x.q) * A.b;
    Rat den = Rat(x.q) * A.a - Rat(x.p) * A.c;
    Int n = numerator(num) * denominator(den);
    Int d = denominator(num) * numerator(den);
    return ExtendedRational(n, d);
}

DecoratedPoint mobius_on_coordinates(const DecoratedPoint& p, const Mat2Q& A) {
    Rat det = A.det();
    if (p.s.is_infinity()) {
        if (A.c == 0) return DecoratedPoint(make_xrat(1, 0), A.d * A.d * p.delta / det);
        Rat sprime = -A.d / A.c;
        return DecoratedPoint(
            ExtendedRational(numerator(sprime), denominator(sprime)),
            det / (A.c * A.c * p.delta));
    }
    Rat s = p.s.value();
    Rat denom = A.a - A.c * s;
    if (denom == 0) return DecoratedPoint(make_xrat(1, 0), det / (A.c * A.c * p.delta));
    Rat sprime = (A.d * s - A.b) / denom;
    return DecoratedPoint(ExtendedRational(numerator(sprime), denominator(sprime)),
                          p.delta * det / (denom * denom));
}

// ----------------------------------------------------------------- framings

Mat2Q framing_matrix(const Framing& F) {
    // closed form ((v(u-w), u(w-v); u-w, w-v)) with infinity entries resolved
    // as limits (at most one of u, v, w is infinite)
    Rat a, b, c, d;
    if (F.u.is_infinity()) {
        Rat v = F.v.value(), w = F.w.value();
        a = v; b = w - v; c = 1; d = 0;
    } else if (F.v.is_infinity()) {
        Rat u = F.u.value(), w = F.w.value();
        a = u - w; b = -u; c = 0; d = -1;
    } else if (F.w.is_infinity()) {
        Rat u = F.u.value(), v = F.v.value();
        a = -v; b = u; c = -1; d = 1;
    } else {
        Rat u = F.u.value(), v = F.v.value(), w = F.w.value();
        a = v * (u - w);
        b = u * (w - v);
        c = u - w;
        d = w - v;
    }
    if (a * d - b * c <= 0)
        throw std::domain_error("framing_matrix: framing is degenerate or reversely oriented");
    return Mat2Q(a, b, c, d);
}

Mat2Q transition(const Framing& F, const Framing& Fbar) {
    return framing_matrix(F) * framing_matrix(Fbar).inverse();
}

std::vector<DecoratedPoint> stabilize(const std::vector<DecoratedPoint>& coords,
                                      const Framing& F, const DecoratedPoint& added,
                                      const Framing& Fbar) {
    for (const auto& p : coords)
        if (p.s == added.s) throw std::invalid_argument("stabilize: duplicate center");
    std::vector<DecoratedPoint> out = coords;
    auto slot = std::find_if(out.begin(), out.end(),
                             [&](const DecoratedPoint& p) { return added.s < p.s; });
    out.insert(slot, added);
    Mat2Q T = transition(F, Fbar);
    Mat2Q I;
    if (!T.proportional(I))
        for (auto& p : out) p = mobius_on_coordinates(p, T);
    return out;
}

// ------------------------------------------------------------- tessellations

EdgeKey::EdgeKey(ExtendedRational x, ExtendedRational y) {
    if (x == y) throw std::domain_error("EdgeKey: degenerate edge");
    if (y < x) std::swap(x, y);
    lo = std::move(x);
    hi = std::move(y);
}

bool EdgeKey::operator<(const EdgeKey& o) const {
    if (!(lo == o.lo)) return lo < o.lo;
    return hi < o.hi;
}

std::vector<EdgeKey> farey_edges(long G) {
    std::vector<EdgeKey> out;
    out.emplace_back(make_xrat(0, 1), make_xrat(1, 0));
    std::vector<std::pair<Int, Int>> l = {{0, 1}, {1, 0}, {0, -1}};
    for (long g = 1; g <= G; ++g) {
        std::vector<std::pair<Int, Int>> next;
        for (size_t i = 0; i + 1 < l.size(); ++i) {
            next.push_back(l[i]);
            std::pair<Int, Int> m{l[i].first + l[i + 1].first, l[i].second + l[i + 1].second};
            ExtendedRational xm(m.first, m.second);
            out.emplace_back(xm, ExtendedRational(l[i].first, l[i].second));
            out.emplace_back(xm, ExtendedRational(l[i + 1].first, l[i + 1].second));
            next.push_back(m);
        }
        next.push_back(l.back());
        l = std::move(next);
    }
    return out;
}

bool DecoratedTessellationTruncation::consistent() const {
    for (const auto& [e, lsq] : lambda_sqs) {
        auto i1 = vertices.find(e.lo), i2 = vertices.find(e.hi);
        if (i1 == vertices.end() || i2 == vertices.end()) return false;
        if (lambda_sq(i1->second, i2->second) != lsq) return false;
    }
    return true;
}

static Rat require_rational_sqrt(const Rat& r, const char* what) {
    Rat root;
    if (!rational_square(r, root))
        throw std::domain_error(std::string("build_tessellation: ") + what +
                                " is not a rational square");
    return root;
}

DecoratedTessellationTruncation build_tessellation(const std::map<EdgeKey, Rat>& lambda_sq_in,
                                                   long G) {
    auto fetch = [&](const ExtendedRational& x, const ExtendedRational& y) -> const Rat& {
        auto it = lambda_sq_in.find(EdgeKey(x, y));
        if (it == lambda_sq_in.end())
            throw std::invalid_argument("build_tessellation: missing lambda for edge " +
                                        x.str() + " -- " + y.str());
        if (it->second <= 0)
            throw std::domain_error("build_tessellation: lambda squares must be positive");
        return it->second;
    };
    DecoratedTessellationTruncation out;
    out.G = G;
    ExtendedRational zero = make_xrat(0, 1), inf = make_xrat(1, 0);
    const Rat& doe_sq = fetch(zero, inf);
    out.vertices[inf] = DecoratedPoint(inf, 1);
    out.vertices[zero] = DecoratedPoint(zero, 1 / doe_sq);
    out.lambda_sqs[EdgeKey(zero, inf)] = doe_sq;
    std::vector<std::pair<Int, Int>> l = {{0, 1}, {1, 0}, {0, -1}};
    for (long g = 1; g <= G; ++g) {
        std::vector<std::pair<Int, Int>> next;
        for (size_t i = 0; i + 1 < l.size(); ++i) {
            next.push_back(l[i]);
            std::pair<Int, Int> m{l[i].first + l[i + 1].first, l[i].second + l[i + 1].second};
            ExtendedRational xm(m.first, m.second);
            ExtendedRational P(l[i].first, l[i].second), Q(l[i + 1].first, l[i + 1].second);
            const Rat& alpha_sq = fetch(xm, P);
            const Rat& beta_sq = fetch(xm, Q);
            const DecoratedPoint& dP = out.vertices.at(P);
            const DecoratedPoint& dQ = out.vertices.at(Q);
            DecoratedPoint child;
            if (P.is_infinity() || Q.is_infinity()) {
                // one parent at infinity: delta forced, then walk from the
                // finite parent toward infinity's side
                bool p_inf = P.is_infinity();
                const DecoratedPoint& fin = p_inf ? dQ : dP;
                const Rat& to_inf_sq = p_inf ? alpha_sq : beta_sq;
                const Rat& to_fin_sq = p_inf ? beta_sq : alpha_sq;
                Rat delta = (p_inf ? dP.delta : dQ.delta) / to_inf_sq;
                Rat step = require_rational_sqrt(to_fin_sq * fin.delta * delta, "a step length");
                // gap (s_fin, oo) has the child to the right of the finite
                // parent; gap (oo, s_fin) to the left
                Rat s = p_inf ? fin.s.value() - step : fin.s.value() + step;
                child = DecoratedPoint(ExtendedRational(numerator(s), denominator(s)), delta);
            } else {
                Rat sP = dP.s.value(), sQ = dQ.s.value();
                Rat r1 = require_rational_sqrt(alpha_sq * dP.delta, "a weighted length");
                Rat r2 = require_rational_sqrt(beta_sq * dQ.delta, "a weighted length");
                Rat sqrt_delta = (sQ - sP) / (r1 + r2);
                Rat s = sP + r1 * sqrt_delta;
                child = DecoratedPoint(ExtendedRational(numerator(s), denominator(s)),
                                       sqrt_delta * sqrt_delta);
            }
            out.vertices[xm] = child;
            out.lambda_sqs[EdgeKey(xm, P)] = alpha_sq;
            out.lambda_sqs[EdgeKey(xm, Q)] = beta_sq;
            next.push_back(m);
        }
        next.push_back(l.back());
        l = std::move(next);
    }
    return out;
}

// --------------------------------------------------------------------- JSON

std::string DecoratedTessellationTruncation::to_json() const {
    nlohmann::ordered_json j;
    j["G"] = G;
    j["vertices"] = nlohmann::ordered_json::array();
    for (const auto& [x, p] : vertices) {
        nlohmann::ordered_json v;
        v["p"] = x.p.str();
        v["q"] = x.q.str();
        v["s"] = p.s.is_infinity() ? "1/0" : rat_str(p.s.value());
        v["delta"] = rat_str(p.delta);
        j["vertices"].push_back(v);
    }
    j["edges"] = nlohmann::ordered_json::array();
    for (const auto& [e, lsq] : lambda_sqs) {
        nlohmann::ordered_json je;
        je["label"] = matrix_to_word(element_from_edge(e.lo, e.hi)).str();
        je["lambda_sq"] = rat_str(lsq);
        j["edges"].push_back(je);
    }
    return j.dump(2);
}

DecoratedTessellationTruncation DecoratedTessellationTruncation::from_json(
    const std::string& text) {
    auto j = nlohmann::json::parse(text);
    DecoratedTessellationTruncation out;
    out.G = j.at("G").get<long>();
    for (const auto& v : j.at("vertices")) {
        ExtendedRational x(Int(v.at("p").get<std::string>()), Int(v.at("q").get<std::string>()));
        ExtendedRational s = parse_xrat(v.at("s").get<std::string>());
        out.vertices[x] = DecoratedPoint(s, parse_rat(v.at("delta").get<std::string>()));
    }
    for (const auto& e : j.at("edges")) {
        GroupElement A = word_to_matrix(parse_word(e.at("label").get<std::string>()));
        auto [x, y] = edge_endpoints(A);
        out.lambda_sqs[EdgeKey(x, y)] = parse_rat(e.at("lambda_sq").get<std::string>());
    }
    return out;
}

}  // namespace farey
