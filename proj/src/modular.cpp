#include <farey/modular.hpp>

#include <algorithm>
#include <sstream>

namespace farey {

// ---------------------------------------------------------------- rationals

ExtendedRational::ExtendedRational(Int pp, Int qq) : p(std::move(pp)), q(std::move(qq)) {
    if (q == 0) {
        if (p == 0) throw std::domain_error("ExtendedRational: 0/0");
        p = 1;
        return;
    }
    if (q < 0) {
        p = -p;
        q = -q;
    }
    Int g = gcd(abs(p), q);
    if (g > 1) {
        p /= g;
        q /= g;
    }
}

Rat ExtendedRational::value() const {
    if (is_infinity()) throw std::domain_error("value() of infinity");
    return Rat(p, q);
}

bool ExtendedRational::operator<(const ExtendedRational& o) const {
    if (is_infinity()) return false;
    if (o.is_infinity()) return true;
    return p * o.q < o.p * q;
}

ExtendedRational make_xrat(long p, long q) { return ExtendedRational(Int(p), Int(q)); }

ExtendedRational parse_xrat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return ExtendedRational(Int(s), 1);
    return ExtendedRational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

std::pair<Rat, Rat> circle_image(const ExtendedRational& x) {
    Int n = x.p * x.p + x.q * x.q;
    return {Rat(x.p * x.p - x.q * x.q, n), Rat(-2 * x.p * x.q, n)};
}

// ------------------------------------------------------------ group elements

GroupElement::GroupElement(Int a_, Int b_, Int c_, Int d_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
    if (a * d - b * c != 1) throw std::domain_error("GroupElement: determinant != 1");
    if (c < 0 || (c == 0 && a < 0)) {
        a = -a;
        b = -b;
        c = -c;
        d = -d;
    }
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
    return GroupElement(a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c,
                        c * o.b + d * o.d);
}

GroupElement GroupElement::inverse() const { return GroupElement(d, -b, -c, a); }

bool GroupElement::operator<(const GroupElement& o) const {
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    if (c != o.c) return c < o.c;
    return d < o.d;
}

std::string GroupElement::str() const {
    std::ostringstream os;
    os << "(" << a << " " << b << "; " << c << " " << d << ")";
    return os.str();
}

GroupElement gen_S() { return GroupElement(0, -1, 1, 0); }
GroupElement gen_T() { return GroupElement(1, 1, 0, 1); }
GroupElement gen_U() { return GroupElement(1, 0, 1, 1); }
GroupElement gen_R() { return GroupElement(0, -1, 1, 1); }
GroupElement identity() { return GroupElement(1, 0, 0, 1); }

// ------------------------------------------------------------------- words

static GroupElement letter_matrix(Letter l) {
    switch (l) {
        case Letter::R: return gen_R();
        case Letter::R2: return gen_R() * gen_R();
        case Letter::S: return gen_S();
        case Letter::T: return gen_T();
        case Letter::Tinv: return gen_T().inverse();
        case Letter::U: return gen_U();
        case Letter::Uinv: return gen_U().inverse();
    }
    throw std::logic_error("unreachable");
}

static const char* letter_name(Letter l) {
    switch (l) {
        case Letter::R: return "R";
        case Letter::R2: return "R2";
        case Letter::S: return "S";
        case Letter::T: return "T";
        case Letter::Tinv: return "T-1";
        case Letter::U: return "U";
        case Letter::Uinv: return "U-1";
    }
    throw std::logic_error("unreachable");
}

std::string GroupWord::str() const {
    std::string out;
    for (size_t i = 0; i < letters.size(); ++i) {
        if (i) out += ".";
        out += letter_name(letters[i]);
    }
    return out;
}

GroupWord parse_word(const std::string& s) {
    GroupWord w;
    std::string tok;
    std::istringstream is(s);
    while (std::getline(is, tok, '.')) {
        if (tok.empty()) continue;
        if (tok == "R") w.letters.push_back(Letter::R);
        else if (tok == "R2") w.letters.push_back(Letter::R2);
        else if (tok == "S") w.letters.push_back(Letter::S);
        else if (tok == "T") w.letters.push_back(Letter::T);
        else if (tok == "T-1") w.letters.push_back(Letter::Tinv);
        else if (tok == "U") w.letters.push_back(Letter::U);
        else if (tok == "U-1") w.letters.push_back(Letter::Uinv);
        else throw std::invalid_argument("parse_word: unknown letter '" + tok + "'");
    }
    return w;
}

GroupElement word_to_matrix(const GroupWord& w) {
    GroupElement m = identity();
    for (Letter l : w.letters) m = m * letter_matrix(l);
    return m;
}

GroupWord matrix_to_word(const GroupElement& A) {
    // Reduce by left multiplications; each applied letter's inverse, in
    // application order, prefixes the word for A.
    Int a = A.a, b = A.b, c = A.c, d = A.d;
    GroupWord w;
    while (c != 0) {
        if (abs(a) < abs(c)) {
            // apply S on the left: (a b; c d) -> (-c -d; a b)
            Int na = -c, nb = -d;
            c = a;
            d = b;
            a = na;
            b = nb;
            w.letters.push_back(Letter::S);  // S is its own inverse
        } else {
            // apply T^-n on the left: subtract n * row2 from row1, with n the
            // nearest quotient of a/c; ties resolved toward non-negative n.
            Int fl = a / c;
            if ((a % c != 0) && ((a < 0) != (c < 0))) fl -= 1;  // true floor
            Int r_fl = a - fl * c;
            Int n = (2 * r_fl > abs(c) || (2 * r_fl == abs(c) && fl + 1 >= 0)) ? fl + 1 : fl;
            a -= n * c;
            b -= n * d;
            // inverse of T^-n is T^n
            Letter rep = n > 0 ? Letter::T : Letter::Tinv;
            for (Int i = 0; i < abs(n); ++i) w.letters.push_back(rep);
        }
    }
    // Now (a b; 0 d) with ad = 1, i.e. +-(1 m; 0 1) = T^m.
    Int m = (a == 1) ? b : -b;
    Letter rep = m > 0 ? Letter::T : Letter::Tinv;
    for (Int i = 0; i < abs(m); ++i) w.letters.push_back(rep);
    return w;
}

int commutant_coset(const GroupElement& A) {
    long s = 0;
    for (Letter l : matrix_to_word(A).letters) {
        switch (l) {
            case Letter::U: s += 1; break;
            case Letter::Uinv: s -= 1; break;
            case Letter::Tinv: s += 1; break;
            case Letter::T: s -= 1; break;
            case Letter::S: s += 3; break;
            case Letter::R: s += 2; break;
            case Letter::R2: s += 4; break;
        }
    }
    return static_cast<int>(((s % 6) + 6) % 6);
}

// ------------------------------------------------------------------ action

ExtendedRational act_right(const ExtendedRational& x, const GroupElement& A) {
    return ExtendedRational(x.p * A.d - x.q * A.b, x.q * A.a - x.p * A.c);
}

std::pair<ExtendedRational, ExtendedRational> edge_endpoints(const GroupElement& A) {
    return {ExtendedRational(-A.b, A.a), ExtendedRational(-A.d, A.c)};
}

GroupElement element_from_edge(const ExtendedRational& x, const ExtendedRational& y) {
    Int D = x.p * y.q - y.p * x.q;
    if (abs(D) != 1) throw std::domain_error("element_from_edge: endpoints not adjacent");
    // columns (a b) = (q1, -p1), (c d) = +-(q2, -p2) chosen to make det 1
    Int u = (D == 1) ? Int(1) : Int(-1);
    return GroupElement(x.q, -x.p, u * y.q, -u * y.p);
}

// -------------------------------------------------------------- generation

long generation(const ExtendedRational& x) {
    if ((x.p == 0 && x.q == 1) || x.is_infinity()) return 0;
    Int p = abs(x.p), q = x.q;
    long g = 0;
    // Sum of continued-fraction quotients equals the mediant-tree depth.
    while (q != 0) {
        g += static_cast<long>(p / q);
        Int r = p % q;
        p = q;
        q = r;
    }
    return g;
}

// Linear Stern-Brocot list over the whole circle: signed pairs running
// 0/1, (positives), 1/0, (negatives), back to 0/1 as (0,-1).
static std::vector<std::pair<Int, Int>> mediant_list(long G) {
    std::vector<std::pair<Int, Int>> l = {{0, 1}, {1, 0}, {0, -1}};
    for (long g = 1; g <= G; ++g) {
        std::vector<std::pair<Int, Int>> next;
        next.reserve(l.size() * 2);
        for (size_t i = 0; i + 1 < l.size(); ++i) {
            next.push_back(l[i]);
            next.emplace_back(l[i].first + l[i + 1].first, l[i].second + l[i + 1].second);
        }
        next.push_back(l.back());
        l = std::move(next);
    }
    return l;
}

ExtendedRational farey_enumeration(long n) {
    if (n < 0) throw std::domain_error("farey_enumeration: negative index");
    if (n == 0) return make_xrat(0, 1);
    if (n == 1) return make_xrat(1, 0);
    // Generation g >= 1 contributes 2^g points; they start at index 2^g.
    long g = 1;
    long base = 2;
    while (n >= 2 * base) {
        base *= 2;
        ++g;
    }
    long offset = n - base;  // position among generation-g points, ccw order
    auto prev = mediant_list(g - 1);
    long k = 0;
    for (size_t i = 0; i + 1 < prev.size(); ++i) {
        if (k == offset)
            return ExtendedRational(prev[i].first + prev[i + 1].first,
                                    prev[i].second + prev[i + 1].second);
        ++k;
    }
    throw std::logic_error("farey_enumeration: internal");
}

std::vector<ExtendedRational> farey_circle_order(long G) {
    auto l = mediant_list(G);
    std::vector<ExtendedRational> out;
    out.reserve(l.size() - 1);
    for (size_t i = 0; i + 1 < l.size(); ++i)
        out.emplace_back(l[i].first, l[i].second);
    return out;
}

// ---------------------------------------------------------- circular order

// Position counterclockwise from 0/1: 0/1, then positives increasing, then
// infinity, then negatives increasing.
static int circle_rank(const ExtendedRational& x) {
    if (x.is_infinity()) return 2;
    if (x.p == 0) return 0;
    return x.p > 0 ? 1 : 3;
}

bool circle_less(const ExtendedRational& x, const ExtendedRational& y) {
    int rx = circle_rank(x), ry = circle_rank(y);
    if (rx != ry) return rx < ry;
    if (rx == 1 || rx == 3) return x < y;
    return false;
}

bool ccw(const ExtendedRational& a, const ExtendedRational& b, const ExtendedRational& c) {
    if (a == b || b == c || a == c)
        throw std::invalid_argument("ccw: repeated arguments");
    bool ab = circle_less(a, b), bc = circle_less(b, c), ca = circle_less(c, a);
    return (ab && bc) || (bc && ca) || (ca && ab);
}

CirclePoint CirclePoint::from_rational(ExtendedRational x) {
    CirclePoint p;
    p.kind = Kind::rational;
    p.r = std::move(x);
    return p;
}

CirclePoint CirclePoint::from_turn(Rat turns) {
    CirclePoint p;
    p.kind = Kind::turn;
    p.t = std::move(turns);
    if (p.t < 0 || p.t >= 1) throw std::domain_error("CirclePoint: turns outside [0,1)");
    return p;
}

bool CirclePoint::operator<(const CirclePoint& o) const {
    if (kind != o.kind) throw std::invalid_argument("CirclePoint: mixed kinds compared");
    if (kind == Kind::turn) return t < o.t;
    return circle_less(r, o.r);
}

std::string CirclePoint::str() const {
    return kind == Kind::rational ? r.str() : ("turn " + rat_str(t));
}

bool ccw(const CirclePoint& a, const CirclePoint& b, const CirclePoint& c) {
    if (a == b || b == c || a == c)
        throw std::invalid_argument("ccw: repeated arguments");
    bool ab = a < b, bc = b < c, ca = c < a;
    return (ab && bc) || (bc && ca) || (ca && ab);
}

// --------------------------------------------- enumeration -> tessellation

EnumerationCorrespondence tessellation_from_enumeration(
    const std::vector<CirclePoint>& points, long G) {
    if (points.size() < 2)
        throw std::invalid_argument("tessellation_from_enumeration: need at least two points");
    EnumerationCorrespondence out;
    out.G = G;
    // Parallel linear lists over the circle (see mediant_list).
    std::vector<std::pair<Int, Int>> farey = {{0, 1}, {1, 0}, {0, -1}};
    std::vector<CirclePoint> img = {points[0], points[1], points[0]};
    out.vertex_map[make_xrat(0, 1)] = points[0];
    out.vertex_map[make_xrat(1, 0)] = points[1];
    out.edges.emplace_back(points[0], points[1]);
    for (long g = 1; g <= G; ++g) {
        std::vector<std::pair<Int, Int>> nf;
        std::vector<CirclePoint> ni;
        for (size_t i = 0; i + 1 < farey.size(); ++i) {
            nf.push_back(farey[i]);
            ni.push_back(img[i]);
            std::pair<Int, Int> med{farey[i].first + farey[i + 1].first,
                                    farey[i].second + farey[i + 1].second};
            // least-index listed point strictly inside the image gap
            const CirclePoint &lo = img[i], &hi = img[i + 1];
            std::optional<CirclePoint> found;
            for (const auto& z : points) {
                if (z == lo || z == hi) continue;
                if (ccw(lo, z, hi)) {
                    found = z;
                    break;
                }
            }
            if (!found)
                throw std::runtime_error(
                    "tessellation_from_enumeration: no listed point inside an interval");
            ExtendedRational fm(med.first, med.second);
            out.vertex_map[fm] = *found;
            out.edges.emplace_back(*found, lo);
            out.edges.emplace_back(*found, hi);
            nf.push_back(med);
            ni.push_back(*found);
        }
        nf.push_back(farey.back());
        ni.push_back(img.back());
        farey = std::move(nf);
        img = std::move(ni);
    }
    // order preservation: images, rotated to start at their minimum, must be
    // strictly increasing in circular position
    std::vector<CirclePoint> ring(img.begin(), img.end() - 1);
    size_t mi = 0;
    for (size_t i = 1; i < ring.size(); ++i)
        if (ring[i] < ring[mi]) mi = i;
    for (size_t i = 0; i + 1 < ring.size(); ++i) {
        const CirclePoint& x = ring[(mi + i) % ring.size()];
        const CirclePoint& y = ring[(mi + i + 1) % ring.size()];
        if (!(x < y))
            throw std::runtime_error("tessellation_from_enumeration: order not preserved");
    }
    return out;
}

// ------------------------------------------------------------ tessellations

void TruncatedTessellation::ensure_adjacency() const {
    if (!adjacency_.empty() || edges.empty()) return;
    for (const auto& e : edges) {
        adjacency_[e.first].push_back(e.second);
        adjacency_[e.second].push_back(e.first);
    }
}

std::optional<CirclePoint> TruncatedTessellation::apex_left(const CirclePoint& u,
                                                            const CirclePoint& v) const {
    ensure_adjacency();
    auto iu = adjacency_.find(u), iv = adjacency_.find(v);
    if (iu == adjacency_.end() || iv == adjacency_.end()) return std::nullopt;
    const auto& small = iu->second.size() <= iv->second.size() ? iu->second : iv->second;
    const auto& other = iu->second.size() <= iv->second.size() ? iv->second : iu->second;
    for (const auto& w : small) {
        if (w == u || w == v) continue;
        // left of directed (u,v): the ccw arc from v to u
        if (!ccw(v, w, u)) continue;
        if (std::find(other.begin(), other.end(), w) != other.end()) return w;
    }
    return std::nullopt;
}

TruncatedTessellation farey_tessellation(long G, const GroupElement& A) {
    TruncatedTessellation t;
    auto order = farey_circle_order(G);
    for (const auto& x : order) t.vertices.push_back(CirclePoint::from_rational(x));
    // Farey edges: endpoints p1/q1, p2/q2 with |p1 q2 - p2 q1| = 1; adjacent
    // pairs arise exactly as (ancestor, descendant) in the mediant recursion,
    // so enumerate them by re-running it.
    std::vector<std::pair<Int, Int>> l = {{0, 1}, {1, 0}, {0, -1}};
    t.edges.emplace_back(CirclePoint::from_rational(make_xrat(0, 1)),
                         CirclePoint::from_rational(make_xrat(1, 0)));
    for (long g = 1; g <= G; ++g) {
        std::vector<std::pair<Int, Int>> next;
        for (size_t i = 0; i + 1 < l.size(); ++i) {
            next.push_back(l[i]);
            std::pair<Int, Int> m{l[i].first + l[i + 1].first,
                                  l[i].second + l[i + 1].second};
            CirclePoint cm = CirclePoint::from_rational(ExtendedRational(m.first, m.second));
            t.edges.emplace_back(
                cm, CirclePoint::from_rational(ExtendedRational(l[i].first, l[i].second)));
            t.edges.emplace_back(cm, CirclePoint::from_rational(ExtendedRational(
                                         l[i + 1].first, l[i + 1].second)));
            next.push_back(m);
        }
        next.push_back(l.back());
        l = std::move(next);
    }
    auto ends = edge_endpoints(A);
    t.doe = {CirclePoint::from_rational(ends.first), CirclePoint::from_rational(ends.second)};
    return t;
}

TruncatedTessellation tessellation_of_correspondence(const EnumerationCorrespondence& c) {
    TruncatedTessellation t;
    for (const auto& [k, v] : c.vertex_map) t.vertices.push_back(v);
    t.edges = c.edges;
    t.doe = {c.vertex_map.at(make_xrat(0, 1)), c.vertex_map.at(make_xrat(1, 0))};
    return t;
}

// Apex of the Farey triangle over edge {x, y} lying in the open arc that
// contains probe; candidates are the mediant-sum and mediant-difference.
static ExtendedRational farey_apex(const ExtendedRational& x, const ExtendedRational& y,
                                   const ExtendedRational& probe_lo,
                                   const ExtendedRational& probe_hi) {
    ExtendedRational cand1(x.p + y.p, x.q + y.q);
    ExtendedRational cand2(x.p - y.p, x.q - y.q);
    // pick the candidate inside the ccw arc (probe_lo, probe_hi)
    if (ccw(probe_lo, cand1, probe_hi)) return cand1;
    return cand2;
}

CirclePoint characteristic_map(const TruncatedTessellation& tess, const ExtendedRational& x) {
    ExtendedRational fa = make_xrat(0, 1), fb = make_xrat(1, 0);
    CirclePoint ia = tess.doe.first, ib = tess.doe.second;
    if (x == fa) return ia;
    if (x == fb) return ib;
    while (true) {
        // keep x on the ccw arc from fa to fb
        if (!ccw(fa, x, fb)) {
            std::swap(fa, fb);
            std::swap(ia, ib);
        }
        ExtendedRational apexF = farey_apex(fa, fb, fa, fb);
        auto apexI = tess.apex_left(ib, ia);
        if (!apexI)
            throw std::runtime_error("characteristic_map: generation exceeds truncation depth");
        if (apexF == x) return *apexI;
        if (ccw(fa, x, apexF)) {
            fb = apexF;
            ib = *apexI;
        } else {
            fa = apexF;
            ia = *apexI;
        }
    }
}

}  // namespace farey
