#include <farey/mcform.hpp>

#include <json.hpp>

#include <stdexcept>

namespace farey {

Sl2Element hyperbolic_log(const ExtendedRational& u, const ExtendedRational& v) {
    if (u == v) throw std::invalid_argument("hyperbolic_log: coincident endpoints");
    // conjugate of diag(1, -1) by the matrix with columns (p1, q1), (p2, q2)
    const Rat det = Rat(u.p) * Rat(v.q) - Rat(v.p) * Rat(u.q);
    return Sl2Element((Rat(u.p) * Rat(v.q) + Rat(v.p) * Rat(u.q)) / det,
                      Rat(-2) * Rat(u.p) * Rat(v.p) / det, Rat(2) * Rat(u.q) * Rat(v.q) / det);
}

PiecewiseField tessellation_wavelet(const ExtendedRational& u, const ExtendedRational& v,
                                    const ExtendedRational& wl, const ExtendedRational& wr) {
    return PiecewiseField({{v, hyperbolic_log(v, wl)},
                           {wl, hyperbolic_log(u, wl)},
                           {u, hyperbolic_log(u, wr)},
                           {wr, hyperbolic_log(v, wr)}});
}

OneFormTruncation one_form(const Framing& F, long G) {
    OneFormTruncation form{F, G, {}};
    for (const auto& e : farey_edges(G)) {
        form.table.emplace(e, normalized_wavelet(element_from_edge(e.lo, e.hi), F));
    }
    return form;
}

PiecewiseField apply(const OneFormTruncation& form, const EdgeTangent& t) {
    PiecewiseField total;
    for (const auto& [e, coeff] : t) {
        auto it = form.table.find(e);
        if (it == form.table.end()) {
            throw std::invalid_argument("apply: tangent supported outside the truncation at " +
                                        e.lo.str() + ".." + e.hi.str());
        }
        total = total + it->second * coeff;
    }
    return total;
}

namespace {

struct EdgeConfig {
    ExtendedRational u, v, wl, wr;
};

/// The five interior edges of the flipped tessellation with their adjacent
/// apexes: quadrilateral sides a, b, c, d counterclockwise from infinity,
/// then the new edge f.  The doe's quadrilateral neighbors change (f replaces
/// the doe as the fourth side), every other edge keeps its Farey apexes.
const std::map<char, EdgeConfig>& flipped_configs() {
    static const std::map<char, EdgeConfig> configs = {
        {'a', {make_xrat(1, 0), make_xrat(-1, 1), make_xrat(1, 1), make_xrat(-2, 1)}},
        {'b', {make_xrat(-1, 1), make_xrat(0, 1), make_xrat(1, 1), make_xrat(-1, 2)}},
        {'c', {make_xrat(0, 1), make_xrat(1, 1), make_xrat(-1, 1), make_xrat(1, 2)}},
        {'d', {make_xrat(1, 1), make_xrat(1, 0), make_xrat(-1, 1), make_xrat(2, 1)}},
        {'f', {make_xrat(1, 1), make_xrat(-1, 1), make_xrat(0, 1), make_xrat(1, 0)}},
    };
    return configs;
}

struct ArcSample {
    const char* name;
    ExtendedRational rep;  ///< interior point of the sub-arc
};

/// The eight sub-arcs cut out by the generation-<=2 quadrilateral vertices,
/// counterclockwise from infinity, with interior representatives.
const std::array<ArcSample, 8>& arc_samples() {
    static const std::array<ArcSample, 8> arcs = {{
        {"I-", make_xrat(-3, 1)},
        {"I+", make_xrat(-3, 2)},
        {"II-", make_xrat(-2, 3)},
        {"II+", make_xrat(-1, 4)},
        {"III-", make_xrat(1, 4)},
        {"III+", make_xrat(2, 3)},
        {"IV-", make_xrat(3, 2)},
        {"IV+", make_xrat(3, 1)},
    }};
    return arcs;
}

}  // namespace

std::map<char, PiecewiseField> flipped_wavelets(const Framing& F) {
    std::map<char, PiecewiseField> out;
    for (const auto& [key, cfg] : flipped_configs()) {
        out.emplace(key, normalize(tessellation_wavelet(cfg.u, cfg.v, cfg.wl, cfg.wr), F).first);
    }
    return out;
}

FlipReport verify_flip_invariance(int doe_case) {
    if (doe_case < 0 || doe_case > 4) {
        throw std::invalid_argument("verify_flip_invariance: case must be 0..4");
    }
    // normalizing framings: the standard one carried by the flipped edge,
    // then the framings induced by the four quadrilateral sides
    static const std::array<Framing, 5> framings = {
        standard_framing(),
        Framing(make_xrat(1, 0), make_xrat(-1, 1), make_xrat(-2, 1)),
        Framing(make_xrat(-1, 1), make_xrat(0, 1), make_xrat(-1, 2)),
        Framing(make_xrat(0, 1), make_xrat(1, 1), make_xrat(1, 2)),
        Framing(make_xrat(1, 1), make_xrat(1, 0), make_xrat(2, 1)),
    };
    const Framing& F = framings[static_cast<size_t>(doe_case)];

    const std::array<std::pair<char, GroupElement>, 5> labels = {{
        {'a', gen_S() * gen_T()},
        {'b', gen_S() * gen_U()},
        {'c', gen_U().inverse()},
        {'d', gen_T().inverse()},
        {'e', identity()},
    }};
    std::map<char, PiecewiseField> lhs;
    for (const auto& [key, A] : labels) lhs.emplace(key, normalized_wavelet(A, F));

    // flipped chart in the unflipped coordinates: the linearized Ptolemy
    // relation at the identity decoration gives f~ = (a~+b~+c~+d~)/2 - e~
    auto primed = flipped_wavelets(F);
    std::map<char, PiecewiseField> rhs;
    for (char x : {'a', 'b', 'c', 'd'}) {
        rhs.emplace(x, primed.at(x) + primed.at('f') * Rat(1, 2));
    }
    rhs.emplace('e', primed.at('f') * Rat(-1));

    FlipReport report;
    report.doe_case = doe_case;
    report.ok = true;
    for (const auto& arc : arc_samples()) {
        for (char x : {'a', 'b', 'c', 'd', 'e'}) {
            FlipArcCheck chk;
            chk.arc = arc.name;
            chk.var = x;
            chk.lhs = lhs.at(x).value_after(arc.rep);
            chk.rhs = rhs.at(x).value_after(arc.rep);
            chk.ok = (chk.lhs == chk.rhs);
            if (!chk.ok && report.ok) {
                report.ok = false;
                report.failed_arc = arc.name;
            }
            report.checks.push_back(std::move(chk));
        }
    }
    return report;
}

std::string FlipReport::to_json() const {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["doe_case"] = doe_case;
    j["convention"] = {
        {"decoration", "identity (all lambda = 1)"},
        {"substitution", "f~ = (a~+b~+c~+d~)/2 - e~"},
    };
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json jc;
        jc["arc"] = c.arc;
        jc["edge"] = std::string(1, c.var);
        jc["unflipped"] = c.lhs.str();
        jc["flipped"] = c.rhs.str();
        jc["difference"] = (c.lhs - c.rhs).str();
        jc["ok"] = c.ok;
        j["checks"].push_back(jc);
    }
    j["ok"] = ok;
    if (!ok) j["failed_arc"] = failed_arc;
    return j.dump(2);
}

}  // namespace farey
