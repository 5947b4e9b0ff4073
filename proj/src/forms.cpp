#include <farey/forms.hpp>

#include <json.hpp>

#include <stdexcept>

namespace farey {

namespace {

/// tr(XY) for traceless X, Y in the (alpha, beta, gamma) encoding.
Rat trace_product(const Sl2Element& x, const Sl2Element& y) {
    return 2 * x.alpha * y.alpha + x.beta * y.gamma + x.gamma * y.beta;
}

Rat lookup(const EdgeTangent& t, const EdgeKey& e) {
    auto it = t.find(e);
    return it == t.end() ? Rat(0) : it->second;
}

}  // namespace

Rat la_cocycle(const PiecewiseField& f, const PiecewiseField& g) {
    Rat total = 0;
    for (const auto& [x, after] : g.pieces()) {
        const Sl2Element jump = after - g.value_before(x);
        const Sl2Element avg = f.value_after(x) + f.value_before(x);
        total += trace_product(avg, jump);
    }
    return total / 2;
}

Rat wp_form(const EdgeTangent& t1, const EdgeTangent& t2, long G) {
    auto wedge = [&](const EdgeKey& a, const EdgeKey& b) -> Rat {
        return lookup(t1, a) * lookup(t2, b) - lookup(t1, b) * lookup(t2, a);
    };
    Rat total = 0;
    for (long k = 1; k <= G; ++k) {
        const auto ring = farey_circle_order(k);
        const size_t n = ring.size();
        for (size_t i = 0; i < n; ++i) {
            if (generation(ring[i]) != k) continue;
            // new vertex z between its parents p (before) and q (after) in
            // counterclockwise order; clockwise edge order is (q,z), (z,p), (p,q)
            const ExtendedRational& p = ring[(i + n - 1) % n];
            const ExtendedRational& z = ring[i];
            const ExtendedRational& q = ring[(i + 1) % n];
            const EdgeKey a(q, z), b(z, p), c(p, q);
            total += wedge(a, b) + wedge(b, c) + wedge(c, a);
        }
    }
    return total * Rat(-2);
}

Complex kk_pairing(const std::map<int, Complex>& cf, const std::map<int, Complex>& cg,
                   const Complex& a) {
    Complex total{0.0, 0.0};
    for (const auto& [m, c] : cf) {
        auto it = cg.find(-m);
        if (it == cg.end()) continue;
        const double w = static_cast<double>(m) * m * m - m;
        total += a * w * c * it->second;
    }
    return total;
}

KKResult kk_form(const PiecewiseField& f, const PiecewiseField& g, const Complex& a, int M) {
    if (M < 2) throw std::invalid_argument("kk_form: need M >= 2");
    Complex total{0.0, 0.0};
    double cubic_mass = 0;  // max of |term| m^3 over the last modes
    for (int m = 2; m <= M; ++m) {
        const double w = static_cast<double>(m) * m * m - m;
        const Complex tp = a * w * quadrature_oracle(f, m) * quadrature_oracle(g, -m);
        const Complex tm = -a * w * quadrature_oracle(f, -m) * quadrature_oracle(g, m);
        total += tp + tm;
        if (m > M - 16) {
            const double m3 = static_cast<double>(m) * m * m;
            cubic_mass = std::max({cubic_mass, std::abs(tp) * m3, std::abs(tm) * m3});
        }
    }
    // sum_{m > M} C/m^3 <= C / (2 M^2)
    return {total, cubic_mass / (2.0 * static_cast<double>(M) * M)};
}

RatioReport ratio_report(long G) {
    const auto edges = farey_edges(G);
    const Framing F = standard_framing();
    std::map<EdgeKey, PiecewiseField> wavelets;
    for (const auto& e : edges) {
        wavelets.emplace(e, normalized_wavelet(element_from_edge(e.lo, e.hi), F));
    }
    RatioReport report;
    report.constant = true;
    bool have_ratio = false;
    for (size_t i = 0; i < edges.size(); ++i) {
        for (size_t j = i + 1; j < edges.size(); ++j) {
            EdgeTangent t1{{edges[i], Rat(1)}}, t2{{edges[j], Rat(1)}};
            const Rat omega = wp_form(t1, t2, G + 2);
            if (omega == 0) continue;  // non-adjacent pairs are covered by tests
            const Rat gamma = la_cocycle(wavelets.at(edges[i]), wavelets.at(edges[j]));
            report.entries.push_back({edges[i], edges[j], gamma, omega});
            const Rat r = gamma / omega;
            if (!have_ratio) {
                report.ratio = r;
                have_ratio = true;
            } else if (r != report.ratio) {
                report.constant = false;
            }
        }
    }
    return report;
}

std::string RatioReport::to_json() const {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["convention"] = {
        {"clockwise", "as seen in the disk with its standard orientation"},
        {"decoration", "identity (all lambda = 1)"},
    };
    j["pairs"] = nlohmann::ordered_json::array();
    for (const auto& e : entries) {
        nlohmann::ordered_json jp;
        jp["e1"] = e.e1.lo.str() + ".." + e.e1.hi.str();
        jp["e2"] = e.e2.lo.str() + ".." + e.e2.hi.str();
        jp["gamma"] = rat_str(e.gamma);
        jp["omega"] = rat_str(e.omega);
        j["pairs"].push_back(jp);
    }
    j["ratio"] = rat_str(ratio);
    j["constant"] = constant;
    return j.dump(2);
}

}  // namespace farey
