#include <farey/eisenstein.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace farey {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Cx kI{0.0, 1.0};

std::vector<long long> divisor_sums(int N, int power) {
    std::vector<long long> s(static_cast<size_t>(N) + 1, 0);
    for (int d = 1; d <= N; ++d) {
        long long dp = 1;
        for (int e = 0; e < power; ++e) dp *= d;
        for (int m = d; m <= N; m += d) s[static_cast<size_t>(m)] += dp;
    }
    return s;
}

/// Direct series sum with tail bound; requires the point to be reduced
/// (Im z large enough that |q| is small).
SeriesEval series_sum(Cx z, int N, double a0, double scale, int power) {
    const Cx q = std::exp(2.0 * kPi * kI * z);
    const double aq = std::abs(q);
    auto sums = divisor_sums(N, power);
    Cx total{a0, 0.0};
    Cx qn{1.0, 0.0};
    for (int n = 1; n <= N; ++n) {
        qn *= q;
        total += scale * static_cast<double>(sums[static_cast<size_t>(n)]) * qn;
    }
    // sigma_p(n) <= n^{p+1}, and the term ratio beyond N is at most r < 1
    const double np = std::pow(static_cast<double>(N) + 1.0, power + 1);
    const double r = aq * std::pow((static_cast<double>(N) + 2.0) / (N + 1.0), power + 1);
    double tail = std::numeric_limits<double>::infinity();
    if (r < 1.0) tail = std::abs(scale) * np * std::pow(aq, N + 1) / (1.0 - r);
    return {total, tail};
}

SeriesEval e2_reduce(Cx z, int N, int depth) {
    if (!(z.imag() > 0)) throw std::invalid_argument("e2_eval: need Im z > 0");
    if (depth < 100) {
        const double xr = std::round(z.real());
        if (xr != 0.0) return e2_reduce(z - xr, N, depth + 1);
        if (std::abs(z) < 1.0 - 1e-15) {
            // E2(z) = (E2(-1/z) - (12/(2 pi i)) z) / z^2
            auto inner = e2_reduce(-1.0 / z, N, depth + 1);
            const Cx corr = (12.0 / (2.0 * kPi * kI)) * z;
            return {(inner.value - corr) / (z * z), inner.tail_bound / std::norm(z)};
        }
    }
    return series_sum(z, N, 1.0, -24.0, 1);
}

Cx e4_reduce(Cx z, int N, int depth) {
    if (!(z.imag() > 0)) throw std::invalid_argument("e4_eval: need Im z > 0");
    if (depth < 100) {
        const double xr = std::round(z.real());
        if (xr != 0.0) return e4_reduce(z - xr, N, depth + 1);
        if (std::abs(z) < 1.0 - 1e-15) {
            return e4_reduce(-1.0 / z, N, depth + 1) / std::pow(z, 4);
        }
    }
    return series_sum(z, N, 1.0, 240.0, 3).value;
}

}  // namespace

QSeries e2_series(int N) {
    if (N < 0) throw std::invalid_argument("e2_series: need N >= 0");
    auto sums = divisor_sums(N, 1);
    QSeries s;
    s.N = N;
    s.coefficients.reserve(static_cast<size_t>(N) + 1);
    s.coefficients.emplace_back(1);
    for (int n = 1; n <= N; ++n) {
        s.coefficients.emplace_back(Int(-24) * Int(sums[static_cast<size_t>(n)]));
    }
    return s;
}

SeriesEval e2_eval_bounded(Cx z, int N) { return e2_reduce(z, N, 0); }

Cx e2_eval(Cx z, int N) { return e2_reduce(z, N, 0).value; }

Cx e2_corrected(Cx z, int N) { return e2_eval(z, N) - 3.0 / (kPi * z.imag()); }

Cx e4_eval(Cx z, int N) { return e4_reduce(z, N, 0); }

std::array<double, 4> iwasawa_matrix(const GroupPoint& g) {
    if (!(g.y > 0)) throw std::invalid_argument("iwasawa_matrix: need y > 0");
    const double ry = std::sqrt(g.y), c = std::cos(g.theta), s = std::sin(g.theta);
    return {ry * c - g.x * s / ry, ry * s + g.x * c / ry, -s / ry, c / ry};
}

Cx lift(const std::array<double, 4>& g, int k, const std::function<Cx(Cx)>& f) {
    const Cx denom = g[2] * kI + g[3];
    const Cx w = (g[0] * kI + g[1]) / denom;
    return std::pow(denom, -2 * k) * f(w);
}

Cx lift(const GroupPoint& g, int k, const std::function<Cx(Cx)>& f) {
    return lift(iwasawa_matrix(g), k, f);
}

std::function<Cx(GroupPoint)> lifted(int k, std::function<Cx(Cx)> f) {
    return [k, f = std::move(f)](const GroupPoint& g) { return lift(g, k, f); };
}

std::function<Cx(GroupPoint)> lifted_e2(int N) {
    return lifted(1, [N](Cx z) { return e2_corrected(z, N); });
}

Cx cayley_action(CayleyOp op, const std::function<Cx(GroupPoint)>& phi, const GroupPoint& g,
                 double h) {
    auto at = [&](double dx, double dy, double dt) {
        return phi(GroupPoint{g.x + dx, g.y + dy, g.theta + dt});
    };
    const Cx dtheta = (at(0, 0, h) - at(0, 0, -h)) / (2.0 * h);
    if (op == CayleyOp::H) return -kI * dtheta;
    const Cx dx = (at(h, 0, 0) - at(-h, 0, 0)) / (2.0 * h);
    const Cx dy = (at(0, h, 0) - at(0, -h, 0)) / (2.0 * h);
    const Cx dzbar = 0.5 * (dx + kI * dy);
    const Cx core = g.y * dzbar - 0.25 * dtheta;
    if (op == CayleyOp::E) return 2.0 * kI * std::exp(2.0 * kI * g.theta) * core;
    return -2.0 * kI * std::exp(-2.0 * kI * g.theta) * core;
}

Cx casimir(const std::function<Cx(GroupPoint)>& phi, const GroupPoint& g, double h) {
    auto at = [&](double dx, double dy, double dt) {
        return phi(GroupPoint{g.x + dx, g.y + dy, g.theta + dt});
    };
    const Cx center = at(0, 0, 0);
    const Cx dxx = (at(h, 0, 0) - 2.0 * center + at(-h, 0, 0)) / (h * h);
    const Cx dyy = (at(0, h, 0) - 2.0 * center + at(0, -h, 0)) / (h * h);
    const Cx dxt =
        (at(h, 0, h) - at(h, 0, -h) - at(-h, 0, h) + at(-h, 0, -h)) / (4.0 * h * h);
    return g.y * g.y * (dxx + dyy) - g.y * dxt;
}

}  // namespace farey
