#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <farey/harmonic.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace farey;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

GroupElement random_element(std::mt19937& rng, int len) {
    GroupElement A;
    std::uniform_int_distribution<int> pick(0, 4);
    for (int i = 0; i < len; ++i) {
        switch (pick(rng)) {
            case 0: A = A * gen_S(); break;
            case 1: A = A * gen_T(); break;
            case 2: A = A * gen_T().inverse(); break;
            case 3: A = A * gen_U(); break;
            default: A = A * gen_U().inverse(); break;
        }
    }
    return A;
}

/// Least-squares slope of log|c_n| against log n over the given modes.
double fitted_decay(const std::vector<std::pair<int, double>>& points) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [n, c] : points) {
        double x = std::log(static_cast<double>(n)), y = std::log(c);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double m = static_cast<double>(points.size());
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace

TEST_CASE("circle angles of the four quadrant corners") {
    CHECK(angle_of(make_xrat(1, 0)) == doctest::Approx(0.0));
    CHECK(angle_of(make_xrat(0, 1)) == doctest::Approx(kPi));
    CHECK(angle_of(make_xrat(1, 1)) == doctest::Approx(3 * kPi / 2));
    CHECK(angle_of(make_xrat(-1, 1)) == doctest::Approx(kPi / 2));
    // counterclockwise circle order is increasing angle starting from infinity
    CHECK(angle_of(make_xrat(1, 2)) > kPi);
    CHECK(angle_of(make_xrat(1, 2)) < 3 * kPi / 2);
    CHECK(angle_of(make_xrat(-2, 1)) < kPi / 2);
}

TEST_CASE("scalar_at_angle agrees with exact evaluation off breakpoints") {
    std::mt19937 rng(11);
    for (int t = 0; t < 10; ++t) {
        PiecewiseField f = hyperfan(random_element(rng, 4)) + wavelet(random_element(rng, 3));
        for (long p = -7; p <= 7; p += 3) {
            ExtendedRational x = make_xrat(2 * p + 1, 17);
            bool is_bp = false;
            for (const auto& [bp, v] : f.pieces()) is_bp |= (bp == x);
            if (is_bp) continue;
            double got = scalar_at_angle(f, angle_of(x));
            double want = static_cast<double>(evaluate(f, x));
            CHECK(got == doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("quadrature oracle on a global field") {
    PiecewiseField e(sl2_e());  // scalar cos(theta) - 1
    CHECK(std::abs(quadrature_oracle(e, 0) - Complex{-1.0, 0.0}) < 1e-14);
    CHECK(std::abs(quadrature_oracle(e, 1) - Complex{0.5, 0.0}) < 1e-14);
    CHECK(std::abs(quadrature_oracle(e, -1) - Complex{0.5, 0.0}) < 1e-14);
    CHECK(std::abs(quadrature_oracle(e, 2)) < 1e-14);
    CHECK(std::abs(quadrature_oracle(e, 5)) < 1e-14);
}

TEST_CASE("mother wavelet Fourier series") {
    PiecewiseField m = mother_wavelet();
    for (int n : {2, 6, 10, -2, -6}) {
        Complex want = 8.0 / (kPi * kI * (static_cast<double>(n) * n * n - n));
        CHECK(std::abs(quadrature_oracle(m, n) - want) < 1e-12);
        CHECK(std::abs(wavelet_fourier(identity(), n) - want) < 1e-12);
    }
    CHECK(std::abs(quadrature_oracle(m, 2) - Complex{0.0, -4 / (3 * kPi)}) < 1e-12);
    for (int n : {0, 1, -1, 3, 4, 5, 8}) {
        CHECK(std::abs(quadrature_oracle(m, n)) < 1e-12);
    }
    for (int n : {3, 4, 5, 8, -3, -4}) {
        CHECK(std::abs(wavelet_fourier(identity(), n)) < 1e-13);
    }
    CHECK_THROWS(wavelet_fourier(identity(), 1));
    CHECK_THROWS(wavelet_fourier(identity(), 0));
    CHECK_THROWS(wavelet_fourier(identity(), -1));
}

TEST_CASE("wavelet closed form matches the oracle on random elements") {
    std::mt19937 rng(23);
    for (int t = 0; t < 20; ++t) {
        GroupElement A = random_element(rng, 1 + t % 8);
        PiecewiseField w = normalized_wavelet(A, standard_framing());
        for (int n = -64; n <= 64; ++n) {
            if (n * n <= 1) continue;
            Complex cf = wavelet_fourier(A, n);
            Complex qo = quadrature_oracle(w, n);
            CHECK(std::abs(cf - qo) <= 1e-9 * std::max(1.0, std::abs(qo)));
        }
    }
}

TEST_CASE("hyperfan closed form: identity element") {
    // psi_I = e on the half circle left of the doe; for even |n| >= 2 the
    // coefficient is -i n / (pi (n^2 - 1))
    for (int n : {2, 4, 6, -2, -4}) {
        Complex want = -kI * static_cast<double>(n) / (kPi * (static_cast<double>(n) * n - 1));
        CHECK(std::abs(hyperfan_fourier(identity(), n) - want) < 1e-13);
        CHECK(std::abs(quadrature_oracle(hyperfan(identity()), n) - want) < 1e-13);
    }
    CHECK(std::abs(hyperfan_fourier(identity(), 0) - Complex{-0.5, 0.0}) < 1e-13);
    CHECK(std::abs(hyperfan_fourier(identity(), 1) - Complex{0.25, 1 / kPi}) < 1e-13);
}

TEST_CASE("hyperfan closed form matches the oracle on random elements") {
    std::mt19937 rng(29);
    for (int t = 0; t < 20; ++t) {
        GroupElement A = random_element(rng, 1 + t % 8);
        PiecewiseField h = hyperfan(A);
        for (int n = -64; n <= 64; ++n) {
            Complex cf = hyperfan_fourier(A, n);
            Complex qo = quadrature_oracle(h, n);
            CHECK(std::abs(cf - qo) <= 1e-9 * std::max(1.0, std::abs(qo)));
        }
    }
}

TEST_CASE("reality: coefficients of real fields are conjugate-symmetric") {
    std::mt19937 rng(31);
    for (int t = 0; t < 8; ++t) {
        GroupElement A = random_element(rng, 2 + t % 6);
        for (int n : {1, 2, 3, 7, 20}) {
            Complex hp = hyperfan_fourier(A, n), hm = hyperfan_fourier(A, -n);
            CHECK(std::abs(hm - std::conj(hp)) < 1e-12);
            if (n > 1) {
                Complex wp = wavelet_fourier(A, n), wm = wavelet_fourier(A, -n);
                CHECK(std::abs(wm - std::conj(wp)) < 1e-12);
            }
            PiecewiseField f = hyperfan(A);
            CHECK(std::abs(quadrature_oracle(f, -n) - std::conj(quadrature_oracle(f, n))) <
                  1e-12);
        }
    }
}

TEST_CASE("decay exponents: cubic for wavelets, linear for hyperfans") {
    // mother wavelet: only n = 2 (mod 4) modes survive
    std::vector<std::pair<int, double>> wpts;
    for (int n = 10; n <= 512; n *= 2) {
        int m = n - (n - 2) % 4;  // nearest mode = 2 mod 4 below n
        wpts.emplace_back(m, std::abs(wavelet_fourier(identity(), m)));
    }
    CHECK(std::abs(fitted_decay(wpts) + 3.0) < 0.1);

    std::vector<std::pair<int, double>> hpts;
    for (int n = 8; n <= 512; n *= 2) {
        hpts.emplace_back(n, std::abs(hyperfan_fourier(identity(), n)));
    }
    CHECK(std::abs(fitted_decay(hpts) + 1.0) < 0.1);
}

TEST_CASE("wavelet_series collects closed forms with oracle low modes") {
    GroupElement A = gen_S() * gen_T();
    FourierSeries s = wavelet_series(A, 6);
    CHECK(s.coefficients.size() == 13);
    PiecewiseField w = normalized_wavelet(A, standard_framing());
    for (const auto& [n, c] : s.coefficients) {
        CHECK(std::abs(c - quadrature_oracle(w, n)) < 1e-12);
        CHECK(std::abs(s.coefficients.at(-n) - std::conj(c)) < 1e-12);
    }
}

TEST_CASE("circle-generator expansion: low-mode table and edge coefficients") {
    // n = 0 and n = 1 are exactly the constant and first-harmonic fields
    for (const auto& e : farey_edges(3)) {
        CHECK(std::abs(witt_edge_coefficient(0, e.lo, e.hi)) < 1e-14);
        CHECK(std::abs(witt_edge_coefficient(1, e.lo, e.hi)) < 1e-14);
    }
    auto t0 = witt_low_modes(0);
    CHECK(t0[0] == Complex{1, 0});
    CHECK(t0[1] == Complex{0, 0});
    CHECK(t0[2] == Complex{0, 0});
    auto t2 = witt_low_modes(2);
    CHECK(t2[0] == Complex{1, 0});
    CHECK(t2[1] == Complex{0, -1});
    CHECK(t2[2] == Complex{0, 1});
    auto t1 = witt_low_modes(1);
    CHECK(t1[1] == Complex{1, 0});
    auto t3 = witt_low_modes(3);
    CHECK(t3[2] == Complex{1, 0});
    // symmetry in the edge endpoints
    auto c1 = witt_edge_coefficient(5, make_xrat(1, 2), make_xrat(1, 3));
    auto c2 = witt_edge_coefficient(5, make_xrat(1, 3), make_xrat(1, 2));
    CHECK(std::abs(c1 - c2) < 1e-14);
}

TEST_CASE("circle-generator partial sums converge to e^{in theta}") {
    auto worst = [](int n, long G) {
        double w = 0;
        for (int k = 1; k <= 19; k += 2) {
            double theta = 2 * kPi * k / 20.0 + 0.03;
            Complex v = witt_partial_sum(n, G, theta);
            Complex target = std::exp(kI * (static_cast<double>(n) * theta));
            w = std::max(w, std::abs(v - target));
        }
        return w;
    };
    CHECK(worst(0, 2) < 1e-12);
    CHECK(worst(1, 2) < 1e-12);
    for (int n : {2, 3, 4, -2}) {
        double e3 = worst(n, 3), e5 = worst(n, 5), e7 = worst(n, 7);
        CHECK(e5 < e3);
        CHECK(e7 < e5);
        CHECK(e7 < 5e-3);
    }
}
