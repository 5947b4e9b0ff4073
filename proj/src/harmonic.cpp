#include <farey/harmonic.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace farey {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

double to_double(const Rat& r) { return static_cast<double>(r); }
double to_double(const Int& n) { return static_cast<double>(n); }

/// Integral of e^{i m theta} over [a, b].
Complex exp_integral(int m, double a, double b) {
    if (m == 0) return Complex{b - a, 0.0};
    const Complex im{0.0, static_cast<double>(m)};
    return (std::exp(im * b) - std::exp(im * a)) / im;
}

/// Integral of the scalar of x times e^{-i n theta} over [a, b].  The scalar
/// P cos + Q sin + R splits into exponentials with exponents 1-n, -1-n, -n
/// and coefficients (P - iQ)/2, (P + iQ)/2, R.
Complex piece_integral(const Sl2Element& x, int n, double a, double b) {
    const double P = to_double(x.gamma + x.beta);
    const double Q = 2.0 * to_double(x.alpha);
    const double R = to_double(x.gamma - x.beta);
    Complex total = Complex{P / 2, -Q / 2} * exp_integral(1 - n, a, b);
    total += Complex{P / 2, Q / 2} * exp_integral(-1 - n, a, b);
    total += R * exp_integral(-n, a, b);
    return total;
}

Complex ipow(const Complex& z, int n) {
    return std::pow(z, static_cast<double>(n));
}

/// The circle image of p/q as a complex number of modulus one.
Complex circle_complex(const ExtendedRational& x) {
    auto [re, im] = circle_image(x);
    return {to_double(re), to_double(im)};
}

}  // namespace

double angle_of(const ExtendedRational& x) {
    auto [re, im] = circle_image(x);
    double theta = std::atan2(to_double(im), to_double(re));
    if (theta < 0) theta += 2 * kPi;
    return theta;
}

double scalar_at_angle(const PiecewiseField& f, double theta) {
    theta = std::fmod(theta, 2 * kPi);
    if (theta < 0) theta += 2 * kPi;
    const Sl2Element* val = nullptr;
    if (f.is_global()) {
        val = &f.global_value();
    } else {
        // owner = piece with the largest breakpoint angle <= theta, wrapping
        // around to the last piece below the smallest breakpoint angle
        double best = -1.0;
        for (const auto& [bp, v] : f.pieces()) {
            double a = angle_of(bp);
            if (a <= theta && a > best) {
                best = a;
                val = &v;
            }
        }
        if (val == nullptr) {
            double top = -1.0;
            for (const auto& [bp, v] : f.pieces()) {
                double a = angle_of(bp);
                if (a > top) {
                    top = a;
                    val = &v;
                }
            }
        }
    }
    const double P = to_double(val->gamma + val->beta);
    const double Q = 2.0 * to_double(val->alpha);
    const double R = to_double(val->gamma - val->beta);
    return P * std::cos(theta) + Q * std::sin(theta) + R;
}

Complex quadrature_oracle(const PiecewiseField& f, int n) {
    Complex total{0.0, 0.0};
    if (f.is_global()) {
        total = piece_integral(f.global_value(), n, 0.0, 2 * kPi);
    } else {
        const auto& ps = f.pieces();
        for (size_t j = 0; j < ps.size(); ++j) {
            double a = angle_of(ps[j].first);
            double b = angle_of(ps[(j + 1) % ps.size()].first);
            if (b <= a) b += 2 * kPi;
            total += piece_integral(ps[j].second, n, a, b);
        }
    }
    return total / (2 * kPi);
}

Complex wavelet_fourier(const GroupElement& A, int n) {
    if (n * n <= 1) throw std::invalid_argument("wavelet_fourier: need |n| >= 2");
    const double a = to_double(A.a), b = to_double(A.b);
    const double c = to_double(A.c), d = to_double(A.d);
    auto term = [&](double coef, const Complex& num, const Complex& den) -> Complex {
        if (coef == 0.0) return {0.0, 0.0};
        return coef * ipow(num / den, n);
    };
    Complex sum{0.0, 0.0};
    sum += term(-((c - a) * (c - a) + (b - d) * (b - d)),
                Complex{b - d, -(a - c)}, Complex{b - d, a - c});
    sum += term(2 * (c * c + d * d), Complex{d, -c}, Complex{d, c});
    sum += term(2 * (a * a + b * b), Complex{b, -a}, Complex{b, a});
    sum += term(-((c + a) * (c + a) + (b + d) * (b + d)),
                Complex{b + d, -(a + c)}, Complex{b + d, a + c});
    const double n3 = static_cast<double>(n) * n * n - n;
    return sum / (kPi * kI * n3);
}

Complex hyperfan_fourier(const GroupElement& A, int n) {
    // The value of hyperfan(A), as a function of the circle angle, is
    //   Dm e^{i theta} + Dp e^{-i theta} - C
    // with Dm = (d - ic)^2/2, Dp = (d + ic)^2/2, C = c^2 + d^2, supported on
    // the arc from the terminal to the initial edge endpoint.  With
    // zeta(theta) = e^{-i theta}, the endpoints give zeta_+ = (d-ic)/(d+ic)
    // (terminal) and zeta_- = (b-ia)/(b+ia) (initial), and the exact
    // antiderivative of the integrand times e^{-i n theta} evaluates to the
    // expressions below.
    const double c = to_double(A.c), d = to_double(A.d);
    const Complex dm = Complex{d, -c} * Complex{d, -c} / 2.0;
    const Complex dp = Complex{d, c} * Complex{d, c} / 2.0;
    const double C = c * c + d * d;
    const Complex zm = Complex{to_double(A.b), -to_double(A.a)} /
                       Complex{to_double(A.b), to_double(A.a)};
    const Complex zp = Complex{d, -c} / Complex{d, c};
    if (n * n > 1) {
        auto val = [&](const Complex& z) -> Complex {
            return -dm * ipow(z, n - 1) / (n - 1.0) - dp * ipow(z, n + 1) / (n + 1.0) +
                   C * ipow(z, n) / static_cast<double>(n);
        };
        return (val(zm) - val(zp)) / (2 * kPi * kI);
    }
    auto [init, term] = edge_endpoints(A);
    double len = angle_of(init) - angle_of(term);  // support arc length
    while (len <= 0) len += 2 * kPi;
    Complex total;
    if (n == 0) {
        total = dm * (1.0 / zm - 1.0 / zp) - dp * (zm - zp) - kI * C * len;
    } else if (n == 1) {
        total = kI * dm * len - dp / 2.0 * (zm * zm - zp * zp) + C * (zm - zp);
    } else {  // n == -1
        total = dm / 2.0 * (1.0 / (zm * zm) - 1.0 / (zp * zp)) + kI * dp * len -
                C * (1.0 / zm - 1.0 / zp);
    }
    return total / (2 * kPi * kI);
}

FourierSeries wavelet_series(const GroupElement& A, int nmax) {
    FourierSeries s;
    s.nmax = nmax;
    PiecewiseField low;
    bool have_low = false;
    for (int n = -nmax; n <= nmax; ++n) {
        if (n * n > 1) {
            s.coefficients[n] = wavelet_fourier(A, n);
        } else {
            if (!have_low) {
                low = normalized_wavelet(A, standard_framing());
                have_low = true;
            }
            s.coefficients[n] = quadrature_oracle(low, n);
        }
    }
    return s;
}

Complex witt_edge_coefficient(int n, const ExtendedRational& x, const ExtendedRational& y) {
    const Complex xi = circle_complex(x);
    const Complex eta = circle_complex(y);
    const Complex sum = ipow(xi, n) + ipow(eta, n);
    const Complex diff = ipow(xi, n) - ipow(eta, n);
    return kI / 4.0 *
           (static_cast<double>(n) * sum + (eta + xi) / (eta - xi) * diff);
}

std::array<Complex, 3> witt_low_modes(int n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return {Complex{1, 0}, Complex{0, 0}, Complex{0, 0}};
        case 1: return {Complex{0, 0}, Complex{1, 0}, Complex{0, 0}};
        case 2: return {Complex{1, 0}, Complex{0, -1}, Complex{0, 1}};
        default: return {Complex{0, 0}, Complex{0, 0}, Complex{1, 0}};
    }
}

Complex witt_partial_sum(int n, long G, double theta) {
    const auto low = witt_low_modes(n);
    Complex v = low[0] + low[1] * std::exp(kI * theta) + low[2] * std::exp(-kI * theta);
    const Framing F = standard_framing();
    for (const auto& e : farey_edges(G)) {
        const Complex coef = witt_edge_coefficient(n, e.lo, e.hi);
        const PiecewiseField w = normalized_wavelet(element_from_edge(e.lo, e.hi), F);
        v += coef * scalar_at_angle(w, theta);
    }
    return v;
}

}  // namespace farey
