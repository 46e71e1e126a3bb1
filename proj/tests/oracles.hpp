#pragma once

// Reference implementations used only by tests. Everything here avoids the
// library's transform path: direct mode sums, analytic derivatives, and
// plain quadrature, so disagreement points at the implementation.

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "mhdwave/grid.hpp"
#include "mhdwave/spectral.hpp"

namespace oracle {

using mhdwave::Grid;
using mhdwave::ScalarField;
using mhdwave::SpectralField;
using mhdwave::VectorField;

constexpr double pi = 3.14159265358979323846;

// Direct O(size^2) DFT in the exp(i xi . x) basis, 2D only.
inline std::vector<std::complex<double>> dense_dft(const ScalarField& f) {
    const Grid& g = f.grid();
    const int N = g.points;
    std::vector<std::complex<double>> out(static_cast<size_t>(g.size()));
    for (int m0 = 0; m0 < N; ++m0) {
        for (int m1 = 0; m1 < N; ++m1) {
            const double k0 = g.wavenumber(m0), k1 = g.wavenumber(m1);
            std::complex<double> acc(0.0, 0.0);
            for (int j0 = 0; j0 < N; ++j0) {
                for (int j1 = 0; j1 < N; ++j1) {
                    const double phase = -(k0 * g.coord(j0) + k1 * g.coord(j1));
                    acc += f[static_cast<std::int64_t>(j0) * N + j1] *
                           std::complex<double>(std::cos(phase), std::sin(phase));
                }
            }
            out[static_cast<size_t>(m0) * N + m1] = acc / static_cast<double>(g.size());
        }
    }
    return out;
}

// Synthesize one mode-pair field A cos(xi . x + phase) pointwise.
inline ScalarField cosine_field(const Grid& g, const std::array<int, 3>& m, double amp, double phase) {
    ScalarField f(g);
    int idx[3];
    for (std::int64_t i = 0; i < g.size(); ++i) {
        mhdwave::unflatten(g, i, idx);
        double arg = phase;
        for (int d = 0; d < g.n_dims; ++d) arg += m[static_cast<size_t>(d)] * pi / g.half_length * g.coord(idx[d]);
        f[i] = amp * std::cos(arg);
    }
    return f;
}

// Smooth random band-limited field: a fixed low-mode cosine mix, seeded.
inline ScalarField random_smooth_field(const Grid& g, unsigned seed, int max_mode = 4) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::uniform_real_distribution<double> ph(0.0, 2.0 * pi);
    ScalarField f(g);
    for (int m0 = -max_mode; m0 <= max_mode; ++m0) {
        for (int m1 = -max_mode; m1 <= max_mode; ++m1) {
            if (g.n_dims == 2) {
                if (m0 == 0 && m1 == 0) continue;
                ScalarField c = cosine_field(g, {m0, m1, 0}, amp(rng) / (1.0 + m0 * m0 + m1 * m1), ph(rng));
                for (std::int64_t i = 0; i < f.size(); ++i) f[i] += c[i];
            } else {
                for (int m2 = -max_mode; m2 <= max_mode; ++m2) {
                    if (m0 == 0 && m1 == 0 && m2 == 0) continue;
                    ScalarField c = cosine_field(g, {m0, m1, m2},
                                                 amp(rng) / (1.0 + m0 * m0 + m1 * m1 + m2 * m2), ph(rng));
                    for (std::int64_t i = 0; i < f.size(); ++i) f[i] += c[i];
                }
            }
        }
    }
    return f;
}

// Divergence-free random smooth vector field via the production projector is
// not an oracle; this one uses analytic curl form in 2D: u = (d2 psi, -d1 psi)
// with psi a cosine mix whose derivatives are taken analytically.
inline VectorField random_divfree_2d(const Grid& g, unsigned seed, int max_mode = 4) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::uniform_real_distribution<double> ph(0.0, 2.0 * pi);
    VectorField u(g);
    int idx[3];
    for (int m0 = -max_mode; m0 <= max_mode; ++m0) {
        for (int m1 = -max_mode; m1 <= max_mode; ++m1) {
            if (m0 == 0 && m1 == 0) continue;
            const double a = amp(rng) / (1.0 + m0 * m0 + m1 * m1);
            const double p = ph(rng);
            const double k0 = m0 * pi / g.half_length, k1 = m1 * pi / g.half_length;
            for (std::int64_t i = 0; i < g.size(); ++i) {
                mhdwave::unflatten(g, i, idx);
                const double arg = k0 * g.coord(idx[0]) + k1 * g.coord(idx[1]) + p;
                // psi = a cos(arg): d2 psi = -a k1 sin(arg), d1 psi = -a k0 sin(arg)
                u.comp(0)[i] += -a * k1 * std::sin(arg);
                u.comp(1)[i] += a * k0 * std::sin(arg);
            }
        }
    }
    return u;
}

// Transverse single mode: amp * sin(xi.x + phase) * perp(xi)/|xi| in 2D.
inline VectorField single_mode_2d(const Grid& g, const std::array<int, 2>& m, double amp,
                                  double phase = 0.0) {
    const double k0 = m[0] * pi / g.half_length, k1 = m[1] * pi / g.half_length;
    const double kn = std::sqrt(k0 * k0 + k1 * k1);
    const double p0 = -k1 / kn, p1 = k0 / kn;
    VectorField u(g);
    int idx[3];
    for (std::int64_t i = 0; i < g.size(); ++i) {
        mhdwave::unflatten(g, i, idx);
        const double s = amp * std::sin(k0 * g.coord(idx[0]) + k1 * g.coord(idx[1]) + phase);
        u.comp(0)[i] = s * p0;
        u.comp(1)[i] = s * p1;
    }
    return u;
}

// Closed-form pressure for a transverse-mode pair: lambda_minus at mode eta,
// lambda_plus at mode xi (both sin, zero phase). The tensor product has modes
// eta -+ xi only, so p follows mode by mode from -lap p = div div T.
inline ScalarField two_mode_pressure_2d(const Grid& g, const std::array<int, 2>& m_minus,
                                        double amp_minus, const std::array<int, 2>& m_plus,
                                        double amp_plus) {
    const double e0 = m_minus[0] * pi / g.half_length, e1 = m_minus[1] * pi / g.half_length;
    const double x0 = m_plus[0] * pi / g.half_length, x1 = m_plus[1] * pi / g.half_length;
    const double en = std::sqrt(e0 * e0 + e1 * e1), xn = std::sqrt(x0 * x0 + x1 * x1);
    // transverse polarizations
    const double q0 = -e1 / en, q1 = e0 / en;  // for lambda_minus
    const double r0 = -x1 / xn, r1 = x0 / xn;  // for lambda_plus
    // sin a sin b = (cos(a-b) - cos(a+b))/2 with a = eta.x, b = xi.x
    const double km0 = e0 - x0, km1 = e1 - x1;  // kappa_minus
    const double kp0 = e0 + x0, kp1 = e1 + x1;  // kappa_plus
    const double c = 0.5 * amp_minus * amp_plus;
    ScalarField p(g);
    int idx[3];
    auto add_mode = [&](double k0, double k1, double sign) {
        const double k2 = k0 * k0 + k1 * k1;
        if (k2 == 0.0) return;  // zero mode of p is dropped
        // div div of cos(k.x) q r^T: (k.q)(k.r) * (-cos); -lap p = that
        const double coeff = sign * c * (k0 * q0 + k1 * q1) * (k0 * r0 + k1 * r1) / k2;
        for (std::int64_t i = 0; i < g.size(); ++i) {
            mhdwave::unflatten(g, i, idx);
            p[i] += coeff * std::cos(k0 * g.coord(idx[0]) + k1 * g.coord(idx[1]));
        }
    };
    add_mode(km0, km1, -1.0);
    add_mode(kp0, kp1, +1.0);
    return p;
}

// Transverse single mode in 3D with an explicit unit polarization
// orthogonal to the wavevector.
inline VectorField single_mode_3d(const Grid& g, const std::array<int, 3>& m,
                                  const std::array<double, 3>& pol, double amp,
                                  double phase = 0.0) {
    double k[3], kp = 0.0, pn = 0.0;
    for (int d = 0; d < 3; ++d) {
        k[d] = m[d] * pi / g.half_length;
        kp += k[d] * pol[d];
        pn += pol[d] * pol[d];
    }
    if (std::abs(kp) > 1e-12 || std::abs(pn - 1.0) > 1e-12)
        throw std::invalid_argument("single_mode_3d: polarization must be unit and transverse");
    VectorField u(g);
    int idx[3];
    for (std::int64_t i = 0; i < g.size(); ++i) {
        mhdwave::unflatten(g, i, idx);
        double theta = phase;
        for (int d = 0; d < 3; ++d) theta += k[d] * g.coord(idx[d]);
        const double s = amp * std::sin(theta);
        for (int d = 0; d < 3; ++d) u.comp(d)[i] = s * pol[d];
    }
    return u;
}

inline double dot(const ScalarField& a, const ScalarField& b) {
    const Grid& g = a.grid();
    double s = 0.0;
    for (std::int64_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    double cell = 1.0;
    for (int d = 0; d < g.n_dims; ++d) cell *= g.spacing;
    return s * cell;
}

inline double dot(const VectorField& a, const VectorField& b) {
    double s = 0.0;
    for (int c = 0; c < a.n_comps(); ++c) s += dot(a.comp(c), b.comp(c));
    return s;
}

// E_k contribution of one transverse mode amp*sin(xi.x+phase)*pol (|pol| = 1)
// by direct lattice summation with analytic trig derivatives: |d^a field|^2 =
// amp^2 (prod xi_d^(2 a_d)) times cos^2 for odd |a|, sin^2 for even.
inline double dense_mode_energy(const Grid& g, const std::array<double, 3>& xi, double amp,
                                double phase, const mhdwave::Direction& e, double t,
                                double weight_sign, double mu, int k) {
    std::vector<double> P(k + 1, 0.0);
    for (const mhdwave::MultiIndex& a : mhdwave::multi_indices(g.n_dims, 0, k)) {
        double p = 1.0;
        for (int d = 0; d < g.n_dims; ++d) p *= std::pow(xi[d] * xi[d], a[d]);
        P[mhdwave::order(a)] += p;
    }
    double cell = 1.0;
    for (int d = 0; d < g.n_dims; ++d) cell *= g.spacing;
    double acc = 0.0;
    int idx[3];
    for (std::int64_t i = 0; i < g.size(); ++i) {
        mhdwave::unflatten(g, i, idx);
        double theta = phase, r2 = 0.0;
        for (int d = 0; d < g.n_dims; ++d) {
            const double x = g.coord(idx[d]);
            theta += xi[d] * x;
            const double w = x + weight_sign * e[d] * t;
            r2 += w * w;
        }
        const double s2 = std::sin(theta) * std::sin(theta);
        const double c2 = 1.0 - s2;
        const double A = std::pow(1.0 + r2, 2.0 * mu);
        double hi = 0.0;
        for (int j = 1; j <= k; ++j) hi += P[j] * (j % 2 == 1 ? c2 : s2);
        acc += A * hi + std::sqrt(A) * s2;  // P[0] = 1
    }
    return acc * cell * amp * amp;
}

// Adaptive Simpson on [a,b], independent of the library's quadrature.
inline double simpson_adaptive(const std::function<double(double)>& f, double a, double b,
                               double tol, int depth = 30) {
    auto simpson = [&](double lo, double hi) {
        return (hi - lo) / 6.0 * (f(lo) + 4.0 * f(0.5 * (lo + hi)) + f(hi));
    };
    std::function<double(double, double, double, int)> rec = [&](double lo, double hi, double whole,
                                                                 int d) -> double {
        const double mid = 0.5 * (lo + hi);
        const double left = simpson(lo, mid), right = simpson(mid, hi);
        if (d <= 0 || std::abs(left + right - whole) < 15.0 * tol) return left + right;
        return rec(lo, mid, left, d - 1) + rec(mid, hi, right, d - 1);
    };
    return rec(a, b, simpson(a, b), depth);
}

}  // namespace oracle
