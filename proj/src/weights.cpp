#include "mhdwave/weights.hpp"

#include <cmath>
#include <stdexcept>

namespace mhdwave {

void check_weight_spec(const WeightSpec& spec) {
    if (!(spec.mu > 0.5 && spec.mu < 2.0 / 3.0))
        throw std::invalid_argument("weight spec: mu must lie in (1/2, 2/3)");
    if (spec.k < spec.grid.n_dims + 3)
        throw std::invalid_argument("weight spec: k must be at least n_dims + 3");
    check_direction(spec.grid, spec.e);
}

double weight_value(const std::array<double, 3>& x, double t, int sign, double lambda,
                    const WeightSpec& spec) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("weight_value: sign must be +-1");
    double r2 = 0.0;
    for (int d = 0; d < spec.grid.n_dims; ++d) {
        const double a = x[d] + sign * spec.e[d] * t;
        r2 += a * a;
    }
    return std::pow(1.0 + r2, 0.5 * lambda);
}

namespace {

double bracket_pow(double s, double neg2mu) { return std::pow(1.0 + s * s, neg2mu); }

double simpson_rec(double a, double b, double fa, double fm, double fb, double whole, double tol,
                   int depth, double neg_mu) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = bracket_pow(lm, neg_mu), frm = bracket_pow(rm, neg_mu);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_rec(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, neg_mu) +
           simpson_rec(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, neg_mu);
}

}  // namespace

double ghost_q(double s, double mu) {
    if (!(mu > 0.5 && mu < 2.0 / 3.0))
        throw std::invalid_argument("ghost_q: mu must lie in (1/2, 2/3)");
    if (s == 0.0) return 0.0;
    const double b = std::abs(s);
    const double neg_mu = -mu;  // integrand (1+tau^2)^(-mu)
    const double fa = 1.0, fm = bracket_pow(0.5 * b, neg_mu), fb = bracket_pow(b, neg_mu);
    const double whole = b / 6.0 * (fa + 4.0 * fm + fb);
    const double val = simpson_rec(0.0, b, fa, fm, fb, whole, 1e-11, 60, neg_mu);
    return s < 0.0 ? -val : val;
}

double ghost_q_infinity(double mu) {
    if (!(mu > 0.5 && mu < 2.0 / 3.0))
        throw std::invalid_argument("ghost_q_infinity: mu must lie in (1/2, 2/3)");
    return 0.5 * std::sqrt(M_PI) * std::tgamma(mu - 0.5) / std::tgamma(mu);
}

GhostCoordinates ghost_coordinates(const Grid& g, const Direction& e, double t) {
    check_direction(g, e);
    GhostCoordinates out{ScalarField(g), ScalarField(g)};
    int idx[3];
    for (std::int64_t i = 0; i < g.size(); ++i) {
        unflatten(g, i, idx);
        double ex = 0.0;
        for (int d = 0; d < g.n_dims; ++d) ex += e[d] * g.coord(idx[d]);
        out.sigma_plus[i] = ex - t;
        out.sigma_minus[i] = -ex - t;
    }
    return out;
}

}  // namespace mhdwave
