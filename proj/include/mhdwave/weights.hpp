#pragma once

#include <array>

#include "mhdwave/grid.hpp"

namespace mhdwave {

// Parameters of the weighted functionals. mu sits in the open interval
// (1/2, 2/3); k is the top derivative order, at least n_dims + 3.
// literal_minus_weight reproduces a printed variant in which the minus
// family carries the same moving weight argument x + e t as the plus family;
// the default mirrors it to x - e t, which is what every estimate uses.
struct WeightSpec {
    double mu = 0.6;
    int k = 5;
    Direction e{1.0, 0.0, 0.0};
    Grid grid;
    bool literal_minus_weight = false;
};

void check_weight_spec(const WeightSpec& spec);

// (1 + |x + sign * e t|^2)^(lambda/2), the moving bracket weight.
double weight_value(const std::array<double, 3>& x, double t, int sign, double lambda,
                    const WeightSpec& spec);

// q(s) = integral_0^s (1+tau^2)^(-mu) dtau. Odd in s, bounded by
// ghost_q_infinity(mu). Adaptive Simpson, absolute error below 1e-10.
double ghost_q(double s, double mu);

// q(inf) in closed form: sqrt(pi)/2 * Gamma(mu - 1/2) / Gamma(mu).
double ghost_q_infinity(double mu);

// Characteristic coordinates sigma_pm = +-e.x - t. Their sum is -2t
// pointwise up to rounding of the two additions.
struct GhostCoordinates {
    ScalarField sigma_plus;
    ScalarField sigma_minus;
};

GhostCoordinates ghost_coordinates(const Grid& g, const Direction& e, double t);

}  // namespace mhdwave
