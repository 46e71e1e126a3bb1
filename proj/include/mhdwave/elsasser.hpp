#pragma once

#include "mhdwave/grid.hpp"
#include "mhdwave/spectral.hpp"

namespace mhdwave {

// Evolved pair of solenoidal, zero-mean fields. time is the physical time
// the pair belongs to; the moving weights depend on it.
struct ElsasserState {
    VectorField lambda_plus;
    VectorField lambda_minus;
    double time = 0.0;

    const Grid& grid() const { return lambda_plus.grid(); }
};

// Velocity / magnetic description. magnetic carries the uniform background,
// so magnetic - background must be zero-mean and solenoidal like velocity.
struct PhysicalState {
    VectorField velocity;
    VectorField magnetic;
    Direction background = {1.0, 0.0, 0.0};
    double time = 0.0;
};

struct PressureField {
    ScalarField values;  // zero-mean by construction
};

// lambda_pm = v +- (H - e). Validates the background direction and that both
// combinations are solenoidal within 1e-10 (relative max norm).
ElsasserState from_physical(const PhysicalState& s);
PhysicalState to_physical_fields(const ElsasserState& s, const Direction& e);

// Solves -lap p = div div (lambda_minus tensor lambda_plus) mode by mode.
// The tensor product is formed pointwise and dealiased; the zero mode of p
// is set to zero.
PressureField pressure_solve(const ElsasserState& s);

// Term toggles for the integrator and for tests that isolate one mechanism.
// Dropping advection also drops the pressure projection that balances it.
struct RhsTerms {
    bool transport = true;
    bool advection = true;
    bool diffusion = true;
};

struct ElsasserRhs {
    VectorField plus;
    VectorField minus;
};

// d/dt lambda_plus  = +e.grad lambda_plus  - P[(lambda_minus.grad) lambda_plus]  + nu lap
// d/dt lambda_minus = -e.grad lambda_minus - P[(lambda_plus.grad) lambda_minus] + nu lap
// with P the Leray projection after dealiasing; swapping (plus, minus, e) ->
// (minus, plus, -e) swaps the outputs bit for bit because both slots run the
// same code path.
ElsasserRhs rhs(const ElsasserState& s, double nu, const Direction& e, const RhsTerms& terms = {});

// max |div lambda| over both families, divided by (pi/spacing) * max |lambda|.
double max_divergence_rel(const ElsasserState& s);

// Re-project both families onto solenoidal fields (zero mode untouched).
void project_state(ElsasserState& s);

}  // namespace mhdwave
