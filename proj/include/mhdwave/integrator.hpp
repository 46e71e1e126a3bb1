#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mhdwave/elsasser.hpp"

namespace mhdwave {

enum class Scheme {
    rk4_explicit,           // diffusion inside the stage derivatives
    rk4_integrating_factor  // diffusion absorbed exactly by exp(-nu |xi|^2 dt)
};

struct StepControl {
    double cfl_safety = 0.4;
    double dt_max = 1.0;
    double t_horizon = 0.0;  // absolute end time
    Scheme scheme = Scheme::rk4_integrating_factor;
    int observe_every = 1;   // observer cadence in steps
    // Box-validity rule: the weights live on the whole space, so the run must
    // end before energy transported at speed c_max reaches the box edge.
    // concentration_radius < 0 skips the check (callers without a measured
    // radius); enforce_box_validity = false records an explicit override.
    double horizon_margin = -1.0;  // < 0: use 2 * spacing
    double concentration_radius = -1.0;
    bool enforce_box_validity = true;
};

// cfl_safety * min(spacing / (1 + max |lambda|), dt_max); the explicit scheme
// with nu > 0 is additionally capped by cfl_safety * spacing^2 / (2 n nu).
double cfl_dt(const ElsasserState& s, const StepControl& c, double nu);

// One RK4 step of size dt. The integrating-factor variant evaluates the
// non-stiff terms with diffusion disabled and applies the exact heat factors
// between stages, so a pure-diffusion step is exact. terms is a test hook.
ElsasserState step(const ElsasserState& s, double dt, double nu, const Direction& e, Scheme scheme,
                   const RhsTerms& terms = {});

struct IntegrationStats {
    std::int64_t steps = 0;
    std::int64_t reprojections = 0;
};

using Observer = std::function<void(const ElsasserState&)>;

// Advances to c.t_horizon, invoking every observer at the initial state and
// then every observe_every steps plus once at the final state. Observation
// times are strictly increasing. Divergence drift above 1e-11 (relative max
// norm) triggers re-projection, counted in stats. Non-finite values abort.
ElsasserState integrate(const ElsasserState& initial, const StepControl& c, double nu,
                        const Direction& e, const std::vector<Observer>& observers,
                        IntegrationStats* stats = nullptr, const RhsTerms& terms = {});

}  // namespace mhdwave
