#pragma once

#include <optional>
#include <vector>

#include "mhdwave/elsasser.hpp"
#include "mhdwave/weights.hpp"

namespace mhdwave {

// All spatial functionals of one state, computed in a single sweep that
// shares the derivative fields. The moving weight is bracket^(4mu) on
// derivative orders 1..k and bracket^(2mu) on order 0, each family with its
// own weight argument. W_rate divides that same integrand by the ghost
// factor bracket(sigma_pm)^(2mu). V_rate carries the nu prefactor and uses
// bracket^(4mu) on orders 2..k+1, bracket^(2mu) on order 1, and no weight on
// order 0; it vanishes when nu = 0 (order k+1 is then never computed).
struct EnergySample {
    double time = 0.0;
    double E_k = 0.0;
    double Ecal_k = 0.0;               // E_k plus the inverse-modulus block
    std::vector<double> per_order;     // E_k share of each order 0..k
    double W_rate = 0.0;
    double V_rate = 0.0;
};

// unit_ghost replaces the ghost divisor by 1 (then W_rate equals the E_k
// integrand; consistency hook). with_modified gates the inverse-modulus
// block, which requires zero-mean components.
EnergySample energy_sample(const ElsasserState& s, const WeightSpec& spec, double nu,
                           bool unit_ghost = false, bool with_modified = true);

double energy_E_k(const ElsasserState& s, const WeightSpec& spec,
                  std::vector<double>* per_order = nullptr);

// Pointwise E_k integrand (the spatial density whose cell sum is E_k).
ScalarField energy_integrand(const ElsasserState& s, const WeightSpec& spec);

// E_k + |grad|^-1 terms. Requires zero-mean components.
double energy_modified(const ElsasserState& s, const WeightSpec& spec);

// Running record along a trajectory. The tilde entries are running suprema;
// V_k and W_k accumulate their rates by the trapezoid rule, so the report
// carries the previous rates between observer calls.
struct EnergyReport {
    double time = 0.0;
    double E_k = 0.0;
    double Ecal_k = 0.0;
    double E_tilde = 0.0;
    double Ecal_tilde = 0.0;
    double V_k = 0.0;
    double W_k = 0.0;
    std::vector<double> per_order;
    double last_W_rate = 0.0;
    double last_V_rate = 0.0;
};

EnergyReport initial_report(const ElsasserState& s, const WeightSpec& spec, double nu);

// One observer step: recomputes the sample at s.time and extends all
// accumulators from prev. Requires s.time >= prev.time.
EnergyReport advance_report(const EnergyReport& prev, const ElsasserState& s,
                            const WeightSpec& spec, double nu);

// Single-functional accumulators matching the report contract; dt > 0.
EnergyReport accumulate_W(const EnergyReport& report, const ElsasserState& s,
                          const WeightSpec& spec, double dt);
EnergyReport accumulate_V(const EnergyReport& report, const ElsasserState& s,
                          const WeightSpec& spec, double nu, double dt);

// Ratio of the weighted sup norm of f to the sum of weighted L2 norms of its
// derivatives up to order n/2 + 1, all with weight bracket(x + sign*e*t)^lambda.
// When mu_ghost is given, each L2 integrand is divided by
// bracket(sign*e.x - t)^(2*mu_ghost). Throws on an identically zero field.
double sobolev_embedding_constant(const ScalarField& f, double t, double lambda,
                                  std::optional<double> mu_ghost, int sign,
                                  const WeightSpec& spec);

}  // namespace mhdwave
