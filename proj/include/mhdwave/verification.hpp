#pragma once

#include <limits>
#include <string>
#include <vector>

#include "mhdwave/energies.hpp"

namespace mhdwave {

// One monitored inequality lhs(t) <= C * rhs(t) along a run. fitted_C is the
// smallest admissible C over the sampled series: max of lhs/rhs over samples
// with rhs > 0, infinity if some sample has lhs > 0 at rhs == 0, and 0 for a
// run with no usable samples (zero data passes trivially).
struct MonitorFit {
    std::string name;
    std::vector<double> times;
    std::vector<double> lhs_series, rhs_series;
    double fitted_C = 0.0;
    double ceiling = std::numeric_limits<double>::infinity();
    bool pass = true;
};

MonitorFit fit_monitor(std::string name, std::vector<double> times, std::vector<double> lhs,
                       std::vector<double> rhs, double ceiling);

// Per-family L2 balance along a run. With nu = 0 this is plain conservation
// of each |Lambda|^2 integral; with nu > 0 it is the residual of
// d/dt 1/2 int |Lambda|^2 + nu int |grad Lambda|^2 = 0 with trapezoidal time
// integration. Either way fitted_C is the max drift (residual) relative to
// the initial value, per unit time, reported separately per family.
class BalanceMonitor {
public:
    explicit BalanceMonitor(double nu);

    void observe(const ElsasserState& s);
    MonitorFit fit_plus(double ceiling) const;
    MonitorFit fit_minus(double ceiling) const;

private:
    MonitorFit fit_family(const std::string& name, const std::vector<double>& half_sq,
                          const std::vector<double>& diss, double ceiling) const;

    double nu_;
    std::vector<double> times_;
    std::vector<double> half_sq_plus_, half_sq_minus_;  // 1/2 int |Lambda|^2
    std::vector<double> diss_plus_, diss_minus_;        // int |grad Lambda|^2
};

// Weighted-energy accumulator with the two a priori fits: (a) the inequality
// lhs(t) <= C * (initial energy + W * sqrt(running max energy)) and (b) the
// theorem-conclusion constant C0 = sup_t lhs / epsilon, where epsilon is the
// measured initial energy of the run. The viscous variant uses the modified
// energy plus V_k in the lhs; the inviscid one uses E_k alone.
class AprioriMonitor {
public:
    AprioriMonitor(const WeightSpec& spec, double nu, bool viscous);

    void observe(const ElsasserState& s);
    const EnergyReport& report() const;
    double epsilon() const { return eps0_; }
    MonitorFit inequality_fit(double ceiling) const;
    MonitorFit c0_fit(double ceiling) const;  // rejects an epsilon = 0 run

private:
    WeightSpec spec_;
    double nu_;
    bool viscous_;
    bool started_ = false;
    EnergyReport report_;
    double eps0_ = 0.0;
    std::vector<double> times_, lhs_, rhs_a_;
};

enum class PressureLemma { P0, P1, P2, P3, L32 };

// Instantaneous weighted norms of the pressure, both weight branches summed.
// sq_* are spatial integrals of the squared integrands:
//   P1:  <x+et>^mu and <x-et>^mu on all derivatives up to order k,
//   P2:  <x+et>^(2mu-1) <x-et>^mu (and the swap) on grad of orders < k,
//   P3:  <x+et>^(3mu-1) on grad of orders < k,
//   L32: <x+et>^(2mu) on grad of orders < k.
struct PressureSample {
    double time = 0.0;
    double p_l2 = 0.0;
    double sq_P1 = 0.0, sq_P2 = 0.0, sq_P3 = 0.0, sq_L32 = 0.0;
};

PressureSample pressure_lemma_sample(const ElsasserState& s, const WeightSpec& spec);

// Turns samples into the lemmas' time-integrated left sides (trapezoid at
// observer cadence) and fits them against the right sides built from the
// caller-supplied W_k and running-max energy series.
class PressureMonitor {
public:
    explicit PressureMonitor(const WeightSpec& spec);

    void observe(const ElsasserState& s, double W_k, double E_tilde);
    MonitorFit fit(PressureLemma which, double ceiling) const;

private:
    WeightSpec spec_;
    bool started_ = false;
    PressureSample last_;
    double int_l1_ = 0.0;
    double int_sq_[4] = {0.0, 0.0, 0.0, 0.0};
    std::vector<double> times_, l1_, sq_[4], w_, et_;
};

// Exact reference for the one-sided linear scenario: with Lambda_minus = 0
// and nu = 0 the plus family is transported rigidly, so the evolved state
// must equal the initial data phase-shifted to x + e * (t_evolved - t_init).
// plus_error is the max-norm mismatch against that shift; minus_max is the
// evolved minus family's max norm, which the invariant subspace keeps at
// roundoff.
struct TransportError {
    double plus_error = 0.0;
    double minus_max = 0.0;
};

TransportError transport_exactness(const ElsasserState& initial, const ElsasserState& evolved,
                                   const Direction& e);

// Numerical A2-characteristic probe for w = <x>^exponent: sup over a finite
// family of axis-aligned cubes (centers on a lattice proportional to the
// scale, origin-refined midpoint quadrature) of (avg w)(avg 1/w). Confirms
// divergence; boundedness is evidence only, since the cube family is finite.
struct A2Estimate {
    double exponent = 0.0;
    int n_dims = 0;
    double sup_over_cubes = 1.0;
    std::vector<double> cube_scales;
    std::vector<double> sup_per_scale;  // aligned with cube_scales
};

A2Estimate a2_constant_estimate(double exponent, int n_dims, const std::vector<double>& scales);

}  // namespace mhdwave
