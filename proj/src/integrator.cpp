#include "mhdwave/integrator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mhdwave/spectral.hpp"

namespace mhdwave {

namespace {

// state += a * k, both families.
void add_scaled(ElsasserState& s, double a, const ElsasserRhs& k) {
    const Grid& g = s.grid();
    const std::int64_t n = g.size();
    for (int d = 0; d < g.n_dims; ++d) {
        double* p = s.lambda_plus.comp(d).data();
        double* m = s.lambda_minus.comp(d).data();
        const double* kp = k.plus.comp(d).data();
        const double* km = k.minus.comp(d).data();
        for (std::int64_t i = 0; i < n; ++i) {
            p[i] += a * kp[i];
            m[i] += a * km[i];
        }
    }
}

ElsasserState rk4_explicit_step(const ElsasserState& s, double dt, double nu, const Direction& e,
                                const RhsTerms& terms) {
    const ElsasserRhs k1 = rhs(s, nu, e, terms);
    ElsasserState u = s;
    add_scaled(u, 0.5 * dt, k1);
    u.time = s.time + 0.5 * dt;
    const ElsasserRhs k2 = rhs(u, nu, e, terms);
    u = s;
    add_scaled(u, 0.5 * dt, k2);
    u.time = s.time + 0.5 * dt;
    const ElsasserRhs k3 = rhs(u, nu, e, terms);
    u = s;
    add_scaled(u, dt, k3);
    u.time = s.time + dt;
    const ElsasserRhs k4 = rhs(u, nu, e, terms);
    u = s;
    add_scaled(u, dt / 6.0, k1);
    add_scaled(u, dt / 3.0, k2);
    add_scaled(u, dt / 3.0, k3);
    add_scaled(u, dt / 6.0, k4);
    u.time = s.time + dt;
    return u;
}

// Spectral copy of a state or slope: plus components first, then minus.
using SpecState = std::vector<SpectralField>;

SpecState to_spec(const VectorField& p, const VectorField& m) {
    SpecState out;
    out.reserve(2 * static_cast<std::size_t>(p.grid().n_dims));
    for (int d = 0; d < p.grid().n_dims; ++d) out.push_back(to_spectral(p.comp(d)));
    for (int d = 0; d < m.grid().n_dims; ++d) out.push_back(to_spectral(m.comp(d)));
    return out;
}

ElsasserState to_state(const SpecState& v, double time) {
    const Grid& g = v[0].grid();
    ElsasserState s{VectorField(g), VectorField(g), time};
    for (int d = 0; d < g.n_dims; ++d) {
        s.lambda_plus.comp(d) = to_physical(v[d]);
        s.lambda_minus.comp(d) = to_physical(v[g.n_dims + d]);
    }
    return s;
}

// exp(-nu |xi|^2 dt / 2) per mode; the half-step factor, squared for a full step.
std::vector<double> half_heat(const Grid& g, double nu, double dt) {
    std::vector<double> eh(g.size());
    int idx[3];
    for (std::int64_t i = 0; i < g.size(); ++i) {
        unflatten(g, i, idx);
        double k2 = 0.0;
        for (int d = 0; d < g.n_dims; ++d) {
            const double w = g.wavenumber(idx[d]);
            k2 += w * w;
        }
        eh[i] = std::exp(-0.5 * nu * k2 * dt);
    }
    return eh;
}

// eh^ps . S + c * eh^pk . K with ps, pk counting half-step heat factors.
SpecState damped_sum(const SpecState& S, int ps, const SpecState& K, int pk, double c,
                     const std::vector<double>& eh) {
    SpecState out = S;
    for (std::size_t f = 0; f < S.size(); ++f) {
        auto* o = out[f].data();
        const auto* a = S[f].data();
        const auto* b = K[f].data();
        const std::int64_t n = S[f].size();
        for (std::int64_t i = 0; i < n; ++i) {
            const double es = ps == 0 ? 1.0 : (ps == 1 ? eh[i] : eh[i] * eh[i]);
            const double ek = pk == 0 ? 1.0 : (pk == 1 ? eh[i] : eh[i] * eh[i]);
            o[i] = es * a[i] + c * ek * b[i];
        }
    }
    return out;
}

ElsasserState rk4_if_step(const ElsasserState& s, double dt, double nu, const Direction& e,
                          const RhsTerms& terms) {
    RhsTerms nonstiff = terms;
    nonstiff.diffusion = false;
    const double nu_eff = terms.diffusion ? nu : 0.0;
    const std::vector<double> eh = half_heat(s.grid(), nu_eff, dt);

    const SpecState S = to_spec(s.lambda_plus, s.lambda_minus);
    auto slopes = [&](const ElsasserState& u) {
        const ElsasserRhs k = rhs(u, 0.0, e, nonstiff);
        return to_spec(k.plus, k.minus);
    };

    const SpecState k1 = slopes(s);
    const SpecState k2 = slopes(to_state(damped_sum(S, 1, k1, 1, 0.5 * dt, eh), s.time + 0.5 * dt));
    const SpecState k3 = slopes(to_state(damped_sum(S, 1, k2, 0, 0.5 * dt, eh), s.time + 0.5 * dt));
    const SpecState k4 = slopes(to_state(damped_sum(S, 2, k3, 1, dt, eh), s.time + dt));

    // u' = E^2 (S + dt/6 k1) + dt/3 E (k2 + k3) + dt/6 k4
    SpecState out = damped_sum(S, 2, k1, 2, dt / 6.0, eh);
    out = damped_sum(out, 0, k2, 1, dt / 3.0, eh);
    out = damped_sum(out, 0, k3, 1, dt / 3.0, eh);
    out = damped_sum(out, 0, k4, 0, dt / 6.0, eh);
    return to_state(out, s.time + dt);
}

}  // namespace

double cfl_dt(const ElsasserState& s, const StepControl& c, double nu) {
    if (!(c.cfl_safety > 0.0) || !(c.dt_max > 0.0))
        throw std::invalid_argument("cfl_dt: cfl_safety and dt_max must be positive");
    const Grid& g = s.grid();
    const double c_max = 1.0 + std::max(max_abs(s.lambda_plus), max_abs(s.lambda_minus));
    double dt = c.cfl_safety * std::min(g.spacing / c_max, c.dt_max);
    if (c.scheme == Scheme::rk4_explicit && nu > 0.0) {
        const double cap = c.cfl_safety * g.spacing * g.spacing / (2.0 * g.n_dims * nu);
        dt = std::min(dt, cap);
    }
    return dt;
}

ElsasserState step(const ElsasserState& s, double dt, double nu, const Direction& e, Scheme scheme,
                   const RhsTerms& terms) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
    if (nu < 0.0) throw std::invalid_argument("step: nu must be nonnegative");
    return scheme == Scheme::rk4_explicit ? rk4_explicit_step(s, dt, nu, e, terms)
                                          : rk4_if_step(s, dt, nu, e, terms);
}

ElsasserState integrate(const ElsasserState& initial, const StepControl& c, double nu,
                        const Direction& e, const std::vector<Observer>& observers,
                        IntegrationStats* stats, const RhsTerms& terms) {
    const Grid& g = initial.grid();
    check_direction(g, e);
    if (nu < 0.0) throw std::invalid_argument("integrate: nu must be nonnegative");
    if (c.observe_every < 1) throw std::invalid_argument("integrate: observe_every must be >= 1");
    if (c.t_horizon < initial.time)
        throw std::invalid_argument("integrate: t_horizon precedes the initial time");

    if (c.enforce_box_validity && c.concentration_radius >= 0.0) {
        const double margin = c.horizon_margin >= 0.0 ? c.horizon_margin : 2.0 * g.spacing;
        const double c_max =
            1.0 + std::max(max_abs(initial.lambda_plus), max_abs(initial.lambda_minus));
        const double allowed = (g.half_length - c.concentration_radius - margin) / c_max;
        const double span = c.t_horizon - initial.time;
        if (span > allowed)
            throw std::invalid_argument("integrate: horizon span " + std::to_string(span) +
                                        " exceeds the box-validity limit " +
                                        std::to_string(allowed));
    }

    ElsasserState state = initial;
    IntegrationStats local;
    for (const auto& ob : observers) ob(state);

    const double t_end = c.t_horizon;
    const double eps = 1e-12 * std::max(1.0, std::abs(t_end));
    while (state.time < t_end - eps) {
        const double dt = std::min(cfl_dt(state, c, nu), t_end - state.time);
        state = step(state, dt, nu, e, c.scheme, terms);
        ++local.steps;
        if (!all_finite(state.lambda_plus) || !all_finite(state.lambda_minus))
            throw std::runtime_error("integrate: non-finite values at t = " +
                                     std::to_string(state.time));
        if (max_divergence_rel(state) > 1e-11) {
            project_state(state);
            ++local.reprojections;
        }
        const bool last = state.time >= t_end - eps;
        if (last || local.steps % c.observe_every == 0)
            for (const auto& ob : observers) ob(state);
    }
    if (stats) *stats = local;
    return state;
}

}  // namespace mhdwave
