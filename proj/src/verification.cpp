#include "mhdwave/verification.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mhdwave/spectral.hpp"

namespace mhdwave {

MonitorFit fit_monitor(std::string name, std::vector<double> times, std::vector<double> lhs,
                       std::vector<double> rhs, double ceiling) {
    if (lhs.size() != rhs.size() || times.size() != lhs.size())
        throw std::invalid_argument("fit_monitor: series lengths differ");
    MonitorFit fit;
    fit.name = std::move(name);
    fit.times = std::move(times);
    fit.lhs_series = std::move(lhs);
    fit.rhs_series = std::move(rhs);
    fit.ceiling = ceiling;
    fit.fitted_C = 0.0;
    for (size_t i = 0; i < fit.lhs_series.size(); ++i) {
        if (fit.rhs_series[i] > 0.0)
            fit.fitted_C = std::max(fit.fitted_C, fit.lhs_series[i] / fit.rhs_series[i]);
        else if (fit.lhs_series[i] > 0.0)
            fit.fitted_C = std::numeric_limits<double>::infinity();
    }
    fit.pass = fit.fitted_C <= fit.ceiling;
    return fit;
}

namespace {

double half_sq_l2(const VectorField& u) {
    double s = 0.0;
    for (int d = 0; d < u.grid().n_dims; ++d) {
        const double nrm = l2_norm(u.comp(d));
        s += nrm * nrm;
    }
    return 0.5 * s;
}

double grad_sq_l2(const VectorField& u) {
    double s = 0.0;
    for (int d = 0; d < u.grid().n_dims; ++d) {
        const SpectralField hat = to_spectral(u.comp(d));
        for (int axis = 0; axis < u.grid().n_dims; ++axis) {
            const double nrm = l2_norm(spectral_derivative(hat, axis, 1));
            s += nrm * nrm;
        }
    }
    return s;
}

}  // namespace

BalanceMonitor::BalanceMonitor(double nu) : nu_(nu) {
    if (nu < 0.0) throw std::invalid_argument("balance monitor: nu must be nonnegative");
}

void BalanceMonitor::observe(const ElsasserState& s) {
    if (!times_.empty() && s.time < times_.back())
        throw std::invalid_argument("balance monitor: time went backwards");
    times_.push_back(s.time);
    half_sq_plus_.push_back(half_sq_l2(s.lambda_plus));
    half_sq_minus_.push_back(half_sq_l2(s.lambda_minus));
    diss_plus_.push_back(nu_ > 0.0 ? grad_sq_l2(s.lambda_plus) : 0.0);
    diss_minus_.push_back(nu_ > 0.0 ? grad_sq_l2(s.lambda_minus) : 0.0);
}

MonitorFit BalanceMonitor::fit_family(const std::string& name, const std::vector<double>& half_sq,
                                      const std::vector<double>& diss, double ceiling) const {
    std::vector<double> lhs(times_.size(), 0.0), rhs(times_.size(), 0.0);
    double integral = 0.0;
    for (size_t i = 0; i < times_.size(); ++i) {
        if (i > 0)
            integral += 0.5 * (times_[i] - times_[i - 1]) * (diss[i] + diss[i - 1]);
        lhs[i] = std::abs(half_sq[i] - half_sq[0] + nu_ * integral);
        rhs[i] = half_sq[0] * (times_[i] - times_[0]);
    }
    return fit_monitor(name, times_, std::move(lhs), std::move(rhs), ceiling);
}

MonitorFit BalanceMonitor::fit_plus(double ceiling) const {
    return fit_family(nu_ > 0.0 ? "balance-plus" : "conservation-plus", half_sq_plus_, diss_plus_,
                      ceiling);
}

MonitorFit BalanceMonitor::fit_minus(double ceiling) const {
    return fit_family(nu_ > 0.0 ? "balance-minus" : "conservation-minus", half_sq_minus_,
                      diss_minus_, ceiling);
}

AprioriMonitor::AprioriMonitor(const WeightSpec& spec, double nu, bool viscous)
    : spec_(spec), nu_(nu), viscous_(viscous) {
    check_weight_spec(spec);
    if (nu < 0.0) throw std::invalid_argument("apriori monitor: nu must be nonnegative");
}

void AprioriMonitor::observe(const ElsasserState& s) {
    if (!started_) {
        report_ = initial_report(s, spec_, nu_);
        eps0_ = viscous_ ? report_.Ecal_k : report_.E_k;
        started_ = true;
    } else {
        report_ = advance_report(report_, s, spec_, nu_);
    }
    times_.push_back(report_.time);
    if (viscous_) {
        lhs_.push_back(report_.Ecal_k + report_.V_k + report_.W_k);
        rhs_a_.push_back(eps0_ + report_.W_k * std::sqrt(report_.Ecal_tilde));
    } else {
        lhs_.push_back(report_.E_k + report_.W_k);
        rhs_a_.push_back(eps0_ + report_.W_k * std::sqrt(report_.E_tilde));
    }
}

const EnergyReport& AprioriMonitor::report() const {
    if (!started_) throw std::logic_error("apriori monitor: no observations yet");
    return report_;
}

MonitorFit AprioriMonitor::inequality_fit(double ceiling) const {
    return fit_monitor(viscous_ ? "apriori-viscous" : "apriori-inviscid", times_, lhs_, rhs_a_,
                       ceiling);
}

MonitorFit AprioriMonitor::c0_fit(double ceiling) const {
    if (started_ && eps0_ == 0.0)
        throw std::invalid_argument("apriori monitor: C0 fit needs a run with epsilon > 0");
    return fit_monitor("smallness-C0", times_, lhs_,
                       std::vector<double>(times_.size(), eps0_), ceiling);
}

PressureSample pressure_lemma_sample(const ElsasserState& s, const WeightSpec& spec) {
    check_weight_spec(spec);
    if (!(s.grid() == spec.grid))
        throw std::invalid_argument("pressure sample: state grid != spec grid");

    const Grid& g = s.grid();
    const int n = g.n_dims, k = spec.k;
    const double t = s.time, mu = spec.mu;

    const PressureField p = pressure_solve(s);
    const SpectralField phat = to_spectral(p.values);

    // all_sq = sum_{|b| <= k} |d^b p|^2; grad_sq = sum_{|a| <= k-1} |grad d^a p|^2
    // via the pairing count: each b = a + e_d arises once per axis with b_d >= 1.
    ScalarField all_sq(g), grad_sq(g);
    for (const MultiIndex& b : multi_indices(n, 0, k)) {
        const ScalarField db = order(b) == 0 ? p.values : to_physical(spectral_derivative(phat, b));
        int mult = 0;
        for (int d = 0; d < n; ++d) mult += b[d] >= 1 ? 1 : 0;
        for (std::int64_t i = 0; i < g.size(); ++i) {
            const double sq = db[i] * db[i];
            all_sq[i] += sq;
            grad_sq[i] += mult * sq;
        }
    }

    PressureSample out;
    out.time = t;
    out.p_l2 = l2_norm(p.values);
    int idx[3];
    for (std::int64_t i = 0; i < g.size(); ++i) {
        unflatten(g, i, idx);
        double rp2 = 0.0, rm2 = 0.0;
        for (int d = 0; d < n; ++d) {
            const double x = g.coord(idx[d]);
            const double ap = x + spec.e[d] * t;
            const double am = x - spec.e[d] * t;
            rp2 += ap * ap;
            rm2 += am * am;
        }
        const double brp = 1.0 + rp2, brm = 1.0 + rm2;
        out.sq_P1 += (std::pow(brp, mu) + std::pow(brm, mu)) * all_sq[i];
        out.sq_P2 += (std::pow(brp, 2.0 * mu - 1.0) * std::pow(brm, mu) +
                      std::pow(brm, 2.0 * mu - 1.0) * std::pow(brp, mu)) *
                     grad_sq[i];
        out.sq_P3 += (std::pow(brp, 3.0 * mu - 1.0) + std::pow(brm, 3.0 * mu - 1.0)) * grad_sq[i];
        out.sq_L32 += (std::pow(brp, 2.0 * mu) + std::pow(brm, 2.0 * mu)) * grad_sq[i];
    }
    double cell = 1.0;
    for (int d = 0; d < n; ++d) cell *= g.spacing;
    out.sq_P1 *= cell;
    out.sq_P2 *= cell;
    out.sq_P3 *= cell;
    out.sq_L32 *= cell;
    return out;
}

PressureMonitor::PressureMonitor(const WeightSpec& spec) : spec_(spec) {
    check_weight_spec(spec);
}

void PressureMonitor::observe(const ElsasserState& s, double W_k, double E_tilde) {
    const PressureSample sample = pressure_lemma_sample(s, spec_);
    if (started_) {
        const double dt = sample.time - last_.time;
        if (dt < 0.0) throw std::invalid_argument("pressure monitor: time went backwards");
        int_l1_ += 0.5 * dt * (last_.p_l2 + sample.p_l2);
        int_sq_[0] += 0.5 * dt * (last_.sq_P1 + sample.sq_P1);
        int_sq_[1] += 0.5 * dt * (last_.sq_P2 + sample.sq_P2);
        int_sq_[2] += 0.5 * dt * (last_.sq_P3 + sample.sq_P3);
        int_sq_[3] += 0.5 * dt * (last_.sq_L32 + sample.sq_L32);
    }
    started_ = true;
    last_ = sample;
    times_.push_back(sample.time);
    l1_.push_back(int_l1_);
    for (int j = 0; j < 4; ++j) sq_[j].push_back(int_sq_[j]);
    w_.push_back(W_k);
    et_.push_back(E_tilde);
}

MonitorFit PressureMonitor::fit(PressureLemma which, double ceiling) const {
    const size_t m = times_.size();
    std::vector<double> lhs(m, 0.0), rhs(m, 0.0);
    if (which == PressureLemma::P0) {
        for (size_t i = 0; i < m; ++i) {
            lhs[i] = l1_[i];
            rhs[i] = w_[i];
        }
        return fit_monitor("pressure-P0", times_, std::move(lhs), std::move(rhs), ceiling);
    }
    const int j = which == PressureLemma::P1   ? 0
                  : which == PressureLemma::P2 ? 1
                  : which == PressureLemma::P3 ? 2
                                               : 3;
    static const char* names[] = {"pressure-P1", "pressure-P2", "pressure-P3", "pressure-L32"};
    for (size_t i = 0; i < m; ++i) {
        lhs[i] = std::sqrt(sq_[j][i]);
        rhs[i] = std::sqrt(w_[i] * et_[i]);
    }
    return fit_monitor(names[j], times_, std::move(lhs), std::move(rhs), ceiling);
}

TransportError transport_exactness(const ElsasserState& initial, const ElsasserState& evolved,
                                   const Direction& e) {
    const Grid& g = initial.grid();
    if (!(evolved.grid() == g))
        throw std::invalid_argument("transport exactness: states live on different grids");
    check_direction(g, e);

    const double shift = evolved.time - initial.time;
    TransportError err;
    int idx[3] = {0, 0, 0};
    for (int c = 0; c < g.n_dims; ++c) {
        SpectralField hat = to_spectral(initial.lambda_plus.comp(c));
        for (std::int64_t i = 0; i < hat.size(); ++i) {
            unflatten(g, i, idx);
            double phase = 0.0;
            for (int d = 0; d < g.n_dims; ++d) phase += g.wavenumber(idx[d]) * e[d] * shift;
            hat[i] *= std::complex<double>(std::cos(phase), std::sin(phase));
        }
        const ScalarField shifted = to_physical(hat);
        const ScalarField& got = evolved.lambda_plus.comp(c);
        for (std::int64_t i = 0; i < shifted.size(); ++i)
            err.plus_error = std::max(err.plus_error, std::abs(got[i] - shifted[i]));
    }
    err.minus_max = max_abs(evolved.lambda_minus);
    return err;
}

namespace {

// Midpoint quadrature on a dyadic mesh refined toward the origin, where both
// <x>^a and <x>^-a vary fastest. Both integrands share one mesh, so the
// Cauchy-Schwarz bound (avg w)(avg 1/w) >= 1 holds exactly in quadrature.
struct A2CubeQuad {
    double beta;  // exponent / 2, applied to 1 + |x|^2
    int n;
    double sum_w = 0.0, sum_inv = 0.0, volume = 0.0;

    void cell(const double* lo, const double* hi, int depth) {
        double side = 0.0, dmin2 = 0.0;
        for (int d = 0; d < n; ++d) {
            side = std::max(side, hi[d] - lo[d]);
            const double gap = lo[d] > 0.0 ? lo[d] : (hi[d] < 0.0 ? -hi[d] : 0.0);
            dmin2 += gap * gap;
        }
        if (depth == 0 || side <= 0.25 || side * 8.0 <= std::sqrt(dmin2)) {
            double vol = 1.0, r2 = 0.0;
            for (int d = 0; d < n; ++d) {
                vol *= hi[d] - lo[d];
                const double x = 0.5 * (lo[d] + hi[d]);
                r2 += x * x;
            }
            const double w = std::pow(1.0 + r2, beta);
            sum_w += vol * w;
            sum_inv += vol / w;
            volume += vol;
            return;
        }
        double clo[3], chi[3];
        for (int part = 0; part < (1 << n); ++part) {
            for (int d = 0; d < n; ++d) {
                const double mid = 0.5 * (lo[d] + hi[d]);
                clo[d] = (part >> d) & 1 ? mid : lo[d];
                chi[d] = (part >> d) & 1 ? hi[d] : mid;
            }
            cell(clo, chi, depth - 1);
        }
    }
};

}  // namespace

A2Estimate a2_constant_estimate(double exponent, int n_dims, const std::vector<double>& scales) {
    if (n_dims != 2 && n_dims != 3)
        throw std::invalid_argument("a2 estimate: n_dims must be 2 or 3");
    if (scales.empty()) throw std::invalid_argument("a2 estimate: no scales given");
    for (double s : scales)
        if (!(s > 0.0)) throw std::invalid_argument("a2 estimate: scales must be positive");

    A2Estimate est;
    est.exponent = exponent;
    est.n_dims = n_dims;
    est.cube_scales = scales;
    est.sup_over_cubes = 0.0;

    const int half_centers = 4;  // center lattice -2s..2s in steps of s/2
    const int c_side = 2 * half_centers + 1;
    std::int64_t n_centers = 1;
    for (int d = 0; d < n_dims; ++d) n_centers *= c_side;

    for (double s : scales) {
        double sup_scale = 0.0;
        int centers[3] = {0, 0, 0};
        for (std::int64_t ci = 0; ci < n_centers; ++ci) {
            std::int64_t rem = ci;
            for (int d = n_dims - 1; d >= 0; --d) {
                centers[d] = static_cast<int>(rem % c_side) - half_centers;
                rem /= c_side;
            }
            double lo[3], hi[3];
            for (int d = 0; d < n_dims; ++d) {
                lo[d] = centers[d] * 0.5 * s - 0.5 * s;
                hi[d] = lo[d] + s;
            }
            A2CubeQuad quad{0.5 * exponent, n_dims};
            quad.cell(lo, hi, 48);
            sup_scale = std::max(sup_scale,
                                 (quad.sum_w / quad.volume) * (quad.sum_inv / quad.volume));
        }
        est.sup_per_scale.push_back(sup_scale);
        est.sup_over_cubes = std::max(est.sup_over_cubes, sup_scale);
    }
    return est;
}

}  // namespace mhdwave
