#include "mhdwave/energies.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mhdwave/spectral.hpp"

namespace mhdwave {

namespace {

std::vector<SpectralField> spectral_components(const VectorField& u) {
    std::vector<SpectralField> hat;
    hat.reserve(u.grid().n_dims);
    for (int d = 0; d < u.grid().n_dims; ++d) hat.push_back(to_spectral(u.comp(d)));
    return hat;
}

// S[j](x) = sum over |a| = j, components d of |d^a u_d(x)|^2, for j <= jmax.
std::vector<ScalarField> order_sums(const VectorField& u, const std::vector<SpectralField>& hat,
                                    int jmax) {
    const Grid& g = u.grid();
    std::vector<ScalarField> S(jmax + 1, ScalarField(g));
    for (int d = 0; d < g.n_dims; ++d)
        for (std::int64_t i = 0; i < g.size(); ++i) {
            const double v = u.comp(d)[i];
            S[0][i] += v * v;
        }
    for (const MultiIndex& a : multi_indices(g.n_dims, 1, jmax)) {
        ScalarField& Sj = S[order(a)];
        for (int d = 0; d < g.n_dims; ++d) {
            const ScalarField da = to_physical(spectral_derivative(hat[d], a));
            for (std::int64_t i = 0; i < g.size(); ++i) Sj[i] += da[i] * da[i];
        }
    }
    return S;
}

// sum over components of ||grad|^-1 u_d|_2^2 from the spectral coefficients.
double low_block(const std::vector<SpectralField>& hat) {
    const Grid& g = hat[0].grid();
    double vol = 1.0;
    for (int d = 0; d < g.n_dims; ++d) vol *= 2.0 * g.half_length;
    double sum = 0.0;
    int idx[3];
    for (const SpectralField& h : hat) {
        double l2 = 0.0;
        for (std::int64_t i = 0; i < h.size(); ++i) l2 += std::norm(h[i]);
        if (std::abs(h[0]) > 1e-12 * std::sqrt(l2))
            throw std::invalid_argument("energy: inverse-modulus block needs a zero-mean field");
        for (std::int64_t i = 1; i < h.size(); ++i) {
            unflatten(g, i, idx);
            double k2 = 0.0;
            for (int d = 0; d < g.n_dims; ++d) {
                const double w = g.wavenumber(idx[d]);
                k2 += w * w;
            }
            if (k2 > 0.0) sum += std::norm(h[i]) / k2;
        }
    }
    return sum * vol;
}

}  // namespace

EnergySample energy_sample(const ElsasserState& s, const WeightSpec& spec, double nu,
                           bool unit_ghost, bool with_modified) {
    check_weight_spec(spec);
    if (!(s.grid() == spec.grid)) throw std::invalid_argument("energy: state grid != spec grid");
    if (nu < 0.0) throw std::invalid_argument("energy: nu must be nonnegative");

    const Grid& g = s.grid();
    const int n = g.n_dims, k = spec.k;
    const int jmax = nu > 0.0 ? k + 1 : k;
    const double t = s.time, mu = spec.mu;

    const auto hat_p = spectral_components(s.lambda_plus);
    const auto hat_m = spectral_components(s.lambda_minus);
    const auto Sp = order_sums(s.lambda_plus, hat_p, jmax);
    const auto Sm = order_sums(s.lambda_minus, hat_m, jmax);

    const double m_sign = spec.literal_minus_weight ? 1.0 : -1.0;
    EnergySample out;
    out.time = t;
    out.per_order.assign(k + 1, 0.0);
    double E = 0.0, Wr = 0.0, Vr = 0.0;
    int idx[3];
    for (std::int64_t i = 0; i < g.size(); ++i) {
        unflatten(g, i, idx);
        double rp2 = 0.0, rm2 = 0.0, ex = 0.0;
        for (int d = 0; d < n; ++d) {
            const double x = g.coord(idx[d]);
            const double ap = x + spec.e[d] * t;
            const double am = x + m_sign * spec.e[d] * t;
            rp2 += ap * ap;
            rm2 += am * am;
            ex += spec.e[d] * x;
        }
        const double Ap = std::pow(1.0 + rp2, 2.0 * mu), Bp = std::sqrt(Ap);
        const double Am = std::pow(1.0 + rm2, 2.0 * mu), Bm = std::sqrt(Am);
        const double sp = ex - t, sm = -ex - t;
        const double Gp = unit_ghost ? 1.0 : std::pow(1.0 + sp * sp, mu);
        const double Gm = unit_ghost ? 1.0 : std::pow(1.0 + sm * sm, mu);

        double hi_p = 0.0, hi_m = 0.0;
        for (int j = 1; j <= k; ++j) {
            hi_p += Sp[j][i];
            hi_m += Sm[j][i];
            out.per_order[j] += Ap * Sp[j][i] + Am * Sm[j][i];
        }
        const double ep = Ap * hi_p + Bp * Sp[0][i];
        const double em = Am * hi_m + Bm * Sm[0][i];
        E += ep + em;
        Wr += ep / Gp + em / Gm;
        out.per_order[0] += Bp * Sp[0][i] + Bm * Sm[0][i];

        if (nu > 0.0) {
            double vp = 0.0, vm = 0.0;
            for (int j = 2; j <= k + 1; ++j) {
                vp += Sp[j][i];
                vm += Sm[j][i];
            }
            Vr += Ap * vp + Am * vm + Bp * Sp[1][i] + Bm * Sm[1][i] + Sp[0][i] + Sm[0][i];
        }
    }

    double cell = 1.0;
    for (int d = 0; d < n; ++d) cell *= g.spacing;
    out.E_k = E * cell;
    out.W_rate = Wr * cell;
    out.V_rate = nu * Vr * cell;
    for (double& v : out.per_order) v *= cell;
    out.Ecal_k = with_modified ? out.E_k + low_block(hat_p) + low_block(hat_m) : out.E_k;
    return out;
}

double energy_E_k(const ElsasserState& s, const WeightSpec& spec, std::vector<double>* per_order) {
    const EnergySample sample = energy_sample(s, spec, 0.0, false, false);
    if (per_order) *per_order = sample.per_order;
    return sample.E_k;
}

double energy_modified(const ElsasserState& s, const WeightSpec& spec) {
    return energy_sample(s, spec, 0.0).Ecal_k;
}

ScalarField energy_integrand(const ElsasserState& s, const WeightSpec& spec) {
    check_weight_spec(spec);
    if (!(s.grid() == spec.grid)) throw std::invalid_argument("energy: state grid != spec grid");

    const Grid& g = s.grid();
    const int n = g.n_dims, k = spec.k;
    const double t = s.time, mu = spec.mu;

    const auto hat_p = spectral_components(s.lambda_plus);
    const auto hat_m = spectral_components(s.lambda_minus);
    const auto Sp = order_sums(s.lambda_plus, hat_p, k);
    const auto Sm = order_sums(s.lambda_minus, hat_m, k);

    const double m_sign = spec.literal_minus_weight ? 1.0 : -1.0;
    ScalarField out(g);
    int idx[3];
    for (std::int64_t i = 0; i < g.size(); ++i) {
        unflatten(g, i, idx);
        double rp2 = 0.0, rm2 = 0.0;
        for (int d = 0; d < n; ++d) {
            const double x = g.coord(idx[d]);
            const double ap = x + spec.e[d] * t;
            const double am = x + m_sign * spec.e[d] * t;
            rp2 += ap * ap;
            rm2 += am * am;
        }
        const double Ap = std::pow(1.0 + rp2, 2.0 * mu), Bp = std::sqrt(Ap);
        const double Am = std::pow(1.0 + rm2, 2.0 * mu), Bm = std::sqrt(Am);
        double hi_p = 0.0, hi_m = 0.0;
        for (int j = 1; j <= k; ++j) {
            hi_p += Sp[j][i];
            hi_m += Sm[j][i];
        }
        out[i] = Ap * hi_p + Bp * Sp[0][i] + Am * hi_m + Bm * Sm[0][i];
    }
    return out;
}

EnergyReport initial_report(const ElsasserState& s, const WeightSpec& spec, double nu) {
    const EnergySample sample = energy_sample(s, spec, nu);
    EnergyReport r;
    r.time = sample.time;
    r.E_k = sample.E_k;
    r.Ecal_k = sample.Ecal_k;
    r.E_tilde = sample.E_k;
    r.Ecal_tilde = sample.Ecal_k;
    r.per_order = sample.per_order;
    r.last_W_rate = sample.W_rate;
    r.last_V_rate = sample.V_rate;
    return r;
}

EnergyReport advance_report(const EnergyReport& prev, const ElsasserState& s,
                            const WeightSpec& spec, double nu) {
    const double dt = s.time - prev.time;
    if (dt < 0.0) throw std::invalid_argument("advance_report: time went backwards");
    const EnergySample sample = energy_sample(s, spec, nu);
    EnergyReport r;
    r.time = sample.time;
    r.E_k = sample.E_k;
    r.Ecal_k = sample.Ecal_k;
    r.E_tilde = std::max(prev.E_tilde, sample.E_k);
    r.Ecal_tilde = std::max(prev.Ecal_tilde, sample.Ecal_k);
    r.V_k = prev.V_k + 0.5 * dt * (prev.last_V_rate + sample.V_rate);
    r.W_k = prev.W_k + 0.5 * dt * (prev.last_W_rate + sample.W_rate);
    r.per_order = sample.per_order;
    r.last_W_rate = sample.W_rate;
    r.last_V_rate = sample.V_rate;
    return r;
}

EnergyReport accumulate_W(const EnergyReport& report, const ElsasserState& s,
                          const WeightSpec& spec, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("accumulate_W: dt must be positive");
    const EnergySample sample = energy_sample(s, spec, 0.0, false, false);
    EnergyReport r = report;
    r.time = s.time;
    r.W_k += 0.5 * dt * (report.last_W_rate + sample.W_rate);
    r.last_W_rate = sample.W_rate;
    return r;
}

EnergyReport accumulate_V(const EnergyReport& report, const ElsasserState& s,
                          const WeightSpec& spec, double nu, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("accumulate_V: dt must be positive");
    if (nu < 0.0) throw std::invalid_argument("accumulate_V: nu must be nonnegative");
    if (nu == 0.0) return report;
    const EnergySample sample = energy_sample(s, spec, nu, false, false);
    EnergyReport r = report;
    r.time = s.time;
    r.V_k += 0.5 * dt * (report.last_V_rate + sample.V_rate);
    r.last_V_rate = sample.V_rate;
    return r;
}

double sobolev_embedding_constant(const ScalarField& f, double t, double lambda,
                                  std::optional<double> mu_ghost, int sign,
                                  const WeightSpec& spec) {
    check_weight_spec(spec);
    if (!(f.grid() == spec.grid)) throw std::invalid_argument("embedding: field grid != spec grid");
    if (sign != 1 && sign != -1) throw std::invalid_argument("embedding: sign must be +-1");

    const Grid& g = f.grid();
    const int n = g.n_dims;
    double cell = 1.0;
    for (int d = 0; d < n; ++d) cell *= g.spacing;

    // weight and ghost divisor per point
    ScalarField w(g), ghost(g);
    int idx[3];
    for (std::int64_t i = 0; i < g.size(); ++i) {
        unflatten(g, i, idx);
        double r2 = 0.0, ex = 0.0;
        for (int d = 0; d < n; ++d) {
            const double x = g.coord(idx[d]);
            const double a = x + sign * spec.e[d] * t;
            r2 += a * a;
            ex += spec.e[d] * x;
        }
        w[i] = std::pow(1.0 + r2, 0.5 * lambda);
        const double sigma = sign * ex - t;
        ghost[i] = mu_ghost ? std::pow(1.0 + sigma * sigma, -(*mu_ghost)) : 1.0;
    }

    double num = 0.0;
    for (std::int64_t i = 0; i < g.size(); ++i) num = std::max(num, w[i] * std::abs(f[i]));

    const SpectralField hat = to_spectral(f);
    double den = 0.0;
    for (const MultiIndex& b : multi_indices(n, 0, n / 2 + 1)) {
        const ScalarField db = order(b) == 0 ? f : to_physical(spectral_derivative(hat, b));
        double sq = 0.0;
        for (std::int64_t i = 0; i < g.size(); ++i) {
            const double v = w[i] * db[i];
            sq += v * v * ghost[i];
        }
        den += std::sqrt(sq * cell);
    }
    if (den == 0.0) throw std::invalid_argument("embedding: zero field has no ratio");
    return num / den;
}

}  // namespace mhdwave
