#include "mhdwave/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "mhdwave/energies.hpp"
#include "mhdwave/spectral.hpp"

namespace mhdwave {

std::uint64_t Lcg64::next_u64() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return state_;
}

double Lcg64::uniform() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double Lcg64::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform(), u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

namespace {

double point_radius(const Grid& g, std::int64_t i) {
    int idx[3];
    unflatten(g, i, idx);
    double r2 = 0.0;
    for (int d = 0; d < g.n_dims; ++d) {
        const double x = g.coord(idx[d]);
        r2 += x * x;
    }
    return std::sqrt(r2);
}

// Smallest radius whose ball holds 99.9% of the integrand's cell sum.
double concentration_radius(const ScalarField& density) {
    const Grid& g = density.grid();
    std::vector<std::pair<double, double>> by_radius(g.size());
    double total = 0.0;
    for (std::int64_t i = 0; i < g.size(); ++i) {
        by_radius[i] = {point_radius(g, i), density[i]};
        total += density[i];
    }
    if (total <= 0.0) return 0.0;
    std::sort(by_radius.begin(), by_radius.end());
    double partial = 0.0;
    for (const auto& [r, v] : by_radius) {
        partial += v;
        if (partial >= 0.999 * total) return r;
    }
    return by_radius.back().first;
}

void scale_state(ElsasserState& s, double c) {
    for (VectorField* f : {&s.lambda_plus, &s.lambda_minus})
        for (int d = 0; d < f->grid().n_dims; ++d) {
            ScalarField& comp = f->comp(d);
            for (std::int64_t i = 0; i < comp.size(); ++i) comp[i] *= c;
        }
}

bool is_dc_mode(const Grid& g, std::int64_t i) {
    int idx[3];
    unflatten(g, i, idx);
    for (int d = 0; d < g.n_dims; ++d)
        if (g.mode(idx[d]) != 0) return false;
    return true;
}

// Enveloped Gaussian noise, localized by the mask. One scalar potential draw.
SpectralField masked_potential(const Grid& g, double correlation_length, double sigma,
                               Lcg64& rng) {
    ScalarField noise(g);
    for (std::int64_t i = 0; i < g.size(); ++i) noise[i] = rng.normal();
    SpectralField h = to_spectral(noise);
    int idx[3];
    for (std::int64_t i = 0; i < h.size(); ++i) {
        unflatten(g, i, idx);
        double k2 = 0.0;
        for (int a = 0; a < g.n_dims; ++a) {
            const double xi = g.wavenumber(idx[a]);
            k2 += xi * xi;
        }
        h[i] *= std::exp(-k2 * correlation_length * correlation_length);
    }
    ScalarField masked = to_physical(h);
    for (std::int64_t i = 0; i < g.size(); ++i) {
        const double r = point_radius(g, i);
        masked[i] *= std::exp(-r * r / (2.0 * sigma * sigma));
    }
    return to_spectral(masked);
}

// Noise -> spectral envelope -> physical mask -> band truncation, one family.
// The field is the curl of masked potentials rather than a Leray projection of
// a masked field: the projection of a localized non-solenoidal field leaves
// algebraic dipole tails, and under the <x>^{4mu} weight those push the 99.9%
// energy radius past L/2. The curl keeps the Gaussian decay exactly. The mask
// radius L/4 is the 2-sigma point of the Gaussian for the same reason.
VectorField shaped_noise(const Grid& g, double correlation_length, Lcg64& rng) {
    const double sigma = g.half_length / 8.0;
    std::vector<SpectralField> hat;
    hat.reserve(g.n_dims);
    if (g.n_dims == 2) {
        const SpectralField psi = masked_potential(g, correlation_length, sigma, rng);
        SpectralField u0 = spectral_derivative(psi, 1, 1);
        for (std::int64_t i = 0; i < u0.size(); ++i) u0[i] = -u0[i];
        hat.push_back(std::move(u0));
        hat.push_back(spectral_derivative(psi, 0, 1));
    } else {
        std::vector<SpectralField> pot;
        for (int d = 0; d < 3; ++d)
            pot.push_back(masked_potential(g, correlation_length, sigma, rng));
        for (int d = 0; d < 3; ++d) {
            const int a = (d + 1) % 3, b = (d + 2) % 3;
            SpectralField c = spectral_derivative(pot[b], a, 1);
            const SpectralField down = spectral_derivative(pot[a], b, 1);
            for (std::int64_t i = 0; i < c.size(); ++i) c[i] -= down[i];
            hat.push_back(std::move(c));
        }
    }
    for (SpectralField& h : hat) dealias(h);
    leray_project_spectral(hat);
    VectorField out(g);
    for (int d = 0; d < g.n_dims; ++d) {
        for (std::int64_t i = 0; i < hat[d].size(); ++i)
            if (is_dc_mode(g, i)) hat[d][i] = 0.0;
        out.comp(d) = to_physical(hat[d]);
    }
    return out;
}

}  // namespace

InitialDataReport measure_epsilon(const ElsasserState& s, const WeightSpec& spec, bool viscous) {
    if (s.time != 0.0) throw std::invalid_argument("measure_epsilon: state must be at t = 0");
    const EnergySample sample = energy_sample(s, spec, 0.0, false, viscous);
    InitialDataReport r;
    r.epsilon_inviscid = sample.E_k;
    r.epsilon_viscous = sample.Ecal_k;
    r.concentration_radius = concentration_radius(energy_integrand(s, spec));
    return r;
}

ElsasserState sample_localized_divfree(const Grid& g, double target_eps,
                                       double correlation_length, std::uint64_t seed,
                                       const WeightSpec& spec, InitialDataReport* report) {
    check_weight_spec(spec);
    if (!(g == spec.grid))
        throw std::invalid_argument("sample_localized_divfree: grid != weight spec grid");
    if (target_eps < 0.0)
        throw std::invalid_argument("sample_localized_divfree: target_eps must be nonnegative");
    if (correlation_length < 4.0 * g.spacing)
        throw std::invalid_argument(
            "sample_localized_divfree: correlation_length under 4 grid spacings");

    ElsasserState s;
    s.time = 0.0;
    if (target_eps == 0.0) {
        s.lambda_plus = VectorField(g);
        s.lambda_minus = VectorField(g);
        if (report) *report = InitialDataReport{0.0, 0.0, 0.0, seed};
        return s;
    }

    Lcg64 rng(seed);
    s.lambda_plus = shaped_noise(g, correlation_length, rng);
    s.lambda_minus = shaped_noise(g, correlation_length, rng);

    InitialDataReport measured = measure_epsilon(s, spec, false);
    if (measured.epsilon_inviscid <= 0.0)
        throw std::runtime_error("sample_localized_divfree: sample has no energy to rescale");
    for (int attempt = 0; attempt < 2; ++attempt) {
        if (std::abs(measured.epsilon_inviscid / target_eps - 1.0) <= 0.01) break;
        scale_state(s, std::sqrt(target_eps / measured.epsilon_inviscid));
        measured = measure_epsilon(s, spec, false);
    }
    if (std::abs(measured.epsilon_inviscid / target_eps - 1.0) > 0.01)
        throw std::runtime_error("sample_localized_divfree: target_eps unreachable");
    if (measured.concentration_radius >= 0.5 * g.half_length)
        throw std::runtime_error("sample_localized_divfree: data not concentrated in the box");

    if (report) {
        *report = measure_epsilon(s, spec, true);
        report->seed = seed;
    }
    return s;
}

ElsasserState linear_alfven_profile(const Grid& g, ProfileShape shape, double amplitude,
                                    const Direction& e, double ring_width) {
    check_direction(g, e);
    if (!(amplitude > 0.0) || !std::isfinite(amplitude))
        throw std::invalid_argument("linear_alfven_profile: amplitude must be positive");

    ElsasserState s;
    s.time = 0.0;
    s.lambda_plus = VectorField(g);
    s.lambda_minus = VectorField(g);

    if (shape == ProfileShape::gaussian_ring) {
        if (!(ring_width > 0.0))
            throw std::invalid_argument("linear_alfven_profile: ring_width must be positive");
        // Azimuthal flow around a Gaussian bump; peak speed `amplitude` on the
        // circle r = ring_width.
        const double norm = amplitude * ring_width * std::exp(0.5);
        int idx[3];
        for (std::int64_t i = 0; i < g.size(); ++i) {
            unflatten(g, i, idx);
            double x[3] = {0.0, 0.0, 0.0}, r2 = 0.0;
            for (int d = 0; d < g.n_dims; ++d) {
                x[d] = g.coord(idx[d]);
                r2 += x[d] * x[d];
            }
            const double psi = std::exp(-r2 / (2.0 * ring_width * ring_width));
            s.lambda_plus.comp(0)[i] = norm * x[1] / (ring_width * ring_width) * psi;
            s.lambda_plus.comp(1)[i] = -norm * x[0] / (ring_width * ring_width) * psi;
        }
    } else {
        // Lowest in-plane diagonal mode, polarized transverse to it.
        const double xi = std::numbers::pi / g.half_length;
        const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
        int idx[3];
        for (std::int64_t i = 0; i < g.size(); ++i) {
            unflatten(g, i, idx);
            const double phase = xi * (g.coord(idx[0]) + g.coord(idx[1]));
            const double v = amplitude * std::sin(phase);
            s.lambda_plus.comp(0)[i] = -v * inv_sqrt2;
            s.lambda_plus.comp(1)[i] = v * inv_sqrt2;
        }
    }
    return s;
}

ElsasserState single_mode_pair(const Grid& g, const std::array<int, 3>& mode_plus,
                               const std::array<int, 3>& mode_minus, double amp_plus,
                               double amp_minus) {
    ElsasserState s;
    s.time = 0.0;
    s.lambda_plus = VectorField(g);
    s.lambda_minus = VectorField(g);

    const auto fill = [&g](VectorField& f, const std::array<int, 3>& m, double amp) {
        if (g.n_dims == 3 && m[2] != 0)
            throw std::invalid_argument("single_mode_pair: modes must lie in the first two axes");
        const double xi0 = m[0] * std::numbers::pi / g.half_length;
        const double xi1 = m[1] * std::numbers::pi / g.half_length;
        const double len = std::hypot(xi0, xi1);
        if (len == 0.0) throw std::invalid_argument("single_mode_pair: zero mode");
        const double p0 = -xi1 / len, p1 = xi0 / len;
        int idx[3];
        for (std::int64_t i = 0; i < g.size(); ++i) {
            unflatten(g, i, idx);
            const double v = amp * std::sin(xi0 * g.coord(idx[0]) + xi1 * g.coord(idx[1]));
            f.comp(0)[i] = v * p0;
            f.comp(1)[i] = v * p1;
        }
    };
    fill(s.lambda_plus, mode_plus, amp_plus);
    fill(s.lambda_minus, mode_minus, amp_minus);
    return s;
}

}  // namespace mhdwave
