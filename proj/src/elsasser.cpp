#include "mhdwave/elsasser.hpp"

#include <cmath>
#include <stdexcept>

namespace mhdwave {

namespace {

double divergence_scale(const VectorField& a, const VectorField& b) {
    constexpr double pi = 3.14159265358979323846;
    const double amp = std::max(max_abs(a), max_abs(b));
    return pi / a.grid().spacing * amp + 1e-300;
}

}  // namespace

ElsasserState from_physical(const PhysicalState& s) {
    const Grid& g = s.velocity.grid();
    check_direction(g, s.background);
    ElsasserState out;
    out.time = s.time;
    out.lambda_plus = VectorField(g);
    out.lambda_minus = VectorField(g);
    for (int c = 0; c < g.n_dims; ++c) {
        const double e_c = s.background[static_cast<size_t>(c)];
        for (std::int64_t i = 0; i < g.size(); ++i) {
            const double fluct = s.magnetic.comp(c)[i] - e_c;
            out.lambda_plus.comp(c)[i] = s.velocity.comp(c)[i] + fluct;
            out.lambda_minus.comp(c)[i] = s.velocity.comp(c)[i] - fluct;
        }
    }
    if (max_divergence_rel(out) > 1e-10)
        throw std::invalid_argument("velocity and magnetic fluctuation must be solenoidal");
    return out;
}

PhysicalState to_physical_fields(const ElsasserState& s, const Direction& e) {
    const Grid& g = s.grid();
    check_direction(g, e);
    PhysicalState out;
    out.background = e;
    out.time = s.time;
    out.velocity = VectorField(g);
    out.magnetic = VectorField(g);
    for (int c = 0; c < g.n_dims; ++c) {
        const double e_c = e[static_cast<size_t>(c)];
        for (std::int64_t i = 0; i < g.size(); ++i) {
            const double lp = s.lambda_plus.comp(c)[i], lm = s.lambda_minus.comp(c)[i];
            out.velocity.comp(c)[i] = 0.5 * (lp + lm);
            out.magnetic.comp(c)[i] = e_c + 0.5 * (lp - lm);
        }
    }
    return out;
}

PressureField pressure_solve(const ElsasserState& s) {
    const Grid& g = s.grid();
    const int n = g.n_dims;
    SpectralField rhs_hat(g);
    ScalarField prod(g);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (std::int64_t x = 0; x < g.size(); ++x)
                prod[x] = s.lambda_minus.comp(i)[x] * s.lambda_plus.comp(j)[x];
            SpectralField t = to_spectral(prod);
            dealias(t);
            int idx[3];
            for (std::int64_t m = 0; m < t.size(); ++m) {
                unflatten(g, m, idx);
                rhs_hat[m] += -g.wavenumber(idx[i]) * g.wavenumber(idx[j]) * t[m];
            }
        }
    }
    SpectralField p_hat(g);
    int idx[3];
    for (std::int64_t m = 1; m < p_hat.size(); ++m) {
        unflatten(g, m, idx);
        double k2 = 0.0;
        for (int d = 0; d < n; ++d) k2 += g.wavenumber(idx[d]) * g.wavenumber(idx[d]);
        if (k2 > 0.0) p_hat[m] = rhs_hat[m] / k2;
    }
    return PressureField{to_physical(p_hat)};
}

namespace {

// One Elsasser family: d/dt A = sign_e e.grad A - P[(B.grad)A] + nu lap A.
// Both families call this with mirrored arguments, which is what makes the
// reflection symmetry exact in floating point.
VectorField one_family(const VectorField& A, const VectorField& B, const Direction& e,
                       double sign_e, double nu, const RhsTerms& terms) {
    const Grid& g = A.grid();
    const int n = g.n_dims;

    std::vector<SpectralField> a_hat;
    a_hat.reserve(static_cast<size_t>(n));
    for (int c = 0; c < n; ++c) a_hat.push_back(to_spectral(A.comp(c)));

    // total_hat[j] accumulates every term of component j in spectral space
    std::vector<SpectralField> total_hat(static_cast<size_t>(n), SpectralField(g));

    if (terms.transport) {
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                if (e[static_cast<size_t>(i)] == 0.0) continue;
                SpectralField d = spectral_derivative(a_hat[static_cast<size_t>(j)], i, 1);
                const double c = sign_e * e[static_cast<size_t>(i)];
                for (std::int64_t m = 0; m < d.size(); ++m)
                    total_hat[static_cast<size_t>(j)][m] += c * d[m];
            }
    }

    if (terms.advection) {
        // dA[i][j] = d_i A_j in physical space, then (B.grad A)_j pointwise
        std::vector<SpectralField> adv_hat;
        adv_hat.reserve(static_cast<size_t>(n));
        ScalarField adv(g);
        for (int j = 0; j < n; ++j) {
            for (std::int64_t x = 0; x < g.size(); ++x) adv[x] = 0.0;
            for (int i = 0; i < n; ++i) {
                ScalarField dij = to_physical(spectral_derivative(a_hat[static_cast<size_t>(j)], i, 1));
                for (std::int64_t x = 0; x < g.size(); ++x) adv[x] += B.comp(i)[x] * dij[x];
            }
            SpectralField ah = to_spectral(adv);
            dealias(ah);
            ah[0] = 0.0;  // the advection term integrates to zero over the box
            adv_hat.push_back(std::move(ah));
        }
        leray_project_spectral(adv_hat);
        for (int j = 0; j < n; ++j)
            for (std::int64_t m = 0; m < total_hat[static_cast<size_t>(j)].size(); ++m)
                total_hat[static_cast<size_t>(j)][m] -= adv_hat[static_cast<size_t>(j)][m];
    }

    if (terms.diffusion && nu > 0.0) {
        int idx[3];
        for (int j = 0; j < n; ++j)
            for (std::int64_t m = 0; m < total_hat[static_cast<size_t>(j)].size(); ++m) {
                unflatten(g, m, idx);
                double k2 = 0.0;
                for (int d = 0; d < n; ++d) k2 += g.wavenumber(idx[d]) * g.wavenumber(idx[d]);
                total_hat[static_cast<size_t>(j)][m] -= nu * k2 * a_hat[static_cast<size_t>(j)][m];
            }
    }

    VectorField out(g);
    for (int j = 0; j < n; ++j) out.comp(j) = to_physical(total_hat[static_cast<size_t>(j)]);
    return out;
}

}  // namespace

ElsasserRhs rhs(const ElsasserState& s, double nu, const Direction& e, const RhsTerms& terms) {
    if (nu < 0.0) throw std::invalid_argument("viscosity must be nonnegative");
    check_direction(s.grid(), e);
    ElsasserRhs out;
    out.plus = one_family(s.lambda_plus, s.lambda_minus, e, +1.0, nu, terms);
    out.minus = one_family(s.lambda_minus, s.lambda_plus, e, -1.0, nu, terms);
    return out;
}

double max_divergence_rel(const ElsasserState& s) {
    const double scale = divergence_scale(s.lambda_plus, s.lambda_minus);
    const double dp = max_abs(divergence(s.lambda_plus));
    const double dm = max_abs(divergence(s.lambda_minus));
    return std::max(dp, dm) / scale;
}

void project_state(ElsasserState& s) {
    s.lambda_plus = leray_project(s.lambda_plus);
    s.lambda_minus = leray_project(s.lambda_minus);
}

}  // namespace mhdwave
