#include "mhdwave/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace mhdwave {

namespace {

// One forward/backward plan pair per (n_dims, points). Planning is the only
// part of FFTW that is not thread safe, so creation is serialized; execution
// through the new-array interface runs concurrently. FFTW_ESTIMATE keeps
// plan selection deterministic run to run, FFTW_UNALIGNED lifts the
// alignment requirement of fftw_execute_dft on caller buffers.
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

PlanPair& plans_for(const Grid& g) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, PlanPair> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(g.n_dims, g.points);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const std::int64_t n = g.size();
    fftw_complex* a = fftw_alloc_complex(static_cast<size_t>(n));
    fftw_complex* b = fftw_alloc_complex(static_cast<size_t>(n));
    int dims[3] = {g.points, g.points, g.points};
    unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair p;
    p.fwd = fftw_plan_dft(g.n_dims, dims, a, b, FFTW_FORWARD, flags);
    p.bwd = fftw_plan_dft(g.n_dims, dims, a, b, FFTW_BACKWARD, flags);
    fftw_free(a);
    fftw_free(b);
    if (!p.fwd || !p.bwd) throw std::runtime_error("fftw plan creation failed");
    return cache.emplace(key, p).first->second;
}

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

// The spatial origin sits at storage index points/2 on each axis, so true
// coefficients in the basis exp(i xi_m . x) differ from raw FFT output by
// (-1)^(sum of modes). The flip is its own inverse and commutes with every
// diagonal-in-mode operation here.
void flip_mode_signs(SpectralField& f) {
    const Grid& g = f.grid();
    int idx[3];
    for (std::int64_t i = 0; i < f.size(); ++i) {
        unflatten(g, i, idx);
        int s = 0;
        for (int d = 0; d < g.n_dims; ++d) s += idx[d];
        if (s & 1) f[i] = -f[i];
    }
}

}  // namespace

SpectralField to_spectral(const ScalarField& f) {
    const Grid& g = f.grid();
    SpectralField out(g);
    std::vector<std::complex<double>> in(static_cast<size_t>(g.size()));
    for (std::int64_t i = 0; i < g.size(); ++i) in[static_cast<size_t>(i)] = f[i];
    fftw_execute_dft(plans_for(g).fwd, as_fftw(in.data()), as_fftw(out.data()));
    const double scale = 1.0 / static_cast<double>(g.size());
    for (std::int64_t i = 0; i < out.size(); ++i) out[i] *= scale;
    flip_mode_signs(out);
    return out;
}

ScalarField to_physical(const SpectralField& f) {
    const Grid& g = f.grid();
    SpectralField in = f;
    flip_mode_signs(in);
    std::vector<std::complex<double>> out(static_cast<size_t>(g.size()));
    fftw_execute_dft(plans_for(g).bwd, as_fftw(in.data()), as_fftw(out.data()));
    ScalarField r(g);
    for (std::int64_t i = 0; i < g.size(); ++i) r[i] = out[static_cast<size_t>(i)].real();
    return r;
}

namespace {

// Per-axis multiplier tables for (i xi)^order with the odd-order Nyquist rule.
std::vector<std::complex<double>> axis_multiplier(const Grid& g, int order) {
    std::vector<std::complex<double>> m(static_cast<size_t>(g.points));
    for (int j = 0; j < g.points; ++j) {
        if (order % 2 == 1 && j == g.points / 2) {
            m[static_cast<size_t>(j)] = 0.0;
            continue;
        }
        std::complex<double> v(0.0, g.wavenumber(j));
        std::complex<double> acc(1.0, 0.0);
        for (int k = 0; k < order; ++k) acc *= v;
        m[static_cast<size_t>(j)] = acc;
    }
    return m;
}

}  // namespace

SpectralField spectral_derivative(const SpectralField& f, int axis, int order) {
    MultiIndex a = {0, 0, 0};
    a[static_cast<size_t>(axis)] = order;
    return spectral_derivative(f, a);
}

SpectralField spectral_derivative(const SpectralField& f, const MultiIndex& a) {
    const Grid& g = f.grid();
    for (int d = 0; d < 3; ++d)
        if (a[static_cast<size_t>(d)] < 0 || (d >= g.n_dims && a[static_cast<size_t>(d)] != 0))
            throw std::invalid_argument("derivative multi-index does not fit the grid");
    SpectralField out = f;
    int idx[3];
    for (int d = 0; d < g.n_dims; ++d) {
        const int ord = a[static_cast<size_t>(d)];
        if (ord == 0) continue;
        auto m = axis_multiplier(g, ord);
        for (std::int64_t i = 0; i < out.size(); ++i) {
            unflatten(g, i, idx);
            out[i] *= m[static_cast<size_t>(idx[d])];
        }
    }
    return out;
}

ScalarField divergence(const VectorField& u) {
    const Grid& g = u.grid();
    SpectralField acc(g);
    for (int c = 0; c < g.n_dims; ++c) {
        SpectralField d = spectral_derivative(to_spectral(u.comp(c)), c, 1);
        for (std::int64_t i = 0; i < acc.size(); ++i) acc[i] += d[i];
    }
    return to_physical(acc);
}

void leray_project_spectral(std::vector<SpectralField>& u) {
    const Grid& g = u.at(0).grid();
    const int n = g.n_dims;
    if (static_cast<int>(u.size()) != n) throw std::invalid_argument("component count mismatch");
    int idx[3];
    const std::int64_t sz = g.size();
    for (std::int64_t i = 0; i < sz; ++i) {
        unflatten(g, i, idx);
        double xi[3] = {0, 0, 0};
        double k2 = 0.0;
        for (int d = 0; d < n; ++d) {
            xi[d] = g.wavenumber(idx[d]);
            k2 += xi[d] * xi[d];
        }
        if (k2 == 0.0) continue;  // zero mode passes through
        std::complex<double> dot(0.0, 0.0);
        for (int d = 0; d < n; ++d) dot += xi[d] * u[static_cast<size_t>(d)][i];
        dot /= k2;
        for (int d = 0; d < n; ++d) u[static_cast<size_t>(d)][i] -= xi[d] * dot;
    }
}

VectorField leray_project(const VectorField& u) {
    const Grid& g = u.grid();
    std::vector<SpectralField> s;
    s.reserve(static_cast<size_t>(g.n_dims));
    for (int c = 0; c < g.n_dims; ++c) s.push_back(to_spectral(u.comp(c)));
    leray_project_spectral(s);
    VectorField out(g);
    for (int c = 0; c < g.n_dims; ++c) out.comp(c) = to_physical(s[static_cast<size_t>(c)]);
    return out;
}

SpectralField inv_modulus(const SpectralField& f) {
    const Grid& g = f.grid();
    double l2 = 0.0;
    for (std::int64_t i = 0; i < f.size(); ++i) l2 += std::norm(f[i]);
    l2 = std::sqrt(l2);
    if (std::abs(f[0]) > 1e-12 * l2)
        throw std::invalid_argument("inv_modulus requires a zero-mean field");
    SpectralField out = f;
    out[0] = 0.0;
    int idx[3];
    for (std::int64_t i = 1; i < out.size(); ++i) {
        unflatten(g, i, idx);
        double k2 = 0.0;
        for (int d = 0; d < g.n_dims; ++d) {
            const double xi = g.wavenumber(idx[d]);
            k2 += xi * xi;
        }
        out[i] /= std::sqrt(k2);
    }
    return out;
}

ScalarField inv_modulus(const ScalarField& f) { return to_physical(inv_modulus(to_spectral(f))); }

int dealias_limit(const Grid& g) { return g.points / 3; }

void dealias(SpectralField& f) {
    const Grid& g = f.grid();
    const int limit = dealias_limit(g);
    int idx[3];
    for (std::int64_t i = 0; i < f.size(); ++i) {
        unflatten(g, i, idx);
        for (int d = 0; d < g.n_dims; ++d) {
            if (std::abs(g.mode(idx[d])) > limit) {
                f[i] = 0.0;
                break;
            }
        }
    }
}

double l2_norm(const ScalarField& f) {
    const Grid& g = f.grid();
    double s = 0.0;
    for (std::int64_t i = 0; i < f.size(); ++i) s += f[i] * f[i];
    double vol_cell = 1.0;
    for (int d = 0; d < g.n_dims; ++d) vol_cell *= g.spacing;
    return std::sqrt(s * vol_cell);
}

double l2_norm(const SpectralField& f) {
    const Grid& g = f.grid();
    double s = 0.0;
    for (std::int64_t i = 0; i < f.size(); ++i) s += std::norm(f[i]);
    double vol = 1.0;
    for (int d = 0; d < g.n_dims; ++d) vol *= 2.0 * g.half_length;
    return std::sqrt(s * vol);
}

double mean(const ScalarField& f) {
    double s = 0.0;
    for (std::int64_t i = 0; i < f.size(); ++i) s += f[i];
    return s / static_cast<double>(f.size());
}

}  // namespace mhdwave
