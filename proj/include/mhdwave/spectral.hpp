#pragma once

#include <complex>
#include <vector>

#include "mhdwave/grid.hpp"

namespace mhdwave {

// Fourier coefficients on the grid's mode lattice, row-major like the
// physical fields. Convention: forward transform carries 1/points^n, so the
// zero mode equals the field mean and synthesis is a plain mode sum.
// Real-origin fields keep Hermitian symmetry; to_physical discards the
// residual imaginary part, which stays at roundoff under the operations here.
class SpectralField {
public:
    SpectralField() = default;
    explicit SpectralField(const Grid& g) : grid_(g), coeffs_(g.size(), {0.0, 0.0}) {}

    const Grid& grid() const { return grid_; }
    std::complex<double>* data() { return coeffs_.data(); }
    const std::complex<double>* data() const { return coeffs_.data(); }
    std::int64_t size() const { return static_cast<std::int64_t>(coeffs_.size()); }
    std::complex<double> operator[](std::int64_t i) const { return coeffs_[i]; }
    std::complex<double>& operator[](std::int64_t i) { return coeffs_[i]; }

private:
    Grid grid_;
    std::vector<std::complex<double>> coeffs_;
};

SpectralField to_spectral(const ScalarField& f);
ScalarField to_physical(const SpectralField& f);

// d^order/dx_axis^order as the multiplier (i xi_axis)^order. For odd orders
// the Nyquist bin is zeroed: it has no conjugate partner, and keeping it
// would break realness of the synthesized field.
SpectralField spectral_derivative(const SpectralField& f, int axis, int order);

// Mixed partial given by a multi-index (applies the axis rule above per axis).
SpectralField spectral_derivative(const SpectralField& f, const MultiIndex& a);

ScalarField divergence(const VectorField& u);

// Orthogonal projection onto divergence-free fields: u - xi (xi.u)/|xi|^2,
// zero mode passed through unchanged. Idempotent and self-adjoint.
VectorField leray_project(const VectorField& u);
void leray_project_spectral(std::vector<SpectralField>& u);

// |grad|^-1: divide by |xi|, zero mode stays zero. Requires zero mean:
// |zero-mode coefficient| <= 1e-12 * coefficient l2 norm.
ScalarField inv_modulus(const ScalarField& f);
SpectralField inv_modulus(const SpectralField& f);

// 2/3-rule truncation: zero every mode with |mode| > floor(points/3) on any
// axis. Applied after each pointwise product so quadratic aliases never
// reach the retained band (points is a power of two, never divisible by 3).
void dealias(SpectralField& f);
int dealias_limit(const Grid& g);

// L2 norms; the spectral one uses Parseval with the (2 half_length)^{n/2} factor.
double l2_norm(const ScalarField& f);
double l2_norm(const SpectralField& f);

double mean(const ScalarField& f);

}  // namespace mhdwave
