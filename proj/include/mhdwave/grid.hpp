#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace mhdwave {

// Uniform periodic grid on [-half_length, half_length)^n_dims.
// points is the per-axis count; spacing * points == 2 * half_length exactly
// (points is a power of two, so the division is binary-exact).
struct Grid {
    int n_dims = 0;
    int points = 0;
    double half_length = 0.0;
    double spacing = 0.0;

    std::int64_t size() const {
        std::int64_t s = 1;
        for (int d = 0; d < n_dims; ++d) s *= points;
        return s;
    }
    // Coordinate of grid index i along one axis: (i - points/2) * spacing.
    double coord(int index) const { return (index - points / 2) * spacing; }
    // Signed integer mode for FFT bin j (Nyquist maps to -points/2).
    int mode(int j) const { return j < points / 2 ? j : j - points; }
    // Wavenumber of FFT bin j: mode * pi / half_length.
    double wavenumber(int j) const;

    bool operator==(const Grid&) const = default;
};

// Validates n_dims in {2,3}, points a power of two >= 16, half_length > 0.
Grid make_grid(int n_dims, int points_per_dim, double half_length);

// Background direction; unit vector with n_dims active components.
using Direction = std::array<double, 3>;

// Throws unless |e| = 1 within 1e-12 and trailing components vanish.
void check_direction(const Grid& g, const Direction& e);

// Multi-index for mixed partial derivatives; order() = |a|.
using MultiIndex = std::array<int, 3>;
inline int order(const MultiIndex& a) { return a[0] + a[1] + a[2]; }

// All multi-indices with min_order <= |a| <= max_order, graded lexicographic.
std::vector<MultiIndex> multi_indices(int n_dims, int min_order, int max_order);

class ScalarField {
public:
    ScalarField() = default;
    explicit ScalarField(const Grid& g) : grid_(g), values_(g.size(), 0.0) {}
    ScalarField(const Grid& g, std::vector<double> v);

    const Grid& grid() const { return grid_; }
    double* data() { return values_.data(); }
    const double* data() const { return values_.data(); }
    std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }
    double operator[](std::int64_t i) const { return values_[i]; }
    double& operator[](std::int64_t i) { return values_[i]; }

private:
    Grid grid_;
    std::vector<double> values_;
};

class VectorField {
public:
    VectorField() = default;
    explicit VectorField(const Grid& g) : grid_(g), comps_(g.n_dims, ScalarField(g)) {}

    const Grid& grid() const { return grid_; }
    int n_comps() const { return static_cast<int>(comps_.size()); }
    ScalarField& comp(int i) { return comps_[i]; }
    const ScalarField& comp(int i) const { return comps_[i]; }

private:
    Grid grid_;
    std::vector<ScalarField> comps_;
};

// Decompose a flat row-major index into per-axis indices.
inline void unflatten(const Grid& g, std::int64_t flat, int* idx) {
    for (int d = g.n_dims - 1; d >= 0; --d) {
        idx[d] = static_cast<int>(flat % g.points);
        flat /= g.points;
    }
}

double max_abs(const ScalarField& f);
double max_abs(const VectorField& u);   // pointwise Euclidean magnitude
bool all_finite(const VectorField& u);

}  // namespace mhdwave
