#include "mhdwave/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mhdwave {

double Grid::wavenumber(int j) const {
    constexpr double pi = 3.14159265358979323846;
    return mode(j) * pi / half_length;
}

Grid make_grid(int n_dims, int points_per_dim, double half_length) {
    if (n_dims != 2 && n_dims != 3)
        throw std::invalid_argument("n_dims must be 2 or 3");
    if (points_per_dim < 16 || (points_per_dim & (points_per_dim - 1)) != 0)
        throw std::invalid_argument("points_per_dim must be a power of two >= 16");
    if (!(half_length > 0.0))
        throw std::invalid_argument("half_length must be positive");
    Grid g;
    g.n_dims = n_dims;
    g.points = points_per_dim;
    g.half_length = half_length;
    g.spacing = 2.0 * half_length / points_per_dim;
    return g;
}

void check_direction(const Grid& g, const Direction& e) {
    double s = 0.0;
    for (int d = 0; d < 3; ++d) {
        if (d >= g.n_dims && e[d] != 0.0)
            throw std::invalid_argument("background direction has a component outside the grid dimensions");
        s += e[d] * e[d];
    }
    if (std::abs(std::sqrt(s) - 1.0) > 1e-12)
        throw std::invalid_argument("background direction must be a unit vector");
}

std::vector<MultiIndex> multi_indices(int n_dims, int min_order, int max_order) {
    std::vector<MultiIndex> out;
    for (int total = min_order; total <= max_order; ++total) {
        if (n_dims == 2) {
            for (int a0 = total; a0 >= 0; --a0) out.push_back({a0, total - a0, 0});
        } else {
            for (int a0 = total; a0 >= 0; --a0)
                for (int a1 = total - a0; a1 >= 0; --a1)
                    out.push_back({a0, a1, total - a0 - a1});
        }
    }
    return out;
}

ScalarField::ScalarField(const Grid& g, std::vector<double> v) : grid_(g), values_(std::move(v)) {
    if (static_cast<std::int64_t>(values_.size()) != g.size())
        throw std::invalid_argument("field size does not match grid");
}

double max_abs(const ScalarField& f) {
    double m = 0.0;
    for (std::int64_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i]));
    return m;
}

double max_abs(const VectorField& u) {
    const std::int64_t n = u.grid().size();
    double m = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (int c = 0; c < u.n_comps(); ++c) s += u.comp(c)[i] * u.comp(c)[i];
        m = std::max(m, s);
    }
    return std::sqrt(m);
}

bool all_finite(const VectorField& u) {
    for (int c = 0; c < u.n_comps(); ++c)
        for (std::int64_t i = 0; i < u.comp(c).size(); ++i)
            if (!std::isfinite(u.comp(c)[i])) return false;
    return true;
}

}  // namespace mhdwave
