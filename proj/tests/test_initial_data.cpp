#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "mhdwave/energies.hpp"
#include "mhdwave/initial_data.hpp"
#include "mhdwave/integrator.hpp"
#include "oracles.hpp"

using namespace mhdwave;

namespace {

WeightSpec make_spec(const Grid& g, double mu = 0.6, int k = -1) {
    WeightSpec s;
    s.mu = mu;
    s.k = k < 0 ? g.n_dims + 3 : k;
    s.grid = g;
    return s;
}

// Periodic shift by whole cells along axis 0, 2D. Exact transport oracle when
// t * e lands on the lattice.
VectorField roll0(const VectorField& f, int cells) {
    const Grid& g = f.grid();
    const int N = g.points;
    VectorField out(g);
    for (int d = 0; d < g.n_dims; ++d)
        for (int i0 = 0; i0 < N; ++i0)
            for (int i1 = 0; i1 < N; ++i1) {
                const int j0 = (i0 + cells % N + N) % N;
                out.comp(d)[static_cast<std::int64_t>(i0) * N + i1] =
                    f.comp(d)[static_cast<std::int64_t>(j0) * N + i1];
            }
    return out;
}

double max_diff(const VectorField& a, const VectorField& b) {
    double m = 0.0;
    for (int d = 0; d < a.grid().n_dims; ++d)
        for (std::int64_t i = 0; i < a.comp(d).size(); ++i)
            m = std::max(m, std::abs(a.comp(d)[i] - b.comp(d)[i]));
    return m;
}

bool identical(const ElsasserState& a, const ElsasserState& b) {
    for (int d = 0; d < a.grid().n_dims; ++d)
        for (std::int64_t i = 0; i < a.lambda_plus.comp(d).size(); ++i) {
            if (a.lambda_plus.comp(d)[i] != b.lambda_plus.comp(d)[i]) return false;
            if (a.lambda_minus.comp(d)[i] != b.lambda_minus.comp(d)[i]) return false;
        }
    return true;
}

void scale(ElsasserState& s, double c) {
    for (VectorField* f : {&s.lambda_plus, &s.lambda_minus})
        for (int d = 0; d < f->grid().n_dims; ++d)
            for (std::int64_t i = 0; i < f->comp(d).size(); ++i) f->comp(d)[i] *= c;
}

}  // namespace

TEST_CASE("lcg64 stream is deterministic with sane normals") {
    Lcg64 a(42), b(42), c(43);
    bool same = true, differ = false;
    for (int i = 0; i < 1000; ++i) {
        const std::uint64_t x = a.next_u64();
        same = same && x == b.next_u64();
        differ = differ || x != c.next_u64();
    }
    CHECK(same);
    CHECK(differ);

    Lcg64 r(7);
    double sum = 0.0, sum2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double z = r.normal();
        sum += z;
        sum2 += z * z;
    }
    const double mean = sum / n;
    CHECK(std::abs(mean) < 0.01);
    CHECK(std::abs(sum2 / n - mean * mean - 1.0) < 0.02);

    Lcg64 u(11);
    for (int i = 0; i < 1000; ++i) {
        const double v = u.uniform();
        CHECK(v > 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("sampler determinism and zero target") {
    const Grid g = make_grid(2, 128, 16.0);
    const WeightSpec spec = make_spec(g);

    InitialDataReport rep;
    const ElsasserState zero = sample_localized_divfree(g, 0.0, 1.0, 5, spec, &rep);
    CHECK(max_abs(zero.lambda_plus) == 0.0);
    CHECK(max_abs(zero.lambda_minus) == 0.0);
    CHECK(rep.epsilon_inviscid == 0.0);
    CHECK(rep.seed == 5);

    const ElsasserState s1 = sample_localized_divfree(g, 1e-4, 1.0, 99, spec);
    const ElsasserState s2 = sample_localized_divfree(g, 1e-4, 1.0, 99, spec);
    const ElsasserState s3 = sample_localized_divfree(g, 1e-4, 1.0, 100, spec);
    CHECK(identical(s1, s2));
    CHECK(!identical(s1, s3));
}

TEST_CASE("sampler output is admissible data") {
    const Grid g = make_grid(2, 128, 16.0);
    const WeightSpec spec = make_spec(g);

    InitialDataReport rep;
    const ElsasserState s = sample_localized_divfree(g, 1e-4, 1.0, 7, spec, &rep);
    CHECK(s.time == 0.0);
    CHECK(all_finite(s.lambda_plus));
    CHECK(all_finite(s.lambda_minus));
    CHECK(max_divergence_rel(s) < 1e-11);
    for (int d = 0; d < 2; ++d) {
        CHECK(std::abs(mean(s.lambda_plus.comp(d))) < 1e-13);
        CHECK(std::abs(mean(s.lambda_minus.comp(d))) < 1e-13);
    }
    CHECK(rep.epsilon_inviscid == doctest::Approx(1e-4).epsilon(0.01));
    CHECK(rep.epsilon_viscous >= rep.epsilon_inviscid);
    CHECK(rep.concentration_radius < g.half_length / 2.0);
    CHECK(rep.concentration_radius > 0.0);

    CHECK_THROWS_AS(sample_localized_divfree(g, -1.0, 1.0, 7, spec), std::invalid_argument);
    CHECK_THROWS_AS(sample_localized_divfree(g, 1e-4, 0.5, 7, spec), std::invalid_argument);
    WeightSpec other = make_spec(make_grid(2, 32, 8.0));
    CHECK_THROWS_AS(sample_localized_divfree(g, 1e-4, 1.0, 7, other), std::invalid_argument);
}

TEST_CASE("epsilon measurement is quadratic and splits the low block") {
    const Grid g = make_grid(2, 128, 16.0);
    const WeightSpec spec = make_spec(g);
    ElsasserState s = sample_localized_divfree(g, 1e-4, 1.0, 21, spec);

    const InitialDataReport r1 = measure_epsilon(s, spec, true);
    ElsasserState doubled = s;
    scale(doubled, 2.0);
    const InitialDataReport r2 = measure_epsilon(doubled, spec, true);
    CHECK(r2.epsilon_inviscid ==
          doctest::Approx(4.0 * r1.epsilon_inviscid).epsilon(1e-12));
    CHECK(r2.epsilon_viscous == doctest::Approx(4.0 * r1.epsilon_viscous).epsilon(1e-12));

    // The viscous flag adds exactly the |grad|^-1 blocks; recompute those with
    // the spectral inverse-modulus path.
    const InitialDataReport r0 = measure_epsilon(s, spec, false);
    CHECK(r0.epsilon_viscous == r0.epsilon_inviscid);
    double low = 0.0;
    for (const VectorField* f : {&s.lambda_plus, &s.lambda_minus})
        for (int d = 0; d < 2; ++d) {
            const double nrm = l2_norm(inv_modulus(to_spectral(f->comp(d))));
            low += nrm * nrm;
        }
    CHECK(r1.epsilon_viscous - r1.epsilon_inviscid ==
          doctest::Approx(low).epsilon(1e-12));

    ElsasserState late = s;
    late.time = 0.5;
    CHECK_THROWS_AS(measure_epsilon(late, spec, false), std::invalid_argument);
}

TEST_CASE("single-mode epsilon matches the dense oracle") {
    const Grid g = make_grid(2, 32, 8.0);
    const WeightSpec spec = make_spec(g);
    ElsasserState s;
    s.time = 0.0;
    s.lambda_plus = oracle::single_mode_2d(g, {2, 1}, 0.7, 0.4);
    s.lambda_minus = VectorField(g);

    const InitialDataReport rep = measure_epsilon(s, spec, false);
    const double want = oracle::dense_mode_energy(
        g, {2.0 * oracle::pi / 8.0, oracle::pi / 8.0, 0.0}, 0.7, 0.4, spec.e, 0.0, 1.0, spec.mu,
        spec.k);
    CHECK(rep.epsilon_inviscid == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("ring profile shape and admissibility") {
    const Grid g = make_grid(2, 64, 16.0);
    const WeightSpec spec = make_spec(g);
    const Direction e{1.0, 0.0, 0.0};
    const ElsasserState s = linear_alfven_profile(g, ProfileShape::gaussian_ring, 0.01, e, 2.0);

    CHECK(max_abs(s.lambda_minus) == 0.0);
    CHECK(max_abs(s.lambda_plus) == doctest::Approx(0.01).epsilon(0.02));
    CHECK(max_divergence_rel(s) < 1e-11);

    // The weighted 99.9% radius needs headroom over the ring; measure on a box
    // twice as wide at the same resolution.
    const Grid wide = make_grid(2, 128, 32.0);
    const ElsasserState sw =
        linear_alfven_profile(wide, ProfileShape::gaussian_ring, 0.01, e, 2.0);
    const InitialDataReport rep = measure_epsilon(sw, make_spec(wide), false);
    CHECK(rep.concentration_radius < wide.half_length / 2.0);

    CHECK_THROWS_AS(linear_alfven_profile(g, ProfileShape::gaussian_ring, 0.0, e),
                    std::invalid_argument);
    CHECK_THROWS_AS(linear_alfven_profile(g, ProfileShape::gaussian_ring, 0.01, e, -1.0),
                    std::invalid_argument);
}

TEST_CASE("ring transport is a lattice roll at integer shifts") {
    const Grid g = make_grid(2, 64, 16.0);
    const Direction e{1.0, 0.0, 0.0};
    const ElsasserState s0 = linear_alfven_profile(g, ProfileShape::gaussian_ring, 0.01, e, 2.0);

    StepControl ctl;
    ctl.cfl_safety = 0.2;
    ctl.t_horizon = 1.0;
    const ElsasserState s1 = integrate(s0, ctl, 0.0, e, {});

    // t = 1 at spacing 0.5 is exactly two cells along axis 0.
    const VectorField expected = roll0(s0.lambda_plus, 2);
    CHECK(max_diff(s1.lambda_plus, expected) < 1e-8);
    CHECK(max_abs(s1.lambda_minus) == 0.0);
}

TEST_CASE("single-mode profile decays at the heat rate") {
    const Grid g = make_grid(2, 64, 8.0);
    const Direction e{1.0, 0.0, 0.0};
    const double amp = 0.01, nu = 0.1;
    const ElsasserState s0 = linear_alfven_profile(g, ProfileShape::single_mode, amp, e);
    CHECK(max_abs(s0.lambda_plus) == doctest::Approx(amp).epsilon(1e-12));

    StepControl ctl;
    ctl.t_horizon = 1.0;
    const ElsasserState s1 = integrate(s0, ctl, nu, e, {});

    // t = 1 at spacing 0.25 is four cells; |xi|^2 = 2 (pi/8)^2 for the (1,1) mode.
    const double xi = oracle::pi / 8.0;
    VectorField expected = roll0(s0.lambda_plus, 4);
    const double decay = std::exp(-nu * 2.0 * xi * xi);
    for (int d = 0; d < 2; ++d)
        for (std::int64_t i = 0; i < expected.comp(d).size(); ++i) expected.comp(d)[i] *= decay;
    CHECK(max_diff(s1.lambda_plus, expected) < 1e-8);
    CHECK(max_abs(s1.lambda_minus) == 0.0);
}

TEST_CASE("single-mode pair couples through a nonzero pressure") {
    const Grid g = make_grid(2, 32, 8.0);
    const ElsasserState s = single_mode_pair(g, {1, 2, 0}, {2, -1, 0}, 0.3, 0.2);
    CHECK(s.time == 0.0);
    CHECK(max_divergence_rel(s) < 1e-11);
    CHECK(max_abs(s.lambda_plus) == doctest::Approx(0.3).epsilon(0.05));
    CHECK(max_abs(s.lambda_minus) == doctest::Approx(0.2).epsilon(0.05));
    const PressureField p = pressure_solve(s);
    CHECK(max_abs(p.values) > 1e-4);

    CHECK_THROWS_AS(single_mode_pair(g, {0, 0, 0}, {1, 0, 0}, 0.1, 0.1), std::invalid_argument);
    const Grid g3 = make_grid(3, 16, 8.0);
    CHECK_THROWS_AS(single_mode_pair(g3, {1, 0, 1}, {0, 1, 0}, 0.1, 0.1), std::invalid_argument);
}
