#pragma once

#include <cstdint>

#include "mhdwave/elsasser.hpp"
#include "mhdwave/weights.hpp"

namespace mhdwave {

// Deterministic 64-bit LCG (Knuth MMIX multiplier) with Box-Muller normals.
// Fixed here so runs are reproducible bit-for-bit across platforms and so the
// stream can be re-derived in another language from this description alone:
//   state <- state * 6364136223846793005 + 1442695040888963407
//   uniform = ((state >> 11) + 1) * 2^-53        (in (0, 1], log-safe)
//   normals via Box-Muller, cosine branch first, sine branch cached.
class Lcg64 {
public:
    explicit Lcg64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();
    double uniform();
    double normal();

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Summary of a measured initial state. Energies use the t = 0 weights, where
// the two bracket families coincide.
struct InitialDataReport {
    double epsilon_inviscid = 0.0;   // E_k at t = 0
    double epsilon_viscous = 0.0;    // adds the |grad|^-1 blocks when requested
    double concentration_radius = 0.0;  // 99.9% weighted-energy radius, < L/2
    std::uint64_t seed = 0;
};

// Measures a t = 0 state. With `viscous` the modified-energy low blocks are
// included in epsilon_viscous (requires zero-mean components); without it the
// two epsilons agree. Throws if state.time != 0.
InitialDataReport measure_epsilon(const ElsasserState& s, const WeightSpec& spec, bool viscous);

// Random localized divergence-free data, identical for identical seeds.
// Pipeline per family: Gaussian noise potentials with spectral envelope
// exp(-|xi|^2 l^2), a physical Gaussian mask of radius L/4, then the curl,
// dealias truncation, Leray projection, mean removal, and a quadratic rescale
// so the inviscid epsilon hits target_eps within 1%. correlation_length must
// be at least 4 grid spacings. target_eps = 0 returns the zero state.
// An unreachable target or a concentration radius >= L/2 is an error.
ElsasserState sample_localized_divfree(const Grid& g, double target_eps,
                                       double correlation_length, std::uint64_t seed,
                                       const WeightSpec& spec,
                                       InitialDataReport* report = nullptr);

enum class ProfileShape { gaussian_ring, single_mode };

// One-sided data (the minus family identically zero), so the nonlinearity
// vanishes and the exact solution is a rigid translate along e (times a heat
// factor when nu > 0). gaussian_ring is the azimuthal flow around the origin
// with peak speed `amplitude` at radius `ring_width`; single_mode is the
// lowest transverse sine mode with that amplitude. In 3D 'the plane' is spanned
// by the first two axes and the ring flow carries a Gaussian z-profile.
ElsasserState linear_alfven_profile(const Grid& g, ProfileShape shape, double amplitude,
                                    const Direction& e, double ring_width = 4.0);

// Two transverse modes, one per family, each a single-mode exact eigenfield of
// its own transport but coupled through the nonlinearity, so the pressure is
// nonzero. Resolution-independent analytic data for cross-resolution checks.
ElsasserState single_mode_pair(const Grid& g, const std::array<int, 3>& mode_plus,
                               const std::array<int, 3>& mode_minus, double amp_plus,
                               double amp_minus);

}  // namespace mhdwave
