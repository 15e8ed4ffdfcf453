// stats.hpp - discrete-to-continuum bridge: empirical moments per spatial bin
// and convergence of the discrete stress toward sigma_1.
#pragma once

#include <vector>

#include "activestokes/effective.hpp"
#include "activestokes/suspension.hpp"

namespace astk {

struct BinGrid {
    int n = 8; // n^3 bins over the unit cube

    long bin_of(Vec3 x) const {
        auto clamp = [this](double t) { return std::min(n - 1, std::max(0, int(t * n))); };
        return (long(clamp(x.x)) * n + clamp(x.y)) * n + clamp(x.z);
    }
    long count() const { return long(n) * n * n; }
    Vec3 center_of(long b) const {
        long iz = b % n, iy = (b / n) % n, ix = b / (long(n) * n);
        return {(ix + 0.5) / n, (iy + 0.5) / n, (iz + 0.5) / n};
    }
};

struct MomentSummary {
    long N = 0;
    Vec3 first_moment;          // mean orientation
    Mat3 second_moment;         // mean p⊗p (trace 1)
    BinGrid bins;
    std::vector<long> counts;   // per bin
    std::vector<Mat3> stress;   // per bin: (alpha J / N) sum_i (p_i⊗p_i - Id/3)
    Mat3 global_stress;
};

MomentSummary empirical_moments(const SuspensionConfig& cfg, double alpha_J,
                                const BinGrid& bins = {});

struct StressConvergenceRow {
    long N = 0;
    std::uint64_t seed = 0;
    double discrepancy = 0.0; // sqrt(sum over bins of |Sigma_bin - ∫_bin sigma_1|^2_F)
};

/// Per-bin discrepancy between the discrete stress and the continuum sigma_1
/// bin integral, for a sequence of configurations sampled from `density`.
std::vector<StressConvergenceRow> stress_convergence(const std::vector<long>& Ns,
                                                     const std::vector<std::uint64_t>& seeds,
                                                     const OrientationDensity& density,
                                                     const SwimmerParams& sp, double lambda,
                                                     double sep_c, SampleMode mode,
                                                     const BinGrid& bins = {});

} // namespace astk
