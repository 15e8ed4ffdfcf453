// suspension.hpp - discrete particle configurations: sampling under the
// separation assumption, separation diagnostics, the method-of-reflections
// field u_N^app, and the L2 boundary-error functional.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "activestokes/density.hpp"
#include "activestokes/swimmer.hpp"

namespace astk {

struct SuspensionConfig {
    long N = 0;
    double lambda = 0.0;  // volume fraction, (4/3) pi a^3 N
    double a = 0.0;
    double beta = 2.0;
    double sep_c = 1.0;   // constant c of the separation assumption
    std::uint64_t seed = 0;
    Domain domain;
    std::vector<Vec3> centers;
    std::vector<Vec3> orientations;

    /// radius consistent with (lambda, N)
    static double radius_for(double lambda, long N) {
        return std::cbrt(3.0 * lambda / (4.0 * M_PI * double(N)));
    }
    /// upper admissibility bound on beta: (c/2)(4 pi/3)^{1/3} lambda^{-1/3}
    double beta_admissible_bound() const {
        return 0.5 * sep_c * std::cbrt(4.0 * M_PI / 3.0) / std::cbrt(lambda);
    }
    double min_center_gap() const;
};

enum class SampleMode { strict, relaxed };

class PackingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class AdmissibilityError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Draw a configuration consistent with the density. Strict mode enforces the
/// minimum distance c N^{-1/3} (jittered-lattice stratification for uniform
/// rho; dart-throwing for non-uniform rho) and the beta admissibility bound;
/// relaxed mode records i.i.d. draws as-is. Deterministic given the seed.
SuspensionConfig sample_configuration(const OrientationDensity& density, long N, double lambda,
                                      double sep_c, double beta, std::uint64_t seed,
                                      SampleMode mode);

struct SeparationReport {
    double min_gap = 0.0;
    double eta = 0.0;
    std::vector<long> good_indices; // i with all gaps >= eta N^{-1/3}
    std::vector<long> bad_indices;
    double bad_fraction = 0.0;
    bool H2_ok = false;       // min gap >= c N^{-1/3}
    bool H2prime_ok = false;  // exists M > 2 beta with min gap >= M a
    double M_margin = 0.0;    // min gap / a - 2 beta
    /// sup over good i of sum over good j of (eta + |y_i - y_j|)^-4, y = N^{1/3} x
    double good_pair_sum_sup = 0.0;
    /// the same sup rescaled by eta^4 (bounded by a constant per Lemma 6.3)
    double lemma63_constant = 0.0;
};

SeparationReport separation_report(const SuspensionConfig& cfg, double eta);

/// Direct summation of the elementary solutions over all particles at the
/// given points. Deterministic particle order per point; parallel over points.
/// Throws SingularPointError naming the offending particle if a point hits a
/// force or image point.
std::vector<Vec3> u_app_evaluate(const SuspensionConfig& cfg, double alpha, FluidParams fluid,
                                 std::span<const Vec3> points);

struct BallQuadSpec {
    int n_r = 5, n_theta = 5, n_phi = 5;
    double refine_distance_factor = 4.0; // refine ball i when a neighbor is closer than factor*a
    double neighbor_cutoff = 0.0;        // 0 = exact all-pairs sum
};

/// sum_i || D(h_i) ||^2_{L2(B_i)} with h_i = sum_{j != i} v[p_j](. - x_j);
/// analytic gradients, per-ball Gauss quadrature.
double boundary_error_functional(const SuspensionConfig& cfg, double alpha, FluidParams fluid,
                                 const BallQuadSpec& quad = {});

/// structured-text snapshot; round-trips bit-exactly
void save_config(const SuspensionConfig& cfg, const std::string& path);
SuspensionConfig load_config(const std::string& path);

} // namespace astk
