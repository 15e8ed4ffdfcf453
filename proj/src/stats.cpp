#include "activestokes/stats.hpp"

namespace astk {

MomentSummary empirical_moments(const SuspensionConfig& cfg, double alpha_J,
                                const BinGrid& bins) {
    MomentSummary s;
    s.N = cfg.N;
    s.bins = bins;
    s.counts.assign(bins.count(), 0);
    s.stress.assign(bins.count(), Mat3::zero());
    const Mat3 id3 = (1.0 / 3.0) * Mat3::identity();
    for (long i = 0; i < cfg.N; ++i) {
        Vec3 p = cfg.orientations[i];
        s.first_moment += p;
        s.second_moment += outer(p, p);
        long b = bins.bin_of(cfg.centers[i]);
        s.counts[b]++;
        s.stress[b] += (alpha_J / double(cfg.N)) * (outer(p, p) - id3);
    }
    s.first_moment = s.first_moment / double(cfg.N);
    s.second_moment = (1.0 / double(cfg.N)) * s.second_moment;
    for (const Mat3& m : s.stress) s.global_stress += m;
    return s;
}

std::vector<StressConvergenceRow> stress_convergence(const std::vector<long>& Ns,
                                                     const std::vector<std::uint64_t>& seeds,
                                                     const OrientationDensity& density,
                                                     const SwimmerParams& sp, double lambda,
                                                     double sep_c, SampleMode mode,
                                                     const BinGrid& bins) {
    ActiveStress stress = active_stress(density, sp);
    // continuum bin integrals of sigma_1 (midpoint subsampling per bin)
    std::vector<Mat3> target(bins.count(), Mat3::zero());
    const int sub = 4;
    double h = 1.0 / (bins.n * sub);
    for (long b = 0; b < bins.count(); ++b) {
        Vec3 lo = bins.center_of(b) - Vec3{0.5 / bins.n, 0.5 / bins.n, 0.5 / bins.n};
        Mat3 acc{};
        for (int i = 0; i < sub; ++i)
            for (int j = 0; j < sub; ++j)
                for (int k = 0; k < sub; ++k) {
                    Vec3 x = lo + Vec3{(i + 0.5) * h, (j + 0.5) * h, (k + 0.5) * h};
                    if (stress.domain.contains(x)) acc += (h * h * h) * stress.sigma(x);
                }
        target[b] = acc;
    }

    std::vector<StressConvergenceRow> rows;
    double alpha_J = stress.alpha * stress.Jcal;
    for (long N : Ns) {
        for (std::uint64_t seed : seeds) {
            SuspensionConfig cfg =
                sample_configuration(density, N, lambda, sep_c, sp.beta, seed, mode);
            MomentSummary ms = empirical_moments(cfg, alpha_J, bins);
            double d2 = 0.0;
            for (long b = 0; b < bins.count(); ++b) {
                Mat3 diff = ms.stress[b] - target[b];
                d2 += ddot(diff, diff);
            }
            rows.push_back({N, seed, std::sqrt(d2)});
        }
    }
    return rows;
}

} // namespace astk
