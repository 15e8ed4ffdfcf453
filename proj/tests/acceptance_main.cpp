// acceptance: end-to-end acceptance suite; one PASS/FAIL line per criterion,
// nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "activestokes/effective.hpp"
#include "activestokes/experiments.hpp"
#include "activestokes/fitting.hpp"
#include "activestokes/fokker_planck.hpp"
#include "activestokes/fp_oracle.hpp"
#include "activestokes/io.hpp"
#include "activestokes/rng.hpp"
#include "activestokes/stats.hpp"
#include "activestokes/suspension.hpp"
#include "activestokes/traction.hpp"

#include "support/fields.hpp"

using namespace astk;

namespace {

int g_failures = 0;
std::chrono::steady_clock::time_point g_t0;

void begin() { g_t0 = std::chrono::steady_clock::now(); }

void report(int criterion, const std::string& what, bool ok, const std::string& detail) {
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - g_t0).count();
    std::printf("[%s] criterion %2d: %s (%s; %.1fs)\n", ok ? "PASS" : "FAIL", criterion,
                what.c_str(), detail.c_str(), secs);
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

const FluidParams kFluid{};
const Vec3 kP = normalized(Vec3{0.28, -0.44, 0.86});

void criterion_1_force_identity() {
    begin();
    SurfaceQuadrature quad = SurfaceQuadrature::product_gauss(32, 64);
    double worst_f = 0.0, worst_t = 0.0;
    for (double beta : {1.5, 2.0, 4.0})
        for (double a : {0.5, 1.0}) {
            SwimmerParams sp(1.0, beta, a, kFluid);
            SurfaceTraction t = traction_on_sphere(elementary_flow(kP, sp), a, quad);
            worst_f = std::max(worst_f, norm(t.force + sp.kf() * kP) / std::abs(sp.kf()));
            worst_t = std::max(worst_t, norm(t.torque) / std::abs(sp.kf()));
        }
    report(1, "force identity: quadrature force = -k_f p, torque = 0",
           worst_f <= 1e-6 && worst_t <= 1e-8,
           "worst force rel err " + fmt(worst_f) + " <= 1e-6, torque " + fmt(worst_t) +
               " <= 1e-8, 6 cases");
}

void criterion_2_stresslet_identity() {
    begin();
    SurfaceQuadrature quad = SurfaceQuadrature::product_gauss(32, 64);
    double worst = 0.0, scalar_beta2 = 0.0;
    for (double beta : {1.5, 2.0, 4.0}) {
        SwimmerParams unit(1.0 / M_PI, beta, 1.0, kFluid); // k_f = 1, a = 1
        SurfaceTraction t = traction_on_sphere(elementary_flow(kP, unit), 1.0, quad);
        double s = -2.5 / (beta * beta) + 1.5 / std::pow(beta, 4);
        Mat3 expect = s * deviator(outer(kP, kP));
        worst = std::max(worst,
                         frobenius_norm(t.deviatoric_stresslet() - expect) / frobenius_norm(expect));
        if (beta == 2.0) scalar_beta2 = 1.5 * quad_form(t.deviatoric_stresslet(), kP);
    }
    bool ok = worst <= 1e-6 && std::abs(scalar_beta2 + 0.53125) <= 1e-6 * 0.53125;
    report(2, "stresslet identity: (-5/2 b^-2 + 3/2 b^-4) p⊗p (trace-free part)", ok,
           "worst rel err " + fmt(worst) + " <= 1e-6, beta=2 scalar " + fmt(scalar_beta2) +
               " vs -0.53125");
}

void criterion_3_scaling_law() {
    begin();
    Rng rng(301);
    double worst = 0.0;
    for (double beta : {1.5, 2.0}) {
        SwimmerParams sp(1.0, beta, 0.37, kFluid);
        SwimmerParams unit(1.0 / M_PI, beta, 1.0, kFluid);
        double kf = sp.kf();
        int accepted = 0;
        while (accepted < 1000) {
            Vec3 x = std::exp(rng.uniform(std::log(1.05), std::log(40.0))) * rng.unit_vector();
            if (std::min(norm(x - beta * kP), norm(x - kP / beta)) < 0.05) continue;
            ++accepted;
            Vec3 lhs = elementary_velocity(sp.a * x, kP, sp);
            Vec3 rhs = (kf / sp.a) * elementary_velocity(x, kP, unit);
            double denom = std::max(norm(rhs), std::abs(kf) / (sp.a * 4.0 * M_PI * norm2(x)));
            worst = std::max(worst, norm(lhs - rhs) / denom);
        }
    }
    report(3, "scaling law v[p](a x) = (k_f/a) w[p](x) at 10^3 random points", worst <= 1e-12,
           "worst rel err " + fmt(worst) + " <= 1e-12");
}

void criterion_4_dipole_remainder() {
    begin();
    ExperimentSpec spec = default_spec("dipole_remainder");
    spec.out_dir = "acceptance_out";
    ExperimentResult r = run_experiment(spec);
    double slope_a = 0, dec_lo = 0, dec_hi = 0;
    for (const auto& c : r.checks) {
        if (c.name == "remainder_slope_in_a") slope_a = c.measured;
        if (c.name == "remainder_decay_exponent_min") dec_lo = c.measured;
        if (c.name == "remainder_decay_exponent_max") dec_hi = c.measured;
    }
    report(4, "dipole remainder: slope 4.0+-0.1 in a, decay -3.0+-0.1 in |x|", r.passed,
           "slope_a " + fmt(slope_a) + ", decay range [" + fmt(dec_lo) + "," + fmt(dec_hi) + "]");
}

void criterion_5_boundary_error_scaling() {
    begin();
    ExperimentSpec spec = default_spec("boundary_error_scaling");
    spec.out_dir = "acceptance_out";
    ExperimentResult r = run_experiment(spec);
    double slope = 0;
    for (const auto& c : r.checks)
        if (c.name == "lambda_scaling_slope") slope = c.measured;
    report(5, "boundary-error functional: lambda^3 scaling at N=4096, 5-seed median", r.passed,
           "fitted slope " + fmt(slope) + " in [2.7, 3.3]");
}

void criterion_6_sigma1_null() {
    begin();
    SwimmerParams sp(1.0, 2.0, 0.1, kFluid);
    ActiveStress stress = active_stress(OrientationDensity::uniform(), sp);
    Rng rng(601);
    double worst_sigma = 0.0;
    for (int k = 0; k < 50; ++k)
        worst_sigma = std::max(worst_sigma, frobenius_norm(stress.sigma(rng.uniform_in_unit_cube())));
    EffectiveFlow w0 = solve_w0(stress, 0.01, kFluid, {24});
    double worst_w0 = 0.0;
    for (Vec3 x : {Vec3{0.5, 0.5, 0.5}, Vec3{0.25, 0.375, 0.625}, Vec3{1.6, 0.2, 0.7}})
        worst_w0 = std::max(worst_w0, norm(w0.velocity(x)));
    report(6, "isotropic density: sigma_1 = 0 and w0 at the quadrature floor",
           worst_sigma <= 1e-12 && worst_w0 <= 1e-13,
           "|sigma_1| " + fmt(worst_sigma) + " <= 1e-12, |w0| " + fmt(worst_w0));
}

void criterion_7_weak_form() {
    begin();
    SwimmerParams sp(1.0, 2.0, 0.1, kFluid);
    // spatially varying anisotropy: a uniform-alignment family makes sigma_1
    // constant on O and interior test fields would check 0 = 0
    ActiveStress stress = active_stress(testing::make_varying_density(), sp);
    double lambda = 0.02;
    GridSpec grid{48};
    EffectiveFlow w0 = solve_w0(stress, lambda, kFluid, grid);
    auto T = [&](Vec3 x) { return lambda * stress.sigma(x); };
    Rng rng(701);
    double worst = 0.0;
    for (int k = 0; k < 5; ++k) {
        SolenoidalTestField phi;
        phi.c = rng.unit_vector();
        phi.x0 = {rng.uniform(0.42, 0.58), rng.uniform(0.42, 0.58), rng.uniform(0.42, 0.58)};
        phi.R = rng.uniform(0.22, 0.32);
        auto [lhs, rhs] = weak_form_pair(w0, T, stress.domain, kFluid, phi, grid);
        worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
    }
    report(7, "weak identity 2mu∫D(w0):D(phi) = -lambda∫sigma_1:D(phi), 5 random fields",
           worst <= 1e-3, "worst rel err " + fmt(worst) + " <= 1e-3 at 48^3");
}

void criterion_8_uapp_convergence() {
    begin();
    ExperimentSpec spec = default_spec("uapp_convergence");
    spec.out_dir = "acceptance_out";
    ExperimentResult r = run_experiment(spec);
    std::string detail;
    for (const auto& c : r.checks)
        if (!c.passed) detail += c.name + " ";
    if (detail.empty()) detail = "median shell L2 strictly decreasing, both densities";
    report(8, "u_N^app -> w0 over N in {125, 1000, 8000} at lambda = 0.01", r.passed, detail);
}

void criterion_9_energy_signs() {
    begin();
    ExperimentSpec spec = default_spec("energy_signs");
    spec.out_dir = "acceptance_out";
    ExperimentResult r = run_experiment(spec);
    double push = 0, pull = 0;
    for (const auto& c : r.checks) {
        if (c.name == "pusher_active_positive") push = c.measured;
        if (c.name == "puller_active_negative") pull = c.measured;
    }
    report(9, "energy signs: pusher injects, puller dissipates, isotropic zero", r.passed,
           "active power pusher " + fmt(push) + ", puller " + fmt(pull));
}

void criterion_10_anisotropy() {
    begin();
    Rng rng(1001);
    SurfaceQuadrature quad = SurfaceQuadrature::product_gauss(16, 32);
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
        Mat3 A;
        for (int i = 0; i < 9; ++i) A.m[i] = rng.uniform(-1, 1);
        Mat3 S = deviator(sym(A));
        Mat3 M = S + 3.0 * Mat3::identity();
        Vec3 v = rng.unit_vector();
        for (int it = 0; it < 300; ++it) v = normalized(M * v);
        double lam = quad_form(S, v);
        double got = anisotropy_condition(SphereDensity::dirac(v), S, quad);
        worst = std::max(worst, std::abs(got - 4.0 * M_PI * lam));
    }
    report(10, "anisotropy condition: Dirac-aligned F gives exactly 4 pi lambda_plus",
           worst <= 1e-13, "worst abs err " + fmt(worst) + " (machine precision)");
}

void criterion_11_fokker_planck() {
    begin();
    Mat3 S{};
    S(0, 0) = S(1, 1) = -0.5;
    S(2, 2) = 1.0;
    double Dr = 1.0;
    StationaryDensity F0 = stationary_orientation_density(S, 0.0, Dr, 12);
    StationaryDensity F1 = stationary_orientation_density(Mat3::zero(), 0.3, Dr, 12);
    double dev = 0.0;
    for (double v : F0.tabulate(32, 64)) dev = std::max(dev, std::abs(v - 1.0 / (4.0 * M_PI)));
    for (double v : F1.tabulate(32, 64)) dev = std::max(dev, std::abs(v - 1.0 / (4.0 * M_PI)));

    double xi = 0.01 * Dr / frobenius_norm(S);
    StationaryDensity F = stationary_orientation_density(S, xi, Dr, 12);
    FdSphereSolution gal;
    gal.n_theta = 64;
    gal.n_phi = 128;
    gal.values = F.tabulate(gal.n_theta, gal.n_phi);
    gal.volumes.resize(gal.values.size());
    for (int i = 0; i < gal.n_theta; ++i) {
        double v = (2.0 * M_PI / gal.n_phi) *
                   (std::cos(i * M_PI / gal.n_theta) - std::cos((i + 1) * M_PI / gal.n_theta));
        for (int j = 0; j < gal.n_phi; ++j) gal.volumes[size_t(i) * gal.n_phi + j] = v;
    }
    double c_gal = linear_response_coefficient(gal, S, xi, Dr);
    FdSphereSolution fd = fd_stationary_density(S, xi, Dr, 128, 256);
    double c_fd = linear_response_coefficient(fd, S, xi, Dr);
    bool ok = dev <= 1e-12 && std::abs(c_gal - c_fd) <= 0.01 * std::abs(c_fd);
    report(11, "Fokker-Planck stationary solver: uniform limits exact, c within 1% of oracle",
           ok, "uniform dev " + fmt(dev) + ", c " + fmt(c_gal) + " vs oracle " + fmt(c_fd));
}

void criterion_12_lemma63() {
    begin();
    OrientationDensity uni = OrientationDensity::uniform();
    double worst_ratio = 0.0, kmax = 0.0;
    double sep_c = 0.9;
    for (double eta_frac : {0.5, 1.0}) {
        double eta = eta_frac * sep_c;
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (long N : {1000L, 10000L}) {
            SuspensionConfig cfg =
                sample_configuration(uni, N, 0.01, sep_c, 2.0, 12001, SampleMode::strict);
            SeparationReport rep = separation_report(cfg, eta);
            lo = std::min(lo, rep.lemma63_constant);
            hi = std::max(hi, rep.lemma63_constant);
        }
        worst_ratio = std::max(worst_ratio, hi / lo);
        kmax = std::max(kmax, hi);
    }
    report(12, "Lemma 6.3 diagnostic: eta^4-rescaled pair sums stable across N in {1e3, 1e4}",
           worst_ratio <= 2.0,
           "max cross-N ratio " + fmt(worst_ratio) + " <= 2, constant " + fmt(kmax));
}

void criterion_13_determinism() {
    begin();
    auto run_pair = [](const std::string& id, const std::string& dir1, const std::string& dir2,
                       std::map<std::string, std::string> params) {
        ExperimentSpec s = default_spec(id);
        s.params = std::move(params);
        s.out_dir = dir1;
        ExperimentResult r1 = run_experiment(s);
        s.out_dir = dir2;
        ExperimentResult r2 = run_experiment(s);
        return read_file(r1.csv_path) == read_file(r2.csv_path);
    };
    bool ok1 = run_pair("energy_signs", "acceptance_det_a", "acceptance_det_b",
                        {{"quad_n", "8"}});
    bool ok2 = run_pair("separation_diagnostics", "acceptance_det_a", "acceptance_det_b",
                        {{"n_list", "216"}, {"n_seeds", "2"}});
    std::filesystem::remove_all("acceptance_det_a");
    std::filesystem::remove_all("acceptance_det_b");
    report(13, "determinism: identical seeds give byte-identical CSV bodies", ok1 && ok2,
           std::string("energy_signs ") + (ok1 ? "ok" : "DIFF") + ", separation_diagnostics " +
               (ok2 ? "ok" : "DIFF"));
}

} // namespace

int main() {
    std::printf("acceptance suite: dilute active-suspension library\n");
    criterion_1_force_identity();
    criterion_2_stresslet_identity();
    criterion_3_scaling_law();
    criterion_4_dipole_remainder();
    criterion_5_boundary_error_scaling();
    criterion_6_sigma1_null();
    criterion_7_weak_form();
    criterion_8_uapp_convergence();
    criterion_9_energy_signs();
    criterion_10_anisotropy();
    criterion_11_fokker_planck();
    criterion_12_lemma63();
    criterion_13_determinism();
    if (g_failures == 0) {
        std::printf("all 13 acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", g_failures);
    return 1;
}
