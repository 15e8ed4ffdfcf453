#include <doctest.h>

#include "activestokes/traction.hpp"
#include "activestokes/swimmer.hpp"

using namespace astk;

namespace {
const FluidParams kFluid{};
const Vec3 kP = normalized(Vec3{0.2, 0.5, 0.84});
} // namespace

TEST_CASE("force and torque balance on the full elementary solution") {
    SurfaceQuadrature quad = SurfaceQuadrature::product_gauss(32, 64);
    for (double beta : {1.5, 2.0, 4.0}) {
        for (double a : {0.5, 1.0}) {
            SwimmerParams sp(1.0, beta, a, kFluid);
            SurfaceTraction t = traction_on_sphere(elementary_flow(kP, sp), a, quad);
            double kf = sp.kf();
            CHECK(norm(t.force + kf * kP) < 1e-6 * std::abs(kf));
            CHECK(norm(t.torque) < 1e-8 * std::abs(kf));
        }
    }
}

TEST_CASE("image part alone carries force -kf gamma1 p") {
    SurfaceQuadrature quad = SurfaceQuadrature::product_gauss(32, 64);
    SwimmerParams sp(1.0, 2.0, 1.0, kFluid);
    SurfaceTraction t = traction_on_sphere(image_part_flow(kP, sp), 1.0, quad);
    CHECK(norm(t.force + sp.kf() * sp.gamma1() * kP) < 1e-6 * std::abs(sp.kf()));
}

TEST_CASE("stresslet identity in the trace-free sense") {
    SurfaceQuadrature quad = SurfaceQuadrature::product_gauss(32, 64);
    for (double beta : {1.5, 2.0, 4.0}) {
        // unit-scaled w[p]: a = 1, k_f = 1
        SwimmerParams unit(1.0 / (M_PI * kFluid.mu), beta, 1.0, kFluid);
        SurfaceTraction t = traction_on_sphere(elementary_flow(kP, unit), 1.0, quad);
        double s = -2.5 / (beta * beta) + 1.5 / std::pow(beta, 4);
        Mat3 expect = s * deviator(outer(kP, kP));
        CHECK(frobenius_norm(t.deviatoric_stresslet() - expect) <
              1e-6 * frobenius_norm(expect));
        if (beta == 2.0) {
            // scalar coefficient -0.53125 recovered from the deviatoric part
            double coef = 1.5 * quad_form(t.deviatoric_stresslet(), kP);
            CHECK(coef == doctest::Approx(-0.53125).epsilon(1e-6));
        }
        // the raw moment's isotropic part is the pressure-gauge term
        CHECK(trace(t.moment) == doctest::Approx(-1.0 / (beta * beta)).epsilon(1e-6));
    }
}

TEST_CASE("pure translation part produces no stresslet") {
    SurfaceQuadrature quad = SurfaceQuadrature::product_gauss(32, 64);
    SwimmerParams sp(1.0, 2.0, 1.0, kFluid);
    SurfaceTraction t = traction_on_sphere(translation_part_flow(kP, sp), 1.0, quad);
    CHECK(frobenius_norm(t.symmetric_stresslet()) < 1e-8 * std::abs(sp.kf()));
    CHECK(norm(t.force + 6.0 * M_PI * kFluid.mu * sp.a * sp.translation_speed() * kP) <
          1e-6 * std::abs(sp.kf()));
}

TEST_CASE("quadrature order escalation converges for near-degenerate beta") {
    double beta = 1.02;
    SwimmerParams sp(1.0, beta, 1.0, kFluid);
    SurfaceQuadrature coarse = SurfaceQuadrature::product_gauss(16, 32);
    SurfaceQuadrature graded =
        SurfaceQuadrature::product_gauss_graded(16, 64, kP, 0.25 * std::sqrt(beta - 1.0));
    SurfaceTraction t_coarse = traction_on_sphere(elementary_flow(kP, sp), 1.0, coarse);
    SurfaceTraction t_graded = traction_on_sphere(elementary_flow(kP, sp), 1.0, graded);
    double kf = sp.kf();
    double err_coarse = norm(t_coarse.force + kf * kP) / std::abs(kf);
    double err_graded = norm(t_graded.force + kf * kP) / std::abs(kf);
    CHECK(err_graded < 1e-6);
    CHECK(err_graded < err_coarse);
}

TEST_CASE("traction requires pressure") {
    FlowField f;
    f.velocity = [](Vec3) { return Vec3{}; };
    SurfaceQuadrature quad = SurfaceQuadrature::product_gauss(4, 8);
    CHECK_THROWS_AS(traction_on_sphere(f, 1.0, quad), std::invalid_argument);
}
