#include <doctest.h>

#include "activestokes/density.hpp"
#include "activestokes/quadrature.hpp"

using namespace astk;

TEST_CASE("uniform density: rho and second moment") {
    OrientationDensity f = OrientationDensity::uniform();
    CHECK(f.rho({0.5, 0.5, 0.5}) == 1.0);
    CHECK(f.rho({1.5, 0.5, 0.5}) == 0.0);
    Mat3 M = f.second_moment({0.4, 0.3, 0.6});
    CHECK(frobenius_norm(M - (1.0 / 3.0) * Mat3::identity()) < 1e-15);
}

TEST_CASE("rho is reproduced by sphere quadrature of f") {
    SurfaceQuadrature quad = SurfaceQuadrature::product_gauss(24, 48);
    Vec3 x{0.35, 0.62, 0.5};
    for (double kappa : {0.0, 0.7, 3.0}) {
        OrientationDensity f = OrientationDensity::axisymmetric_smooth({0, 0, 1}, kappa);
        double acc = 0.0;
        for (const auto& n : quad.nodes) acc += n.weight * f.value(x, n.dir);
        CHECK(acc == doctest::Approx(f.rho(x)).epsilon(1e-8));
        // second moment quadrature matches the closed form
        Mat3 M{};
        for (const auto& n : quad.nodes) M += (n.weight * f.value(x, n.dir)) * outer(n.dir, n.dir);
        CHECK(frobenius_norm(M - f.second_moment(x)) < 1e-8);
        CHECK(trace(f.second_moment(x)) == doctest::Approx(f.rho(x)).epsilon(1e-12));
    }
}

TEST_CASE("dirac family") {
    OrientationDensity f = OrientationDensity::dirac_aligned({0, 0, 2});
    Mat3 M = f.second_moment({0.5, 0.5, 0.5});
    CHECK(frobenius_norm(M - outer({0, 0, 1}, {0, 0, 1})) < 1e-15);
    CHECK_THROWS_AS(f.value({0.5, 0.5, 0.5}, {0, 0, 1}), std::domain_error);
    Rng rng(31);
    CHECK(norm(f.sample_orientation({0.5, 0.5, 0.5}, rng) - Vec3{0, 0, 1}) == 0.0);
}

TEST_CASE("vMF concentration sweep: anisotropy shrinks as kappa -> 0") {
    double prev = std::numeric_limits<double>::infinity();
    for (double kappa : {3.0, 1.0, 0.3, 0.1, 0.03}) {
        OrientationDensity f = OrientationDensity::axisymmetric_smooth({0, 0, 1}, kappa);
        Mat3 dev = deviator(f.second_moment({0.5, 0.5, 0.5}));
        double a = frobenius_norm(dev);
        CHECK(a < prev);
        prev = a;
    }
    CHECK(prev < 1e-2);
}

TEST_CASE("vMF sampling matches the closed-form second moment") {
    double kappa = 2.0;
    OrientationDensity f = OrientationDensity::axisymmetric_smooth({0, 0, 1}, kappa);
    Rng rng(32);
    Mat3 M{};
    const int n = 200000;
    for (int k = 0; k < n; ++k) {
        Vec3 p = f.sample_orientation({0.5, 0.5, 0.5}, rng);
        M += outer(p, p);
    }
    M = (1.0 / n) * M;
    CHECK(frobenius_norm(M - f.second_moment({0.5, 0.5, 0.5})) < 6.0 / std::sqrt(double(n)));
}

TEST_CASE("tabulated density: normalization, interpolation, sampling") {
    int nx = 2, nt = 24, np = 48;
    std::vector<double> vals(size_t(nx) * nx * nx * nt * np, 1.0);
    OrientationDensity f = OrientationDensity::tabulated(nx, nt, np, vals);
    // normalized to unit mass: rho = 1, f = 1/(4 pi)
    CHECK(f.rho({0.5, 0.5, 0.5}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f.value({0.5, 0.5, 0.5}, {0, 0, 1}) == doctest::Approx(1.0 / (4 * M_PI)).epsilon(1e-12));
    // the moment quadrature rides on the table's own grid (midpoint accuracy)
    Mat3 M = f.second_moment({0.5, 0.5, 0.5});
    CHECK(frobenius_norm(M - (1.0 / 3.0) * Mat3::identity()) < 2e-3);
    CHECK_THROWS_AS(OrientationDensity::tabulated(2, 8, 16, std::vector<double>(7, 1.0)),
                    std::invalid_argument);
}

TEST_CASE("ball domain has unit volume radius") {
    Domain d{Domain::Kind::ball};
    CHECK(4.0 / 3.0 * M_PI * std::pow(d.ball_radius(), 3) == doctest::Approx(1.0).epsilon(1e-14));
    Rng rng(33);
    for (int k = 0; k < 100; ++k) CHECK(d.contains(d.sample(rng)));
}
