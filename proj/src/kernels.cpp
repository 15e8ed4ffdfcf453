#include "activestokes/kernels.hpp"

namespace astk {

Mat3 oseen_U(Vec3 x, const FluidParams& fluid, double eps) {
    double r = detail::guarded_norm(x, eps, "oseen_U");
    double c = 1.0 / (8.0 * M_PI * fluid.mu);
    double r3 = r * r * r;
    Mat3 out = (c / r) * Mat3::identity() + (c / r3) * outer(x, x);
    return out;
}

Mat3 oseen_tilde_U(Vec3 x, const FluidParams& fluid, double eps) {
    double r = detail::guarded_norm(x, eps, "oseen_tilde_U");
    double c = 1.0 / (8.0 * M_PI * fluid.mu);
    double r3 = r * r * r;
    return (c / (3.0 * r)) * Mat3::identity() - (c / r3) * outer(x, x);
}

Mat3 laplacian_U(Vec3 x, const FluidParams& fluid, double eps) {
    double r = detail::guarded_norm(x, eps, "laplacian_U");
    double c = 1.0 / (8.0 * M_PI * fluid.mu);
    double r3 = r * r * r, r5 = r3 * r * r;
    return (2.0 * c / r3) * Mat3::identity() - (6.0 * c / r5) * outer(x, x);
}

Vec3 grad_U_apply(Vec3 x, const Mat3& A, const FluidParams& fluid, double eps) {
    double r = detail::guarded_norm(x, eps, "grad_U_apply");
    double r5 = r * r * r * r * r;
    double axx = quad_form(A, x);
    return (-3.0 / (8.0 * M_PI * fluid.mu) * axx / r5) * x;
}

Mat3 M_apply(Vec3 x, const Mat3& A, double eps) {
    double r = detail::guarded_norm(x, eps, "M_apply");
    double r5 = std::pow(r, 5), r7 = r5 * r * r;
    double axx = quad_form(A, x);
    return (-2.0 / r5) * outer(A * x, x) + (5.0 * axx / r7) * outer(x, x);
}

Mat3 grad_stokeslet(Vec3 x, Vec3 F, const FluidParams& fluid, double eps) {
    double r = detail::guarded_norm(x, eps, "grad_stokeslet");
    double c = 1.0 / (8.0 * M_PI * fluid.mu);
    double r3 = r * r * r, r5 = r3 * r * r;
    double fx = dot(F, x);
    Mat3 G = (c / r3) * (outer(x, F) - outer(F, x) + fx * Mat3::identity());
    G -= (3.0 * c * fx / r5) * outer(x, x);
    return G;
}

Mat3 grad_stokes_doublet(Vec3 x, const Mat3& A, const FluidParams& fluid, double eps) {
    double r = detail::guarded_norm(x, eps, "grad_stokes_doublet");
    double c = -3.0 / (8.0 * M_PI * fluid.mu);
    double r5 = std::pow(r, 5), r7 = r5 * r * r;
    double axx = quad_form(A, x);
    Vec3 Ax = A * x;
    Mat3 G = (2.0 * c / r5) * outer(x, Ax) + (c * axx / r5) * Mat3::identity();
    G -= (5.0 * c * axx / r7) * outer(x, x);
    return G;
}

Mat3 grad_potential_doublet(Vec3 x, Vec3 F, const FluidParams& fluid, double eps) {
    double r = detail::guarded_norm(x, eps, "grad_potential_doublet");
    double c = 1.0 / (8.0 * M_PI * fluid.mu);
    double r5 = std::pow(r, 5), r7 = r5 * r * r;
    double fx = dot(F, x);
    Mat3 G = (-6.0 * c / r5) * (outer(F, x) + outer(x, F) + fx * Mat3::identity());
    G += (30.0 * c * fx / r7) * outer(x, x);
    return G;
}

Mat3 grad_tilde_term(Vec3 x, Vec3 F, const FluidParams& fluid, double eps) {
    double r = detail::guarded_norm(x, eps, "grad_tilde_term");
    double c = 1.0 / (8.0 * M_PI * fluid.mu);
    double r5 = std::pow(r, 5), r7 = r5 * r * r;
    double fx = dot(F, x);
    Mat3 G = (-c / r5) * (outer(F, x) + outer(x, F) + fx * Mat3::identity());
    G += (5.0 * c * fx / r7) * outer(x, x);
    return G;
}

double stokeslet_pressure(Vec3 x, Vec3 F, double eps) {
    double r = detail::guarded_norm(x, eps, "stokeslet_pressure");
    return dot(F, x) / (4.0 * M_PI * r * r * r);
}

double stokes_doublet_pressure(Vec3 x, const Mat3& A, double eps) {
    double r = detail::guarded_norm(x, eps, "stokes_doublet_pressure");
    double r5 = std::pow(r, 5);
    return -3.0 * quad_form(A, x) / (4.0 * M_PI * r5);
}

} // namespace astk
