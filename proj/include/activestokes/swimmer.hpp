// swimmer.hpp - explicit single-swimmer Stokes solution (image system), its
// pressure, far-field dipole decomposition, and the passive strain solution.
#pragma once

#include "activestokes/kernels.hpp"

namespace astk {

/// Swimming-intensity/geometry parameters of one spherical swimmer.
/// The point force -k_f p acts at x_f = a*beta*p with k_f = alpha*pi*mu*a^2;
/// the image system sits at the inverse point a/beta.
struct SwimmerParams {
    double alpha = 1.0; // swimming intensity; alpha > 0 puller, alpha < 0 pusher
    double beta = 2.0;  // force offset factor, > 1
    double a = 1.0;     // particle radius
    FluidParams fluid;

    SwimmerParams() = default;
    SwimmerParams(double alpha_, double beta_, double a_, FluidParams fluid_ = {});

    double kf() const { return alpha * M_PI * fluid.mu * a * a; }
    double gamma1() const { return 1.5 / beta - 0.5 / (beta * beta * beta); }
    double gamma2() const { return 1.0 / (beta * beta) - 1.0 / (beta * beta * beta * beta); }
    double gamma3() const {
        double ib2 = 1.0 / (beta * beta);
        return (1.0 - ib2) * (1.0 - ib2) / (4.0 * beta);
    }
    /// interior rigid translation velocity magnitude, U2 = k_f (1-gamma1)/(6 pi mu a)
    double translation_speed() const { return kf() * (1.0 - gamma1()) / (6.0 * M_PI * fluid.mu * a); }
};

/// image-system part v1: point force + image Stokeslet/doublet/potential-doublet.
/// Vanishes on |x| = a.
Vec3 v1_image_velocity(Vec3 x, Vec3 p, const SwimmerParams& sp);

/// pressure of v1
double v1_pressure(Vec3 x, Vec3 p, const SwimmerParams& sp);

/// reaction part v2: sphere translating at U2 p (Stokeslet + finite-size term)
Vec3 v2_translation_velocity(Vec3 x, Vec3 p, const SwimmerParams& sp);
double v2_pressure(Vec3 x, Vec3 p, const SwimmerParams& sp);

/// full elementary solution v[p]; constant U2 p inside the closed ball,
/// continuous across |x| = a
Vec3 elementary_velocity(Vec3 x, Vec3 p, const SwimmerParams& sp);

/// pressure of v[p], defined for |x| > a
double elementary_pressure(Vec3 x, Vec3 p, const SwimmerParams& sp);

/// closed-form velocity gradient of v[p], exterior points only
Mat3 elementary_velocity_gradient(Vec3 x, Vec3 p, const SwimmerParams& sp);

/// Dipole coefficient matrix C(p) of the far-field reduction
/// v[p](x) = (lambda/N) mu grad_U(x) C(p) + R[p](x).
struct DipoleCoefficient {
    Mat3 Cp;        // alpha*J p⊗p - J' Id
    double Jcal;    // (3 alpha mu / 4)(beta - 5/2 beta^-2 + 3/2 beta^-4), as printed
    double Jprime;  // calibrated isotropic coefficient (comes out alpha*J/3)
};

/// the printed dipole strength J(beta) = (3 alpha mu/4)(beta - 5/2 b^-2 + 3/2 b^-4)
double dipole_J(const SwimmerParams& sp);

/// Calibrates J' by least-squares matching of the isotropic far-field component,
/// then validates the remainder decay (throws if the fitted decay rate is
/// shallower than 2.8, which would signal a wrong J').
DipoleCoefficient dipole_decomposition(Vec3 p, const SwimmerParams& sp, double lambda, long N);

/// R[p](x) = v[p](x) - (lambda/N) mu grad_U(x) C(p)
Vec3 taylor_remainder(Vec3 x, Vec3 p, const SwimmerParams& sp, double lambda, long N);

/// passive strain solution w[S] outside a sphere of radius a, S symmetric
/// trace-free; equals -S x on |x| = a
Vec3 passive_strain_velocity(Vec3 x, const Mat3& S, double a);

} // namespace astk
