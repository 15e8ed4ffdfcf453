// effective.hpp - continuum model: active stress sigma_1, the Stokes solve
// w0 = St^-1(lambda div sigma_1) by singular convolution, the first-order
// Einstein-corrected effective flow, energy functionals, and the anisotropy
// condition on orientation densities.
#pragma once

#include <functional>
#include <utility>

#include "activestokes/density.hpp"
#include "activestokes/swimmer.hpp"
#include "activestokes/traction.hpp"

namespace astk {

/// sigma_1(x) = alpha * Jcal * ∫ (p⊗p - Id/3) f(x,p) dp.
/// Jcal is the Theorem-1.2 dipole strength evaluated at |alpha| (positive, per
/// Eq. 1.5's J > 0), so sigma_1 is linear in alpha and flips with pusher/puller.
struct ActiveStress {
    double alpha = 1.0;
    double Jcal = 0.0;
    Domain domain;
    std::function<Mat3(Vec3)> moment_tf; // x -> ∫ (p⊗p - Id/3) f(x,.) dp

    Mat3 sigma(Vec3 x) const { return (alpha * Jcal) * moment_tf(x); }
};

ActiveStress active_stress(const OrientationDensity& density, const SwimmerParams& sp);

/// Uniform midpoint grid over the containment domain (unit cube cells).
struct GridSpec {
    int n = 48;
};

struct EffectiveFlow {
    enum class Provenance { w0, einstein_corrected };
    std::function<Vec3(Vec3)> velocity;
    std::function<Mat3(Vec3)> gradient; // most accurate at grid cell centers
    Provenance provenance = EffectiveFlow::Provenance::w0;
    double lambda = 0.0;
};

/// St^-1(div T) for a symmetric matrix source field T supported in the unit
/// cube: u(x) = ∫ grad_U(x-y) T(y) dy on a midpoint grid. Gradient evaluations
/// carry the principal-value cell correction and the local Calderon-Zygmund
/// term -T(x)/(5 mu); they are cleanest at grid cell centers.
EffectiveFlow stokes_source_flow(const std::function<Mat3(Vec3)>& T, const Domain& dom,
                                 FluidParams fluid, const GridSpec& grid = {});

/// w0 = St^-1(lambda div sigma_1), the limit of u_N^app.
EffectiveFlow solve_w0(const ActiveStress& stress, double lambda, FluidParams fluid,
                       const GridSpec& grid = {});

/// Smooth compactly supported body force; value and support ball.
struct ForceField {
    std::function<Vec3(Vec3)> value;
    Vec3 center{0.5, 0.5, 0.5};
    double radius = 0.4;

    /// polynomial bump g0 (1-|x-c|^2/R^2)^3
    static ForceField bump(Vec3 g0, Vec3 center, double radius);
};

/// u0 = St^-1(g) by Oseen convolution over the support of g.
struct BackgroundFlow {
    std::function<Vec3(Vec3)> velocity;
    std::function<Mat3(Vec3)> gradient;
};
BackgroundFlow oseen_background(const ForceField& g, FluidParams fluid, int grid_n = 32);

/// First-order-in-lambda effective solution u0 + lambda u1 of the
/// Einstein-corrected system; u1 = St^-1(div sigma_1 + 5 mu div(rho D(u0))).
EffectiveFlow solve_effective(const ForceField& g, const OrientationDensity& density,
                              const SwimmerParams& sp, double lambda,
                              const GridSpec& grid = {});

/// Axis-aligned integration box.
struct Box {
    Vec3 lo, hi;
};

struct EnergyBreakdown {
    double viscous = 0.0; // -2 mu ∫ (1 + 5/2 rho lambda) |D(u)|^2
    double active = 0.0;  // -lambda ∫ sigma_1 : D(u)
};

/// Both terms of the instantaneous energy dissipation rate over `domain`.
/// The flow must expose a gradient.
EnergyBreakdown energy_dissipation(const EffectiveFlow& flow, const OrientationDensity& density,
                                   const SwimmerParams& sp, double lambda, const Box& domain,
                                   int quad_n = 16);

/// Orientation density on the sphere alone, possibly a Dirac mass (the paper's
/// Dirac carries total mass |S^2| = 4 pi).
struct SphereDensity {
    bool is_dirac = false;
    Vec3 p0{0, 0, 1};
    std::function<double(Vec3)> f; // used when not dirac

    static SphereDensity dirac(Vec3 p) { return {true, normalized(p), nullptr}; }
    static SphereDensity smooth(std::function<double(Vec3)> fn) {
        return {false, {0, 0, 1}, std::move(fn)};
    }
};

/// ∫_{S^2} (p⊗p : S) F(p) dp; exact for Dirac F (= 4 pi p0.S p0).
double anisotropy_condition(const SphereDensity& F, const Mat3& S,
                            const SurfaceQuadrature& quad);

/// Divergence-free compactly supported test field phi = grad(eta) x c with
/// eta = (1 - |x-x0|^2/R^2)^4; analytic gradient and Laplacian.
struct SolenoidalTestField {
    Vec3 c{0, 0, 1};
    Vec3 x0{0.5, 0.5, 0.5};
    double R = 0.3;

    Vec3 value(Vec3 x) const;
    Mat3 gradient(Vec3 x) const;
    Vec3 laplacian(Vec3 x) const;
};

/// LHS = 2 mu ∫ D(u):D(phi) and RHS = -∫ T:D(phi) of the weak identity for
/// u = St^-1(div T). The LHS is evaluated in the integrated-by-parts form
/// -mu ∫ u . lap(phi) (identical for divergence-free phi and decaying u),
/// which needs only velocity values; midpoint grid, extended to cover
/// supp(phi).
std::pair<double, double> weak_form_pair(const EffectiveFlow& flow,
                                         const std::function<Mat3(Vec3)>& T, const Domain& dom,
                                         FluidParams fluid, const SolenoidalTestField& phi,
                                         const GridSpec& grid);

} // namespace astk
