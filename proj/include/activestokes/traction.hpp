// traction.hpp - flow evaluator abstraction and surface-traction quadrature
// (force, torque, first traction moment on a sphere).
#pragma once

#include <functional>
#include <optional>

#include "activestokes/geometry.hpp"
#include "activestokes/kernels.hpp"
#include "activestokes/quadrature.hpp"

namespace astk {

/// Position -> velocity evaluator with optional pressure / gradient / feature
/// scale. Gradient falls back to central finite differences when absent.
struct FlowField {
    std::function<Vec3(Vec3)> velocity;
    std::function<double(Vec3)> pressure;              // required for tractions
    std::function<Mat3(Vec3)> gradient;                // optional analytic gradient
    std::function<double(Vec3)> distance_to_feature;   // optional, shrinks FD step
    FluidParams fluid;
};

struct SurfaceTraction {
    Vec3 force;        // ∮ sigma n ds
    Vec3 torque;       // ∮ (sigma n) x y ds
    Mat3 moment;       // ∮ (sigma n) ⊗ y ds, unsymmetrized

    Mat3 symmetric_stresslet() const { return sym(moment); }
    /// trace-free symmetric part; the pressure-gauge-independent observable
    Mat3 deviatoric_stresslet() const { return deviator(sym(moment)); }
};

struct TractionOptions {
    double h_fd_rel = 1e-6;          // FD step relative to the sphere radius
    bool use_analytic_gradient = false; // default: verify numerically via FD
};

/// Quadrature of the Cauchy traction sigma(v,p) n over the sphere |y| = radius.
/// The flow must be evaluable with pressure on and near the sphere.
SurfaceTraction traction_on_sphere(const FlowField& flow, double radius,
                                   const SurfaceQuadrature& quad,
                                   const TractionOptions& opts = {});

// ready-made flow evaluators for the elementary swimmer solution and its parts
struct SwimmerParams;
FlowField elementary_flow(Vec3 p, const SwimmerParams& sp);
FlowField image_part_flow(Vec3 p, const SwimmerParams& sp);       // v1 only
FlowField translation_part_flow(Vec3 p, const SwimmerParams& sp); // v2 only

} // namespace astk
