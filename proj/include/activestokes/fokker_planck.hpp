// fokker_planck.hpp - stationary orientation density of the simplified
// Fokker-Planck equation on the sphere at frozen strain rate:
//   div_p( (Id - p⊗p) xi S p F ) - Dr lap_p F = 0,   ∫ F = 1.
// Spherical-harmonic Galerkin truncation at degree L.
#pragma once

#include <functional>
#include <vector>

#include "activestokes/geometry.hpp"

namespace astk {

/// Real spherical harmonics basis evaluation up to degree L.
struct SphericalHarmonics {
    int L;

    explicit SphericalHarmonics(int L_) : L(L_) {}
    int count() const { return (L + 1) * (L + 1); }
    static int index(int l, int m) { return l * l + l + m; }

    /// values of all basis functions at direction p
    void eval(Vec3 p, std::vector<double>& out) const;
    /// surface gradients of all basis functions at direction p
    void eval_gradient(Vec3 p, std::vector<Vec3>& out) const;
};

struct StationaryDensity {
    int L = 0;
    std::vector<double> coeff;       // real SH coefficients, index(l,m)
    double min_value = 0.0;          // most negative sampled value (reported, not clipped)
    double truncation_residual = 0.0; // L2 distance to the L+4 solution

    double operator()(Vec3 p) const;

    /// tabulated values on an n_theta x n_phi midpoint grid (row-major in theta)
    std::vector<double> tabulate(int n_theta, int n_phi) const;
};

/// Stationary solution F[S] at frozen strain S (symmetric trace-free), shape
/// factor xi and rotational diffusion Dr > 0. Throws on truncation
/// non-convergence (xi |S| / Dr too large for L).
StationaryDensity stationary_orientation_density(const Mat3& S, double xi, double Dr, int L,
                                                 double tol = 1e-8);

} // namespace astk
