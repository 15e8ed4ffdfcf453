// fp_oracle.hpp - dense finite-volume solver of the stationary orientation
// equation on a (theta, phi) sphere grid; the independent cross-check for the
// spectral solver.
#pragma once

#include <vector>

#include "activestokes/geometry.hpp"

namespace astk {

struct FdSphereSolution {
    int n_theta = 0, n_phi = 0;
    std::vector<double> values;  // cell centers, row-major in theta
    std::vector<double> volumes; // spherical cell areas

    Vec3 direction(int i, int j) const;
    double mass() const;
};

/// Steady solution of div_p((Id-pp) xi S p F) - Dr lap_p F = 0 with unit mass,
/// by Picard iteration on the advective term and conjugate gradients on the
/// finite-volume Laplacian.
FdSphereSolution fd_stationary_density(const Mat3& S, double xi, double Dr, int n_theta = 128,
                                       int n_phi = 256);

/// Linear-response coefficient c of F ~ (1/(4 pi))(1 + c (xi/Dr) p.Sp), fitted
/// over the sphere by volume-weighted least squares.
double linear_response_coefficient(const FdSphereSolution& sol, const Mat3& S, double xi,
                                   double Dr);

} // namespace astk
