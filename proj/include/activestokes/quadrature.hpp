// quadrature.hpp - Gauss-Legendre rules, sphere-surface and ball quadratures.
#pragma once

#include <vector>

#include "activestokes/geometry.hpp"

namespace astk {

struct GaussRule {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights; // sum to 2
};

/// Gauss-Legendre rule of order n (exact for polynomials of degree 2n-1).
GaussRule gauss_legendre(int n);

/// Quadrature on the unit sphere: list of (direction, weight), weights sum to 4 pi.
struct SurfaceQuadrature {
    struct Node {
        Vec3 dir;
        double weight;
    };
    std::vector<Node> nodes;
    int order = 0; // exactly integrates spherical polynomials up to this degree

    double weight_sum() const {
        double s = 0;
        for (auto& n : nodes) s += n.weight;
        return s;
    }

    /// product rule: Gauss-Legendre in cos(theta) x uniform midpoints in phi
    static SurfaceQuadrature product_gauss(int n_theta = 32, int n_phi = 64);

    /// product rule with theta panels geometrically graded toward both poles of
    /// `axis`, down to panel width `finest`; resolves near-surface singularities
    static SurfaceQuadrature product_gauss_graded(int n_theta_per_panel, int n_phi,
                                                  Vec3 axis, double finest);
};

/// Quadrature over the unit ball (offsets from the center, weights sum to 4 pi/3).
struct BallQuadrature {
    struct Node {
        Vec3 offset;
        double weight;
    };
    std::vector<Node> nodes;

    /// spherical product rule: n_r radial x n_theta polar x n_phi azimuthal
    static BallQuadrature product_gauss(int n_r = 5, int n_theta = 5, int n_phi = 5);

    /// same node budget per octant, 8 octants (one refinement level)
    static BallQuadrature product_gauss_octants(int n_r = 5, int n_theta = 5, int n_phi = 5);
};

} // namespace astk
