#include "activestokes/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace astk {

GaussRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    // Newton iteration from the Chebyshev-like initial guess
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p1 = 0.0;
        for (int it = 0; it < 100; ++it) {
            // Legendre P_n(x) and derivative by upward recurrence
            double p0 = 1.0, pm = 0.0;
            for (int k = 0; k < n; ++k) {
                double pk = ((2.0 * k + 1.0) * x * p0 - k * pm) / (k + 1.0);
                pm = p0;
                p0 = pk;
            }
            p1 = n * (x * p0 - pm) / (x * x - 1.0);
            double dx = p0 / p1;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * p1 * p1);
    }
    return rule;
}

SurfaceQuadrature SurfaceQuadrature::product_gauss(int n_theta, int n_phi) {
    GaussRule g = gauss_legendre(n_theta);
    SurfaceQuadrature q;
    q.order = std::min(2 * n_theta - 1, n_phi - 1);
    q.nodes.reserve(size_t(n_theta) * n_phi);
    double wphi = 2.0 * M_PI / n_phi;
    for (int i = 0; i < n_theta; ++i) {
        double c = g.nodes[i], s = std::sqrt(std::max(0.0, 1.0 - c * c));
        for (int j = 0; j < n_phi; ++j) {
            double phi = (j + 0.5) * wphi;
            q.nodes.push_back({{s * std::cos(phi), s * std::sin(phi), c}, g.weights[i] * wphi});
        }
    }
    return q;
}

SurfaceQuadrature SurfaceQuadrature::product_gauss_graded(int n_theta_per_panel, int n_phi,
                                                          Vec3 axis, double finest) {
    if (!(finest > 0.0 && finest < 1.0))
        throw std::invalid_argument("product_gauss_graded: finest must be in (0,1)");
    // theta breakpoints: geometric from each pole up to pi/2
    std::vector<double> brk{0.0};
    for (double w = finest; w < M_PI / 2; w *= 2.0) brk.push_back(w);
    brk.push_back(M_PI / 2);
    std::vector<std::pair<double, double>> panels;
    for (size_t k = 0; k + 1 < brk.size(); ++k) {
        panels.emplace_back(brk[k], brk[k + 1]);                      // near +axis pole
        panels.emplace_back(M_PI - brk[k + 1], M_PI - brk[k]);        // near -axis pole
    }
    Vec3 e3 = normalized(axis);
    Vec3 a = std::abs(e3.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    Vec3 e1 = normalized(cross(a, e3));
    Vec3 e2 = cross(e3, e1);

    GaussRule g = gauss_legendre(n_theta_per_panel);
    SurfaceQuadrature q;
    q.order = 0; // composite rule; exactness tracked by convergence, not degree
    double wphi = 2.0 * M_PI / n_phi;
    for (auto [t0, t1] : panels) {
        for (int i = 0; i < n_theta_per_panel; ++i) {
            double t = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * g.nodes[i];
            double wt = 0.5 * (t1 - t0) * g.weights[i] * std::sin(t);
            double c = std::cos(t), s = std::sin(t);
            for (int j = 0; j < n_phi; ++j) {
                double phi = (j + 0.5) * wphi;
                Vec3 dir = s * std::cos(phi) * e1 + s * std::sin(phi) * e2 + c * e3;
                q.nodes.push_back({dir, wt * wphi});
            }
        }
    }
    return q;
}

namespace {

BallQuadrature ball_sector(int n_r, int n_theta, int n_phi, double c0, double c1,
                           double phi0, double phi1) {
    GaussRule gr = gauss_legendre(n_r);
    GaussRule gt = gauss_legendre(n_theta);
    BallQuadrature q;
    q.nodes.reserve(size_t(n_r) * n_theta * n_phi);
    double wphi = (phi1 - phi0) / n_phi;
    for (int ir = 0; ir < n_r; ++ir) {
        double r = 0.5 * (1.0 + gr.nodes[ir]);       // map [-1,1] -> [0,1]
        double wr = 0.5 * gr.weights[ir] * r * r;    // radial Jacobian r^2
        for (int it = 0; it < n_theta; ++it) {
            double c = 0.5 * (c0 + c1) + 0.5 * (c1 - c0) * gt.nodes[it];
            double wt = 0.5 * (c1 - c0) * gt.weights[it];
            double s = std::sqrt(std::max(0.0, 1.0 - c * c));
            for (int ip = 0; ip < n_phi; ++ip) {
                double phi = phi0 + (ip + 0.5) * wphi;
                q.nodes.push_back({{r * s * std::cos(phi), r * s * std::sin(phi), r * c},
                                   wr * wt * wphi});
            }
        }
    }
    return q;
}

} // namespace

BallQuadrature BallQuadrature::product_gauss(int n_r, int n_theta, int n_phi) {
    return ball_sector(n_r, n_theta, n_phi, -1.0, 1.0, 0.0, 2.0 * M_PI);
}

BallQuadrature BallQuadrature::product_gauss_octants(int n_r, int n_theta, int n_phi) {
    BallQuadrature q;
    for (int h = 0; h < 2; ++h) {
        double c0 = h ? 0.0 : -1.0, c1 = h ? 1.0 : 0.0;
        for (int s = 0; s < 4; ++s) {
            BallQuadrature part =
                ball_sector(n_r, n_theta, n_phi, c0, c1, s * M_PI / 2, (s + 1) * M_PI / 2);
            q.nodes.insert(q.nodes.end(), part.nodes.begin(), part.nodes.end());
        }
    }
    return q;
}

} // namespace astk
