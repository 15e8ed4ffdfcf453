#include "activestokes/fp_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace astk {

namespace {

struct Grid {
    int nt, np;
    double dt, dp;

    long id(int i, int j) const { return long(i) * np + ((j % np) + np) % np; }
    double theta(int i) const { return (i + 0.5) * dt; }
    double phi(int j) const { return (j + 0.5) * dp; }
};

Vec3 dir_of(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

// finite-volume Laplacian in integrated (flux-balance) form; symmetric
void apply_L(const Grid& g, const std::vector<double>& F, std::vector<double>& out) {
    std::fill(out.begin(), out.end(), 0.0);
    // theta faces between rows i and i+1
    for (int i = 0; i + 1 < g.nt; ++i) {
        double sface = std::sin((i + 1) * g.dt);
        double cond = sface * g.dp / g.dt;
        for (int j = 0; j < g.np; ++j) {
            double d = cond * (F[g.id(i + 1, j)] - F[g.id(i, j)]);
            out[g.id(i, j)] += d;
            out[g.id(i + 1, j)] -= d;
        }
    }
    // phi faces within each row (periodic)
    for (int i = 0; i < g.nt; ++i) {
        double cond = g.dt / (std::sin(g.theta(i)) * g.dp);
        for (int j = 0; j < g.np; ++j) {
            double d = cond * (F[g.id(i, j + 1)] - F[g.id(i, j)]);
            out[g.id(i, j)] += d;
            out[g.id(i, j + 1)] -= d;
        }
    }
}

// advective flux divergence (integrated form), central face averages
void apply_drift(const Grid& g, const Mat3& S, double xi, const std::vector<double>& F,
                 std::vector<double>& out) {
    std::fill(out.begin(), out.end(), 0.0);
    auto vel = [&](double theta, double phi, Vec3& et, Vec3& ep) {
        Vec3 p = dir_of(theta, phi);
        double ct = std::cos(theta), st = std::sin(theta);
        et = {ct * std::cos(phi), ct * std::sin(phi), -st};
        ep = {-std::sin(phi), std::cos(phi), 0.0};
        Vec3 v = S * p;
        return xi * (v - dot(v, p) * p);
    };
    for (int i = 0; i + 1 < g.nt; ++i) {
        double tf = (i + 1) * g.dt;
        double facelen = std::sin(tf) * g.dp;
        for (int j = 0; j < g.np; ++j) {
            Vec3 et, ep;
            Vec3 v = vel(tf, g.phi(j), et, ep);
            double flux = dot(v, et) * 0.5 * (F[g.id(i, j)] + F[g.id(i + 1, j)]) * facelen;
            out[g.id(i, j)] += flux;      // outflow of cell i
            out[g.id(i + 1, j)] -= flux;  // inflow of cell i+1
        }
    }
    for (int i = 0; i < g.nt; ++i) {
        for (int j = 0; j < g.np; ++j) {
            double pf = (j + 1) * g.dp;
            Vec3 et, ep;
            Vec3 v = vel(g.theta(i), pf, et, ep);
            double flux = dot(v, ep) * 0.5 * (F[g.id(i, j)] + F[g.id(i, j + 1)]) * g.dt;
            out[g.id(i, j)] += flux;
            out[g.id(i, j + 1)] -= flux;
        }
    }
}

// CG on -L (SPD on the mean-zero subspace), Jacobi preconditioned
std::vector<double> solve_poisson(const Grid& g, std::vector<double> rhs) {
    long n = long(g.nt) * g.np;
    // diagonal of -L
    std::vector<double> diag(n, 0.0);
    {
        for (int i = 0; i + 1 < g.nt; ++i) {
            double cond = std::sin((i + 1) * g.dt) * g.dp / g.dt;
            for (int j = 0; j < g.np; ++j) {
                diag[g.id(i, j)] += cond;
                diag[g.id(i + 1, j)] += cond;
            }
        }
        for (int i = 0; i < g.nt; ++i) {
            double cond = g.dt / (std::sin(g.theta(i)) * g.dp);
            for (int j = 0; j < g.np; ++j) {
                diag[g.id(i, j)] += cond;
                diag[g.id(i, j + 1)] += cond;
            }
        }
    }
    auto project = [&](std::vector<double>& v) {
        double m = 0.0;
        for (double x : v) m += x;
        m /= double(n);
        for (double& x : v) x -= m;
    };
    project(rhs);
    std::vector<double> x(n, 0.0), r = rhs, z(n), p(n), Ap(n);
    for (long k = 0; k < n; ++k) z[k] = r[k] / diag[k];
    project(z);
    p = z;
    double rz = 0.0;
    for (long k = 0; k < n; ++k) rz += r[k] * z[k];
    double rhs_norm = 0.0;
    for (double v : rhs) rhs_norm += v * v;
    rhs_norm = std::sqrt(rhs_norm);
    if (rhs_norm == 0.0) return x;
    for (int it = 0; it < 20000; ++it) {
        apply_L(g, p, Ap);
        for (double& v : Ap) v = -v;
        double pAp = 0.0;
        for (long k = 0; k < n; ++k) pAp += p[k] * Ap[k];
        double alpha = rz / pAp;
        double rnorm = 0.0;
        for (long k = 0; k < n; ++k) {
            x[k] += alpha * p[k];
            r[k] -= alpha * Ap[k];
            rnorm += r[k] * r[k];
        }
        if (std::sqrt(rnorm) < 1e-13 * rhs_norm) break;
        for (long k = 0; k < n; ++k) z[k] = r[k] / diag[k];
        project(z);
        double rz_new = 0.0;
        for (long k = 0; k < n; ++k) rz_new += r[k] * z[k];
        double beta = rz_new / rz;
        rz = rz_new;
        for (long k = 0; k < n; ++k) p[k] = z[k] + beta * p[k];
    }
    project(x);
    return x;
}

} // namespace

Vec3 FdSphereSolution::direction(int i, int j) const {
    double theta = (i + 0.5) * M_PI / n_theta;
    double phi = (j + 0.5) * 2.0 * M_PI / n_phi;
    return dir_of(theta, phi);
}

double FdSphereSolution::mass() const {
    double m = 0.0;
    for (size_t k = 0; k < values.size(); ++k) m += values[k] * volumes[k];
    return m;
}

FdSphereSolution fd_stationary_density(const Mat3& S, double xi, double Dr, int n_theta,
                                       int n_phi) {
    if (!(Dr > 0.0)) throw std::invalid_argument("fd_stationary_density: Dr > 0");
    Grid g{n_theta, n_phi, M_PI / n_theta, 2.0 * M_PI / n_phi};
    long n = long(n_theta) * n_phi;
    const double c0 = 1.0 / (4.0 * M_PI);

    std::vector<double> F(n, c0), delta(n, 0.0), drift(n), rhs(n);
    std::vector<double> vol(n);
    for (int i = 0; i < n_theta; ++i) {
        double v = g.dp * (std::cos(i * g.dt) - std::cos((i + 1) * g.dt));
        for (int j = 0; j < n_phi; ++j) vol[g.id(i, j)] = v;
    }
    for (int pic = 0; pic < 30; ++pic) {
        apply_drift(g, S, xi, F, drift);
        // steady balance per cell: Dr (L F) = Drift(F); solve_poisson inverts -L
        for (long k = 0; k < n; ++k) rhs[k] = -drift[k] / Dr;
        std::vector<double> delta_new = solve_poisson(g, rhs);
        // keep unit mass: remove the volume-weighted mean
        double m = 0.0;
        for (long k = 0; k < n; ++k) m += delta_new[k] * vol[k];
        m /= 4.0 * M_PI;
        for (long k = 0; k < n; ++k) delta_new[k] -= m;
        double diff = 0.0, scale = 0.0;
        for (long k = 0; k < n; ++k) {
            diff += (delta_new[k] - delta[k]) * (delta_new[k] - delta[k]);
            scale += delta_new[k] * delta_new[k];
        }
        delta = std::move(delta_new);
        for (long k = 0; k < n; ++k) F[k] = c0 + delta[k];
        if (scale == 0.0 || std::sqrt(diff) < 1e-12 * std::sqrt(scale)) break;
    }
    FdSphereSolution sol;
    sol.n_theta = n_theta;
    sol.n_phi = n_phi;
    sol.values = std::move(F);
    sol.volumes = std::move(vol);
    return sol;
}

double linear_response_coefficient(const FdSphereSolution& sol, const Mat3& S, double xi,
                                   double Dr) {
    double num = 0.0, den = 0.0;
    double eps = xi / Dr;
    for (int i = 0; i < sol.n_theta; ++i)
        for (int j = 0; j < sol.n_phi; ++j) {
            long k = long(i) * sol.n_phi + j;
            Vec3 p = sol.direction(i, j);
            double q = quad_form(S, p);
            double y = 4.0 * M_PI * sol.values[k] - 1.0;
            num += sol.volumes[k] * y * eps * q;
            den += sol.volumes[k] * eps * q * eps * q;
        }
    if (den == 0.0) throw std::invalid_argument("linear_response_coefficient: S or xi is zero");
    return num / den;
}

} // namespace astk
