#include "activestokes/fokker_planck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "activestokes/quadrature.hpp"

namespace astk {

namespace {

// associated Legendre P_l^m(x) (no Condon-Shortley phase) for all l <= L at
// fixed m, plus theta-derivatives; standard upward recurrence
void legendre_col(int L, int m, double x, double sintheta, std::vector<double>& P,
                  std::vector<double>& dPdtheta) {
    P.assign(L + 1, 0.0);
    dPdtheta.assign(L + 1, 0.0);
    if (m > L) return;
    // P_m^m = (2m-1)!! (sin theta)^m
    double pmm = 1.0;
    for (int k = 1; k <= m; ++k) pmm *= (2.0 * k - 1.0) * sintheta;
    P[m] = pmm;
    if (m + 1 <= L) P[m + 1] = x * (2.0 * m + 1.0) * pmm;
    for (int l = m + 2; l <= L; ++l)
        P[l] = ((2.0 * l - 1.0) * x * P[l - 1] - (l + m - 1.0) * P[l - 2]) / double(l - m);
    // dP/dtheta = -sin(theta) dP/dx with (1-x^2) dP/dx = (l+m) P_{l-1} - l x P_l
    for (int l = m; l <= L; ++l) {
        double prev = (l == m) ? 0.0 : P[l - 1];
        if (sintheta < 1e-300) {
            dPdtheta[l] = 0.0;
        } else {
            dPdtheta[l] = (l * x * P[l] - (l + m) * prev) / sintheta;
        }
    }
}

double norm_const(int l, int m) {
    double lg = std::lgamma(l - m + 1.0) - std::lgamma(l + m + 1.0);
    return std::sqrt((2.0 * l + 1.0) / (4.0 * M_PI) * std::exp(lg));
}

struct Frame {
    double theta, phi, sintheta;
    Vec3 e_theta, e_phi;
};

Frame frame_of(Vec3 p) {
    Frame f;
    f.theta = std::acos(std::max(-1.0, std::min(1.0, p.z)));
    f.phi = std::atan2(p.y, p.x);
    f.sintheta = std::sin(f.theta);
    double ct = std::cos(f.theta), st = f.sintheta;
    double cp = std::cos(f.phi), sp = std::sin(f.phi);
    f.e_theta = {ct * cp, ct * sp, -st};
    f.e_phi = {-sp, cp, 0.0};
    return f;
}

// dense Gaussian elimination with partial pivoting
std::vector<double> solve_dense(std::vector<double> A, std::vector<double> b, int n) {
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(A[i * n + k]) > std::abs(A[piv * n + k])) piv = i;
        if (std::abs(A[piv * n + k]) < 1e-300)
            throw std::runtime_error("stationary_orientation_density: singular Galerkin system");
        if (piv != k) {
            for (int j = k; j < n; ++j) std::swap(A[k * n + j], A[piv * n + j]);
            std::swap(b[k], b[piv]);
        }
        for (int i = k + 1; i < n; ++i) {
            double f = A[i * n + k] / A[k * n + k];
            if (f == 0.0) continue;
            for (int j = k; j < n; ++j) A[i * n + j] -= f * A[k * n + j];
            b[i] -= f * b[k];
        }
    }
    std::vector<double> x(n);
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < n; ++j) s -= A[i * n + j] * x[j];
        x[i] = s / A[i * n + i];
    }
    return x;
}

std::vector<double> solve_galerkin(const Mat3& S, double xi, double Dr, int L) {
    SphericalHarmonics sh(L);
    const int nb = sh.count();
    // drift coupling G[a][b] = ∫ grad_s Y_a . v Y_b, v = xi (Id - pp) S p
    SurfaceQuadrature quad = SurfaceQuadrature::product_gauss(L + 6, 2 * L + 12);
    std::vector<double> G(size_t(nb) * nb, 0.0);
    std::vector<double> Y(nb);
    std::vector<Vec3> dY(nb);
    for (const auto& node : quad.nodes) {
        Vec3 p = node.dir;
        Vec3 v = S * p;
        v = xi * (v - dot(v, p) * p);
        sh.eval(p, Y);
        sh.eval_gradient(p, dY);
        for (int a = 0; a < nb; ++a) {
            double ga = dot(dY[a], v) * node.weight;
            if (ga == 0.0) continue;
            for (int b = 0; b < nb; ++b) G[size_t(a) * nb + b] += ga * Y[b];
        }
    }
    // equations (rows a >= 1): Dr l(l+1) f_a - sum_b G[a][b] f_b = 0, f_0 fixed
    const double f0 = 1.0 / std::sqrt(4.0 * M_PI); // unit total mass
    int n = nb - 1;
    std::vector<double> A(size_t(n) * n, 0.0), rhs(n, 0.0);
    for (int a = 1; a < nb; ++a) {
        int l = int(std::floor(std::sqrt(double(a))));
        for (int b = 1; b < nb; ++b) A[size_t(a - 1) * n + (b - 1)] = -G[size_t(a) * nb + b];
        A[size_t(a - 1) * n + (a - 1)] += Dr * l * (l + 1);
        rhs[a - 1] = G[size_t(a) * nb + 0] * f0;
    }
    std::vector<double> x = solve_dense(std::move(A), std::move(rhs), n);
    std::vector<double> coeff(nb);
    coeff[0] = f0;
    for (int a = 1; a < nb; ++a) coeff[a] = x[a - 1];
    return coeff;
}

} // namespace

void SphericalHarmonics::eval(Vec3 p, std::vector<double>& out) const {
    out.assign(count(), 0.0);
    Frame f = frame_of(p);
    std::vector<double> P, dP;
    for (int m = 0; m <= L; ++m) {
        legendre_col(L, m, std::cos(f.theta), f.sintheta, P, dP);
        double cm = std::cos(m * f.phi), sm = std::sin(m * f.phi);
        for (int l = m; l <= L; ++l) {
            double N = norm_const(l, m);
            if (m == 0) {
                out[index(l, 0)] = N * P[l];
            } else {
                out[index(l, m)] = M_SQRT2 * N * P[l] * cm;
                out[index(l, -m)] = M_SQRT2 * N * P[l] * sm;
            }
        }
    }
}

void SphericalHarmonics::eval_gradient(Vec3 p, std::vector<Vec3>& out) const {
    out.assign(count(), Vec3{});
    Frame f = frame_of(p);
    if (f.sintheta < 1e-12) {
        // quadrature nodes avoid the poles; gradients there are not needed
        return;
    }
    std::vector<double> P, dP;
    for (int m = 0; m <= L; ++m) {
        legendre_col(L, m, std::cos(f.theta), f.sintheta, P, dP);
        double cm = std::cos(m * f.phi), sm = std::sin(m * f.phi);
        for (int l = m; l <= L; ++l) {
            double N = norm_const(l, m);
            if (m == 0) {
                out[index(l, 0)] = N * dP[l] * f.e_theta;
            } else {
                double c = M_SQRT2 * N;
                out[index(l, m)] =
                    c * (dP[l] * cm * f.e_theta - (m / f.sintheta) * P[l] * sm * f.e_phi);
                out[index(l, -m)] =
                    c * (dP[l] * sm * f.e_theta + (m / f.sintheta) * P[l] * cm * f.e_phi);
            }
        }
    }
}

double StationaryDensity::operator()(Vec3 p) const {
    SphericalHarmonics sh(L);
    std::vector<double> Y;
    sh.eval(normalized(p), Y);
    double s = 0.0;
    for (int a = 0; a < sh.count(); ++a) s += coeff[a] * Y[a];
    return s;
}

std::vector<double> StationaryDensity::tabulate(int n_theta, int n_phi) const {
    std::vector<double> out(size_t(n_theta) * n_phi);
    for (int i = 0; i < n_theta; ++i) {
        double theta = (i + 0.5) * M_PI / n_theta;
        for (int j = 0; j < n_phi; ++j) {
            double phi = (j + 0.5) * 2.0 * M_PI / n_phi;
            Vec3 p{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                   std::cos(theta)};
            out[size_t(i) * n_phi + j] = (*this)(p);
        }
    }
    return out;
}

StationaryDensity stationary_orientation_density(const Mat3& S, double xi, double Dr, int L,
                                                 double tol) {
    if (!(Dr > 0.0)) throw std::invalid_argument("stationary_orientation_density: Dr > 0");
    if (L < 4) throw std::invalid_argument("stationary_orientation_density: L >= 4");
    if (std::abs(trace(S)) > 1e-10 * (1.0 + frobenius_norm(S)))
        throw std::invalid_argument("stationary_orientation_density: S must be trace-free");

    std::vector<double> c1 = solve_galerkin(S, xi, Dr, L);
    std::vector<double> c2 = solve_galerkin(S, xi, Dr, L + 4);
    double diff2 = 0.0;
    for (size_t a = 0; a < c2.size(); ++a) {
        double v1 = a < c1.size() ? c1[a] : 0.0;
        double d = v1 - c2[a];
        diff2 += d * d;
    }
    double resid = std::sqrt(diff2); // Parseval: L2(S^2) distance
    if (resid > tol)
        throw std::runtime_error(
            "stationary_orientation_density: truncations L and L+4 differ by " +
            std::to_string(resid) + " > tol (xi|S|/Dr too large for L)");

    StationaryDensity F;
    F.L = L;
    F.coeff = std::move(c1);
    F.truncation_residual = resid;
    // negativity scan; reported, never clipped
    double mn = std::numeric_limits<double>::infinity();
    std::vector<double> tab = F.tabulate(64, 128);
    for (double v : tab) mn = std::min(mn, v);
    F.min_value = mn;
    return F;
}

} // namespace astk
