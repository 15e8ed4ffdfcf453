#include "activestokes/effective.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "activestokes/parallel.hpp"
#include "activestokes/quadrature.hpp"

namespace astk {

namespace {

constexpr double kInv8Pi = 1.0 / (8.0 * M_PI);

/// mu-free Stokes-doublet velocity kernel K(z)A = -3/(8 pi) (A:zz) z/|z|^5
inline Vec3 doublet_vel(Vec3 z, const Mat3& A) {
    double r2 = norm2(z);
    double r = std::sqrt(r2);
    double r5 = r2 * r2 * r;
    return (-3.0 * kInv8Pi * quad_form(A, z) / r5) * z;
}

/// mu-free gradient of the doublet velocity (valid for symmetric A)
inline Mat3 doublet_grad(Vec3 z, const Mat3& A) {
    double r2 = norm2(z);
    double r = std::sqrt(r2);
    double r5 = r2 * r2 * r, r7 = r5 * r2;
    double axx = quad_form(A, z);
    double c = -3.0 * kInv8Pi;
    Mat3 G = (2.0 * c / r5) * outer(z, A * z) + (c * axx / r5) * Mat3::identity();
    G -= (5.0 * c * axx / r7) * outer(z, z);
    return G;
}

/// mu-free Oseen velocity and gradient
inline Vec3 oseen_vel(Vec3 z, Vec3 F) {
    double r = norm(z);
    double r3 = r * r * r;
    return kInv8Pi * (F / r + (dot(F, z) / r3) * z);
}
inline Mat3 oseen_grad(Vec3 z, Vec3 F) {
    double r = norm(z);
    double r3 = r * r * r, r5 = r3 * r * r;
    double fz = dot(F, z);
    Mat3 G = (kInv8Pi / r3) * (outer(z, F) - outer(F, z) + fz * Mat3::identity());
    G -= (3.0 * kInv8Pi * fz / r5) * outer(z, z);
    return G;
}

/// Correction tensor for gradient evaluations at lattice cell centers:
///   C(A) = PV ∫_{big cube} K_D(z) A dz  -  sum_{0 < |d|_inf <= M} K_D(d) A
/// in cell units (scale invariant by the -3 homogeneity). The midpoint sum
/// over near cells of the even singular kernel carries an h-independent
/// defect that this tensor restores; beyond M the per-cell defect decays
/// like |d|^-5. Computed once per process for a symmetric-matrix basis.
class LatticeDefectTensor {
public:
    static const LatticeDefectTensor& instance() {
        static LatticeDefectTensor t;
        return t;
    }
    Mat3 apply(const Mat3& A) const {
        Mat3 out{};
        out += A(0, 0) * images_[0];
        out += A(1, 1) * images_[1];
        out += A(2, 2) * images_[2];
        out += A(0, 1) * images_[3];
        out += A(0, 2) * images_[4];
        out += A(1, 2) * images_[5];
        return out;
    }

private:
    LatticeDefectTensor() {
        const int M = 24;
        std::array<Mat3, 6> basis{};
        basis[0](0, 0) = 1;
        basis[1](1, 1) = 1;
        basis[2](2, 2) = 1;
        basis[3](0, 1) = basis[3](1, 0) = 1;
        basis[4](0, 2) = basis[4](2, 0) = 1;
        basis[5](1, 2) = basis[5](2, 1) = 1;
        for (int k = 0; k < 6; ++k) {
            Mat3 acc{};
            // self cell: PV over the unit cube minus its inscribed ball (the
            // ball part has zero angular mean)
            acc += cell_integral(basis[k], {0, 0, 0}, 64, true);
            for (int dx = -M; dx <= M; ++dx)
                for (int dy = -M; dy <= M; ++dy)
                    for (int dz = -M; dz <= M; ++dz) {
                        if (dx == 0 && dy == 0 && dz == 0) continue;
                        int dinf = std::max({std::abs(dx), std::abs(dy), std::abs(dz)});
                        int sub = dinf <= 2 ? 16 : (dinf <= 6 ? 6 : 2);
                        Vec3 d{double(dx), double(dy), double(dz)};
                        acc += cell_integral(basis[k], d, sub, false);
                        acc -= doublet_grad(d, basis[k]);
                    }
            images_[k] = acc;
        }
    }
    static Mat3 cell_integral(const Mat3& A, Vec3 center, int n, bool exclude_ball) {
        Mat3 acc{};
        double h = 1.0 / n;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < n; ++l) {
                    Vec3 z = center + Vec3{-0.5 + (i + 0.5) * h, -0.5 + (j + 0.5) * h,
                                           -0.5 + (l + 0.5) * h};
                    if (exclude_ball && norm2(z) <= 0.25) continue;
                    acc += (h * h * h) * doublet_grad(z, A);
                }
        return acc;
    }
    std::array<Mat3, 6> images_;
};

struct SourceGrid {
    int n = 0;
    double h = 0.0;
    std::vector<Vec3> centers;
    std::vector<Mat3> value;

    long cell_of(Vec3 x) const {
        int ix = int(std::floor(x.x * n)), iy = int(std::floor(x.y * n)),
            iz = int(std::floor(x.z * n));
        if (ix < 0 || iy < 0 || iz < 0 || ix >= n || iy >= n || iz >= n) return -1;
        return (long(ix) * n + iy) * n + iz;
    }
};

std::shared_ptr<SourceGrid> build_source_grid(const std::function<Mat3(Vec3)>& T,
                                              const Domain& dom, const GridSpec& grid) {
    auto g = std::make_shared<SourceGrid>();
    g->n = grid.n;
    g->h = 1.0 / grid.n;
    long total = long(grid.n) * grid.n * grid.n;
    g->centers.resize(total);
    g->value.resize(total);
    parallel_for(total, [&](std::ptrdiff_t c) {
        int n = g->n;
        long iz = c % n, iy = (c / n) % n, ix = c / (long(n) * n);
        Vec3 x{(ix + 0.5) * g->h, (iy + 0.5) * g->h, (iz + 0.5) * g->h};
        g->centers[c] = x;
        g->value[c] = dom.contains(x) ? T(x) : Mat3::zero();
    });
    return g;
}

} // namespace

ActiveStress active_stress(const OrientationDensity& density, const SwimmerParams& sp) {
    ActiveStress s;
    s.alpha = sp.alpha;
    if (sp.alpha == 0.0) {
        s.Jcal = 0.0;
    } else {
        SwimmerParams mag(std::abs(sp.alpha), sp.beta, sp.a, sp.fluid);
        s.Jcal = dipole_J(mag); // positive (Eq. 1.5), evaluated at |alpha|
    }
    s.domain = density.domain();
    s.moment_tf = [density](Vec3 x) {
        Mat3 M = density.second_moment(x);
        return M - (trace(M) / 3.0) * Mat3::identity();
    };
    return s;
}

EffectiveFlow stokes_source_flow(const std::function<Mat3(Vec3)>& T, const Domain& dom,
                                 FluidParams fluid, const GridSpec& grid) {
    auto g = build_source_grid(T, dom, grid);
    const double mu = fluid.mu;
    const double h3 = g->h * g->h * g->h;

    EffectiveFlow flow;
    flow.provenance = EffectiveFlow::Provenance::w0;
    flow.velocity = [g, mu, h3](Vec3 x) {
        long self = g->cell_of(x);
        Vec3 acc{};
        for (size_t c = 0; c < g->value.size(); ++c) {
            if (long(c) == self) continue; // centered-cell PV of the odd kernel is 0
            acc += h3 * doublet_vel(x - g->centers[c], g->value[c]);
        }
        return (1.0 / mu) * acc;
    };
    flow.gradient = [g, mu, h3](Vec3 x) {
        long self = g->cell_of(x);
        Mat3 acc{};
        for (size_t c = 0; c < g->value.size(); ++c) {
            if (long(c) == self) continue;
            acc += h3 * doublet_grad(x - g->centers[c], g->value[c]);
        }
        if (self >= 0) {
            const Mat3& s = g->value[self];
            acc += LatticeDefectTensor::instance().apply(s); // near-lattice PV defect
            acc -= 0.2 * s;                                  // local Calderon-Zygmund term
        }
        return (1.0 / mu) * acc;
    };
    return flow;
}

EffectiveFlow solve_w0(const ActiveStress& stress, double lambda, FluidParams fluid,
                       const GridSpec& grid) {
    EffectiveFlow flow = stokes_source_flow(
        [&stress, lambda](Vec3 x) { return lambda * stress.sigma(x); }, stress.domain, fluid,
        grid);
    flow.provenance = EffectiveFlow::Provenance::w0;
    flow.lambda = lambda;
    return flow;
}

ForceField ForceField::bump(Vec3 g0, Vec3 center, double radius) {
    ForceField f;
    f.center = center;
    f.radius = radius;
    f.value = [g0, center, radius](Vec3 x) {
        double s = norm2(x - center) / (radius * radius);
        if (s >= 1.0) return Vec3{};
        double w = 1.0 - s;
        return (w * w * w) * g0;
    };
    return f;
}

BackgroundFlow oseen_background(const ForceField& gforce, FluidParams fluid, int grid_n) {
    struct ForceGrid {
        double h = 0.0, h3 = 0.0;
        std::vector<Vec3> centers, values;
    };
    auto fg = std::make_shared<ForceGrid>();
    double side = 2.0 * gforce.radius;
    fg->h = side / grid_n;
    fg->h3 = fg->h * fg->h * fg->h;
    Vec3 lo = gforce.center - Vec3{gforce.radius, gforce.radius, gforce.radius};
    for (int i = 0; i < grid_n; ++i)
        for (int j = 0; j < grid_n; ++j)
            for (int k = 0; k < grid_n; ++k) {
                Vec3 x = lo + Vec3{(i + 0.5) * fg->h, (j + 0.5) * fg->h, (k + 0.5) * fg->h};
                Vec3 v = gforce.value(x);
                if (norm2(v) > 0) {
                    fg->centers.push_back(x);
                    fg->values.push_back(v);
                }
            }
    // isotropic coefficient of ∫_{unit cube} U(z) dz (mu-free), computed once
    static const double s_u = [] {
        int n = 64;
        double h = 1.0 / n, acc = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    Vec3 w{-0.5 + (i + 0.5) * h, -0.5 + (j + 0.5) * h, -0.5 + (k + 0.5) * h};
                    acc += h * h * h / norm(w);
                }
        return acc * (4.0 / 3.0) * kInv8Pi;
    }();

    const double mu = fluid.mu;
    BackgroundFlow bg;
    bg.velocity = [fg, mu](Vec3 x) {
        Vec3 acc{};
        for (size_t c = 0; c < fg->centers.size(); ++c) {
            Vec3 z = x - fg->centers[c];
            if (norm2(z) < 0.25 * fg->h * fg->h) {
                acc += (s_u * fg->h * fg->h) * fg->values[c]; // self-cell integral
                continue;
            }
            acc += fg->h3 * oseen_vel(z, fg->values[c]);
        }
        return (1.0 / mu) * acc;
    };
    bg.gradient = [fg, mu](Vec3 x) {
        Mat3 acc{};
        for (size_t c = 0; c < fg->centers.size(); ++c) {
            Vec3 z = x - fg->centers[c];
            if (norm2(z) < 0.25 * fg->h * fg->h) continue; // odd kernel, bounded cell integral
            acc += fg->h3 * oseen_grad(z, fg->values[c]);
        }
        return (1.0 / mu) * acc;
    };
    return bg;
}

EffectiveFlow solve_effective(const ForceField& gforce, const OrientationDensity& density,
                              const SwimmerParams& sp, double lambda, const GridSpec& grid) {
    const double mu = sp.fluid.mu;
    BackgroundFlow u0 = oseen_background(gforce, sp.fluid);
    ActiveStress stress = active_stress(density, sp);

    // combined first-order source: sigma_1 + 5 mu rho D(u0), sampled once
    auto source = [&](Vec3 x) {
        Mat3 T = stress.sigma(x);
        double rho = density.rho(x);
        if (rho > 0.0) T += (5.0 * mu * rho) * sym(u0.gradient(x));
        return T;
    };
    EffectiveFlow u1 = stokes_source_flow(source, density.domain(), sp.fluid, grid);

    EffectiveFlow flow;
    flow.provenance = EffectiveFlow::Provenance::einstein_corrected;
    flow.lambda = lambda;
    flow.velocity = [u0, u1, lambda](Vec3 x) { return u0.velocity(x) + lambda * u1.velocity(x); };
    flow.gradient = [u0, u1, lambda](Vec3 x) {
        return u0.gradient(x) + lambda * u1.gradient(x);
    };
    return flow;
}

EnergyBreakdown energy_dissipation(const EffectiveFlow& flow, const OrientationDensity& density,
                                   const SwimmerParams& sp, double lambda, const Box& domain,
                                   int quad_n) {
    if (!flow.gradient)
        throw std::invalid_argument("energy_dissipation: flow gradient required");
    ActiveStress stress = active_stress(density, sp);
    GaussRule gr = gauss_legendre(quad_n);
    Vec3 ext = domain.hi - domain.lo;
    double jac = ext.x * ext.y * ext.z / 8.0;
    const double mu = sp.fluid.mu;

    std::vector<double> visc(quad_n, 0.0), act(quad_n, 0.0);
    parallel_for(quad_n, [&](std::ptrdiff_t i) {
        double vi = 0.0, ai = 0.0;
        for (int j = 0; j < quad_n; ++j)
            for (int k = 0; k < quad_n; ++k) {
                Vec3 x{domain.lo.x + 0.5 * ext.x * (1.0 + gr.nodes[i]),
                       domain.lo.y + 0.5 * ext.y * (1.0 + gr.nodes[j]),
                       domain.lo.z + 0.5 * ext.z * (1.0 + gr.nodes[k])};
                double w = gr.weights[i] * gr.weights[j] * gr.weights[k] * jac;
                Mat3 D = sym(flow.gradient(x));
                double rho = density.rho(x);
                vi -= w * 2.0 * mu * (1.0 + 2.5 * rho * lambda) * ddot(D, D);
                if (rho > 0.0) ai -= w * lambda * ddot(stress.sigma(x), D);
            }
        visc[i] = vi;
        act[i] = ai;
    });
    EnergyBreakdown e;
    for (int i = 0; i < quad_n; ++i) {
        e.viscous += visc[i];
        e.active += act[i];
    }
    return e;
}

double anisotropy_condition(const SphereDensity& F, const Mat3& S,
                            const SurfaceQuadrature& quad) {
    if (F.is_dirac) return 4.0 * M_PI * quad_form(S, F.p0);
    if (!F.f) throw std::invalid_argument("anisotropy_condition: density callable missing");
    double acc = 0.0;
    for (const auto& node : quad.nodes) acc += node.weight * quad_form(S, node.dir) * F.f(node.dir);
    return acc;
}

Vec3 SolenoidalTestField::value(Vec3 x) const {
    Vec3 z = x - x0;
    double s = norm2(z) / (R * R);
    if (s >= 1.0) return {};
    double w = 1.0 - s;
    Vec3 grad_eta = (-8.0 * w * w * w / (R * R)) * z;
    return cross(grad_eta, c);
}

Mat3 SolenoidalTestField::gradient(Vec3 x) const {
    Vec3 z = x - x0;
    double s = norm2(z) / (R * R);
    if (s >= 1.0) return Mat3::zero();
    double w = 1.0 - s;
    Mat3 H = (48.0 * w * w / (R * R * R * R)) * outer(z, z) -
             (8.0 * w * w * w / (R * R)) * Mat3::identity();
    Mat3 G;
    for (int l = 0; l < 3; ++l) {
        Vec3 hl{H(0, l), H(1, l), H(2, l)};
        Vec3 col = cross(hl, c);
        G(0, l) = col.x;
        G(1, l) = col.y;
        G(2, l) = col.z;
    }
    return G;
}

Vec3 SolenoidalTestField::laplacian(Vec3 x) const {
    // lap(grad(eta) x c) = grad(lap eta) x c, lap eta = -(24/R^2)(1-s)^2 (1-3s)
    Vec3 z = x - x0;
    double s = norm2(z) / (R * R);
    if (s >= 1.0) return {};
    double w = 1.0 - s;
    Vec3 grad_lap_eta = (48.0 / (R * R * R * R)) * w * (5.0 - 9.0 * s) * z;
    return cross(grad_lap_eta, c);
}

std::pair<double, double> weak_form_pair(const EffectiveFlow& flow,
                                         const std::function<Mat3(Vec3)>& T, const Domain& dom,
                                         FluidParams fluid, const SolenoidalTestField& phi,
                                         const GridSpec& grid) {
    const int n = grid.n;
    const double h = 1.0 / n, h3 = h * h * h;
    // integration lattice extends the cube grid so supp(phi) is fully covered
    int lo[3], hi[3];
    for (int k = 0; k < 3; ++k) {
        lo[k] = int(std::floor((phi.x0[k] - phi.R) * n)) - 1;
        hi[k] = int(std::ceil((phi.x0[k] + phi.R) * n)) + 1;
    }
    std::vector<Vec3> cells;
    for (int i = lo[0]; i <= hi[0]; ++i)
        for (int j = lo[1]; j <= hi[1]; ++j)
            for (int k = lo[2]; k <= hi[2]; ++k) {
                Vec3 x{(i + 0.5) * h, (j + 0.5) * h, (k + 0.5) * h};
                if (norm2(x - phi.x0) < phi.R * phi.R * 1.05) cells.push_back(x);
            }
    std::vector<double> lhs_part(cells.size(), 0.0);
    parallel_for(std::ptrdiff_t(cells.size()), [&](std::ptrdiff_t c) {
        lhs_part[c] = -fluid.mu * dot(flow.velocity(cells[c]), phi.laplacian(cells[c])) * h3;
    });
    double lhs = 0.0;
    for (double v : lhs_part) lhs += v;

    double rhs = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Vec3 x{(i + 0.5) * h, (j + 0.5) * h, (k + 0.5) * h};
                if (!dom.contains(x)) continue;
                Mat3 Dphi = sym(phi.gradient(x));
                rhs -= ddot(T(x), Dphi) * h3;
            }
    return {lhs, rhs};
}

} // namespace astk
