#include "activestokes/density.hpp"

#include <cmath>
#include <stdexcept>

namespace astk {

OrientationDensity OrientationDensity::uniform(Domain d) {
    OrientationDensity f;
    f.family_ = Family::uniform;
    f.domain_ = d;
    return f;
}

OrientationDensity OrientationDensity::dirac_aligned(Vec3 p0, Domain d) {
    OrientationDensity f;
    f.family_ = Family::dirac_aligned;
    f.p0_ = normalized(p0);
    f.domain_ = d;
    return f;
}

OrientationDensity OrientationDensity::axisymmetric_smooth(Vec3 p0, double kappa, Domain d) {
    if (kappa < 0.0) throw std::invalid_argument("axisymmetric_smooth: kappa must be >= 0");
    OrientationDensity f;
    f.family_ = Family::axisymmetric_smooth;
    f.p0_ = normalized(p0);
    f.kappa_ = kappa;
    f.domain_ = d;
    return f;
}

OrientationDensity OrientationDensity::tabulated(int nx, int ntheta, int nphi,
                                                 std::vector<double> values, Domain d) {
    if (nx < 1 || ntheta < 2 || nphi < 2)
        throw std::invalid_argument("tabulated: grid too small");
    size_t expected = size_t(nx) * nx * nx * ntheta * nphi;
    if (values.size() != expected)
        throw std::invalid_argument("tabulated: value count mismatch");
    OrientationDensity f;
    f.family_ = Family::tabulated;
    f.domain_ = d;
    f.nx_ = nx;
    f.ntheta_ = ntheta;
    f.nphi_ = nphi;
    // normalize: midpoint in x (cell volume 1/nx^3) x midpoint in (cos theta, phi)
    double mass = 0.0;
    double wsph = (2.0 / ntheta) * (2.0 * M_PI / nphi);
    for (double v : values) {
        if (v < 0.0) throw std::invalid_argument("tabulated: negative density sample");
        mass += v;
    }
    mass *= wsph / (double(nx) * nx * nx);
    if (!(mass > 0.0)) throw std::invalid_argument("tabulated: zero mass");
    for (double& v : values) v /= mass;
    f.table_ = std::move(values);
    f.table_max_ = 0.0;
    for (double v : f.table_) f.table_max_ = std::max(f.table_max_, v);
    return f;
}

namespace {
// mean resultant length of the von Mises-Fisher distribution
double vmf_L(double kappa) {
    if (kappa < 1e-6) return kappa / 3.0 - kappa * kappa * kappa / 45.0;
    return 1.0 / std::tanh(kappa) - 1.0 / kappa;
}
double vmf_norm_const(double kappa) {
    if (kappa < 1e-12) return 1.0 / (4.0 * M_PI);
    return kappa / (4.0 * M_PI * std::sinh(kappa));
}
} // namespace

double OrientationDensity::sphere_interp(Vec3 x, Vec3 p) const {
    // trilinear over cell centers in x, bilinear over (theta, phi) nodes
    auto clampi = [](int i, int n) { return std::max(0, std::min(n - 1, i)); };
    double fx[3];
    int ix[3];
    for (int k = 0; k < 3; ++k) {
        double t = x[k] * nx_ - 0.5;
        int i0 = int(std::floor(t));
        fx[k] = t - i0;
        ix[k] = i0;
    }
    double theta = std::acos(std::max(-1.0, std::min(1.0, p.z)));
    double phi = std::atan2(p.y, p.x);
    if (phi < 0) phi += 2.0 * M_PI;
    double tt = theta / M_PI * ntheta_ - 0.5;
    int it0 = int(std::floor(tt));
    double ft = tt - it0;
    double pp = phi / (2.0 * M_PI) * nphi_ - 0.5;
    int ip0 = int(std::floor(pp));
    double fp = pp - ip0;

    auto at = [&](int i, int j, int k, int t, int q) {
        i = clampi(i, nx_); j = clampi(j, nx_); k = clampi(k, nx_);
        t = clampi(t, ntheta_);
        q = ((q % nphi_) + nphi_) % nphi_;
        return table_[((((size_t(i) * nx_) + j) * nx_ + k) * ntheta_ + t) * nphi_ + q];
    };
    double v = 0.0;
    for (int di = 0; di < 2; ++di)
        for (int dj = 0; dj < 2; ++dj)
            for (int dk = 0; dk < 2; ++dk)
                for (int dt = 0; dt < 2; ++dt)
                    for (int dq = 0; dq < 2; ++dq) {
                        double w = (di ? fx[0] : 1 - fx[0]) * (dj ? fx[1] : 1 - fx[1]) *
                                   (dk ? fx[2] : 1 - fx[2]) * (dt ? ft : 1 - ft) *
                                   (dq ? fp : 1 - fp);
                        v += w * at(ix[0] + di, ix[1] + dj, ix[2] + dk, it0 + dt, ip0 + dq);
                    }
    return v;
}

double OrientationDensity::cell_sphere_avg(Vec3 x) const {
    // integral of the tabulated f(x,.) over the sphere via the table's own grid
    double s = 0.0;
    double wsph = (2.0 / ntheta_) * (2.0 * M_PI / nphi_);
    for (int t = 0; t < ntheta_; ++t) {
        double c = -1.0 + (t + 0.5) * 2.0 / ntheta_;
        double th = std::acos(c);
        for (int q = 0; q < nphi_; ++q) {
            double ph = (q + 0.5) * 2.0 * M_PI / nphi_;
            Vec3 p{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), c};
            s += sphere_interp(x, p);
        }
    }
    return s * wsph;
}

double OrientationDensity::rho(Vec3 x) const {
    if (family_ == Family::tabulated) return cell_sphere_avg(x);
    return domain_.contains(x) ? 1.0 : 0.0;
}

double OrientationDensity::value(Vec3 x, Vec3 p) const {
    switch (family_) {
        case Family::uniform:
            return rho(x) / (4.0 * M_PI);
        case Family::axisymmetric_smooth:
            return rho(x) * vmf_norm_const(kappa_) * std::exp(kappa_ * dot(p, p0_));
        case Family::tabulated:
            return domain_.contains(x) ? sphere_interp(x, p) : 0.0;
        case Family::dirac_aligned:
            throw std::domain_error("value: dirac_aligned density has no pointwise value");
    }
    return 0.0;
}

Mat3 OrientationDensity::second_moment(Vec3 x) const {
    double r = rho(x);
    switch (family_) {
        case Family::uniform:
            return (r / 3.0) * Mat3::identity();
        case Family::dirac_aligned:
            return r * outer(p0_, p0_);
        case Family::axisymmetric_smooth: {
            double L = vmf_L(kappa_);
            double mpar = kappa_ < 1e-12 ? 1.0 / 3.0 : 1.0 - 2.0 * L / kappa_;
            double mperp = 0.5 * (1.0 - mpar);
            Mat3 P = outer(p0_, p0_);
            return r * (mpar * P + mperp * (Mat3::identity() - P));
        }
        case Family::tabulated: {
            Mat3 M{};
            double wsph = (2.0 / ntheta_) * (2.0 * M_PI / nphi_);
            for (int t = 0; t < ntheta_; ++t) {
                double c = -1.0 + (t + 0.5) * 2.0 / ntheta_;
                double th = std::acos(c);
                for (int q = 0; q < nphi_; ++q) {
                    double ph = (q + 0.5) * 2.0 * M_PI / nphi_;
                    Vec3 p{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), c};
                    M += (wsph * sphere_interp(x, p)) * outer(p, p);
                }
            }
            return M;
        }
    }
    return Mat3::zero();
}

Vec3 OrientationDensity::sample_orientation(Vec3 x, Rng& rng) const {
    switch (family_) {
        case Family::uniform:
            return rng.unit_vector();
        case Family::dirac_aligned:
            return p0_;
        case Family::axisymmetric_smooth:
            return rng.von_mises_fisher(p0_, kappa_);
        case Family::tabulated: {
            double fmax = table_max_ * 1.0001;
            for (int it = 0; it < 100000; ++it) {
                Vec3 p = rng.unit_vector();
                if (rng.uniform() * fmax <= sphere_interp(x, p)) return p;
            }
            throw std::runtime_error("sample_orientation: rejection sampling stalled");
        }
    }
    return p0_;
}

Vec3 OrientationDensity::sample_position(Rng& rng) const {
    if (family_ != Family::tabulated) return domain_.sample(rng);
    double rho_max = 0.0;
    // conservative bound: max over x of the sphere average; use table max * 4pi
    rho_max = table_max_ * 4.0 * M_PI;
    for (int it = 0; it < 1000000; ++it) {
        Vec3 x = domain_.sample(rng);
        if (rng.uniform() * rho_max <= rho(x)) return x;
    }
    throw std::runtime_error("sample_position: rejection sampling stalled");
}

} // namespace astk
