// density.hpp - containment domain and orientation density families f(x,p).
#pragma once

#include <memory>
#include <vector>

#include "activestokes/geometry.hpp"
#include "activestokes/quadrature.hpp"
#include "activestokes/rng.hpp"

namespace astk {

/// Containment domain O of unit volume.
struct Domain {
    enum class Kind { unit_cube, ball };
    Kind kind = Kind::unit_cube;

    Vec3 center() const { return {0.5, 0.5, 0.5}; }
    double ball_radius() const { return std::cbrt(3.0 / (4.0 * M_PI)); }

    bool contains(Vec3 x) const {
        if (kind == Kind::unit_cube)
            return x.x >= 0 && x.x <= 1 && x.y >= 0 && x.y <= 1 && x.z >= 0 && x.z <= 1;
        return norm(x - center()) <= ball_radius();
    }
    Vec3 sample(Rng& rng) const {
        if (kind == Kind::unit_cube) return rng.uniform_in_unit_cube();
        double R = ball_radius();
        for (;;) {
            Vec3 x = {rng.uniform(-R, R), rng.uniform(-R, R), rng.uniform(-R, R)};
            if (norm2(x) <= R * R) return x + center();
        }
    }
};

/// f(x,p) on O x S^2, normalized so that the total mass is 1.
/// Families: uniform, dirac_aligned(p0), axisymmetric_smooth(p0, kappa) (von
/// Mises-Fisher), tabulated (trilinear in x, bilinear in (theta,phi)).
class OrientationDensity {
public:
    enum class Family { uniform, dirac_aligned, axisymmetric_smooth, tabulated };

    static OrientationDensity uniform(Domain d = {});
    static OrientationDensity dirac_aligned(Vec3 p0, Domain d = {});
    static OrientationDensity axisymmetric_smooth(Vec3 p0, double kappa, Domain d = {});
    /// values laid out as [ix][iy][iz][itheta][iphi] at cell centers; the table
    /// is normalized to unit total mass at construction
    static OrientationDensity tabulated(int nx, int ntheta, int nphi,
                                        std::vector<double> values, Domain d = {});

    Family family() const { return family_; }
    const Domain& domain() const { return domain_; }
    Vec3 mean_direction() const { return p0_; }
    double concentration() const { return kappa_; }

    /// spatial density rho(x) = ∫ f(x,p) dp
    double rho(Vec3 x) const;

    /// pointwise value f(x,p); throws for the dirac family (not a function)
    double value(Vec3 x, Vec3 p) const;

    /// orientation second moment ∫ p⊗p f(x,p) dp (trace = rho(x))
    Mat3 second_moment(Vec3 x) const;

    /// draw p ~ f(x,.)/rho(x)
    Vec3 sample_orientation(Vec3 x, Rng& rng) const;

    /// draw x ~ rho
    Vec3 sample_position(Rng& rng) const;

private:
    Family family_ = Family::uniform;
    Domain domain_;
    Vec3 p0_{0, 0, 1};
    double kappa_ = 0.0;
    // tabulated data
    int nx_ = 0, ntheta_ = 0, nphi_ = 0;
    std::vector<double> table_; // normalized
    double table_max_ = 0.0;
    double sphere_interp(Vec3 x, Vec3 p) const;
    double cell_sphere_avg(Vec3 x) const;
};

} // namespace astk
