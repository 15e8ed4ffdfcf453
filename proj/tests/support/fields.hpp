// fields.hpp - shared test fixtures: a tabulated orientation density with
// smoothly varying anisotropy (sigma_1 then varies inside O, so interior
// divergence-free test fields give non-degenerate weak forms).
#pragma once

#include <cmath>
#include <vector>

#include "activestokes/density.hpp"

namespace astk::testing {

/// f(x,p) ~ 1 + 0.8 m(x) P2(p.p0), m = prod sin(pi x_k); positive everywhere.
/// Table planes (4^3 in x) align with any grid whose resolution divides by 4.
inline OrientationDensity make_varying_density() {
    const int nx = 4, nt = 8, np = 16;
    const Vec3 p0 = normalized(Vec3{0.5, 0.7, 0.6});
    std::vector<double> vals;
    vals.reserve(size_t(nx) * nx * nx * nt * np);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < nx; ++j)
            for (int k = 0; k < nx; ++k) {
                double m = std::sin(M_PI * (i + 0.5) / nx) * std::sin(M_PI * (j + 0.5) / nx) *
                           std::sin(M_PI * (k + 0.5) / nx);
                for (int t = 0; t < nt; ++t) {
                    double c = -1.0 + (t + 0.5) * 2.0 / nt;
                    double theta = std::acos(c);
                    for (int q = 0; q < np; ++q) {
                        double phi = (q + 0.5) * 2.0 * M_PI / np;
                        Vec3 p{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                               c};
                        double t2 = dot(p, p0);
                        vals.push_back(1.0 + 0.8 * m * 0.5 * (3.0 * t2 * t2 - 1.0));
                    }
                }
            }
    return OrientationDensity::tabulated(nx, nt, np, std::move(vals));
}

} // namespace astk::testing
