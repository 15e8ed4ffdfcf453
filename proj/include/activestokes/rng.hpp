// rng.hpp - seeded random streams; one 64-bit seed drives independent substreams.
#pragma once

#include <cstdint>
#include <random>

#include "activestokes/geometry.hpp"

namespace astk {

/// splitmix64, used to derive decorrelated substream seeds from one master seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// substream `k` of a master seed, decorrelated via splitmix64
    static Rng substream(std::uint64_t master, std::uint64_t k) {
        std::uint64_t s = master + 0x632be59bd9b4e019ULL * (k + 1);
        return Rng(splitmix64(s));
    }

    double uniform() { return dist_(eng_); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    Vec3 uniform_in_unit_cube() { return {uniform(), uniform(), uniform()}; }

    /// uniform point on the unit sphere
    Vec3 unit_vector() {
        double z = 2.0 * uniform() - 1.0;
        double phi = 2.0 * M_PI * uniform();
        double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        return {s * std::cos(phi), s * std::sin(phi), z};
    }

    /// von Mises-Fisher sample with mean direction mu and concentration kappa >= 0
    Vec3 von_mises_fisher(Vec3 mu, double kappa) {
        if (kappa < 1e-12) return unit_vector();
        // inversion for the axial component: density ~ exp(kappa t) on [-1,1]
        double u = uniform();
        double t = 1.0 + std::log(u + (1.0 - u) * std::exp(-2.0 * kappa)) / kappa;
        double phi = 2.0 * M_PI * uniform();
        Vec3 e3 = normalized(mu);
        Vec3 a = std::abs(e3.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
        Vec3 e1 = normalized(cross(a, e3));
        Vec3 e2 = cross(e3, e1);
        double s = std::sqrt(std::max(0.0, 1.0 - t * t));
        return t * e3 + s * std::cos(phi) * e1 + s * std::sin(phi) * e2;
    }

    Mat3 random_rotation() {
        Vec3 axis = unit_vector();
        return rotation(axis, uniform(0.0, 2.0 * M_PI));
    }

    std::uint64_t raw() { return eng_(); }

private:
    std::mt19937_64 eng_;
    std::uniform_real_distribution<double> dist_{0.0, 1.0};
};

} // namespace astk
