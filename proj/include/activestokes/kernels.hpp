// kernels.hpp - singular Stokes tensors: Oseen tensor and its derivative family.
//
// All kernels are pure functions of the evaluation point; they throw
// SingularPointError when evaluated closer to the singularity than eps.
#pragma once

#include <stdexcept>
#include <string>

#include "activestokes/geometry.hpp"

namespace astk {

struct FluidParams {
    double mu = 1.0; // dynamic viscosity

    FluidParams() = default;
    explicit FluidParams(double mu_) : mu(mu_) {
        if (!(mu > 0.0)) throw std::invalid_argument("FluidParams: mu must be > 0");
    }
};

class SingularPointError : public std::domain_error {
public:
    explicit SingularPointError(const std::string& what) : std::domain_error(what) {}
};

/// default singularity guard, in units of the reference length
inline constexpr double kSingularEps = 1e-12;

namespace detail {
inline double guarded_norm(Vec3 x, double eps, const char* who) {
    double r = norm(x);
    if (!(r > eps))
        throw SingularPointError(std::string(who) + ": evaluation within " +
                                 std::to_string(eps) + " of the singular point");
    return r;
}
} // namespace detail

/// Oseen tensor U(x) = (Id/|x| + x⊗x/|x|^3) / (8 pi mu)
Mat3 oseen_U(Vec3 x, const FluidParams& fluid, double eps = kSingularEps);

/// Ũ(x) = (Id/(3|x|) - x⊗x/|x|^3) / (8 pi mu); trace-free
Mat3 oseen_tilde_U(Vec3 x, const FluidParams& fluid, double eps = kSingularEps);

/// ΔU(x) = (2 Id/|x|^3 - 6 x⊗x/|x|^5) / (8 pi mu); trace-free
Mat3 laplacian_U(Vec3 x, const FluidParams& fluid, double eps = kSingularEps);

/// Stokeslet-doublet contraction ∇U(x)A = -3/(8 pi mu) (A:x⊗x)/|x|^5 x.
/// For symmetric trace-free A this equals the true contraction ∂_k U_ij A_jk.
Vec3 grad_U_apply(Vec3 x, const Mat3& A, const FluidParams& fluid, double eps = kSingularEps);

/// mu-free kernel M(x)A = -2 (Ax)⊗x/|x|^5 + 5 (A:x⊗x)/|x|^7 x⊗x.
/// sym(M(x)A) differs from (8 pi mu/3) D(∇U(·)A)(x) by the isotropic part
/// (A:x⊗x)/|x|^5 Id; see the gradient helpers below for the exact derivative.
Mat3 M_apply(Vec3 x, const Mat3& A, double eps = kSingularEps);

// -- closed-form gradients (G_ij = ∂_j of component i), used for tractions and
//    the L2 boundary-error functional --

/// gradient of x -> U(x)F
Mat3 grad_stokeslet(Vec3 x, Vec3 F, const FluidParams& fluid, double eps = kSingularEps);

/// gradient of x -> ∇U(x)A, A symmetric
Mat3 grad_stokes_doublet(Vec3 x, const Mat3& A, const FluidParams& fluid, double eps = kSingularEps);

/// gradient of x -> ΔU(x)F
Mat3 grad_potential_doublet(Vec3 x, Vec3 F, const FluidParams& fluid, double eps = kSingularEps);

/// gradient of x -> (1/|x|^2) Ũ(x)F  (finite-size term of a translating sphere)
Mat3 grad_tilde_term(Vec3 x, Vec3 F, const FluidParams& fluid, double eps = kSingularEps);

// -- pressure companions (the pair (velocity, pressure) solves homogeneous
//    Stokes away from the singular point; ΔU and the Ũ-term are pressure-free) --

/// pressure of the Stokeslet U(x)F
double stokeslet_pressure(Vec3 x, Vec3 F, double eps = kSingularEps);

/// pressure of the doublet ∇U(x)A, A symmetric trace-free
double stokes_doublet_pressure(Vec3 x, const Mat3& A, double eps = kSingularEps);

} // namespace astk
