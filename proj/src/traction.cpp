#include "activestokes/traction.hpp"

#include <stdexcept>
#include <vector>

#include "activestokes/parallel.hpp"
#include "activestokes/swimmer.hpp"

namespace astk {

SurfaceTraction traction_on_sphere(const FlowField& flow, double radius,
                                   const SurfaceQuadrature& quad,
                                   const TractionOptions& opts) {
    if (!flow.velocity || !flow.pressure)
        throw std::invalid_argument("traction_on_sphere: flow needs velocity and pressure");
    if (!(radius > 0.0)) throw std::invalid_argument("traction_on_sphere: radius must be > 0");

    const size_t n = quad.nodes.size();
    std::vector<Vec3> tractions(n);
    std::vector<Vec3> points(n);
    parallel_for(std::ptrdiff_t(n), [&](std::ptrdiff_t k) {
        const auto& node = quad.nodes[k];
        Vec3 y = radius * node.dir;
        Mat3 G;
        if (opts.use_analytic_gradient && flow.gradient) {
            G = flow.gradient(y);
        } else {
            double h = opts.h_fd_rel * radius;
            if (flow.distance_to_feature) h = std::min(h, 0.05 * flow.distance_to_feature(y));
            for (int j = 0; j < 3; ++j) {
                Vec3 e{};
                e[j] = h;
                Vec3 dv = flow.velocity(y + e) - flow.velocity(y - e);
                G(0, j) = dv.x / (2.0 * h);
                G(1, j) = dv.y / (2.0 * h);
                G(2, j) = dv.z / (2.0 * h);
            }
        }
        Mat3 sigma = flow.fluid.mu * (G + transpose(G)) - flow.pressure(y) * Mat3::identity();
        tractions[k] = sigma * node.dir;
        points[k] = y;
    });

    SurfaceTraction out{};
    double r2 = radius * radius;
    for (size_t k = 0; k < n; ++k) {
        double w = quad.nodes[k].weight * r2;
        out.force += w * tractions[k];
        out.torque += w * cross(tractions[k], points[k]);
        out.moment += w * outer(tractions[k], points[k]);
    }
    return out;
}

namespace {
std::function<double(Vec3)> feature_distance(Vec3 p, const SwimmerParams& sp) {
    Vec3 xf = (sp.a * sp.beta) * p;
    Vec3 xi = (sp.a / sp.beta) * p;
    return [xf, xi](Vec3 x) { return std::min(norm(x - xf), norm(x - xi)); };
}
} // namespace

FlowField elementary_flow(Vec3 p, const SwimmerParams& sp) {
    // exterior-side expressions throughout: traction quadrature differentiates
    // across |x| = a and needs the smooth continuation, not the rigid interior
    FlowField f;
    f.fluid = sp.fluid;
    f.velocity = [p, sp](Vec3 x) {
        return v1_image_velocity(x, p, sp) + v2_translation_velocity(x, p, sp);
    };
    f.pressure = [p, sp](Vec3 x) { return v1_pressure(x, p, sp) + v2_pressure(x, p, sp); };
    f.distance_to_feature = feature_distance(p, sp);
    return f;
}

FlowField image_part_flow(Vec3 p, const SwimmerParams& sp) {
    FlowField f;
    f.fluid = sp.fluid;
    f.velocity = [p, sp](Vec3 x) { return v1_image_velocity(x, p, sp); };
    f.pressure = [p, sp](Vec3 x) { return v1_pressure(x, p, sp); };
    f.distance_to_feature = feature_distance(p, sp);
    return f;
}

FlowField translation_part_flow(Vec3 p, const SwimmerParams& sp) {
    FlowField f;
    f.fluid = sp.fluid;
    f.velocity = [p, sp](Vec3 x) { return v2_translation_velocity(x, p, sp); };
    f.pressure = [p, sp](Vec3 x) { return v2_pressure(x, p, sp); };
    return f;
}

} // namespace astk
