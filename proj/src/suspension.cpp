#include "activestokes/suspension.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "activestokes/parallel.hpp"

namespace astk {

double SuspensionConfig::min_center_gap() const {
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < centers.size(); ++i)
        for (size_t j = i + 1; j < centers.size(); ++j)
            best = std::min(best, norm(centers[i] - centers[j]));
    return centers.size() < 2 ? std::numeric_limits<double>::infinity() : best;
}

namespace {

// Cell-grid accelerated dart throwing (random sequential addition).
std::vector<Vec3> dart_throw(const OrientationDensity& density, long N, double min_dist,
                             Rng& rng, long max_attempts) {
    std::vector<Vec3> pts;
    pts.reserve(N);
    double cell = std::max(min_dist, 1e-6);
    int m = std::max(1, int(1.0 / cell));
    std::vector<std::vector<int>> grid(size_t(m) * m * m);
    auto cell_of = [&](Vec3 x) {
        int ix = std::min(m - 1, std::max(0, int(x.x * m)));
        int iy = std::min(m - 1, std::max(0, int(x.y * m)));
        int iz = std::min(m - 1, std::max(0, int(x.z * m)));
        return (size_t(ix) * m + iy) * m + iz;
    };
    auto ok = [&](Vec3 x) {
        int ix = int(x.x * m), iy = int(x.y * m), iz = int(x.z * m);
        for (int dx = -1; dx <= 1; ++dx)
            for (int dy = -1; dy <= 1; ++dy)
                for (int dz = -1; dz <= 1; ++dz) {
                    int jx = ix + dx, jy = iy + dy, jz = iz + dz;
                    if (jx < 0 || jy < 0 || jz < 0 || jx >= m || jy >= m || jz >= m) continue;
                    for (int k : grid[(size_t(jx) * m + jy) * m + jz])
                        if (norm(pts[k] - x) < min_dist) return false;
                }
        return true;
    };
    for (long attempt = 0; attempt < max_attempts && long(pts.size()) < N; ++attempt) {
        Vec3 x = density.sample_position(rng);
        if (ok(x)) {
            grid[cell_of(x)].push_back(int(pts.size()));
            pts.push_back(x);
        }
    }
    if (long(pts.size()) < N)
        throw PackingError("sample_configuration: dart throwing failed after max attempts "
                           "(c too large for rho, N)");
    return pts;
}

// Stratified jittered-lattice positions in the unit cube: m^3 cells, a random
// subset of N cells, per-axis jitter bounded so that min distance >= min_dist.
std::vector<Vec3> jittered_lattice(long N, double min_dist, Rng& rng) {
    int m = int(std::ceil(std::cbrt(double(N)) - 1e-9));
    double h = 1.0 / m;
    double slack = h - min_dist;
    if (slack < -1e-12 * h)
        throw PackingError("sample_configuration: required min distance exceeds the lattice "
                           "pitch; packing infeasible");
    double jitter = 0.5 * std::max(0.0, slack) * 0.999;
    long cells = long(m) * m * m;
    std::vector<long> idx(cells);
    for (long i = 0; i < cells; ++i) idx[i] = i;
    // seeded Fisher-Yates; only needed when the lattice is not full
    if (cells != N) {
        for (long i = cells - 1; i > 0; --i) {
            long j = long(rng.raw() % std::uint64_t(i + 1));
            std::swap(idx[i], idx[j]);
        }
    }
    std::vector<Vec3> pts(N);
    for (long k = 0; k < N; ++k) {
        long c = idx[k];
        long iz = c % m, iy = (c / m) % m, ix = c / (long(m) * m);
        Vec3 base{(ix + 0.5) * h, (iy + 0.5) * h, (iz + 0.5) * h};
        Vec3 dx{rng.uniform(-jitter, jitter), rng.uniform(-jitter, jitter),
                rng.uniform(-jitter, jitter)};
        pts[k] = base + dx;
    }
    return pts;
}

} // namespace

SuspensionConfig sample_configuration(const OrientationDensity& density, long N, double lambda,
                                      double sep_c, double beta, std::uint64_t seed,
                                      SampleMode mode) {
    if (N < 1) throw std::invalid_argument("sample_configuration: N >= 1 required");
    if (!(lambda > 0.0)) throw std::invalid_argument("sample_configuration: lambda > 0 required");
    if (!(beta > 1.0)) throw std::invalid_argument("sample_configuration: beta > 1 required");

    SuspensionConfig cfg;
    cfg.N = N;
    cfg.lambda = lambda;
    cfg.a = SuspensionConfig::radius_for(lambda, N);
    cfg.beta = beta;
    cfg.sep_c = sep_c;
    cfg.seed = seed;
    cfg.domain = density.domain();

    if (mode == SampleMode::strict && beta >= cfg.beta_admissible_bound())
        throw AdmissibilityError("sample_configuration: beta outside the admissible range "
                                 "1 < beta < (c/2)(4pi/3)^{1/3} lambda^{-1/3}");

    Rng pos_rng = Rng::substream(seed, 0);
    Rng ori_rng = Rng::substream(seed, 1);

    if (mode == SampleMode::relaxed || N == 1) {
        cfg.centers.resize(N);
        for (long i = 0; i < N; ++i) cfg.centers[i] = density.sample_position(pos_rng);
    } else {
        double min_dist = sep_c * std::pow(double(N), -1.0 / 3.0);
        bool uniform_rho = density.family() != OrientationDensity::Family::tabulated &&
                           density.domain().kind == Domain::Kind::unit_cube;
        cfg.centers = uniform_rho ? jittered_lattice(N, min_dist, pos_rng)
                                  : dart_throw(density, N, min_dist, pos_rng, 200 * N);
    }
    cfg.orientations.resize(N);
    for (long i = 0; i < N; ++i)
        cfg.orientations[i] = density.sample_orientation(cfg.centers[i], ori_rng);
    return cfg;
}

SeparationReport separation_report(const SuspensionConfig& cfg, double eta) {
    SeparationReport rep;
    rep.eta = eta;
    const long N = cfg.N;
    const double n13 = std::pow(double(N), 1.0 / 3.0);
    const double thresh = eta / n13;
    double min_gap = std::numeric_limits<double>::infinity();
    std::vector<char> bad(N, 0);
    for (long i = 0; i < N; ++i) {
        for (long j = i + 1; j < N; ++j) {
            double d = norm(cfg.centers[i] - cfg.centers[j]);
            min_gap = std::min(min_gap, d);
            if (d < thresh) bad[i] = bad[j] = 1;
        }
    }
    rep.min_gap = N > 1 ? min_gap : std::numeric_limits<double>::infinity();
    for (long i = 0; i < N; ++i) (bad[i] ? rep.bad_indices : rep.good_indices).push_back(i);
    rep.bad_fraction = double(rep.bad_indices.size()) / double(N);
    rep.H2_ok = rep.min_gap >= cfg.sep_c / n13 * (1.0 - 1e-12);
    rep.M_margin = rep.min_gap / cfg.a - 2.0 * cfg.beta;
    rep.H2prime_ok = rep.M_margin > 0.0;

    // Lemma 6.3 diagnostic on the rescaled points y_i = N^{1/3} x_i
    double sup = 0.0;
    for (long i : rep.good_indices) {
        double s = 0.0;
        for (long j : rep.good_indices) {
            if (j == i) continue;
            double d = n13 * norm(cfg.centers[i] - cfg.centers[j]);
            double t = eta + d;
            s += 1.0 / (t * t * t * t);
        }
        sup = std::max(sup, s);
    }
    rep.good_pair_sum_sup = sup;
    rep.lemma63_constant = sup * eta * eta * eta * eta;
    return rep;
}

std::vector<Vec3> u_app_evaluate(const SuspensionConfig& cfg, double alpha, FluidParams fluid,
                                 std::span<const Vec3> points) {
    SwimmerParams sp(alpha, cfg.beta, cfg.a, fluid);
    std::vector<Vec3> out(points.size());
    std::vector<std::string> errors(points.size());
    parallel_for(std::ptrdiff_t(points.size()), [&](std::ptrdiff_t k) {
        Vec3 acc{};
        try {
            for (long j = 0; j < cfg.N; ++j)
                acc += elementary_velocity(points[k] - cfg.centers[j], cfg.orientations[j], sp);
            out[k] = acc;
        } catch (const SingularPointError&) {
            // identify the offending particle for the error message
            for (long j = 0; j < cfg.N; ++j) {
                Vec3 z = points[k] - cfg.centers[j];
                double df = norm(z - (cfg.a * cfg.beta) * cfg.orientations[j]);
                double di = norm(z - (cfg.a / cfg.beta) * cfg.orientations[j]);
                if (std::min(df, di) <= kSingularEps * cfg.a * 10.0) {
                    errors[k] = "u_app_evaluate: evaluation point " + std::to_string(k) +
                                " hits a singular source of particle " + std::to_string(j);
                    return;
                }
            }
            errors[k] = "u_app_evaluate: singular evaluation at point " + std::to_string(k);
        }
    });
    for (const auto& e : errors)
        if (!e.empty()) throw SingularPointError(e);
    return out;
}

double boundary_error_functional(const SuspensionConfig& cfg, double alpha, FluidParams fluid,
                                 const BallQuadSpec& spec) {
    if (cfg.N <= 1) return 0.0;
    SwimmerParams sp(alpha, cfg.beta, cfg.a, fluid);
    const BallQuadrature base = BallQuadrature::product_gauss(spec.n_r, spec.n_theta, spec.n_phi);
    const BallQuadrature fine =
        BallQuadrature::product_gauss_octants(spec.n_r, spec.n_theta, spec.n_phi);
    const double a3 = cfg.a * cfg.a * cfg.a;
    const double cutoff2 = spec.neighbor_cutoff > 0
                               ? spec.neighbor_cutoff * spec.neighbor_cutoff
                               : std::numeric_limits<double>::infinity();
    const double refine_dist = spec.refine_distance_factor * cfg.a;

    std::vector<double> contrib(cfg.N, 0.0);
    parallel_for(cfg.N, [&](std::ptrdiff_t i) {
        // neighbor list under the cutoff, and the near-pair refinement trigger
        std::vector<long> nbrs;
        bool near_pair = false;
        for (long j = 0; j < cfg.N; ++j) {
            if (j == i) continue;
            double d2 = norm2(cfg.centers[i] - cfg.centers[j]);
            if (d2 <= cutoff2) nbrs.push_back(j);
            if (d2 < refine_dist * refine_dist) near_pair = true;
        }
        const BallQuadrature& q = near_pair ? fine : base;
        double acc = 0.0;
        for (const auto& node : q.nodes) {
            Vec3 x = cfg.centers[i] + cfg.a * node.offset;
            Mat3 G{};
            for (long j : nbrs)
                G += elementary_velocity_gradient(x - cfg.centers[j], cfg.orientations[j], sp);
            Mat3 D = sym(G);
            acc += node.weight * ddot(D, D);
        }
        contrib[i] = acc * a3; // ball quadrature is on the unit ball
    });
    double total = 0.0;
    for (double c : contrib) total += c;
    return total;
}

void save_config(const SuspensionConfig& cfg, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("save_config: cannot open " + path);
    std::fprintf(f, "active-stokes-config v1\n");
    std::fprintf(f, "N = %ld\n", cfg.N);
    std::fprintf(f, "lambda = %.17g\n", cfg.lambda);
    std::fprintf(f, "a = %.17g\n", cfg.a);
    std::fprintf(f, "beta = %.17g\n", cfg.beta);
    std::fprintf(f, "sep_c = %.17g\n", cfg.sep_c);
    std::fprintf(f, "seed = %" PRIu64 "\n", cfg.seed);
    std::fprintf(f, "domain = %s\n", cfg.domain.kind == Domain::Kind::unit_cube ? "unit_cube" : "ball");
    std::fprintf(f, "centers:\n");
    for (const Vec3& c : cfg.centers) std::fprintf(f, "%.17g %.17g %.17g\n", c.x, c.y, c.z);
    std::fprintf(f, "orientations:\n");
    for (const Vec3& p : cfg.orientations) std::fprintf(f, "%.17g %.17g %.17g\n", p.x, p.y, p.z);
    std::fclose(f);
}

SuspensionConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_config: cannot open " + path);
    std::string line;
    std::getline(in, line);
    if (line != "active-stokes-config v1")
        throw std::runtime_error("load_config: bad header in " + path);
    SuspensionConfig cfg;
    auto need = [&](const std::string& key) {
        std::getline(in, line);
        auto pos = line.find('=');
        if (pos == std::string::npos || line.substr(0, line.find(' ')) != key)
            throw std::runtime_error("load_config: expected key " + key);
        return line.substr(pos + 1);
    };
    cfg.N = std::stol(need("N"));
    cfg.lambda = std::stod(need("lambda"));
    cfg.a = std::stod(need("a"));
    cfg.beta = std::stod(need("beta"));
    cfg.sep_c = std::stod(need("sep_c"));
    cfg.seed = std::stoull(need("seed"));
    std::string dom = need("domain");
    cfg.domain.kind = dom.find("ball") != std::string::npos ? Domain::Kind::ball
                                                            : Domain::Kind::unit_cube;
    std::getline(in, line); // "centers:"
    cfg.centers.resize(cfg.N);
    for (long i = 0; i < cfg.N; ++i) {
        std::getline(in, line);
        std::istringstream ss(line);
        ss >> cfg.centers[i].x >> cfg.centers[i].y >> cfg.centers[i].z;
    }
    std::getline(in, line); // "orientations:"
    cfg.orientations.resize(cfg.N);
    for (long i = 0; i < cfg.N; ++i) {
        std::getline(in, line);
        std::istringstream ss(line);
        ss >> cfg.orientations[i].x >> cfg.orientations[i].y >> cfg.orientations[i].z;
    }
    return cfg;
}

} // namespace astk
