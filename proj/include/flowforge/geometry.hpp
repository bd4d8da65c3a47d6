#ifndef FLOWFORGE_GEOMETRY_HPP
#define FLOWFORGE_GEOMETRY_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "flowforge/core.hpp"

namespace flowforge {

// ============================================================================
// Types
// ============================================================================

/// 3x3 projective transform, row-major, normalized so m[8] == 1.
struct Homography {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    double at(int row, int col) const { return m[row * 3 + col]; }
    double& at(int row, int col) { return m[row * 3 + col]; }

    static Homography identity() { return Homography(); }

    static Homography translation(double tx, double ty) {
        Homography h;
        h.m = {1, 0, tx, 0, 1, ty, 0, 0, 1};
        return h;
    }

    double determinant() const {
        return m[0] * (m[4] * m[8] - m[5] * m[7]) -
               m[1] * (m[3] * m[8] - m[5] * m[6]) +
               m[2] * (m[3] * m[7] - m[4] * m[6]);
    }

    void validate() const {
        for (double e : m)
            if (!std::isfinite(e))
                throw numeric_error("Homography: non-finite entry");
        if (m[8] != 1.0)
            throw numeric_error("Homography: bottom-right entry is not 1");
        if (std::abs(determinant()) <= 1e-12)
            throw degeneracy_error("Homography: determinant below 1e-12");
    }
};

/// Paired point lists; p1[i] corresponds to p0[i].
struct Correspondences {
    std::vector<std::pair<double, double>> p0;
    std::vector<std::pair<double, double>> p1;

    std::size_t size() const { return p0.size(); }

    void validate() const {
        if (p0.size() != p1.size())
            throw dimension_error("Correspondences: point lists differ in length");
    }
};

struct RansacConfig {
    double reproj_threshold = 5.0;   // forward reprojection gate, pixels
    int iterations = 2000;
    std::uint64_t seed = 0;
    int min_inliers = 8;
    double min_inlier_fraction = 0.3;

    bool operator==(const RansacConfig&) const = default;

    void validate() const {
        if (!(reproj_threshold > 0.0))
            throw config_error("RansacConfig: reproj_threshold must be positive");
        if (iterations < 1)
            throw config_error("RansacConfig: iterations must be >= 1");
        if (min_inliers < 1)
            throw config_error("RansacConfig: min_inliers must be positive");
        if (!(min_inlier_fraction > 0.0 && min_inlier_fraction <= 1.0))
            throw config_error("RansacConfig: min_inlier_fraction must be in (0,1]");
    }
};

struct RansacResult {
    Homography homography;
    std::vector<char> inlier_mask;   // 1 per correspondence kept by the model
    int inlier_count = 0;
};

// ============================================================================
// Point projection
// ============================================================================

/// Homogeneous multiply followed by perspective divide.
inline std::pair<double, double> project(const Homography& h, double x, double y) {
    const double w = h.m[6] * x + h.m[7] * y + h.m[8];
    if (std::abs(w) < 1e-12)
        throw numeric_error("project: point (" + std::to_string(x) + "," + std::to_string(y) +
                            ") maps to infinity");
    const double px = (h.m[0] * x + h.m[1] * y + h.m[2]) / w;
    const double py = (h.m[3] * x + h.m[4] * y + h.m[5]) / w;
    return {px, py};
}

// ============================================================================
// Direct linear transform
// ============================================================================

namespace detail {

struct PointNormalization {
    double cx = 0.0, cy = 0.0;  // centroid
    double scale = 1.0;         // isotropic scale to mean distance sqrt(2)
};

inline PointNormalization hartley_normalization(const std::vector<std::pair<double, double>>& pts) {
    PointNormalization n;
    const double count = static_cast<double>(pts.size());
    for (const auto& p : pts) {
        n.cx += p.first;
        n.cy += p.second;
    }
    n.cx /= count;
    n.cy /= count;
    double mean_dist = 0.0;
    for (const auto& p : pts)
        mean_dist += std::hypot(p.first - n.cx, p.second - n.cy);
    mean_dist /= count;
    if (mean_dist < 1e-12)
        throw degeneracy_error("dlt_homography: points are coincident");
    n.scale = std::sqrt(2.0) / mean_dist;
    return n;
}

inline double triangle_area2(const std::pair<double, double>& a,
                             const std::pair<double, double>& b,
                             const std::pair<double, double>& c) {
    return 0.5 * std::abs((b.first - a.first) * (c.second - a.second) -
                          (c.first - a.first) * (b.second - a.second));
}

/// True when every triangle among the 4 source points has area >= 1e-6 px^2.
inline bool minimal_sample_nondegenerate(const std::vector<std::pair<double, double>>& pts) {
    static constexpr int tri[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    for (const auto& t : tri)
        if (triangle_area2(pts[t[0]], pts[t[1]], pts[t[2]]) < 1e-6) return false;
    return true;
}

}  // namespace detail

/// Least-squares homography from >= 4 correspondences.
///
/// Both point sets are Hartley-normalized (centroid at the origin, mean
/// distance sqrt(2)); the solution is the eigenvector of the smallest
/// eigenvalue of the 9x9 normal matrix of the stacked design rows.
inline Homography dlt_homography(const Correspondences& c) {
    c.validate();
    const std::size_t n = c.size();
    if (n < 4)
        throw degeneracy_error("dlt_homography: need at least 4 correspondences, got " +
                               std::to_string(n));
    if (n == 4 && !detail::minimal_sample_nondegenerate(c.p0))
        throw degeneracy_error("dlt_homography: source points are (near-)collinear");

    const auto n0 = detail::hartley_normalization(c.p0);
    const auto n1 = detail::hartley_normalization(c.p1);

    Eigen::Matrix<double, 9, 9> ata = Eigen::Matrix<double, 9, 9>::Zero();
    Eigen::Matrix<double, 1, 9> row1, row2;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = (c.p0[i].first - n0.cx) * n0.scale;
        const double y = (c.p0[i].second - n0.cy) * n0.scale;
        const double tx = (c.p1[i].first - n1.cx) * n1.scale;
        const double ty = (c.p1[i].second - n1.cy) * n1.scale;
        row1 << 0, 0, 0, -x, -y, -1, ty * x, ty * y, ty;
        row2 << x, y, 1, 0, 0, 0, -tx * x, -tx * y, -tx;
        ata += row1.transpose() * row1;
        ata += row2.transpose() * row2;
    }

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 9, 9>> solver(ata);
    if (solver.info() != Eigen::Success)
        throw numeric_error("dlt_homography: eigen decomposition failed");
    const Eigen::Matrix<double, 9, 1> h = solver.eigenvectors().col(0);

    Eigen::Matrix3d hn;
    hn << h(0), h(1), h(2), h(3), h(4), h(5), h(6), h(7), h(8);

    Eigen::Matrix3d t0, t1inv;
    t0 << n0.scale, 0, -n0.scale * n0.cx, 0, n0.scale, -n0.scale * n0.cy, 0, 0, 1;
    t1inv << 1.0 / n1.scale, 0, n1.cx, 0, 1.0 / n1.scale, n1.cy, 0, 0, 1;
    const Eigen::Matrix3d full = t1inv * hn * t0;

    double max_abs = 0.0;
    for (int i = 0; i < 9; ++i) max_abs = std::max(max_abs, std::abs(full(i / 3, i % 3)));
    if (std::abs(full(2, 2)) < 1e-12 * max_abs)
        throw numeric_error("dlt_homography: homography cannot be normalized (h33 ~ 0)");

    Homography out;
    for (int r = 0; r < 3; ++r)
        for (int col = 0; col < 3; ++col)
            out.m[r * 3 + col] = full(r, col) / full(2, 2);
    out.validate();
    return out;
}

// ============================================================================
// RANSAC
// ============================================================================

namespace detail {

/// Index draw documented as: mt19937_64 output modulo n.
inline std::size_t draw_index(std::mt19937_64& gen, std::size_t n) {
    return static_cast<std::size_t>(gen() % n);
}

inline void draw_distinct4(std::mt19937_64& gen, std::size_t n, std::size_t idx[4]) {
    for (int k = 0; k < 4; ++k) {
        for (;;) {
            const std::size_t cand = draw_index(gen, n);
            bool dup = false;
            for (int j = 0; j < k; ++j)
                if (idx[j] == cand) dup = true;
            if (!dup) {
                idx[k] = cand;
                break;
            }
        }
    }
}

inline int count_inliers(const Homography& h, const Correspondences& c,
                         double threshold, std::vector<char>& mask) {
    const std::size_t n = c.size();
    mask.assign(n, 0);
    int count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = c.p0[i].first;
        const double y = c.p0[i].second;
        const double w = h.m[6] * x + h.m[7] * y + h.m[8];
        if (std::abs(w) < 1e-12) continue;
        const double px = (h.m[0] * x + h.m[1] * y + h.m[2]) / w;
        const double py = (h.m[3] * x + h.m[4] * y + h.m[5]) / w;
        const double err = std::hypot(px - c.p1[i].first, py - c.p1[i].second);
        if (err < threshold) {
            mask[i] = 1;
            ++count;
        }
    }
    return count;
}

}  // namespace detail

/// Fixed-iteration RANSAC homography fit.
///
/// Every iteration samples 4 distinct indices from a mt19937_64 stream seeded
/// with cfg.seed, skips degenerate samples, fits a minimal DLT, and scores
/// forward reprojection inliers. The best model (ties resolved to the first
/// one found) is refit on its full inlier set. Returns std::nullopt when no
/// model clears cfg.min_inliers and cfg.min_inlier_fraction; that is a normal
/// outcome, not a fault.
inline std::optional<RansacResult> ransac_homography(const Correspondences& c,
                                                     const RansacConfig& cfg = RansacConfig()) {
    c.validate();
    cfg.validate();
    const std::size_t n = c.size();
    if (n < 4)
        throw dimension_error("ransac_homography: need at least 4 correspondences, got " +
                              std::to_string(n));

    std::mt19937_64 gen(cfg.seed);
    int best_count = 0;
    std::vector<char> best_mask;
    std::vector<char> mask;
    Correspondences sample;
    sample.p0.resize(4);
    sample.p1.resize(4);

    for (int it = 0; it < cfg.iterations; ++it) {
        std::size_t idx[4];
        detail::draw_distinct4(gen, n, idx);
        for (int k = 0; k < 4; ++k) {
            sample.p0[k] = c.p0[idx[k]];
            sample.p1[k] = c.p1[idx[k]];
        }
        if (!detail::minimal_sample_nondegenerate(sample.p0)) continue;

        Homography model;
        try {
            model = dlt_homography(sample);
        } catch (const error&) {
            continue;
        }

        const int count = detail::count_inliers(model, c, cfg.reproj_threshold, mask);
        if (count > best_count) {
            best_count = count;
            best_mask = mask;
        }
    }

    if (best_count < cfg.min_inliers) return std::nullopt;
    if (static_cast<double>(best_count) < cfg.min_inlier_fraction * static_cast<double>(n))
        return std::nullopt;

    Correspondences inliers;
    inliers.p0.reserve(best_count);
    inliers.p1.reserve(best_count);
    for (std::size_t i = 0; i < n; ++i) {
        if (best_mask[i]) {
            inliers.p0.push_back(c.p0[i]);
            inliers.p1.push_back(c.p1[i]);
        }
    }

    RansacResult result;
    try {
        result.homography = dlt_homography(inliers);
        result.homography.validate();
    } catch (const error&) {
        return std::nullopt;
    }
    result.inlier_mask = std::move(best_mask);
    result.inlier_count = best_count;
    return result;
}

// ============================================================================
// Dense camera flow
// ============================================================================

/// Displacement field induced by a homography over the integer pixel grid:
/// (u,v) at (x,y) is project(h,(x,y)) - (x,y).
inline FlowField camera_flow(const Homography& h, int width, int height) {
    h.validate();
    if (width < 1 || height < 1)
        throw dimension_error("camera_flow: dimensions must be positive");
    FlowField flow(width, height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const double w = h.m[6] * x + h.m[7] * y + h.m[8];
            if (std::abs(w) < 1e-12)
                throw numeric_error("camera_flow: grid point (" + std::to_string(x) + "," +
                                    std::to_string(y) + ") maps to infinity");
            const double px = (h.m[0] * x + h.m[1] * y + h.m[2]) / w;
            const double py = (h.m[3] * x + h.m[4] * y + h.m[5]) / w;
            flow.at_u(x, y) = static_cast<float>(px - x);
            flow.at_v(x, y) = static_cast<float>(py - y);
        }
    }
    return flow;
}

}  // namespace flowforge

#endif
