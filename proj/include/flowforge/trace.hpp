#ifndef FLOWFORGE_TRACE_HPP
#define FLOWFORGE_TRACE_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "flowforge/core.hpp"

namespace flowforge {

// ============================================================================
// Types
// ============================================================================

/// One traced point path: points[0] is the seed, and each flow field in the
/// traced sequence contributes one further point, so T fields give T+1 points.
struct Trajectory {
    std::pair<double, double> seed_point{0.0, 0.0};
    std::vector<std::pair<double, double>> points;
};

// ============================================================================
// Flow sampling
// ============================================================================

/// Bilinear sample of both flow components at (x, y). The sample location is
/// clamped to the field domain first, so queries outside the image read the
/// nearest border flow. At integer in-bounds coordinates this returns the
/// stored value exactly.
inline std::pair<float, float> sample_flow_bilinear(const FlowField& flow, double x, double y) {
    const double cx = std::clamp(x, 0.0, static_cast<double>(flow.width - 1));
    const double cy = std::clamp(y, 0.0, static_cast<double>(flow.height - 1));
    const int x0 = static_cast<int>(cx);
    const int y0 = static_cast<int>(cy);
    const int x1 = std::min(x0 + 1, flow.width - 1);
    const int y1 = std::min(y0 + 1, flow.height - 1);
    const float fx = static_cast<float>(cx - x0);
    const float fy = static_cast<float>(cy - y0);

    const auto lerp2 = [&](const std::vector<float>& c) {
        const float top = c[flow.index(x0, y0)] * (1.0f - fx) + c[flow.index(x1, y0)] * fx;
        const float bot = c[flow.index(x0, y1)] * (1.0f - fx) + c[flow.index(x1, y1)] * fx;
        return top * (1.0f - fy) + bot * fy;
    };
    return {lerp2(flow.u), lerp2(flow.v)};
}

// ============================================================================
// Tracing
// ============================================================================

/// Advects each seed through the flow sequence with one forward-Euler step
/// per field: p_{t+1} = p_t + flow_t(p_t). Positions may leave the frame;
/// only the sampling location is clamped.
inline std::vector<Trajectory> trace_points(const std::vector<FlowField>& flows,
                                            const std::vector<std::pair<double, double>>& seeds) {
    if (flows.empty())
        throw dimension_error("trace_points: need at least one flow field");
    for (std::size_t t = 0; t < flows.size(); ++t) {
        flows[t].validate();
        if (!flows[t].same_shape(flows[0]))
            throw dimension_error("trace_points: flow " + std::to_string(t) +
                                  " shape differs from flow 0");
    }
    const double max_x = static_cast<double>(flows[0].width - 1);
    const double max_y = static_cast<double>(flows[0].height - 1);
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        const auto [sx, sy] = seeds[i];
        if (!(sx >= 0.0) || !(sx <= max_x) || !(sy >= 0.0) || !(sy <= max_y))
            throw dimension_error("trace_points: seed " + std::to_string(i) + " at (" +
                                  std::to_string(sx) + ", " + std::to_string(sy) +
                                  ") is outside the " + std::to_string(flows[0].width) + "x" +
                                  std::to_string(flows[0].height) + " domain");
    }

    std::vector<Trajectory> trajectories;
    trajectories.reserve(seeds.size());
    for (const auto& seed : seeds) {
        Trajectory traj;
        traj.seed_point = seed;
        traj.points.reserve(flows.size() + 1);
        traj.points.push_back(seed);
        double px = seed.first;
        double py = seed.second;
        for (const FlowField& flow : flows) {
            const auto [du, dv] = sample_flow_bilinear(flow, px, py);
            px += du;
            py += dv;
            traj.points.emplace_back(px, py);
        }
        trajectories.push_back(std::move(traj));
    }
    return trajectories;
}

/// Row-major lattice of seed points at multiples of stride, starting at (0,0).
inline std::vector<std::pair<double, double>> grid_seeds(int width, int height, int stride) {
    if (width < 1 || height < 1)
        throw dimension_error("grid_seeds: dimensions must be positive");
    if (stride < 1)
        throw config_error("grid_seeds: stride must be >= 1");
    std::vector<std::pair<double, double>> seeds;
    for (int y = 0; y < height; y += stride)
        for (int x = 0; x < width; x += stride)
            seeds.emplace_back(static_cast<double>(x), static_cast<double>(y));
    return seeds;
}

}  // namespace flowforge

#endif
