#ifndef FLOWFORGE_COMPENSATION_HPP
#define FLOWFORGE_COMPENSATION_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flowforge/core.hpp"
#include "flowforge/geometry.hpp"
#include "flowforge/parallel.hpp"

namespace flowforge {

// ============================================================================
// Configuration
// ============================================================================

struct CompensationConfig {
    RansacConfig ransac;             // reproj_threshold default 5.0
    int stride = 8;                  // grid sampling stride, pixels
    float noise_threshold = 0.5f;    // post-compensation magnitude gate, pixels
    bool thresholding_enabled = true;

    bool operator==(const CompensationConfig&) const = default;

    void validate(int flow_width, int flow_height) const {
        ransac.validate();
        if (stride < 1)
            throw config_error("CompensationConfig: stride must be >= 1");
        if (stride >= std::min(flow_width, flow_height))
            throw config_error("CompensationConfig: stride " + std::to_string(stride) +
                               " must be smaller than both flow dimensions (" +
                               std::to_string(flow_width) + "x" + std::to_string(flow_height) + ")");
        if (!(noise_threshold >= 0.0f))
            throw config_error("CompensationConfig: noise_threshold must be non-negative");
    }
};

/// Outcome of compensating one flow field. When valid is false the output
/// field is a verbatim copy of the input.
struct CompensationReport {
    bool valid = false;
    std::optional<Homography> homography;
    int inlier_count = 0;
};

// ============================================================================
// Correspondence sampling
// ============================================================================

/// Grid points at multiples of stride paired with their flow-displaced
/// positions: p1[i] = p0[i] + (u,v) at p0[i]. Row-major order.
inline Correspondences sample_correspondences(const FlowField& flow, int stride) {
    flow.validate();
    if (stride < 1)
        throw config_error("sample_correspondences: stride must be >= 1");
    Correspondences c;
    for (int y = 0; y < flow.height; y += stride) {
        for (int x = 0; x < flow.width; x += stride) {
            c.p0.emplace_back(static_cast<double>(x), static_cast<double>(y));
            c.p1.emplace_back(x + static_cast<double>(flow.at_u(x, y)),
                              y + static_cast<double>(flow.at_v(x, y)));
        }
    }
    if (c.size() < 4)
        throw dimension_error("sample_correspondences: stride " + std::to_string(stride) +
                              " yields only " + std::to_string(c.size()) +
                              " samples on a " + std::to_string(flow.width) + "x" +
                              std::to_string(flow.height) + " field; at least 4 required");
    return c;
}

// ============================================================================
// Camera-motion compensation
// ============================================================================

/// Removes the camera component from a raw flow field.
///
/// A homography is estimated from stride-sampled correspondences; when the
/// estimate is valid the induced camera flow is subtracted and, if enabled,
/// every residual vector with magnitude below noise_threshold is set to
/// exactly (0,0). When no valid model exists the input is returned verbatim
/// and the report says so.
inline std::pair<FlowField, CompensationReport> compensate_flow(const FlowField& flow,
                                                                const CompensationConfig& cfg) {
    flow.validate();
    cfg.validate(flow.width, flow.height);

    const Correspondences c = sample_correspondences(flow, cfg.stride);
    const std::optional<RansacResult> model = ransac_homography(c, cfg.ransac);

    CompensationReport report;
    if (!model) {
        return {flow, report};
    }

    report.valid = true;
    report.homography = model->homography;
    report.inlier_count = model->inlier_count;

    const FlowField cam = camera_flow(model->homography, flow.width, flow.height);
    FlowField out(flow.width, flow.height);
    out.source_frame = flow.source_frame;
    out.target_frame = flow.target_frame;
    for (std::size_t i = 0; i < flow.size(); ++i) {
        float ou = flow.u[i] - cam.u[i];
        float ov = flow.v[i] - cam.v[i];
        if (cfg.thresholding_enabled && std::hypot(ou, ov) < cfg.noise_threshold) {
            ou = 0.0f;
            ov = 0.0f;
        }
        out.u[i] = ou;
        out.v[i] = ov;
    }
    return {out, report};
}

// ============================================================================
// Batch compensation
// ============================================================================

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace detail

/// Per-item RANSAC seed: splitmix64 applied to base_seed + item_index.
inline std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t item_index) {
    return detail::splitmix64(base_seed + item_index);
}

/// Elementwise compensate_flow over a batch. Item i runs with the RANSAC
/// seed derive_seed(cfg.ransac.seed, i), so results are independent of the
/// worker count and always emitted in input order.
inline std::vector<std::pair<FlowField, CompensationReport>> compensate_batch(
    const std::vector<FlowField>& flows, const CompensationConfig& cfg, int workers = 1) {
    if (flows.empty()) return {};
    for (std::size_t i = 1; i < flows.size(); ++i)
        if (!flows[i].same_shape(flows[0]))
            throw dimension_error("compensate_batch: item " + std::to_string(i) +
                                  " has shape " + std::to_string(flows[i].width) + "x" +
                                  std::to_string(flows[i].height) + ", expected " +
                                  std::to_string(flows[0].width) + "x" +
                                  std::to_string(flows[0].height));

    std::vector<std::pair<FlowField, CompensationReport>> results(flows.size());
    parallel_for(flows.size(), workers, [&](std::size_t i) {
        CompensationConfig item_cfg = cfg;
        item_cfg.ransac.seed = derive_seed(cfg.ransac.seed, i);
        try {
            results[i] = compensate_flow(flows[i], item_cfg);
        } catch (const error& e) {
            throw error("compensate_batch: item " + std::to_string(i) + ": " + e.what());
        }
    });
    return results;
}

}  // namespace flowforge

#endif
