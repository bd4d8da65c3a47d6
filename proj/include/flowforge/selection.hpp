#ifndef FLOWFORGE_SELECTION_HPP
#define FLOWFORGE_SELECTION_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "flowforge/core.hpp"
#include "flowforge/denseflow.hpp"
#include "flowforge/imaging.hpp"
#include "flowforge/parallel.hpp"

namespace flowforge {

// ============================================================================
// Configuration
// ============================================================================

struct SelectionConfig {
    int proxy_size = 32;            // square proxy resolution, pixels
    double top_k_percent = 10.0;    // tail size for the percentile proxy, (0,100]
    float threshold_px = 5.0f;      // selection threshold at reference_width
    int reference_width = 256;      // width at which threshold_px is expressed
    LkConfig lk = LkConfig::proxy_defaults();

    bool operator==(const SelectionConfig&) const = default;

    void validate() const {
        if (proxy_size < 8)
            throw config_error("SelectionConfig: proxy_size must be >= 8");
        if (!(top_k_percent > 0.0) || !(top_k_percent <= 100.0))
            throw config_error("SelectionConfig: top_k_percent must be in (0, 100]");
        if (!(threshold_px > 0.0f))
            throw config_error("SelectionConfig: threshold_px must be positive");
        if (reference_width < 1)
            throw config_error("SelectionConfig: reference_width must be positive");
        lk.validate();
    }
};

/// Per-sequence selection result. Proxy values are expressed at the
/// reference width so sequences of different resolutions are comparable.
struct MotionManifest {
    std::vector<std::pair<int, float>> pair_proxies;  // (pair index, proxy px at reference scale)
    std::vector<int> selected;                        // sorted pair indices
    std::vector<std::pair<int, int>> segments;        // [start_frame, end_frame) intervals

    bool operator==(const MotionManifest&) const = default;
};

// ============================================================================
// Percentile
// ============================================================================

/// Nearest-rank top-tail percentile: the ceil(k/100 * n)-th largest value.
/// No interpolation; exact on ties and small n.
inline float top_percentile(std::vector<float> values, double k_percent) {
    if (values.empty())
        throw dimension_error("top_percentile: values must be non-empty");
    if (!(k_percent > 0.0) || !(k_percent <= 100.0))
        throw config_error("top_percentile: k_percent must be in (0, 100]");
    const std::size_t n = values.size();
    auto rank = static_cast<std::size_t>(
        std::ceil(k_percent / 100.0 * static_cast<double>(n)));
    rank = std::clamp<std::size_t>(rank, 1, n);
    std::nth_element(values.begin(), values.begin() + (rank - 1), values.end(),
                     std::greater<float>());
    return values[rank - 1];
}

// ============================================================================
// Motion proxy
// ============================================================================

/// Cheap motion estimate for one frame pair: grayscale, downsample to
/// proxy_size^2, dense LK, then the top-k-percentile flow magnitude rescaled
/// by (native width / proxy_size) to express it in native pixels.
inline float motion_proxy(const Frame& frame_a, const Frame& frame_b,
                          const SelectionConfig& cfg) {
    cfg.validate();
    if (!frame_a.same_shape(frame_b))
        throw dimension_error("motion_proxy: frame shapes differ");

    const Frame ga = resize_bilinear(to_grayscale(frame_a), cfg.proxy_size, cfg.proxy_size);
    const Frame gb = resize_bilinear(to_grayscale(frame_b), cfg.proxy_size, cfg.proxy_size);
    const FlowField flow = lucas_kanade_dense(ga, gb, cfg.lk);
    const float tail = top_percentile(motion_magnitudes(flow), cfg.top_k_percent);
    return tail * (static_cast<float>(frame_a.width) / static_cast<float>(cfg.proxy_size));
}

// ============================================================================
// Pair selection and segment extraction
// ============================================================================

namespace detail {

/// Maximal runs of consecutive pair indices, each run a..b emitted as the
/// frame interval [a, b+2). `selected` must be sorted ascending.
inline std::vector<std::pair<int, int>> runs_to_segments(const std::vector<int>& selected) {
    std::vector<std::pair<int, int>> segments;
    std::size_t i = 0;
    while (i < selected.size()) {
        std::size_t j = i;
        while (j + 1 < selected.size() && selected[j + 1] == selected[j] + 1) ++j;
        segments.emplace_back(selected[i], selected[j] + 2);
        i = j + 1;
    }
    return segments;
}

}  // namespace detail

/// Runs the motion proxy over every consecutive pair, selects pairs whose
/// native-scale proxy exceeds threshold_px rescaled from reference_width to
/// the actual frame width, and reduces the selection to contiguous segments.
inline MotionManifest select_pairs(const std::vector<Frame>& frames,
                                   const SelectionConfig& cfg, int workers = 1) {
    cfg.validate();
    if (frames.size() < 2)
        throw dimension_error("select_pairs: need at least 2 frames, got " +
                              std::to_string(frames.size()));
    for (std::size_t i = 0; i < frames.size(); ++i) {
        frames[i].validate();
        if (!frames[i].same_shape(frames[0]))
            throw dimension_error("select_pairs: frame " + std::to_string(i) +
                                  " shape differs from frame 0");
    }

    const int width = frames[0].width;
    const float native_threshold =
        cfg.threshold_px * (static_cast<float>(width) / static_cast<float>(cfg.reference_width));
    const float to_reference =
        static_cast<float>(cfg.reference_width) / static_cast<float>(width);

    const std::size_t n_pairs = frames.size() - 1;
    std::vector<float> native(n_pairs);
    parallel_for(n_pairs, workers,
                 [&](std::size_t t) { native[t] = motion_proxy(frames[t], frames[t + 1], cfg); });

    MotionManifest manifest;
    manifest.pair_proxies.reserve(n_pairs);
    for (std::size_t t = 0; t < n_pairs; ++t) {
        manifest.pair_proxies.emplace_back(static_cast<int>(t), native[t] * to_reference);
        if (native[t] > native_threshold) manifest.selected.push_back(static_cast<int>(t));
    }
    manifest.segments = detail::runs_to_segments(manifest.selected);
    return manifest;
}

}  // namespace flowforge

#endif
