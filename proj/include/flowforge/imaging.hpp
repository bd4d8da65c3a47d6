#ifndef FLOWFORGE_IMAGING_HPP
#define FLOWFORGE_IMAGING_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "flowforge/core.hpp"

namespace flowforge {

// ============================================================================
// Grayscale conversion
// ============================================================================

/// Rec.601 luminance. Grayscale input is returned unchanged.
inline Frame to_grayscale(const Frame& frame) {
    if (frame.channels == 1) return frame;
    Frame out(frame.width, frame.height, 1);
    const std::size_t n = frame.pixel_count();
    for (std::size_t i = 0; i < n; ++i) {
        const float* px = &frame.pixels[i * 3];
        out.pixels[i] = 0.299f * px[0] + 0.587f * px[1] + 0.114f * px[2];
    }
    return out;
}

// ============================================================================
// Bilinear resize
// ============================================================================

namespace detail {

/// Maps a destination index to a source coordinate with the pixel-center
/// convention: src = (dst + 0.5) * scale - 0.5, clamped to [0, src_size-1].
inline void resize_axis_coords(int dst_size, int src_size,
                               std::vector<int>& i0, std::vector<int>& i1,
                               std::vector<float>& frac) {
    i0.resize(dst_size);
    i1.resize(dst_size);
    frac.resize(dst_size);
    const double scale = static_cast<double>(src_size) / dst_size;
    for (int d = 0; d < dst_size; ++d) {
        double s = (d + 0.5) * scale - 0.5;
        if (s < 0.0) s = 0.0;
        if (s > src_size - 1) s = src_size - 1;
        int lo = static_cast<int>(s);
        if (lo > src_size - 2) lo = std::max(0, src_size - 2);
        i0[d] = lo;
        i1[d] = std::min(lo + 1, src_size - 1);
        frac[d] = static_cast<float>(s - lo);
    }
}

}  // namespace detail

/// Center-aligned bilinear resize. Output values stay within the input range.
inline Frame resize_bilinear(const Frame& frame, int new_width, int new_height) {
    if (new_width < 1 || new_height < 1)
        throw dimension_error("resize_bilinear: target dimensions must be positive");
    if (new_width == frame.width && new_height == frame.height) return frame;

    std::vector<int> x0, x1, y0, y1;
    std::vector<float> fx, fy;
    detail::resize_axis_coords(new_width, frame.width, x0, x1, fx);
    detail::resize_axis_coords(new_height, frame.height, y0, y1, fy);

    Frame out(new_width, new_height, frame.channels);
    const int c = frame.channels;
    for (int y = 0; y < new_height; ++y) {
        const float wy = fy[y];
        for (int x = 0; x < new_width; ++x) {
            const float wx = fx[x];
            for (int ch = 0; ch < c; ++ch) {
                const float v00 = frame.at(x0[x], y0[y], ch);
                const float v10 = frame.at(x1[x], y0[y], ch);
                const float v01 = frame.at(x0[x], y1[y], ch);
                const float v11 = frame.at(x1[x], y1[y], ch);
                const float top = v00 + (v10 - v00) * wx;
                const float bot = v01 + (v11 - v01) * wx;
                out.at(x, y, ch) = top + (bot - top) * wy;
            }
        }
    }
    return out;
}

// ============================================================================
// Gradients
// ============================================================================

/// Spatial and temporal derivatives of a single-channel frame pair.
/// Ix, Iy are central differences of frame_a with replicated borders;
/// It is frame_b - frame_a.
struct Gradients {
    int width = 0;
    int height = 0;
    std::vector<float> ix;
    std::vector<float> iy;
    std::vector<float> it;
};

inline Gradients gradients(const Frame& frame_a, const Frame& frame_b) {
    if (!frame_a.same_shape(frame_b))
        throw dimension_error("gradients: frame pair is incompatible (" +
                              std::to_string(frame_a.width) + "x" + std::to_string(frame_a.height) +
                              "x" + std::to_string(frame_a.channels) + " vs " +
                              std::to_string(frame_b.width) + "x" + std::to_string(frame_b.height) +
                              "x" + std::to_string(frame_b.channels) + ")");
    if (frame_a.channels != 1)
        throw dimension_error("gradients: frames must be single-channel");

    const int w = frame_a.width;
    const int h = frame_a.height;
    Gradients g;
    g.width = w;
    g.height = h;
    g.ix.resize(frame_a.pixel_count());
    g.iy.resize(frame_a.pixel_count());
    g.it.resize(frame_a.pixel_count());

    for (int y = 0; y < h; ++y) {
        const int ym = std::max(0, y - 1);
        const int yp = std::min(h - 1, y + 1);
        for (int x = 0; x < w; ++x) {
            const int xm = std::max(0, x - 1);
            const int xp = std::min(w - 1, x + 1);
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            g.ix[i] = 0.5f * (frame_a.at(xp, y) - frame_a.at(xm, y));
            g.iy[i] = 0.5f * (frame_a.at(x, yp) - frame_a.at(x, ym));
            g.it[i] = frame_b.at(x, y) - frame_a.at(x, y);
        }
    }
    return g;
}

// ============================================================================
// Bilinear point sampling
// ============================================================================

/// Samples a single-channel frame at a fractional position. The sample
/// location is clamped to the valid domain.
inline float sample_bilinear(const Frame& frame, float x, float y, int channel = 0) {
    float sx = std::clamp(x, 0.0f, static_cast<float>(frame.width - 1));
    float sy = std::clamp(y, 0.0f, static_cast<float>(frame.height - 1));
    int x0 = std::min(static_cast<int>(sx), frame.width - 2 >= 0 ? frame.width - 2 : 0);
    int y0 = std::min(static_cast<int>(sy), frame.height - 2 >= 0 ? frame.height - 2 : 0);
    x0 = std::max(x0, 0);
    y0 = std::max(y0, 0);
    const int x1 = std::min(x0 + 1, frame.width - 1);
    const int y1 = std::min(y0 + 1, frame.height - 1);
    const float fx = sx - x0;
    const float fy = sy - y0;
    // Two-sided weights are exact at fx/fy of 0 and 1, so samples taken at
    // integer coordinates (including the clamped last row/column, where the
    // fractional part becomes exactly 1) return the stored value bit-for-bit.
    const float top = frame.at(x0, y0, channel) * (1.0f - fx) + frame.at(x1, y0, channel) * fx;
    const float bot = frame.at(x0, y1, channel) * (1.0f - fx) + frame.at(x1, y1, channel) * fx;
    return top * (1.0f - fy) + bot * fy;
}

}  // namespace flowforge

#endif
