#ifndef FLOWFORGE_DENSEFLOW_HPP
#define FLOWFORGE_DENSEFLOW_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "flowforge/core.hpp"
#include "flowforge/imaging.hpp"

namespace flowforge {

// ============================================================================
// Configuration
// ============================================================================

/// Pyramidal Lucas-Kanade parameters. Defaults target full-resolution
/// estimation; proxy_defaults() targets the 32x32 selection proxy.
struct LkConfig {
    int window_radius = 7;           // half-width of the square window (15x15)
    int pyramid_levels = 3;
    int iterations_per_level = 3;
    float min_eigenvalue = 1e-4f;    // gate on the smaller eigenvalue of the
                                     // window-averaged structure tensor,
                                     // for intensities in [0,1]

    static LkConfig proxy_defaults() {
        LkConfig cfg;
        cfg.window_radius = 3;       // 7x7 window
        cfg.pyramid_levels = 2;
        cfg.iterations_per_level = 3;
        cfg.min_eigenvalue = 1e-4f;
        return cfg;
    }

    bool operator==(const LkConfig&) const = default;

    void validate() const {
        if (window_radius < 1)
            throw config_error("LkConfig: window_radius must be >= 1");
        if (pyramid_levels < 1)
            throw config_error("LkConfig: pyramid_levels must be >= 1");
        if (iterations_per_level < 1)
            throw config_error("LkConfig: iterations_per_level must be >= 1");
        if (!(min_eigenvalue >= 0.0f))
            throw config_error("LkConfig: min_eigenvalue must be non-negative");
    }
};

namespace detail {

/// 2x2 box downsample; trailing odd row/column is dropped.
inline Frame downsample_half(const Frame& src) {
    const int w = src.width / 2;
    const int h = src.height / 2;
    Frame out(w, h, 1);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            out.at(x, y) = 0.25f * (src.at(2 * x, 2 * y) + src.at(2 * x + 1, 2 * y) +
                                    src.at(2 * x, 2 * y + 1) + src.at(2 * x + 1, 2 * y + 1));
    return out;
}

inline std::vector<Frame> build_pyramid(const Frame& base, int levels) {
    std::vector<Frame> pyr;
    pyr.reserve(levels);
    pyr.push_back(base);
    for (int l = 1; l < levels; ++l)
        pyr.push_back(downsample_half(pyr.back()));
    return pyr;
}

/// Bilinear upscale of a flow component to new dimensions, values doubled.
inline std::vector<float> upscale_flow_component(const std::vector<float>& src,
                                                 int sw, int sh, int dw, int dh) {
    Frame tmp;
    tmp.width = sw;
    tmp.height = sh;
    tmp.channels = 1;
    tmp.pixels = src;
    std::vector<int> x0, x1, y0, y1;
    std::vector<float> fx, fy;
    resize_axis_coords(dw, sw, x0, x1, fx);
    resize_axis_coords(dh, sh, y0, y1, fy);
    std::vector<float> out(static_cast<std::size_t>(dw) * dh);
    for (int y = 0; y < dh; ++y) {
        for (int x = 0; x < dw; ++x) {
            const float v00 = tmp.at(x0[x], y0[y]);
            const float v10 = tmp.at(x1[x], y0[y]);
            const float v01 = tmp.at(x0[x], y1[y]);
            const float v11 = tmp.at(x1[x], y1[y]);
            const float top = v00 + (v10 - v00) * fx[x];
            const float bot = v01 + (v11 - v01) * fx[x];
            out[static_cast<std::size_t>(y) * dw + x] = 2.0f * (top + (bot - top) * fy[y]);
        }
    }
    return out;
}

}  // namespace detail

// ============================================================================
// Dense pyramidal Lucas-Kanade
// ============================================================================

/// Coarse-to-fine dense flow between two single-channel frames.
///
/// At every level the target frame is warped by the flow propagated from the
/// coarser level, and the 2x2 structure-tensor normal equations are solved
/// per pixel over the configured window. Pixels whose window-averaged
/// structure tensor has a smaller eigenvalue below cfg.min_eigenvalue keep
/// the propagated flow (no local update).
inline FlowField lucas_kanade_dense(const Frame& frame_a, const Frame& frame_b,
                                    const LkConfig& cfg = LkConfig()) {
    cfg.validate();
    if (!frame_a.same_shape(frame_b))
        throw dimension_error("lucas_kanade_dense: frame pair is incompatible (" +
                              std::to_string(frame_a.width) + "x" + std::to_string(frame_a.height) +
                              " vs " + std::to_string(frame_b.width) + "x" +
                              std::to_string(frame_b.height) + ")");
    if (frame_a.channels != 1)
        throw dimension_error("lucas_kanade_dense: frames must be single-channel");
    {
        int w = frame_a.width, h = frame_a.height;
        for (int l = 1; l < cfg.pyramid_levels; ++l) {
            w /= 2;
            h /= 2;
        }
        if (w < 8 || h < 8)
            throw config_error("lucas_kanade_dense: " + std::to_string(cfg.pyramid_levels) +
                               " pyramid levels leave a " + std::to_string(w) + "x" +
                               std::to_string(h) + " coarsest level; at least 8x8 required");
    }

    const std::vector<Frame> pyr_a = detail::build_pyramid(frame_a, cfg.pyramid_levels);
    const std::vector<Frame> pyr_b = detail::build_pyramid(frame_b, cfg.pyramid_levels);

    std::vector<float> u, v;

    for (int level = cfg.pyramid_levels - 1; level >= 0; --level) {
        const Frame& a = pyr_a[level];
        const Frame& b = pyr_b[level];
        const int w = a.width;
        const int h = a.height;
        const std::size_t n = a.pixel_count();

        if (level == cfg.pyramid_levels - 1) {
            u.assign(n, 0.0f);
            v.assign(n, 0.0f);
        } else {
            const Frame& prev = pyr_a[level + 1];
            u = detail::upscale_flow_component(u, prev.width, prev.height, w, h);
            v = detail::upscale_flow_component(v, prev.width, prev.height, w, h);
        }

        // Template gradients and the per-pixel window structure tensor are
        // fixed for the level; only the mismatch vector changes per iteration.
        Gradients g = gradients(a, a);  // ix/iy of a; it unused here
        const int r = cfg.window_radius;
        const double window_area = static_cast<double>(2 * r + 1) * (2 * r + 1);

        std::vector<double> sxx(n), sxy(n), syy(n);
        std::vector<char> solvable(n);
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                double axx = 0.0, axy = 0.0, ayy = 0.0;
                for (int wy = -r; wy <= r; ++wy) {
                    const int yy = std::clamp(y + wy, 0, h - 1);
                    for (int wx = -r; wx <= r; ++wx) {
                        const int xx = std::clamp(x + wx, 0, w - 1);
                        const std::size_t j = static_cast<std::size_t>(yy) * w + xx;
                        const double gx = g.ix[j];
                        const double gy = g.iy[j];
                        axx += gx * gx;
                        axy += gx * gy;
                        ayy += gy * gy;
                    }
                }
                const std::size_t i = static_cast<std::size_t>(y) * w + x;
                sxx[i] = axx;
                sxy[i] = axy;
                syy[i] = ayy;
                // smaller eigenvalue of the window mean tensor
                const double mxx = axx / window_area;
                const double mxy = axy / window_area;
                const double myy = ayy / window_area;
                const double tr = mxx + myy;
                const double det = mxx * myy - mxy * mxy;
                const double disc = std::max(0.0, tr * tr - 4.0 * det);
                const double lambda_min = 0.5 * (tr - std::sqrt(disc));
                solvable[i] = lambda_min >= cfg.min_eigenvalue ? 1 : 0;
            }
        }

        for (int iter = 0; iter < cfg.iterations_per_level; ++iter) {
            for (int y = 0; y < h; ++y) {
                for (int x = 0; x < w; ++x) {
                    const std::size_t i = static_cast<std::size_t>(y) * w + x;
                    if (!solvable[i]) continue;
                    double bx = 0.0, by = 0.0;
                    const float du = u[i];
                    const float dv = v[i];
                    for (int wy = -r; wy <= r; ++wy) {
                        const int yy = std::clamp(y + wy, 0, h - 1);
                        for (int wx = -r; wx <= r; ++wx) {
                            const int xx = std::clamp(x + wx, 0, w - 1);
                            const std::size_t j = static_cast<std::size_t>(yy) * w + xx;
                            const float warped = sample_bilinear(b, xx + du, yy + dv);
                            const double it = warped - a.at(xx, yy);
                            bx += g.ix[j] * it;
                            by += g.iy[j] * it;
                        }
                    }
                    const double det = sxx[i] * syy[i] - sxy[i] * sxy[i];
                    if (det <= 0.0) continue;
                    const double step_u = -(syy[i] * bx - sxy[i] * by) / det;
                    const double step_v = -(-sxy[i] * bx + sxx[i] * by) / det;
                    u[i] = static_cast<float>(du + step_u);
                    v[i] = static_cast<float>(dv + step_v);
                }
            }
        }
    }

    FlowField out(frame_a.width, frame_a.height);
    out.u = std::move(u);
    out.v = std::move(v);
    return out;
}

// ============================================================================
// Motion magnitudes
// ============================================================================

/// Per-pixel L2 norm of the flow vectors.
inline std::vector<float> motion_magnitudes(const FlowField& flow) {
    flow.validate();
    std::vector<float> mags(flow.size());
    for (std::size_t i = 0; i < flow.size(); ++i)
        mags[i] = std::hypot(flow.u[i], flow.v[i]);
    return mags;
}

}  // namespace flowforge

#endif
