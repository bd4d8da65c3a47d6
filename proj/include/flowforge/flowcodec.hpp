#ifndef FLOWFORGE_FLOWCODEC_HPP
#define FLOWFORGE_FLOWCODEC_HPP

#include <algorithm>
#include <cmath>
#include <string>

#include "flowforge/core.hpp"

namespace flowforge {

// ============================================================================
// Configuration
// ============================================================================

struct CodecConfig {
    float eta = 64.0f;  // magnitude normalization, pixels

    bool operator==(const CodecConfig&) const = default;

    void validate() const {
        if (!(eta > 0.0f) || !std::isfinite(eta))
            throw config_error("CodecConfig: eta must be positive and finite");
    }
};

// ============================================================================
// HSV conversion
// ============================================================================
//
// The exact six-sector piecewise conversion is spelled out here so every
// consumer of encoded frames agrees bit-for-bit at float precision.

namespace detail {

struct Rgb {
    float r, g, b;
};
struct Hsv {
    float h, s, v;  // h in [0,1), s and v in [0,1]
};

/// Sector i = floor(6h); f = 6h - i; p = v(1-s), q = v(1-fs), t = v(1-(1-f)s);
/// (R,G,B) = sector 0:(v,t,p) 1:(q,v,p) 2:(p,v,t) 3:(p,q,v) 4:(t,p,v) 5:(v,p,q).
inline Rgb hsv_to_rgb(const Hsv& hsv) {
    const float h6 = hsv.h * 6.0f;
    int sector = static_cast<int>(h6);
    if (sector > 5) sector = 5;  // guards h == 1 after float rounding
    const float f = h6 - static_cast<float>(sector);
    const float v = hsv.v;
    const float p = v * (1.0f - hsv.s);
    const float q = v * (1.0f - f * hsv.s);
    const float t = v * (1.0f - (1.0f - f) * hsv.s);
    switch (sector) {
        case 0: return {v, t, p};
        case 1: return {q, v, p};
        case 2: return {p, v, t};
        case 3: return {p, q, v};
        case 4: return {t, p, v};
        default: return {v, p, q};
    }
}

/// Inverse of hsv_to_rgb. The max channel is resolved in R, G, B order, so
/// ties decode deterministically. Hue lands in [0,1).
inline Hsv rgb_to_hsv(const Rgb& rgb) {
    const float maxc = std::max({rgb.r, rgb.g, rgb.b});
    const float minc = std::min({rgb.r, rgb.g, rgb.b});
    const float chroma = maxc - minc;

    Hsv hsv;
    hsv.v = maxc;
    hsv.s = (maxc > 0.0f) ? chroma / maxc : 0.0f;
    if (chroma <= 0.0f) {
        hsv.h = 0.0f;
        return hsv;
    }
    float h6;
    if (rgb.r == maxc)
        h6 = (rgb.g - rgb.b) / chroma;       // sectors 5..1 around red
    else if (rgb.g == maxc)
        h6 = 2.0f + (rgb.b - rgb.r) / chroma;  // sectors 1..3 around green
    else
        h6 = 4.0f + (rgb.r - rgb.g) / chroma;  // sectors 3..5 around blue
    if (h6 < 0.0f) h6 += 6.0f;
    float h = h6 / 6.0f;
    if (h >= 1.0f) h -= 1.0f;
    hsv.h = h;
    return hsv;
}

}  // namespace detail

// ============================================================================
// Encode
// ============================================================================

/// Maps flow to RGB: magnitude (clamped at eta) drives saturation, direction
/// drives hue (angle shifted by pi so the full circle lands in [0, 2pi), a
/// wrap at exactly 2pi mapping to 0), and the value channel is the constant
/// 1 so consecutive encoded frames never flicker in brightness.
inline Frame encode_flow(const FlowField& flow, const CodecConfig& cfg) {
    cfg.validate();
    if (flow.width < 1 || flow.height < 1)
        throw dimension_error("encode_flow: flow dimensions must be positive");
    if (flow.u.size() != flow.size() || flow.v.size() != flow.size())
        throw dimension_error("encode_flow: component length does not match dimensions");

    constexpr float two_pi = 6.28318530717958647692f;
    Frame out(flow.width, flow.height, 3);
    for (int y = 0; y < flow.height; ++y) {
        for (int x = 0; x < flow.width; ++x) {
            const float u = flow.at_u(x, y);
            const float v = flow.at_v(x, y);
            if (!std::isfinite(u) || !std::isfinite(v))
                throw numeric_error("encode_flow: non-finite flow at pixel (" +
                                    std::to_string(x) + ", " + std::to_string(y) + ")");
            const float mag = std::hypot(u, v);
            const float sat = std::clamp(mag / cfg.eta, 0.0f, 1.0f);
            float theta = std::atan2(v, u) + 3.14159265358979323846f;
            if (theta >= two_pi) theta -= two_pi;
            if (theta < 0.0f) theta = 0.0f;  // guards tiny negative float residue
            const detail::Rgb rgb = detail::hsv_to_rgb({theta / two_pi, sat, 1.0f});
            out.at(x, y, 0) = rgb.r;
            out.at(x, y, 1) = rgb.g;
            out.at(x, y, 2) = rgb.b;
        }
    }
    return out;
}

// ============================================================================
// Decode
// ============================================================================

/// Inverse mapping: saturation scales back to magnitude, hue rotates back to
/// the signed angle. Saturation below one 8-bit step decodes to exactly
/// (0,0) — the angle carries no information there.
inline FlowField decode_flow(const Frame& image, const CodecConfig& cfg) {
    cfg.validate();
    image.validate();
    if (image.channels != 3)
        throw dimension_error("decode_flow: image must have 3 channels, got " +
                              std::to_string(image.channels));

    constexpr float two_pi = 6.28318530717958647692f;
    constexpr float min_saturation = 1.0f / 255.0f;
    FlowField flow(image.width, image.height);
    for (int y = 0; y < image.height; ++y) {
        for (int x = 0; x < image.width; ++x) {
            const detail::Hsv hsv = detail::rgb_to_hsv(
                {image.at(x, y, 0), image.at(x, y, 1), image.at(x, y, 2)});
            const std::size_t i = flow.index(x, y);
            if (hsv.s < min_saturation) {
                flow.u[i] = 0.0f;
                flow.v[i] = 0.0f;
                continue;
            }
            const float mag = hsv.s * cfg.eta;
            const float phi = hsv.h * two_pi - 3.14159265358979323846f;
            flow.u[i] = mag * std::cos(phi);
            flow.v[i] = mag * std::sin(phi);
        }
    }
    return flow;
}

}  // namespace flowforge

#endif
