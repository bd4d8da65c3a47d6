#ifndef FLOWFORGE_CORE_HPP
#define FLOWFORGE_CORE_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace flowforge {

// ============================================================================
// Error taxonomy
// ============================================================================

/// Base class for everything this library throws.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Incompatible shapes (frame pairs, flow fields, correspondence lists).
struct dimension_error : error {
    explicit dimension_error(const std::string& msg) : error(msg) {}
};

/// A configuration value violates its documented invariant.
struct config_error : error {
    explicit config_error(const std::string& msg) : error(msg) {}
};

/// Degenerate geometry: collinear/duplicated points, singular model.
struct degeneracy_error : error {
    explicit degeneracy_error(const std::string& msg) : error(msg) {}
};

/// Numeric failure: point at infinity, failed normalization, non-finite data.
struct numeric_error : error {
    explicit numeric_error(const std::string& msg) : error(msg) {}
};

/// Malformed file contents: bad magic, unparseable structure.
struct format_error : error {
    explicit format_error(const std::string& msg) : error(msg) {}
};

/// Payload shorter or longer than its header promises.
struct length_error : format_error {
    explicit length_error(const std::string& msg) : format_error(msg) {}
};

/// Document version missing or not understood by this build.
struct compatibility_error : format_error {
    explicit compatibility_error(const std::string& msg) : format_error(msg) {}
};

/// Filesystem-level failure (open/read/write).
struct io_error : error {
    explicit io_error(const std::string& msg) : error(msg) {}
};

// ============================================================================
// Frame
// ============================================================================

/// A single image. Pixels are row-major, channel-interleaved floats in [0,1].
/// channels is 1 (grayscale) or 3 (RGB).
struct Frame {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<float> pixels;

    Frame() = default;
    Frame(int w, int h, int c, float fill = 0.0f)
        : width(w), height(h), channels(c),
          pixels(static_cast<std::size_t>(w) * h * c, fill) {}

    float& at(int x, int y, int c = 0) {
        return pixels[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    float at(int x, int y, int c = 0) const {
        return pixels[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }

    std::size_t pixel_count() const {
        return static_cast<std::size_t>(width) * height;
    }

    void validate() const {
        if (width < 1 || height < 1)
            throw dimension_error("Frame: dimensions must be positive, got " +
                                  std::to_string(width) + "x" + std::to_string(height));
        if (channels != 1 && channels != 3)
            throw dimension_error("Frame: channels must be 1 or 3, got " +
                                  std::to_string(channels));
        if (pixels.size() != pixel_count() * channels)
            throw dimension_error("Frame: pixel buffer holds " + std::to_string(pixels.size()) +
                                  " values, expected " + std::to_string(pixel_count() * channels));
        for (float p : pixels)
            if (!(p >= 0.0f && p <= 1.0f))
                throw numeric_error("Frame: pixel value " + std::to_string(p) +
                                    " outside [0,1] or non-finite");
    }

    bool same_shape(const Frame& o) const {
        return width == o.width && height == o.height && channels == o.channels;
    }
};

// ============================================================================
// FlowField
// ============================================================================

/// Dense per-pixel 2D displacement for one frame pair, in pixel units.
/// x grows right, y grows down. u and v are row-major, length width*height.
struct FlowField {
    int width = 0;
    int height = 0;
    std::vector<float> u;
    std::vector<float> v;
    int source_frame = 0;
    int target_frame = 1;

    FlowField() = default;
    FlowField(int w, int h)
        : width(w), height(h),
          u(static_cast<std::size_t>(w) * h, 0.0f),
          v(static_cast<std::size_t>(w) * h, 0.0f) {}

    std::size_t size() const { return static_cast<std::size_t>(width) * height; }

    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * width + x;
    }
    float& at_u(int x, int y) { return u[index(x, y)]; }
    float& at_v(int x, int y) { return v[index(x, y)]; }
    float at_u(int x, int y) const { return u[index(x, y)]; }
    float at_v(int x, int y) const { return v[index(x, y)]; }

    void validate() const {
        if (width < 1 || height < 1)
            throw dimension_error("FlowField: dimensions must be positive, got " +
                                  std::to_string(width) + "x" + std::to_string(height));
        if (u.size() != size() || v.size() != size())
            throw dimension_error("FlowField: component length " + std::to_string(u.size()) +
                                  "/" + std::to_string(v.size()) + ", expected " +
                                  std::to_string(size()));
        for (std::size_t i = 0; i < u.size(); ++i)
            if (!std::isfinite(u[i]) || !std::isfinite(v[i]))
                throw numeric_error("FlowField: non-finite value at pixel (" +
                                    std::to_string(i % width) + "," +
                                    std::to_string(i / width) + ")");
    }

    bool same_shape(const FlowField& o) const {
        return width == o.width && height == o.height;
    }
};

}  // namespace flowforge

#endif
