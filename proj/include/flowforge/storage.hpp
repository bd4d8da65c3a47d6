#ifndef FLOWFORGE_STORAGE_HPP
#define FLOWFORGE_STORAGE_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "flowforge/compensation.hpp"
#include "flowforge/core.hpp"
#include "flowforge/denseflow.hpp"
#include "flowforge/flowcodec.hpp"
#include "flowforge/geometry.hpp"
#include "flowforge/selection.hpp"

namespace flowforge {

using byte_buffer = std::vector<std::uint8_t>;

// ============================================================================
// Raw file IO
// ============================================================================

inline byte_buffer read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("cannot open " + path.string() + " for reading");
    byte_buffer bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad())
        throw io_error("read failed on " + path.string());
    return bytes;
}

inline void write_file(const std::filesystem::path& path, const byte_buffer& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw io_error("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw io_error("write failed on " + path.string());
}

// ============================================================================
// Flow files (Middlebury .flo layout)
// ============================================================================
//
// 4-byte magic equal to the 32-bit float 202021.25 (reads as "PIEH" in
// little-endian), then int32 width, int32 height, then row-major interleaved
// (u,v) float32 pairs. Everything little-endian regardless of host.

namespace detail {

constexpr std::uint32_t flo_magic_bits = 0x48454950u;  // float 202021.25, bytes "PIEH"

inline void append_u32le(byte_buffer& b, std::uint32_t v) {
    b.push_back(static_cast<std::uint8_t>(v & 0xFFu));
    b.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFFu));
    b.push_back(static_cast<std::uint8_t>((v >> 16) & 0xFFu));
    b.push_back(static_cast<std::uint8_t>((v >> 24) & 0xFFu));
}

inline std::uint32_t get_u32le(const byte_buffer& b, std::size_t offset) {
    return static_cast<std::uint32_t>(b[offset]) |
           (static_cast<std::uint32_t>(b[offset + 1]) << 8) |
           (static_cast<std::uint32_t>(b[offset + 2]) << 16) |
           (static_cast<std::uint32_t>(b[offset + 3]) << 24);
}

}  // namespace detail

inline byte_buffer write_flo(const FlowField& flow) {
    if (flow.width < 1 || flow.height < 1)
        throw dimension_error("write_flo: dimensions must be positive");
    if (flow.u.size() != flow.size() || flow.v.size() != flow.size())
        throw dimension_error("write_flo: component length does not match dimensions");

    byte_buffer bytes;
    bytes.reserve(12 + flow.size() * 8);
    detail::append_u32le(bytes, detail::flo_magic_bits);
    detail::append_u32le(bytes, static_cast<std::uint32_t>(flow.width));
    detail::append_u32le(bytes, static_cast<std::uint32_t>(flow.height));
    for (std::size_t i = 0; i < flow.size(); ++i) {
        detail::append_u32le(bytes, std::bit_cast<std::uint32_t>(flow.u[i]));
        detail::append_u32le(bytes, std::bit_cast<std::uint32_t>(flow.v[i]));
    }
    return bytes;
}

inline FlowField read_flo(const byte_buffer& bytes) {
    if (bytes.size() < 12)
        throw length_error("read_flo: header needs 12 bytes, got " +
                           std::to_string(bytes.size()));
    if (detail::get_u32le(bytes, 0) != detail::flo_magic_bits)
        throw format_error("read_flo: bad magic (expected float 202021.25 / \"PIEH\")");

    const auto width = static_cast<std::int32_t>(detail::get_u32le(bytes, 4));
    const auto height = static_cast<std::int32_t>(detail::get_u32le(bytes, 8));
    if (width < 1 || height < 1)
        throw format_error("read_flo: non-positive dimensions " + std::to_string(width) +
                           "x" + std::to_string(height));

    const std::uint64_t expected =
        12 + static_cast<std::uint64_t>(width) * static_cast<std::uint64_t>(height) * 8;
    if (bytes.size() != expected)
        throw length_error("read_flo: expected " + std::to_string(expected) + " bytes for " +
                           std::to_string(width) + "x" + std::to_string(height) + ", got " +
                           std::to_string(bytes.size()));

    FlowField flow(width, height);
    std::size_t offset = 12;
    for (std::size_t i = 0; i < flow.size(); ++i) {
        flow.u[i] = std::bit_cast<float>(detail::get_u32le(bytes, offset));
        flow.v[i] = std::bit_cast<float>(detail::get_u32le(bytes, offset + 4));
        offset += 8;
    }
    return flow;
}

inline void write_flo_file(const FlowField& flow, const std::filesystem::path& path) {
    write_file(path, write_flo(flow));
}

inline FlowField read_flo_file(const std::filesystem::path& path) {
    try {
        return read_flo(read_file(path));
    } catch (const length_error& e) {
        throw length_error(path.string() + ": " + e.what());
    } catch (const format_error& e) {
        throw format_error(path.string() + ": " + e.what());
    }
}

// ============================================================================
// 8-bit images (binary PGM for grayscale, binary PPM for RGB)
// ============================================================================
//
// Bytes map to [0,1] via value/255 on read; writes quantize with
// round(value*255) clamped to [0,255]. maxval is fixed at 255.

namespace detail {

inline std::uint8_t quantize_8bit(float v) {
    const long q = std::lround(static_cast<double>(v) * 255.0);
    return static_cast<std::uint8_t>(std::clamp(q, 0L, 255L));
}

/// Reads one ASCII integer token, skipping whitespace and '#' comments.
inline int parse_pnm_int(const byte_buffer& b, std::size_t& pos, const char* what) {
    while (pos < b.size()) {
        const char c = static_cast<char>(b[pos]);
        if (c == '#') {
            while (pos < b.size() && b[pos] != '\n') ++pos;
        } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            ++pos;
        } else {
            break;
        }
    }
    if (pos >= b.size() || b[pos] < '0' || b[pos] > '9')
        throw format_error(std::string("image: expected ") + what + " in header");
    long value = 0;
    while (pos < b.size() && b[pos] >= '0' && b[pos] <= '9') {
        value = value * 10 + (b[pos] - '0');
        if (value > 1'000'000'000L)
            throw format_error(std::string("image: ") + what + " out of range");
        ++pos;
    }
    return static_cast<int>(value);
}

}  // namespace detail

inline byte_buffer serialize_image(const Frame& frame) {
    frame.validate();
    const std::string magic = frame.channels == 3 ? "P6" : "P5";
    std::string header = magic + "\n" + std::to_string(frame.width) + " " +
                         std::to_string(frame.height) + "\n255\n";
    byte_buffer bytes(header.begin(), header.end());
    bytes.reserve(bytes.size() + frame.pixels.size());
    for (float v : frame.pixels) bytes.push_back(detail::quantize_8bit(v));
    return bytes;
}

inline Frame parse_image(const byte_buffer& bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6'))
        throw format_error("image: not a binary PGM (P5) or PPM (P6) file");
    const int channels = bytes[1] == '6' ? 3 : 1;

    std::size_t pos = 2;
    const int width = detail::parse_pnm_int(bytes, pos, "width");
    const int height = detail::parse_pnm_int(bytes, pos, "height");
    const int maxval = detail::parse_pnm_int(bytes, pos, "maxval");
    if (width < 1 || height < 1)
        throw format_error("image: non-positive dimensions " + std::to_string(width) + "x" +
                           std::to_string(height));
    if (maxval != 255)
        throw format_error("image: only maxval 255 is supported, got " + std::to_string(maxval));
    if (pos >= bytes.size())
        throw length_error("image: payload missing after header");
    ++pos;  // the single whitespace byte separating header and payload

    const std::uint64_t expected = static_cast<std::uint64_t>(width) *
                                   static_cast<std::uint64_t>(height) *
                                   static_cast<std::uint64_t>(channels);
    if (bytes.size() - pos != expected)
        throw length_error("image: expected " + std::to_string(expected) +
                           " payload bytes for " + std::to_string(width) + "x" +
                           std::to_string(height) + "x" + std::to_string(channels) + ", got " +
                           std::to_string(bytes.size() - pos));

    Frame frame(width, height, channels);
    for (std::size_t i = 0; i < frame.pixels.size(); ++i)
        frame.pixels[i] = static_cast<float>(bytes[pos + i]) / 255.0f;
    return frame;
}

inline void write_image(const Frame& frame, const std::filesystem::path& path) {
    write_file(path, serialize_image(frame));
}

inline Frame read_image(const std::filesystem::path& path) {
    try {
        return parse_image(read_file(path));
    } catch (const length_error& e) {
        throw length_error(path.string() + ": " + e.what());
    } catch (const format_error& e) {
        throw format_error(path.string() + ": " + e.what());
    }
}

// ============================================================================
// Run manifest (versioned JSON)
// ============================================================================

inline constexpr const char* manifest_version = "1";

/// Per-pair compensation outcome as recorded in the manifest.
struct PairReport {
    int pair = 0;
    bool valid = false;
    int inlier_count = 0;

    bool operator==(const PairReport&) const = default;
};

/// The full record of one pipeline run: provenance, the exact configuration
/// used, per-pair motion proxies, the selection, and compensation reports.
struct ManifestDocument {
    std::string version = manifest_version;
    std::string source;
    int frame_count = 0;
    CodecConfig codec;
    CompensationConfig compensation;
    SelectionConfig selection;
    MotionManifest motion;
    std::vector<PairReport> reports;

    bool operator==(const ManifestDocument&) const = default;
};

namespace detail {

using nlohmann::json;

inline json lk_to_json(const LkConfig& c) {
    return json{{"window_radius", c.window_radius},
                {"pyramid_levels", c.pyramid_levels},
                {"iterations_per_level", c.iterations_per_level},
                {"min_eigenvalue", static_cast<double>(c.min_eigenvalue)}};
}

inline LkConfig lk_from_json(const json& j) {
    LkConfig c;
    c.window_radius = j.at("window_radius").get<int>();
    c.pyramid_levels = j.at("pyramid_levels").get<int>();
    c.iterations_per_level = j.at("iterations_per_level").get<int>();
    c.min_eigenvalue = static_cast<float>(j.at("min_eigenvalue").get<double>());
    return c;
}

inline json manifest_to_json(const ManifestDocument& m) {
    json j;
    j["version"] = m.version;
    j["source"] = m.source;
    j["frame_count"] = m.frame_count;
    j["config"] = {
        {"codec", {{"eta", static_cast<double>(m.codec.eta)}}},
        {"compensation",
         {{"stride", m.compensation.stride},
          {"noise_threshold", static_cast<double>(m.compensation.noise_threshold)},
          {"thresholding_enabled", m.compensation.thresholding_enabled},
          {"ransac",
           {{"reproj_threshold", m.compensation.ransac.reproj_threshold},
            {"iterations", m.compensation.ransac.iterations},
            {"seed", m.compensation.ransac.seed},
            {"min_inliers", m.compensation.ransac.min_inliers},
            {"min_inlier_fraction", m.compensation.ransac.min_inlier_fraction}}}}},
        {"selection",
         {{"proxy_size", m.selection.proxy_size},
          {"top_k_percent", m.selection.top_k_percent},
          {"threshold_px", static_cast<double>(m.selection.threshold_px)},
          {"reference_width", m.selection.reference_width},
          {"lk", lk_to_json(m.selection.lk)}}}};

    json proxies = json::array();
    for (const auto& [pair, value] : m.motion.pair_proxies)
        proxies.push_back(json::array({pair, static_cast<double>(value)}));
    j["pair_proxies"] = std::move(proxies);
    j["selected"] = m.motion.selected;

    json segments = json::array();
    for (const auto& [start, end] : m.motion.segments)
        segments.push_back(json::array({start, end}));
    j["segments"] = std::move(segments);

    json reports = json::array();
    for (const PairReport& r : m.reports)
        reports.push_back(
            json{{"pair", r.pair}, {"valid", r.valid}, {"inlier_count", r.inlier_count}});
    j["reports"] = std::move(reports);
    return j;
}

inline ManifestDocument manifest_from_json(const json& j) {
    ManifestDocument m;
    m.version = j.at("version").get<std::string>();
    m.source = j.at("source").get<std::string>();
    m.frame_count = j.at("frame_count").get<int>();

    const json& codec = j.at("config").at("codec");
    m.codec.eta = static_cast<float>(codec.at("eta").get<double>());

    const json& comp = j.at("config").at("compensation");
    m.compensation.stride = comp.at("stride").get<int>();
    m.compensation.noise_threshold = static_cast<float>(comp.at("noise_threshold").get<double>());
    m.compensation.thresholding_enabled = comp.at("thresholding_enabled").get<bool>();
    const json& ransac = comp.at("ransac");
    m.compensation.ransac.reproj_threshold = ransac.at("reproj_threshold").get<double>();
    m.compensation.ransac.iterations = ransac.at("iterations").get<int>();
    m.compensation.ransac.seed = ransac.at("seed").get<std::uint64_t>();
    m.compensation.ransac.min_inliers = ransac.at("min_inliers").get<int>();
    m.compensation.ransac.min_inlier_fraction = ransac.at("min_inlier_fraction").get<double>();

    const json& sel = j.at("config").at("selection");
    m.selection.proxy_size = sel.at("proxy_size").get<int>();
    m.selection.top_k_percent = sel.at("top_k_percent").get<double>();
    m.selection.threshold_px = static_cast<float>(sel.at("threshold_px").get<double>());
    m.selection.reference_width = sel.at("reference_width").get<int>();
    m.selection.lk = lk_from_json(sel.at("lk"));

    for (const json& p : j.at("pair_proxies"))
        m.motion.pair_proxies.emplace_back(p.at(0).get<int>(),
                                           static_cast<float>(p.at(1).get<double>()));
    m.motion.selected = j.at("selected").get<std::vector<int>>();
    for (const json& s : j.at("segments"))
        m.motion.segments.emplace_back(s.at(0).get<int>(), s.at(1).get<int>());
    for (const json& r : j.at("reports"))
        m.reports.push_back({r.at("pair").get<int>(), r.at("valid").get<bool>(),
                             r.at("inlier_count").get<int>()});
    return m;
}

}  // namespace detail

/// Human-readable JSON with keys in stable (alphabetical) order.
inline std::string serialize_manifest(const ManifestDocument& m) {
    return detail::manifest_to_json(m).dump(2) + "\n";
}

inline ManifestDocument parse_manifest(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw format_error(std::string("manifest: invalid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw format_error("manifest: top-level value must be an object");
    if (!j.contains("version"))
        throw compatibility_error("manifest: missing version field");
    if (!j.at("version").is_string() || j.at("version").get<std::string>() != manifest_version)
        throw compatibility_error("manifest: unsupported version " + j.at("version").dump() +
                                  " (this build reads version \"" +
                                  std::string(manifest_version) + "\")");
    try {
        return detail::manifest_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw format_error(std::string("manifest: malformed document: ") + e.what());
    }
}

inline void write_manifest(const ManifestDocument& m, const std::filesystem::path& path) {
    const std::string text = serialize_manifest(m);
    write_file(path, byte_buffer(text.begin(), text.end()));
}

inline ManifestDocument read_manifest(const std::filesystem::path& path) {
    const byte_buffer bytes = read_file(path);
    try {
        return parse_manifest(std::string(bytes.begin(), bytes.end()));
    } catch (const compatibility_error& e) {
        throw compatibility_error(path.string() + ": " + e.what());
    } catch (const format_error& e) {
        throw format_error(path.string() + ": " + e.what());
    }
}

}  // namespace flowforge

#endif
