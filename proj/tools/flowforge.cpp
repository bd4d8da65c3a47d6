// flowforge — batch motion-preprocessing CLI.
//
// Subcommands cover each pipeline stage (flow, compensate, select, encode,
// decode, trace) plus an end-to-end `pipeline` command. Exit codes: 0 success,
// 1 usage error, 2 data error, 3 internal error. FLOWFORGE_LOG selects the
// stderr log level (debug|info|warn|error).

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "flowforge/flowforge.hpp"

namespace fs = std::filesystem;
using namespace flowforge;

// ---------------------------------------------------------------------------
// Logging
// ---------------------------------------------------------------------------

enum class LogLevel { debug = 0, info = 1, warn = 2, error = 3 };

static LogLevel log_level_from_env() {
    const char* raw = std::getenv("FLOWFORGE_LOG");
    if (!raw) return LogLevel::info;
    std::string v(raw);
    std::transform(v.begin(), v.end(), v.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (v == "debug") return LogLevel::debug;
    if (v == "info") return LogLevel::info;
    if (v == "warn" || v == "warning") return LogLevel::warn;
    if (v == "error") return LogLevel::error;
    return LogLevel::info;
}

static LogLevel g_log_level = LogLevel::info;

static void log_at(LogLevel level, const std::string& msg) {
    static const char* names[] = {"debug", "info", "warn", "error"};
    if (level >= g_log_level)
        std::cerr << "flowforge [" << names[static_cast<int>(level)] << "] " << msg << "\n";
}

static void log_debug(const std::string& m) { log_at(LogLevel::debug, m); }
static void log_info(const std::string& m) { log_at(LogLevel::info, m); }
static void log_error(const std::string& m) { log_at(LogLevel::error, m); }

// ---------------------------------------------------------------------------
// Directory helpers
// ---------------------------------------------------------------------------

/// Regular files in dir whose extension is in exts, sorted by filename.
static std::vector<fs::path> list_files(const fs::path& dir,
                                        const std::vector<std::string>& exts) {
    if (!fs::exists(dir))
        throw io_error("directory does not exist: " + dir.string());
    if (!fs::is_directory(dir))
        throw io_error("not a directory: " + dir.string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string ext = entry.path().extension().string();
        if (std::find(exts.begin(), exts.end(), ext) != exts.end())
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
    return files;
}

static const std::vector<std::string> image_exts{".ppm", ".pgm"};
static const std::vector<std::string> flow_exts{".flo"};

/// Ordered frame sequence from a directory. All frames must share one shape.
static std::vector<Frame> load_frames(const fs::path& dir, std::size_t minimum) {
    const std::vector<fs::path> files = list_files(dir, image_exts);
    if (files.size() < minimum)
        throw dimension_error("need at least " + std::to_string(minimum) +
                              " image files in " + dir.string() + ", found " +
                              std::to_string(files.size()));
    std::vector<Frame> frames;
    frames.reserve(files.size());
    for (const fs::path& f : files) {
        frames.push_back(read_image(f));
        if (!frames.back().same_shape(frames.front()))
            throw dimension_error("frame size mismatch: " + f.string() + " is " +
                                  std::to_string(frames.back().width) + "x" +
                                  std::to_string(frames.back().height) + ", but " +
                                  files.front().string() + " is " +
                                  std::to_string(frames.front().width) + "x" +
                                  std::to_string(frames.front().height));
        log_debug("loaded " + f.string());
    }
    return frames;
}

static std::vector<FlowField> load_flows(const fs::path& dir, std::size_t minimum,
                                         std::vector<fs::path>* names = nullptr) {
    const std::vector<fs::path> files = list_files(dir, flow_exts);
    if (files.size() < minimum)
        throw dimension_error("need at least " + std::to_string(minimum) + " flow files in " +
                              dir.string() + ", found " + std::to_string(files.size()));
    std::vector<FlowField> flows;
    flows.reserve(files.size());
    for (const fs::path& f : files) {
        flows.push_back(read_flo_file(f));
        log_debug("loaded " + f.string());
    }
    if (names) *names = files;
    return flows;
}

static std::string pair_name(int t, const char* ext) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "pair_%06d%s", t, ext);
    return buf;
}

static void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw io_error("cannot create directory " + dir.string() + ": " + ec.message());
}

// ---------------------------------------------------------------------------
// Shared flag groups
// ---------------------------------------------------------------------------

struct LkFlags {
    LkConfig cfg;  // full-resolution defaults

    void attach(CLI::App* cmd) {
        cmd->add_option("--lk-window-radius", cfg.window_radius,
                        "Lucas-Kanade window radius in pixels")
            ->capture_default_str();
        cmd->add_option("--lk-pyramid-levels", cfg.pyramid_levels, "Pyramid level count")
            ->capture_default_str();
        cmd->add_option("--lk-iterations", cfg.iterations_per_level,
                        "Refinement iterations per pyramid level")
            ->capture_default_str();
        cmd->add_option("--lk-min-eigenvalue", cfg.min_eigenvalue,
                        "Structure-tensor eigenvalue gate")
            ->capture_default_str();
    }
};

struct CompensationFlags {
    CompensationConfig cfg;

    void attach(CLI::App* cmd) {
        cmd->add_option("--ransac-threshold", cfg.ransac.reproj_threshold,
                        "RANSAC reprojection threshold in pixels")
            ->capture_default_str();
        cmd->add_option("--stride", cfg.stride, "Correspondence sampling stride in pixels")
            ->capture_default_str();
        cmd->add_option("--noise-threshold", cfg.noise_threshold,
                        "Post-compensation magnitude gate in pixels")
            ->capture_default_str();
        cmd->add_option("--seed", cfg.ransac.seed, "Global random seed")
            ->capture_default_str();
    }
};

struct SelectionFlags {
    SelectionConfig cfg;

    void attach(CLI::App* cmd) {
        cmd->add_option("--proxy-size", cfg.proxy_size, "Proxy resolution (square)")
            ->capture_default_str();
        cmd->add_option("--top-k", cfg.top_k_percent, "Percentile tail size in percent")
            ->capture_default_str();
        cmd->add_option("--motion-threshold", cfg.threshold_px,
                        "Selection threshold in pixels at the reference width")
            ->capture_default_str();
        cmd->add_option("--reference-width", cfg.reference_width,
                        "Width at which --motion-threshold is expressed")
            ->capture_default_str();
    }
};

// ---------------------------------------------------------------------------
// Subcommand implementations
// ---------------------------------------------------------------------------

static int run_flow(const fs::path& input_dir, const fs::path& out_dir, const LkConfig& lk,
                    int workers) {
    lk.validate();
    const std::vector<Frame> frames = load_frames(input_dir, 2);
    std::vector<Frame> gray;
    gray.reserve(frames.size());
    for (const Frame& f : frames) gray.push_back(to_grayscale(f));

    const std::size_t n_pairs = frames.size() - 1;
    std::vector<FlowField> flows(n_pairs);
    parallel_for(n_pairs, workers, [&](std::size_t t) {
        flows[t] = lucas_kanade_dense(gray[t], gray[t + 1], lk);
        flows[t].source_frame = static_cast<int>(t);
        flows[t].target_frame = static_cast<int>(t) + 1;
    });

    ensure_dir(out_dir);
    for (std::size_t t = 0; t < n_pairs; ++t) {
        const fs::path out = out_dir / pair_name(static_cast<int>(t), ".flo");
        write_flo_file(flows[t], out);
        log_debug("wrote " + out.string());
    }
    log_info("flow: " + std::to_string(n_pairs) + " pairs -> " + out_dir.string());
    return 0;
}

static int run_compensate(const fs::path& flow_dir, const fs::path& out_dir,
                          const CompensationConfig& cfg, const fs::path& manifest_path,
                          int workers) {
    std::vector<fs::path> names;
    const std::vector<FlowField> flows = load_flows(flow_dir, 1, &names);
    cfg.validate(flows[0].width, flows[0].height);

    const auto results = compensate_batch(flows, cfg, workers);

    ensure_dir(out_dir);
    ManifestDocument manifest;
    manifest.source = flow_dir.string();
    manifest.frame_count = static_cast<int>(flows.size()) + 1;
    manifest.compensation = cfg;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const fs::path out = out_dir / names[i].filename();
        write_flo_file(results[i].first, out);
        log_debug("wrote " + out.string());
        const CompensationReport& r = results[i].second;
        manifest.reports.push_back({static_cast<int>(i), r.valid, r.inlier_count});
    }
    write_manifest(manifest, manifest_path);
    log_info("compensate: " + std::to_string(flows.size()) + " fields -> " + out_dir.string());
    return 0;
}

static int run_select(const fs::path& input_dir, const fs::path& manifest_path,
                      const SelectionConfig& cfg, int workers) {
    cfg.validate();
    const std::vector<Frame> frames = load_frames(input_dir, 2);
    const MotionManifest motion = select_pairs(frames, cfg, workers);

    ManifestDocument manifest;
    manifest.source = input_dir.string();
    manifest.frame_count = static_cast<int>(frames.size());
    manifest.selection = cfg;
    manifest.motion = motion;
    write_manifest(manifest, manifest_path);
    log_info("select: " + std::to_string(motion.selected.size()) + " of " +
             std::to_string(frames.size() - 1) + " pairs -> " + manifest_path.string());
    return 0;
}

static int run_encode(const fs::path& flow_dir, const fs::path& image_dir,
                      const CodecConfig& codec, int workers) {
    codec.validate();
    std::vector<fs::path> names;
    const std::vector<FlowField> flows = load_flows(flow_dir, 1, &names);

    std::vector<Frame> images(flows.size());
    parallel_for(flows.size(), workers,
                 [&](std::size_t i) { images[i] = encode_flow(flows[i], codec); });

    ensure_dir(image_dir);
    for (std::size_t i = 0; i < images.size(); ++i) {
        fs::path out = image_dir / names[i].filename();
        out.replace_extension(".ppm");
        write_image(images[i], out);
        log_debug("wrote " + out.string());
    }
    log_info("encode: " + std::to_string(flows.size()) + " fields -> " + image_dir.string());
    return 0;
}

static int run_decode(const fs::path& image_dir, const fs::path& flow_dir,
                      const CodecConfig& codec, int workers) {
    codec.validate();
    const std::vector<fs::path> files = list_files(image_dir, {".ppm"});
    if (files.empty())
        throw dimension_error("no .ppm images in " + image_dir.string());
    std::vector<Frame> images;
    images.reserve(files.size());
    for (const fs::path& f : files) images.push_back(read_image(f));

    std::vector<FlowField> flows(images.size());
    parallel_for(images.size(), workers,
                 [&](std::size_t i) { flows[i] = decode_flow(images[i], codec); });

    ensure_dir(flow_dir);
    for (std::size_t i = 0; i < flows.size(); ++i) {
        fs::path out = flow_dir / files[i].filename();
        out.replace_extension(".flo");
        write_flo_file(flows[i], out);
        log_debug("wrote " + out.string());
    }
    log_info("decode: " + std::to_string(images.size()) + " images -> " + flow_dir.string());
    return 0;
}

static int run_trace(const fs::path& flow_dir, const fs::path& out_json, int stride,
                     const std::optional<fs::path>& overlay_path,
                     const std::optional<fs::path>& background_path) {
    const std::vector<FlowField> flows = load_flows(flow_dir, 1);
    const int width = flows[0].width;
    const int height = flows[0].height;

    const auto seeds = grid_seeds(width, height, stride);
    const auto trajectories = trace_points(flows, seeds);

    nlohmann::json j;
    j["width"] = width;
    j["height"] = height;
    j["stride"] = stride;
    j["steps"] = static_cast<int>(flows.size());
    nlohmann::json list = nlohmann::json::array();
    for (const Trajectory& t : trajectories) {
        nlohmann::json points = nlohmann::json::array();
        for (const auto& [x, y] : t.points) points.push_back(nlohmann::json::array({x, y}));
        list.push_back(nlohmann::json{{"seed", {t.seed_point.first, t.seed_point.second}},
                                      {"points", std::move(points)}});
    }
    j["trajectories"] = std::move(list);
    const std::string text = j.dump(2) + "\n";
    write_file(out_json, byte_buffer(text.begin(), text.end()));
    log_info("trace: " + std::to_string(trajectories.size()) + " trajectories -> " +
             out_json.string());

    if (overlay_path) {
        Frame canvas;
        if (background_path) {
            canvas = read_image(*background_path);
            if (canvas.width != width || canvas.height != height)
                throw dimension_error("background image is " + std::to_string(canvas.width) +
                                      "x" + std::to_string(canvas.height) +
                                      ", flow fields are " + std::to_string(width) + "x" +
                                      std::to_string(height));
            if (canvas.channels == 1) {
                Frame rgb(width, height, 3);
                for (int y = 0; y < height; ++y)
                    for (int x = 0; x < width; ++x)
                        for (int c = 0; c < 3; ++c) rgb.at(x, y, c) = canvas.at(x, y, 0);
                canvas = std::move(rgb);
            }
        } else {
            canvas = Frame(width, height, 3, 1.0f);
        }
        for (const Trajectory& t : trajectories) {
            for (std::size_t s = 0; s + 1 < t.points.size(); ++s) {
                const auto [x0, y0] = t.points[s];
                const auto [x1, y1] = t.points[s + 1];
                const int steps =
                    1 + static_cast<int>(std::ceil(std::max(std::abs(x1 - x0), std::abs(y1 - y0))));
                for (int k = 0; k <= steps; ++k) {
                    const double a = static_cast<double>(k) / steps;
                    const int px = static_cast<int>(std::lround(x0 + a * (x1 - x0)));
                    const int py = static_cast<int>(std::lround(y0 + a * (y1 - y0)));
                    if (px < 0 || px >= width || py < 0 || py >= height) continue;
                    canvas.at(px, py, 0) = 1.0f;
                    canvas.at(px, py, 1) = 0.0f;
                    canvas.at(px, py, 2) = 0.0f;
                }
            }
        }
        write_image(canvas, *overlay_path);
        log_info("trace: overlay -> " + overlay_path->string());
    }
    return 0;
}

static int run_pipeline(const fs::path& input_dir, const fs::path& out_dir, const LkConfig& lk,
                        const CompensationConfig& comp, const SelectionConfig& sel,
                        const CodecConfig& codec, bool force_all_pairs, int workers) {
    lk.validate();
    sel.validate();
    codec.validate();

    const auto stage = [](const char* name, auto&& fn) {
        try {
            return fn();
        } catch (const error& e) {
            throw error(std::string(name) + " stage: " + e.what());
        }
    };

    const std::vector<Frame> frames =
        stage("load", [&] { return load_frames(input_dir, 2); });
    comp.validate(frames[0].width, frames[0].height);

    // Selection first: full-resolution flow is the expensive stage, so it
    // only runs on pairs the cheap proxy flags as motion-rich.
    const MotionManifest motion =
        stage("select", [&] { return select_pairs(frames, sel, workers); });

    std::vector<int> processed;
    if (force_all_pairs) {
        processed.resize(frames.size() - 1);
        for (std::size_t t = 0; t < processed.size(); ++t) processed[t] = static_cast<int>(t);
    } else {
        processed = motion.selected;
    }
    log_info("pipeline: processing " + std::to_string(processed.size()) + " of " +
             std::to_string(frames.size() - 1) + " pairs");

    std::vector<Frame> gray;
    gray.reserve(frames.size());
    for (const Frame& f : frames) gray.push_back(to_grayscale(f));

    struct PairOutput {
        FlowField raw;
        FlowField relative;
        Frame encoded;
        CompensationReport report;
    };
    std::vector<PairOutput> outputs(processed.size());

    stage("flow", [&] {
        parallel_for(processed.size(), workers, [&](std::size_t i) {
            const int t = processed[i];
            PairOutput& out = outputs[i];
            out.raw = lucas_kanade_dense(gray[t], gray[t + 1], lk);
            out.raw.source_frame = t;
            out.raw.target_frame = t + 1;

            // Seed by original pair index so the worker count and the
            // selection outcome never change any pair's result.
            CompensationConfig pair_cfg = comp;
            pair_cfg.ransac.seed = derive_seed(comp.ransac.seed, static_cast<std::uint64_t>(t));
            auto [relative, report] = compensate_flow(out.raw, pair_cfg);
            out.relative = std::move(relative);
            out.report = report;
            out.encoded = encode_flow(out.relative, codec);
        });
        return 0;
    });

    stage("write", [&] {
        ensure_dir(out_dir);
        ensure_dir(out_dir / "flow");
        ensure_dir(out_dir / "relative");
        ensure_dir(out_dir / "encoded");
        for (std::size_t i = 0; i < processed.size(); ++i) {
            const int t = processed[i];
            write_flo_file(outputs[i].raw, out_dir / "flow" / pair_name(t, ".flo"));
            write_flo_file(outputs[i].relative, out_dir / "relative" / pair_name(t, ".flo"));
            write_image(outputs[i].encoded, out_dir / "encoded" / pair_name(t, ".ppm"));
        }

        ManifestDocument manifest;
        manifest.source = input_dir.string();
        manifest.frame_count = static_cast<int>(frames.size());
        manifest.codec = codec;
        manifest.compensation = comp;
        manifest.selection = sel;
        manifest.motion = motion;
        for (std::size_t i = 0; i < processed.size(); ++i)
            manifest.reports.push_back(
                {processed[i], outputs[i].report.valid, outputs[i].report.inlier_count});
        write_manifest(manifest, out_dir / "manifest.json");
        return 0;
    });

    log_info("pipeline: done -> " + out_dir.string());
    return 0;
}

// ---------------------------------------------------------------------------
// main
// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
    g_log_level = log_level_from_env();

    CLI::App app{
        "flowforge — video motion preprocessing: dense optical flow, camera-motion "
        "compensation, motion-aware frame selection, flow<->RGB codec, trajectory tracing"};
    app.require_subcommand(1);
    // Let global options (--workers) appear after the subcommand's own
    // arguments: unmatched subcommand tokens fall through to the parent.
    app.fallthrough();

    int workers = 1;
    app.add_option("--workers", workers, "Worker thread count")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);

    // --- flow ---------------------------------------------------------------
    auto* cmd_flow = app.add_subcommand("flow", "Dense optical flow per consecutive frame pair");
    fs::path flow_in, flow_out;
    cmd_flow->add_option("input_dir", flow_in, "Directory of ordered frames (.ppm/.pgm)")
        ->required();
    cmd_flow->add_option("out_dir", flow_out, "Output directory for .flo files")->required();
    LkFlags flow_lk;
    flow_lk.attach(cmd_flow);

    // --- compensate -----------------------------------------------------------
    auto* cmd_comp = app.add_subcommand("compensate",
                                        "Remove camera motion from flow fields (relative flow)");
    fs::path comp_in, comp_out;
    fs::path comp_manifest;
    cmd_comp->add_option("flow_dir", comp_in, "Directory of .flo files")->required();
    cmd_comp->add_option("out_dir", comp_out, "Output directory for compensated .flo files")
        ->required();
    cmd_comp->add_option("--manifest", comp_manifest,
                         "Manifest path (default: <out_dir>/manifest.json)");
    CompensationFlags comp_flags;
    comp_flags.attach(cmd_comp);

    // --- select ---------------------------------------------------------------
    auto* cmd_sel = app.add_subcommand("select", "Motion-aware frame-pair selection");
    fs::path sel_in, sel_manifest;
    cmd_sel->add_option("input_dir", sel_in, "Directory of ordered frames (.ppm/.pgm)")
        ->required();
    cmd_sel->add_option("manifest_out", sel_manifest, "Manifest output path")->required();
    SelectionFlags sel_flags;
    sel_flags.attach(cmd_sel);

    // --- encode / decode --------------------------------------------------------
    auto* cmd_enc = app.add_subcommand("encode", "Encode .flo fields as RGB images");
    fs::path enc_in, enc_out;
    cmd_enc->add_option("flow_dir", enc_in, "Directory of .flo files")->required();
    cmd_enc->add_option("image_dir", enc_out, "Output directory for .ppm images")->required();
    CodecConfig enc_codec;
    cmd_enc->add_option("--eta", enc_codec.eta, "Magnitude normalization in pixels")
        ->capture_default_str();

    auto* cmd_dec = app.add_subcommand("decode", "Decode RGB images back to .flo fields");
    fs::path dec_in, dec_out;
    cmd_dec->add_option("image_dir", dec_in, "Directory of encoded .ppm images")->required();
    cmd_dec->add_option("flow_dir", dec_out, "Output directory for .flo files")->required();
    CodecConfig dec_codec;
    cmd_dec->add_option("--eta", dec_codec.eta, "Magnitude normalization in pixels")
        ->capture_default_str();

    // --- trace ----------------------------------------------------------------
    auto* cmd_trc = app.add_subcommand("trace", "Trace point trajectories through a flow sequence");
    fs::path trc_in, trc_out;
    int trc_stride = 8;
    std::optional<fs::path> trc_overlay, trc_background;
    cmd_trc->add_option("flow_dir", trc_in, "Directory of .flo files")->required();
    cmd_trc->add_option("--out", trc_out, "Trajectory JSON output path")->required();
    cmd_trc->add_option("--stride", trc_stride, "Seed-grid stride in pixels")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd_trc->add_option("--overlay", trc_overlay, "Rasterize trajectories to this .ppm");
    cmd_trc->add_option("--background", trc_background,
                        "Background image for the overlay (default: white canvas)");

    // --- pipeline ---------------------------------------------------------------
    auto* cmd_pipe = app.add_subcommand(
        "pipeline", "Full preprocessing: select -> flow -> compensate -> encode");
    fs::path pipe_in, pipe_out;
    bool force_all_pairs = false;
    cmd_pipe->add_option("input_dir", pipe_in, "Directory of ordered frames (.ppm/.pgm)")
        ->required();
    cmd_pipe->add_option("out_dir", pipe_out, "Output directory for the artifact tree")
        ->required();
    cmd_pipe->add_flag("--force-all-pairs", force_all_pairs,
                       "Run full-resolution flow on every pair, not only selected ones");
    LkFlags pipe_lk;
    pipe_lk.attach(cmd_pipe);
    CompensationFlags pipe_comp;
    pipe_comp.attach(cmd_pipe);
    SelectionFlags pipe_sel;
    pipe_sel.attach(cmd_pipe);
    CodecConfig pipe_codec;
    cmd_pipe->add_option("--eta", pipe_codec.eta, "Magnitude normalization in pixels")
        ->capture_default_str();

    try {
        app.parse(argc, argv);

        if (cmd_flow->parsed())
            return run_flow(flow_in, flow_out, flow_lk.cfg, workers);
        if (cmd_comp->parsed()) {
            const fs::path manifest =
                comp_manifest.empty() ? comp_out / "manifest.json" : comp_manifest;
            return run_compensate(comp_in, comp_out, comp_flags.cfg, manifest, workers);
        }
        if (cmd_sel->parsed())
            return run_select(sel_in, sel_manifest, sel_flags.cfg, workers);
        if (cmd_enc->parsed())
            return run_encode(enc_in, enc_out, enc_codec, workers);
        if (cmd_dec->parsed())
            return run_decode(dec_in, dec_out, dec_codec, workers);
        if (cmd_trc->parsed())
            return run_trace(trc_in, trc_out, trc_stride, trc_overlay, trc_background);
        if (cmd_pipe->parsed())
            return run_pipeline(pipe_in, pipe_out, pipe_lk.cfg, pipe_comp.cfg, pipe_sel.cfg,
                                pipe_codec, force_all_pairs, workers);
        log_error("no subcommand given");
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const config_error& e) {
        log_error(std::string("invalid configuration: ") + e.what());
        return 1;
    } catch (const error& e) {
        log_error(e.what());
        return 2;
    } catch (const std::exception& e) {
        log_error(std::string("internal error: ") + e.what());
        return 3;
    }
}
