// Acceptance gate: one [PASS]/[FAIL] line per criterion, details indented
// beneath each verdict. Exits nonzero if any criterion fails. argv[1] must
// name the CLI binary (used by the end-to-end criterion).

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "flowforge/flowforge.hpp"
#include "synthetic.hpp"

using namespace flowforge;
namespace fs = std::filesystem;
using clock_type = std::chrono::steady_clock;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Criterion {
    int number = 0;
    std::string title{};
    bool passed = true;
    std::vector<std::string> details{};

    void note(const std::string& line) { details.push_back(line); }
    void check(bool ok, const std::string& line) {
        if (!ok) passed = false;
        details.push_back(std::string(ok ? "ok   " : "FAIL ") + line);
    }
};

std::string fmt(double v, int precision = 4) {
    std::ostringstream os;
    os.precision(precision);
    os << std::fixed << v;
    return os.str();
}

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

double angle_error_deg(float u0, float v0, float u1, float v1) {
    const double a0 = std::atan2(static_cast<double>(v0), static_cast<double>(u0));
    const double a1 = std::atan2(static_cast<double>(v1), static_cast<double>(u1));
    double d = std::abs(a0 - a1);
    if (d > kPi) d = 2.0 * kPi - d;
    return d * 180.0 / kPi;
}

/// Write/read through the 8-bit image quantizer without touching disk.
Frame quantize_frame(const Frame& img) {
    Frame out = img;
    for (float& v : out.pixels)
        v = static_cast<float>(flowforge::detail::quantize_8bit(v)) / 255.0f;
    return out;
}

int run_command(const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    if (WIFEXITED(status)) return WEXITSTATUS(status);
    return -1;
}

std::vector<fs::path> tree_files(const fs::path& root) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(root))
        if (entry.is_regular_file()) files.push_back(fs::relative(entry.path(), root));
    std::sort(files.begin(), files.end());
    return files;
}

bool trees_identical(const fs::path& a, const fs::path& b, std::string& why) {
    const auto fa = tree_files(a);
    const auto fb = tree_files(b);
    if (fa != fb) {
        why = "file lists differ (" + std::to_string(fa.size()) + " vs " +
              std::to_string(fb.size()) + " files)";
        return false;
    }
    for (const fs::path& rel : fa) {
        if (read_file(a / rel) != read_file(b / rel)) {
            why = "byte mismatch in " + rel.string();
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Criterion 1: camera-only compensation cancels to exact zero
// ---------------------------------------------------------------------------

Criterion criterion_camera_only() {
    Criterion c{1, "camera-only compensation: 50 random homographies cancel to exact (0,0)"};
    const auto start = clock_type::now();

    std::mt19937_64 rng(1001);
    int fields_ok = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const Homography h = synthetic::random_homography(rng);
        const FlowField raw = camera_flow(h, 128, 128);
        const auto [out, report] = compensate_flow(raw, CompensationConfig{});
        bool all_zero = report.valid;
        if (all_zero)
            for (std::size_t i = 0; i < out.size(); ++i)
                if (out.u[i] != 0.0f || out.v[i] != 0.0f) {
                    all_zero = false;
                    break;
                }
        if (all_zero) ++fields_ok;
    }
    const double elapsed = seconds_since(start);
    c.check(fields_ok == 50, "fields fully zeroed with a valid model: " +
                                 std::to_string(fields_ok) + "/50");
    c.check(elapsed < 30.0, "runtime " + fmt(elapsed, 2) + " s (limit 30 s)");
    return c;
}

// ---------------------------------------------------------------------------
// Criterion 2: pan + independently moving patch separate cleanly
// ---------------------------------------------------------------------------

Criterion criterion_patch_separation() {
    Criterion c{2, "camera+object separation: pan (+4,0), 16x16 patch moving an extra (+6,0)"};
    const auto scene = synthetic::pan_patch_flow(128, 128, 4.0f, 0.0f, 6.0f, 0.0f, 56, 56, 16);
    const auto [out, report] = compensate_flow(scene.flow, CompensationConfig{});

    c.check(report.valid, "homography model found");
    std::size_t background = 0, background_zero = 0, patch_count = 0;
    double sum_u = 0.0, sum_v = 0.0;
    for (int y = 0; y < out.height; ++y) {
        for (int x = 0; x < out.width; ++x) {
            const std::size_t i = out.index(x, y);
            if (scene.in_patch(x, y)) {
                sum_u += out.u[i];
                sum_v += out.v[i];
                ++patch_count;
            } else {
                ++background;
                if (out.u[i] == 0.0f && out.v[i] == 0.0f) ++background_zero;
            }
        }
    }
    const double zero_fraction =
        static_cast<double>(background_zero) / static_cast<double>(background);
    const double mean_u = sum_u / static_cast<double>(patch_count);
    const double mean_v = sum_v / static_cast<double>(patch_count);
    c.check(zero_fraction >= 0.95,
            "background exactly zero at " + fmt(100.0 * zero_fraction, 2) + "% (need >= 95%)");
    c.check(std::abs(mean_u - 6.0) < 0.5 && std::abs(mean_v) < 0.5,
            "patch mean flow (" + fmt(mean_u) + ", " + fmt(mean_v) +
                "), within 0.5 px of (6, 0)");
    return c;
}

// ---------------------------------------------------------------------------
// Criterion 3: robust estimation under 30% outliers, deterministic
// ---------------------------------------------------------------------------

Criterion criterion_ransac() {
    Criterion c{3, "robust homography: 70 inliers / 30 outliers, deterministic reruns"};
    std::mt19937_64 rng(1003);
    const Homography truth = synthetic::random_homography(rng);
    Correspondences pts = synthetic::exact_correspondences(truth, 70, rng);
    synthetic::append_outliers(pts, 30, rng);

    RansacConfig cfg;
    cfg.seed = 17;
    const auto first = ransac_homography(pts, cfg);
    c.check(first.has_value(), "model found");
    if (!first) return c;

    double worst = 0.0;
    for (int i = 0; i < 70; ++i) {
        const auto [px, py] = project(first->homography, pts.p0[i].first, pts.p0[i].second);
        worst = std::max(worst, std::hypot(px - pts.p1[i].first, py - pts.p1[i].second));
    }
    c.check(worst < 5.0, "worst true-inlier reprojection " + fmt(worst) + " px (limit 5.0)");

    bool identical = true;
    for (int rerun = 0; rerun < 3; ++rerun) {
        const auto again = ransac_homography(pts, cfg);
        if (!again || again->homography.m != first->homography.m ||
            again->inlier_mask != first->inlier_mask)
            identical = false;
    }
    c.check(identical, "3 reruns bit-identical (matrix and inlier mask)");
    return c;
}

// ---------------------------------------------------------------------------
// Criterion 4: motion-aware pair selection on the 12-frame fixture
// ---------------------------------------------------------------------------

Criterion criterion_selection() {
    Criterion c{4, "frame selection: 12-frame fixture, 4 static / 7 moving pairs"};
    const synthetic::SceneTwelve scene = synthetic::scene_twelve(1004, false);
    const MotionManifest m = select_pairs(scene.frames, SelectionConfig{});

    std::ostringstream got;
    for (int p : m.selected) got << p << " ";
    c.check(m.selected == scene.moving_pairs,
            "selected pairs {" + got.str() + "} equal the moving pairs {2..8}");

    bool static_zero = true;
    for (const auto& [pair, proxy] : m.pair_proxies) {
        const bool moving = std::find(scene.moving_pairs.begin(), scene.moving_pairs.end(),
                                      pair) != scene.moving_pairs.end();
        if (!moving && proxy != 0.0f) static_zero = false;
    }
    c.check(static_zero, "static pairs report a proxy of exactly 0");

    std::mt19937_64 rng(1014);
    std::uniform_int_distribution<int> size_dist(1, 300);
    std::uniform_real_distribution<float> value(0.0f, 100.0f);
    std::uniform_real_distribution<double> k_dist(0.01, 100.0);
    int oracle_ok = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<float> values(size_dist(rng));
        for (auto& v : values) v = value(rng);
        const double k = k_dist(rng);

        std::vector<float> sorted = values;
        std::sort(sorted.begin(), sorted.end(), std::greater<float>());
        const auto rank = std::clamp<std::size_t>(
            static_cast<std::size_t>(std::ceil(k / 100.0 * values.size())), 1, values.size());
        if (top_percentile(values, k) == sorted[rank - 1]) ++oracle_ok;
    }
    c.check(oracle_ok == 1000,
            "percentile matches the full-sort oracle on " + std::to_string(oracle_ok) +
                "/1000 random arrays");
    return c;
}

// ---------------------------------------------------------------------------
// Criterion 5: flow codec round-trip error bounds
// ---------------------------------------------------------------------------

Criterion criterion_codec() {
    Criterion c{5, "flow codec (eta=64): float and 8-bit round-trip error bounds"};
    const CodecConfig cfg;
    const float eta = cfg.eta;

    // Float-precision round trip over the representable magnitude range.
    {
        std::mt19937_64 rng(1005);
        std::uniform_real_distribution<float> angle(0.0f, 6.2831853f);
        std::uniform_real_distribution<float> mag(eta / 255.0f, eta);
        FlowField f(128, 80);
        for (std::size_t i = 0; i < f.size(); ++i) {
            const float a = angle(rng), m = mag(rng);
            f.u[i] = m * std::cos(a);
            f.v[i] = m * std::sin(a);
        }
        const FlowField back = decode_flow(encode_flow(f, cfg), cfg);
        float worst = 0.0f;
        for (std::size_t i = 0; i < f.size(); ++i) {
            worst = std::max(worst, std::abs(back.u[i] - f.u[i]));
            worst = std::max(worst, std::abs(back.v[i] - f.v[i]));
        }
        c.check(worst < 1e-4f,
                "float round-trip worst component error " + fmt(worst, 7) + " px (limit 1e-4)");
    }

    // 8-bit round trip: dense magnitude/angle sweep of the [2, eta] range.
    {
        const int n_mags = 311;
        const int n_angles = 720;
        FlowField f(n_angles, n_mags);
        std::vector<float> mags(n_mags);
        for (int r = 0; r < n_mags; ++r)
            mags[r] = 2.0f + (eta - 2.0f) * static_cast<float>(r) / (n_mags - 1);
        for (int r = 0; r < n_mags; ++r) {
            for (int a = 0; a < n_angles; ++a) {
                const float phi = static_cast<float>(2.0 * kPi * a / n_angles - kPi);
                f.at_u(a, r) = mags[r] * std::cos(phi);
                f.at_v(a, r) = mags[r] * std::sin(phi);
            }
        }
        const Frame encoded = encode_flow(f, cfg);
        const FlowField back = decode_flow(quantize_frame(encoded), cfg);

        float worst_mag = 0.0f;
        double worst_angle = 0.0;
        float worst_angle_mag = 0.0f;
        std::vector<double> row_worst(n_mags, 0.0);
        for (int r = 0; r < n_mags; ++r) {
            for (int a = 0; a < n_angles; ++a) {
                const std::size_t i = f.index(a, r);
                const float m0 = std::hypot(f.u[i], f.v[i]);
                const float m1 = std::hypot(back.u[i], back.v[i]);
                worst_mag = std::max(worst_mag, std::abs(m1 - m0));
                const double ae = angle_error_deg(f.u[i], f.v[i], back.u[i], back.v[i]);
                row_worst[r] = std::max(row_worst[r], ae);
                if (ae > worst_angle) {
                    worst_angle = ae;
                    worst_angle_mag = m0;
                }
            }
        }
        c.check(worst_mag <= eta / 255.0f + 0.25f,
                "8-bit magnitude error " + fmt(worst_mag) + " px (limit " +
                    fmt(eta / 255.0f + 0.25f) + ")");
        c.check(worst_angle <= 2.0,
                "8-bit angle error " + fmt(worst_angle, 3) + " deg at |f|=" +
                    fmt(worst_angle_mag, 2) + " px (limit 2 deg for |f| >= 2 px)");
        if (worst_angle > 2.0) {
            // Hue lives in the saturation channel's quantization grid: at
            // |f| = 2 the saturation byte is only round(255*2/64) = 8, so the
            // decoded angle moves in steps of ~60/8 deg and a 2-degree bound
            // is unreachable until the saturation grid is fine enough, near
            // |f| ~ 60*eta/510 = 7.5 px. Reported for the record:
            double empirical = mags.back();
            for (int r = n_mags - 1; r >= 0; --r) {
                if (row_worst[r] > 2.0) break;
                empirical = mags[r];
            }
            c.note("     angle <= 2 deg holds empirically for |f| >= " + fmt(empirical, 2) +
                   " px (8-bit hue resolution scales with saturation; bound is not " +
                   "attainable at |f| = 2 with eta = 64)");
        }
    }

    // Constant-value channel: every encoded pixel's max component is 1.
    {
        const FlowField f = synthetic::random_flow(64, 64, 200.0f, 1015);
        const Frame img = encode_flow(f, cfg);
        bool all_one = true;
        for (int y = 0; y < img.height; ++y)
            for (int x = 0; x < img.width; ++x)
                if (std::max({img.at(x, y, 0), img.at(x, y, 1), img.at(x, y, 2)}) != 1.0f)
                    all_one = false;
        c.check(all_one, "every encoded pixel has max channel exactly 1");
    }
    return c;
}

// ---------------------------------------------------------------------------
// Criterion 6: dense flow recovers integer translations
// ---------------------------------------------------------------------------

Criterion criterion_lucas_kanade() {
    Criterion c{6, "dense flow: integer translations up to 8 px on textured 128x128"};
    const auto start = clock_type::now();
    const std::vector<std::pair<int, int>> shifts = {{1, 0}, {0, 2}, {3, 0},
                                                     {4, -2}, {0, -4}, {8, 0}};
    const int margin = 16;
    bool all_ok = true;
    for (std::size_t s = 0; s < shifts.size(); ++s) {
        const auto [dx, dy] = shifts[s];
        const synthetic::Texture tex(2000 + s, 8, 24.0, 120.0);
        const Frame a = tex.frame(128, 128, 0.0, 0.0);
        const Frame b = tex.frame(128, 128, dx, dy);
        const FlowField flow = lucas_kanade_dense(a, b, LkConfig{});

        std::size_t total = 0, good = 0;
        for (int y = margin; y < 128 - margin; ++y) {
            for (int x = margin; x < 128 - margin; ++x) {
                ++total;
                const float eu = flow.at_u(x, y) - static_cast<float>(dx);
                const float ev = flow.at_v(x, y) - static_cast<float>(dy);
                if (std::hypot(eu, ev) <= 0.5f) ++good;
            }
        }
        const double fraction = static_cast<double>(good) / static_cast<double>(total);
        const bool ok = fraction >= 0.8;
        all_ok = all_ok && ok;
        c.check(ok, "shift (" + std::to_string(dx) + "," + std::to_string(dy) + "): " +
                        fmt(100.0 * fraction, 1) + "% of interior within 0.5 px (need 80%)");
    }
    c.note("     elapsed " + fmt(seconds_since(start), 2) + " s");
    (void)all_ok;
    return c;
}

// ---------------------------------------------------------------------------
// Criterion 7: position ids unique, monotone, complete
// ---------------------------------------------------------------------------

Criterion criterion_position_ids() {
    Criterion c{7, "position ids: unique, shift-monotone, complete up to 16 frames"};
    const std::vector<std::pair<int, int>> grid_cycle = {{2, 3}, {1, 1}, {4, 4}, {3, 2}, {5, 1}};
    bool all_unique = true, all_monotone = true, all_complete = true;
    int layouts = 0;

    for (int text_len : {0, 1, 7}) {
        for (int n_frames = 0; n_frames <= 16; ++n_frames) {
            SequenceLayout layout;
            layout.text_len = text_len;
            for (int j = 0; j < n_frames; ++j)
                layout.frames.push_back(grid_cycle[j % grid_cycle.size()]);
            const auto ids = assign_position_ids(layout);
            ++layouts;

            std::set<std::tuple<int, int, int>> triples;
            for (const auto& id : ids) triples.emplace(id.shift, id.row, id.col);
            if (triples.size() != ids.size()) all_unique = false;

            // One strictly increasing shift per frame, starting after the text.
            std::size_t cursor = static_cast<std::size_t>(text_len);
            int previous_shift = text_len - 1;
            for (int j = 0; j < n_frames; ++j) {
                const auto [rows, cols] = layout.frames[j];
                const std::size_t count = static_cast<std::size_t>(rows) * cols;
                const int shift = ids[cursor].shift;
                if (shift <= previous_shift) all_monotone = false;
                previous_shift = shift;

                std::set<std::pair<int, int>> cells;
                for (std::size_t t = 0; t < count; ++t) {
                    if (ids[cursor + t].shift != shift) all_monotone = false;
                    cells.emplace(ids[cursor + t].row, ids[cursor + t].col);
                }
                if (cells.size() != count) all_complete = false;
                if (!cells.empty() &&
                    (*cells.begin() != std::pair{0, 0} ||
                     *cells.rbegin() != std::pair{rows - 1, cols - 1}))
                    all_complete = false;
                cursor += count;
            }
        }
    }
    c.check(all_unique, "all triples unique across " + std::to_string(layouts) + " layouts");
    c.check(all_monotone, "frame shifts strictly increasing, constant within a frame");
    c.check(all_complete, "every frame grid fully enumerated");
    return c;
}

// ---------------------------------------------------------------------------
// Criterion 8: trajectory tracing exactness
// ---------------------------------------------------------------------------

Criterion criterion_trace() {
    Criterion c{8, "trajectory tracing: 50-step exactness and bilinear fixture"};

    FlowField constant(64, 64);
    std::fill(constant.u.begin(), constant.u.end(), 0.5f);
    std::fill(constant.v.begin(), constant.v.end(), -0.25f);
    const std::vector<FlowField> fifty(50, constant);
    const auto trajectories = trace_points(fifty, {{2.0, 60.0}});
    const auto last = trajectories[0].points.back();
    c.check(last.first == 2.0 + 50 * 0.5 && last.second == 60.0 - 50 * 0.25,
            "50 constant steps land exactly at (" + fmt(last.first, 1) + ", " +
                fmt(last.second, 1) + ") — machine-precision equality");

    FlowField split(20, 20);
    for (int y = 0; y < 20; ++y)
        for (int x = 0; x < 20; ++x) {
            if (x < 10)
                split.at_u(x, y) = 1.0f;
            else
                split.at_v(x, y) = 1.0f;
        }
    const auto stepped = trace_points({split}, {{9.5, 5.0}});
    const auto p = stepped[0].points[1];
    // Hand evaluation: the sample sits halfway between column 9 with flow
    // (1,0) and column 10 with flow (0,1), so the step is (0.5, 0.5).
    c.check(p.first == 10.0 && p.second == 5.5,
            "bilinear straddle step lands exactly at (10, 5.5), got (" + fmt(p.first, 4) +
                ", " + fmt(p.second, 4) + ")");
    return c;
}

// ---------------------------------------------------------------------------
// Criterion 9: file formats round-trip bit-exact, errors classed correctly
// ---------------------------------------------------------------------------

Criterion criterion_storage() {
    Criterion c{9, "file formats: 1000 random round trips, error classification"};
    std::mt19937_64 rng(1009);
    std::uniform_int_distribution<int> dim(1, 24);

    int flo_ok = 0;
    for (int trial = 0; trial < 600; ++trial) {
        const FlowField f = synthetic::random_flow(dim(rng), dim(rng), 100.0f, rng());
        const byte_buffer bytes = write_flo(f);
        const FlowField back = read_flo(bytes);
        if (write_flo(back) == bytes && back.u == f.u && back.v == f.v) ++flo_ok;
    }
    c.check(flo_ok == 600, "flow files bit-exact on " + std::to_string(flo_ok) + "/600");

    std::uniform_real_distribution<float> uf(0.01f, 64.0f);
    std::uniform_real_distribution<double> ud(0.01, 0.99);
    std::uniform_int_distribution<int> ui(1, 4000);
    int manifest_ok = 0;
    for (int trial = 0; trial < 400; ++trial) {
        ManifestDocument m;
        m.source = "run_" + std::to_string(trial);
        m.frame_count = ui(rng);
        m.codec.eta = uf(rng);
        m.compensation.stride = ui(rng) % 64 + 1;
        m.compensation.noise_threshold = uf(rng);
        m.compensation.thresholding_enabled = (trial & 1) != 0;
        m.compensation.ransac.reproj_threshold = ud(rng) * 20.0;
        m.compensation.ransac.iterations = ui(rng);
        m.compensation.ransac.seed = rng();
        m.compensation.ransac.min_inliers = ui(rng) % 100 + 1;
        m.compensation.ransac.min_inlier_fraction = ud(rng);
        m.selection.top_k_percent = ud(rng) * 100.0;
        m.selection.threshold_px = uf(rng);
        m.selection.lk.min_eigenvalue = uf(rng) * 1e-5f;
        const int pairs = ui(rng) % 12;
        for (int p = 0; p < pairs; ++p) {
            m.motion.pair_proxies.emplace_back(p, uf(rng));
            if (p % 2 == 0) m.motion.selected.push_back(p);
            m.reports.push_back({p, p % 2 == 0, ui(rng) % 200});
        }
        const std::string text = serialize_manifest(m);
        const ManifestDocument back = parse_manifest(text);
        if (back == m && serialize_manifest(back) == text) ++manifest_ok;
    }
    c.check(manifest_ok == 400,
            "manifests bit-exact on " + std::to_string(manifest_ok) + "/400");

    // Error classification.
    byte_buffer bad_magic = write_flo(FlowField(2, 2));
    bad_magic[0] = 'X';
    bool magic_ok = false;
    try {
        read_flo(bad_magic);
    } catch (const length_error&) {
    } catch (const format_error&) {
        magic_ok = true;
    }
    c.check(magic_ok, "bad magic rejected as a format error (not a length error)");

    byte_buffer truncated = write_flo(FlowField(2, 2));
    truncated.resize(truncated.size() - 4);
    bool trunc_ok = false;
    try {
        read_flo(truncated);
    } catch (const length_error&) {
        trunc_ok = true;
    } catch (const format_error&) {
    }
    c.check(trunc_ok, "truncation rejected as a length error");

    bool version_ok = false;
    try {
        parse_manifest("{\"version\": \"99\"}");
    } catch (const compatibility_error&) {
        version_ok = true;
    } catch (const format_error&) {
    }
    c.check(version_ok, "unknown manifest version rejected as a compatibility error");

    bool missing_ok = false;
    try {
        parse_manifest("{\"frame_count\": 3}");
    } catch (const compatibility_error&) {
        missing_ok = true;
    } catch (const format_error&) {
    }
    c.check(missing_ok, "missing manifest version rejected as a compatibility error");
    return c;
}

// ---------------------------------------------------------------------------
// Criterion 10: end-to-end CLI determinism across worker counts
// ---------------------------------------------------------------------------

Criterion criterion_pipeline(const std::string& cli) {
    Criterion c{10, "end-to-end: byte-identical trees for --workers 1 vs 8, repeated runs"};
    if (cli.empty()) {
        c.check(false, "CLI binary path missing (pass it as argv[1])");
        return c;
    }

    const fs::path root = fs::temp_directory_path() / "flowforge_acceptance";
    fs::remove_all(root);
    const fs::path frames = root / "frames";
    fs::create_directories(frames);

    const synthetic::SceneTwelve scene = synthetic::scene_twelve(1010, true);
    for (std::size_t i = 0; i < scene.frames.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "frame_%02d.pgm", static_cast<int>(i));
        write_image(scene.frames[i], frames / name);
    }

    const auto pipeline = [&](const std::string& out, int workers) {
        const std::string cmd = "FLOWFORGE_LOG=error " + cli + " pipeline " + frames.string() +
                                " " + (root / out).string() + " --seed 42 --workers " +
                                std::to_string(workers);
        return run_command(cmd);
    };

    const auto start = clock_type::now();
    const int rc1 = pipeline("w1", 1);
    const double serial_elapsed = seconds_since(start);
    const int rc8a = pipeline("w8a", 8);
    const int rc8b = pipeline("w8b", 8);

    c.check(rc1 == 0 && rc8a == 0 && rc8b == 0,
            "three pipeline runs exited 0 (got " + std::to_string(rc1) + ", " +
                std::to_string(rc8a) + ", " + std::to_string(rc8b) + ")");
    if (rc1 == 0 && rc8a == 0 && rc8b == 0) {
        std::string why;
        const bool same_workers = trees_identical(root / "w1", root / "w8a", why);
        c.check(same_workers, same_workers
                                  ? "--workers 1 and --workers 8 trees byte-identical"
                                  : "--workers 1 vs 8: " + why);
        const bool same_rerun = trees_identical(root / "w8a", root / "w8b", why);
        c.check(same_rerun, same_rerun ? "repeated runs byte-identical"
                                       : "repeated runs: " + why);
        c.note("     " + std::to_string(tree_files(root / "w1").size()) +
               " files per output tree");
    }
    c.check(serial_elapsed < 60.0,
            "single-worker run took " + fmt(serial_elapsed, 2) + " s (limit 60 s)");
    fs::remove_all(root);
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";

    std::vector<Criterion> results;
    const std::vector<std::function<Criterion()>> table = {
        [] { return criterion_camera_only(); },
        [] { return criterion_patch_separation(); },
        [] { return criterion_ransac(); },
        [] { return criterion_selection(); },
        [] { return criterion_codec(); },
        [] { return criterion_lucas_kanade(); },
        [] { return criterion_position_ids(); },
        [] { return criterion_trace(); },
        [] { return criterion_storage(); },
        [&] { return criterion_pipeline(cli); },
    };

    int failures = 0;
    for (std::size_t i = 0; i < table.size(); ++i) {
        Criterion c{static_cast<int>(i) + 1, "criterion"};
        try {
            c = table[i]();
        } catch (const std::exception& e) {
            c.passed = false;
            c.details.push_back(std::string("FAIL unexpected exception: ") + e.what());
        }
        if (!c.passed) ++failures;
        std::cout << (c.passed ? "[PASS] " : "[FAIL] ") << c.number << ". " << c.title << "\n";
        for (const std::string& line : c.details) std::cout << "       " << line << "\n";
    }

    std::cout << "\n"
              << (10 - failures) << "/10 criteria passed"
              << (failures ? " — " + std::to_string(failures) + " failed" : "") << "\n";
    return failures == 0 ? 0 : 1;
}
