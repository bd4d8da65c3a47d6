#ifndef FLOWFORGE_SEQUENCEIDS_HPP
#define FLOWFORGE_SEQUENCEIDS_HPP

#include <string>
#include <utility>
#include <vector>

#include "flowforge/core.hpp"

namespace flowforge {

// ============================================================================
// Types
// ============================================================================

/// Token layout of one model sequence: a run of text tokens followed by a
/// series of frames, each frame a (rows, cols) patch grid. Input and output
/// frames are concatenated in order and share one shift counter.
struct SequenceLayout {
    int text_len = 0;
    std::vector<std::pair<int, int>> frames;  // (rows, cols) per frame

    void validate() const {
        if (text_len < 0)
            throw config_error("SequenceLayout: text_len must be non-negative");
        for (std::size_t j = 0; j < frames.size(); ++j)
            if (frames[j].first < 1 || frames[j].second < 1)
                throw config_error("SequenceLayout: frame " + std::to_string(j) +
                                   " grid must be at least 1x1");
    }
};

/// Three-axis position index: a temporal shift plus a spatial (row, col)
/// within the token's frame grid. Text tokens sit on the shift axis alone.
struct PositionId {
    int shift = 0;
    int row = 0;
    int col = 0;

    bool operator==(const PositionId&) const = default;
};

// ============================================================================
// Assignment
// ============================================================================

/// Text token i receives (i, 0, 0). Frame j's tokens all share
/// shift = text_len + j — the shift advances once per frame, never within
/// one — and enumerate the frame's grid row-major. Output order is text
/// tokens first, then frames in layout order.
inline std::vector<PositionId> assign_position_ids(const SequenceLayout& layout) {
    layout.validate();
    std::vector<PositionId> ids;
    std::size_t total = static_cast<std::size_t>(layout.text_len);
    for (const auto& [rows, cols] : layout.frames)
        total += static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    ids.reserve(total);

    for (int i = 0; i < layout.text_len; ++i) ids.push_back({i, 0, 0});
    for (std::size_t j = 0; j < layout.frames.size(); ++j) {
        const int shift = layout.text_len + static_cast<int>(j);
        const auto [rows, cols] = layout.frames[j];
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) ids.push_back({shift, r, c});
    }
    return ids;
}

}  // namespace flowforge

#endif
