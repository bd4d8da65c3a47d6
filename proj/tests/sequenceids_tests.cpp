#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <tuple>
#include <vector>

#include "flowforge/sequenceids.hpp"

using namespace flowforge;

TEST_CASE("text-only layouts walk the shift axis") {
    SequenceLayout layout;
    layout.text_len = 3;
    const auto ids = assign_position_ids(layout);
    const std::vector<PositionId> expected = {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}};
    REQUIRE(ids == expected);
}

TEST_CASE("an empty layout yields no ids") {
    REQUIRE(assign_position_ids(SequenceLayout{}).empty());
}

TEST_CASE("a single 1x2 frame with no text starts at shift 0") {
    SequenceLayout layout;
    layout.frames = {{1, 2}};
    const auto ids = assign_position_ids(layout);
    const std::vector<PositionId> expected = {{0, 0, 0}, {0, 0, 1}};
    REQUIRE(ids == expected);
}

TEST_CASE("frames advance the shift once each and enumerate row-major") {
    SequenceLayout layout;
    layout.text_len = 2;
    layout.frames = {{2, 2}, {2, 2}};
    const auto ids = assign_position_ids(layout);
    REQUIRE(ids.size() == 2 + 4 + 4);

    // Text tokens.
    REQUIRE(ids[0] == PositionId{0, 0, 0});
    REQUIRE(ids[1] == PositionId{1, 0, 0});

    // First frame: all at shift 2, grid in row-major order.
    const std::vector<PositionId> frame0(ids.begin() + 2, ids.begin() + 6);
    const std::vector<PositionId> expected0 = {{2, 0, 0}, {2, 0, 1}, {2, 1, 0}, {2, 1, 1}};
    REQUIRE(frame0 == expected0);

    // Second frame: same grid, shift advanced by exactly one.
    const std::vector<PositionId> frame1(ids.begin() + 6, ids.end());
    const std::vector<PositionId> expected1 = {{3, 0, 0}, {3, 0, 1}, {3, 1, 0}, {3, 1, 1}};
    REQUIRE(frame1 == expected1);
}

TEST_CASE("ids are unique and complete over a mixed layout") {
    SequenceLayout layout;
    layout.text_len = 5;
    layout.frames = {{3, 4}, {2, 2}, {1, 6}};
    const auto ids = assign_position_ids(layout);
    REQUIRE(ids.size() == 5u + 12u + 4u + 6u);

    std::set<std::tuple<int, int, int>> unique;
    for (const auto& id : ids) unique.emplace(id.shift, id.row, id.col);
    REQUIRE(unique.size() == ids.size());

    // Shifts are non-decreasing along the sequence and cover
    // [0, text_len + n_frames) with no gaps.
    for (std::size_t i = 1; i < ids.size(); ++i)
        REQUIRE(ids[i].shift >= ids[i - 1].shift);
    std::set<int> shifts;
    for (const auto& id : ids) shifts.insert(id.shift);
    REQUIRE(static_cast<int>(shifts.size()) == 5 + 3);
    REQUIRE(*shifts.begin() == 0);
    REQUIRE(*shifts.rbegin() == 7);

    // Every frame grid is fully enumerated.
    for (std::size_t j = 0; j < layout.frames.size(); ++j) {
        const int shift = layout.text_len + static_cast<int>(j);
        const auto [rows, cols] = layout.frames[j];
        std::set<std::pair<int, int>> cells;
        for (const auto& id : ids)
            if (id.shift == shift) cells.emplace(id.row, id.col);
        REQUIRE(static_cast<int>(cells.size()) == rows * cols);
        REQUIRE(cells.count({0, 0}) == 1);
        REQUIRE(cells.count({rows - 1, cols - 1}) == 1);
    }
}

TEST_CASE("text tokens never use the spatial axes") {
    SequenceLayout layout;
    layout.text_len = 4;
    layout.frames = {{2, 3}};
    const auto ids = assign_position_ids(layout);
    for (int i = 0; i < layout.text_len; ++i) {
        REQUIRE(ids[i].row == 0);
        REQUIRE(ids[i].col == 0);
    }
}

TEST_CASE("invalid layouts are rejected") {
    SequenceLayout negative;
    negative.text_len = -1;
    REQUIRE_THROWS_AS(assign_position_ids(negative), config_error);

    SequenceLayout empty_frame;
    empty_frame.frames = {{0, 4}};
    REQUIRE_THROWS_AS(assign_position_ids(empty_frame), config_error);
}
