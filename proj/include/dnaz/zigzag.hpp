/**
 * Copyright 2026 The dnaz Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/**
 * @file zigzag.hpp
 * @brief JPEG zigzag scan order over an arbitrary rows x cols grid, used as a
 *        permutation of a row-major byte stream.
 *
 * Cells are visited by increasing anti-diagonal s = row + col. Even diagonals
 * run from bottom-left to top-right, odd diagonals from top-right to
 * bottom-left, which reproduces the familiar 8x8 JPEG coefficient order.
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dnaz/bytes.hpp"
#include "dnaz/error.hpp"

namespace dnaz {

struct Cell {
    std::uint32_t row = 0;
    std::uint32_t col = 0;

    friend constexpr bool operator==(const Cell&, const Cell&) = default;
};

/// Immutable scan order. order()[k] is the k-th visited cell.
class ZigzagPerm {
public:
    ZigzagPerm(std::uint32_t rows, std::uint32_t cols, std::vector<Cell> order)
        : rows_(rows), cols_(cols), order_(std::move(order)) {}

    std::uint32_t rows() const noexcept { return rows_; }
    std::uint32_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return order_.size(); }
    const std::vector<Cell>& order() const noexcept { return order_; }

    /// Row-major offset of the k-th visited cell.
    std::size_t source_offset(std::size_t k) const noexcept {
        return static_cast<std::size_t>(order_[k].row) * cols_ + order_[k].col;
    }

    /// output[k] = data[row_k * cols + col_k]
    template <typename T>
    std::vector<T> apply(std::span<const T> data) const {
        require_length(data.size());
        std::vector<T> out(data.size());
        for (std::size_t k = 0; k < out.size(); ++k) {
            out[k] = data[source_offset(k)];
        }
        return out;
    }

    template <typename T>
    std::vector<T> invert_apply(std::span<const T> data) const {
        require_length(data.size());
        std::vector<T> out(data.size());
        for (std::size_t k = 0; k < data.size(); ++k) {
            out[source_offset(k)] = data[k];
        }
        return out;
    }

    Bytes apply(ByteSpan data) const { return apply<std::uint8_t>(data); }
    Bytes invert_apply(ByteSpan data) const { return invert_apply<std::uint8_t>(data); }

private:
    void require_length(std::size_t n) const {
        if (n != order_.size()) {
            throw LengthMismatch("zigzag permutation covers " + std::to_string(order_.size()) +
                                 " cells but data has " + std::to_string(n));
        }
    }

    std::uint32_t rows_;
    std::uint32_t cols_;
    std::vector<Cell> order_;
};

namespace detail {

inline void require_nonzero(std::uint32_t rows, std::uint32_t cols) {
    if (rows == 0 || cols == 0) {
        throw ZeroDimension("zigzag grid must be at least 1x1, got " + std::to_string(rows) + "x" +
                            std::to_string(cols));
    }
}

// Appends the zigzag walk of a rows x cols tile anchored at (row0, col0).
inline void append_zigzag(std::vector<Cell>& out, std::uint32_t row0, std::uint32_t col0, std::uint32_t rows,
                          std::uint32_t cols) {
    const std::int64_t last_diag = static_cast<std::int64_t>(rows) + cols - 2;
    for (std::int64_t s = 0; s <= last_diag; ++s) {
        const std::int64_t lo = std::max<std::int64_t>(0, s - (cols - 1));
        const std::int64_t hi = std::min<std::int64_t>(s, rows - 1);
        if (s % 2 == 0) {
            for (std::int64_t r = hi; r >= lo; --r) {
                out.push_back({static_cast<std::uint32_t>(row0 + r), static_cast<std::uint32_t>(col0 + s - r)});
            }
        } else {
            for (std::int64_t r = lo; r <= hi; ++r) {
                out.push_back({static_cast<std::uint32_t>(row0 + r), static_cast<std::uint32_t>(col0 + s - r)});
            }
        }
    }
}

}  // namespace detail

/// Full-frame zigzag scan of a rows x cols grid.
inline ZigzagPerm zigzag_order(std::uint32_t rows, std::uint32_t cols) {
    detail::require_nonzero(rows, cols);
    std::vector<Cell> order;
    order.reserve(static_cast<std::size_t>(rows) * cols);
    detail::append_zigzag(order, 0, 0, rows, cols);
    return ZigzagPerm(rows, cols, std::move(order));
}

/// Tiles visited in row-major order, zigzag inside each block x block tile.
/// Both dimensions must be multiples of the block size.
inline ZigzagPerm block_zigzag_order(std::uint32_t rows, std::uint32_t cols, std::uint32_t block = 8) {
    detail::require_nonzero(rows, cols);
    if (block == 0 || rows % block != 0 || cols % block != 0) {
        throw InvalidArgument("block zigzag needs dimensions that are multiples of " + std::to_string(block) +
                              ", got " + std::to_string(rows) + "x" + std::to_string(cols));
    }
    std::vector<Cell> order;
    order.reserve(static_cast<std::size_t>(rows) * cols);
    for (std::uint32_t br = 0; br < rows; br += block) {
        for (std::uint32_t bc = 0; bc < cols; bc += block) {
            detail::append_zigzag(order, br, bc, block, block);
        }
    }
    return ZigzagPerm(rows, cols, std::move(order));
}

}  // namespace dnaz
