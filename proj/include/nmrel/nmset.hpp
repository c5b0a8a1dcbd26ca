/*
 *   Copyright 2026 The nmrel Authors
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

#ifndef NMREL_NMSET_HPP
#define NMREL_NMSET_HPP

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "triple.hpp"
#include "universe.hpp"

namespace nmrel {

/// A neutrosophic multi set: one length-P triple sequence per universe element.
///
/// Storage is a flat row per element, `dimension()` triples wide, in universe
/// order. Values are immutable once built.
class NmSet {
public:
    /// @p cells holds `universe.size() * dimension` triples, element-major.
    NmSet(Universe universe, std::size_t dimension, std::vector<NeutroTriple> cells,
          Validation mode = Validation::relaxed)
        : universe_{std::move(universe)}, dimension_{dimension}, cells_{std::move(cells)}
    {
        if (dimension_ == 0) {
            throw DimensionError("dimension must be positive");
        }
        if (cells_.size() != universe_.size() * dimension_) {
            throw DimensionError("cell count does not match universe size times dimension");
        }
        if (mode == Validation::strict) {
            for (std::size_t k = 0; k < universe_.size(); ++k) {
                if (!truth_nondecreasing(value_at(k))) {
                    throw RangeError("element '" + universe_[k] + "': truth sequence is not non-decreasing");
                }
            }
        }
    }

    /// Builds from (element, sequence) pairs in any order. All sequences must share one length.
    static NmSet from_entries(std::vector<std::pair<std::string, MultiValue>> entries,
                              Validation mode = Validation::relaxed)
    {
        if (entries.empty()) {
            throw DimensionError("cannot infer the dimension of a set with no elements");
        }
        std::vector<std::string> names;
        names.reserve(entries.size());
        for (const auto& e : entries) {
            names.push_back(e.first);
        }
        Universe universe(std::move(names));
        const std::size_t dimension = entries.front().second.dimension();
        std::vector<NeutroTriple> cells(universe.size() * dimension);
        for (const auto& [name, value] : entries) {
            if (value.dimension() != dimension) {
                throw DimensionError("element '" + name + "' has " + std::to_string(value.dimension()) +
                                     " triples, expected " + std::to_string(dimension));
            }
            auto row = universe.index_of(name) * dimension;
            std::copy(value.triples().begin(), value.triples().end(), cells.begin() + row);
        }
        return NmSet(std::move(universe), dimension, std::move(cells), mode);
    }

    const Universe& universe() const noexcept { return universe_; }
    std::size_t dimension() const noexcept { return dimension_; }
    std::span<const NeutroTriple> cells() const noexcept { return cells_; }

    std::span<const NeutroTriple> value_at(std::size_t k) const
    {
        return std::span<const NeutroTriple>(cells_).subspan(k * dimension_, dimension_);
    }

    std::span<const NeutroTriple> value(const std::string& element) const
    {
        return value_at(universe_.index_of(element));
    }

    friend bool operator==(const NmSet&, const NmSet&) = default;

private:
    Universe universe_;
    std::size_t dimension_;
    std::vector<NeutroTriple> cells_;
};

/// P(A), the common sequence length.
inline std::size_t cardinality(const NmSet& a) noexcept { return a.dimension(); }

/// Pads every sequence to @p n triples by appending fill triples (0,1,1).
inline NmSet align_dimension(const NmSet& a, std::size_t n)
{
    if (n < a.dimension()) {
        throw DimensionError("cannot align dimension " + std::to_string(a.dimension()) + " down to " +
                             std::to_string(n));
    }
    if (n == a.dimension()) {
        return a;
    }
    std::vector<NeutroTriple> cells;
    cells.reserve(a.universe().size() * n);
    for (std::size_t k = 0; k < a.universe().size(); ++k) {
        auto row = a.value_at(k);
        cells.insert(cells.end(), row.begin(), row.end());
        cells.insert(cells.end(), n - a.dimension(), NeutroTriple::fill());
    }
    return NmSet(a.universe(), n, std::move(cells));
}

namespace detail {

// Reads slot j of a row, treating slots past the row's end as fill.
inline NeutroTriple slot_or_fill(std::span<const NeutroTriple> row, std::size_t j) noexcept
{
    return j < row.size() ? row[j] : NeutroTriple::fill();
}

template <class SlotOp>
NmSet zip_sets(const NmSet& a, const NmSet& b, SlotOp op, const char* what)
{
    require_same_universe(a.universe(), b.universe(), what);
    const std::size_t n = std::max(a.dimension(), b.dimension());
    std::vector<NeutroTriple> cells;
    cells.reserve(a.universe().size() * n);
    for (std::size_t k = 0; k < a.universe().size(); ++k) {
        auto ra = a.value_at(k);
        auto rb = b.value_at(k);
        for (std::size_t j = 0; j < n; ++j) {
            cells.push_back(op(slot_or_fill(ra, j), slot_or_fill(rb, j)));
        }
    }
    return NmSet(a.universe(), n, std::move(cells));
}

template <class SlotPred>
bool all_slots(const NmSet& a, const NmSet& b, SlotPred pred, const char* what)
{
    require_same_universe(a.universe(), b.universe(), what);
    const std::size_t n = std::max(a.dimension(), b.dimension());
    for (std::size_t k = 0; k < a.universe().size(); ++k) {
        auto ra = a.value_at(k);
        auto rb = b.value_at(k);
        for (std::size_t j = 0; j < n; ++j) {
            if (!pred(slot_or_fill(ra, j), slot_or_fill(rb, j))) {
                return false;
            }
        }
    }
    return true;
}

} // namespace detail

/// A is an Nm-subset of B: T below, I and F above, on every element and slot.
inline bool nm_subset(const NmSet& a, const NmSet& b)
{
    return detail::all_slots(a, b, TripleOps::below, "nm_subset");
}

/// Componentwise equality after aligning both operands to the larger dimension.
inline bool nm_equal(const NmSet& a, const NmSet& b)
{
    return detail::all_slots(a, b, [](const NeutroTriple& x, const NeutroTriple& y) { return x == y; },
                             "nm_equal");
}

/// nm_equal with an absolute per-component tolerance.
inline bool nm_near(const NmSet& a, const NmSet& b, double tolerance)
{
    return detail::all_slots(
        a, b, [tolerance](const NeutroTriple& x, const NeutroTriple& y) { return TripleOps::near(x, y, tolerance); },
        "nm_near");
}

/// (T, I, F) -> (F, 1 - I, T) on every slot.
inline NmSet complement(const NmSet& a)
{
    std::vector<NeutroTriple> cells;
    cells.reserve(a.cells().size());
    for (const auto& c : a.cells()) {
        cells.push_back(TripleOps::complement(c));
    }
    return NmSet(a.universe(), a.dimension(), std::move(cells));
}

inline NmSet union_of(const NmSet& a, const NmSet& b) { return detail::zip_sets(a, b, TripleOps::join, "union"); }

inline NmSet intersection_of(const NmSet& a, const NmSet& b)
{
    return detail::zip_sets(a, b, TripleOps::meet, "intersection");
}

/// Algebraic sum on T, product on I and F.
inline NmSet addition(const NmSet& a, const NmSet& b) { return detail::zip_sets(a, b, TripleOps::sum, "addition"); }

/// Product on T, algebraic sum on I and F.
inline NmSet multiplication(const NmSet& a, const NmSet& b)
{
    return detail::zip_sets(a, b, TripleOps::product, "multiplication");
}

} // namespace nmrel

#endif // NMREL_NMSET_HPP
