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

#ifndef NMREL_RELATION_HPP
#define NMREL_RELATION_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "nmset.hpp"
#include "triple.hpp"
#include "universe.hpp"

namespace nmrel {

/// A neutrosophic multi relation from a source universe to a target universe.
///
/// The pair domain may be partial. A missing pair reads as the fill sequence
/// (0,1,1) x P; its cells are stored as fill so the algebra never needs to
/// consult the presence mask, which only matters for serialization and for
/// structural `==`.
class NmRelation {
public:
    using Key = std::pair<std::string, std::string>;

    /// @p cells is row-major over source x target, `dimension` triples per pair.
    /// Cells of pairs not flagged in @p present are reset to fill.
    NmRelation(Universe source, Universe target, std::size_t dimension, std::vector<NeutroTriple> cells,
               std::vector<unsigned char> present)
        : source_{std::move(source)}, target_{std::move(target)}, dimension_{dimension},
          cells_{std::move(cells)}, present_{std::move(present)}
    {
        if (dimension_ == 0) {
            throw DimensionError("dimension must be positive");
        }
        const std::size_t pairs = source_.size() * target_.size();
        if (present_.size() != pairs || cells_.size() != pairs * dimension_) {
            throw DimensionError("relation storage does not match universe sizes and dimension");
        }
        for (std::size_t p = 0; p < pairs; ++p) {
            if (!present_[p]) {
                std::fill_n(cells_.begin() + static_cast<std::ptrdiff_t>(p * dimension_), dimension_,
                            NeutroTriple::fill());
            }
        }
    }

    static NmRelation from_entries(Universe source, Universe target, std::size_t dimension,
                                   const std::vector<std::pair<Key, MultiValue>>& entries,
                                   Validation mode = Validation::relaxed)
    {
        const std::size_t pairs = source.size() * target.size();
        std::vector<NeutroTriple> cells(pairs * dimension, NeutroTriple::fill());
        std::vector<unsigned char> present(pairs, 0);
        for (const auto& [key, value] : entries) {
            const std::size_t p = source.index_of(key.first) * target.size() + target.index_of(key.second);
            if (present[p]) {
                throw DomainError("duplicate pair (" + key.first + ", " + key.second + ")");
            }
            if (value.dimension() != dimension) {
                throw DimensionError("pair (" + key.first + ", " + key.second + ") has " +
                                     std::to_string(value.dimension()) + " triples, expected " +
                                     std::to_string(dimension));
            }
            if (mode == Validation::strict && !value.truth_nondecreasing()) {
                throw RangeError("pair (" + key.first + ", " + key.second +
                                 "): truth sequence is not non-decreasing");
            }
            present[p] = 1;
            std::copy(value.triples().begin(), value.triples().end(), cells.begin() + p * dimension);
        }
        return NmRelation(std::move(source), std::move(target), dimension, std::move(cells), std::move(present));
    }

    /// No pairs at all; every value reads as fill.
    static NmRelation empty(Universe source, Universe target, std::size_t dimension)
    {
        const std::size_t pairs = source.size() * target.size();
        return NmRelation(std::move(source), std::move(target), dimension,
                          std::vector<NeutroTriple>(pairs * dimension, NeutroTriple::fill()),
                          std::vector<unsigned char>(pairs, 0));
    }

    /// (1,0,0) on the diagonal, (0,1,1) elsewhere; total.
    static NmRelation identity(const Universe& universe, std::size_t dimension)
    {
        const std::size_t m = universe.size();
        std::vector<NeutroTriple> cells(m * m * dimension, NeutroTriple::fill());
        for (std::size_t x = 0; x < m; ++x) {
            std::fill_n(cells.begin() + static_cast<std::ptrdiff_t>((x * m + x) * dimension), dimension,
                        NeutroTriple::unit());
        }
        return NmRelation(universe, universe, dimension, std::move(cells), std::vector<unsigned char>(m * m, 1));
    }

    const Universe& source() const noexcept { return source_; }
    const Universe& target() const noexcept { return target_; }
    std::size_t dimension() const noexcept { return dimension_; }
    bool square() const noexcept { return source_ == target_; }
    std::span<const NeutroTriple> cells() const noexcept { return cells_; }
    std::span<const unsigned char> presence() const noexcept { return present_; }

    std::size_t pair_index(std::size_t x, std::size_t y) const noexcept { return x * target_.size() + y; }

    bool present(std::size_t x, std::size_t y) const { return present_[pair_index(x, y)] != 0; }

    std::size_t pair_count() const noexcept
    {
        return static_cast<std::size_t>(std::count(present_.begin(), present_.end(), 1));
    }

    std::span<const NeutroTriple> value_at(std::size_t x, std::size_t y) const
    {
        return std::span<const NeutroTriple>(cells_).subspan(pair_index(x, y) * dimension_, dimension_);
    }

    std::span<const NeutroTriple> value(const std::string& x, const std::string& y) const
    {
        return value_at(source_.index_of(x), target_.index_of(y));
    }

    friend bool operator==(const NmRelation&, const NmRelation&) = default;

private:
    Universe source_;
    Universe target_;
    std::size_t dimension_;
    std::vector<NeutroTriple> cells_;
    std::vector<unsigned char> present_;
};

/// P of a relation.
inline std::size_t cardinality(const NmRelation& r) noexcept { return r.dimension(); }

/// Appends fill triples to every pair; missing pairs stay missing.
inline NmRelation align_dimension(const NmRelation& r, std::size_t n)
{
    if (n < r.dimension()) {
        throw DimensionError("cannot align dimension " + std::to_string(r.dimension()) + " down to " +
                             std::to_string(n));
    }
    if (n == r.dimension()) {
        return r;
    }
    const std::size_t pairs = r.presence().size();
    std::vector<NeutroTriple> cells;
    cells.reserve(pairs * n);
    for (std::size_t p = 0; p < pairs; ++p) {
        auto row = r.cells().subspan(p * r.dimension(), r.dimension());
        cells.insert(cells.end(), row.begin(), row.end());
        cells.insert(cells.end(), n - r.dimension(), NeutroTriple::fill());
    }
    return NmRelation(r.source(), r.target(), n, std::move(cells),
                      std::vector<unsigned char>(r.presence().begin(), r.presence().end()));
}

/// Total relation on A's universe x B's universe with slotwise (min T, max I, max F).
inline NmRelation cartesian_product(const NmSet& a, const NmSet& b)
{
    const std::size_t n = std::max(a.dimension(), b.dimension());
    const std::size_t rows = a.universe().size();
    const std::size_t cols = b.universe().size();
    std::vector<NeutroTriple> cells;
    cells.reserve(rows * cols * n);
    for (std::size_t x = 0; x < rows; ++x) {
        auto ax = a.value_at(x);
        for (std::size_t y = 0; y < cols; ++y) {
            auto by = b.value_at(y);
            for (std::size_t j = 0; j < n; ++j) {
                cells.push_back(TripleOps::meet(detail::slot_or_fill(ax, j), detail::slot_or_fill(by, j)));
            }
        }
    }
    return NmRelation(a.universe(), b.universe(), n, std::move(cells), std::vector<unsigned char>(rows * cols, 1));
}

inline NmRelation cartesian_square(const NmSet& a) { return cartesian_product(a, a); }

namespace detail {

inline void require_same_shape(const NmRelation& r, const NmRelation& s, const char* what)
{
    require_same_universe(r.source(), s.source(), what);
    require_same_universe(r.target(), s.target(), what);
}

inline void require_square(const NmRelation& r, const char* what)
{
    if (!r.square()) {
        throw DomainError(std::string(what) + " needs a relation whose source and target universes coincide");
    }
}

inline NeutroTriple cell_or_fill(const NmRelation& r, std::size_t p, std::size_t j) noexcept
{
    return j < r.dimension() ? r.cells()[p * r.dimension() + j] : NeutroTriple::fill();
}

// Pointwise combination; a pair is present when either operand has it.
template <class SlotOp>
NmRelation zip_relations(const NmRelation& r, const NmRelation& s, SlotOp op, const char* what)
{
    require_same_shape(r, s, what);
    const std::size_t n = std::max(r.dimension(), s.dimension());
    const std::size_t pairs = r.presence().size();
    std::vector<NeutroTriple> cells;
    cells.reserve(pairs * n);
    std::vector<unsigned char> present(pairs);
    for (std::size_t p = 0; p < pairs; ++p) {
        present[p] = (r.presence()[p] || s.presence()[p]) ? 1 : 0;
        for (std::size_t j = 0; j < n; ++j) {
            cells.push_back(op(cell_or_fill(r, p, j), cell_or_fill(s, p, j)));
        }
    }
    return NmRelation(r.source(), r.target(), n, std::move(cells), std::move(present));
}

template <class SlotPred>
bool all_pairs(const NmRelation& r, const NmRelation& s, SlotPred pred, const char* what)
{
    require_same_shape(r, s, what);
    const std::size_t n = std::max(r.dimension(), s.dimension());
    const std::size_t pairs = r.presence().size();
    for (std::size_t p = 0; p < pairs; ++p) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!pred(cell_or_fill(r, p, j), cell_or_fill(s, p, j))) {
                return false;
            }
        }
    }
    return true;
}

} // namespace detail

inline NmRelation union_of(const NmRelation& r, const NmRelation& s)
{
    return detail::zip_relations(r, s, TripleOps::join, "relation union");
}

inline NmRelation intersection_of(const NmRelation& r, const NmRelation& s)
{
    return detail::zip_relations(r, s, TripleOps::meet, "relation intersection");
}

inline NmRelation addition(const NmRelation& r, const NmRelation& s)
{
    return detail::zip_relations(r, s, TripleOps::sum, "relation addition");
}

inline NmRelation multiplication(const NmRelation& r, const NmRelation& s)
{
    return detail::zip_relations(r, s, TripleOps::product, "relation multiplication");
}

/// Nm-subset over every pair and slot; missing pairs compare as fill.
inline bool nm_subset(const NmRelation& r, const NmRelation& s)
{
    return detail::all_pairs(r, s, TripleOps::below, "nm_subset");
}

/// Value equality; missing pairs compare as fill and shorter sequences are fill-padded.
inline bool nm_equal(const NmRelation& r, const NmRelation& s)
{
    return detail::all_pairs(r, s, [](const NeutroTriple& a, const NeutroTriple& b) { return a == b; }, "nm_equal");
}

inline bool nm_near(const NmRelation& r, const NmRelation& s, double tolerance)
{
    return detail::all_pairs(
        r, s, [tolerance](const NeutroTriple& a, const NeutroTriple& b) { return TripleOps::near(a, b, tolerance); },
        "nm_near");
}

/// S o R for R: A -> B and S: B -> C, giving a total relation A -> C.
///
/// T is the max over intermediates y of min(T_R(x,y), T_S(y,z)); I and F are
/// the min over y of the max. Missing pairs read as fill, which is neutral for
/// the outer max (T = 0) and the outer min (I = F = 1).
inline NmRelation compose(const NmRelation& s, const NmRelation& r)
{
    if (!(r.target() == s.source())) {
        throw DomainError("compose: the target universe of R differs from the source universe of S");
    }
    const std::size_t n = std::max(r.dimension(), s.dimension());
    const std::size_t rows = r.source().size();
    const std::size_t mid = r.target().size();
    const std::size_t cols = s.target().size();
    std::vector<NeutroTriple> cells;
    cells.reserve(rows * cols * n);
    for (std::size_t x = 0; x < rows; ++x) {
        for (std::size_t z = 0; z < cols; ++z) {
            for (std::size_t j = 0; j < n; ++j) {
                Units t = 0;
                Units i = degree_scale;
                Units f = degree_scale;
                for (std::size_t y = 0; y < mid; ++y) {
                    const NeutroTriple a = detail::cell_or_fill(r, r.pair_index(x, y), j);
                    const NeutroTriple b = detail::cell_or_fill(s, s.pair_index(y, z), j);
                    t = std::max(t, std::min(a.t_units(), b.t_units()));
                    i = std::min(i, std::max(a.i_units(), b.i_units()));
                    f = std::min(f, std::max(a.f_units(), b.f_units()));
                }
                cells.push_back(TripleOps::make(t, i, f));
            }
        }
    }
    return NmRelation(r.source(), s.target(), n, std::move(cells), std::vector<unsigned char>(rows * cols, 1));
}

/// Transpose: value at (y,x) is R's value at (x,y).
inline NmRelation inverse(const NmRelation& r)
{
    const std::size_t rows = r.source().size();
    const std::size_t cols = r.target().size();
    const std::size_t n = r.dimension();
    std::vector<NeutroTriple> cells(rows * cols * n);
    std::vector<unsigned char> present(rows * cols);
    for (std::size_t x = 0; x < rows; ++x) {
        for (std::size_t y = 0; y < cols; ++y) {
            const std::size_t from = r.pair_index(x, y);
            const std::size_t to = y * rows + x;
            present[to] = r.presence()[from];
            std::copy_n(r.cells().begin() + static_cast<std::ptrdiff_t>(from * n), n,
                        cells.begin() + static_cast<std::ptrdiff_t>(to * n));
        }
    }
    return NmRelation(r.target(), r.source(), n, std::move(cells), std::move(present));
}

/// Every diagonal slot is exactly (1,0,0).
inline bool is_reflexive(const NmRelation& r)
{
    detail::require_square(r, "is_reflexive");
    for (std::size_t x = 0; x < r.source().size(); ++x) {
        for (const auto& c : r.value_at(x, x)) {
            if (!(c == NeutroTriple::unit())) {
                return false;
            }
        }
    }
    return true;
}

/// Value at (x,y) equals value at (y,x), within @p tolerance per component.
inline bool is_symmetric(const NmRelation& r, double tolerance = 0.0)
{
    detail::require_square(r, "is_symmetric");
    const std::size_t m = r.source().size();
    for (std::size_t x = 0; x < m; ++x) {
        for (std::size_t y = x + 1; y < m; ++y) {
            auto a = r.value_at(x, y);
            auto b = r.value_at(y, x);
            for (std::size_t j = 0; j < a.size(); ++j) {
                if (tolerance == 0.0 ? !(a[j] == b[j]) : !TripleOps::near(a[j], b[j], tolerance)) {
                    return false;
                }
            }
        }
    }
    return true;
}

/// R o R is an Nm-subset of R.
inline bool is_transitive(const NmRelation& r)
{
    detail::require_square(r, "is_transitive");
    return nm_subset(compose(r, r), r);
}

inline bool is_equivalence(const NmRelation& r)
{
    detail::require_square(r, "is_equivalence");
    return is_reflexive(r) && is_symmetric(r) && is_transitive(r);
}

/// R^k with R^1 = R and R^k = R o R^(k-1).
inline NmRelation power(const NmRelation& r, std::size_t k)
{
    detail::require_square(r, "power");
    if (k == 0) {
        throw DomainError("power: exponent must be at least 1");
    }
    NmRelation acc = r;
    for (std::size_t step = 1; step < k; ++step) {
        acc = compose(r, acc);
    }
    return acc;
}

struct ClosureResult {
    NmRelation relation;
    /// Smallest k with R u R^2 u ... u R^k already closed.
    std::size_t iterations;
};

/// R u R^2 u R^3 u ..., iterated until the running union stops changing.
///
/// Over a universe of m elements the union is stable after at most m powers;
/// one more power is computed to observe the fixpoint.
inline ClosureResult transitive_closure_with_stats(const NmRelation& r)
{
    detail::require_square(r, "transitive_closure");
    const std::size_t m = r.source().size();
    if (m == 0) {
        return {r, 0};
    }
    NmRelation acc = r;
    NmRelation pow = r;
    for (std::size_t k = 1; k <= m; ++k) {
        pow = compose(r, pow);
        NmRelation next = union_of(acc, pow);
        if (nm_equal(next, acc)) {
            return {std::move(acc), k};
        }
        acc = std::move(next);
    }
    throw InternalError("transitive_closure: no fixpoint within " + std::to_string(m) + " powers");
}

inline NmRelation transitive_closure(const NmRelation& r) { return transitive_closure_with_stats(r).relation; }

/// Optional sets A and B a relation is meant to live inside.
struct RelationContext {
    std::optional<NmSet> source_set;
    std::optional<NmSet> target_set;
    bool enforce_containment = false;
};

/// First pair whose value is not an Nm-subset of A x B at that pair, if any.
inline std::optional<NmRelation::Key> containment_violation(const NmRelation& r, const NmSet& a, const NmSet& b)
{
    require_same_universe(r.source(), a.universe(), "containment");
    require_same_universe(r.target(), b.universe(), "containment");
    const NmRelation bound = cartesian_product(a, b);
    const std::size_t n = std::max(r.dimension(), bound.dimension());
    for (std::size_t x = 0; x < r.source().size(); ++x) {
        for (std::size_t y = 0; y < r.target().size(); ++y) {
            if (!r.present(x, y)) {
                continue;
            }
            const std::size_t p = r.pair_index(x, y);
            for (std::size_t j = 0; j < n; ++j) {
                if (!TripleOps::below(detail::cell_or_fill(r, p, j), detail::cell_or_fill(bound, p, j))) {
                    return NmRelation::Key{r.source()[x], r.target()[y]};
                }
            }
        }
    }
    return std::nullopt;
}

/// Throws DomainError when the context asks for containment and R leaves A x B.
inline void check_context(const NmRelation& r, const RelationContext& ctx)
{
    if (!ctx.enforce_containment) {
        return;
    }
    if (!ctx.source_set || !ctx.target_set) {
        throw DomainError("containment check needs both the source and the target set");
    }
    if (auto bad = containment_violation(r, *ctx.source_set, *ctx.target_set)) {
        throw DomainError("pair (" + bad->first + ", " + bad->second + ") is not contained in A x B");
    }
}

} // namespace nmrel

#endif // NMREL_RELATION_HPP
