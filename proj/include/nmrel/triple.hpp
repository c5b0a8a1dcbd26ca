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

#ifndef NMREL_TRIPLE_HPP
#define NMREL_TRIPLE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"

namespace nmrel {

/// Fixed-point unit of a membership degree: degrees are whole multiples of 1e-15.
using Units = std::int64_t;

/// Units in a degree of 1.
inline constexpr Units degree_scale = 1'000'000'000'000'000;

/// Nearest unit count to @p v. Any decimal with at most 15 fractional digits is recovered exactly.
inline Units to_units(double v) noexcept { return std::llround(v * static_cast<double>(degree_scale)); }

inline constexpr double to_degree(Units u) noexcept
{
    return static_cast<double>(u) / static_cast<double>(degree_scale);
}

/// One (truth, indeterminacy, falsity) membership component.
///
/// Degrees are held as exact decimal fixed point so that min, max and 1 - x
/// never round: complement is an exact involution and the lattice laws hold
/// bit for bit. Only the algebraic product rounds, to the nearest unit.
///
/// Every constructed triple has all three degrees in [0,1]. The sum bound
/// t + i + f <= 3 follows from that, but it is still checked so that a later
/// change of representation cannot silently drop it.
class NeutroTriple {
public:
    constexpr NeutroTriple() noexcept = default;

    NeutroTriple(double t, double i, double f)
    {
        // NaN fails both comparisons.
        if (!in_unit_interval(t) || !in_unit_interval(i) || !in_unit_interval(f)) {
            throw RangeError("membership component outside [0,1]: (" + std::to_string(t) + ", " +
                             std::to_string(i) + ", " + std::to_string(f) + ")");
        }
        t_ = to_units(t);
        i_ = to_units(i);
        f_ = to_units(f);
        check_sum();
    }

    static NeutroTriple from_units(Units t, Units i, Units f)
    {
        if (!unit_in_range(t) || !unit_in_range(i) || !unit_in_range(f)) {
            throw RangeError("membership component outside [0,1]");
        }
        NeutroTriple c{Unchecked{}, t, i, f};
        c.check_sum();
        return c;
    }

    /// Absent occurrence: identity for union, absorbing for intersection.
    static constexpr NeutroTriple fill() noexcept { return NeutroTriple{Unchecked{}, 0, degree_scale, degree_scale}; }

    /// Full membership, the diagonal value of a reflexive relation.
    static constexpr NeutroTriple unit() noexcept { return NeutroTriple{Unchecked{}, degree_scale, 0, 0}; }

    constexpr double t() const noexcept { return to_degree(t_); }
    constexpr double i() const noexcept { return to_degree(i_); }
    constexpr double f() const noexcept { return to_degree(f_); }

    constexpr Units t_units() const noexcept { return t_; }
    constexpr Units i_units() const noexcept { return i_; }
    constexpr Units f_units() const noexcept { return f_; }

    friend constexpr bool operator==(const NeutroTriple&, const NeutroTriple&) = default;

private:
    struct Unchecked {};
    constexpr NeutroTriple(Unchecked, Units t, Units i, Units f) noexcept : t_{t}, i_{i}, f_{f} {}

    static bool in_unit_interval(double v) noexcept { return v >= 0.0 && v <= 1.0; }
    static constexpr bool unit_in_range(Units u) noexcept { return u >= 0 && u <= degree_scale; }

    void check_sum() const
    {
        if (t_ + i_ + f_ > 3 * degree_scale) {
            throw RangeError("t + i + f exceeds 3");
        }
    }

    Units t_ = 0;
    Units i_ = degree_scale;
    Units f_ = degree_scale;

    friend struct TripleOps;
};

/// Slotwise triple arithmetic shared by sets and relations.
struct TripleOps {
    static constexpr NeutroTriple make(Units t, Units i, Units f) noexcept
    {
        return NeutroTriple{NeutroTriple::Unchecked{}, t, i, f};
    }

    static NeutroTriple join(const NeutroTriple& a, const NeutroTriple& b) noexcept
    {
        return make(std::max(a.t_, b.t_), std::min(a.i_, b.i_), std::min(a.f_, b.f_));
    }

    static NeutroTriple meet(const NeutroTriple& a, const NeutroTriple& b) noexcept
    {
        return make(std::min(a.t_, b.t_), std::max(a.i_, b.i_), std::max(a.f_, b.f_));
    }

    /// x * y rounded half up to the nearest unit.
    static Units times(Units x, Units y) noexcept
    {
        const __int128 p = static_cast<__int128>(x) * y + degree_scale / 2;
        return static_cast<Units>(p / degree_scale);
    }

    /// x + y - xy; never leaves [0, 1] since round(xy) <= min(x, y).
    static Units probabilistic_sum(Units x, Units y) noexcept
    {
        return std::clamp<Units>(x + y - times(x, y), 0, degree_scale);
    }

    static NeutroTriple sum(const NeutroTriple& a, const NeutroTriple& b) noexcept
    {
        return make(probabilistic_sum(a.t_, b.t_), times(a.i_, b.i_), times(a.f_, b.f_));
    }

    static NeutroTriple product(const NeutroTriple& a, const NeutroTriple& b) noexcept
    {
        return make(times(a.t_, b.t_), probabilistic_sum(a.i_, b.i_), probabilistic_sum(a.f_, b.f_));
    }

    static NeutroTriple complement(const NeutroTriple& a) noexcept
    {
        return make(a.f_, degree_scale - a.i_, a.t_);
    }

    /// Nm-subset order on one slot: smaller truth, larger indeterminacy and falsity.
    static bool below(const NeutroTriple& a, const NeutroTriple& b) noexcept
    {
        return a.t_ <= b.t_ && a.i_ >= b.i_ && a.f_ >= b.f_;
    }

    static bool near(const NeutroTriple& a, const NeutroTriple& b, double tolerance) noexcept
    {
        const double limit = tolerance * static_cast<double>(degree_scale);
        return static_cast<double>(std::abs(a.t_ - b.t_)) <= limit &&
               static_cast<double>(std::abs(a.i_ - b.i_)) <= limit &&
               static_cast<double>(std::abs(a.f_ - b.f_)) <= limit;
    }
};

/// Whether construction also enforces a non-decreasing truth sequence.
enum class Validation { relaxed, strict };

/// The length-P sequence of triples attached to one element or pair.
class MultiValue {
public:
    explicit MultiValue(std::vector<NeutroTriple> triples, Validation mode = Validation::relaxed)
        : triples_{std::move(triples)}
    {
        if (triples_.empty()) {
            throw DimensionError("a membership sequence needs at least one triple");
        }
        if (mode == Validation::strict && !truth_nondecreasing()) {
            throw RangeError("truth-membership sequence is not non-decreasing");
        }
    }

    MultiValue(std::initializer_list<NeutroTriple> triples) : MultiValue(std::vector<NeutroTriple>(triples)) {}

    /// Builds from the three parallel component sequences.
    static MultiValue from_sequences(std::span<const double> t, std::span<const double> i,
                                     std::span<const double> f, Validation mode = Validation::relaxed)
    {
        if (t.size() != i.size() || t.size() != f.size()) {
            throw DimensionError("t, i and f sequences differ in length");
        }
        std::vector<NeutroTriple> triples;
        triples.reserve(t.size());
        for (std::size_t j = 0; j < t.size(); ++j) {
            triples.emplace_back(t[j], i[j], f[j]);
        }
        return MultiValue(std::move(triples), mode);
    }

    static MultiValue filled(std::size_t dimension) { return MultiValue(std::vector(dimension, NeutroTriple::fill())); }

    std::size_t dimension() const noexcept { return triples_.size(); }
    const NeutroTriple& operator[](std::size_t j) const { return triples_[j]; }
    std::span<const NeutroTriple> triples() const noexcept { return triples_; }

    bool truth_nondecreasing() const noexcept
    {
        return std::is_sorted(triples_.begin(), triples_.end(),
                              [](const NeutroTriple& a, const NeutroTriple& b) { return a.t_units() < b.t_units(); });
    }

    friend bool operator==(const MultiValue&, const MultiValue&) = default;

private:
    std::vector<NeutroTriple> triples_;
};

/// True when the truth components of a triple run are non-decreasing.
inline bool truth_nondecreasing(std::span<const NeutroTriple> run) noexcept
{
    for (std::size_t j = 1; j < run.size(); ++j) {
        if (run[j].t_units() < run[j - 1].t_units()) {
            return false;
        }
    }
    return true;
}

} // namespace nmrel

#endif // NMREL_TRIPLE_HPP
