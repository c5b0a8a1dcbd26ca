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

#ifndef NMREL_RANDOM_HPP
#define NMREL_RANDOM_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "error.hpp"
#include "nmset.hpp"
#include "relation.hpp"
#include "triple.hpp"
#include "universe.hpp"

namespace nmrel {

/// SplitMix64 finalizer; used to derive independent seeds from (master, counter).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter) noexcept
{
    return mix64(master ^ mix64(counter));
}

/// Random source whose output is identical on every platform.
///
/// std::mt19937_64 is fully specified by the standard; the distributions are
/// not, so the mapping to doubles and indices is done here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_{seed} {}

    /// Uniform on [0,1) with 53 random bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform degree on the closed interval [0,1], in fixed-point units.
    Units degree() { return static_cast<Units>(below(static_cast<std::size_t>(degree_scale) + 1)); }

    /// Uniform index in [0, n), n > 0. Lemire's multiply-shift with rejection.
    std::size_t below(std::size_t n)
    {
        const auto bound = static_cast<std::uint64_t>(n);
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * bound;
            if (static_cast<std::uint64_t>(m) >= threshold) {
                return static_cast<std::size_t>(m >> 64);
            }
        }
    }

    bool chance(double p) { return unit() < p; }

private:
    std::mt19937_64 engine_;
};

struct GenConfig {
    std::uint64_t seed = 0;
    std::size_t universe_size = 3;
    std::size_t dimension = 1;
    /// When set, components are drawn from these values; otherwise uniform on [0,1].
    std::optional<std::vector<double>> value_grid;
    /// Chance that a relation pair is left out.
    double partial_probability = 0.0;
    /// Draw only t and force i = f = 0; with grid {0,1} this gives crisp membership.
    bool crisp = false;

    void validate() const
    {
        if (universe_size == 0) {
            throw DomainError("universe_size must be at least 1");
        }
        if (dimension == 0) {
            throw DimensionError("dimension must be at least 1");
        }
        if (!(partial_probability >= 0.0 && partial_probability <= 1.0)) {
            throw RangeError("partial_probability must lie in [0,1]");
        }
        if (value_grid) {
            if (value_grid->empty()) {
                throw RangeError("value grid is empty");
            }
            for (double v : *value_grid) {
                if (!(v >= 0.0 && v <= 1.0)) {
                    throw RangeError("value grid entry outside [0,1]");
                }
            }
        }
    }

    GenConfig with_seed(std::uint64_t s) const
    {
        GenConfig c = *this;
        c.seed = s;
        return c;
    }
};

namespace detail {

inline Units draw_component(Rng& rng, const GenConfig& cfg)
{
    if (cfg.value_grid) {
        return to_units((*cfg.value_grid)[rng.below(cfg.value_grid->size())]);
    }
    return rng.degree();
}

inline NeutroTriple draw_triple(Rng& rng, const GenConfig& cfg)
{
    const Units t = draw_component(rng, cfg);
    if (cfg.crisp) {
        return NeutroTriple::from_units(t, 0, 0);
    }
    const Units i = draw_component(rng, cfg);
    const Units f = draw_component(rng, cfg);
    return NeutroTriple::from_units(t, i, f);
}

inline NmRelation random_relation(Rng& rng, const GenConfig& cfg)
{
    const Universe universe = Universe::numbered(cfg.universe_size);
    const std::size_t pairs = cfg.universe_size * cfg.universe_size;
    std::vector<NeutroTriple> cells;
    cells.reserve(pairs * cfg.dimension);
    std::vector<unsigned char> present(pairs);
    for (std::size_t p = 0; p < pairs; ++p) {
        present[p] = rng.chance(cfg.partial_probability) ? 0 : 1;
        for (std::size_t j = 0; j < cfg.dimension; ++j) {
            // Drawn even for omitted pairs so presence does not shift later draws.
            cells.push_back(draw_triple(rng, cfg));
        }
    }
    return NmRelation(universe, universe, cfg.dimension, std::move(cells), std::move(present));
}

} // namespace detail

/// NmSet over {e0, ..., e(n-1)}; a pure function of @p cfg.
inline NmSet gen_nmset(const GenConfig& cfg)
{
    cfg.validate();
    Rng rng(cfg.seed);
    std::vector<NeutroTriple> cells;
    cells.reserve(cfg.universe_size * cfg.dimension);
    for (std::size_t k = 0; k < cfg.universe_size * cfg.dimension; ++k) {
        cells.push_back(detail::draw_triple(rng, cfg));
    }
    return NmSet(Universe::numbered(cfg.universe_size), cfg.dimension, std::move(cells));
}

/// Square relation on {e0, ..., e(n-1)}, each pair omitted with the configured chance.
inline NmRelation gen_relation(const GenConfig& cfg)
{
    cfg.validate();
    Rng rng(cfg.seed);
    return detail::random_relation(rng, cfg);
}

/// Random relation mirrored across the diagonal: (x,y) copied onto (y,x) for x <= y.
inline NmRelation gen_symmetric(const GenConfig& cfg)
{
    const NmRelation r = gen_relation(cfg);
    const std::size_t m = r.source().size();
    const std::size_t n = r.dimension();
    std::vector<NeutroTriple> cells(r.cells().begin(), r.cells().end());
    std::vector<unsigned char> present(r.presence().begin(), r.presence().end());
    for (std::size_t x = 0; x < m; ++x) {
        for (std::size_t y = x + 1; y < m; ++y) {
            const std::size_t from = x * m + y;
            const std::size_t to = y * m + x;
            present[to] = present[from];
            std::copy_n(cells.begin() + static_cast<std::ptrdiff_t>(from * n), n,
                        cells.begin() + static_cast<std::ptrdiff_t>(to * n));
        }
    }
    return NmRelation(r.source(), r.target(), n, std::move(cells), std::move(present));
}

/// Transitive closure of a random relation.
inline NmRelation gen_transitive(const GenConfig& cfg) { return transitive_closure(gen_relation(cfg)); }

/// Random relation with (1,0,0) written over the whole diagonal.
inline NmRelation gen_reflexive(const GenConfig& cfg)
{
    const NmRelation r = gen_relation(cfg);
    const std::size_t m = r.source().size();
    const std::size_t n = r.dimension();
    std::vector<NeutroTriple> cells(r.cells().begin(), r.cells().end());
    std::vector<unsigned char> present(r.presence().begin(), r.presence().end());
    for (std::size_t x = 0; x < m; ++x) {
        present[x * m + x] = 1;
        std::fill_n(cells.begin() + static_cast<std::ptrdiff_t>((x * m + x) * n), n, NeutroTriple::unit());
    }
    return NmRelation(r.source(), r.target(), n, std::move(cells), std::move(present));
}

} // namespace nmrel

#endif // NMREL_RANDOM_HPP
