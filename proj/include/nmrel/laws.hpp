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

#ifndef NMREL_LAWS_HPP
#define NMREL_LAWS_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "document.hpp"
#include "error.hpp"
#include "nmset.hpp"
#include "random.hpp"
#include "relation.hpp"

namespace nmrel {

/// Componentwise tolerance for laws involving the algebraic sum or product.
inline constexpr double arithmetic_tolerance = 1e-12;

/// How the inputs of a law are drawn.
enum class Precondition {
    any,
    symmetric,
    transitive,
    /// Alternates symmetric and unconstrained inputs, so both sides of an iff get exercised.
    mixed_symmetric,
};

template <class Value>
struct Law {
    std::string_view name;
    std::size_t arity;
    Precondition pre;
    bool (*holds)(std::span<const Value>);
    /// Extra admission test applied after the precondition; nullptr admits everything.
    bool (*admit)(std::span<const Value>) = nullptr;
};

using SetLaw = Law<NmSet>;
using RelationLaw = Law<NmRelation>;

// clang-format off
inline const std::vector<SetLaw>& set_laws()
{
    using S = std::span<const NmSet>;
    static const std::vector<SetLaw> laws = {
        {"complement_involution", 1, Precondition::any, [](S a) { return complement(complement(a[0])) == a[0]; }},
        {"de_morgan_union", 2, Precondition::any, [](S a) {
             return complement(union_of(a[0], a[1])) == intersection_of(complement(a[0]), complement(a[1])); }},
        {"de_morgan_intersection", 2, Precondition::any, [](S a) {
             return complement(intersection_of(a[0], a[1])) == union_of(complement(a[0]), complement(a[1])); }},
        {"union_commutative", 2, Precondition::any, [](S a) { return union_of(a[0], a[1]) == union_of(a[1], a[0]); }},
        {"intersection_commutative", 2, Precondition::any, [](S a) {
             return intersection_of(a[0], a[1]) == intersection_of(a[1], a[0]); }},
        {"union_associative", 3, Precondition::any, [](S a) {
             return union_of(a[0], union_of(a[1], a[2])) == union_of(union_of(a[0], a[1]), a[2]); }},
        {"intersection_associative", 3, Precondition::any, [](S a) {
             return intersection_of(a[0], intersection_of(a[1], a[2])) ==
                    intersection_of(intersection_of(a[0], a[1]), a[2]); }},
        {"union_idempotent", 1, Precondition::any, [](S a) { return union_of(a[0], a[0]) == a[0]; }},
        {"intersection_idempotent", 1, Precondition::any, [](S a) { return intersection_of(a[0], a[0]) == a[0]; }},
        {"absorption_union", 2, Precondition::any, [](S a) { return union_of(a[0], intersection_of(a[0], a[1])) == a[0]; }},
        {"absorption_intersection", 2, Precondition::any, [](S a) {
             return intersection_of(a[0], union_of(a[0], a[1])) == a[0]; }},
        {"subset_reflexive", 1, Precondition::any, [](S a) { return nm_subset(a[0], a[0]); }},
        {"subset_antisymmetric", 2, Precondition::any, [](S a) {
             return (nm_subset(a[0], a[1]) && nm_subset(a[1], a[0])) == nm_equal(a[0], a[1]); }},
        {"subset_transitive", 3, Precondition::any, [](S a) {
             return !(nm_subset(a[0], a[1]) && nm_subset(a[1], a[2])) || nm_subset(a[0], a[2]); }},
        {"subset_bounds", 2, Precondition::any, [](S a) {
             return nm_subset(intersection_of(a[0], a[1]), a[0]) && nm_subset(a[0], union_of(a[0], a[1])); }},
        {"addition_commutative", 2, Precondition::any, [](S a) {
             return nm_near(addition(a[0], a[1]), addition(a[1], a[0]), arithmetic_tolerance); }},
        {"multiplication_commutative", 2, Precondition::any, [](S a) {
             return nm_near(multiplication(a[0], a[1]), multiplication(a[1], a[0]), arithmetic_tolerance); }},
        {"addition_associative", 3, Precondition::any, [](S a) {
             return nm_near(addition(a[0], addition(a[1], a[2])), addition(addition(a[0], a[1]), a[2]),
                            arithmetic_tolerance); }},
        {"multiplication_associative", 3, Precondition::any, [](S a) {
             return nm_near(multiplication(a[0], multiplication(a[1], a[2])),
                            multiplication(multiplication(a[0], a[1]), a[2]), arithmetic_tolerance); }},
        {"addition_multiplication_duality", 2, Precondition::any, [](S a) {
             return nm_near(complement(addition(a[0], a[1])), multiplication(complement(a[0]), complement(a[1])),
                            arithmetic_tolerance); }},
    };
    return laws;
}

inline bool closure_contract(const NmRelation& r)
{
    const ClosureResult c = transitive_closure_with_stats(r);
    const bool closed = nm_subset(r, c.relation) && is_transitive(c.relation) &&
                        nm_equal(transitive_closure(c.relation), c.relation) &&
                        c.iterations <= r.source().size();
    return closed && (!is_transitive(r) || nm_equal(c.relation, r));
}

inline const std::vector<RelationLaw>& relation_laws()
{
    using R = std::span<const NmRelation>;
    static const std::vector<RelationLaw> laws = {
        {"inverse_involution", 1, Precondition::any, [](R r) { return inverse(inverse(r[0])) == r[0]; }},
        {"composition_inverse", 2, Precondition::any, [](R r) {
             return nm_equal(inverse(compose(r[1], r[0])), compose(inverse(r[0]), inverse(r[1]))); }},
        {"symmetric_iff_self_inverse", 1, Precondition::mixed_symmetric, [](R r) {
             return is_symmetric(r[0]) == nm_equal(r[0], inverse(r[0])); }},
        {"inverse_preserves_symmetry", 1, Precondition::symmetric, [](R r) { return is_symmetric(inverse(r[0])); }},
        {"symmetry_union", 2, Precondition::symmetric, [](R r) { return is_symmetric(union_of(r[0], r[1])); }},
        {"symmetry_intersection", 2, Precondition::symmetric, [](R r) {
             return is_symmetric(intersection_of(r[0], r[1])); }},
        {"symmetry_addition", 2, Precondition::symmetric, [](R r) {
             return is_symmetric(addition(r[0], r[1]), arithmetic_tolerance); }},
        {"symmetry_multiplication", 2, Precondition::symmetric, [](R r) {
             return is_symmetric(multiplication(r[0], r[1]), arithmetic_tolerance); }},
        {"transitive_inverse", 1, Precondition::transitive, [](R r) { return is_transitive(inverse(r[0])); }},
        {"transitive_intersection", 2, Precondition::transitive, [](R r) {
             return is_transitive(intersection_of(r[0], r[1])); }},
        {"transitive_square", 1, Precondition::transitive, [](R r) { return is_transitive(power(r[0], 2)); }},
        {"remark_commuting_composition_symmetric", 2, Precondition::symmetric,
         [](R r) { return is_symmetric(compose(r[0], r[1])); },
         [](R r) { return nm_equal(compose(r[0], r[1]), compose(r[1], r[0])); }},
        {"composition_associative", 3, Precondition::any, [](R r) {
             return nm_equal(compose(r[2], compose(r[1], r[0])), compose(compose(r[2], r[1]), r[0])); }},
        {"closure_contract", 1, Precondition::any, [](R r) { return closure_contract(r[0]); }},
    };
    return laws;
}
// clang-format on

/// The relation laws covering inverse, symmetry and transitivity.
inline const std::vector<std::string_view>& positive_relation_laws()
{
    static const std::vector<std::string_view> names = {
        "inverse_involution",    "composition_inverse",       "symmetric_iff_self_inverse",
        "inverse_preserves_symmetry", "symmetry_union",       "symmetry_intersection",
        "symmetry_addition",     "symmetry_multiplication",   "transitive_inverse",
        "transitive_intersection", "transitive_square"};
    return names;
}

/// Outcome of one law run.
struct LawReport {
    std::string law_name;
    std::string mode;
    std::uint64_t trials = 0;
    /// Inputs that passed the precondition and any admission filter.
    std::uint64_t admitted = 0;
    std::uint64_t failures = 0;
    /// JSON array of the input documents of the first failure.
    std::optional<std::string> first_counterexample;
    std::uint64_t seed = 0;
    std::chrono::duration<double> elapsed{};

    double hit_rate() const { return trials ? static_cast<double>(admitted) / static_cast<double>(trials) : 0.0; }
};

inline nlohmann::ordered_json to_json(const LawReport& r)
{
    nlohmann::ordered_json j;
    j["law"] = r.law_name;
    j["mode"] = r.mode;
    j["trials"] = r.trials;
    j["admitted"] = r.admitted;
    j["hit_rate"] = r.hit_rate();
    j["failures"] = r.failures;
    j["seed"] = r.seed;
    j["first_counterexample"] =
        r.first_counterexample ? nlohmann::ordered_json::parse(*r.first_counterexample) : nlohmann::ordered_json();
    j["elapsed_ms"] = std::chrono::duration<double, std::milli>(r.elapsed).count();
    return j;
}

namespace detail {

template <class Value>
std::string inputs_json(std::span<const Value> inputs)
{
    auto arr = nlohmann::ordered_json::array();
    for (const auto& v : inputs) {
        arr.push_back(nlohmann::ordered_json::parse(serialize(v)));
    }
    return arr.dump();
}

template <class Value>
const Law<Value>* find_law(const std::vector<Law<Value>>& laws, std::string_view name)
{
    auto it = std::find_if(laws.begin(), laws.end(), [&](const auto& l) { return l.name == name; });
    return it == laws.end() ? nullptr : &*it;
}

inline NmRelation draw_relation(Precondition pre, const GenConfig& cfg, std::uint64_t trial)
{
    switch (pre) {
    case Precondition::symmetric:
        return gen_symmetric(cfg);
    case Precondition::transitive:
        return gen_transitive(cfg);
    case Precondition::mixed_symmetric:
        return trial % 2 == 0 ? gen_symmetric(cfg) : gen_relation(cfg);
    case Precondition::any:
        break;
    }
    return gen_relation(cfg);
}

inline bool satisfies(Precondition pre, const NmRelation& r)
{
    switch (pre) {
    case Precondition::symmetric:
        return is_symmetric(r);
    case Precondition::transitive:
        return is_transitive(r);
    case Precondition::any:
    case Precondition::mixed_symmetric:
        break;
    }
    return true;
}

inline bool satisfies(Precondition, const NmSet&) { return true; }

template <class Value>
void record(LawReport& report, const Law<Value>& law, std::span<const Value> inputs)
{
    if (law.admit && !law.admit(inputs)) {
        return;
    }
    ++report.admitted;
    if (!law.holds(inputs)) {
        if (report.failures++ == 0) {
            report.first_counterexample = inputs_json(inputs);
        }
    }
}

template <class Value, class Draw>
LawReport run_random(const Law<Value>& law, const GenConfig& cfg, std::uint64_t trials, Draw draw)
{
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    LawReport report;
    report.law_name = std::string(law.name);
    report.mode = "random";
    report.seed = cfg.seed;
    std::vector<Value> inputs;
    for (std::uint64_t t = 0; t < trials; ++t) {
        // Seeds depend only on (master, trial, slot), never on evaluation order.
        const std::uint64_t trial_seed = derive_seed(cfg.seed, t);
        inputs.clear();
        for (std::size_t k = 0; k < law.arity; ++k) {
            inputs.push_back(draw(law.pre, cfg.with_seed(derive_seed(trial_seed, k)), t));
        }
        ++report.trials;
        record<Value>(report, law, inputs);
    }
    report.elapsed = std::chrono::steady_clock::now() - start;
    return report;
}

} // namespace detail

/// Names of every registered law, set laws first.
inline std::vector<std::string> law_names()
{
    std::vector<std::string> names;
    for (const auto& l : set_laws()) {
        names.emplace_back(l.name);
    }
    for (const auto& l : relation_laws()) {
        names.emplace_back(l.name);
    }
    return names;
}

/// Runs @p law_name on @p trials independently seeded inputs drawn per its precondition.
inline LawReport check_law(std::string_view law_name, const GenConfig& cfg, std::uint64_t trials)
{
    if (const auto* law = detail::find_law(set_laws(), law_name)) {
        return detail::run_random(*law, cfg, trials,
                                  [](Precondition, const GenConfig& c, std::uint64_t) { return gen_nmset(c); });
    }
    if (const auto* law = detail::find_law(relation_laws(), law_name)) {
        return detail::run_random(*law, cfg, trials, detail::draw_relation);
    }
    throw DomainError("unknown law \"" + std::string(law_name) + "\"");
}

/// A pair of inputs refuting one of the negative claims.
struct Witness {
    std::string claim;
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
    std::vector<NmRelation> inputs;
    NmRelation combined;
};

inline nlohmann::ordered_json to_json(const Witness& w)
{
    nlohmann::ordered_json j;
    j["claim"] = w.claim;
    j["seed"] = w.seed;
    j["trial"] = w.trial;
    j["inputs"] = nlohmann::ordered_json::array();
    for (const auto& r : w.inputs) {
        j["inputs"].push_back(nlohmann::ordered_json::parse(serialize(r)));
    }
    j["combined"] = nlohmann::ordered_json::parse(serialize(w.combined));
    return j;
}

struct Claim {
    std::string_view name;
    Precondition pre;
    NmRelation (*combine)(const NmRelation&, const NmRelation&);
    /// True when the combined relation refutes the claim's positive counterpart.
    bool (*refutes)(const NmRelation&);
};

inline const std::vector<Claim>& claims()
{
    static const std::vector<Claim> all = {
        {"union_not_transitive", Precondition::transitive,
         [](const NmRelation& r, const NmRelation& s) { return union_of(r, s); },
         [](const NmRelation& c) { return !is_transitive(c); }},
        {"addition_not_transitive", Precondition::transitive,
         [](const NmRelation& r, const NmRelation& s) { return addition(r, s); },
         [](const NmRelation& c) { return !is_transitive(c); }},
        {"multiplication_not_transitive", Precondition::transitive,
         [](const NmRelation& r, const NmRelation& s) { return multiplication(r, s); },
         [](const NmRelation& c) { return !is_transitive(c); }},
        {"composition_not_symmetric", Precondition::symmetric,
         [](const NmRelation& r, const NmRelation& s) { return compose(r, s); },
         [](const NmRelation& c) { return !is_symmetric(c); }},
    };
    return all;
}

inline const Claim& find_claim(std::string_view name)
{
    for (const auto& c : claims()) {
        if (c.name == name) {
            return c;
        }
    }
    throw DomainError("unknown claim \"" + std::string(name) + "\"");
}

/// First generated input pair whose combination refutes @p claim, or nothing within @p max_trials.
inline std::optional<Witness> find_counterexample(std::string_view claim, const GenConfig& cfg,
                                                  std::uint64_t max_trials)
{
    const Claim& c = find_claim(claim);
    cfg.validate();
    for (std::uint64_t t = 0; t < max_trials; ++t) {
        const std::uint64_t trial_seed = derive_seed(cfg.seed, t);
        NmRelation r = detail::draw_relation(c.pre, cfg.with_seed(derive_seed(trial_seed, 0)), t);
        NmRelation s = detail::draw_relation(c.pre, cfg.with_seed(derive_seed(trial_seed, 1)), t);
        NmRelation combined = c.combine(r, s);
        if (c.refutes(combined)) {
            return Witness{std::string(c.name), cfg.seed, t, {std::move(r), std::move(s)}, std::move(combined)};
        }
    }
    return std::nullopt;
}

/// Re-checks a witness: inputs meet the claim's precondition and their combination refutes it.
inline bool replay(const Claim& claim, const NmRelation& r, const NmRelation& s)
{
    return detail::satisfies(claim.pre, r) && detail::satisfies(claim.pre, s) && claim.refutes(claim.combine(r, s));
}

/// Default cap on the number of input tuples an exhaustive check may visit.
inline constexpr std::uint64_t default_exhaustive_budget = 4'000'000;

namespace detail {

// base^exp, saturating at UINT64_MAX.
inline std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp)
{
    std::uint64_t acc = 1;
    for (std::uint64_t k = 0; k < exp; ++k) {
        if (base != 0 && acc > UINT64_MAX / base) {
            return UINT64_MAX;
        }
        acc *= base;
    }
    return acc;
}

// Digit k of @p index in base @p radix.
inline std::size_t digit(std::uint64_t index, std::uint64_t radix, std::size_t k)
{
    for (std::size_t s = 0; s < k; ++s) {
        index /= radix;
    }
    return static_cast<std::size_t>(index % radix);
}

// Visits every arity-tuple over pool indices [0, size) whose members are all admissible.
template <class Value, class Make>
void enumerate_tuples(LawReport& report, const Law<Value>& law, std::uint64_t size, Make make)
{
    const std::uint64_t tuples = saturating_pow(size, law.arity);
    report.trials += tuples;
    if (law.arity == 1) {
        for (std::uint64_t k = 0; k < size; ++k) {
            Value v = make(k);
            if (satisfies(law.pre, v)) {
                record<Value>(report, law, std::span<const Value>(&v, 1));
            }
        }
        return;
    }
    std::vector<Value> pool;
    for (std::uint64_t k = 0; k < size; ++k) {
        Value v = make(k);
        if (satisfies(law.pre, v)) {
            pool.push_back(std::move(v));
        }
    }
    std::vector<std::size_t> idx(law.arity, 0);
    std::vector<Value> inputs;
    while (!pool.empty()) {
        inputs.clear();
        for (auto k : idx) {
            inputs.push_back(pool[k]);
        }
        record<Value>(report, law, inputs);
        std::size_t pos = 0;
        while (pos < idx.size() && ++idx[pos] == pool.size()) {
            idx[pos++] = 0;
        }
        if (pos == idx.size()) {
            break;
        }
    }
}

inline NeutroTriple grid_triple(std::span<const double> grid, std::size_t t, std::size_t i, std::size_t f)
{
    return NeutroTriple(grid[t], grid[i], grid[f]);
}

} // namespace detail

/// Checks a law on every input over @p grid, or reports a ResourceError when that is too many.
///
/// When the full tuple space fits in @p budget every tuple is visited
/// ("exhaustive-joint"). Otherwise the law is checked coordinate by coordinate
/// ("exhaustive-factored"): every registered operation and predicate acts
/// independently on each coordinate (element and slot for sets, channel and
/// slot for relations), so a joint counterexample exists iff one exists with a
/// single coordinate varying over all grid values and every other coordinate
/// held at the constant grid[0], which is symmetric and transitive and so
/// admissible under every precondition.
inline LawReport exhaustive_check(std::string_view law_name, std::span<const double> grid,
                                  std::size_t universe_size, std::size_t dimension,
                                  std::uint64_t budget = default_exhaustive_budget)
{
    if (grid.empty() || universe_size == 0 || dimension == 0) {
        throw DomainError("exhaustive_check needs a non-empty grid, universe and dimension");
    }
    for (double v : grid) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw RangeError("grid value outside [0,1]");
        }
    }
    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t g = grid.size();
    const std::size_t m = universe_size;
    const std::size_t n = dimension;
    const Universe universe = Universe::numbered(m);
    const NeutroTriple background = detail::grid_triple(grid, 0, 0, 0);

    LawReport report;
    report.law_name = std::string(law_name);

    const auto too_big = [&](std::uint64_t needed) {
        return ResourceError("exhaustive_check(" + std::string(law_name) + "): needs " +
                             (needed == UINT64_MAX ? std::string("more than 2^64") : std::to_string(needed)) +
                             " input tuples, budget is " + std::to_string(budget));
    };

    if (const auto* law = detail::find_law(set_laws(), law_name)) {
        const std::uint64_t components = 3 * m * n;
        const std::uint64_t space = detail::saturating_pow(g, components);
        const std::uint64_t joint = detail::saturating_pow(space, law->arity);
        if (joint <= budget) {
            report.mode = "exhaustive-joint";
            detail::enumerate_tuples(report, *law, space, [&](std::uint64_t index) {
                std::vector<NeutroTriple> cells;
                for (std::size_t c = 0; c < m * n; ++c) {
                    cells.push_back(detail::grid_triple(grid, detail::digit(index, g, 3 * c),
                                                        detail::digit(index, g, 3 * c + 1),
                                                        detail::digit(index, g, 3 * c + 2)));
                }
                return NmSet(universe, n, std::move(cells));
            });
        } else {
            const std::uint64_t unit_space = g * g * g;
            const std::uint64_t per_unit = detail::saturating_pow(unit_space, law->arity);
            if (per_unit == UINT64_MAX || per_unit * m * n > budget) {
                throw too_big(joint);
            }
            report.mode = "exhaustive-factored";
            for (std::size_t unit = 0; unit < m * n; ++unit) {
                detail::enumerate_tuples(report, *law, unit_space, [&](std::uint64_t index) {
                    std::vector<NeutroTriple> cells(m * n, background);
                    cells[unit] = detail::grid_triple(grid, detail::digit(index, g, 0), detail::digit(index, g, 1),
                                                      detail::digit(index, g, 2));
                    return NmSet(universe, n, std::move(cells));
                });
            }
        }
    } else if (const auto* law = detail::find_law(relation_laws(), law_name)) {
        const std::size_t pairs = m * m;
        const std::uint64_t space = detail::saturating_pow(g, 3 * pairs * n);
        const std::uint64_t joint = detail::saturating_pow(space, law->arity);
        if (joint <= budget) {
            report.mode = "exhaustive-joint";
            detail::enumerate_tuples(report, *law, space, [&](std::uint64_t index) {
                std::vector<NeutroTriple> cells;
                for (std::size_t c = 0; c < pairs * n; ++c) {
                    cells.push_back(detail::grid_triple(grid, detail::digit(index, g, 3 * c),
                                                        detail::digit(index, g, 3 * c + 1),
                                                        detail::digit(index, g, 3 * c + 2)));
                }
                return NmRelation(universe, universe, n, std::move(cells), std::vector<unsigned char>(pairs, 1));
            });
        } else {
            const std::uint64_t unit_space = detail::saturating_pow(g, pairs);
            const std::uint64_t per_unit = detail::saturating_pow(unit_space, law->arity);
            if (per_unit == UINT64_MAX || per_unit > budget / (3 * n)) {
                throw too_big(joint);
            }
            report.mode = "exhaustive-factored";
            for (std::size_t slot = 0; slot < n; ++slot) {
                for (std::size_t channel = 0; channel < 3; ++channel) {
                    detail::enumerate_tuples(report, *law, unit_space, [&](std::uint64_t index) {
                        std::vector<NeutroTriple> cells(pairs * n, background);
                        for (std::size_t p = 0; p < pairs; ++p) {
                            const Units v = to_units(grid[detail::digit(index, g, p)]);
                            const Units b = background.t_units();
                            cells[p * n + slot] = NeutroTriple::from_units(
                                channel == 0 ? v : b, channel == 1 ? v : b, channel == 2 ? v : b);
                        }
                        return NmRelation(universe, universe, n, std::move(cells),
                                          std::vector<unsigned char>(pairs, 1));
                    });
                }
            }
        }
    } else {
        throw DomainError("unknown law \"" + std::string(law_name) + "\"");
    }
    report.elapsed = std::chrono::steady_clock::now() - start;
    return report;
}

} // namespace nmrel

#endif // NMREL_LAWS_HPP
