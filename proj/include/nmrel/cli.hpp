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

#ifndef NMREL_CLI_HPP
#define NMREL_CLI_HPP

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nmrel.hpp"

namespace nmrel::cli {

enum ExitCode : int {
    ok = 0,
    /// Predicate false, law violated, or counterexample found.
    negative = 1,
    bad_input = 2,
};

namespace detail {

inline std::string read_input(const std::string& path)
{
    if (path == "-") {
        return std::string(std::istreambuf_iterator<char>(std::cin), {});
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    return std::string(std::istreambuf_iterator<char>(in), {});
}

inline std::uint64_t default_seed()
{
    if (const char* env = std::getenv("NMREL_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw ParseError(std::string("NMREL_SEED is not an unsigned integer: '") + env + "'");
        }
    }
    return 0;
}

inline std::vector<double> parse_grid(const std::string& text)
{
    std::vector<double> grid;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            grid.push_back(std::stod(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception&) {
            throw ParseError("bad grid value '" + item + "'");
        }
    }
    return grid;
}

struct GenOptions {
    std::uint64_t seed = 0;
    std::size_t universe_size = 3;
    std::size_t dimension = 1;
    std::string grid;
    double partial_probability = 0.0;
    bool crisp = false;

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--seed", seed, "Master seed (default: $NMREL_SEED or 0)");
        cmd->add_option("--universe-size", universe_size, "Number of universe elements")->check(CLI::PositiveNumber);
        cmd->add_option("--dimension", dimension, "Triples per element or pair")->check(CLI::PositiveNumber);
        cmd->add_option("--grid", grid, "Comma-separated component values, e.g. 0,0.5,1");
        cmd->add_option("--partial-probability", partial_probability, "Chance a pair is omitted")
            ->check(CLI::Range(0.0, 1.0));
        cmd->add_flag("--crisp", crisp, "Draw t only and force i = f = 0");
    }

    GenConfig config() const
    {
        GenConfig cfg;
        cfg.seed = seed;
        cfg.universe_size = universe_size;
        cfg.dimension = dimension;
        if (!grid.empty()) {
            cfg.value_grid = parse_grid(grid);
        }
        cfg.partial_probability = partial_probability;
        cfg.crisp = crisp;
        cfg.validate();
        return cfg;
    }
};

inline nlohmann::ordered_json verdict(const char* label, const std::string& name, bool result)
{
    nlohmann::ordered_json j;
    j[label] = name;
    j["result"] = result;
    return j;
}

} // namespace detail

/// Runs one command line. Output goes to @p out (or --out), diagnostics to @p err.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Neutrosophic multi set and relation algebra"};
    app.name("nmrel");
    app.require_subcommand(1);

    std::string out_path;
    bool strict = false;
    app.add_option("--out", out_path, "Write the result here instead of standard output");
    app.add_flag("--strict", strict, "Reject truth sequences that decrease");

    std::string kind;
    std::vector<std::string> files;
    std::size_t number = 0;
    std::string law;
    std::string claim;
    std::string property;
    std::string what;
    std::string source_path;
    std::string target_path;
    std::uint64_t trials = 1000;
    std::uint64_t budget = default_exhaustive_budget;
    bool exhaustive = false;
    detail::GenOptions gen;

    auto* op = app.add_subcommand("op", "Set operation or comparison");
    op->add_option("--kind", kind, "Operation")
        ->required()
        ->check(CLI::IsMember(
            {"union", "intersection", "addition", "multiplication", "complement", "subset", "equal", "cardinality"}));
    op->add_option("sets", files, "One or two nmset documents")->required()->expected(1, 2);

    auto* align = app.add_subcommand("align", "Pad a set or relation to a larger dimension");
    align->add_option("--n", number, "Target dimension")->required()->check(CLI::PositiveNumber);
    align->add_option("input", files, "Set or relation document")->required()->expected(1);

    auto* relop = app.add_subcommand("relop", "Pointwise relation operation");
    relop->add_option("--kind", kind, "Operation")
        ->required()
        ->check(CLI::IsMember({"union", "intersection", "addition", "multiplication"}));
    relop->add_option("relations", files, "Two nmrelation documents")->required()->expected(2);

    auto* product = app.add_subcommand("product", "Cartesian product A x B (or A x A)");
    product->add_option("sets", files, "One or two nmset documents")->required()->expected(1, 2);

    auto* compose_cmd = app.add_subcommand("compose", "Composition S o R of R: A->B and S: B->C");
    compose_cmd->add_option("relations", files, "S then R")->required()->expected(2);

    auto* inverse_cmd = app.add_subcommand("inverse", "Inverse relation");
    inverse_cmd->add_option("relation", files)->required()->expected(1);

    auto* power_cmd = app.add_subcommand("power", "k-th power of a square relation");
    power_cmd->add_option("--k", number, "Exponent (>= 1)")->required();
    power_cmd->add_option("relation", files)->required()->expected(1);

    auto* closure_cmd = app.add_subcommand("closure", "Transitive closure");
    closure_cmd->add_option("relation", files)->required()->expected(1);

    auto* check = app.add_subcommand("check", "Relation property");
    check->add_option("--property", property, "Property")
        ->required()
        ->check(CLI::IsMember({"reflexive", "symmetric", "transitive", "equivalence", "contained"}));
    check->add_option("--source", source_path, "Set A (for contained)");
    check->add_option("--target", target_path, "Set B (for contained)");
    check->add_option("relation", files)->required()->expected(1);

    auto* verify = app.add_subcommand("verify", "Check a law on random or enumerated inputs");
    verify->add_option("--law", law, "Law name (see 'list')")->required();
    verify->add_option("--trials", trials, "Random trials");
    verify->add_flag("--exhaustive", exhaustive, "Enumerate every input over --grid instead of sampling");
    verify->add_option("--budget", budget, "Largest number of input tuples --exhaustive may visit");
    gen.attach(verify);

    auto* hunt = app.add_subcommand("hunt", "Search for a counterexample to a negative claim");
    hunt->add_option("--claim", claim, "Claim name (see 'list')")->required();
    hunt->add_option("--max-trials", trials, "Trials before giving up");
    gen.attach(hunt);

    auto* generate = app.add_subcommand("gen", "Emit a random set or relation");
    generate->add_option("--what", what, "Kind of value")
        ->required()
        ->check(CLI::IsMember({"nmset", "relation", "symmetric", "transitive", "reflexive"}));
    gen.attach(generate);

    auto* list = app.add_subcommand("list", "List law and claim names");

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.emplace_back("nmrel");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) {
        argv.push_back(a.c_str());
    }

    try {
        gen.seed = detail::default_seed();
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : bad_input;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return bad_input;
    }

    const Validation mode = strict ? Validation::strict : Validation::relaxed;
    std::string text;
    int status = ok;

    try {
        const auto set_at = [&](std::size_t k) { return parse_nmset(detail::read_input(files.at(k)), mode); };
        const auto rel_at = [&](std::size_t k) { return parse_relation(detail::read_input(files.at(k)), mode); };
        const auto emit_json = [&](const nlohmann::ordered_json& j) { text = j.dump(2) + "\n"; };

        if (op->parsed()) {
            const NmSet a = set_at(0);
            if (kind == "complement" || kind == "cardinality") {
                if (files.size() != 1) {
                    throw DomainError(kind + " takes exactly one set");
                }
                if (kind == "complement") {
                    text = serialize(complement(a));
                } else {
                    nlohmann::ordered_json j;
                    j["operation"] = kind;
                    j["result"] = cardinality(a);
                    emit_json(j);
                }
            } else {
                if (files.size() != 2) {
                    throw DomainError(kind + " takes two sets");
                }
                const NmSet b = set_at(1);
                if (kind == "union") {
                    text = serialize(union_of(a, b));
                } else if (kind == "intersection") {
                    text = serialize(intersection_of(a, b));
                } else if (kind == "addition") {
                    text = serialize(addition(a, b));
                } else if (kind == "multiplication") {
                    text = serialize(multiplication(a, b));
                } else {
                    const bool result = kind == "subset" ? nm_subset(a, b) : nm_equal(a, b);
                    emit_json(detail::verdict("operation", kind, result));
                    status = result ? ok : negative;
                }
            }
        } else if (align->parsed()) {
            const Document d = parse(detail::read_input(files.at(0)), mode);
            text = std::visit([&](const auto& v) { return serialize(align_dimension(v, number)); }, d);
        } else if (relop->parsed()) {
            const NmRelation r = rel_at(0);
            const NmRelation s = rel_at(1);
            if (kind == "union") {
                text = serialize(union_of(r, s));
            } else if (kind == "intersection") {
                text = serialize(intersection_of(r, s));
            } else if (kind == "addition") {
                text = serialize(addition(r, s));
            } else {
                text = serialize(multiplication(r, s));
            }
        } else if (product->parsed()) {
            const NmSet a = set_at(0);
            text = serialize(files.size() == 2 ? cartesian_product(a, set_at(1)) : cartesian_square(a));
        } else if (compose_cmd->parsed()) {
            text = serialize(compose(rel_at(0), rel_at(1)));
        } else if (inverse_cmd->parsed()) {
            text = serialize(inverse(rel_at(0)));
        } else if (power_cmd->parsed()) {
            text = serialize(power(rel_at(0), number));
        } else if (closure_cmd->parsed()) {
            text = serialize(transitive_closure(rel_at(0)));
        } else if (check->parsed()) {
            const NmRelation r = rel_at(0);
            bool result = false;
            if (property == "reflexive") {
                result = is_reflexive(r);
            } else if (property == "symmetric") {
                result = is_symmetric(r);
            } else if (property == "transitive") {
                result = is_transitive(r);
            } else if (property == "equivalence") {
                result = is_equivalence(r);
            } else {
                if (source_path.empty() || target_path.empty()) {
                    throw DomainError("contained needs --source and --target");
                }
                const NmSet a = parse_nmset(detail::read_input(source_path), mode);
                const NmSet b = parse_nmset(detail::read_input(target_path), mode);
                result = !containment_violation(r, a, b).has_value();
            }
            emit_json(detail::verdict("property", property, result));
            status = result ? ok : negative;
        } else if (verify->parsed()) {
            LawReport report;
            if (exhaustive) {
                const GenConfig cfg = gen.config();
                if (!cfg.value_grid) {
                    throw DomainError("--exhaustive needs --grid");
                }
                report = exhaustive_check(law, *cfg.value_grid, cfg.universe_size, cfg.dimension, budget);
            } else {
                report = check_law(law, gen.config(), trials);
            }
            emit_json(to_json(report));
            status = report.failures == 0 ? ok : negative;
        } else if (hunt->parsed()) {
            const GenConfig cfg = gen.config();
            const auto witness = find_counterexample(claim, cfg, trials);
            nlohmann::ordered_json j;
            j["claim"] = claim;
            j["seed"] = cfg.seed;
            j["trials"] = trials;
            j["witness"] = witness ? to_json(*witness) : nlohmann::ordered_json();
            emit_json(j);
            status = witness ? negative : ok;
        } else if (generate->parsed()) {
            const GenConfig cfg = gen.config();
            if (what == "nmset") {
                text = serialize(gen_nmset(cfg));
            } else if (what == "relation") {
                text = serialize(gen_relation(cfg));
            } else if (what == "symmetric") {
                text = serialize(gen_symmetric(cfg));
            } else if (what == "transitive") {
                text = serialize(gen_transitive(cfg));
            } else {
                text = serialize(gen_reflexive(cfg));
            }
        } else if (list->parsed()) {
            nlohmann::ordered_json j;
            j["laws"] = law_names();
            j["claims"] = nlohmann::ordered_json::array();
            for (const auto& c : claims()) {
                j["claims"].push_back(std::string(c.name));
            }
            emit_json(j);
        }
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << '\n';
        return bad_input;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return bad_input;
    } catch (const std::out_of_range& e) {
        err << "error: missing input file\n";
        return bad_input;
    }

    if (out_path.empty()) {
        out << text;
    } else {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot write '" << out_path << "'\n";
            return bad_input;
        }
        file << text;
    }
    return status;
}

} // namespace nmrel::cli

#endif // NMREL_CLI_HPP
