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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "nmrel/cli.hpp"

using namespace nmrel;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(NMREL_TEST_DATA_DIR) + "/" + name; }

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path temp_file(const std::string& name, const std::string& text)
{
    const auto path = std::filesystem::temp_directory_path() / ("nmrel_cli_test_" + name);
    std::ofstream(path) << text;
    return path;
}

NmSet sample(const char* name) { return parse_nmset(slurp(data(name))); }
NmRelation relation(const char* name) { return parse_relation(slurp(data(name))); }

} // namespace

TEST(Cli, OpMatchesLibrary)
{
    const NmSet a = sample("sample_a.json");
    const NmSet b = sample("sample_b.json");
    const std::vector<std::pair<std::string, NmSet>> cases = {
        {"union", union_of(a, b)},
        {"intersection", intersection_of(a, b)},
        {"addition", addition(a, b)},
        {"multiplication", multiplication(a, b)},
    };
    for (const auto& [kind, expected] : cases) {
        const Outcome o = run({"op", "--kind", kind, data("sample_a.json"), data("sample_b.json")});
        EXPECT_EQ(o.code, 0) << kind << o.err;
        EXPECT_EQ(o.out, serialize(expected)) << kind;
    }
    const Outcome c = run({"op", "--kind", "complement", data("sample_a.json")});
    EXPECT_EQ(c.out, serialize(complement(a)));
}

TEST(Cli, OpVerdicts)
{
    const Outcome eq = run({"op", "--kind", "equal", data("sample_a.json"), data("sample_a.json")});
    EXPECT_EQ(eq.code, 0);
    EXPECT_EQ(nlohmann::json::parse(eq.out)["result"], true);

    const Outcome sub = run({"op", "--kind", "subset", data("sample_a.json"), data("sample_b.json")});
    EXPECT_EQ(sub.code, 1);
    EXPECT_EQ(nlohmann::json::parse(sub.out)["result"], false);

    const Outcome card = run({"op", "--kind", "cardinality", data("sample_a.json")});
    EXPECT_EQ(card.code, 0);
    EXPECT_EQ(nlohmann::json::parse(card.out)["result"], 3);
}

TEST(Cli, RelationCommandsMatchLibrary)
{
    const NmRelation r = relation("sample_r.json");
    const NmRelation s = relation("sample_s.json");
    const NmSet a = sample("sample_a.json");
    const NmSet b = sample("sample_b.json");

    EXPECT_EQ(run({"relop", "--kind", "union", data("sample_r.json"), data("sample_s.json")}).out,
              serialize(union_of(r, s)));
    EXPECT_EQ(run({"relop", "--kind", "multiplication", data("sample_r.json"), data("sample_s.json")}).out,
              serialize(multiplication(r, s)));
    EXPECT_EQ(run({"product", data("sample_a.json"), data("sample_b.json")}).out,
              serialize(cartesian_product(a, b)));
    EXPECT_EQ(run({"product", data("sample_a.json")}).out, serialize(cartesian_square(a)));
    EXPECT_EQ(run({"compose", data("sample_s.json"), data("sample_r.json")}).out, serialize(compose(s, r)));
    EXPECT_EQ(run({"inverse", data("sample_r.json")}).out, serialize(inverse(r)));
    EXPECT_EQ(run({"power", "--k", "3", data("sample_r.json")}).out, serialize(power(r, 3)));
    EXPECT_EQ(run({"closure", data("sample_r.json")}).out, serialize(transitive_closure(r)));
    EXPECT_EQ(run({"align", "--n", "5", data("sample_r.json")}).out, serialize(align_dimension(r, 5)));
}

TEST(Cli, CheckProperties)
{
    const Outcome sym = run({"check", "--property", "symmetric", data("sample_r.json")});
    EXPECT_EQ(sym.code, 1);
    const auto j = nlohmann::json::parse(sym.out);
    EXPECT_EQ(j["property"], "symmetric");
    EXPECT_EQ(j["result"], false);

    const Outcome closed = run({"closure", data("sample_r.json")});
    const auto path = temp_file("closure.json", closed.out);
    EXPECT_EQ(run({"check", "--property", "transitive", path.string()}).code, 0);
    EXPECT_EQ(run({"check", "--property", "reflexive", data("sample_r.json")}).code, 1);
    EXPECT_EQ(run({"check", "--property", "equivalence", data("sample_r.json")}).code, 1);

    const Outcome contained = run({"check", "--property", "contained", "--source", data("sample_a.json"), "--target",
                                   data("sample_b.json"), data("sample_r.json")});
    EXPECT_EQ(contained.code, 1);
    EXPECT_EQ(run({"check", "--property", "contained", data("sample_r.json")}).code, 2);
    std::filesystem::remove(path);
}

TEST(Cli, VerifyReport)
{
    const Outcome o = run({"verify", "--law", "inverse_involution", "--trials", "1000", "--seed", "42"});
    EXPECT_EQ(o.code, 0) << o.err;
    const auto j = nlohmann::json::parse(o.out);
    EXPECT_EQ(j["law"], "inverse_involution");
    EXPECT_EQ(j["mode"], "random");
    EXPECT_EQ(j["trials"], 1000);
    EXPECT_EQ(j["failures"], 0);
    EXPECT_EQ(j["seed"], 42);
    EXPECT_TRUE(j["first_counterexample"].is_null());
    for (const char* key : {"admitted", "hit_rate", "elapsed_ms"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
}

TEST(Cli, VerifyExhaustive)
{
    const Outcome o = run({"verify", "--law", "transitive_intersection", "--exhaustive", "--grid", "0,0.5,1",
                           "--universe-size", "2"});
    EXPECT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(nlohmann::json::parse(o.out)["mode"], "exhaustive-factored");

    const Outcome no_grid = run({"verify", "--law", "transitive_intersection", "--exhaustive"});
    EXPECT_EQ(no_grid.code, 2);
    const Outcome too_big = run({"verify", "--law", "composition_associative", "--exhaustive", "--grid", "0,0.5,1",
                                 "--universe-size", "3", "--budget", "10"});
    EXPECT_EQ(too_big.code, 2);
    EXPECT_NE(too_big.err.find("budget is 10"), std::string::npos) << too_big.err;
}

TEST(Cli, HuntFindsWitness)
{
    const Outcome o = run({"hunt", "--claim", "union_not_transitive", "--universe-size", "3", "--grid",
                           "0,0.3,0.6,1", "--max-trials", "10000"});
    EXPECT_EQ(o.code, 1);
    const auto j = nlohmann::json::parse(o.out);
    ASSERT_FALSE(j["witness"].is_null());
    const NmRelation r = parse_relation(j["witness"]["inputs"][0].dump());
    const NmRelation s = parse_relation(j["witness"]["inputs"][1].dump());
    EXPECT_TRUE(replay(find_claim("union_not_transitive"), r, s));

    const Outcome none = run({"hunt", "--claim", "composition_not_symmetric", "--universe-size", "1",
                              "--max-trials", "50"});
    EXPECT_EQ(none.code, 0);
    EXPECT_TRUE(nlohmann::json::parse(none.out)["witness"].is_null());
}

TEST(Cli, SeedFromEnvironment)
{
    const Outcome explicit_seed = run({"gen", "--what", "relation", "--seed", "77"});
    ::setenv("NMREL_SEED", "77", 1);
    const Outcome from_env = run({"gen", "--what", "relation"});
    const Outcome overridden = run({"gen", "--what", "relation", "--seed", "78"});
    ::setenv("NMREL_SEED", "not-a-number", 1);
    const Outcome bad = run({"gen", "--what", "relation"});
    ::unsetenv("NMREL_SEED");
    EXPECT_EQ(from_env.out, explicit_seed.out);
    EXPECT_NE(overridden.out, explicit_seed.out);
    EXPECT_EQ(bad.code, 2);
}

TEST(Cli, GenKinds)
{
    for (const char* what : {"nmset", "relation", "symmetric", "transitive", "reflexive"}) {
        const Outcome o = run({"gen", "--what", what, "--seed", "3", "--dimension", "2", "--partial-probability",
                               "0.2"});
        EXPECT_EQ(o.code, 0) << what << o.err;
        EXPECT_NO_THROW(parse(o.out)) << what;
    }
    const NmRelation sym = parse_relation(run({"gen", "--what", "symmetric", "--seed", "4"}).out);
    EXPECT_TRUE(is_symmetric(sym));
    const NmRelation crisp = parse_relation(run({"gen", "--what", "relation", "--crisp", "--grid", "0,1"}).out);
    for (const auto& c : crisp.cells()) {
        EXPECT_EQ(c.i(), 0.0);
        EXPECT_EQ(c.f(), 0.0);
    }
}

TEST(Cli, OutWritesFile)
{
    const auto path = std::filesystem::temp_directory_path() / "nmrel_cli_test_out.json";
    const Outcome o = run({"--out", path.string(), "inverse", data("sample_r.json")});
    EXPECT_EQ(o.code, 0);
    EXPECT_TRUE(o.out.empty());
    EXPECT_EQ(slurp(path.string()), serialize(inverse(relation("sample_r.json"))));
    std::filesystem::remove(path);
}

TEST(Cli, ListNamesLawsAndClaims)
{
    const Outcome o = run({"list"});
    EXPECT_EQ(o.code, 0);
    const auto j = nlohmann::json::parse(o.out);
    EXPECT_EQ(j["laws"].size(), law_names().size());
    EXPECT_EQ(j["claims"].size(), claims().size());
}

TEST(Cli, StrictFlag)
{
    const auto path = temp_file("decreasing.json", R"({"kind": "nmset", "dimension": 2, "universe": ["a"],
        "entries": [{"key": "a", "t": [0.6, 0.2], "i": [0, 0], "f": [0, 0]}]})");
    EXPECT_EQ(run({"op", "--kind", "cardinality", path.string()}).code, 0);
    const Outcome strict = run({"--strict", "op", "--kind", "cardinality", path.string()});
    EXPECT_EQ(strict.code, 2);
    EXPECT_NE(strict.err.find("entry 0"), std::string::npos) << strict.err;
    std::filesystem::remove(path);
}

TEST(Cli, BadInputExitsTwo)
{
    const auto broken = temp_file("broken.json", "{ not json");
    const auto range = temp_file("range.json", R"({"kind": "nmset", "dimension": 1, "universe": ["a"],
        "entries": [{"key": "a", "t": [1.2], "i": [0], "f": [0]}]})");
    const std::vector<std::vector<std::string>> cases = {
        {"op", "--kind", "union", broken.string(), data("sample_a.json")},
        {"op", "--kind", "complement", range.string()},
        {"op", "--kind", "union", data("sample_a.json")},
        {"op", "--kind", "xor", data("sample_a.json"), data("sample_b.json")},
        {"compose", data("sample_r.json"), data("sample_a.json")},
        {"power", "--k", "0", data("sample_r.json")},
        {"inverse", "/nonexistent/file.json"},
        {"verify", "--law", "no_such_law"},
        {"hunt", "--claim", "no_such_claim"},
        {"gen", "--what", "relation", "--grid", "0,abc"},
        {"gen", "--what", "relation", "--grid", "0,2"},
        {"gen", "--what", "relation", "--partial-probability", "1.5"},
        {"frobnicate"},
        {},
    };
    for (const auto& args : cases) {
        const Outcome o = run(args);
        std::string joined;
        for (const auto& a : args) {
            joined += a + " ";
        }
        EXPECT_EQ(o.code, 2) << joined;
    }
    const Outcome msg = run({"op", "--kind", "complement", range.string()});
    EXPECT_NE(msg.err.find("t[0] = 1.2"), std::string::npos) << msg.err;
    std::filesystem::remove(broken);
    std::filesystem::remove(range);
}

TEST(Cli, HelpExitsZero)
{
    const Outcome o = run({"--help"});
    EXPECT_EQ(o.code, 0);
    EXPECT_NE(o.out.find("verify"), std::string::npos);
}
