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

#ifndef NMREL_DOCUMENT_HPP
#define NMREL_DOCUMENT_HPP

#include <cstdio>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "nmset.hpp"
#include "relation.hpp"
#include "triple.hpp"
#include "universe.hpp"

namespace nmrel {

using Document = std::variant<NmSet, NmRelation>;

namespace detail {

// Exact decimal of a fixed-point degree with trailing zeros dropped; this is
// the shortest text that parses back to the same degree.
inline void append_number(std::string& out, Units v)
{
    if (v == 0 || v == degree_scale) {
        out += v == 0 ? '0' : '1';
        return;
    }
    char digits[16];
    std::snprintf(digits, sizeof digits, "%015lld", static_cast<long long>(v));
    std::string_view frac(digits, 15);
    while (frac.back() == '0') {
        frac.remove_suffix(1);
    }
    out += "0.";
    out += frac;
}

inline void append_string(std::string& out, const std::string& s) { out += nlohmann::json(s).dump(); }

inline void append_names(std::string& out, std::span<const std::string> names)
{
    out += '[';
    for (std::size_t k = 0; k < names.size(); ++k) {
        if (k) {
            out += ", ";
        }
        append_string(out, names[k]);
    }
    out += ']';
}

inline void append_sequences(std::string& out, std::span<const NeutroTriple> run)
{
    const auto component = [&](const char* name, Units (NeutroTriple::*get)() const) {
        out += ", \"";
        out += name;
        out += "\": [";
        for (std::size_t j = 0; j < run.size(); ++j) {
            if (j) {
                out += ", ";
            }
            append_number(out, (run[j].*get)());
        }
        out += ']';
    };
    component("t", &NeutroTriple::t_units);
    component("i", &NeutroTriple::i_units);
    component("f", &NeutroTriple::f_units);
}

} // namespace detail

/// Canonical text: fixed field order, sorted universe and keys, one entry per line.
inline std::string serialize(const NmSet& a)
{
    std::string out = "{\n  \"kind\": \"nmset\",\n  \"dimension\": " + std::to_string(a.dimension()) +
                      ",\n  \"universe\": ";
    detail::append_names(out, a.universe().names());
    out += ",\n  \"entries\": [";
    for (std::size_t k = 0; k < a.universe().size(); ++k) {
        out += k ? ",\n    {\"key\": " : "\n    {\"key\": ";
        detail::append_string(out, a.universe()[k]);
        detail::append_sequences(out, a.value_at(k));
        out += '}';
    }
    out += a.universe().empty() ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

/// As for sets; only present pairs are written.
inline std::string serialize(const NmRelation& r)
{
    std::string out = "{\n  \"kind\": \"nmrelation\",\n  \"dimension\": " + std::to_string(r.dimension()) +
                      ",\n  \"universe\": ";
    detail::append_names(out, r.source().names());
    out += ",\n  \"target_universe\": ";
    detail::append_names(out, r.target().names());
    out += ",\n  \"entries\": [";
    bool first = true;
    for (std::size_t x = 0; x < r.source().size(); ++x) {
        for (std::size_t y = 0; y < r.target().size(); ++y) {
            if (!r.present(x, y)) {
                continue;
            }
            out += first ? "\n    {\"key\": [" : ",\n    {\"key\": [";
            first = false;
            detail::append_string(out, r.source()[x]);
            out += ", ";
            detail::append_string(out, r.target()[y]);
            out += ']';
            detail::append_sequences(out, r.value_at(x, y));
            out += '}';
        }
    }
    out += first ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

inline std::string serialize(const Document& d)
{
    return std::visit([](const auto& v) { return serialize(v); }, d);
}

namespace detail {

using json = nlohmann::json;

inline const json& field(const json& obj, const char* name, const std::string& where)
{
    auto it = obj.find(name);
    if (it == obj.end()) {
        throw ParseError(where + ": missing field \"" + name + "\"");
    }
    return *it;
}

inline void only_fields(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where)
{
    for (const auto& item : obj.items()) {
        bool known = false;
        for (auto a : allowed) {
            known = known || item.key() == a;
        }
        if (!known) {
            throw ParseError(where + ": unexpected field \"" + item.key() + "\"");
        }
    }
}

inline Universe read_universe(const json& node, const char* name)
{
    if (!node.is_array()) {
        throw ParseError(std::string("\"") + name + "\" must be an array of strings");
    }
    std::vector<std::string> names;
    for (const auto& v : node) {
        if (!v.is_string()) {
            throw ParseError(std::string("\"") + name + "\" must be an array of strings");
        }
        names.push_back(v.get<std::string>());
    }
    try {
        return Universe(std::move(names));
    } catch (const DomainError& e) {
        throw ParseError(std::string("\"") + name + "\": " + e.what());
    }
}

inline std::vector<double> read_component(const json& entry, const char* name, std::size_t dimension,
                                          const std::string& where)
{
    const json& node = field(entry, name, where);
    if (!node.is_array()) {
        throw ParseError(where + ": \"" + name + "\" must be an array of numbers");
    }
    if (node.size() != dimension) {
        throw ParseError(where + ": \"" + name + "\" has " + std::to_string(node.size()) + " values, expected " +
                         std::to_string(dimension));
    }
    std::vector<double> values;
    for (std::size_t j = 0; j < node.size(); ++j) {
        if (!node[j].is_number()) {
            throw ParseError(where + ": " + name + "[" + std::to_string(j) + "] is not a number");
        }
        const double v = node[j].get<double>();
        if (!(v >= 0.0 && v <= 1.0)) {
            throw RangeError(where + ": " + name + "[" + std::to_string(j) + "] = " + node[j].dump() +
                             " is outside [0,1]");
        }
        values.push_back(v);
    }
    return values;
}

inline MultiValue read_value(const json& entry, std::size_t dimension, Validation mode, const std::string& where)
{
    const auto t = read_component(entry, "t", dimension, where);
    const auto i = read_component(entry, "i", dimension, where);
    const auto f = read_component(entry, "f", dimension, where);
    try {
        return MultiValue::from_sequences(t, i, f, mode);
    } catch (const RangeError& e) {
        throw RangeError(where + ": " + e.what());
    }
}

inline std::string describe_key(const json& key)
{
    return key.dump();
}

} // namespace detail

/// Parses and validates a set or relation document.
///
/// Throws ParseError for malformed JSON or schema problems and RangeError for
/// out-of-range components; messages name the entry and component.
inline Document parse(std::string_view text, Validation mode = Validation::relaxed)
{
    using detail::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("document must be a JSON object");
    }
    const json& kind = detail::field(doc, "kind", "document");
    if (!kind.is_string()) {
        throw ParseError("\"kind\" must be a string");
    }
    const json& dim = detail::field(doc, "dimension", "document");
    if (!dim.is_number_integer() || dim.get<long long>() < 1) {
        throw ParseError("\"dimension\" must be a positive integer");
    }
    const auto dimension = static_cast<std::size_t>(dim.get<long long>());
    const json& entries = detail::field(doc, "entries", "document");
    if (!entries.is_array()) {
        throw ParseError("\"entries\" must be an array");
    }

    if (kind == "nmset") {
        detail::only_fields(doc, {"kind", "dimension", "universe", "entries"}, "document");
        Universe universe = detail::read_universe(detail::field(doc, "universe", "document"), "universe");
        std::vector<NeutroTriple> cells(universe.size() * dimension);
        std::vector<unsigned char> seen(universe.size(), 0);
        for (std::size_t e = 0; e < entries.size(); ++e) {
            const json& entry = entries[e];
            std::string where = "entry " + std::to_string(e);
            if (!entry.is_object()) {
                throw ParseError(where + ": must be an object");
            }
            detail::only_fields(entry, {"key", "t", "i", "f"}, where);
            const json& key = detail::field(entry, "key", where);
            if (!key.is_string()) {
                throw ParseError(where + ": \"key\" must be a string");
            }
            where += " (" + key.get<std::string>() + ")";
            auto k = universe.find(key.get<std::string>());
            if (!k) {
                throw ParseError(where + ": key is not in the universe");
            }
            if (seen[*k]) {
                throw ParseError(where + ": duplicate key");
            }
            seen[*k] = 1;
            MultiValue value = detail::read_value(entry, dimension, mode, where);
            std::copy(value.triples().begin(), value.triples().end(), cells.begin() + *k * dimension);
        }
        for (std::size_t k = 0; k < universe.size(); ++k) {
            if (!seen[k]) {
                throw ParseError("element \"" + universe[k] + "\" has no entry");
            }
        }
        return NmSet(std::move(universe), dimension, std::move(cells));
    }

    if (kind == "nmrelation") {
        detail::only_fields(doc, {"kind", "dimension", "universe", "target_universe", "entries"}, "document");
        Universe source = detail::read_universe(detail::field(doc, "universe", "document"), "universe");
        Universe target =
            detail::read_universe(detail::field(doc, "target_universe", "document"), "target_universe");
        const std::size_t pairs = source.size() * target.size();
        std::vector<NeutroTriple> cells(pairs * dimension, NeutroTriple::fill());
        std::vector<unsigned char> present(pairs, 0);
        for (std::size_t e = 0; e < entries.size(); ++e) {
            const json& entry = entries[e];
            std::string where = "entry " + std::to_string(e);
            if (!entry.is_object()) {
                throw ParseError(where + ": must be an object");
            }
            detail::only_fields(entry, {"key", "t", "i", "f"}, where);
            const json& key = detail::field(entry, "key", where);
            if (!key.is_array() || key.size() != 2 || !key[0].is_string() || !key[1].is_string()) {
                throw ParseError(where + ": \"key\" must be a pair of strings");
            }
            where += " " + detail::describe_key(key);
            auto x = source.find(key[0].get<std::string>());
            auto y = target.find(key[1].get<std::string>());
            if (!x || !y) {
                throw ParseError(where + ": key is not in universe x target_universe");
            }
            const std::size_t p = *x * target.size() + *y;
            if (present[p]) {
                throw ParseError(where + ": duplicate key");
            }
            present[p] = 1;
            MultiValue value = detail::read_value(entry, dimension, mode, where);
            std::copy(value.triples().begin(), value.triples().end(), cells.begin() + p * dimension);
        }
        return NmRelation(std::move(source), std::move(target), dimension, std::move(cells), std::move(present));
    }

    throw ParseError("unknown kind \"" + kind.get<std::string>() + "\"; expected \"nmset\" or \"nmrelation\"");
}

inline NmSet parse_nmset(std::string_view text, Validation mode = Validation::relaxed)
{
    Document d = parse(text, mode);
    if (auto* s = std::get_if<NmSet>(&d)) {
        return std::move(*s);
    }
    throw ParseError("expected an nmset document, got an nmrelation");
}

inline NmRelation parse_relation(std::string_view text, Validation mode = Validation::relaxed)
{
    Document d = parse(text, mode);
    if (auto* r = std::get_if<NmRelation>(&d)) {
        return std::move(*r);
    }
    throw ParseError("expected an nmrelation document, got an nmset");
}

} // namespace nmrel

#endif // NMREL_DOCUMENT_HPP
