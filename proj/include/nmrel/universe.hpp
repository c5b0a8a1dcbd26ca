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

#ifndef NMREL_UNIVERSE_HPP
#define NMREL_UNIVERSE_HPP

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"

namespace nmrel {

/// A finite set of element identifiers kept in sorted order.
///
/// The identifier list is shared between copies and never mutated, so
/// copying a Universe is cheap and safe across threads.
class Universe {
public:
    Universe() : names_{std::make_shared<const std::vector<std::string>>()} {}

    explicit Universe(std::vector<std::string> names)
    {
        std::sort(names.begin(), names.end());
        auto dup = std::adjacent_find(names.begin(), names.end());
        if (dup != names.end()) {
            throw DomainError("duplicate universe element '" + *dup + "'");
        }
        names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
    }

    /// Universe {prefix0, ..., prefix(n-1)}.
    static Universe numbered(std::size_t n, const std::string& prefix = "e")
    {
        std::vector<std::string> names;
        names.reserve(n);
        for (std::size_t k = 0; k < n; ++k) {
            names.push_back(prefix + std::to_string(k));
        }
        return Universe(std::move(names));
    }

    std::size_t size() const noexcept { return names_->size(); }
    bool empty() const noexcept { return names_->empty(); }
    const std::string& operator[](std::size_t k) const { return (*names_)[k]; }
    std::span<const std::string> names() const noexcept { return *names_; }

    std::optional<std::size_t> find(const std::string& name) const
    {
        auto it = std::lower_bound(names_->begin(), names_->end(), name);
        if (it == names_->end() || *it != name) {
            return std::nullopt;
        }
        return static_cast<std::size_t>(it - names_->begin());
    }

    std::size_t index_of(const std::string& name) const
    {
        if (auto k = find(name)) {
            return *k;
        }
        throw DomainError("'" + name + "' is not in the universe");
    }

    friend bool operator==(const Universe& a, const Universe& b)
    {
        return a.names_ == b.names_ || *a.names_ == *b.names_;
    }

private:
    std::shared_ptr<const std::vector<std::string>> names_;
};

inline void require_same_universe(const Universe& a, const Universe& b, const char* what)
{
    if (!(a == b)) {
        throw DomainError(std::string(what) + ": operands are defined over different universes");
    }
}

} // namespace nmrel

#endif // NMREL_UNIVERSE_HPP
