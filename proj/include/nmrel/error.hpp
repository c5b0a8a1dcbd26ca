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

#ifndef NMREL_ERROR_HPP
#define NMREL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace nmrel {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A membership component outside [0,1], or an ordering violation in strict mode.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Operands disagree on universes, or a predicate needs a square relation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Sequence lengths that cannot be reconciled.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// An enumeration would exceed its configured budget.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// Malformed or schema-violating document.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Broken internal contract. Should be unreachable.
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace nmrel

#endif // NMREL_ERROR_HPP
