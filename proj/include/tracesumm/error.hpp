/*
Copyright 2026 The tracesumm Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace tracesumm {

/// Root of every error raised by the library. `module()` names the component
/// that raised it so the CLI can print module-qualified messages.
class Error : public std::runtime_error {
public:
    Error(std::string module, const std::string& what)
        : std::runtime_error(what), module_(std::move(module)) {}

    const std::string& module() const noexcept { return module_; }

private:
    std::string module_;
};

/// Unknown or malformed attribute / column references.
class SchemaError : public Error {
public:
    using Error::Error;
};

class EmptyInputError : public Error {
public:
    using Error::Error;
};

/// Input bytes could not be parsed. Carries a 1-based line number (CSV) or a
/// byte offset (XML); whichever does not apply is left at zero.
class ParseError : public Error {
public:
    ParseError(std::string module, const std::string& what, std::size_t line, std::int64_t byte_offset = -1)
        : Error(std::move(module), what), line_(line), byte_offset_(byte_offset) {}

    std::size_t line() const noexcept { return line_; }
    std::int64_t byte_offset() const noexcept { return byte_offset_; }

private:
    std::size_t line_;
    std::int64_t byte_offset_;
};

class ParameterError : public Error {
public:
    using Error::Error;
};

/// A symbol was handed to a mapping that does not cover it.
class MappingDomainError : public Error {
public:
    MappingDomainError(std::string module, std::uint32_t code)
        : Error(std::move(module), "symbol code " + std::to_string(code) + " is outside the mapping domain"),
          code_(code) {}

    std::uint32_t code() const noexcept { return code_; }

private:
    std::uint32_t code_;
};

class ConsistencyError : public Error {
public:
    using Error::Error;
};

class LookupError : public Error {
public:
    using Error::Error;
};

class DegenerateInputError : public Error {
public:
    using Error::Error;
};

} // namespace tracesumm
