/*
 * Copyright 2026 The hyperatl Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hyperatl {

/// Base class of every error raised by the library. Carries the name of the
/// module that raised it so the driver can print tagged diagnostics.
class Error : public std::runtime_error
{
public:
    Error(std::string module, const std::string &message)
        : std::runtime_error("[" + module + "] " + message), module_(std::move(module))
    {
    }

    const std::string &module() const noexcept { return module_; }

private:
    std::string module_;
};

/// Syntax or well-formedness problem in formula or program text.
class ParseError : public Error
{
public:
    ParseError(std::string module, const std::string &message, std::size_t line, std::size_t column)
        : Error(std::move(module), std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column)
    {
    }

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Inputs are individually well formed but do not fit together
/// (unknown system, unknown agent, missing proposition, bad binding...).
class ConfigError : public Error
{
public:
    using Error::Error;
};

/// A configured state/vertex cap was exceeded.
class ResourceError : public Error
{
public:
    using Error::Error;
};

} // namespace hyperatl
