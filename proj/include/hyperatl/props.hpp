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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hyperatl/formula.hpp"

// Built-in security and asynchrony properties. Each builder emits formula
// text over path variables p1, p2, ... and parses it, so templates and the
// concrete grammar cannot drift apart.

namespace hyperatl::props {

using PropList = std::vector<std::string>;

/// How a system identifier was declared: a program plus a transform chain
/// applied left to right.
struct Transform
{
    enum class Kind { Stutter, Shift };
    Kind kind = Kind::Stutter;
    std::size_t k = 0; // Shift only

    friend bool operator==(const Transform &, const Transform &) = default;
};

struct SystemDecl
{
    std::string source;
    std::vector<Transform> chain;

    friend bool operator==(const SystemDecl &, const SystemDecl &) = default;
};

using SystemTable = std::map<std::string, SystemDecl>;

/// Throws ConfigError unless `shifted` is `base` followed by shift(k).
void require_shift(const SystemTable &systems, const std::string &base, const std::string &shifted, std::size_t k);

/// Throws ConfigError unless `id` went through the stutter transform.
void require_stutter(const SystemTable &systems, const std::string &id);

/// Joins `a{v1} <-> a{v2}` over the list with `&`, each conjunct
/// parenthesized; `next` prefixes the second side with X[next].
std::string iff_conjunction(const PropList &props, const std::string &v1, const std::string &v2,
                            std::size_t next = 0);

std::string fairness(const std::string &var);

HyperFormula expand_od(const PropList &outputs, const std::optional<std::string> &system = std::nullopt);

HyperFormula expand_ni(const PropList &outputs, const PropList &lows,
                       const std::optional<std::string> &system = std::nullopt);

HyperFormula expand_simsec(const PropList &outputs, const PropList &lows, const std::string &system,
                           const std::string &shifted, const SystemTable *systems = nullptr);

HyperFormula expand_sgni(const PropList &outputs, const PropList &lows, const PropList &highs, std::size_t k,
                         const std::string &system, const std::string &shifted, const SystemTable *systems = nullptr);

HyperFormula expand_od_async(const PropList &outputs, const std::string &stuttered,
                             const SystemTable *systems = nullptr);

/// `align` lists the alignment propositions; an empty list is accepted only
/// when `lows` is empty or `allow_unaligned` is set.
HyperFormula expand_ni_async(const PropList &outputs, const PropList &lows, const PropList &align,
                             const std::string &stuttered, bool allow_unaligned = false,
                             const SystemTable *systems = nullptr);

/// `body` may only use the path variables p1 .. pn.
HyperFormula expand_ahltl(std::size_t n, const Ltl &body, const std::string &stuttered,
                          const SystemTable *systems = nullptr);

/// Parsed `name[:param]` of a built-in property.
struct PropertyRef
{
    std::string name;
    std::optional<std::string> param;
};

/// Accepts od, ni, simsec, sgni:k, od-async, ni-async[:r], ahltl:n.
PropertyRef parse_property_ref(const std::string &text);

} // namespace hyperatl::props
