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

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyperatl/structures.hpp"

namespace hyperatl {

enum class LtlOp : std::uint8_t {
    True,
    False,
    Atom,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Next,
    Until,
    Release,
    Globally,
    Eventually,
};

struct LtlNode;

/// Immutable, shareable LTL formula over indexed atoms `prop{var}`.
using Ltl = std::shared_ptr<const LtlNode>;

struct LtlNode
{
    LtlOp op = LtlOp::True;
    std::string prop; // Atom only
    std::string var;  // Atom only
    Ltl lhs;          // unary operand or left operand
    Ltl rhs;
};

namespace ltl {

Ltl tt();
Ltl ff();
Ltl atom(std::string prop, std::string var);
Ltl neg(Ltl a);
Ltl conj(Ltl a, Ltl b);
Ltl disj(Ltl a, Ltl b);
Ltl implies(Ltl a, Ltl b);
Ltl iff(Ltl a, Ltl b);
Ltl next(Ltl a);
Ltl next_n(std::size_t k, Ltl a);
Ltl until(Ltl a, Ltl b);
Ltl release(Ltl a, Ltl b);
Ltl globally(Ltl a);
Ltl eventually(Ltl a);

/// Conjunction of all items; `true` for an empty list.
Ltl conj_all(const std::vector<Ltl> &items);

} // namespace ltl

bool structurally_equal(const Ltl &a, const Ltl &b);

/// Number of nodes in the syntax tree.
std::size_t formula_size(const Ltl &f);

/// Number of distinct shared nodes.
std::size_t dag_size(const Ltl &f);

std::string to_string(const Ltl &f);

/// Negation normal form over true/false, literals, &, |, X, U, R, G, F.
/// Shared subformulas are translated once per polarity, so the result has at
/// most twice as many distinct nodes as the input.
Ltl to_nnf(const Ltl &f);

bool is_nnf(const Ltl &f);

struct AtomRef
{
    std::string prop;
    std::string var;

    friend auto operator<=>(const AtomRef &, const AtomRef &) = default;
    friend bool operator==(const AtomRef &, const AtomRef &) = default;
};

/// Distinct atoms in order of first occurrence, left to right.
std::vector<AtomRef> collect_atoms(const Ltl &f);

struct AgentSpec
{
    enum class Kind { Forall, Exists, Coalition };
    Kind kind = Kind::Forall;
    std::vector<std::string> agents; // Coalition only

    friend bool operator==(const AgentSpec &, const AgentSpec &) = default;
};

struct Quantifier
{
    AgentSpec spec;
    std::string var;
    std::optional<std::string> system;

    friend bool operator==(const Quantifier &, const Quantifier &) = default;
};

struct HyperFormula
{
    bool negated = false;
    std::vector<Quantifier> block;
    bool bracketed = true;
    Ltl body;
};

bool structurally_equal(const HyperFormula &a, const HyperFormula &b);

/// Parses `!? [ quant+ ] ltl` (or a single unbracketed quantifier).
/// Throws ParseError with line/column information.
HyperFormula parse_formula(std::string_view text);

/// Parses a quantifier-free LTL body; path variables are not checked.
Ltl parse_ltl(std::string_view text);

std::string to_string(const HyperFormula &f);

struct ResolvedQuantifier
{
    std::string system;
    std::vector<bool> coalition; // indexed by the agents of `system`
};

struct FragmentInfo
{
    std::vector<ResolvedQuantifier> quantifiers;
    std::vector<AtomRef> atoms;    // collect_atoms order of the body
    std::vector<std::size_t> atom_copy; // quantifier index of each atom's path variable
    Ltl nnf_body;
};

/// Resolves every quantifier against its structure (or `default_system`
/// when it carries no binding) and checks coalitions and propositions.
FragmentInfo validate_fragment(const HyperFormula &f, const std::map<std::string, const Mscgs *> &systems,
                               const std::optional<std::string> &default_system = std::nullopt);

} // namespace hyperatl
