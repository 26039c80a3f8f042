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

#include <cstdint>
#include <string>
#include <vector>

#include "hyperatl/bitset.hpp"
#include "hyperatl/formula.hpp"

namespace hyperatl {

/// Valuation of the atoms: bit i is set iff atom i holds.
using Letter = std::uint32_t;

inline constexpr std::size_t max_atoms = 20;

/// Alternating parity automaton with colors in {0, 1}; accepting iff every
/// infinite branch sees color 0 infinitely often.
struct Apa
{
    using Clause = std::vector<std::uint32_t>; // sorted state indices
    using Dnf = std::vector<Clause>;           // minimal, no clause contains another

    std::vector<AtomRef> atoms;
    std::vector<Ltl> states; // state i accepts the language of states[i]
    std::vector<int> colors;
    std::uint32_t initial = 0;
    std::vector<Dnf> table; // [state * num_letters + letter]

    std::size_t num_letters() const noexcept { return std::size_t{1} << atoms.size(); }
    const Dnf &transition(std::uint32_t q, Letter a) const { return table[q * num_letters() + a]; }
};

/// Expects a formula in negation normal form over `atoms`.
Apa ltl_to_apa(const Ltl &nnf, const std::vector<AtomRef> &atoms);

/// Nondeterministic Buchi automaton.
struct Nba
{
    std::size_t num_atoms = 0;
    std::vector<bool> accepting;
    std::uint32_t initial = 0;
    std::vector<std::vector<std::uint32_t>> delta; // [state * num_letters + letter], sorted

    std::size_t num_states() const noexcept { return accepting.size(); }
    std::size_t num_letters() const noexcept { return std::size_t{1} << num_atoms; }
    bool empty() const noexcept { return accepting.empty(); }
};

/// Breakpoint construction. Only states that start an accepting run are
/// kept; an empty language yields an automaton without states.
Nba apa_to_nba(const Apa &apa);

/// Deterministic parity automaton with state colors, min-even acceptance.
struct Dpa
{
    std::vector<AtomRef> atoms;
    std::uint32_t initial = 0;
    std::vector<std::uint32_t> colors;
    std::vector<std::uint32_t> table; // [state * num_letters + letter]

    std::size_t num_states() const noexcept { return colors.size(); }
    std::size_t num_letters() const noexcept { return std::size_t{1} << atoms.size(); }
    std::uint32_t step(std::uint32_t q, Letter a) const { return table[q * num_letters() + a]; }
    std::uint32_t max_color() const;
};

/// Safra trees with Piterman's dynamic names.
Dpa nba_to_dpa(const Nba &nba, const std::vector<AtomRef> &atoms);

/// Drops unreachable states, recolors states off every cycle, and
/// compresses colors to a contiguous range of alternating parity.
Dpa simplify(const Dpa &dpa);

/// Merges states with equal color whose successors agree class-wise.
Dpa minimize(const Dpa &dpa);

struct DpaOptions
{
    bool minimize = true;
    std::size_t max_table_entries = std::size_t{1} << 26;
};

/// Full pipeline. `atoms` fixes the letter encoding and must cover every
/// atom of `f`; `f` need not be in NNF.
Dpa ltl_to_dpa(const Ltl &f, const std::vector<AtomRef> &atoms, DpaOptions options = {});

std::string export_dot(const Dpa &dpa);

/// Direct semantics on the ultimately periodic word prefix . loop^omega.
bool eval_lasso(const Ltl &f, const std::vector<AtomRef> &atoms, const std::vector<Letter> &prefix,
                const std::vector<Letter> &loop);

bool dpa_accepts_lasso(const Dpa &dpa, const std::vector<Letter> &prefix, const std::vector<Letter> &loop);

} // namespace hyperatl
