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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hyperatl {

using StateId = std::uint32_t;

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

/// An agent whose move influences the successor of a state, together with
/// the number of moves that make a difference there. Moves outside
/// [0, arity) are folded back with a modulo, so the global move set is
/// {0, ..., move_bound() - 1} and the transition function stays total.
struct Decider
{
    std::size_t agent = 0;
    std::size_t arity = 1;

    friend bool operator==(const Decider &, const Decider &) = default;
};

/**
 * One state of a multi-stage game structure.
 *
 * The successor table is indexed in mixed radix over the deciders, first
 * decider most significant: for moves m_0..m_{k-1} the successor is
 * successors[((m_0 * a_1 + m_1) * a_2 + m_2) ...]. A turn-based state has a
 * single decider (its owner); agents not listed are irrelevant here.
 */
struct CgsState
{
    std::vector<Decider> deciders;
    std::vector<StateId> successors;
    std::vector<std::size_t> labels; // sorted indices into Mscgs::props
    std::string name;
};

/// Multi-stage concurrent game structure in explicit form.
struct Mscgs
{
    std::vector<std::string> agents;
    std::vector<int> stages; // parallel to agents
    std::vector<std::string> props;
    std::vector<CgsState> states;
    StateId initial = 0;

    std::size_t agent_index(std::string_view name) const;
    std::size_t prop_index(std::string_view name) const;

    std::size_t num_states() const noexcept { return states.size(); }
    int max_stage() const;

    /// First decider of the state, or agent 0 when nobody decides.
    std::size_t owner(StateId s) const;

    /// Size of the global move set.
    std::size_t move_bound() const;

    /// Totalized transition function; `moves` is indexed by agent.
    StateId step(StateId s, std::span<const std::size_t> moves) const;

    bool has_label(StateId s, std::size_t prop) const;
};

enum class Severity { Error, Warning };

struct Diagnostic
{
    Severity severity = Severity::Error;
    std::string message;
    std::optional<StateId> state;
};

using Diagnostics = std::vector<Diagnostic>;

/// Checks the structural invariants; an empty result means well formed.
Diagnostics validate(const Mscgs &g);

/// Keeps only states reachable from the initial state, renumbered in BFS order.
Mscgs prune_unreachable(const Mscgs &g);

struct StutterOptions
{
    bool prune = true;
};

inline constexpr std::string_view sched_agent = "sched";
inline constexpr std::string_view stut_prop = "stut";

/// Product with {0,1} adding the scheduler agent `sched` in a fresh last
/// stage. Moving with sched = 0 takes the original transition into the
/// (s', 0) copy, sched = 1 freezes into (s, 1), which carries `stut`.
Mscgs stutter_transform(const Mscgs &g, StutterOptions options = {});

/// Prepends a chain of k unlabeled deterministic states before the initial state.
Mscgs shift_transform(const Mscgs &g, std::size_t k);

std::string export_dot(const Mscgs &g);

} // namespace hyperatl
