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
#include <limits>
#include <vector>

#include "hyperatl/arena.hpp"

namespace hyperatl {

inline constexpr Vertex no_vertex = std::numeric_limits<Vertex>::max();

struct Solution
{
    std::vector<std::uint8_t> winner; // per vertex: 0 or 1
    /// Positional strategies of both players: for a vertex owned by the
    /// player that wins it, the chosen successor; no_vertex elsewhere.
    std::vector<Vertex> strategy;

    bool player0_wins(Vertex v) const { return winner[v] == 0; }
};

/// Recursive algorithm with attractor-based strategy extraction.
Solution zielonka(const ParityGame &g);

/// Reference solver enumerating positional strategy pairs. Throws
/// ResourceError when the product of all out-degrees exceeds `bound`.
std::vector<std::uint8_t> brute_force_solve(const ParityGame &g, std::uint64_t bound = std::uint64_t{1} << 20);

/// Checks that both regions are closed under their owner's strategy and that
/// no play consistent with it contains a cycle won by the opponent.
bool verify_strategy(const ParityGame &g, const Solution &s);

} // namespace hyperatl
