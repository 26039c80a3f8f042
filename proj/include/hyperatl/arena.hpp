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
#include <span>
#include <string>
#include <vector>

#include "hyperatl/automata.hpp"
#include "hyperatl/structures.hpp"

namespace hyperatl {

using Vertex = std::uint32_t;

/// Finite two-player parity game in compressed sparse row form. Player 0
/// wins a play iff the minimal priority seen infinitely often is even.
class ParityGame
{
public:
    enum class Kind : std::uint8_t { Plain, AutomatonStep, MoveSelection };

    ParityGame() = default;

    /// Builds a game from adjacency lists; every vertex needs a successor.
    static ParityGame from_edges(std::vector<std::uint8_t> owner, std::vector<std::uint32_t> priority,
                                 const std::vector<std::vector<Vertex>> &edges, Vertex initial = 0);

    std::size_t num_vertices() const noexcept { return owner_.size(); }
    std::size_t num_edges() const noexcept { return targets_.size(); }
    Vertex initial() const noexcept { return initial_; }

    std::span<const Vertex> successors(Vertex v) const
    {
        return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
    }
    std::uint8_t owner(Vertex v) const { return owner_[v]; }
    std::uint32_t priority(Vertex v) const { return priority_[v]; }
    Kind kind(Vertex v) const { return kind_.empty() ? Kind::Plain : kind_[v]; }
    std::uint32_t max_priority() const;

    /// Same game with every priority increased by `delta`.
    ParityGame shifted(std::uint32_t delta) const;

private:
    friend class GameBuilder;

    std::vector<std::uint32_t> offsets_{0};
    std::vector<Vertex> targets_;
    std::vector<std::uint8_t> owner_;
    std::vector<std::uint32_t> priority_;
    std::vector<Kind> kind_;
    Vertex initial_ = 0;
};

/// One quantifier of the block: its structure and the coalition (indexed by
/// the structure's agents) that plays for player 0.
struct CopySpec
{
    const Mscgs *structure = nullptr;
    std::vector<bool> coalition;
};

/// Reads the DPA letter off a joint state.
class LetterMap
{
public:
    /// Throws ConfigError when an atom's proposition is unknown to its copy.
    LetterMap(const std::vector<CopySpec> &copies, const std::vector<AtomRef> &atoms,
              const std::vector<std::size_t> &atom_copy);

    Letter operator()(std::span<const StateId> js) const
    {
        Letter a = 0;
        for (std::size_t c = 0; c < masks_.size(); ++c) a |= masks_[c][js[c]];
        return a;
    }

private:
    std::vector<std::vector<Letter>> masks_; // [copy][state]
};

struct ArenaOptions
{
    /// Skip move-selection vertices that offer a single choice.
    bool collapse = true;
    /// Let only the deciders of the current states pick a move; when false,
    /// every agent picks from the global move bound.
    bool canonical_moves = true;
    std::size_t max_vertices = 10'000'000;
};

/// Parity game whose player 0 wins iff the copies' coalitions can jointly
/// enforce a zipped trace accepted by `dpa`.
ParityGame build_game(const std::vector<CopySpec> &copies, const Dpa &dpa, const std::vector<std::size_t> &atom_copy,
                      ArenaOptions options = {});

/// Owner 0 is drawn as a circle, owner 1 as a box. Edges picked by
/// `strategy` (indexed by vertex, when given) are drawn bold.
std::string export_dot(const ParityGame &g, std::span<const Vertex> strategy = {});

} // namespace hyperatl
