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

#include "hyperatl/arena.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "hyperatl/error.hpp"

namespace hyperatl {

ParityGame ParityGame::from_edges(std::vector<std::uint8_t> owner, std::vector<std::uint32_t> priority,
                                  const std::vector<std::vector<Vertex>> &edges, Vertex initial)
{
    if (owner.size() != priority.size() || owner.size() != edges.size())
        throw Error("arena", "inconsistent game description");
    ParityGame g;
    g.owner_ = std::move(owner);
    g.priority_ = std::move(priority);
    for (const auto &out : edges) {
        if (out.empty()) throw Error("arena", "vertex without successor");
        for (auto w : out)
            if (w >= edges.size()) throw Error("arena", "edge target out of range");
        g.targets_.insert(g.targets_.end(), out.begin(), out.end());
        g.offsets_.push_back(static_cast<std::uint32_t>(g.targets_.size()));
    }
    g.initial_ = initial;
    return g;
}

std::uint32_t ParityGame::max_priority() const
{
    std::uint32_t m = 0;
    for (auto p : priority_) m = std::max(m, p);
    return m;
}

ParityGame ParityGame::shifted(std::uint32_t delta) const
{
    ParityGame g = *this;
    for (auto &p : g.priority_) p += delta;
    return g;
}

LetterMap::LetterMap(const std::vector<CopySpec> &copies, const std::vector<AtomRef> &atoms,
                     const std::vector<std::size_t> &atom_copy)
{
    if (atom_copy.size() != atoms.size()) throw Error("arena", "atom to copy map has the wrong length");
    masks_.resize(copies.size());
    for (std::size_t c = 0; c < copies.size(); ++c) masks_[c].assign(copies[c].structure->num_states(), 0);
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const std::size_t c = atom_copy[i];
        if (c >= copies.size()) throw Error("arena", "atom refers to a missing copy");
        const Mscgs &g = *copies[c].structure;
        const std::size_t p = g.prop_index(atoms[i].prop);
        if (p == npos)
            throw ConfigError("arena", "proposition '" + atoms[i].prop + "' of path variable '" + atoms[i].var +
                                           "' is not defined by its structure");
        for (StateId s = 0; s < g.num_states(); ++s)
            if (g.has_label(s, p)) masks_[c][s] |= Letter{1} << i;
    }
}

namespace {

constexpr std::uint32_t kind_step = 0;
constexpr std::uint32_t kind_select = 1;

} // namespace

// Vertex keys are fixed-length records:
//   [kind, q, l, b, js[0..k), moves of copy 0 by agent, moves of copy 1, ...]
// Fields not yet fixed in the move protocol hold 0.
class GameBuilder
{
public:
    GameBuilder(const std::vector<CopySpec> &copies, const Dpa &dpa, const std::vector<std::size_t> &atom_copy,
                ArenaOptions options)
        : copies_(copies), dpa_(dpa), letter_(copies, dpa.atoms, atom_copy), options_(options)
    {
        for (const auto &c : copies) {
            if (c.structure == nullptr) throw Error("arena", "copy without structure");
            if (c.coalition.size() != c.structure->agents.size())
                throw Error("arena", "coalition does not match the agents of its structure");
            move_offset_.push_back(width_moves_);
            width_moves_ += c.structure->agents.size();
            move_bound_ = std::max(move_bound_, c.structure->move_bound());
        }
        k_ = copies.size();
        width_ = 4 + k_ + width_moves_;
        table_.assign(1024, empty);
    }

    ParityGame build()
    {
        std::vector<std::uint32_t> init(width_, 0);
        init[0] = kind_step;
        init[1] = dpa_.initial;
        for (std::size_t c = 0; c < k_; ++c) init[4 + c] = copies_[c].structure->initial;
        game_.initial_ = intern(init);

        std::vector<std::uint32_t> cur(width_);
        std::vector<Vertex> out;
        for (Vertex v = 0; v < count_; ++v) {
            std::copy_n(keys_.begin() + static_cast<std::ptrdiff_t>(v) * width_, width_, cur.begin());
            out.clear();
            expand(cur, out);
            game_.targets_.insert(game_.targets_.end(), out.begin(), out.end());
            game_.offsets_.push_back(static_cast<std::uint32_t>(game_.targets_.size()));
        }
        return std::move(game_);
    }

private:
    static constexpr Vertex empty = std::numeric_limits<Vertex>::max();

    const std::vector<CopySpec> &copies_;
    const Dpa &dpa_;
    LetterMap letter_;
    ArenaOptions options_;
    std::size_t k_ = 0;
    std::size_t width_ = 0;
    std::size_t width_moves_ = 0;
    std::vector<std::size_t> move_offset_;
    std::size_t move_bound_ = 1;

    std::vector<std::uint32_t> keys_;
    std::vector<Vertex> table_;
    Vertex count_ = 0;
    ParityGame game_;

    std::span<const std::uint32_t> key(Vertex v) const
    {
        return {keys_.data() + static_cast<std::size_t>(v) * width_, width_};
    }

    static std::size_t hash(std::span<const std::uint32_t> k)
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (auto x : k) h = (h ^ x) * 0x100000001b3ULL;
        return static_cast<std::size_t>(h ^ (h >> 29));
    }

    void grow()
    {
        std::vector<Vertex> t(table_.size() * 2, empty);
        const std::size_t mask = t.size() - 1;
        for (Vertex v = 0; v < count_; ++v) {
            std::size_t i = hash(key(v)) & mask;
            while (t[i] != empty) i = (i + 1) & mask;
            t[i] = v;
        }
        table_ = std::move(t);
    }

    Vertex intern(const std::vector<std::uint32_t> &k)
    {
        const std::size_t mask = table_.size() - 1;
        std::size_t i = hash(k) & mask;
        while (table_[i] != empty) {
            auto other = key(table_[i]);
            if (std::equal(other.begin(), other.end(), k.begin())) return table_[i];
            i = (i + 1) & mask;
        }
        if (count_ >= options_.max_vertices)
            throw ResourceError("arena", "game exceeds the vertex cap of " + std::to_string(options_.max_vertices));
        const Vertex v = count_++;
        table_[i] = v;
        keys_.insert(keys_.end(), k.begin(), k.end());
        const std::uint32_t q = k[1];
        game_.priority_.push_back(dpa_.colors[q]);
        if (k[0] == kind_step) {
            game_.owner_.push_back(0);
            game_.kind_.push_back(ParityGame::Kind::AutomatonStep);
        } else {
            game_.owner_.push_back(k[3] ? 0 : 1);
            game_.kind_.push_back(ParityGame::Kind::MoveSelection);
        }
        if (2 * static_cast<std::size_t>(count_) > table_.size()) grow();
        return v;
    }

    struct Slot
    {
        std::size_t index; // position in the key
        std::size_t options;
    };

    // choices open at the key's (l, b)
    std::vector<Slot> slots(const std::vector<std::uint32_t> &k) const
    {
        std::vector<Slot> out;
        const auto l = static_cast<int>(k[2]);
        const bool b = k[3] != 0;
        for (std::size_t c = 0; c < k_; ++c) {
            const Mscgs &g = *copies_[c].structure;
            const std::size_t base = 4 + k_ + move_offset_[c];
            if (options_.canonical_moves) {
                for (const auto &d : g.states[k[4 + c]].deciders)
                    if (g.stages[d.agent] == l && copies_[c].coalition[d.agent] == b)
                        out.push_back({base + d.agent, d.arity});
            } else {
                for (std::size_t a = 0; a < g.agents.size(); ++a)
                    if (g.stages[a] == l && copies_[c].coalition[a] == b) out.push_back({base + a, move_bound_});
            }
        }
        return out;
    }

    static std::size_t choice_count(const std::vector<Slot> &s)
    {
        std::size_t n = 1;
        for (const auto &x : s) n *= x.options;
        return n;
    }

    static void advance_stage(std::vector<std::uint32_t> &k)
    {
        if (k[3]) {
            k[3] = 0;
        } else {
            k[3] = 1;
            ++k[2];
        }
    }

    // move-selection key with every move fixed -> automaton step on the successors
    void fire(std::vector<std::uint32_t> &k) const
    {
        for (std::size_t c = 0; c < k_; ++c) {
            const Mscgs &g = *copies_[c].structure;
            const std::size_t base = 4 + k_ + move_offset_[c];
            std::vector<std::size_t> moves(k.begin() + static_cast<std::ptrdiff_t>(base),
                                           k.begin() + static_cast<std::ptrdiff_t>(base + g.agents.size()));
            k[4 + c] = g.step(k[4 + c], moves);
        }
        k[0] = kind_step;
        k[2] = 0;
        k[3] = 0;
        std::fill(k.begin() + static_cast<std::ptrdiff_t>(4 + k_), k.end(), 0);
    }

    // every agent of every copy has a move once stages below l and, after
    // the coalition's turn, the coalition at l are fixed
    bool all_fixed(const std::vector<std::uint32_t> &k) const
    {
        const auto l = static_cast<int>(k[2]);
        const bool coalition_done = k[3] == 0;
        for (std::size_t c = 0; c < k_; ++c) {
            const Mscgs &g = *copies_[c].structure;
            for (std::size_t a = 0; a < g.agents.size(); ++a) {
                if (g.stages[a] < l) continue;
                if (g.stages[a] == l && coalition_done && copies_[c].coalition[a]) continue;
                return false;
            }
        }
        return true;
    }

    // in collapsed mode, skip selection vertices without a real choice
    void settle(std::vector<std::uint32_t> &k) const
    {
        if (!options_.collapse) return;
        while (k[0] == kind_select) {
            if (all_fixed(k)) {
                fire(k);
                return;
            }
            auto s = slots(k);
            if (choice_count(s) > 1) return;
            for (const auto &x : s) k[x.index] = 0;
            advance_stage(k);
        }
    }

    void expand(const std::vector<std::uint32_t> &k, std::vector<Vertex> &out)
    {
        std::vector<std::uint32_t> next = k;
        if (k[0] == kind_step) {
            const std::uint32_t q = dpa_.step(k[1], letter_(std::span<const StateId>(k.data() + 4, k_)));
            next[0] = kind_select;
            next[1] = q;
            next[2] = 0;
            next[3] = 1;
            settle(next);
            out.push_back(intern(next));
            return;
        }
        if (all_fixed(k)) {
            fire(next);
            out.push_back(intern(next));
            return;
        }
        const auto s = slots(k);
        std::vector<std::size_t> pick(s.size(), 0);
        for (;;) {
            next = k;
            for (std::size_t i = 0; i < s.size(); ++i) next[s[i].index] = static_cast<std::uint32_t>(pick[i]);
            advance_stage(next);
            settle(next);
            out.push_back(intern(next));
            std::size_t i = s.size();
            while (i > 0 && ++pick[i - 1] == s[i - 1].options) pick[--i] = 0;
            if (i == 0) break;
        }
    }
};

ParityGame build_game(const std::vector<CopySpec> &copies, const Dpa &dpa, const std::vector<std::size_t> &atom_copy,
                      ArenaOptions options)
{
    if (copies.empty()) throw Error("arena", "no quantifiers");
    GameBuilder b(copies, dpa, atom_copy, options);
    return b.build();
}

std::string export_dot(const ParityGame &g, std::span<const Vertex> strategy)
{
    std::ostringstream os;
    os << "digraph game {\n  init [shape=point];\n  init -> v" << g.initial() << ";\n";
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        os << "  v" << v << " [shape=" << (g.owner(v) == 0 ? "circle" : "box") << ",label=\"v" << v << "\\n"
           << g.priority(v) << "\"";
        if (g.kind(v) == ParityGame::Kind::AutomatonStep) os << ",style=filled,fillcolor=lightgrey";
        os << "];\n";
    }
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        for (auto w : g.successors(v)) {
            os << "  v" << v << " -> v" << w;
            if (v < strategy.size() && strategy[v] == w && g.successors(v).size() > 1) os << " [style=bold]";
            os << ";\n";
        }
    }
    os << "}\n";
    return os.str();
}

} // namespace hyperatl
