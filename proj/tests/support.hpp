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

// Shared generators and reference evaluators for the test binaries.

#pragma once

#include <algorithm>
#include <map>
#include <queue>
#include <tuple>
#include <random>
#include <string>
#include <vector>

#include "hyperatl/arena.hpp"
#include "hyperatl/automata.hpp"
#include "hyperatl/formula.hpp"
#include "hyperatl/structures.hpp"

namespace hyperatl::testing {

using Rng = std::mt19937_64;

/// Random NNF formula with exactly `size` nodes; a negated atom counts as one.
inline Ltl random_nnf(Rng &rng, std::size_t size, std::size_t num_atoms, const std::string &var = "p")
{
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    if (size <= 1) {
        switch (pick(6)) {
        case 0: return pick(2) ? ltl::tt() : ltl::ff();
        case 1:
        case 2: return ltl::neg(ltl::atom("a" + std::to_string(pick(num_atoms)), var));
        default: return ltl::atom("a" + std::to_string(pick(num_atoms)), var);
        }
    }
    if (size == 2 || pick(2) == 0) {
        auto sub = random_nnf(rng, size - 1, num_atoms, var);
        switch (pick(3)) {
        case 0: return ltl::next(sub);
        case 1: return ltl::globally(sub);
        default: return ltl::eventually(sub);
        }
    }
    std::size_t left = 1 + pick(size - 2);
    auto a = random_nnf(rng, left, num_atoms, var);
    auto b = random_nnf(rng, size - 1 - left, num_atoms, var);
    switch (pick(4)) {
    case 0: return ltl::conj(a, b);
    case 1: return ltl::disj(a, b);
    case 2: return ltl::until(a, b);
    default: return ltl::release(a, b);
    }
}

inline std::vector<AtomRef> numbered_atoms(std::size_t n, const std::string &var = "p")
{
    std::vector<AtomRef> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back({"a" + std::to_string(i), var});
    return out;
}

inline std::vector<Letter> random_word(Rng &rng, std::size_t length, std::size_t num_atoms)
{
    std::uniform_int_distribution<Letter> d(0, (Letter{1} << num_atoms) - 1);
    std::vector<Letter> w(length);
    for (auto &x : w) x = d(rng);
    return w;
}

/// Reference semantics by walking the lasso: every position has a unique
/// successor and at most |prefix|+|loop| distinct suffixes are reachable.
class LassoOracle
{
public:
    LassoOracle(const std::vector<AtomRef> &atoms, std::vector<Letter> prefix, const std::vector<Letter> &loop)
        : atoms_(atoms), word_(std::move(prefix)), start_(word_.size())
    {
        word_.insert(word_.end(), loop.begin(), loop.end());
    }

    bool holds(const Ltl &f, std::size_t i = 0) const
    {
        const std::size_t horizon = word_.size() + 1;
        switch (f->op) {
        case LtlOp::True: return true;
        case LtlOp::False: return false;
        case LtlOp::Atom: {
            for (std::size_t k = 0; k < atoms_.size(); ++k)
                if (atoms_[k].prop == f->prop && atoms_[k].var == f->var) return (word_[i] >> k) & 1U;
            return false;
        }
        case LtlOp::Not: return !holds(f->lhs, i);
        case LtlOp::And: return holds(f->lhs, i) && holds(f->rhs, i);
        case LtlOp::Or: return holds(f->lhs, i) || holds(f->rhs, i);
        case LtlOp::Implies: return !holds(f->lhs, i) || holds(f->rhs, i);
        case LtlOp::Iff: return holds(f->lhs, i) == holds(f->rhs, i);
        case LtlOp::Next: return holds(f->lhs, next(i));
        case LtlOp::Until:
            for (std::size_t k = 0, j = i; k < horizon; ++k, j = next(j)) {
                if (holds(f->rhs, j)) return true;
                if (!holds(f->lhs, j)) return false;
            }
            return false;
        case LtlOp::Release:
            for (std::size_t k = 0, j = i; k < horizon; ++k, j = next(j)) {
                if (!holds(f->rhs, j)) return false;
                if (holds(f->lhs, j)) return true;
            }
            return true;
        case LtlOp::Globally:
            for (std::size_t k = 0, j = i; k < horizon; ++k, j = next(j))
                if (!holds(f->lhs, j)) return false;
            return true;
        case LtlOp::Eventually:
            for (std::size_t k = 0, j = i; k < horizon; ++k, j = next(j))
                if (holds(f->lhs, j)) return true;
            return false;
        }
        return false;
    }

private:
    std::size_t next(std::size_t i) const { return i + 1 < word_.size() ? i + 1 : start_; }

    std::vector<AtomRef> atoms_;
    std::vector<Letter> word_;
    std::size_t start_;
};

/// Random valid structure: agents "A0".."A{agents-1}" at stage 0, props
/// "q0".."q{props-1}", one to two deciders per state with arity 1..3.
inline Mscgs random_structure(Rng &rng, std::size_t states, std::size_t agents, std::size_t props)
{
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    Mscgs g;
    for (std::size_t a = 0; a < agents; ++a) g.agents.push_back("A" + std::to_string(a));
    g.stages.assign(agents, 0);
    for (std::size_t p = 0; p < props; ++p) g.props.push_back("q" + std::to_string(p));
    for (std::size_t s = 0; s < states; ++s) {
        CgsState st;
        std::vector<std::size_t> order(agents);
        for (std::size_t a = 0; a < agents; ++a) order[a] = a;
        std::shuffle(order.begin(), order.end(), rng);
        const std::size_t k = std::min<std::size_t>(agents, 1 + pick(2));
        std::size_t table = 1;
        for (std::size_t i = 0; i < k; ++i) {
            st.deciders.push_back({order[i], 1 + pick(3)});
            table *= st.deciders.back().arity;
        }
        for (std::size_t i = 0; i < table; ++i) st.successors.push_back(static_cast<StateId>(pick(states)));
        for (std::size_t p = 0; p < props; ++p)
            if (pick(2)) st.labels.push_back(p);
        st.name = "r" + std::to_string(s);
        g.states.push_back(std::move(st));
    }
    return g;
}

/// Random game with 1..max_vertices vertices, out-degree 1..max_degree and
/// priorities 0..max_priority.
inline ParityGame random_game(Rng &rng, std::size_t max_vertices, std::size_t max_degree, std::uint32_t max_priority)
{
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    const std::size_t n = 1 + pick(max_vertices);
    std::vector<std::uint8_t> owner(n);
    std::vector<std::uint32_t> priority(n);
    std::vector<std::vector<Vertex>> edges(n);
    for (std::size_t v = 0; v < n; ++v) {
        owner[v] = static_cast<std::uint8_t>(pick(2));
        priority[v] = static_cast<std::uint32_t>(pick(max_priority + 1));
        const std::size_t d = 1 + pick(max_degree);
        for (std::size_t i = 0; i < d; ++i) {
            const auto w = static_cast<Vertex>(pick(n));
            if (std::find(edges[v].begin(), edges[v].end(), w) == edges[v].end()) edges[v].push_back(w);
        }
    }
    return ParityGame::from_edges(std::move(owner), std::move(priority), edges);
}

/// Random complete DPA over `atoms` with 1..max_states states and colors 0..max_color.
inline Dpa random_dpa(Rng &rng, const std::vector<AtomRef> &atoms, std::size_t max_states, std::uint32_t max_color)
{
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    Dpa d;
    d.atoms = atoms;
    const std::size_t n = 1 + pick(max_states);
    for (std::size_t q = 0; q < n; ++q) d.colors.push_back(static_cast<std::uint32_t>(pick(max_color + 1)));
    d.table.resize(n * d.num_letters());
    for (auto &t : d.table) t = static_cast<std::uint32_t>(pick(n));
    return d;
}

/// Plain transcription of the game construction: no collapsing, every agent
/// chooses from the global move bound, vertices interned in a std::map.
/// Shares no code with build_game.
inline ParityGame reference_game(const std::vector<CopySpec> &copies, const Dpa &dpa,
                                 const std::vector<std::size_t> &atom_copy)
{
    struct Key
    {
        bool step;
        std::uint32_t q;
        std::vector<StateId> js;
        std::vector<std::vector<int>> sigma; // -1 = not fixed yet
        int l;
        bool b;
        auto tie() const { return std::tie(step, q, js, sigma, l, b); }
        bool operator<(const Key &o) const { return tie() < o.tie(); }
    };
    std::size_t bound = 1;
    for (const auto &c : copies) bound = std::max(bound, c.structure->move_bound());

    auto letter = [&](const std::vector<StateId> &js) {
        Letter a = 0;
        for (std::size_t i = 0; i < dpa.atoms.size(); ++i) {
            const Mscgs &g = *copies[atom_copy[i]].structure;
            if (g.has_label(js[atom_copy[i]], g.prop_index(dpa.atoms[i].prop))) a |= Letter{1} << i;
        }
        return a;
    };
    auto total = [](const Key &k) {
        for (const auto &s : k.sigma)
            for (int m : s)
                if (m < 0) return false;
        return true;
    };

    std::map<Key, Vertex> ids;
    std::vector<Key> keys;
    std::vector<std::vector<Vertex>> edges;
    auto id = [&](const Key &k) {
        auto [it, fresh] = ids.emplace(k, static_cast<Vertex>(keys.size()));
        if (fresh) {
            keys.push_back(k);
            edges.emplace_back();
        }
        return it->second;
    };

    Key init{true, dpa.initial, {}, {}, 0, true};
    for (const auto &c : copies) {
        init.js.push_back(c.structure->initial);
        init.sigma.emplace_back(c.structure->agents.size(), -1);
    }
    for (auto &s : init.sigma) std::fill(s.begin(), s.end(), -1);
    id(init);
    for (std::size_t v = 0; v < keys.size(); ++v) {
        const Key k = keys[v];
        std::vector<Vertex> out;
        if (k.step) {
            Key n = k;
            n.step = false;
            n.q = dpa.step(k.q, letter(k.js));
            n.l = 0;
            n.b = true;
            out.push_back(id(n));
        } else if (total(k)) {
            Key n = k;
            n.step = true;
            for (std::size_t c = 0; c < copies.size(); ++c) {
                std::vector<std::size_t> moves(k.sigma[c].begin(), k.sigma[c].end());
                n.js[c] = copies[c].structure->step(k.js[c], moves);
                std::fill(n.sigma[c].begin(), n.sigma[c].end(), -1);
            }
            n.l = 0;
            n.b = true;
            out.push_back(id(n));
        } else {
            std::vector<std::pair<std::size_t, std::size_t>> acting; // (copy, agent)
            for (std::size_t c = 0; c < copies.size(); ++c) {
                const Mscgs &g = *copies[c].structure;
                for (std::size_t a = 0; a < g.agents.size(); ++a)
                    if (g.stages[a] == k.l && copies[c].coalition[a] == k.b) acting.push_back({c, a});
            }
            std::vector<std::size_t> pick(acting.size(), 0);
            for (;;) {
                Key n = k;
                for (std::size_t i = 0; i < acting.size(); ++i)
                    n.sigma[acting[i].first][acting[i].second] = static_cast<int>(pick[i]);
                if (k.b) {
                    n.b = false;
                } else {
                    n.b = true;
                    n.l = k.l + 1;
                }
                out.push_back(id(n));
                std::size_t i = acting.size();
                while (i > 0 && ++pick[i - 1] == bound) pick[--i] = 0;
                if (i == 0) break;
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        edges[v] = std::move(out);
    }
    std::vector<std::uint8_t> owner;
    std::vector<std::uint32_t> priority;
    for (const auto &k : keys) {
        owner.push_back(k.step || k.b ? 0 : 1);
        priority.push_back(dpa.colors[k.q]);
    }
    return ParityGame::from_edges(std::move(owner), std::move(priority), edges, 0);
}

} // namespace hyperatl::testing
