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

#include "hyperatl/automata.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "hyperatl/error.hpp"
#include "hyperatl/graph.hpp"

namespace hyperatl {

namespace {

using Clause = Apa::Clause;
using Dnf = Apa::Dnf;

void minimize_dnf(Dnf &d)
{
    std::sort(d.begin(), d.end(), [](const Clause &a, const Clause &b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    d.erase(std::unique(d.begin(), d.end()), d.end());
    Dnf out;
    for (auto &c : d) {
        bool subsumed = std::any_of(out.begin(), out.end(), [&](const Clause &k) {
            return std::includes(c.begin(), c.end(), k.begin(), k.end());
        });
        if (!subsumed) out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end());
    d = std::move(out);
}

Dnf dnf_or(Dnf a, const Dnf &b)
{
    a.insert(a.end(), b.begin(), b.end());
    minimize_dnf(a);
    return a;
}

Dnf dnf_and(const Dnf &a, const Dnf &b)
{
    Dnf out;
    for (const auto &x : a) {
        for (const auto &y : b) {
            Clause c;
            std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(c));
            out.push_back(std::move(c));
        }
    }
    minimize_dnf(out);
    return out;
}

const Dnf dnf_true{Clause{}};
const Dnf dnf_false{};

class ApaBuilder
{
public:
    explicit ApaBuilder(const std::vector<AtomRef> &atoms)
    {
        for (std::size_t i = 0; i < atoms.size(); ++i) atom_index_.emplace(atoms[i], i);
    }

    std::uint32_t state_of(const Ltl &f)
    {
        auto key = to_string(f);
        if (auto it = index_.find(key); it != index_.end()) return it->second;
        auto id = static_cast<std::uint32_t>(states.size());
        index_.emplace(std::move(key), id);
        states.push_back(f);
        colors.push_back(f->op == LtlOp::Until || f->op == LtlOp::Eventually ? 1 : 0);
        return id;
    }

    Dnf rho(const Ltl &f, Letter a)
    {
        switch (f->op) {
        case LtlOp::True: return dnf_true;
        case LtlOp::False: return dnf_false;
        case LtlOp::Atom: return holds(*f, a) ? dnf_true : dnf_false;
        case LtlOp::Not:
            if (f->lhs->op != LtlOp::Atom) throw Error("automata", "formula is not in negation normal form");
            return holds(*f->lhs, a) ? dnf_false : dnf_true;
        case LtlOp::And: return dnf_and(rho(f->lhs, a), rho(f->rhs, a));
        case LtlOp::Or: return dnf_or(rho(f->lhs, a), rho(f->rhs, a));
        case LtlOp::Next: return Dnf{Clause{state_of(f->lhs)}};
        case LtlOp::Until: {
            Dnf self{Clause{state_of(f)}};
            return dnf_or(rho(f->rhs, a), dnf_and(rho(f->lhs, a), self));
        }
        case LtlOp::Release: {
            Dnf self{Clause{state_of(f)}};
            return dnf_and(rho(f->rhs, a), dnf_or(rho(f->lhs, a), self));
        }
        case LtlOp::Globally: return dnf_and(rho(f->lhs, a), Dnf{Clause{state_of(f)}});
        case LtlOp::Eventually: return dnf_or(rho(f->lhs, a), Dnf{Clause{state_of(f)}});
        case LtlOp::Implies:
        case LtlOp::Iff: break;
        }
        throw Error("automata", "formula is not in negation normal form");
    }

    std::vector<Ltl> states;
    std::vector<int> colors;

private:
    bool holds(const LtlNode &atom, Letter a) const
    {
        auto it = atom_index_.find(AtomRef{atom.prop, atom.var});
        if (it == atom_index_.end())
            throw Error("automata", "atom " + atom.prop + "{" + atom.var + "} missing from the alphabet");
        return (a >> it->second) & 1U;
    }

    std::map<AtomRef, std::size_t> atom_index_;
    std::map<std::string, std::uint32_t> index_;
};

} // namespace

Apa ltl_to_apa(const Ltl &nnf, const std::vector<AtomRef> &atoms)
{
    if (atoms.size() > max_atoms)
        throw ResourceError("automata", "too many atoms (" + std::to_string(atoms.size()) + ")");
    ApaBuilder b(atoms);
    Apa apa;
    apa.atoms = atoms;
    apa.initial = b.state_of(nnf);
    const std::size_t letters = apa.num_letters();
    // states are created on first reference, so all of them are reachable
    for (std::size_t q = 0; q < b.states.size(); ++q) {
        const Ltl f = b.states[q]; // rho may grow the state list
        for (Letter a = 0; a < letters; ++a) apa.table.push_back(b.rho(f, a));
    }
    apa.states = b.states;
    apa.colors = b.colors;
    return apa;
}

// ---------------------------------------------------------------------------
// Breakpoint construction

Nba apa_to_nba(const Apa &apa)
{
    for (int c : apa.colors)
        if (c != 0 && c != 1) throw Error("automata", "breakpoint construction needs colors in {0,1}");

    const std::size_t n = apa.states.size();
    const std::size_t letters = apa.num_letters();
    BitSet final_states(n);
    for (std::size_t q = 0; q < n; ++q)
        if (apa.colors[q] == 0) final_states.set(q);

    struct MhState
    {
        BitSet s, o;
        bool operator==(const MhState &x) const { return s == x.s && o == x.o; }
    };
    struct MhHash
    {
        std::size_t operator()(const MhState &m) const noexcept { return m.s.hash() * 31 + m.o.hash(); }
    };

    std::unordered_map<MhState, std::uint32_t, MhHash> index;
    std::vector<MhState> states;
    std::vector<std::vector<std::uint32_t>> delta;
    auto intern = [&](MhState m) {
        if (auto it = index.find(m); it != index.end()) return it->second;
        auto id = static_cast<std::uint32_t>(states.size());
        index.emplace(m, id);
        states.push_back(std::move(m));
        return id;
    };

    MhState init{BitSet(n), BitSet(n)};
    init.s.set(apa.initial);
    intern(init);

    for (std::size_t i = 0; i < states.size(); ++i) {
        const MhState cur = states[i];
        std::vector<std::uint32_t> members;
        cur.s.for_each([&](std::size_t q) { members.push_back(static_cast<std::uint32_t>(q)); });
        for (Letter a = 0; a < letters; ++a) {
            std::vector<const Dnf *> options;
            bool dead = false;
            for (auto q : members) {
                options.push_back(&apa.transition(q, a));
                if (options.back()->empty()) dead = true;
            }
            std::vector<std::uint32_t> succ;
            if (!dead) {
                // odometer over one clause per member
                std::vector<std::size_t> pick(members.size(), 0);
                for (;;) {
                    MhState next{BitSet(n), BitSet(n)};
                    for (std::size_t k = 0; k < members.size(); ++k) {
                        for (auto t : (*options[k])[pick[k]]) {
                            next.s.set(t);
                            if (cur.o.test(members[k])) next.o.set(t);
                        }
                    }
                    if (cur.o.none()) next.o = next.s;
                    next.o -= final_states;
                    succ.push_back(intern(std::move(next)));

                    std::size_t k = 0;
                    while (k < members.size() && ++pick[k] == options[k]->size()) pick[k++] = 0;
                    if (k == members.size()) break;
                }
            }
            std::sort(succ.begin(), succ.end());
            succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
            delta.push_back(std::move(succ));
        }
    }

    // keep states that can reach an accepting cycle
    const auto total = static_cast<std::uint32_t>(states.size());
    auto scc = strongly_connected_components(total, [&](std::uint32_t v, auto &&f) {
        for (Letter a = 0; a < letters; ++a)
            for (auto w : delta[v * letters + a]) f(w);
    });
    std::vector<std::vector<std::uint32_t>> pred(total);
    for (std::uint32_t v = 0; v < total; ++v)
        for (Letter a = 0; a < letters; ++a)
            for (auto w : delta[v * letters + a]) pred[w].push_back(v);
    std::vector<bool> live(total, false);
    std::deque<std::uint32_t> work;
    for (std::uint32_t v = 0; v < total; ++v) {
        if (states[v].o.none() && scc.cyclic[scc.component[v]]) {
            live[v] = true;
            work.push_back(v);
        }
    }
    while (!work.empty()) {
        auto v = work.front();
        work.pop_front();
        for (auto u : pred[v]) {
            if (!live[u]) {
                live[u] = true;
                work.push_back(u);
            }
        }
    }

    Nba nba;
    nba.num_atoms = apa.atoms.size();
    if (!live[0]) return nba;
    std::vector<std::uint32_t> remap(total, 0);
    std::uint32_t next_id = 0;
    for (std::uint32_t v = 0; v < total; ++v)
        if (live[v]) remap[v] = next_id++;
    nba.initial = remap[0];
    for (std::uint32_t v = 0; v < total; ++v) {
        if (!live[v]) continue;
        nba.accepting.push_back(states[v].o.none());
        for (Letter a = 0; a < letters; ++a) {
            std::vector<std::uint32_t> out;
            for (auto w : delta[v * letters + a])
                if (live[w]) out.push_back(remap[w]);
            nba.delta.push_back(std::move(out));
        }
    }
    return nba;
}

// ---------------------------------------------------------------------------
// Determinization

namespace {

// Nodes are stored in name order: a parent precedes its children and older
// siblings precede younger ones.
struct SafraTree
{
    std::vector<std::int32_t> parent;
    std::vector<BitSet> label;

    std::vector<std::uint64_t> key() const
    {
        std::vector<std::uint64_t> k;
        for (std::size_t i = 0; i < parent.size(); ++i) {
            k.push_back(static_cast<std::uint64_t>(static_cast<std::int64_t>(parent[i])));
            const auto &w = label[i].words();
            k.insert(k.end(), w.begin(), w.end());
        }
        return k;
    }
};

class Safra
{
public:
    explicit Safra(const Nba &nba) : nba_(nba), n_(nba.num_states()), final_(n_)
    {
        for (std::size_t q = 0; q < n_; ++q)
            if (nba.accepting[q]) final_.set(q);
        const std::size_t letters = nba.num_letters();
        post_.reserve(n_ * letters);
        for (std::size_t i = 0; i < n_ * letters; ++i) {
            BitSet b(n_);
            for (auto t : nba.delta[i]) b.set(t);
            post_.push_back(std::move(b));
        }
    }

    std::uint32_t neutral() const { return static_cast<std::uint32_t>(2 * n_ + 3); }

    SafraTree initial() const
    {
        SafraTree t;
        t.parent.push_back(-1);
        t.label.emplace_back(n_);
        t.label[0].set(nba_.initial);
        return t;
    }

    std::pair<SafraTree, std::uint32_t> step(const SafraTree &t, Letter a) const
    {
        const std::size_t old = t.parent.size();
        std::vector<std::int32_t> parent = t.parent;
        std::vector<BitSet> label = t.label;

        // spawn children on accepting states
        for (std::size_t v = 0; v < old; ++v) {
            BitSet f = label[v];
            f &= final_;
            if (f.any()) {
                parent.push_back(static_cast<std::int32_t>(v));
                label.push_back(std::move(f));
            }
        }
        const std::size_t total = parent.size();

        // powerset successor
        for (auto &l : label) {
            BitSet next(n_);
            l.for_each([&](std::size_t q) { next |= post_[q * nba_.num_letters() + a]; });
            l = std::move(next);
        }

        // horizontal merge: a state stays with the oldest branch
        std::vector<BitSet> claimed(total, BitSet(n_));
        for (std::size_t v = 0; v < total; ++v) {
            if (parent[v] < 0) continue;
            auto p = static_cast<std::size_t>(parent[v]);
            label[v] &= label[p];
            label[v] -= claimed[p];
            claimed[p] |= label[v];
        }

        // empty nodes disappear; vertical merge empties subtrees of green nodes
        std::vector<bool> alive(total);
        std::vector<bool> green(total, false);
        for (std::size_t v = 0; v < total; ++v) {
            bool parent_alive = parent[v] < 0 || alive[static_cast<std::size_t>(parent[v])];
            bool parent_green = parent[v] >= 0 && green[static_cast<std::size_t>(parent[v])];
            alive[v] = parent_alive && !parent_green && label[v].any();
            if (!alive[v]) continue;
            BitSet kids(n_);
            bool has_kids = false;
            for (std::size_t c = v + 1; c < total; ++c) {
                if (parent[c] == static_cast<std::int32_t>(v) && label[c].any()) {
                    kids |= label[c];
                    has_kids = true;
                }
            }
            if (has_kids && kids == label[v]) green[v] = true;
        }
        std::uint32_t color = neutral();
        for (std::size_t v = 0; v < old; ++v) {
            // a removal outranks a green event of the same name
            if (green[v] && alive[v]) color = std::min(color, static_cast<std::uint32_t>(2 * v + 2));
            if (!alive[v]) color = std::min(color, static_cast<std::uint32_t>(2 * v + 1));
        }

        SafraTree out;
        std::vector<std::int32_t> rename(total, -1);
        for (std::size_t v = 0; v < total; ++v) {
            if (!alive[v]) continue;
            rename[v] = static_cast<std::int32_t>(out.parent.size());
            out.parent.push_back(parent[v] < 0 ? -1 : rename[static_cast<std::size_t>(parent[v])]);
            out.label.push_back(std::move(label[v]));
        }
        return {std::move(out), color};
    }

private:
    const Nba &nba_;
    std::size_t n_;
    BitSet final_;
    std::vector<BitSet> post_;
};

Dpa rejecting_dpa(const std::vector<AtomRef> &atoms)
{
    Dpa d;
    d.atoms = atoms;
    d.colors = {1};
    d.table.assign(d.num_letters(), 0);
    return d;
}

} // namespace

std::uint32_t Dpa::max_color() const
{
    std::uint32_t m = 0;
    for (auto c : colors) m = std::max(m, c);
    return m;
}

Dpa nba_to_dpa(const Nba &nba, const std::vector<AtomRef> &atoms)
{
    if (nba.num_atoms != atoms.size()) throw Error("automata", "alphabet size mismatch");
    if (nba.empty()) return rejecting_dpa(atoms);

    Safra safra(nba);
    const std::size_t letters = nba.num_letters();

    // trees first; a DPA state pairs a tree with the color of its entry edge
    std::unordered_map<std::vector<std::uint64_t>, std::uint32_t, VectorHash> tree_index;
    std::vector<SafraTree> trees;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> tree_step; // [tree * letters + a]
    auto intern_tree = [&](SafraTree t) {
        auto k = t.key();
        if (auto it = tree_index.find(k); it != tree_index.end()) return it->second;
        auto id = static_cast<std::uint32_t>(trees.size());
        tree_index.emplace(std::move(k), id);
        trees.push_back(std::move(t));
        return id;
    };
    intern_tree(safra.initial());
    for (std::size_t i = 0; i < trees.size(); ++i) {
        for (Letter a = 0; a < letters; ++a) {
            auto [next, color] = safra.step(trees[i], a);
            tree_step.emplace_back(intern_tree(std::move(next)), color);
        }
    }

    Dpa dpa;
    dpa.atoms = atoms;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> index;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> states;
    auto intern = [&](std::pair<std::uint32_t, std::uint32_t> s) {
        if (auto it = index.find(s); it != index.end()) return it->second;
        auto id = static_cast<std::uint32_t>(states.size());
        index.emplace(s, id);
        states.push_back(s);
        return id;
    };
    intern({0, safra.neutral()});
    for (std::size_t i = 0; i < states.size(); ++i) {
        auto tree = states[i].first;
        dpa.colors.push_back(states[i].second);
        for (Letter a = 0; a < letters; ++a) dpa.table.push_back(intern(tree_step[tree * letters + a]));
    }
    dpa.initial = 0;
    return dpa;
}

Dpa simplify(const Dpa &dpa)
{
    const std::size_t letters = dpa.num_letters();
    std::vector<std::uint32_t> remap(dpa.num_states(), std::numeric_limits<std::uint32_t>::max());
    std::vector<std::uint32_t> order{dpa.initial};
    remap[dpa.initial] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (Letter a = 0; a < letters; ++a) {
            auto t = dpa.step(order[i], a);
            if (remap[t] == std::numeric_limits<std::uint32_t>::max()) {
                remap[t] = static_cast<std::uint32_t>(order.size());
                order.push_back(t);
            }
        }
    }

    Dpa out;
    out.atoms = dpa.atoms;
    out.initial = 0;
    for (auto s : order) {
        out.colors.push_back(dpa.colors[s]);
        for (Letter a = 0; a < letters; ++a) out.table.push_back(remap[dpa.step(s, a)]);
    }

    // colors off every cycle never recur
    const auto n = static_cast<std::uint32_t>(out.num_states());
    auto scc = strongly_connected_components(n, [&](std::uint32_t v, auto &&f) {
        for (Letter a = 0; a < letters; ++a) f(out.step(v, a));
    });
    std::uint32_t top = 0;
    for (std::uint32_t v = 0; v < n; ++v)
        if (scc.cyclic[scc.component[v]]) top = std::max(top, out.colors[v]);
    for (std::uint32_t v = 0; v < n; ++v)
        if (!scc.cyclic[scc.component[v]]) out.colors[v] = top;

    // merge consecutive used colors of equal parity
    std::vector<std::uint32_t> used(out.colors.begin(), out.colors.end());
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    std::map<std::uint32_t, std::uint32_t> compress;
    std::uint32_t value = used.empty() ? 0 : used.front() % 2;
    for (std::size_t i = 0; i < used.size(); ++i) {
        if (i > 0 && used[i] % 2 != used[i - 1] % 2) ++value;
        compress[used[i]] = value;
    }
    for (auto &c : out.colors) c = compress[c];
    return out;
}

Dpa minimize(const Dpa &dpa)
{
    const std::size_t n = dpa.num_states();
    const std::size_t letters = dpa.num_letters();
    std::vector<std::uint32_t> cls(n);
    {
        std::map<std::uint32_t, std::uint32_t> by_color;
        for (std::size_t q = 0; q < n; ++q)
            cls[q] = by_color.emplace(dpa.colors[q], static_cast<std::uint32_t>(by_color.size())).first->second;
    }
    std::size_t count = 0;
    for (;;) {
        std::map<std::vector<std::uint32_t>, std::uint32_t> sig_index;
        std::vector<std::uint32_t> next(n);
        for (std::size_t q = 0; q < n; ++q) {
            std::vector<std::uint32_t> sig;
            sig.reserve(letters + 1);
            sig.push_back(cls[q]);
            for (Letter a = 0; a < letters; ++a) sig.push_back(cls[dpa.step(static_cast<std::uint32_t>(q), a)]);
            next[q] = sig_index.emplace(std::move(sig), static_cast<std::uint32_t>(sig_index.size())).first->second;
        }
        std::size_t new_count = sig_index.size();
        cls = std::move(next);
        if (new_count == count) break;
        count = new_count;
    }

    Dpa out;
    out.atoms = dpa.atoms;
    out.colors.assign(count, 0);
    out.table.assign(count * letters, 0);
    for (std::size_t q = 0; q < n; ++q) {
        out.colors[cls[q]] = dpa.colors[q];
        for (Letter a = 0; a < letters; ++a)
            out.table[cls[q] * letters + a] = cls[dpa.step(static_cast<std::uint32_t>(q), a)];
    }
    out.initial = cls[dpa.initial];
    return out;
}

Dpa ltl_to_dpa(const Ltl &f, const std::vector<AtomRef> &atoms, DpaOptions options)
{
    if (atoms.size() > max_atoms)
        throw ResourceError("automata", "too many atoms (" + std::to_string(atoms.size()) + ")");
    for (const auto &a : collect_atoms(f)) {
        if (std::find(atoms.begin(), atoms.end(), a) == atoms.end())
            throw Error("automata", "atom " + a.prop + "{" + a.var + "} missing from the alphabet");
    }
    auto apa = ltl_to_apa(to_nnf(f), atoms);
    auto nba = apa_to_nba(apa);
    auto dpa = nba_to_dpa(nba, atoms);
    if (dpa.table.size() > options.max_table_entries)
        throw ResourceError("automata", "automaton table exceeds " + std::to_string(options.max_table_entries) +
                                            " entries");
    dpa = simplify(dpa);
    if (options.minimize) dpa = simplify(minimize(dpa));
    return dpa;
}

// ---------------------------------------------------------------------------
// Export

namespace {

// greedy cover of a letter set by maximal cubes (mask, value)
std::vector<std::pair<Letter, Letter>> cover(const std::vector<bool> &set, std::size_t num_atoms)
{
    const auto letters = static_cast<Letter>(set.size());
    const Letter full = letters - 1;
    auto inside = [&](Letter mask, Letter value) {
        for (Letter a = 0; a < letters; ++a)
            if ((a & mask) == value && !set[a]) return false;
        return true;
    };
    std::vector<bool> covered(set.size(), false);
    std::vector<std::pair<Letter, Letter>> out;
    for (Letter a = 0; a < letters; ++a) {
        if (!set[a] || covered[a]) continue;
        Letter mask = full;
        for (std::size_t i = 0; i < num_atoms; ++i) {
            Letter m = mask & ~(Letter{1} << i);
            if (inside(m, a & m)) mask = m;
        }
        out.emplace_back(mask, a & mask);
        for (Letter b = 0; b < letters; ++b)
            if ((b & mask) == (a & mask)) covered[b] = true;
    }
    return out;
}

} // namespace

std::string export_dot(const Dpa &dpa)
{
    const std::size_t letters = dpa.num_letters();
    std::ostringstream os;
    os << "digraph dpa {\n  init [shape=point];\n  init -> q" << dpa.initial << ";\n";
    for (std::size_t q = 0; q < dpa.num_states(); ++q)
        os << "  q" << q << " [label=\"q" << q << " / " << dpa.colors[q] << "\"];\n";
    for (std::size_t q = 0; q < dpa.num_states(); ++q) {
        std::map<std::uint32_t, std::vector<bool>> by_target;
        for (Letter a = 0; a < letters; ++a) {
            auto &v = by_target[dpa.step(static_cast<std::uint32_t>(q), a)];
            v.resize(letters, false);
            v[a] = true;
        }
        for (const auto &[t, set] : by_target) {
            auto cubes = cover(set, dpa.atoms.size());
            os << "  q" << q << " -> q" << t << " [label=\"";
            for (std::size_t c = 0; c < cubes.size(); ++c) {
                if (c) os << " | ";
                auto [mask, val] = cubes[c];
                if (mask == 0) os << "true";
                bool first = true;
                for (std::size_t i = 0; i < dpa.atoms.size(); ++i) {
                    if (!((mask >> i) & 1U)) continue;
                    if (!first) os << " & ";
                    first = false;
                    if (!((val >> i) & 1U)) os << "!";
                    os << dpa.atoms[i].prop << "{" << dpa.atoms[i].var << "}";
                }
            }
            os << "\"];\n";
        }
    }
    os << "}\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Lassos

namespace {

class LassoEval
{
public:
    LassoEval(const std::vector<AtomRef> &atoms, const std::vector<Letter> &prefix, const std::vector<Letter> &loop)
        : atoms_(atoms), word_(prefix), loop_start_(prefix.size())
    {
        word_.insert(word_.end(), loop.begin(), loop.end());
    }

    const std::vector<bool> &eval(const Ltl &f)
    {
        if (auto it = memo_.find(f.get()); it != memo_.end()) return it->second;
        const std::size_t n = word_.size();
        std::vector<bool> v(n);
        switch (f->op) {
        case LtlOp::True: v.assign(n, true); break;
        case LtlOp::False: v.assign(n, false); break;
        case LtlOp::Atom: {
            auto it = std::find(atoms_.begin(), atoms_.end(), AtomRef{f->prop, f->var});
            if (it == atoms_.end()) throw Error("automata", "atom " + f->prop + "{" + f->var + "} not in alphabet");
            auto bit = static_cast<std::size_t>(it - atoms_.begin());
            for (std::size_t i = 0; i < n; ++i) v[i] = (word_[i] >> bit) & 1U;
            break;
        }
        case LtlOp::Not: {
            const auto &a = eval(f->lhs);
            for (std::size_t i = 0; i < n; ++i) v[i] = !a[i];
            break;
        }
        case LtlOp::And:
        case LtlOp::Or:
        case LtlOp::Implies:
        case LtlOp::Iff: {
            const auto a = eval(f->lhs);
            const auto &b = eval(f->rhs);
            for (std::size_t i = 0; i < n; ++i) {
                switch (f->op) {
                case LtlOp::And: v[i] = a[i] && b[i]; break;
                case LtlOp::Or: v[i] = a[i] || b[i]; break;
                case LtlOp::Implies: v[i] = !a[i] || b[i]; break;
                default: v[i] = a[i] == b[i]; break;
                }
            }
            break;
        }
        case LtlOp::Next: {
            const auto &a = eval(f->lhs);
            for (std::size_t i = 0; i < n; ++i) v[i] = a[succ(i)];
            break;
        }
        case LtlOp::Until:
        case LtlOp::Eventually: {
            const std::vector<bool> a = f->op == LtlOp::Until ? eval(f->lhs) : std::vector<bool>(n, true);
            const auto &b = f->op == LtlOp::Until ? eval(f->rhs) : eval(f->lhs);
            v.assign(n, false); // least fixpoint
            fixpoint(v, [&](std::size_t i) { return b[i] || (a[i] && v[succ(i)]); });
            break;
        }
        case LtlOp::Release:
        case LtlOp::Globally: {
            const std::vector<bool> a = f->op == LtlOp::Release ? eval(f->lhs) : std::vector<bool>(n, false);
            const auto &b = f->op == LtlOp::Release ? eval(f->rhs) : eval(f->lhs);
            v.assign(n, true); // greatest fixpoint
            fixpoint(v, [&](std::size_t i) { return b[i] && (a[i] || v[succ(i)]); });
            break;
        }
        }
        return memo_.emplace(f.get(), std::move(v)).first->second;
    }

private:
    std::size_t succ(std::size_t i) const { return i + 1 < word_.size() ? i + 1 : loop_start_; }

    template <typename Rule>
    static void fixpoint(std::vector<bool> &v, Rule &&rule)
    {
        for (bool changed = true; changed;) {
            changed = false;
            for (std::size_t i = v.size(); i-- > 0;) {
                bool x = rule(i);
                if (x != v[i]) {
                    v[i] = x;
                    changed = true;
                }
            }
        }
    }

    const std::vector<AtomRef> &atoms_;
    std::vector<Letter> word_;
    std::size_t loop_start_;
    std::map<const LtlNode *, std::vector<bool>> memo_;
};

} // namespace

bool eval_lasso(const Ltl &f, const std::vector<AtomRef> &atoms, const std::vector<Letter> &prefix,
                const std::vector<Letter> &loop)
{
    if (loop.empty()) throw std::invalid_argument("lasso loop must be non-empty");
    LassoEval e(atoms, prefix, loop);
    return e.eval(f)[0];
}

bool dpa_accepts_lasso(const Dpa &dpa, const std::vector<Letter> &prefix, const std::vector<Letter> &loop)
{
    if (loop.empty()) throw std::invalid_argument("lasso loop must be non-empty");
    std::uint32_t q = dpa.initial;
    for (auto a : prefix) q = dpa.step(q, a);
    std::map<std::pair<std::uint32_t, std::size_t>, std::size_t> seen;
    std::vector<std::uint32_t> trace;
    for (std::size_t j = 0;; j = (j + 1) % loop.size()) {
        auto [it, fresh] = seen.emplace(std::make_pair(q, j), trace.size());
        if (!fresh) {
            std::uint32_t m = std::numeric_limits<std::uint32_t>::max();
            for (std::size_t t = it->second; t < trace.size(); ++t) m = std::min(m, dpa.colors[trace[t]]);
            return m % 2 == 0;
        }
        trace.push_back(q);
        q = dpa.step(q, loop[j]);
    }
}

} // namespace hyperatl
