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

#include "hyperatl/solver.hpp"

#include <algorithm>

#include "hyperatl/error.hpp"
#include "hyperatl/graph.hpp"

namespace hyperatl {

namespace {

class Zielonka
{
public:
    explicit Zielonka(const ParityGame &g) : g_(g), n_(static_cast<Vertex>(g.num_vertices()))
    {
        pred_offsets_.assign(n_ + 1, 0);
        for (Vertex v = 0; v < n_; ++v)
            for (auto w : g.successors(v)) ++pred_offsets_[w + 1];
        for (Vertex v = 0; v < n_; ++v) pred_offsets_[v + 1] += pred_offsets_[v];
        preds_.resize(pred_offsets_[n_]);
        std::vector<std::uint32_t> fill(pred_offsets_.begin(), pred_offsets_.end() - 1);
        for (Vertex v = 0; v < n_; ++v)
            for (auto w : g.successors(v)) preds_[fill[w]++] = v;

        in_game_.assign(n_, 1);
        mark_.assign(n_, 0);
        counter_.assign(n_, 0);
        solution_.winner.assign(n_, 0);
        solution_.strategy.assign(n_, no_vertex);
    }

    Solution run()
    {
        std::vector<Vertex> all(n_);
        for (Vertex v = 0; v < n_; ++v) all[v] = v;
        solve(all);
        return std::move(solution_);
    }

private:
    const ParityGame &g_;
    Vertex n_;
    std::vector<std::uint32_t> pred_offsets_;
    std::vector<Vertex> preds_;
    std::vector<char> in_game_; // membership in the current subgame
    std::vector<char> mark_;
    std::vector<std::uint32_t> counter_;
    Solution solution_;

    Vertex first_successor_in_game(Vertex v) const
    {
        for (auto w : g_.successors(v))
            if (in_game_[w]) return w;
        return no_vertex;
    }

    // Attractor of `player` to `target` inside the current subgame. Sets the
    // strategy of attracted player vertices; returns the attractor including
    // `target`, in discovery order.
    std::vector<Vertex> attractor(const std::vector<Vertex> &target, std::uint8_t player)
    {
        constexpr char in_attr = 1, counted = 2;
        std::vector<Vertex> out = target;
        std::vector<Vertex> touched;
        for (auto v : target) mark_[v] = in_attr;
        for (std::size_t i = 0; i < out.size(); ++i) {
            const Vertex w = out[i];
            for (auto j = pred_offsets_[w]; j < pred_offsets_[w + 1]; ++j) {
                const Vertex u = preds_[j];
                if (!in_game_[u] || mark_[u] == in_attr) continue;
                if (g_.owner(u) == player) {
                    mark_[u] = in_attr;
                    solution_.strategy[u] = w;
                    out.push_back(u);
                    continue;
                }
                if (mark_[u] != counted) {
                    mark_[u] = counted;
                    touched.push_back(u);
                    std::uint32_t c = 0;
                    for (auto x : g_.successors(u))
                        if (in_game_[x]) ++c;
                    counter_[u] = c;
                }
                if (--counter_[u] == 0) {
                    mark_[u] = in_attr;
                    out.push_back(u);
                }
            }
        }
        for (auto v : out) mark_[v] = 0;
        for (auto v : touched) mark_[v] = 0;
        return out;
    }

    void remove(const std::vector<Vertex> &vs)
    {
        for (auto v : vs) in_game_[v] = 0;
    }
    void restore(const std::vector<Vertex> &vs)
    {
        for (auto v : vs) in_game_[v] = 1;
    }

    std::vector<Vertex> still_in_game(const std::vector<Vertex> &vs) const
    {
        std::vector<Vertex> out;
        for (auto v : vs)
            if (in_game_[v]) out.push_back(v);
        return out;
    }

    // Solves the subgame `game` (exactly the vertices with in_game_ set).
    // Nested calls strictly lose the minimal priority, so the recursion depth
    // is bounded by the number of priorities; dominions of the opponent are
    // peeled off iteratively.
    void solve(std::vector<Vertex> game)
    {
        std::vector<Vertex> peeled;
        while (!game.empty()) {
            std::uint32_t p = std::numeric_limits<std::uint32_t>::max();
            for (auto v : game) p = std::min(p, g_.priority(v));
            const auto alpha = static_cast<std::uint8_t>(p % 2);
            const auto beta = static_cast<std::uint8_t>(1 - alpha);

            std::vector<Vertex> top;
            for (auto v : game)
                if (g_.priority(v) == p) top.push_back(v);
            auto a = attractor(top, alpha);
            for (auto v : top)
                if (g_.owner(v) == alpha) solution_.strategy[v] = first_successor_in_game(v);

            remove(a);
            auto rest = still_in_game(game);
            solve(rest);
            restore(a);

            std::vector<Vertex> lost;
            for (auto v : rest)
                if (solution_.winner[v] == beta) lost.push_back(v);
            if (lost.empty()) {
                for (auto v : game) solution_.winner[v] = alpha;
                break;
            }

            auto b = attractor(lost, beta);
            for (auto v : b) solution_.winner[v] = beta;
            remove(b);
            game = still_in_game(game);
            peeled.insert(peeled.end(), b.begin(), b.end());
        }
        restore(peeled);
    }
};

} // namespace

Solution zielonka(const ParityGame &g)
{
    Zielonka z(g);
    auto s = z.run();
    // strategy entries only for vertices owned by their winner
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (g.owner(v) != s.winner[v]) s.strategy[v] = no_vertex;
    return s;
}

std::vector<std::uint8_t> brute_force_solve(const ParityGame &g, std::uint64_t bound)
{
    const auto n = static_cast<Vertex>(g.num_vertices());
    std::uint64_t product = 1;
    for (Vertex v = 0; v < n; ++v) {
        product *= g.successors(v).size();
        if (product > bound) throw ResourceError("solver", "too many strategy pairs for brute force");
    }

    std::vector<Vertex> mine, theirs;
    for (Vertex v = 0; v < n; ++v) (g.owner(v) == 0 ? mine : theirs).push_back(v);

    auto odometer = [&](const std::vector<Vertex> &vs, std::vector<std::size_t> &pick) {
        std::size_t i = 0;
        while (i < vs.size() && ++pick[i] == g.successors(vs[i]).size()) pick[i++] = 0;
        return i < vs.size();
    };

    std::vector<std::uint8_t> winner(n, 1);
    std::vector<Vertex> choice(n);
    std::vector<std::size_t> pick0(mine.size(), 0);
    std::vector<std::uint32_t> visited(n);
    do {
        for (std::size_t i = 0; i < mine.size(); ++i) choice[mine[i]] = g.successors(mine[i])[pick0[i]];
        std::vector<bool> beats_all(n, true);
        std::vector<std::size_t> pick1(theirs.size(), 0);
        do {
            for (std::size_t i = 0; i < theirs.size(); ++i) choice[theirs[i]] = g.successors(theirs[i])[pick1[i]];
            for (Vertex start = 0; start < n; ++start) {
                if (!beats_all[start]) continue;
                // walk the unique play until a vertex repeats
                std::fill(visited.begin(), visited.end(), 0);
                std::vector<Vertex> path;
                Vertex v = start;
                while (!visited[v]) {
                    visited[v] = static_cast<std::uint32_t>(path.size() + 1);
                    path.push_back(v);
                    v = choice[v];
                }
                std::uint32_t m = std::numeric_limits<std::uint32_t>::max();
                for (std::size_t i = visited[v] - 1; i < path.size(); ++i) m = std::min(m, g.priority(path[i]));
                if (m % 2 == 1) beats_all[start] = false;
            }
        } while (odometer(theirs, pick1));
        for (Vertex v = 0; v < n; ++v)
            if (beats_all[v]) winner[v] = 0;
    } while (odometer(mine, pick0));
    return winner;
}

bool verify_strategy(const ParityGame &g, const Solution &s)
{
    const auto n = static_cast<Vertex>(g.num_vertices());
    if (s.winner.size() != n || s.strategy.size() != n) return false;
    for (std::uint8_t p = 0; p < 2; ++p) {
        // closure: the owner stays inside via its strategy, the opponent cannot leave
        for (Vertex v = 0; v < n; ++v) {
            if (s.winner[v] != p) continue;
            if (g.owner(v) == p) {
                auto succ = g.successors(v);
                const Vertex w = s.strategy[v];
                if (w == no_vertex || std::find(succ.begin(), succ.end(), w) == succ.end()) return false;
                if (s.winner[w] != p) return false;
            } else {
                for (auto w : g.successors(v))
                    if (s.winner[w] != p) return false;
            }
        }
        // no cycle in the restricted graph whose minimal priority favours 1 - p
        std::vector<std::uint32_t> losing;
        for (Vertex v = 0; v < n; ++v)
            if (s.winner[v] == p && g.priority(v) % 2 != p) losing.push_back(g.priority(v));
        std::sort(losing.begin(), losing.end());
        losing.erase(std::unique(losing.begin(), losing.end()), losing.end());
        for (auto d : losing) {
            auto keep = [&](Vertex v) { return s.winner[v] == p && g.priority(v) >= d; };
            auto scc = strongly_connected_components(n, [&](Vertex v, auto &&f) {
                if (!keep(v)) return;
                if (g.owner(v) == p) {
                    if (keep(s.strategy[v])) f(s.strategy[v]);
                    return;
                }
                for (auto w : g.successors(v))
                    if (keep(w)) f(w);
            });
            for (Vertex v = 0; v < n; ++v)
                if (keep(v) && g.priority(v) == d && scc.cyclic[scc.component[v]]) return false;
        }
    }
    return true;
}

} // namespace hyperatl
