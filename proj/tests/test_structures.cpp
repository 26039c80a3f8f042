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

#include "doctest.h"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "hyperatl/error.hpp"
#include "hyperatl/imp.hpp"
#include "hyperatl/structures.hpp"
#include "support.hpp"

using namespace hyperatl;
using hyperatl::testing::random_structure;
using hyperatl::testing::Rng;

namespace {

Mscgs self_loop(std::vector<std::size_t> labels = {})
{
    Mscgs g;
    g.agents = {"N", "H", "L"};
    g.stages = {0, 0, 0};
    g.props = {"a", "b"};
    CgsState s;
    s.deciders = {{0, 1}};
    s.successors = {0};
    s.labels = std::move(labels);
    s.name = "s";
    g.states.push_back(s);
    return g;
}

Mscgs p1()
{
    std::ifstream in(std::string(HYPERATL_ASSET_DIR) + "/programs/p1.imp");
    std::ostringstream ss;
    ss << in.rdbuf();
    return imp::build_cgs(imp::parse_program(ss.str()));
}

// Every joint move vector over the agents, each move below the bound.
std::vector<std::vector<std::size_t>> all_moves(std::size_t agents, std::size_t bound)
{
    std::vector<std::vector<std::size_t>> out{{}};
    for (std::size_t a = 0; a < agents; ++a) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto &m : out)
            for (std::size_t v = 0; v < bound; ++v) {
                next.push_back(m);
                next.back().push_back(v);
            }
        out = std::move(next);
    }
    return out;
}

using Trace = std::vector<std::vector<std::size_t>>;

// Label sequences of every path of exactly `length` states from the initial state.
std::set<Trace> traces(const Mscgs &g, std::size_t length)
{
    std::set<std::pair<StateId, Trace>> frontier{{g.initial, {g.states[g.initial].labels}}};
    for (std::size_t i = 1; i < length; ++i) {
        std::set<std::pair<StateId, Trace>> next;
        for (const auto &[s, t] : frontier)
            for (auto u : g.states[s].successors) {
                auto t2 = t;
                t2.push_back(g.states[u].labels);
                next.insert({u, t2});
            }
        frontier = std::move(next);
    }
    std::set<Trace> out;
    for (const auto &e : frontier) out.insert(e.second);
    return out;
}

} // namespace

TEST_CASE("validate accepts program structures")
{
    CHECK(validate(p1()).empty());
    CHECK(validate(self_loop()).empty());
}

TEST_CASE("validate reports a state without successors")
{
    auto g = self_loop();
    g.states[0].successors.clear();
    auto d = validate(g);
    REQUIRE(d.size() == 1);
    CHECK(d[0].message == "non-total transition");
    CHECK(d[0].state == std::optional<StateId>(0));
}

TEST_CASE("validate reports a partial stage map")
{
    auto g = self_loop();
    g.stages = {0, 0};
    CHECK(validate(g).size() == 1);
}

TEST_CASE("validate reports malformed tables and labels")
{
    auto g = self_loop();
    g.states[0].deciders = {{0, 2}};
    CHECK(validate(g).size() == 1);
    g = self_loop({1, 0});
    CHECK(validate(g).size() == 1);
    g = self_loop({7});
    CHECK(validate(g).size() == 1);
}

TEST_CASE("stutter of a self-loop")
{
    auto g = self_loop({0});
    auto s = stutter_transform(g);
    REQUIRE(s.num_states() == 2);
    const auto stut = s.prop_index(stut_prop);
    const auto sched = s.agent_index(sched_agent);
    REQUIRE(stut != npos);
    REQUIRE(sched != npos);
    CHECK(s.stages[sched] == 1);
    CHECK_FALSE(s.has_label(s.initial, stut));
    const StateId frozen = s.initial == 0 ? 1 : 0;
    CHECK(s.has_label(frozen, stut));
    CHECK(s.has_label(frozen, s.prop_index("a")));
    CHECK(validate(s).empty());
}

TEST_CASE("stutter rejects an existing scheduler")
{
    auto g = stutter_transform(self_loop());
    CHECK_THROWS_AS(stutter_transform(g), ConfigError);
}

TEST_CASE("stutter product: size, labels, stage and both transition clauses")
{
    Rng rng(3);
    for (int round = 0; round < 60; ++round) {
        auto g = random_structure(rng, 1 + round % 6, 1 + round % 3, 2);
        g.stages.back() = round % 3; // non-trivial stage map
        auto s = stutter_transform(g, {false});
        REQUIRE(s.num_states() == 2 * g.num_states());
        CHECK(validate(s).empty());
        const auto stut = s.prop_index(stut_prop);
        const auto sched = s.agent_index(sched_agent);
        CHECK(s.stages[sched] == g.max_stage() + 1);
        CHECK(s.initial == 2 * g.initial);
        for (StateId q = 0; q < g.num_states(); ++q) {
            for (StateId b = 0; b < 2; ++b) {
                const StateId x = 2 * q + b;
                CHECK(s.has_label(x, stut) == (b == 1));
                for (std::size_t p = 0; p < g.props.size(); ++p) CHECK(s.has_label(x, p) == g.has_label(q, p));
                for (auto moves : all_moves(g.agents.size(), g.move_bound())) {
                    const StateId base = g.step(q, moves);
                    moves.push_back(0);
                    CHECK(s.step(x, moves) == 2 * base);
                    moves.back() = 1;
                    CHECK(s.step(x, moves) == 2 * q + 1);
                }
            }
        }
        auto pruned = stutter_transform(g);
        CHECK(pruned.num_states() <= s.num_states());
        CHECK(validate(pruned).empty());
    }
}

TEST_CASE("stutter of p1: freezing then releasing reproduces the original successors")
{
    const auto g = p1();
    const auto s = stutter_transform(g);
    std::map<std::string, StateId> by_name;
    for (StateId q = 0; q < g.num_states(); ++q) by_name[g.states[q].name] = q;
    auto decode = [&](StateId x) {
        const auto &name = s.states[x].name; // "(<base>,<b>)"
        auto comma = name.rfind(',');
        return std::pair{by_name.at(name.substr(1, comma - 1)), name[comma + 1] == '1'};
    };

    const auto sched = s.agent_index(sched_agent);
    const auto moves = all_moves(s.agents.size(), s.move_bound());
    for (StateId x = 0; x < s.num_states(); ++x) {
        const auto [q, frozen] = decode(x);
        std::set<StateId> expected;
        for (auto t : g.states[q].successors) expected.insert(t);

        std::set<StateId> two_step;
        for (const auto &m1 : moves) {
            if (m1[sched] != 1) continue;
            const StateId y = s.step(x, m1);
            CHECK(decode(y) == std::pair{q, true});
            for (const auto &m2 : moves) {
                if (m2[sched] != 0) continue;
                const auto [t, f] = decode(s.step(y, m2));
                CHECK_FALSE(f);
                two_step.insert(t);
            }
        }
        CHECK(two_step == expected);
    }
}

TEST_CASE("shift of a self-loop")
{
    auto g = self_loop({0});
    auto s = shift_transform(g, 1);
    REQUIRE(s.num_states() == 2);
    CHECK(s.states[s.initial].successors == std::vector<StateId>{g.initial});
    CHECK(s.states[s.initial].labels.empty());
    CHECK(validate(s).empty());
    CHECK_THROWS_AS(shift_transform(g, 0), ConfigError);
}

TEST_CASE("shift by three adds a chain of three fresh states")
{
    auto g = self_loop({0});
    auto s = shift_transform(g, 3);
    REQUIRE(s.num_states() == g.num_states() + 3);
    StateId x = s.initial;
    for (int i = 0; i < 3; ++i) {
        CHECK(x >= g.num_states());
        CHECK(s.states[x].labels.empty());
        REQUIRE(s.states[x].successors.size() == 1);
        x = s.states[x].successors[0];
    }
    CHECK(x == g.initial);
}

TEST_CASE("shifted traces are the original traces behind k empty steps")
{
    Rng rng(11);
    for (int round = 0; round < 30; ++round) {
        auto g = random_structure(rng, 3, 1, 2);
        for (std::size_t k = 1; k <= 3; ++k) {
            auto s = shift_transform(g, k);
            CHECK(s.num_states() == g.num_states() + k);
            CHECK(validate(s).empty());
            for (std::size_t len = 1; len <= 4; ++len) {
                std::set<Trace> projected;
                for (auto t : traces(s, len + k)) {
                    for (std::size_t i = 0; i < k; ++i) CHECK(t[i].empty());
                    projected.insert(Trace(t.begin() + static_cast<std::ptrdiff_t>(k), t.end()));
                }
                CHECK(projected == traces(g, len));
            }
        }
    }
}

TEST_CASE("prune keeps exactly the reachable states")
{
    auto g = self_loop();
    CgsState dead;
    dead.deciders = {{0, 1}};
    dead.successors = {0};
    g.states.push_back(dead);
    auto p = prune_unreachable(g);
    CHECK(p.num_states() == 1);
    CHECK(validate(p).empty());
}

TEST_CASE("dot export")
{
    auto g = self_loop();
    auto dot = export_dot(g);
    CHECK(dot.find("s0 -> s0") != std::string::npos);
    CHECK(dot.find("{}") != std::string::npos);
    std::size_t edges = 0;
    for (std::size_t i = dot.find("->"); i != std::string::npos; i = dot.find("->", i + 1)) ++edges;
    CHECK(edges == 2); // the initial marker and the self-loop
    auto big = stutter_transform(p1());
    CHECK(export_dot(big) == export_dot(stutter_transform(p1())));
}
