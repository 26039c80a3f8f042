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

#include "hyperatl/structures.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "hyperatl/error.hpp"

namespace hyperatl {

std::size_t Mscgs::agent_index(std::string_view name) const
{
    for (std::size_t i = 0; i < agents.size(); ++i)
        if (agents[i] == name) return i;
    return npos;
}

std::size_t Mscgs::prop_index(std::string_view name) const
{
    for (std::size_t i = 0; i < props.size(); ++i)
        if (props[i] == name) return i;
    return npos;
}

int Mscgs::max_stage() const
{
    int m = 0;
    for (int d : stages) m = std::max(m, d);
    return m;
}

std::size_t Mscgs::owner(StateId s) const
{
    const auto &st = states[s];
    return st.deciders.empty() ? 0 : st.deciders.front().agent;
}

std::size_t Mscgs::move_bound() const
{
    std::size_t b = 1;
    for (const auto &st : states)
        for (const auto &d : st.deciders) b = std::max(b, d.arity);
    return b;
}

StateId Mscgs::step(StateId s, std::span<const std::size_t> moves) const
{
    const auto &st = states[s];
    std::size_t index = 0;
    for (const auto &d : st.deciders) index = index * d.arity + moves[d.agent] % d.arity;
    return st.successors[index];
}

bool Mscgs::has_label(StateId s, std::size_t prop) const
{
    const auto &l = states[s].labels;
    return std::binary_search(l.begin(), l.end(), prop);
}

Diagnostics validate(const Mscgs &g)
{
    Diagnostics out;
    auto error = [&](std::string msg, std::optional<StateId> s = std::nullopt) {
        out.push_back({Severity::Error, std::move(msg), s});
    };

    if (g.states.empty()) {
        error("structure has no states");
        return out;
    }
    if (g.initial >= g.states.size()) error("initial state out of range");
    if (g.stages.size() != g.agents.size()) error("stage map not defined on every agent");
    for (int d : g.stages)
        if (d < 0) error("negative stage");
    {
        std::set<std::string> seen(g.agents.begin(), g.agents.end());
        if (seen.size() != g.agents.size()) error("duplicate agent name");
    }

    for (StateId s = 0; s < g.states.size(); ++s) {
        const auto &st = g.states[s];
        if (st.successors.empty()) {
            error("non-total transition", s);
            continue;
        }
        std::size_t expected = 1;
        std::set<std::size_t> agents;
        for (const auto &d : st.deciders) {
            if (d.agent >= g.agents.size()) error("decider is not an agent", s);
            if (d.arity == 0) error("decider with zero moves", s);
            if (!agents.insert(d.agent).second) error("agent decides twice", s);
            expected *= std::max<std::size_t>(d.arity, 1);
        }
        if (expected != st.successors.size()) error("successor table does not match decider arities", s);
        for (auto t : st.successors)
            if (t >= g.states.size()) error("successor out of range", s);
        for (auto p : st.labels)
            if (p >= g.props.size()) error("label is not a proposition", s);
        if (!std::is_sorted(st.labels.begin(), st.labels.end())) error("labels not sorted", s);
    }
    return out;
}

Mscgs prune_unreachable(const Mscgs &g)
{
    std::vector<StateId> remap(g.states.size(), static_cast<StateId>(-1));
    std::vector<StateId> order;
    std::deque<StateId> queue{g.initial};
    remap[g.initial] = 0;
    order.push_back(g.initial);
    while (!queue.empty()) {
        auto s = queue.front();
        queue.pop_front();
        for (auto t : g.states[s].successors) {
            if (remap[t] == static_cast<StateId>(-1)) {
                remap[t] = static_cast<StateId>(order.size());
                order.push_back(t);
                queue.push_back(t);
            }
        }
    }

    Mscgs out;
    out.agents = g.agents;
    out.stages = g.stages;
    out.props = g.props;
    out.initial = 0;
    out.states.reserve(order.size());
    for (auto s : order) {
        CgsState st = g.states[s];
        for (auto &t : st.successors) t = remap[t];
        out.states.push_back(std::move(st));
    }
    return out;
}

Mscgs stutter_transform(const Mscgs &g, StutterOptions options)
{
    if (g.agent_index(sched_agent) != npos)
        throw ConfigError("structures", "stutter transform needs a fresh agent, but 'sched' is already present");

    Mscgs out;
    out.agents = g.agents;
    out.agents.emplace_back(sched_agent);
    out.stages = g.stages;
    out.stages.push_back(g.max_stage() + 1);
    out.props = g.props;
    std::size_t stut = g.prop_index(stut_prop);
    if (stut == npos) {
        stut = out.props.size();
        out.props.emplace_back(stut_prop);
    }
    const std::size_t sched = out.agents.size() - 1;

    // (s, b) lives at index 2 * s + b.
    const auto n = static_cast<StateId>(g.states.size());
    out.states.resize(2 * static_cast<std::size_t>(n));
    for (StateId s = 0; s < n; ++s) {
        const auto &base = g.states[s];
        for (StateId b = 0; b < 2; ++b) {
            auto &st = out.states[2 * s + b];
            st.deciders = base.deciders;
            st.deciders.push_back({sched, 2});
            st.successors.reserve(base.successors.size() * 2);
            for (auto t : base.successors) {
                st.successors.push_back(2 * t);     // sched = 0: progress
                st.successors.push_back(2 * s + 1); // sched = 1: freeze
            }
            st.labels = base.labels;
            if (b == 1 && !std::binary_search(st.labels.begin(), st.labels.end(), stut)) {
                st.labels.insert(std::upper_bound(st.labels.begin(), st.labels.end(), stut), stut);
            }
            st.name = "(" + base.name + "," + std::to_string(b) + ")";
        }
    }
    out.initial = 2 * g.initial;
    return options.prune ? prune_unreachable(out) : out;
}

Mscgs shift_transform(const Mscgs &g, std::size_t k)
{
    if (k == 0) throw ConfigError("structures", "shift distance must be at least 1");
    Mscgs out = g;
    const auto n = static_cast<StateId>(g.states.size());
    for (std::size_t i = 0; i < k; ++i) {
        CgsState st;
        st.deciders.push_back({0, 1});
        st.successors.push_back(i + 1 < k ? static_cast<StateId>(n + i + 1) : g.initial);
        st.name = "shift" + std::to_string(i);
        out.states.push_back(std::move(st));
    }
    out.initial = n;
    return out;
}

namespace {

std::string escape(const std::string &s)
{
    std::string r;
    for (char c : s) {
        if (c == '"' || c == '\\') r.push_back('\\');
        r.push_back(c);
    }
    return r;
}

} // namespace

std::string export_dot(const Mscgs &g)
{
    std::ostringstream os;
    os << "digraph cgs {\n";
    os << "  init [shape=point];\n";
    os << "  init -> s" << g.initial << ";\n";
    for (StateId s = 0; s < g.states.size(); ++s) {
        const auto &st = g.states[s];
        os << "  s" << s << " [label=\"s" << s << "\\n{";
        for (std::size_t i = 0; i < st.labels.size(); ++i) {
            if (i) os << ",";
            os << escape(g.props[st.labels[i]]);
        }
        os << "}\"];\n";
    }
    for (StateId s = 0; s < g.states.size(); ++s) {
        const auto &st = g.states[s];
        for (std::size_t idx = 0; idx < st.successors.size(); ++idx) {
            // decode the mixed-radix index back into per-decider moves
            std::vector<std::size_t> moves(st.deciders.size(), 0);
            std::size_t rest = idx;
            for (std::size_t d = st.deciders.size(); d-- > 0;) {
                moves[d] = rest % st.deciders[d].arity;
                rest /= st.deciders[d].arity;
            }
            os << "  s" << s << " -> s" << st.successors[idx] << " [label=\"";
            for (std::size_t d = 0; d < st.deciders.size(); ++d) {
                if (d) os << ",";
                os << escape(g.agents[st.deciders[d].agent]) << ":" << moves[d];
            }
            os << "\"];\n";
        }
    }
    os << "}\n";
    return os.str();
}

} // namespace hyperatl
