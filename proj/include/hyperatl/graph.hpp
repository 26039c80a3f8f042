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

#include <algorithm>
#include <cstdint>
#include <vector>

namespace hyperatl {

struct SccResult
{
    std::vector<std::uint32_t> component; // component id per vertex
    std::vector<bool> cyclic;             // per component: contains an edge
    std::uint32_t count = 0;
};

/// Tarjan's algorithm without recursion. `succ(v, f)` calls f(w) for every
/// edge v -> w. Component ids are in reverse topological order.
template <typename Succ>
SccResult strongly_connected_components(std::uint32_t n, Succ &&succ)
{
    constexpr std::uint32_t unvisited = 0xffffffffU;
    SccResult r;
    r.component.assign(n, unvisited);
    std::vector<std::uint32_t> index(n, unvisited), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::uint32_t> stack;
    struct Frame
    {
        std::uint32_t v;
        std::vector<std::uint32_t> out;
        std::size_t next = 0;
    };
    std::vector<Frame> call;
    std::uint32_t counter = 0;
    std::vector<bool> self_loop(n, false);

    for (std::uint32_t root = 0; root < n; ++root) {
        if (index[root] != unvisited) continue;
        auto enter = [&](std::uint32_t v) {
            index[v] = low[v] = counter++;
            stack.push_back(v);
            on_stack[v] = true;
            Frame fr{v, {}, 0};
            succ(v, [&](std::uint32_t w) {
                if (w == v) self_loop[v] = true;
                fr.out.push_back(w);
            });
            call.push_back(std::move(fr));
        };
        enter(root);
        while (!call.empty()) {
            auto &fr = call.back();
            if (fr.next < fr.out.size()) {
                auto w = fr.out[fr.next++];
                if (index[w] == unvisited) {
                    enter(w);
                } else if (on_stack[w]) {
                    low[fr.v] = std::min(low[fr.v], index[w]);
                }
                continue;
            }
            auto v = fr.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] == index[v]) {
                std::uint32_t size = 0;
                bool cyc = false;
                for (;;) {
                    auto w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    r.component[w] = r.count;
                    cyc = cyc || self_loop[w];
                    ++size;
                    if (w == v) break;
                }
                r.cyclic.push_back(cyc || size > 1);
                ++r.count;
            }
        }
    }
    return r;
}

} // namespace hyperatl
