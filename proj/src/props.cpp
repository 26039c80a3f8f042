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

#include "hyperatl/props.hpp"

#include <set>

#include "hyperatl/error.hpp"
#include "hyperatl/structures.hpp"

namespace hyperatl::props {

namespace {

const SystemDecl &lookup(const SystemTable &systems, const std::string &id)
{
    auto it = systems.find(id);
    if (it == systems.end()) throw ConfigError("props", "unknown system '" + id + "'");
    return it->second;
}

std::string binding(const std::optional<std::string> &system)
{
    return system ? " @ " + *system : "";
}

void require_nonempty(const PropList &props, const char *what)
{
    if (props.empty()) throw ConfigError("props", std::string("no ") + what + " propositions given");
}

std::string next_prefix(std::size_t k)
{
    if (k == 0) return "";
    if (k == 1) return "X ";
    return "X[" + std::to_string(k) + "] ";
}

} // namespace

void require_shift(const SystemTable &systems, const std::string &base, const std::string &shifted, std::size_t k)
{
    const auto &b = lookup(systems, base);
    const auto &s = lookup(systems, shifted);
    SystemDecl expected = b;
    expected.chain.push_back({Transform::Kind::Shift, k});
    if (!(s == expected))
        throw ConfigError("props", "system '" + shifted + "' must be '" + base + "' shifted by " + std::to_string(k));
}

void require_stutter(const SystemTable &systems, const std::string &id)
{
    const auto &d = lookup(systems, id);
    for (const auto &t : d.chain)
        if (t.kind == Transform::Kind::Stutter) return;
    throw ConfigError("props", "system '" + id + "' is not stutter-transformed");
}

std::string iff_conjunction(const PropList &props, const std::string &v1, const std::string &v2, std::size_t next)
{
    std::string out;
    for (std::size_t i = 0; i < props.size(); ++i) {
        if (i) out += " & ";
        out += "(" + props[i] + "{" + v1 + "} <-> " + next_prefix(next) + props[i] + "{" + v2 + "})";
    }
    return out;
}

std::string fairness(const std::string &var)
{
    return "G F !" + std::string(stut_prop) + "{" + var + "}";
}

HyperFormula expand_od(const PropList &outputs, const std::optional<std::string> &system)
{
    require_nonempty(outputs, "output");
    std::string body;
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        if (i) body += " & ";
        body += "G(" + outputs[i] + "{p1} <-> " + outputs[i] + "{p2})";
    }
    const auto b = binding(system);
    return parse_formula("[forall p1" + b + " . forall p2" + b + " .] " + body);
}

HyperFormula expand_ni(const PropList &outputs, const PropList &lows, const std::optional<std::string> &system)
{
    require_nonempty(outputs, "output");
    const std::string premise = lows.empty() ? "true" : "G(" + iff_conjunction(lows, "p1", "p2") + ")";
    const auto b = binding(system);
    return parse_formula("[forall p1" + b + " . forall p2" + b + " .] (" + premise + ") -> G(" +
                         iff_conjunction(outputs, "p1", "p2") + ")");
}

HyperFormula expand_simsec(const PropList &outputs, const PropList &lows, const std::string &system,
                           const std::string &shifted, const SystemTable *systems)
{
    require_nonempty(outputs, "output");
    if (systems) require_shift(*systems, system, shifted, 1);
    const std::string premise = lows.empty() ? "true" : "G(" + iff_conjunction(lows, "p1", "p2", 1) + ")";
    return parse_formula("[forall p1 @ " + system + " . <<N>> p2 @ " + shifted + " .] (" + premise + ") -> G(" +
                         iff_conjunction(outputs, "p1", "p2", 1) + ")");
}

HyperFormula expand_sgni(const PropList &outputs, const PropList &lows, const PropList &highs, std::size_t k,
                         const std::string &system, const std::string &shifted, const SystemTable *systems)
{
    require_nonempty(outputs, "output");
    if (k == 0) throw ConfigError("props", "sgni needs a shift of at least 1");
    if (systems) require_shift(*systems, system, shifted, k);
    std::string body;
    if (!highs.empty()) body = "G(" + iff_conjunction(highs, "p1", "p3", k) + ") & ";
    PropList observed = outputs;
    observed.insert(observed.end(), lows.begin(), lows.end());
    body += "G(" + iff_conjunction(observed, "p2", "p3", k) + ")";
    return parse_formula("[forall p1 @ " + system + " . forall p2 @ " + system + " . exists p3 @ " + shifted +
                         " .] " + body);
}

HyperFormula expand_od_async(const PropList &outputs, const std::string &stuttered, const SystemTable *systems)
{
    require_nonempty(outputs, "output");
    if (systems) require_stutter(*systems, stuttered);
    std::string body;
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        if (i) body += " & ";
        body += "G(" + outputs[i] + "{p1} <-> " + outputs[i] + "{p2})";
    }
    const std::string q = " @ " + stuttered + " . ";
    return parse_formula("[<<sched>> p1" + q + "<<sched>> p2" + q + "] " + body + " & " + fairness("p1") + " & " +
                         fairness("p2"));
}

HyperFormula expand_ni_async(const PropList &outputs, const PropList &lows, const PropList &align,
                             const std::string &stuttered, bool allow_unaligned, const SystemTable *systems)
{
    require_nonempty(outputs, "output");
    if (align.empty() && !lows.empty() && !allow_unaligned)
        throw ConfigError("props", "ni-async needs an alignment proposition when low inputs are present");
    if (systems) require_stutter(*systems, stuttered);
    const std::string premise = lows.empty() ? "true" : "G(" + iff_conjunction(lows, "p1", "p2") + ")";
    std::string body = "((" + premise + ") -> G(" + iff_conjunction(outputs, "p1", "p2") + ")) & " +
                       fairness("p1") + " & " + fairness("p2");
    if (!align.empty()) body += " & G(" + iff_conjunction(align, "p1", "p2") + ")";
    const std::string q = " @ " + stuttered + " . ";
    return parse_formula("[<<sched>> p1" + q + "<<sched>> p2" + q + "] " + body);
}

HyperFormula expand_ahltl(std::size_t n, const Ltl &body, const std::string &stuttered, const SystemTable *systems)
{
    if (n == 0) throw ConfigError("props", "ahltl needs at least one copy");
    if (systems) require_stutter(*systems, stuttered);
    std::set<std::string> allowed;
    std::string prefix = "[";
    for (std::size_t i = 1; i <= n; ++i) {
        allowed.insert("p" + std::to_string(i));
        prefix += "<<sched>> p" + std::to_string(i) + " @ " + stuttered + " . ";
    }
    prefix += "] ";
    for (const auto &a : collect_atoms(body))
        if (!allowed.count(a.var)) throw ConfigError("props", "ahltl body uses unknown path variable '" + a.var + "'");
    std::string text = prefix + "(" + to_string(body) + ")";
    for (std::size_t i = 1; i <= n; ++i) text += " & " + fairness("p" + std::to_string(i));
    return parse_formula(text);
}

PropertyRef parse_property_ref(const std::string &text)
{
    PropertyRef r;
    auto colon = text.find(':');
    r.name = text.substr(0, colon);
    if (colon != std::string::npos) r.param = text.substr(colon + 1);
    static const std::set<std::string> plain{"od", "ni", "simsec", "od-async"};
    static const std::set<std::string> numeric{"sgni", "ahltl"};
    if (plain.count(r.name)) {
        if (r.param) throw ConfigError("props", "property '" + r.name + "' takes no parameter");
    } else if (numeric.count(r.name)) {
        if (!r.param || r.param->empty() || r.param->find_first_not_of("0123456789") != std::string::npos)
            throw ConfigError("props", "property '" + r.name + "' needs a numeric parameter, e.g. " + r.name + ":3");
    } else if (r.name == "ni-async") {
        if (r.param && r.param->empty()) throw ConfigError("props", "empty alignment proposition");
    } else {
        throw ConfigError("props", "unknown property '" + r.name + "'");
    }
    return r;
}

} // namespace hyperatl::props
