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

#include "hyperatl/check.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "hyperatl/arena.hpp"
#include "hyperatl/automata.hpp"
#include "hyperatl/error.hpp"
#include "hyperatl/solver.hpp"

namespace hyperatl::check {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string read_file(const std::string &path, const char *module)
{
    std::ifstream in(path);
    if (!in) throw ConfigError(module, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &text)
{
    std::ofstream out(path);
    if (!out) throw ConfigError("cli", "cannot write '" + path + "'");
    out << text;
}

std::vector<std::string> split(const std::string &s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

std::size_t parse_count(const std::string &text, const std::string &what)
{
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
        throw ConfigError("cli", "expected a number for " + what + ", found '" + text + "'");
    return std::stoul(text);
}

props::PropList bits_of(const imp::WidthMap &widths, const std::vector<std::string> &vars)
{
    props::PropList out;
    for (const auto &v : vars) {
        auto it = widths.find(v);
        if (it == widths.end()) throw ConfigError("props", "program has no variable '" + v + "'");
        for (std::size_t i = 0; i < it->second; ++i) out.push_back(v + "[" + std::to_string(i) + "]");
    }
    return out;
}

// explicit list, else the default variable when declared
props::PropList pick(const imp::WidthMap &widths, const std::vector<std::string> &given, const char *fallback)
{
    if (!given.empty()) return bits_of(widths, given);
    if (widths.count(fallback)) return bits_of(widths, {fallback});
    return {};
}

props::SystemDecl decl_of(const SystemSpec &s)
{
    return {s.program, s.chain};
}

const SystemSpec &derive(std::vector<SystemSpec> &systems, const SystemSpec &base, const std::string &suffix,
                         props::Transform t)
{
    const std::string id = base.id + suffix;
    SystemSpec d{id, base.program, base.chain};
    d.chain.push_back(t);
    for (const auto &s : systems)
        if (s.id == id) {
            if (!(decl_of(s) == decl_of(d)))
                throw ConfigError("cli", "system '" + id + "' is declared but differs from the derived binding");
            return s;
        }
    systems.push_back(d);
    return systems.back();
}

bool has_stutter(const SystemSpec &s)
{
    for (const auto &t : s.chain)
        if (t.kind == props::Transform::Kind::Stutter) return true;
    return false;
}

} // namespace

SystemSpec parse_system_spec(const std::string &text)
{
    auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("cli", "expected <id>=<program>, found '" + text + "'");
    SystemSpec s;
    s.id = text.substr(0, eq);
    auto parts = split(text.substr(eq + 1), ',');
    if (parts.empty()) throw ConfigError("cli", "missing program path for system '" + s.id + "'");
    s.program = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) {
        if (parts[i] == "stutter") {
            s.chain.push_back({props::Transform::Kind::Stutter, 0});
        } else if (parts[i].rfind("shift=", 0) == 0) {
            auto k = parse_count(parts[i].substr(6), "shift");
            if (k == 0) throw ConfigError("cli", "shift must be at least 1");
            s.chain.push_back({props::Transform::Kind::Shift, k});
        } else {
            throw ConfigError("cli", "unknown transform '" + parts[i] + "'");
        }
    }
    return s;
}

Plan plan(const CheckConfig &config, const std::map<std::string, imp::WidthMap> &declared_widths)
{
    if (config.formula_text.has_value() == config.property.has_value())
        throw ConfigError("cli", "give exactly one of a formula and a built-in property");
    if (config.systems.empty()) throw ConfigError("cli", "no system declared");
    for (std::size_t i = 0; i < config.systems.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (config.systems[i].id == config.systems[j].id)
                throw ConfigError("cli", "system '" + config.systems[i].id + "' declared twice");

    Plan p;
    p.systems = config.systems;
    if (config.formula_text) {
        p.formula = parse_formula(*config.formula_text);
        if (p.systems.size() == 1) p.default_system = p.systems[0].id;
        return p;
    }

    if (config.systems.size() != 1) throw ConfigError("cli", "built-in properties take exactly one --system");
    const SystemSpec base = config.systems[0];
    const auto &widths = declared_widths.at(base.id);
    const auto ref = props::parse_property_ref(*config.property);
    const auto outputs = pick(widths, config.outputs, "o");
    const auto lows = pick(widths, config.lows, "l");
    const auto highs = pick(widths, config.highs, "h");

    props::SystemTable table;
    auto sync_table = [&] {
        table.clear();
        for (const auto &s : p.systems) table[s.id] = decl_of(s);
    };
    auto stuttered = [&]() -> std::string {
        if (has_stutter(base)) return base.id;
        return derive(p.systems, base, "_stut", {props::Transform::Kind::Stutter, 0}).id;
    };

    if (ref.name == "od") {
        p.formula = props::expand_od(outputs, base.id);
    } else if (ref.name == "ni") {
        p.formula = props::expand_ni(outputs, lows, base.id);
    } else if (ref.name == "simsec") {
        auto shifted = derive(p.systems, base, "_shift1", {props::Transform::Kind::Shift, 1}).id;
        sync_table();
        p.formula = props::expand_simsec(outputs, lows, base.id, shifted, &table);
    } else if (ref.name == "sgni") {
        const auto k = parse_count(*ref.param, "sgni");
        auto shifted =
            derive(p.systems, base, "_shift" + std::to_string(k), {props::Transform::Kind::Shift, k}).id;
        sync_table();
        p.formula = props::expand_sgni(outputs, lows, highs, k, base.id, shifted, &table);
    } else if (ref.name == "od-async") {
        auto s = stuttered();
        sync_table();
        p.formula = props::expand_od_async(outputs, s, &table);
    } else if (ref.name == "ni-async") {
        props::PropList align;
        if (ref.param) align = bits_of(widths, {*ref.param});
        auto s = stuttered();
        sync_table();
        p.formula = props::expand_ni_async(outputs, lows, align, s, config.allow_unaligned, &table);
    } else if (ref.name == "ahltl") {
        const auto n = parse_count(*ref.param, "ahltl");
        std::vector<Ltl> parts;
        for (const auto &o : outputs) parts.push_back(ltl::globally(ltl::iff(ltl::atom(o, "p1"), ltl::atom(o, "p2"))));
        auto s = stuttered();
        sync_table();
        if (n < 2) {
            // single copy: fairness only
            p.formula = props::expand_ahltl(n, ltl::tt(), s, &table);
        } else {
            p.formula = props::expand_ahltl(n, ltl::conj_all(parts), s, &table);
        }
    }
    return p;
}

Report run(const CheckConfig &config)
{
    const auto t_start = Clock::now();
    Report r;

    std::map<std::string, imp::Program> programs; // by path
    std::map<std::string, imp::WidthMap> declared; // by system id
    for (const auto &s : config.systems) {
        auto it = programs.find(s.program);
        if (it == programs.end())
            it = programs.emplace(s.program, imp::parse_program(read_file(s.program, "imp"), config.widths)).first;
        declared[s.id] = it->second.widths;
    }
    auto pl = plan(config, declared);

    // structures
    auto t0 = Clock::now();
    std::map<std::string, Mscgs> built_by_program;
    std::map<std::string, Mscgs> structures;
    for (const auto &s : pl.systems) {
        auto it = built_by_program.find(s.program);
        if (it == built_by_program.end())
            it = built_by_program.emplace(s.program, imp::build_cgs(programs.at(s.program), {config.cap_states})).first;
        Mscgs g = it->second;
        for (const auto &t : s.chain) {
            g = t.kind == props::Transform::Kind::Stutter ? stutter_transform(g) : shift_transform(g, t.k);
            if (g.num_states() > config.cap_states)
                throw ResourceError("structures", "system '" + s.id + "' exceeds the state cap");
        }
        structures.emplace(s.id, std::move(g));
    }
    r.build_ms = ms_since(t0);

    std::map<std::string, const Mscgs *> bound;
    for (const auto &[id, g] : structures) bound[id] = &g;
    auto info = validate_fragment(pl.formula, bound, pl.default_system);
    r.formula = to_string(pl.formula);
    r.negated = pl.formula.negated;
    std::vector<CopySpec> copies;
    for (const auto &q : info.quantifiers) {
        copies.push_back({bound.at(q.system), q.coalition});
        bool seen = false;
        for (const auto &e : r.structure_states) seen = seen || e.first == q.system;
        if (!seen) r.structure_states.emplace_back(q.system, bound.at(q.system)->num_states());
    }

    t0 = Clock::now();
    auto dpa = ltl_to_dpa(info.nnf_body, info.atoms);
    r.translate_ms = ms_since(t0);
    r.dpa_states = dpa.num_states();
    r.dpa_colors = dpa.max_color() + 1;

    t0 = Clock::now();
    ArenaOptions ao;
    ao.collapse = config.collapse;
    ao.max_vertices = config.cap_vertices;
    auto game = build_game(copies, dpa, info.atom_copy, ao);
    r.arena_ms = ms_since(t0);
    r.game_vertices = game.num_vertices();
    r.game_edges = game.num_edges();

    t0 = Clock::now();
    auto sol = zielonka(game);
    r.solve_ms = ms_since(t0);
    r.satisfied = sol.player0_wins(game.initial()) != pl.formula.negated;
    for (Vertex v = 0; v < game.num_vertices(); ++v)
        if (game.owner(v) == 0 && sol.strategy[v] != no_vertex) ++r.strategy_entries;

    if (config.dump_dpa) write_file(*config.dump_dpa, export_dot(dpa));
    if (config.dump_game) write_file(*config.dump_game, export_dot(game, sol.strategy));
    for (const auto &[id, path] : config.dump_systems) {
        auto it = structures.find(id);
        if (it == structures.end()) throw ConfigError("cli", "cannot dump unknown system '" + id + "'");
        write_file(path, export_dot(it->second));
    }
    r.total_ms = ms_since(t_start);
    return r;
}

std::string Report::to_record() const
{
    std::ostringstream out;
    out << std::fixed << std::setprecision(3);
    out << "verdict=" << (satisfied ? "satisfied" : "violated") << '\n';
    out << "negated=" << (negated ? 1 : 0) << '\n';
    out << "formula=" << formula << '\n';
    for (const auto &[id, n] : structure_states) out << "states." << id << '=' << n << '\n';
    out << "dpa.states=" << dpa_states << '\n';
    out << "dpa.colors=" << dpa_colors << '\n';
    out << "game.vertices=" << game_vertices << '\n';
    out << "game.edges=" << game_edges << '\n';
    out << "strategy.entries=" << strategy_entries << '\n';
    out << "time.build_ms=" << build_ms << '\n';
    out << "time.translate_ms=" << translate_ms << '\n';
    out << "time.arena_ms=" << arena_ms << '\n';
    out << "time.solve_ms=" << solve_ms << '\n';
    out << "time.total_ms=" << total_ms << '\n';
    return out.str();
}

namespace {

Expectation parse_expect(const std::string &text, const std::string &where)
{
    if (text == "sat") return Expectation::Satisfied;
    if (text == "viol") return Expectation::Violated;
    throw ConfigError("cli", where + ": expected 'sat' or 'viol', found '" + text + "'");
}

} // namespace

std::vector<SuiteEntry> parse_manifest(const std::string &path)
{
    const auto text = read_file(path, "cli");
    const auto dir = std::filesystem::path(path).parent_path();
    std::vector<SuiteEntry> out;
    std::istringstream in(text);
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::vector<std::string> fields;
        for (std::string f; ls >> f;) fields.push_back(f);
        if (fields.empty()) continue;
        const auto where = path + ":" + std::to_string(lineno);
        if (fields.size() < 3) throw ConfigError("cli", where + ": expected 'id program property [key=value ...]'");

        SuiteEntry e;
        e.id = fields[0];
        auto prog = std::filesystem::path(fields[1]);
        if (prog.is_relative()) prog = dir / prog;
        e.config.systems.push_back(parse_system_spec("s=" + prog.string()));
        e.config.property = fields[2];
        for (std::size_t i = 3; i < fields.size(); ++i) {
            auto eq = fields[i].find('=');
            if (eq == std::string::npos) throw ConfigError("cli", where + ": expected key=value, found '" + fields[i] + "'");
            const auto key = fields[i].substr(0, eq);
            const auto value = fields[i].substr(eq + 1);
            if (key.rfind("width.", 0) == 0) {
                e.config.widths[key.substr(6)] = parse_count(value, key);
            } else if (key == "out") {
                e.config.outputs = split(value, ',');
            } else if (key == "low") {
                e.config.lows = split(value, ',');
            } else if (key == "high") {
                e.config.highs = split(value, ',');
            } else if (key == "cap") {
                e.config.cap_vertices = parse_count(value, key);
            } else if (key == "expect") {
                e.expect = parse_expect(value, where);
            } else {
                throw ConfigError("cli", where + ": unknown key '" + key + "'");
            }
        }
        out.push_back(std::move(e));
    }
    return out;
}

std::map<std::string, Expectation> parse_expectations(const std::string &path)
{
    const auto text = read_file(path, "cli");
    std::map<std::string, Expectation> out;
    std::istringstream in(text);
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string id, verdict, extra;
        if (!(ls >> id)) continue;
        const auto where = path + ":" + std::to_string(lineno);
        if (!(ls >> verdict) || (ls >> extra)) throw ConfigError("cli", where + ": expected 'id sat|viol'");
        out[id] = parse_expect(verdict, where);
    }
    return out;
}

std::vector<SuiteOutcome> run_suite(const std::vector<SuiteEntry> &entries, std::ostream &out)
{
    std::vector<SuiteOutcome> results;
    out << std::left << std::setw(16) << "id" << std::setw(12) << "verdict" << std::setw(10) << "expected"
        << std::setw(7) << "match" << "ms\n";
    for (const auto &e : entries) {
        SuiteOutcome o;
        o.id = e.id;
        o.expect = e.expect;
        const auto t0 = Clock::now();
        try {
            o.verdict = run(e.config).satisfied ? "satisfied" : "violated";
        } catch (const ResourceError &err) {
            o.verdict = "cap";
            o.message = err.what();
        } catch (const Error &err) {
            o.verdict = "error";
            o.message = err.what();
        }
        o.ms = ms_since(t0);
        if (e.expect == Expectation::Satisfied) o.match = o.verdict == "satisfied";
        if (e.expect == Expectation::Violated) o.match = o.verdict == "violated";
        const char *exp = e.expect == Expectation::None ? "-" : e.expect == Expectation::Satisfied ? "sat" : "viol";
        out << std::left << std::setw(16) << o.id << std::setw(12) << o.verdict << std::setw(10) << exp
            << std::setw(7) << (o.match ? "yes" : "NO") << std::fixed << std::setprecision(1) << o.ms << '\n';
        if (!o.message.empty()) out << "  " << o.message << '\n';
        results.push_back(std::move(o));
    }
    return results;
}

} // namespace hyperatl::check
