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

// Command-line driver. Exit status: 0 satisfied, 1 violated, 2 usage or
// configuration error, 3 resource cap exceeded.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hyperatl/check.hpp"
#include "hyperatl/error.hpp"

namespace {

constexpr int exit_satisfied = 0;
constexpr int exit_violated = 1;
constexpr int exit_usage = 2;
constexpr int exit_resource = 3;

std::string slurp(const std::string &path)
{
    std::ifstream in(path);
    if (!in) throw hyperatl::ConfigError("cli", "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// bare names refer to the bundled manifests
std::string resolve_manifest(const std::string &name)
{
    namespace fs = std::filesystem;
    if (fs::exists(name)) return name;
    const fs::path bundled = fs::path(HYPERATL_ASSET_DIR) / "manifests" / name;
    if (fs::exists(bundled)) return bundled.string();
    return name;
}

std::pair<std::string, std::string> split_pair(const std::string &text, const char *what)
{
    auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == text.size())
        throw hyperatl::ConfigError("cli", std::string("expected ") + what + ", found '" + text + "'");
    return {text.substr(0, eq), text.substr(eq + 1)};
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Model checker for hyperproperties of imperative programs"};
    app.require_subcommand(1);

    auto *check = app.add_subcommand("check", "check one formula or built-in property");
    std::string formula_file, property, report_file, dump_dpa, dump_game;
    std::vector<std::string> systems, widths, dump_sys, outs, lows, highs;
    std::size_t cap_states = 1'000'000, cap_vertices = 10'000'000;
    bool allow_unaligned = false, no_collapse = false;
    auto *fopt = check->add_option("--formula", formula_file, "formula file");
    auto *popt = check->add_option("--prop", property, "od, ni, simsec, sgni:k, od-async, ni-async[:r], ahltl:n");
    fopt->excludes(popt);
    check->add_option("--system", systems, "<id>=<prog>[,stutter][,shift=<k>]")->required();
    check->add_option("--width", widths, "<var>=<n> bit-width override");
    check->add_option("--cap-states", cap_states, "maximum states per structure");
    check->add_option("--cap-vertices", cap_vertices, "maximum game vertices");
    check->add_option("--dump-dpa", dump_dpa, "write the automaton as DOT");
    check->add_option("--dump-game", dump_game, "write the game and strategy as DOT");
    check->add_option("--dump-sys", dump_sys, "<id>=<file> write a structure as DOT");
    check->add_option("--report", report_file, "write a key=value report");
    check->add_option("--out", outs, "output variables of a built-in property (default o)")->delimiter(',');
    check->add_option("--low", lows, "low variables of a built-in property (default l)")->delimiter(',');
    check->add_option("--high", highs, "high variables of a built-in property (default h)")->delimiter(',');
    check->add_flag("--allow-unaligned", allow_unaligned, "accept ni-async without an alignment variable");
    check->add_flag("--no-collapse", no_collapse, "keep single-choice move vertices in the game");

    auto *suite = app.add_subcommand("suite", "check every entry of a manifest");
    std::string manifest, expect_file;
    suite->add_option("--manifest", manifest, "manifest file or bundled name (security, async)")->required();
    suite->add_option("--expect", expect_file, "file of 'id sat|viol' lines");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*check) {
            if (formula_file.empty() == property.empty()) {
                std::cerr << "error: give exactly one of --formula and --prop\n";
                return exit_usage;
            }
            hyperatl::check::CheckConfig cfg;
            if (!formula_file.empty()) cfg.formula_text = slurp(formula_file);
            if (!property.empty()) cfg.property = property;
            for (const auto &s : systems) cfg.systems.push_back(hyperatl::check::parse_system_spec(s));
            for (const auto &w : widths) {
                auto [var, n] = split_pair(w, "<var>=<n>");
                if (n.find_first_not_of("0123456789") != std::string::npos)
                    throw hyperatl::ConfigError("cli", "bad width '" + n + "'");
                cfg.widths[var] = std::stoul(n);
            }
            for (const auto &d : dump_sys) cfg.dump_systems.insert(split_pair(d, "<id>=<file>"));
            cfg.outputs = outs;
            cfg.lows = lows;
            cfg.highs = highs;
            cfg.allow_unaligned = allow_unaligned;
            cfg.collapse = !no_collapse;
            cfg.cap_states = cap_states;
            cfg.cap_vertices = cap_vertices;
            if (!dump_dpa.empty()) cfg.dump_dpa = dump_dpa;
            if (!dump_game.empty()) cfg.dump_game = dump_game;

            auto report = hyperatl::check::run(cfg);
            std::cout << (report.satisfied ? "satisfied" : "violated") << '\n';
            if (!report_file.empty()) {
                std::ofstream out(report_file);
                if (!out) throw hyperatl::ConfigError("cli", "cannot write '" + report_file + "'");
                out << report.to_record();
            }
            return report.satisfied ? exit_satisfied : exit_violated;
        }

        auto entries = hyperatl::check::parse_manifest(resolve_manifest(manifest));
        if (!expect_file.empty()) {
            auto expected = hyperatl::check::parse_expectations(expect_file);
            for (auto &e : entries)
                if (auto it = expected.find(e.id); it != expected.end()) e.expect = it->second;
        }
        auto results = hyperatl::check::run_suite(entries, std::cout);
        std::size_t mismatches = 0;
        for (const auto &r : results) mismatches += !r.match;
        std::cout << results.size() << " entries, " << mismatches << " mismatches\n";
        return mismatches ? exit_violated : exit_satisfied;
    } catch (const hyperatl::ResourceError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_resource;
    } catch (const hyperatl::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
}
