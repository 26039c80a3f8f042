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

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hyperatl/imp.hpp"
#include "hyperatl/props.hpp"

namespace hyperatl::check {

/// `id=<program>[,stutter][,shift=<k>]...`, transforms applied left to right.
struct SystemSpec
{
    std::string id;
    std::string program; // path
    std::vector<props::Transform> chain;
};

/// Parses the argument of --system.
SystemSpec parse_system_spec(const std::string &text);

struct CheckConfig
{
    /// Exactly one of these is set.
    std::optional<std::string> formula_text;
    std::optional<std::string> property; // name[:param]

    std::vector<SystemSpec> systems;
    imp::WidthMap widths;

    /// Variable names whose bits instantiate a built-in property. Empty
    /// lists fall back to o (outputs), l (lows) and h (highs) when declared.
    std::vector<std::string> outputs, lows, highs;
    bool allow_unaligned = false;

    std::size_t cap_states = 1'000'000;
    std::size_t cap_vertices = 10'000'000;
    bool collapse = true;

    std::optional<std::string> dump_dpa, dump_game;
    std::map<std::string, std::string> dump_systems; // id -> path
};

struct Report
{
    bool satisfied = false;
    bool negated = false;
    std::string formula;
    std::vector<std::pair<std::string, std::size_t>> structure_states; // binding order
    std::size_t dpa_states = 0;
    std::size_t dpa_colors = 0;
    std::size_t game_vertices = 0;
    std::size_t game_edges = 0;
    std::size_t strategy_entries = 0; // player-0 strategy vertices
    double build_ms = 0, translate_ms = 0, arena_ms = 0, solve_ms = 0, total_ms = 0;

    /// Flat `key=value` lines; see README for the field names.
    std::string to_record() const;
};

/// Runs the whole pipeline. Errors propagate as hyperatl::Error subclasses.
Report run(const CheckConfig &config);

/// Formula that `run` would check, together with the bound system table.
/// Exposed for tests and dumps. `declared_widths` maps system ids to the
/// variable widths of their programs.
struct Plan
{
    HyperFormula formula;
    std::vector<SystemSpec> systems; // including derived bindings
    std::optional<std::string> default_system;
};
Plan plan(const CheckConfig &config, const std::map<std::string, imp::WidthMap> &declared_widths);

enum class Expectation { None, Satisfied, Violated };

struct SuiteEntry
{
    std::string id;
    CheckConfig config;
    Expectation expect = Expectation::None;
};

/// Manifest lines: `id program property [key=value ...]`, `#` starts a
/// comment. Keys: width.<var>=n, out=a,b  low=a,b  high=a,b  cap=N
/// expect=sat|viol. Program paths are relative to the manifest.
std::vector<SuiteEntry> parse_manifest(const std::string &path);

/// Expectation file lines: `id sat|viol`.
std::map<std::string, Expectation> parse_expectations(const std::string &path);

struct SuiteOutcome
{
    std::string id;
    std::string verdict; // satisfied, violated, cap, error
    Expectation expect = Expectation::None;
    bool match = true;
    double ms = 0;
    std::string message;
};

/// Runs every entry and writes one table row per entry to `out`.
std::vector<SuiteOutcome> run_suite(const std::vector<SuiteEntry> &entries, std::ostream &out);

} // namespace hyperatl::check
