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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hyperatl/check.hpp"
#include "hyperatl/error.hpp"

using namespace hyperatl;
using namespace hyperatl::check;
namespace fs = std::filesystem;

namespace {

std::string asset(const std::string &rel)
{
    return std::string(HYPERATL_ASSET_DIR) + "/" + rel;
}

CheckConfig prop(const std::string &program, const std::string &property)
{
    CheckConfig c;
    c.systems = {parse_system_spec("s=" + asset("programs/" + program))};
    c.property = property;
    return c;
}

std::string slurp(const fs::path &p)
{
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Scratch directory removed on scope exit.
struct TempDir
{
    fs::path path;
    explicit TempDir(const std::string &tag)
        : path(fs::temp_directory_path() / ("hyperatl_" + tag + "_" + std::to_string(std::rand())))
    {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string write(const std::string &name, const std::string &text) const
    {
        std::ofstream(path / name) << text;
        return (path / name).string();
    }
};

} // namespace

TEST_CASE("system specs")
{
    auto s = parse_system_spec("a=prog.imp,stutter,shift=2");
    CHECK(s.id == "a");
    CHECK(s.program == "prog.imp");
    REQUIRE(s.chain.size() == 2);
    CHECK(s.chain[0].kind == props::Transform::Kind::Stutter);
    CHECK(s.chain[1].kind == props::Transform::Kind::Shift);
    CHECK(s.chain[1].k == 2);
    CHECK(parse_system_spec("b=x").chain.empty());
    CHECK_THROWS_AS(parse_system_spec("prog.imp"), ConfigError);
    CHECK_THROWS_AS(parse_system_spec("=prog.imp"), ConfigError);
    CHECK_THROWS_AS(parse_system_spec("a="), ConfigError);
    CHECK_THROWS_AS(parse_system_spec("a=x,shift=0"), ConfigError);
    CHECK_THROWS_AS(parse_system_spec("a=x,mirror"), ConfigError);
}

TEST_CASE("end-to-end verdicts on small programs")
{
    CHECK(run(prop("p1.imp", "od")).satisfied);
    CHECK_FALSE(run(prop("p2.imp", "od")).satisfied);
    CHECK(run(prop("p2.imp", "ni")).satisfied);
    CHECK_FALSE(run(prop("q1.imp", "od")).satisfied);
    CHECK(run(prop("q1.imp", "od-async")).satisfied);
}

TEST_CASE("explicit formulas and negation")
{
    CheckConfig c;
    c.systems = {parse_system_spec("s=" + asset("programs/p2.imp"))};
    c.formula_text = "[forall p1 . forall p2 .] G (o[0]{p1} <-> o[0]{p2})";
    auto plain = run(c);
    CHECK_FALSE(plain.negated);
    c.formula_text = "![forall p1 . forall p2 .] G (o[0]{p1} <-> o[0]{p2})";
    auto neg = run(c);
    CHECK(neg.negated);
    CHECK(neg.satisfied != plain.satisfied);
}

TEST_CASE("derived bindings are added for built-in properties")
{
    CheckConfig c = prop("p1.imp", "sgni:2");
    std::map<std::string, imp::WidthMap> widths{{"s", {{"o", 1}, {"h", 1}}}};
    auto p = plan(c, widths);
    REQUIRE(p.systems.size() == 2);
    CHECK(p.systems[1].id == "s_shift2");
    REQUIRE(p.systems[1].chain.size() == 1);
    CHECK(p.systems[1].chain[0].k == 2);

    auto a = plan(prop("q1.imp", "od-async"), {{"s", {{"o", 1}, {"h", 1}, {"t", 1}}}});
    REQUIRE(a.systems.size() == 2);
    CHECK(a.systems[1].id == "s_stut");
}

TEST_CASE("report record")
{
    auto r = run(prop("p1.imp", "od"));
    auto rec = r.to_record();
    for (const char *key : {"verdict=satisfied", "negated=0", "formula=", "states.s=", "dpa.states=", "dpa.colors=",
                            "game.vertices=", "game.edges=", "strategy.entries=", "time.build_ms=",
                            "time.translate_ms=", "time.arena_ms=", "time.solve_ms=", "time.total_ms="})
        CHECK_MESSAGE(rec.find(key) != std::string::npos, key);
    CHECK(r.game_vertices > 0);
    CHECK(r.game_edges >= r.game_vertices);
}

TEST_CASE("dumps are deterministic")
{
    TempDir dir("dumps");
    std::string first[3];
    for (int round = 0; round < 2; ++round) {
        auto c = prop("p3.imp", "ni");
        c.dump_dpa = (dir.path / ("dpa" + std::to_string(round))).string();
        c.dump_game = (dir.path / ("game" + std::to_string(round))).string();
        c.dump_systems["s"] = (dir.path / ("sys" + std::to_string(round))).string();
        run(c);
        const std::string now[3] = {slurp(*c.dump_dpa), slurp(*c.dump_game), slurp(c.dump_systems["s"])};
        for (int i = 0; i < 3; ++i) {
            CHECK(now[i].rfind("digraph", 0) == 0);
            if (round == 0)
                first[i] = now[i];
            else
                CHECK(now[i] == first[i]);
        }
    }
}

TEST_CASE("configuration errors")
{
    auto both = prop("p1.imp", "od");
    both.formula_text = "[forall p1 . forall p2 .] G o[0]{p1}";
    CHECK_THROWS_AS(run(both), ConfigError);

    CheckConfig none;
    none.property = "od";
    CHECK_THROWS_AS(run(none), ConfigError);

    auto missing = prop("p1.imp", "ni");
    missing.lows = {"nope"};
    CHECK_THROWS_AS(run(missing), ConfigError);

    auto unaligned = prop("q2.imp", "ni-async");
    CHECK_THROWS_AS(run(unaligned), ConfigError);

    CheckConfig unknown;
    unknown.systems = {parse_system_spec("s=" + asset("programs/p1.imp"))};
    unknown.formula_text = "[forall p1 @ t . forall p2 .] G o[0]{p1}";
    CHECK_THROWS_AS(run(unknown), ConfigError);

    CHECK_THROWS_AS(run(prop("does-not-exist.imp", "od")), ConfigError);
}

TEST_CASE("resource caps")
{
    auto states = prop("p2.imp", "od");
    states.cap_states = 2;
    CHECK_THROWS_AS(run(states), ResourceError);

    auto vertices = prop("p2.imp", "od");
    vertices.cap_vertices = 3;
    CHECK_THROWS_AS(run(vertices), ResourceError);
}

TEST_CASE("collapse does not change verdicts")
{
    for (const char *p : {"p1.imp", "p2.imp", "p3.imp", "p4.imp"})
        for (const char *property : {"od", "ni", "simsec"}) {
            CAPTURE(p);
            CAPTURE(property);
            auto a = prop(p, property);
            auto b = a;
            b.collapse = false;
            auto ra = run(a), rb = run(b);
            CHECK(ra.satisfied == rb.satisfied);
            CHECK(ra.game_vertices <= rb.game_vertices);
        }
}

TEST_CASE("manifests")
{
    auto table = parse_manifest(asset("manifests/async"));
    CHECK(table.size() == 12);
    for (const auto &e : table) CHECK(e.expect != Expectation::None);

    TempDir dir("manifest");
    fs::create_directories(dir.path / "programs");
    fs::copy_file(asset("programs/p1.imp"), dir.path / "programs/p1.imp");
    fs::copy_file(asset("programs/p2.imp"), dir.path / "programs/p2.imp");
    auto path = dir.write("m", "# comment line\n\n"
                               "a programs/p1.imp od expect=sat\n"
                               "b programs/p2.imp od expect=sat   # wrong on purpose\n"
                               "c programs/p2.imp ni out=o low=l\n"
                               "d programs/p2.imp od cap=2\n");
    auto entries = parse_manifest(path);
    REQUIRE(entries.size() == 4);
    CHECK(entries[0].id == "a");
    CHECK(entries[2].expect == Expectation::None);
    CHECK(entries[2].config.outputs == std::vector<std::string>{"o"});

    std::ostringstream out;
    auto outcomes = run_suite(entries, out);
    REQUIRE(outcomes.size() == 4);
    CHECK(outcomes[0].verdict == "satisfied");
    CHECK(outcomes[0].match);
    CHECK(outcomes[1].verdict == "violated");
    CHECK_FALSE(outcomes[1].match);
    CHECK(outcomes[2].verdict == "satisfied");
    CHECK(outcomes[2].match);
    CHECK(outcomes[3].verdict == "cap");
    CHECK(out.str().find("id") != std::string::npos);

    auto empty = dir.write("empty", "# nothing\n");
    std::ostringstream eout;
    CHECK(run_suite(parse_manifest(empty), eout).empty());

    CHECK_THROWS_AS(parse_manifest(dir.write("bad1", "a programs/p1.imp\n")), ConfigError);
    CHECK_THROWS_AS(parse_manifest(dir.write("bad2", "a programs/p1.imp od colour=red\n")), ConfigError);
    CHECK_THROWS_AS(parse_manifest(dir.write("bad3", "a programs/p1.imp od expect=maybe\n")), ConfigError);
}

TEST_CASE("expectation files")
{
    TempDir dir("expect");
    auto e = parse_expectations(dir.write("x", "# ids\na sat\nb viol\n"));
    CHECK(e.at("a") == Expectation::Satisfied);
    CHECK(e.at("b") == Expectation::Violated);
    CHECK_THROWS_AS(parse_expectations(dir.write("y", "a yes\n")), ConfigError);
    CHECK_THROWS_AS(parse_expectations(dir.write("z", "a sat extra\n")), ConfigError);
}
