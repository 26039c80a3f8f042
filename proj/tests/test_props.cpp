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
#include <sstream>

#include "hyperatl/check.hpp"
#include "hyperatl/error.hpp"
#include "hyperatl/imp.hpp"
#include "hyperatl/props.hpp"

using namespace hyperatl;
using namespace hyperatl::props;

namespace {

std::string program_path(const std::string &name)
{
    return std::string(HYPERATL_ASSET_DIR) + "/programs/" + name;
}

Mscgs program(const std::string &name)
{
    std::ifstream in(program_path(name));
    std::ostringstream ss;
    ss << in.rdbuf();
    return imp::build_cgs(imp::parse_program(ss.str()));
}

bool same(const HyperFormula &f, const std::string &text)
{
    return structurally_equal(f, parse_formula(text));
}

std::size_t count(const std::string &haystack, const std::string &needle)
{
    std::size_t n = 0;
    for (auto i = haystack.find(needle); i != std::string::npos; i = haystack.find(needle, i + 1)) ++n;
    return n;
}

const Transform stutter{Transform::Kind::Stutter, 0};
Transform shift(std::size_t k)
{
    return {Transform::Kind::Shift, k};
}

SystemTable table()
{
    return {{"s", {"p.imp", {}}},
            {"s1", {"p.imp", {shift(1)}}},
            {"s3", {"p.imp", {shift(3)}}},
            {"st", {"p.imp", {stutter}}}};
}

} // namespace

TEST_CASE("od template")
{
    CHECK(same(expand_od({"o[0]"}), "[forall p1 . forall p2 .] G (o[0]{p1} <-> o[0]{p2})"));
    CHECK(same(expand_od({"o[0]", "o[1]"}),
               "[forall p1 . forall p2 .] G (o[0]{p1} <-> o[0]{p2}) & G (o[1]{p1} <-> o[1]{p2})"));
    CHECK_THROWS_AS(expand_od({}), ConfigError);
    CHECK(expand_od({"o[0]"}, std::string("s")).block[1].system == std::optional<std::string>("s"));
}

TEST_CASE("ni template")
{
    CHECK(same(expand_ni({"o[0]"}, {"l[0]"}),
               "[forall p1 . forall p2 .] (G (l[0]{p1} <-> l[0]{p2})) -> G (o[0]{p1} <-> o[0]{p2})"));
    CHECK(same(expand_ni({"o[0]"}, {}), "[forall p1 . forall p2 .] true -> G (o[0]{p1} <-> o[0]{p2})"));
    CHECK(same(expand_ni({"o[0]", "o[1]"}, {"l[0]", "l[1]"}),
               "[forall p1 . forall p2 .] G ((l[0]{p1} <-> l[0]{p2}) & (l[1]{p1} <-> l[1]{p2})) -> "
               "G ((o[0]{p1} <-> o[0]{p2}) & (o[1]{p1} <-> o[1]{p2}))"));
}

TEST_CASE("simsec template")
{
    auto t = table();
    CHECK(same(expand_simsec({"o[0]"}, {"l[0]"}, "s", "s1", &t),
               "[forall p1 @ s . <<N>> p2 @ s1 .] (G (l[0]{p1} <-> X l[0]{p2})) -> G (o[0]{p1} <-> X o[0]{p2})"));
    CHECK(same(expand_simsec({"o[0]"}, {}, "s", "s1", &t),
               "[forall p1 @ s . <<N>> p2 @ s1 .] true -> G (o[0]{p1} <-> X o[0]{p2})"));
    CHECK_THROWS_AS(expand_simsec({"o[0]"}, {}, "s", "s3", &t), ConfigError);
    CHECK_THROWS_AS(expand_simsec({"o[0]"}, {}, "s", "st", &t), ConfigError);
}

TEST_CASE("sgni template")
{
    auto t = table();
    CHECK(same(expand_sgni({"o[0]"}, {"l[0]"}, {"h[0]"}, 3, "s", "s3", &t),
               "[forall p1 @ s . forall p2 @ s . exists p3 @ s3 .] G (h[0]{p1} <-> X X X h[0]{p3}) & "
               "G ((o[0]{p2} <-> X[3] o[0]{p3}) & (l[0]{p2} <-> X[3] l[0]{p3}))"));
    CHECK(same(expand_sgni({"o[0]"}, {}, {"h[0]"}, 1, "s", "s1", &t),
               "[forall p1 @ s . forall p2 @ s . exists p3 @ s1 .] G (h[0]{p1} <-> X h[0]{p3}) & "
               "G (o[0]{p2} <-> X o[0]{p3})"));
    CHECK(same(expand_sgni({"o[0]"}, {}, {}, 1, "s", "s1", &t),
               "[forall p1 @ s . forall p2 @ s . exists p3 @ s1 .] G (o[0]{p2} <-> X o[0]{p3})"));
    CHECK_THROWS_AS(expand_sgni({"o[0]"}, {}, {}, 3, "s", "s1", &t), ConfigError);
    CHECK_THROWS_AS(expand_sgni({"o[0]"}, {}, {}, 0, "s", "s1"), ConfigError);
}

TEST_CASE("od-async template")
{
    auto t = table();
    auto f = expand_od_async({"o[0]"}, "st", &t);
    CHECK(same(f, "[<<sched>> p1 @ st . <<sched>> p2 @ st .] G (o[0]{p1} <-> o[0]{p2}) & G F !stut{p1} & "
                  "G F !stut{p2}"));
    CHECK(count(to_string(f), "stut") == 2);
    CHECK_THROWS_AS(expand_od_async({"o[0]"}, "s", &t), ConfigError);
}

TEST_CASE("ni-async template")
{
    auto t = table();
    CHECK(same(expand_ni_async({"o[0]"}, {"l[0]"}, {"r[0]"}, "st", false, &t),
               "[<<sched>> p1 @ st . <<sched>> p2 @ st .] ((G (l[0]{p1} <-> l[0]{p2})) -> G (o[0]{p1} <-> "
               "o[0]{p2})) & G F !stut{p1} & G F !stut{p2} & G (r[0]{p1} <-> r[0]{p2})"));
    CHECK_THROWS_AS(expand_ni_async({"o[0]"}, {"l[0]"}, {}, "st", false, &t), ConfigError);
    auto unaligned = expand_ni_async({"o[0]"}, {"l[0]"}, {}, "st", true, &t);
    CHECK(count(to_string(unaligned), "r[0]") == 0);
    auto no_low = expand_ni_async({"o[0]"}, {}, {}, "st", false, &t);
    CHECK(same(no_low, "[<<sched>> p1 @ st . <<sched>> p2 @ st .] (true -> G (o[0]{p1} <-> o[0]{p2})) & "
                       "G F !stut{p1} & G F !stut{p2}"));
}

TEST_CASE("ahltl builder")
{
    auto t = table();
    auto body = parse_ltl("G (o[0]{p1} <-> o[0]{p2})");
    CHECK(structurally_equal(expand_ahltl(2, body, "st", &t), expand_od_async({"o[0]"}, "st", &t)));
    auto one = expand_ahltl(1, parse_ltl("G F o[0]{p1}"), "st", &t);
    CHECK(one.block.size() == 1);
    CHECK(count(to_string(one), "stut") == 1);
    auto admissible = expand_ahltl(2, parse_ltl("G (o[0]{p1} <-> o[0]{p2}) & G F o[0]{p1} & F G !o[0]{p2}"), "st", &t);
    CHECK(admissible.block.size() == 2);
    CHECK_THROWS_AS(expand_ahltl(2, parse_ltl("G a{p3}"), "st", &t), ConfigError);
    CHECK_THROWS_AS(expand_ahltl(0, body, "st", &t), ConfigError);
}

TEST_CASE("expansions validate against their bindings")
{
    const auto g = program("p2.imp");
    const auto g1 = shift_transform(g, 1);
    const auto g3 = shift_transform(g, 3);
    const auto gs = stutter_transform(g);
    std::map<std::string, const Mscgs *> sys{{"s", &g}, {"s1", &g1}, {"s3", &g3}, {"st", &gs}};
    auto t = table();
    const PropList o{"o[0]"}, l{"l[0]"}, h{"h[0]"};
    for (const auto &f : {expand_od(o, std::string("s")), expand_ni(o, l, std::string("s")),
                          expand_simsec(o, l, "s", "s1", &t), expand_sgni(o, l, h, 3, "s", "s3", &t),
                          expand_od_async(o, "st", &t), expand_ni_async(o, l, {"l[0]"}, "st", false, &t)}) {
        auto info = validate_fragment(f, sys);
        CHECK(is_nnf(info.nnf_body));
    }
}

TEST_CASE("od is symmetric in its path variables")
{
    for (const char *p : {"p1.imp", "p2.imp", "p3.imp", "p4.imp"}) {
        CAPTURE(p);
        check::CheckConfig a;
        a.systems = {check::parse_system_spec(std::string("s=") + program_path(p))};
        a.formula_text = "[forall p1 . forall p2 .] G (o[0]{p1} <-> o[0]{p2})";
        auto b = a;
        b.formula_text = "[forall p1 . forall p2 .] G (o[0]{p2} <-> o[0]{p1})";
        CHECK(check::run(a).satisfied == check::run(b).satisfied);
    }
}

TEST_CASE("property references")
{
    CHECK(parse_property_ref("od").name == "od");
    auto s = parse_property_ref("sgni:3");
    CHECK(s.name == "sgni");
    CHECK(s.param == std::optional<std::string>("3"));
    CHECK(parse_property_ref("ni-async:r").param == std::optional<std::string>("r"));
    CHECK_FALSE(parse_property_ref("ni-async").param.has_value());
    CHECK_THROWS_AS(parse_property_ref("sgni"), ConfigError);
    CHECK_THROWS_AS(parse_property_ref("sgni:x"), ConfigError);
    CHECK_THROWS_AS(parse_property_ref("od:2"), ConfigError);
    CHECK_THROWS_AS(parse_property_ref("gni"), ConfigError);
}
