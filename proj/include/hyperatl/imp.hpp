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

#include <cstddef>
#include <deque>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "hyperatl/structures.hpp"

namespace hyperatl::imp {

/// Bit vector value; index 0 is the leftmost bit as written.
struct BitVector
{
    std::vector<bool> bits;

    std::size_t width() const noexcept { return bits.size(); }
    std::string to_string() const;

    friend bool operator==(const BitVector &, const BitVector &) = default;
    friend auto operator<=>(const BitVector &a, const BitVector &b) { return a.bits <=> b.bits; }
};

/// Declared bit width of every variable.
using WidthMap = std::map<std::string, std::size_t>;

/// Total map from variables to values.
using VarState = std::map<std::string, BitVector>;

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr
{
    enum class Kind { Var, True, False, And, Or, Not, Concat, Index };
    Kind kind = Kind::True;
    std::string name;      // Var
    std::size_t index = 0; // Index
    ExprPtr lhs;
    ExprPtr rhs;
    std::size_t width = 1;
};

BitVector eval_expr(const Expr &e, const VarState &state);

enum class StmtKind { Assign, ReadH, ReadL, If, IfStar, While, Seq, Terminated };

/// Program node. Nodes are interned by a ProgramPool, so two programs are
/// the same configuration component iff their pointers are equal.
struct Stmt
{
    StmtKind kind = StmtKind::Terminated;
    std::string var;        // Assign / reads
    ExprPtr expr;           // Assign / If / While
    const Stmt *first = nullptr;  // then-branch, loop body, or left of Seq
    const Stmt *second = nullptr; // else-branch or right of Seq
};

using Prog = const Stmt *;

class ProgramPool
{
public:
    ProgramPool();

    Prog terminated() const noexcept { return terminated_; }
    Prog intern(StmtKind kind, std::string var, ExprPtr expr, Prog first, Prog second);
    Prog seq(Prog first, Prog second) { return intern(StmtKind::Seq, {}, nullptr, first, second); }

    std::size_t size() const noexcept { return nodes_.size(); }

private:
    using Key = std::tuple<int, std::string, const Expr *, Prog, Prog>;
    std::deque<Stmt> nodes_;
    std::map<Key, Prog> index_;
    Prog terminated_ = nullptr;
};

struct Program
{
    std::shared_ptr<ProgramPool> pool;
    Prog root = nullptr;
    WidthMap widths;
    std::vector<std::string> variables; // declaration order
};

/// Parses program text. `width_overrides` replace declared widths before
/// type checking (used to scale benchmark state spaces).
Program parse_program(std::string_view text, const WidthMap &width_overrides = {});

std::string to_string(Prog p);

struct Config
{
    Prog program = nullptr;
    VarState state;

    friend bool operator==(const Config &, const Config &) = default;
};

/// Small-step successors in deterministic order. Reads enumerate values
/// lexicographically (0 before 1, index 0 most significant).
std::vector<Config> successors(const Config &c, const WidthMap &widths, ProgramPool &pool);

inline constexpr std::string_view agent_n = "N";
inline constexpr std::string_view agent_h = "H";
inline constexpr std::string_view agent_l = "L";

/// Agent resolving the choice in a configuration with program `p`.
std::string_view controlling_player(Prog p);

VarState zero_state(const Program &program);

struct BuildOptions
{
    std::size_t max_states = 1'000'000;
};

/// Explicit turn-based game structure of the reachable configurations.
/// Agents N, H, L (all stage 0); proposition `x[i]` holds iff bit i of x is set.
Mscgs build_cgs(const Program &program, BuildOptions options = {});

} // namespace hyperatl::imp
