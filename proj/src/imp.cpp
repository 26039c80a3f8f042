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

#include "hyperatl/imp.hpp"

#include <cctype>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_map>

#include "hyperatl/bitset.hpp"
#include "hyperatl/error.hpp"

namespace hyperatl::imp {

std::string BitVector::to_string() const
{
    std::string s;
    for (bool b : bits) s.push_back(b ? '1' : '0');
    return s;
}

BitVector eval_expr(const Expr &e, const VarState &state)
{
    switch (e.kind) {
    case Expr::Kind::Var: return state.at(e.name);
    case Expr::Kind::True: return BitVector{{true}};
    case Expr::Kind::False: return BitVector{{false}};
    case Expr::Kind::Not: {
        auto v = eval_expr(*e.lhs, state);
        for (std::size_t i = 0; i < v.bits.size(); ++i) v.bits[i] = !v.bits[i];
        return v;
    }
    case Expr::Kind::And:
    case Expr::Kind::Or: {
        auto a = eval_expr(*e.lhs, state);
        auto b = eval_expr(*e.rhs, state);
        for (std::size_t i = 0; i < a.bits.size(); ++i)
            a.bits[i] = e.kind == Expr::Kind::And ? (a.bits[i] && b.bits[i]) : (a.bits[i] || b.bits[i]);
        return a;
    }
    case Expr::Kind::Concat: {
        auto a = eval_expr(*e.lhs, state);
        auto b = eval_expr(*e.rhs, state);
        a.bits.insert(a.bits.end(), b.bits.begin(), b.bits.end());
        return a;
    }
    case Expr::Kind::Index: {
        auto a = eval_expr(*e.lhs, state);
        return BitVector{{a.bits.at(e.index)}};
    }
    }
    return {};
}

ProgramPool::ProgramPool()
{
    nodes_.push_back(Stmt{});
    terminated_ = &nodes_.back();
}

Prog ProgramPool::intern(StmtKind kind, std::string var, ExprPtr expr, Prog first, Prog second)
{
    if (kind == StmtKind::Terminated) return terminated_;
    Key key{static_cast<int>(kind), var, expr.get(), first, second};
    if (auto it = index_.find(key); it != index_.end()) return it->second;
    nodes_.push_back(Stmt{kind, std::move(var), std::move(expr), first, second});
    Prog p = &nodes_.back();
    index_.emplace(std::move(key), p);
    return p;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Token
{
    enum Kind { Ident, Nat, Sym, End } kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

std::vector<Token> lex(std::string_view s)
{
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (s[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < s.size() && s[i + 1] == '/') {
            while (i < s.size() && s[i] != '\n') advance(1);
            continue;
        }
        if (c == '#') {
            while (i < s.size() && s[i] != '\n') advance(1);
            continue;
        }
        Token t{Token::End, "", line, col};
        std::size_t j = i;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            t.kind = Token::Ident;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            t.kind = Token::Nat;
        } else if (s.substr(i).starts_with(":=")) {
            j = i + 2;
            t.kind = Token::Sym;
        } else if (std::string_view(":;{}()[]!&|@*").find(c) != std::string_view::npos) {
            j = i + 1;
            t.kind = Token::Sym;
        } else {
            throw ParseError("imp", std::string("unexpected character '") + c + "'", line, col);
        }
        t.text = std::string(s.substr(i, j - i));
        out.push_back(t);
        advance(j - i);
    }
    out.push_back({Token::End, "<end of input>", line, col});
    return out;
}

bool is_keyword(const std::string &s)
{
    static const std::set<std::string> kw{"var", "if", "else", "while", "true", "false", "read_H", "read_L"};
    return kw.count(s) != 0;
}

class Parser
{
public:
    Parser(std::string_view text, const WidthMap &overrides) : toks_(lex(text)), overrides_(overrides) {}

    Program program()
    {
        Program p;
        p.pool = std::make_shared<ProgramPool>();
        pool_ = p.pool.get();
        while (is(Token::Ident, "var")) {
            next();
            const auto &nt = peek();
            auto name = ident("variable name");
            expect(":");
            const auto &wt = peek();
            if (wt.kind != Token::Nat) fail(wt, "expected a bit width");
            std::size_t w = std::stoul(next().text);
            if (auto it = overrides_.find(name); it != overrides_.end()) w = it->second;
            if (w == 0) fail(wt, "bit width must be at least 1");
            if (!widths_.emplace(name, w).second) fail(nt, "variable '" + name + "' declared twice");
            p.variables.push_back(name);
            expect(";");
        }
        auto stmts = statements(true);
        p.root = stmts;
        p.widths = widths_;
        return p;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const WidthMap &overrides_;
    WidthMap widths_;
    ProgramPool *pool_ = nullptr;

    const Token &peek() const { return toks_[pos_]; }
    const Token &next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    bool is(Token::Kind k, std::string_view text) const { return peek().kind == k && peek().text == text; }
    bool is_sym(std::string_view text) const { return is(Token::Sym, text); }

    [[noreturn]] static void fail(const Token &t, const std::string &msg)
    {
        throw ParseError("imp", msg, t.line, t.column);
    }

    void expect(std::string_view sym)
    {
        if (!is_sym(sym)) fail(peek(), "expected '" + std::string(sym) + "', found '" + peek().text + "'");
        next();
    }

    std::string ident(const char *what)
    {
        if (peek().kind != Token::Ident || is_keyword(peek().text))
            fail(peek(), std::string("expected ") + what + ", found '" + peek().text + "'");
        return next().text;
    }

    std::size_t width_of(const Token &at, const std::string &name) const
    {
        auto it = widths_.find(name);
        if (it == widths_.end()) fail(at, "undeclared variable '" + name + "'");
        return it->second;
    }

    // stmt+ up to '}' (or end of input at top level), folded into right-nested Seq
    Prog statements(bool top)
    {
        std::vector<Prog> list;
        while (!(top ? peek().kind == Token::End : is_sym("}"))) {
            if (peek().kind == Token::End) fail(peek(), "expected '}'");
            list.push_back(statement());
        }
        if (list.empty()) fail(peek(), "expected a statement");
        Prog acc = list.back();
        for (std::size_t i = list.size() - 1; i-- > 0;) acc = pool_->seq(list[i], acc);
        return acc;
    }

    Prog block()
    {
        expect("{");
        auto p = statements(false);
        expect("}");
        return p;
    }

    ExprPtr guard()
    {
        expect("(");
        const auto &at = peek();
        auto e = expr();
        expect(")");
        if (e->width != 1) fail(at, "guard must have width 1, found width " + std::to_string(e->width));
        return e;
    }

    Prog statement()
    {
        if (is(Token::Ident, "if")) {
            next();
            if (is_sym("(") && toks_[pos_ + 1].kind == Token::Sym && toks_[pos_ + 1].text == "*") {
                next();
                next();
                expect(")");
                auto a = block();
                if (!is(Token::Ident, "else")) fail(peek(), "expected 'else'");
                next();
                auto b = block();
                return pool_->intern(StmtKind::IfStar, {}, nullptr, a, b);
            }
            auto g = guard();
            auto a = block();
            if (!is(Token::Ident, "else")) fail(peek(), "expected 'else'");
            next();
            auto b = block();
            return pool_->intern(StmtKind::If, {}, g, a, b);
        }
        if (is(Token::Ident, "while")) {
            next();
            auto g = guard();
            auto body = block();
            return pool_->intern(StmtKind::While, {}, g, body, nullptr);
        }
        const auto &vt = peek();
        auto x = ident("statement");
        auto w = width_of(vt, x);
        expect(":=");
        if (is(Token::Ident, "read_H") || is(Token::Ident, "read_L")) {
            auto kind = next().text == "read_H" ? StmtKind::ReadH : StmtKind::ReadL;
            expect(";");
            return pool_->intern(kind, x, nullptr, nullptr, nullptr);
        }
        const auto &at = peek();
        auto e = expr();
        if (e->width != w)
            fail(at, "width mismatch: '" + x + "' has width " + std::to_string(w) + " but the expression has width " +
                         std::to_string(e->width));
        expect(";");
        return pool_->intern(StmtKind::Assign, x, e, nullptr, nullptr);
    }

    static ExprPtr make(Expr::Kind k, ExprPtr a, ExprPtr b, std::size_t width)
    {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->lhs = std::move(a);
        e->rhs = std::move(b);
        e->width = width;
        return e;
    }

    // precedence: | < & < @ < ! < postfix [n]
    ExprPtr expr()
    {
        auto lhs = and_expr();
        while (is_sym("|")) {
            const auto &at = next();
            auto rhs = and_expr();
            if (lhs->width != rhs->width) fail(at, "operands of '|' have different widths");
            lhs = make(Expr::Kind::Or, lhs, rhs, lhs->width);
        }
        return lhs;
    }

    ExprPtr and_expr()
    {
        auto lhs = concat_expr();
        while (is_sym("&")) {
            const auto &at = next();
            auto rhs = concat_expr();
            if (lhs->width != rhs->width) fail(at, "operands of '&' have different widths");
            lhs = make(Expr::Kind::And, lhs, rhs, lhs->width);
        }
        return lhs;
    }

    ExprPtr concat_expr()
    {
        auto lhs = unary();
        while (is_sym("@")) {
            next();
            auto rhs = unary();
            lhs = make(Expr::Kind::Concat, lhs, rhs, lhs->width + rhs->width);
        }
        return lhs;
    }

    ExprPtr unary()
    {
        if (is_sym("!")) {
            next();
            auto a = unary();
            return make(Expr::Kind::Not, a, nullptr, a->width);
        }
        return postfix();
    }

    ExprPtr postfix()
    {
        auto e = primary();
        while (is_sym("[")) {
            next();
            const auto &nt = peek();
            if (nt.kind != Token::Nat) fail(nt, "expected a bit index");
            std::size_t n = std::stoul(next().text);
            expect("]");
            if (n >= e->width)
                fail(nt, "index " + std::to_string(n) + " out of range for width " + std::to_string(e->width));
            auto idx = make(Expr::Kind::Index, e, nullptr, 1);
            std::const_pointer_cast<Expr>(idx)->index = n;
            e = idx;
        }
        return e;
    }

    ExprPtr primary()
    {
        const auto &t = peek();
        if (is_sym("(")) {
            next();
            auto e = expr();
            expect(")");
            return e;
        }
        if (is(Token::Ident, "true") || is(Token::Ident, "false")) {
            bool v = next().text == "true";
            return make(v ? Expr::Kind::True : Expr::Kind::False, nullptr, nullptr, 1);
        }
        auto name = ident("expression");
        auto e = make(Expr::Kind::Var, nullptr, nullptr, width_of(t, name));
        std::const_pointer_cast<Expr>(e)->name = name;
        return e;
    }
};

void print_expr(std::ostream &os, const Expr &e)
{
    switch (e.kind) {
    case Expr::Kind::Var: os << e.name; break;
    case Expr::Kind::True: os << "true"; break;
    case Expr::Kind::False: os << "false"; break;
    case Expr::Kind::Not:
        os << "!";
        print_expr(os, *e.lhs);
        break;
    case Expr::Kind::Index:
        print_expr(os, *e.lhs);
        os << "[" << e.index << "]";
        break;
    default:
        os << "(";
        print_expr(os, *e.lhs);
        os << (e.kind == Expr::Kind::And ? " & " : e.kind == Expr::Kind::Or ? " | " : " @ ");
        print_expr(os, *e.rhs);
        os << ")";
        break;
    }
}

void print_prog(std::ostream &os, Prog p)
{
    switch (p->kind) {
    case StmtKind::Terminated: os << "<done>"; break;
    case StmtKind::Assign:
        os << p->var << " := ";
        print_expr(os, *p->expr);
        os << ";";
        break;
    case StmtKind::ReadH: os << p->var << " := read_H;"; break;
    case StmtKind::ReadL: os << p->var << " := read_L;"; break;
    case StmtKind::If:
        os << "if (";
        print_expr(os, *p->expr);
        os << ") { ";
        print_prog(os, p->first);
        os << " } else { ";
        print_prog(os, p->second);
        os << " }";
        break;
    case StmtKind::IfStar:
        os << "if (*) { ";
        print_prog(os, p->first);
        os << " } else { ";
        print_prog(os, p->second);
        os << " }";
        break;
    case StmtKind::While:
        os << "while (";
        print_expr(os, *p->expr);
        os << ") { ";
        print_prog(os, p->first);
        os << " }";
        break;
    case StmtKind::Seq:
        print_prog(os, p->first);
        os << " ";
        print_prog(os, p->second);
        break;
    }
}

} // namespace

Program parse_program(std::string_view text, const WidthMap &width_overrides)
{
    Parser p(text, width_overrides);
    return p.program();
}

std::string to_string(Prog p)
{
    std::ostringstream os;
    print_prog(os, p);
    return os.str();
}

// ---------------------------------------------------------------------------
// Semantics

std::vector<Config> successors(const Config &c, const WidthMap &widths, ProgramPool &pool)
{
    const Stmt &p = *c.program;
    switch (p.kind) {
    case StmtKind::Terminated: return {c};
    case StmtKind::Assign: {
        Config next{pool.terminated(), c.state};
        next.state[p.var] = eval_expr(*p.expr, c.state);
        return {next};
    }
    case StmtKind::ReadH:
    case StmtKind::ReadL: {
        const std::size_t w = widths.at(p.var);
        std::vector<Config> out;
        out.reserve(std::size_t{1} << w);
        for (std::size_t v = 0; v < (std::size_t{1} << w); ++v) {
            Config next{pool.terminated(), c.state};
            auto &bits = next.state[p.var].bits;
            bits.assign(w, false);
            for (std::size_t i = 0; i < w; ++i) bits[i] = (v >> (w - 1 - i)) & 1U;
            out.push_back(std::move(next));
        }
        return out;
    }
    case StmtKind::If: {
        bool g = eval_expr(*p.expr, c.state).bits.at(0);
        return {Config{g ? p.first : p.second, c.state}};
    }
    case StmtKind::IfStar: return {Config{p.first, c.state}, Config{p.second, c.state}};
    case StmtKind::While: {
        bool g = eval_expr(*p.expr, c.state).bits.at(0);
        if (!g) return {Config{pool.terminated(), c.state}};
        return {Config{pool.seq(p.first, c.program), c.state}};
    }
    case StmtKind::Seq: {
        auto inner = successors(Config{p.first, c.state}, widths, pool);
        for (auto &s : inner) s.program = s.program == pool.terminated() ? p.second : pool.seq(s.program, p.second);
        return inner;
    }
    }
    return {c};
}

std::string_view controlling_player(Prog p)
{
    switch (p->kind) {
    case StmtKind::ReadH: return agent_h;
    case StmtKind::ReadL: return agent_l;
    case StmtKind::Seq: return controlling_player(p->first);
    default: return agent_n;
    }
}

VarState zero_state(const Program &program)
{
    VarState s;
    for (const auto &[name, w] : program.widths) s[name] = BitVector{std::vector<bool>(w, false)};
    return s;
}

Mscgs build_cgs(const Program &program, BuildOptions options)
{
    Mscgs g;
    g.agents = {std::string(agent_n), std::string(agent_h), std::string(agent_l)};
    g.stages = {0, 0, 0};

    // proposition order follows declaration order, then bit index
    std::vector<std::pair<std::string, std::size_t>> bit_of_prop;
    for (const auto &v : program.variables) {
        for (std::size_t i = 0; i < program.widths.at(v); ++i) {
            g.props.push_back(v + "[" + std::to_string(i) + "]");
            bit_of_prop.emplace_back(v, i);
        }
    }

    auto pack = [&](const VarState &s) {
        std::vector<bool> key;
        for (const auto &v : program.variables) {
            const auto &bits = s.at(v).bits;
            key.insert(key.end(), bits.begin(), bits.end());
        }
        return key;
    };

    struct KeyHash
    {
        std::size_t operator()(const std::pair<Prog, std::vector<bool>> &k) const noexcept
        {
            return std::hash<const void *>{}(k.first) * 31 + std::hash<std::vector<bool>>{}(k.second);
        }
    };
    std::unordered_map<std::pair<Prog, std::vector<bool>>, StateId, KeyHash> index;
    std::vector<Config> configs;
    auto &pool = *program.pool;

    auto intern = [&](Config c) -> StateId {
        auto key = std::make_pair(c.program, pack(c.state));
        if (auto it = index.find(key); it != index.end()) return it->second;
        if (configs.size() >= options.max_states)
            throw ResourceError("imp", "state cap of " + std::to_string(options.max_states) + " exceeded");
        auto id = static_cast<StateId>(configs.size());
        index.emplace(std::move(key), id);
        configs.push_back(std::move(c));
        return id;
    };

    intern(Config{program.root, zero_state(program)});
    for (StateId s = 0; s < configs.size(); ++s) {
        Config c = configs[s];
        auto succ = successors(c, program.widths, pool);
        CgsState st;
        st.deciders.push_back({g.agent_index(controlling_player(c.program)), succ.size()});
        for (auto &n : succ) st.successors.push_back(intern(std::move(n)));
        for (std::size_t p = 0; p < bit_of_prop.size(); ++p) {
            const auto &[v, i] = bit_of_prop[p];
            if (c.state.at(v).bits[i]) st.labels.push_back(p);
        }
        st.name = "c" + std::to_string(s);
        g.states.push_back(std::move(st));
    }
    g.initial = 0;
    return g;
}

} // namespace hyperatl::imp
