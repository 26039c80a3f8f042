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

#include "hyperatl/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "hyperatl/error.hpp"

namespace hyperatl {

namespace ltl {

namespace {

Ltl make(LtlOp op, Ltl lhs = nullptr, Ltl rhs = nullptr)
{
    auto n = std::make_shared<LtlNode>();
    n->op = op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

} // namespace

Ltl tt()
{
    static const Ltl t = make(LtlOp::True);
    return t;
}
Ltl ff()
{
    static const Ltl f = make(LtlOp::False);
    return f;
}
Ltl atom(std::string prop, std::string var)
{
    auto n = std::make_shared<LtlNode>();
    n->op = LtlOp::Atom;
    n->prop = std::move(prop);
    n->var = std::move(var);
    return n;
}
Ltl neg(Ltl a) { return make(LtlOp::Not, std::move(a)); }
Ltl conj(Ltl a, Ltl b) { return make(LtlOp::And, std::move(a), std::move(b)); }
Ltl disj(Ltl a, Ltl b) { return make(LtlOp::Or, std::move(a), std::move(b)); }
Ltl implies(Ltl a, Ltl b) { return make(LtlOp::Implies, std::move(a), std::move(b)); }
Ltl iff(Ltl a, Ltl b) { return make(LtlOp::Iff, std::move(a), std::move(b)); }
Ltl next(Ltl a) { return make(LtlOp::Next, std::move(a)); }
Ltl next_n(std::size_t k, Ltl a)
{
    for (std::size_t i = 0; i < k; ++i) a = next(std::move(a));
    return a;
}
Ltl until(Ltl a, Ltl b) { return make(LtlOp::Until, std::move(a), std::move(b)); }
Ltl release(Ltl a, Ltl b) { return make(LtlOp::Release, std::move(a), std::move(b)); }
Ltl globally(Ltl a) { return make(LtlOp::Globally, std::move(a)); }
Ltl eventually(Ltl a) { return make(LtlOp::Eventually, std::move(a)); }

Ltl conj_all(const std::vector<Ltl> &items)
{
    if (items.empty()) return tt();
    Ltl acc = items.front();
    for (std::size_t i = 1; i < items.size(); ++i) acc = conj(acc, items[i]);
    return acc;
}

} // namespace ltl

bool structurally_equal(const Ltl &a, const Ltl &b)
{
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->op != b->op) return false;
    if (a->op == LtlOp::Atom) return a->prop == b->prop && a->var == b->var;
    return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
}

std::size_t formula_size(const Ltl &f)
{
    if (!f) return 0;
    return 1 + formula_size(f->lhs) + formula_size(f->rhs);
}

std::size_t dag_size(const Ltl &f)
{
    std::unordered_set<const LtlNode *> seen;
    std::function<void(const Ltl &)> walk = [&](const Ltl &n) {
        if (!n || !seen.insert(n.get()).second) return;
        walk(n->lhs);
        walk(n->rhs);
    };
    walk(f);
    return seen.size();
}

namespace {

const char *binary_symbol(LtlOp op)
{
    switch (op) {
    case LtlOp::And: return "&";
    case LtlOp::Or: return "|";
    case LtlOp::Implies: return "->";
    case LtlOp::Iff: return "<->";
    case LtlOp::Until: return "U";
    case LtlOp::Release: return "R";
    default: return "?";
    }
}

void print(std::ostream &os, const Ltl &f)
{
    switch (f->op) {
    case LtlOp::True: os << "true"; break;
    case LtlOp::False: os << "false"; break;
    case LtlOp::Atom: os << f->prop << "{" << f->var << "}"; break;
    case LtlOp::Not:
        os << "!";
        print(os, f->lhs);
        break;
    case LtlOp::Next:
        os << "X ";
        print(os, f->lhs);
        break;
    case LtlOp::Globally:
        os << "G ";
        print(os, f->lhs);
        break;
    case LtlOp::Eventually:
        os << "F ";
        print(os, f->lhs);
        break;
    default:
        os << "(";
        print(os, f->lhs);
        os << " " << binary_symbol(f->op) << " ";
        print(os, f->rhs);
        os << ")";
        break;
    }
}

} // namespace

std::string to_string(const Ltl &f)
{
    std::ostringstream os;
    print(os, f);
    return os.str();
}

namespace {

struct NnfBuilder
{
    std::unordered_map<const LtlNode *, Ltl> memo[2];

    Ltl run(const Ltl &f, bool negate)
    {
        auto &m = memo[negate ? 1 : 0];
        if (auto it = m.find(f.get()); it != m.end()) return it->second;
        Ltl r = build(f, negate);
        m.emplace(f.get(), r);
        return r;
    }

    Ltl build(const Ltl &f, bool n)
    {
        using namespace ltl;
        switch (f->op) {
        case LtlOp::True: return n ? ff() : tt();
        case LtlOp::False: return n ? tt() : ff();
        case LtlOp::Atom: return n ? neg(f) : f;
        case LtlOp::Not: return run(f->lhs, !n);
        case LtlOp::And:
            return n ? disj(run(f->lhs, true), run(f->rhs, true)) : conj(run(f->lhs, false), run(f->rhs, false));
        case LtlOp::Or:
            return n ? conj(run(f->lhs, true), run(f->rhs, true)) : disj(run(f->lhs, false), run(f->rhs, false));
        case LtlOp::Implies:
            return n ? conj(run(f->lhs, false), run(f->rhs, true)) : disj(run(f->lhs, true), run(f->rhs, false));
        case LtlOp::Iff: {
            auto a = run(f->lhs, false), na = run(f->lhs, true);
            auto b = run(f->rhs, false), nb = run(f->rhs, true);
            return n ? disj(conj(a, nb), conj(na, b)) : disj(conj(a, b), conj(na, nb));
        }
        case LtlOp::Next: return next(run(f->lhs, n));
        case LtlOp::Until:
            return n ? release(run(f->lhs, true), run(f->rhs, true)) : until(run(f->lhs, false), run(f->rhs, false));
        case LtlOp::Release:
            return n ? until(run(f->lhs, true), run(f->rhs, true)) : release(run(f->lhs, false), run(f->rhs, false));
        case LtlOp::Globally: return n ? eventually(run(f->lhs, true)) : globally(run(f->lhs, false));
        case LtlOp::Eventually: return n ? globally(run(f->lhs, true)) : eventually(run(f->lhs, false));
        }
        return f;
    }
};

} // namespace

Ltl to_nnf(const Ltl &f)
{
    NnfBuilder b;
    return b.run(f, false);
}

bool is_nnf(const Ltl &f)
{
    switch (f->op) {
    case LtlOp::True:
    case LtlOp::False:
    case LtlOp::Atom: return true;
    case LtlOp::Not: return f->lhs->op == LtlOp::Atom;
    case LtlOp::Implies:
    case LtlOp::Iff: return false;
    default: return is_nnf(f->lhs) && (!f->rhs || is_nnf(f->rhs));
    }
}

std::vector<AtomRef> collect_atoms(const Ltl &f)
{
    std::vector<AtomRef> out;
    std::set<AtomRef> seen;
    std::function<void(const Ltl &)> walk = [&](const Ltl &n) {
        if (!n) return;
        if (n->op == LtlOp::Atom) {
            AtomRef a{n->prop, n->var};
            if (seen.insert(a).second) out.push_back(std::move(a));
            return;
        }
        walk(n->lhs);
        walk(n->rhs);
    };
    walk(f);
    return out;
}

bool structurally_equal(const HyperFormula &a, const HyperFormula &b)
{
    return a.negated == b.negated && a.bracketed == b.bracketed && a.block == b.block &&
           structurally_equal(a.body, b.body);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok {
    Ident,
    Nat,
    Bang,
    LBracket,
    RBracket,
    Dot,
    At,
    LAngle2,
    RAngle2,
    Comma,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Amp,
    Pipe,
    Arrow,
    DArrow,
    End,
};

struct Token
{
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

std::vector<Token> lex(std::string_view s)
{
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    auto fail = [&](const std::string &msg) { throw ParseError("formula", msg, line, col); };
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
        if (c == '#') { // comment to end of line
            while (i < s.size() && s[i] != '\n') advance(1);
            continue;
        }
        Token t{Tok::End, "", line, col};
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            t.kind = Tok::Ident;
            t.text = std::string(s.substr(i, j - i));
            out.push_back(t);
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            t.kind = Tok::Nat;
            t.text = std::string(s.substr(i, j - i));
            out.push_back(t);
            advance(j - i);
            continue;
        }
        auto rest = s.substr(i);
        std::size_t len = 1;
        if (rest.starts_with("<->")) {
            t.kind = Tok::DArrow;
            len = 3;
        } else if (rest.starts_with("->")) {
            t.kind = Tok::Arrow;
            len = 2;
        } else if (rest.starts_with("<<")) {
            t.kind = Tok::LAngle2;
            len = 2;
        } else if (rest.starts_with(">>")) {
            t.kind = Tok::RAngle2;
            len = 2;
        } else {
            switch (c) {
            case '!': t.kind = Tok::Bang; break;
            case '[': t.kind = Tok::LBracket; break;
            case ']': t.kind = Tok::RBracket; break;
            case '.': t.kind = Tok::Dot; break;
            case '@': t.kind = Tok::At; break;
            case ',': t.kind = Tok::Comma; break;
            case '(': t.kind = Tok::LParen; break;
            case ')': t.kind = Tok::RParen; break;
            case '{': t.kind = Tok::LBrace; break;
            case '}': t.kind = Tok::RBrace; break;
            case '&': t.kind = Tok::Amp; break;
            case '|': t.kind = Tok::Pipe; break;
            default: fail(std::string("unexpected character '") + c + "'");
            }
        }
        t.text = std::string(rest.substr(0, len));
        out.push_back(t);
        advance(len);
    }
    out.push_back({Tok::End, "<end of input>", line, col});
    return out;
}

bool is_keyword(const std::string &s)
{
    static const std::set<std::string> kw{"forall", "exists", "true", "false", "X", "G", "F", "U", "R"};
    return kw.count(s) != 0;
}

class Parser
{
public:
    explicit Parser(std::string_view text) : toks_(lex(text)) {}

    HyperFormula hyper()
    {
        HyperFormula f;
        if (peek().kind == Tok::Bang && peek(1).kind == Tok::LBracket) {
            f.negated = true;
            next();
        }
        if (peek().kind == Tok::LBracket) {
            next();
            f.bracketed = true;
            while (starts_quantifier(peek())) f.block.push_back(quantifier());
            if (f.block.empty()) fail(peek(), "expected a quantifier");
            expect(Tok::RBracket, "']'");
            if (starts_quantifier(peek()))
                fail(peek(), "unsupported fragment: quantifiers after the parallel block would be resolved sequentially");
        } else if (starts_quantifier(peek())) {
            f.bracketed = false;
            f.block.push_back(quantifier());
            if (starts_quantifier(peek()))
                fail(peek(), "unsupported fragment: sequential quantifier prefix, group the quantifiers with [ ... ]");
        } else {
            fail(peek(), "expected '[' or a quantifier");
        }

        std::set<std::string> bound;
        for (const auto &q : f.block) {
            if (!bound.insert(q.var).second) fail(quant_tokens_[&q - f.block.data()], "duplicate path variable '" + q.var + "'");
        }
        bound_ = &bound;
        f.body = iff();
        bound_ = nullptr;
        if (peek().kind != Tok::End) fail(peek(), "unexpected '" + peek().text + "' after formula");
        return f;
    }

    Ltl body_only()
    {
        auto f = iff();
        if (peek().kind != Tok::End) fail(peek(), "unexpected '" + peek().text + "' after formula");
        return f;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const std::set<std::string> *bound_ = nullptr;
    std::vector<Token> quant_tokens_;

    const Token &peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    const Token &next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] static void fail(const Token &t, const std::string &msg)
    {
        throw ParseError("formula", msg, t.line, t.column);
    }

    const Token &expect(Tok kind, const char *what)
    {
        if (peek().kind != kind) fail(peek(), std::string("expected ") + what + ", found '" + peek().text + "'");
        return next();
    }

    std::string ident(const char *what)
    {
        const auto &t = peek();
        if (t.kind != Tok::Ident || is_keyword(t.text))
            fail(t, std::string("expected ") + what + ", found '" + t.text + "'");
        return next().text;
    }

    static bool starts_quantifier(const Token &t)
    {
        return t.kind == Tok::LAngle2 || (t.kind == Tok::Ident && (t.text == "forall" || t.text == "exists"));
    }

    Quantifier quantifier()
    {
        Quantifier q;
        const auto &t = peek();
        if (t.kind == Tok::LAngle2) {
            next();
            q.spec.kind = AgentSpec::Kind::Coalition;
            q.spec.agents.push_back(ident("agent name"));
            while (peek().kind == Tok::Comma) {
                next();
                q.spec.agents.push_back(ident("agent name"));
            }
            expect(Tok::RAngle2, "'>>'");
        } else {
            q.spec.kind = next().text == "forall" ? AgentSpec::Kind::Forall : AgentSpec::Kind::Exists;
        }
        quant_tokens_.push_back(peek());
        q.var = ident("path variable");
        if (peek().kind == Tok::At) {
            next();
            q.system = ident("system identifier");
        }
        expect(Tok::Dot, "'.'");
        return q;
    }

    Ltl iff()
    {
        auto lhs = implies();
        while (peek().kind == Tok::DArrow) {
            next();
            lhs = ltl::iff(lhs, implies());
        }
        return lhs;
    }

    Ltl implies()
    {
        auto lhs = disj();
        if (peek().kind == Tok::Arrow) {
            next();
            return ltl::implies(lhs, implies());
        }
        return lhs;
    }

    Ltl disj()
    {
        auto lhs = conj();
        while (peek().kind == Tok::Pipe) {
            next();
            lhs = ltl::disj(lhs, conj());
        }
        return lhs;
    }

    Ltl conj()
    {
        auto lhs = temporal();
        while (peek().kind == Tok::Amp) {
            next();
            lhs = ltl::conj(lhs, temporal());
        }
        return lhs;
    }

    Ltl temporal()
    {
        auto lhs = unary();
        if (peek().kind == Tok::Ident && (peek().text == "U" || peek().text == "R")) {
            bool until = next().text == "U";
            auto rhs = temporal();
            return until ? ltl::until(lhs, rhs) : ltl::release(lhs, rhs);
        }
        return lhs;
    }

    Ltl unary()
    {
        const auto &t = peek();
        if (t.kind == Tok::Bang) {
            next();
            return ltl::neg(unary());
        }
        if (t.kind == Tok::Ident) {
            if (t.text == "X") {
                next();
                std::size_t k = 1;
                if (peek().kind == Tok::LBracket) {
                    next();
                    k = std::stoul(expect(Tok::Nat, "step count").text);
                    expect(Tok::RBracket, "']'");
                }
                return ltl::next_n(k, unary());
            }
            if (t.text == "G") {
                next();
                return ltl::globally(unary());
            }
            if (t.text == "F") {
                next();
                return ltl::eventually(unary());
            }
        }
        return primary();
    }

    Ltl primary()
    {
        const auto &t = peek();
        if (t.kind == Tok::LParen) {
            next();
            auto f = iff();
            expect(Tok::RParen, "')'");
            return f;
        }
        if (t.kind == Tok::Ident && t.text == "true") {
            next();
            return ltl::tt();
        }
        if (t.kind == Tok::Ident && t.text == "false") {
            next();
            return ltl::ff();
        }
        if (t.kind == Tok::Ident && !is_keyword(t.text)) {
            std::string prop = next().text;
            if (peek().kind == Tok::LBracket) {
                next();
                prop += "[" + expect(Tok::Nat, "bit index").text + "]";
                expect(Tok::RBracket, "']'");
            }
            expect(Tok::LBrace, "'{' and a path variable");
            const auto &vt = peek();
            std::string var = ident("path variable");
            expect(Tok::RBrace, "'}'");
            if (bound_ && !bound_->count(var)) fail(vt, "path variable '" + var + "' is unbound");
            return ltl::atom(std::move(prop), std::move(var));
        }
        fail(t, "expected a formula, found '" + t.text + "'");
    }
};

} // namespace

HyperFormula parse_formula(std::string_view text)
{
    Parser p(text);
    return p.hyper();
}

Ltl parse_ltl(std::string_view text)
{
    Parser p(text);
    return p.body_only();
}

std::string to_string(const HyperFormula &f)
{
    std::ostringstream os;
    if (f.negated) os << "!";
    if (f.bracketed) os << "[";
    for (std::size_t i = 0; i < f.block.size(); ++i) {
        const auto &q = f.block[i];
        if (f.bracketed || i) os << " ";
        switch (q.spec.kind) {
        case AgentSpec::Kind::Forall: os << "forall"; break;
        case AgentSpec::Kind::Exists: os << "exists"; break;
        case AgentSpec::Kind::Coalition:
            os << "<<";
            for (std::size_t a = 0; a < q.spec.agents.size(); ++a) os << (a ? "," : "") << q.spec.agents[a];
            os << ">>";
            break;
        }
        os << " " << q.var;
        if (q.system) os << " @ " << *q.system;
        os << " .";
    }
    if (f.bracketed) os << " ]";
    os << " " << to_string(f.body);
    return os.str();
}

FragmentInfo validate_fragment(const HyperFormula &f, const std::map<std::string, const Mscgs *> &systems,
                               const std::optional<std::string> &default_system)
{
    if (f.block.size() > 1 && !f.bracketed)
        throw ConfigError("formula", "unsupported fragment: multiple quantifiers must be grouped with [ ... ]");

    FragmentInfo info;
    std::map<std::string, std::size_t> var_copy;
    for (std::size_t i = 0; i < f.block.size(); ++i) {
        const auto &q = f.block[i];
        std::string id;
        if (q.system) {
            id = *q.system;
        } else if (default_system) {
            id = *default_system;
        } else {
            throw ConfigError("formula", "quantifier over '" + q.var + "' has no system and no default system is set");
        }
        auto it = systems.find(id);
        if (it == systems.end() || it->second == nullptr) throw ConfigError("formula", "unknown system '" + id + "'");
        const Mscgs &g = *it->second;

        ResolvedQuantifier rq;
        rq.system = id;
        rq.coalition.assign(g.agents.size(), false);
        switch (q.spec.kind) {
        case AgentSpec::Kind::Forall: break;
        case AgentSpec::Kind::Exists: rq.coalition.assign(g.agents.size(), true); break;
        case AgentSpec::Kind::Coalition:
            for (const auto &a : q.spec.agents) {
                auto idx = g.agent_index(a);
                if (idx == npos)
                    throw ConfigError("formula", "agent '" + a + "' of the quantifier over '" + q.var +
                                                     "' does not exist in system '" + id + "'");
                rq.coalition[idx] = true;
            }
            break;
        }
        if (!var_copy.emplace(q.var, i).second) throw ConfigError("formula", "duplicate path variable '" + q.var + "'");
        info.quantifiers.push_back(std::move(rq));
    }

    info.nnf_body = to_nnf(f.body);
    info.atoms = collect_atoms(info.nnf_body);
    for (const auto &a : info.atoms) {
        auto it = var_copy.find(a.var);
        if (it == var_copy.end()) throw ConfigError("formula", "path variable '" + a.var + "' is unbound");
        const auto &sys = info.quantifiers[it->second].system;
        const Mscgs &g = *systems.at(sys);
        if (g.prop_index(a.prop) == npos)
            throw ConfigError("formula", "proposition '" + a.prop + "' does not exist in system '" + sys + "'" +
                                             (a.prop == stut_prop ? " (stut only exists after the stutter transform)" : ""));
        info.atom_copy.push_back(it->second);
    }
    return info;
}

} // namespace hyperatl
