#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "curvecert/error.hpp"
#include "curvecert/fq.hpp"
#include "curvecert/homs.hpp"
#include "curvecert/poly.hpp"
#include "curvecert/scalar.hpp"
#include "curvecert/shioda.hpp"

namespace curvecert {

// ---------------------------------------------------------------------------
// Identity-file syntax
//
//   file   := { "let" name "=" expr ";" } expr "==" expr
//   expr   := [ "-" ] term { ("+"|"-") term }
//   term   := factor { ("*"|"/") factor }
//   factor := base [ "^" natural ]
//   base   := integer | name | builtin-var | "(" expr ")"
//
// "#" starts a line comment.  Division is only legal by a nonzero integer
// literal.  The leading "-" is a convenience so canonical polynomial strings
// are themselves valid expressions.  A comment of the form "# case: even"
// (or odd/both) pins the family an identity file is about; default is both.
// ---------------------------------------------------------------------------

struct SourcePos {
    int line = 1;
    int col = 1;
};

struct Expr {
    enum class Kind { Integer, Name, Negate, Binary, Power };

    Kind kind;
    SourcePos pos;
    BigInt value;                // Integer
    std::string name;            // Name
    char op = 0;                 // Binary: one of + - * /
    std::unique_ptr<Expr> lhs;   // Binary / Negate / Power operand
    std::unique_ptr<Expr> rhs;   // Binary
    unsigned exponent = 0;       // Power
};

using ExprPtr = std::unique_ptr<Expr>;

struct IdentityAst {
    std::vector<std::pair<std::string, ExprPtr>> bindings;
    ExprPtr lhs;
    ExprPtr rhs;
    std::optional<MarkCase> case_hint; // nullopt: must hold in both cases
};

inline const std::set<std::string>& builtin_var_names() {
    static const std::set<std::string> names = {"t", "u", "S", "X", "Y", "W", "x"};
    return names;
}

inline std::optional<Var> builtin_var(const std::string& name) {
    for (size_t i = 0; i < kVarNames.size(); ++i)
        if (name == kVarNames[i]) return static_cast<Var>(i);
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace detail {

struct Token {
    enum class Type {
        Let, Name, Integer, Plus, Minus, Star, Slash, Caret, LParen, RParen,
        Semicolon, Assign, EqEq, End
    };
    Type type;
    std::string text;
    BigInt value;
    SourcePos pos;
    size_t offset = 0; // byte offset of the first character
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space_and_comments();
            SourcePos pos{line_, col_};
            size_t off = i_;
            if (i_ >= text_.size()) {
                out.push_back({Token::Type::End, "", 0, pos, off});
                return out;
            }
            char c = text_[i_];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::string digits;
                while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_])))
                    digits += advance();
                out.push_back({Token::Type::Integer, digits, BigInt(digits), pos, off});
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string name;
                while (i_ < text_.size() &&
                       (std::isalnum(static_cast<unsigned char>(text_[i_])) || text_[i_] == '_'))
                    name += advance();
                out.push_back({name == "let" ? Token::Type::Let : Token::Type::Name, name, 0, pos,
                               off});
                continue;
            }
            switch (c) {
            case '+': out.push_back({Token::Type::Plus, "+", 0, pos, off}); advance(); break;
            case '-': out.push_back({Token::Type::Minus, "-", 0, pos, off}); advance(); break;
            case '*': out.push_back({Token::Type::Star, "*", 0, pos, off}); advance(); break;
            case '/': out.push_back({Token::Type::Slash, "/", 0, pos, off}); advance(); break;
            case '^': out.push_back({Token::Type::Caret, "^", 0, pos, off}); advance(); break;
            case '(': out.push_back({Token::Type::LParen, "(", 0, pos, off}); advance(); break;
            case ')': out.push_back({Token::Type::RParen, ")", 0, pos, off}); advance(); break;
            case ';': out.push_back({Token::Type::Semicolon, ";", 0, pos, off}); advance(); break;
            case '=':
                advance();
                if (i_ < text_.size() && text_[i_] == '=') {
                    advance();
                    out.push_back({Token::Type::EqEq, "==", 0, pos, off});
                } else {
                    out.push_back({Token::Type::Assign, "=", 0, pos, off});
                }
                break;
            default:
                throw ParseError(pos.line, pos.col, std::string("unexpected character '") + c + "'");
            }
        }
    }

private:
    std::string_view text_;
    size_t i_ = 0;
    int line_ = 1;
    int col_ = 1;

    char advance() {
        char c = text_[i_++];
        if (c == '\n') { ++line_; col_ = 1; }
        else ++col_;
        return c;
    }

    void skip_space_and_comments() {
        while (i_ < text_.size()) {
            char c = text_[i_];
            if (c == '#') {
                while (i_ < text_.size() && text_[i_] != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else {
                return;
            }
        }
    }
};

} // namespace detail

// Byte spans (offset, length) of every integer literal, in source order.
// Mutation tests rewrite these spans one at a time.
inline std::vector<std::pair<size_t, size_t>> integer_literal_spans(std::string_view text) {
    std::vector<std::pair<size_t, size_t>> spans;
    for (const auto& tok : detail::Lexer(text).run())
        if (tok.type == detail::Token::Type::Integer)
            spans.emplace_back(tok.offset, tok.text.size());
    return spans;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace detail {

class Parser {
public:
    Parser(std::vector<Token> toks, std::set<std::string> known)
        : toks_(std::move(toks)), known_(std::move(known)) {}

    IdentityAst parse_file() {
        IdentityAst ast;
        while (peek().type == Token::Type::Let) {
            next();
            Token name = expect(Token::Type::Name, "binding name");
            if (known_.count(name.text) || builtin_var_names().count(name.text))
                throw ParseError(name.pos.line, name.pos.col,
                                 "name '" + name.text + "' is already defined");
            expect(Token::Type::Assign, "'='");
            ExprPtr e = parse_expr();
            expect(Token::Type::Semicolon, "';'");
            known_.insert(name.text);
            ast.bindings.emplace_back(name.text, std::move(e));
        }
        ast.lhs = parse_expr();
        expect(Token::Type::EqEq, "'=='");
        ast.rhs = parse_expr();
        Token end = peek();
        if (end.type != Token::Type::End)
            throw ParseError(end.pos.line, end.pos.col, "trailing input after the goal");
        return ast;
    }

    ExprPtr parse_expr_complete() {
        ExprPtr e = parse_expr();
        Token end = peek();
        if (end.type != Token::Type::End)
            throw ParseError(end.pos.line, end.pos.col, "trailing input after expression");
        return e;
    }

    ExprPtr parse_expr() {
        ExprPtr acc;
        if (peek().type == Token::Type::Minus) {
            Token m = next();
            auto node = std::make_unique<Expr>();
            node->kind = Expr::Kind::Negate;
            node->pos = m.pos;
            node->lhs = parse_term();
            acc = std::move(node);
        } else {
            acc = parse_term();
        }
        while (peek().type == Token::Type::Plus || peek().type == Token::Type::Minus) {
            Token op = next();
            auto node = std::make_unique<Expr>();
            node->kind = Expr::Kind::Binary;
            node->pos = op.pos;
            node->op = op.type == Token::Type::Plus ? '+' : '-';
            node->lhs = std::move(acc);
            node->rhs = parse_term();
            acc = std::move(node);
        }
        return acc;
    }

private:
    std::vector<Token> toks_;
    size_t i_ = 0;
    std::set<std::string> known_;

    const Token& peek() const { return toks_[i_]; }
    Token next() { return toks_[i_++]; }

    Token expect(Token::Type t, const std::string& what) {
        Token tok = next();
        if (tok.type != t)
            throw ParseError(tok.pos.line, tok.pos.col,
                             "expected " + what + ", got '" + tok.text + "'");
        return tok;
    }

    ExprPtr parse_term() {
        ExprPtr acc = parse_factor();
        while (peek().type == Token::Type::Star || peek().type == Token::Type::Slash) {
            Token op = next();
            auto node = std::make_unique<Expr>();
            node->kind = Expr::Kind::Binary;
            node->pos = op.pos;
            node->op = op.type == Token::Type::Star ? '*' : '/';
            node->lhs = std::move(acc);
            node->rhs = parse_factor();
            if (node->op == '/') {
                if (node->rhs->kind != Expr::Kind::Integer)
                    throw ParseError(node->rhs->pos.line, node->rhs->pos.col,
                                     "division is only legal by an integer literal");
                if (node->rhs->value == 0)
                    throw ParseError(node->rhs->pos.line, node->rhs->pos.col, "division by zero");
            }
            acc = std::move(node);
        }
        return acc;
    }

    ExprPtr parse_factor() {
        ExprPtr base = parse_base();
        if (peek().type == Token::Type::Caret) {
            Token caret = next();
            Token e = expect(Token::Type::Integer, "a natural exponent");
            if (e.value > 4096)
                throw ParseError(e.pos.line, e.pos.col, "exponent too large");
            auto node = std::make_unique<Expr>();
            node->kind = Expr::Kind::Power;
            node->pos = caret.pos;
            node->lhs = std::move(base);
            node->exponent = e.value.convert_to<unsigned>();
            return node;
        }
        return base;
    }

    ExprPtr parse_base() {
        Token tok = next();
        auto node = std::make_unique<Expr>();
        node->pos = tok.pos;
        switch (tok.type) {
        case Token::Type::Integer:
            node->kind = Expr::Kind::Integer;
            node->value = tok.value;
            return node;
        case Token::Type::Name:
            if (!known_.count(tok.text) && !builtin_var_names().count(tok.text))
                throw ParseError(tok.pos.line, tok.pos.col, "undeclared name '" + tok.text + "'");
            node->kind = Expr::Kind::Name;
            node->name = tok.text;
            return node;
        case Token::Type::LParen: {
            ExprPtr inner = parse_expr();
            expect(Token::Type::RParen, "')'");
            return inner;
        }
        default:
            throw ParseError(tok.pos.line, tok.pos.col,
                             "expected an integer, a name, or '(', got '" + tok.text + "'");
        }
    }
};

inline std::optional<MarkCase> scan_case_pragma(std::string_view text) {
    size_t pos = 0;
    while (pos < text.size()) {
        size_t hash = text.find('#', pos);
        if (hash == std::string_view::npos) return std::nullopt;
        size_t eol = text.find('\n', hash);
        std::string_view line = text.substr(hash + 1, (eol == std::string_view::npos
                                                           ? text.size()
                                                           : eol) - hash - 1);
        std::string squeezed;
        for (char c : line)
            if (c != ' ' && c != '\t') squeezed += c;
        if (squeezed.rfind("case:", 0) == 0) {
            std::string tag = squeezed.substr(5);
            if (tag == "even") return MarkCase::Even;
            if (tag == "odd") return MarkCase::Odd;
            if (tag == "both") return std::nullopt;
            throw Error("unknown case pragma '" + tag + "'");
        }
        if (eol == std::string_view::npos) return std::nullopt;
        pos = eol + 1;
    }
    return std::nullopt;
}

} // namespace detail

// The ambient names an identity file may reference without declaring:
// eps0..eps27, bound to the coefficients of the case's reference product.
inline const std::set<std::string>& eps_ambient_names() {
    static const std::set<std::string> names = [] {
        std::set<std::string> s;
        for (int m = 0; m <= 27; ++m) s.insert("eps" + std::to_string(m));
        return s;
    }();
    return names;
}

inline IdentityAst parse_identity(std::string_view text,
                                  const std::set<std::string>& ambient = eps_ambient_names()) {
    detail::Parser parser(detail::Lexer(text).run(), ambient);
    IdentityAst ast = parser.parse_file();
    ast.case_hint = detail::scan_case_pragma(text);
    return ast;
}

// A bare expression (no bindings, no goal) — the grammar's expr rule alone.
// Certificate witnesses are reparsed through this entry point.
inline ExprPtr parse_expression(std::string_view text,
                                const std::set<std::string>& ambient = {}) {
    detail::Parser parser(detail::Lexer(text).run(), ambient);
    return parser.parse_expr_complete();
}

// ---------------------------------------------------------------------------
// Pretty printer (round-trips through parse to an equal AST)
// ---------------------------------------------------------------------------

namespace detail {

inline int precedence(const Expr& e) {
    switch (e.kind) {
    case Expr::Kind::Binary: return (e.op == '+' || e.op == '-') ? 1 : 2;
    case Expr::Kind::Negate: return 1;
    case Expr::Kind::Power: return 3;
    default: return 4;
    }
}

inline void print_expr(const Expr& e, int min_prec, std::string& out) {
    int prec = precedence(e);
    bool wrap = prec < min_prec;
    if (wrap) out += "(";
    switch (e.kind) {
    case Expr::Kind::Integer:
        out += e.value.str();
        break;
    case Expr::Kind::Name:
        out += e.name;
        break;
    case Expr::Kind::Negate:
        out += "-";
        print_expr(*e.lhs, 2, out);
        break;
    case Expr::Kind::Binary:
        print_expr(*e.lhs, prec, out);
        // multiplicative operators print tight, matching polynomial output
        if (e.op == '+' || e.op == '-')
            out += std::string(" ") + e.op + " ";
        else
            out += e.op;
        print_expr(*e.rhs, prec + 1, out);
        break;
    case Expr::Kind::Power:
        print_expr(*e.lhs, 4, out);
        out += "^" + std::to_string(e.exponent);
        break;
    }
    if (wrap) out += ")";
}

} // namespace detail

inline std::string pretty_print(const Expr& e) {
    std::string out;
    detail::print_expr(e, 0, out);
    return out;
}

inline std::string pretty_print(const IdentityAst& ast) {
    std::string out;
    if (ast.case_hint) out += std::string("# case: ") + case_name(*ast.case_hint) + "\n";
    for (const auto& [name, expr] : ast.bindings)
        out += "let " + name + " = " + pretty_print(*expr) + ";\n";
    out += pretty_print(*ast.lhs) + " == " + pretty_print(*ast.rhs) + "\n";
    return out;
}

inline bool expr_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case Expr::Kind::Integer: return a.value == b.value;
    case Expr::Kind::Name: return a.name == b.name;
    case Expr::Kind::Negate: return expr_equal(*a.lhs, *b.lhs);
    case Expr::Kind::Binary:
        return a.op == b.op && expr_equal(*a.lhs, *b.lhs) && expr_equal(*a.rhs, *b.rhs);
    case Expr::Kind::Power: return a.exponent == b.exponent && expr_equal(*a.lhs, *b.lhs);
    }
    return false;
}

inline bool ast_equal(const IdentityAst& a, const IdentityAst& b) {
    if (a.bindings.size() != b.bindings.size()) return false;
    for (size_t i = 0; i < a.bindings.size(); ++i)
        if (a.bindings[i].first != b.bindings[i].first ||
            !expr_equal(*a.bindings[i].second, *b.bindings[i].second))
            return false;
    return a.case_hint == b.case_hint && expr_equal(*a.lhs, *b.lhs) && expr_equal(*a.rhs, *b.rhs);
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

// Evaluation policy over Z[1/210]: integer literals are themselves.
struct LocEvalPolicy {
    using Poly = MultiPoly<LocScalar>;

    Poly integer(const BigInt& v) const { return Poly::constant(LocScalar(v)); }
    Poly variable(Var v) const { return Poly::variable(v, LocScalar(1)); }
    void check_divisor(const BigInt& n) const { LocScalar::check_int_divisor(n); }
};

// Evaluation policy over F_q.  Literals are integer images by default; witness
// strings from instance certificates instead encode field elements by their
// canonical enumeration index (for r = 1 the two readings coincide on 0..p-1).
struct FqEvalPolicy {
    FieldPtr cfg;
    bool index_literals = false;

    using Poly = MultiPoly<FqElem>;

    Poly integer(const BigInt& v) const {
        return Poly::constant(index_literals ? FqElem::from_index(cfg, v)
                                             : FqElem::from_int(cfg, v));
    }
    Poly variable(Var v) const { return Poly::variable(v, FqElem::one(cfg)); }
    void check_divisor(const BigInt& n) const {
        if (FqElem::from_int(cfg, n).is_zero())
            throw IllegalDivisorError("division by " + n.str() + " = 0 in characteristic " +
                                      std::to_string(cfg->p));
    }
};

template <class Policy>
typename Policy::Poly evaluate_expr(const Expr& e, const Policy& policy,
                                    const std::map<std::string, typename Policy::Poly>& env) {
    using Poly = typename Policy::Poly;
    switch (e.kind) {
    case Expr::Kind::Integer:
        return policy.integer(e.value);
    case Expr::Kind::Name: {
        auto it = env.find(e.name);
        if (it != env.end()) return it->second;
        if (auto v = builtin_var(e.name)) return policy.variable(*v);
        throw Error("unbound name '" + e.name + "'");
    }
    case Expr::Kind::Negate:
        return -evaluate_expr(*e.lhs, policy, env);
    case Expr::Kind::Binary: {
        Poly a = evaluate_expr(*e.lhs, policy, env);
        if (e.op == '/') {
            const BigInt& n = e.rhs->value;
            policy.check_divisor(n);
            return a.exact_div_int(n);
        }
        Poly b = evaluate_expr(*e.rhs, policy, env);
        if (e.op == '+') return a + b;
        if (e.op == '-') return a - b;
        return a * b;
    }
    case Expr::Kind::Power: {
        if (e.exponent == 0) return policy.integer(1);
        return evaluate_expr(*e.lhs, policy, env).pow(e.exponent);
    }
    }
    throw Error("corrupt expression node");
}

struct Verdict {
    bool equal = false;
    std::string difference; // canonical form of lhs - rhs when not equal
};

template <class Policy>
Verdict evaluate_identity(const IdentityAst& ast, const Policy& policy,
                          std::map<std::string, typename Policy::Poly> env) {
    for (const auto& [name, expr] : ast.bindings)
        env.emplace(name, evaluate_expr(*expr, policy, env));
    auto diff = evaluate_expr(*ast.lhs, policy, env) - evaluate_expr(*ast.rhs, policy, env);
    return Verdict{diff.is_zero(), diff.is_zero() ? "" : diff.str()};
}

// eps0..eps27 of the case's reference product, as ambient bindings.
inline std::map<std::string, MultiPoly<LocScalar>> symbolic_eps_bindings(MarkCase kase) {
    std::map<std::string, MultiPoly<LocScalar>> env;
    auto eps = epsilons_from_q(q_polynomial(kase));
    for (int m = 0; m <= 27; ++m) env.emplace("eps" + std::to_string(m), eps[m]);
    return env;
}

// Check one identity file against a specific case.
inline Verdict check_identity_for_case(const IdentityAst& ast, MarkCase kase) {
    return evaluate_identity(ast, LocEvalPolicy{}, symbolic_eps_bindings(kase));
}

/// Check per the file's pragma: a pinned case, or both when unpinned.
inline Verdict check_identity(const IdentityAst& ast) {
    if (ast.case_hint) return check_identity_for_case(ast, *ast.case_hint);
    Verdict even = check_identity_for_case(ast, MarkCase::Even);
    if (!even.equal) return even;
    return check_identity_for_case(ast, MarkCase::Odd);
}

} // namespace curvecert
