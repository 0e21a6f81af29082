#include <catch_amalgamated.hpp>

#include "curvecert/identity.hpp"

using namespace curvecert;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("parsing a small identity file") {
    IdentityAst ast = parse_identity("let a = u + 1; a*a == u^2 + 2*u + 1");
    REQUIRE(ast.bindings.size() == 1);
    REQUIRE(ast.bindings[0].first == "a");
    REQUIRE_FALSE(ast.case_hint.has_value());
    REQUIRE(check_identity(ast).equal);
}

TEST_CASE("comments and case pragmas") {
    std::string text = "# case: even\n# free-form remark with numbers 42 17\nu == u\n";
    IdentityAst ast = parse_identity(text);
    REQUIRE(ast.case_hint == MarkCase::Even);
    REQUIRE(parse_identity("# case: odd\nu == u").case_hint == MarkCase::Odd);
    REQUIRE_FALSE(parse_identity("# case: both\nu == u").case_hint.has_value());
    REQUIRE_FALSE(parse_identity("u == u").case_hint.has_value());
}

TEST_CASE("syntax errors carry positions") {
    try {
        parse_identity("x^ == 2");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        REQUIRE(e.line == 1);
        REQUIRE(e.col >= 3);
        REQUIRE_THAT(e.what(), ContainsSubstring("1:"));
    }

    REQUIRE_THROWS_AS(parse_identity("let a = 1; let a = 2; a == a"), ParseError);
    REQUIRE_THROWS_AS(parse_identity("b == 1"), ParseError);          // undeclared name
    REQUIRE_THROWS_AS(parse_identity("u / t == 1"), ParseError);      // non-literal divisor
    REQUIRE_THROWS_AS(parse_identity("u / 0 == 1"), ParseError);      // zero divisor
    REQUIRE_THROWS_AS(parse_identity("u == u extra"), ParseError);    // trailing input
    REQUIRE_THROWS_AS(parse_identity("u ^ 100000 == 0"), ParseError); // exponent cap
    REQUIRE_THROWS_AS(parse_identity("let t = 1; t == 1"), ParseError); // builtin collision
    REQUIRE_THROWS_AS(parse_identity(""), ParseError);
}

TEST_CASE("division is integer-literal only, applied exactly") {
    IdentityAst ast = parse_identity("(6*u + 9) / 3 == 2*u + 3");
    REQUIRE(check_identity(ast).equal);
    // divisor outside Z[1/210] surfaces as an evaluation error
    IdentityAst bad = parse_identity("(11*u) / 11 == u");
    REQUIRE_THROWS_AS(check_identity(bad), IllegalDivisorError);
}

TEST_CASE("precedence, associativity, unary minus") {
    auto same = [](const std::string& text, const std::string& expect) {
        auto e = parse_expression(text);
        REQUIRE(pretty_print(*e) == expect);
    };
    same("1 + 2*3", "1 + 2*3");
    same("(1 + 2)*3", "(1 + 2)*3");
    same("t - u - S", "t - u - S"); // left-assoc, no spurious parens
    same("-u^2", "-u^2");           // negation of the power, as parsed
    same("(-u)^2", "(-u)^2");
    same("-(t + u)", "-(t + u)");
    same("2^3", "2^3");

    // unary minus only at the head of an expression (or parenthesized group)
    REQUIRE_THROWS_AS(parse_expression("t * -u"), ParseError);
    REQUIRE(check_identity(parse_identity("-u + u == 0")).equal);
}

TEST_CASE("pretty-print round trip") {
    const char* files[] = {
        "let a = u + 1; let b = a*a - 1; b == u^2 + 2*u",
        "# case: odd\n-u^3 / 8 == -(u^2)*u / 8",
        "(u - 9/4)^2 == u^2 - 9*u/2 + 81/16",
    };
    for (const char* text : files) {
        IdentityAst ast = parse_identity(text);
        REQUIRE(check_identity(ast).equal);
        std::string printed = pretty_print(ast);
        IdentityAst again = parse_identity(printed);
        REQUIRE(ast_equal(ast, again));
        REQUIRE(pretty_print(again) == printed); // fixed point
    }
}

TEST_CASE("verdicts carry a canonical difference") {
    Verdict v = check_identity(parse_identity("u + 1 == u"));
    REQUIRE_FALSE(v.equal);
    REQUIRE(v.difference == "1");
    Verdict w = check_identity(parse_identity("2*u^2 == u"));
    REQUIRE(w.difference == "2*u^2 - u");
}

TEST_CASE("ambient epsilon bindings") {
    // eps0 is the leading unit in both cases
    REQUIRE(check_identity(parse_identity("eps0 == 1")).equal);
    // eps2 = 12*p2: a case-dependent linear polynomial
    REQUIRE(check_identity_for_case(parse_identity("eps2 == -6*u - 60"), MarkCase::Even).equal);
    REQUIRE(check_identity_for_case(parse_identity("eps2 == -30*u - 54"), MarkCase::Odd).equal);
    // unpinned check requires both cases, and eps2 differs between them
    REQUIRE_FALSE(check_identity(parse_identity("eps2 == -6*u - 60")).equal);
    // ambient names are not assignable
    REQUIRE_THROWS_AS(parse_identity("let eps2 = 1; eps2 == 1"), ParseError);
}

TEST_CASE("integer literal spans cover exactly the numeric tokens") {
    std::string text = "# comment 99\nlet a = 12*u + 3;\na == 12*u ^ 2 / 4 + 3 - 9*u*u/3\n";
    auto spans = integer_literal_spans(text);
    std::vector<std::string> lits;
    for (auto [off, len] : spans) lits.push_back(text.substr(off, len));
    REQUIRE(lits == std::vector<std::string>{"12", "3", "12", "2", "4", "3", "9", "3"});
}

TEST_CASE("single-literal perturbation flips simple identities") {
    std::string text = "2 + 2 == 4";
    REQUIRE(check_identity(parse_identity(text)).equal);
    for (auto [off, len] : integer_literal_spans(text)) {
        BigInt v = BigInt(text.substr(off, len)) + 1;
        std::string mutated = text.substr(0, off) + v.str() + text.substr(off + len);
        REQUIRE_FALSE(check_identity(parse_identity(mutated)).equal);
    }
}

TEST_CASE("finite-field evaluation policies") {
    auto cfg = FieldConfig::make(11);
    FqEvalPolicy value_policy{cfg, false};
    FqEvalPolicy index_policy{cfg, true};

    auto e = parse_expression("2*t + 6");
    auto f = evaluate_expr(*e, value_policy, {});
    using FqPoly = MultiPoly<FqElem>;
    FqPoly expect = FqPoly::variable(Var::T, FqElem::one(cfg)).mul_int(2) +
                    FqPoly::constant(FqElem::from_int(cfg, 6));
    REQUIRE(f == expect);
    // for r = 1 and small literals the index reading coincides
    REQUIRE(evaluate_expr(*e, index_policy, {}) == expect);

    // the canonical printing of an instance polynomial reparses under the
    // index policy to the same polynomial
    REQUIRE(evaluate_expr(*parse_expression(expect.str()), index_policy, {}) == expect);

    // in F_11 the identity 1/2 = 6 holds
    auto half = parse_identity("1 / 2 == 6");
    REQUIRE(evaluate_identity(half, value_policy, {}).equal);
}
