#pragma once
// Expression DSL for matrix entries.
//
// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | base ('^' integer)?
//   base   := number | ident | ident '(' expr (',' expr)* ')' | '(' expr ')'
//   ident  in {u, v, p, q, k, s, exp, f1..f9, g1..g9}

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace ybx {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Num, Id, Call, Bin, Neg, Pow };
    Kind kind;
    std::string text;            // literal text (Num) or identifier name (Id, Call)
    char op = 0;                 // '+','-','*','/' for Bin
    int ipow = 0;                // exponent for Pow
    std::vector<ExprPtr> args;   // operands / call arguments
};

struct ParseError : std::runtime_error {
    size_t pos;
    ParseError(const std::string& msg, size_t at)
        : std::runtime_error(msg + " at offset " + std::to_string(at)), pos(at) {}
};

ExprPtr parse_expr(const std::string& text);
std::string print_expr(const ExprPtr& e);
bool expr_eq(const ExprPtr& a, const ExprPtr& b);

ExprPtr make_num(const std::string& literal);
ExprPtr make_id(const std::string& name);
ExprPtr make_bin(char op, ExprPtr l, ExprPtr r);
ExprPtr make_neg(ExprPtr x);
ExprPtr make_call(const std::string& name, std::vector<ExprPtr> args);

}  // namespace ybx
