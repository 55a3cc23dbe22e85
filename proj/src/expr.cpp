#include "ybx/expr.hpp"

#include <cctype>
#include <set>

namespace ybx {

namespace {

const std::set<std::string>& known_idents() {
    static const std::set<std::string> ids = [] {
        std::set<std::string> s{"u", "v", "p", "q", "k", "s", "exp"};
        for (int i = 1; i <= 9; ++i) {
            s.insert("f" + std::to_string(i));
            s.insert("g" + std::to_string(i));
        }
        return s;
    }();
    return ids;
}

struct Parser {
    const std::string& in;
    size_t pos = 0;

    explicit Parser(const std::string& text) : in(text) {}

    void skip_ws() {
        while (pos < in.size() && std::isspace(static_cast<unsigned char>(in[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < in.size() ? in[pos] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) { ++pos; return true; }
        return false;
    }

    ExprPtr expr() {
        ExprPtr e = term();
        while (true) {
            char c = peek();
            if (c != '+' && c != '-') break;
            ++pos;
            e = make_bin(c, e, term());
        }
        return e;
    }

    ExprPtr term() {
        ExprPtr e = factor();
        while (true) {
            char c = peek();
            if (c != '*' && c != '/') break;
            ++pos;
            e = make_bin(c, e, factor());
        }
        return e;
    }

    ExprPtr factor() {
        if (eat('-')) return make_neg(factor());
        ExprPtr b = base();
        if (eat('^')) {
            bool neg = eat('-');
            skip_ws();
            size_t start = pos;
            while (pos < in.size() && std::isdigit(static_cast<unsigned char>(in[pos]))) ++pos;
            if (pos == start) throw ParseError("expected integer exponent", pos);
            auto p = std::make_shared<Expr>();
            p->kind = Expr::Kind::Pow;
            p->ipow = std::stoi(in.substr(start, pos - start)) * (neg ? -1 : 1);
            p->args = {b};
            return p;
        }
        return b;
    }

    ExprPtr base() {
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return ident_or_call();
        if (eat('(')) {
            ExprPtr e = expr();
            if (!eat(')')) throw ParseError("expected ')'", pos);
            return e;
        }
        throw ParseError("unexpected character", pos);
    }

    ExprPtr number() {
        size_t start = pos;
        while (pos < in.size() && std::isdigit(static_cast<unsigned char>(in[pos]))) ++pos;
        if (pos < in.size() && in[pos] == '.') {
            ++pos;
            size_t fs = pos;
            while (pos < in.size() && std::isdigit(static_cast<unsigned char>(in[pos]))) ++pos;
            if (pos == fs) throw ParseError("expected digits after '.'", pos);
        }
        return make_num(in.substr(start, pos - start));
    }

    ExprPtr ident_or_call() {
        size_t start = pos;
        while (pos < in.size() && (std::isalnum(static_cast<unsigned char>(in[pos])))) ++pos;
        std::string name = in.substr(start, pos - start);
        if (!known_idents().count(name)) throw ParseError("unknown identifier '" + name + "'", start);
        if (eat('(')) {
            std::vector<ExprPtr> args;
            args.push_back(expr());
            while (eat(',')) args.push_back(expr());
            if (!eat(')')) throw ParseError("expected ')'", pos);
            return make_call(name, std::move(args));
        }
        if (name == "exp") throw ParseError("'exp' requires arguments", start);
        return make_id(name);
    }
};

// precedence: add 1, mul 2, neg/pow 3, atom 4
int prec(const ExprPtr& e) {
    switch (e->kind) {
        case Expr::Kind::Bin: return (e->op == '+' || e->op == '-') ? 1 : 2;
        case Expr::Kind::Neg: return 3;
        case Expr::Kind::Pow: return 3;
        default: return 4;
    }
}

void print_rec(const ExprPtr& e, int min_prec, std::string& out) {
    bool paren = prec(e) < min_prec;
    if (paren) out += '(';
    switch (e->kind) {
        case Expr::Kind::Num:
        case Expr::Kind::Id:
            out += e->text;
            break;
        case Expr::Kind::Call:
            out += e->text;
            out += '(';
            for (size_t i = 0; i < e->args.size(); ++i) {
                if (i) out += ',';
                print_rec(e->args[i], 0, out);
            }
            out += ')';
            break;
        case Expr::Kind::Bin: {
            int lp = (e->op == '+' || e->op == '-') ? 1 : 2;
            print_rec(e->args[0], lp, out);
            out += e->op;
            print_rec(e->args[1], lp + 1, out);
            break;
        }
        case Expr::Kind::Neg:
            out += '-';
            print_rec(e->args[0], 3, out);
            break;
        case Expr::Kind::Pow:
            print_rec(e->args[0], 4, out);
            out += '^';
            out += std::to_string(e->ipow);
            break;
    }
    if (paren) out += ')';
}

}  // namespace

ExprPtr make_num(const std::string& literal) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Num;
    e->text = literal;
    return e;
}
ExprPtr make_id(const std::string& name) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Id;
    e->text = name;
    return e;
}
ExprPtr make_bin(char op, ExprPtr l, ExprPtr r) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Bin;
    e->op = op;
    e->args = {std::move(l), std::move(r)};
    return e;
}
ExprPtr make_neg(ExprPtr x) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Neg;
    e->args = {std::move(x)};
    return e;
}
ExprPtr make_call(const std::string& name, std::vector<ExprPtr> args) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Call;
    e->text = name;
    e->args = std::move(args);
    return e;
}

ExprPtr parse_expr(const std::string& text) {
    Parser p(text);
    ExprPtr e = p.expr();
    p.skip_ws();
    if (p.pos != text.size()) throw ParseError("trailing input", p.pos);
    return e;
}

std::string print_expr(const ExprPtr& e) {
    std::string out;
    print_rec(e, 0, out);
    return out;
}

bool expr_eq(const ExprPtr& a, const ExprPtr& b) {
    if (a->kind != b->kind || a->text != b->text || a->op != b->op || a->ipow != b->ipow ||
        a->args.size() != b->args.size())
        return false;
    for (size_t i = 0; i < a->args.size(); ++i)
        if (!expr_eq(a->args[i], b->args[i])) return false;
    return true;
}

}  // namespace ybx
