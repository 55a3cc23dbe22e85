#pragma once
// Expression evaluation over the scalar backends: complex floating, exact
// Gaussian rational, formal rational functions in x = e^{u-v}, and truncated
// Taylor series.

#include <map>
#include <stdexcept>
#include <string>

#include "ybx/expr.hpp"
#include "ybx/grat.hpp"
#include "ybx/ratfunc.hpp"
#include "ybx/series.hpp"

namespace ybx {

using FnBindings = std::map<std::string, ExprPtr>;

struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class C>
typename C::V eval_expr(const ExprPtr& e, C& ctx) {
    using V = typename C::V;
    switch (e->kind) {
        case Expr::Kind::Num:
            return ctx.num(e->text);
        case Expr::Kind::Id: {
            if (e->text == "u") return ctx.u;
            if (e->text == "v") return ctx.v;
            auto it = ctx.params.find(e->text);
            if (it == ctx.params.end()) throw EvalError("unbound symbol '" + e->text + "'");
            return it->second;
        }
        case Expr::Kind::Neg:
            return -eval_expr(e->args[0], ctx);
        case Expr::Kind::Pow: {
            V b = eval_expr(e->args[0], ctx);
            return ctx.pow_int(b, e->ipow);
        }
        case Expr::Kind::Bin: {
            V l = eval_expr(e->args[0], ctx);
            V r = eval_expr(e->args[1], ctx);
            switch (e->op) {
                case '+': return l + r;
                case '-': return l - r;
                case '*': return l * r;
                case '/': return l / r;
            }
            throw EvalError("bad operator");
        }
        case Expr::Kind::Call: {
            if (e->text == "exp") {
                if (e->args.size() != 1) throw EvalError("exp takes one argument");
                return ctx.expf(eval_expr(e->args[0], ctx));
            }
            if (!ctx.fns) throw EvalError("no binding for '" + e->text + "'");
            auto it = ctx.fns->find(e->text);
            if (it == ctx.fns->end()) throw EvalError("no binding for '" + e->text + "'");
            if (e->args.size() != 2) throw EvalError("free functions take two arguments");
            V a = eval_expr(e->args[0], ctx);
            V b = eval_expr(e->args[1], ctx);
            C sub = ctx;
            sub.u = a;
            sub.v = b;
            return eval_expr(it->second, sub);
        }
    }
    throw EvalError("bad expression node");
}

template <class C>
typename C::V generic_pow(C& ctx, typename C::V base, int n, typename C::V one) {
    bool invert = n < 0;
    if (invert) n = -n;
    typename C::V acc = one;
    for (int i = 0; i < n; ++i) acc = acc * base;
    if (invert) return one / acc;
    return acc;
}

// ---------------------------------------------------------------- float

struct F64Ctx {
    using V = C64;
    C64 u{}, v{};
    std::map<std::string, C64> params;
    const FnBindings* fns = nullptr;

    C64 num(const std::string& t) { return C64(std::stod(t), 0.0); }
    C64 expf(C64 z) { return std::exp(z); }
    C64 pow_int(C64 b, int n) { return generic_pow(*this, b, n, C64(1.0)); }
};

// ---------------------------------------------------------------- exact

struct ExactCtx {
    using V = GRat;
    GRat u, v;
    std::map<std::string, GRat> params;
    const FnBindings* fns = nullptr;

    GRat num(const std::string& t) { return GRat(rat_from_decimal(t)); }
    GRat expf(const GRat&) {
        throw EvalError("exp is not available in the exact rational backend");
    }
    GRat pow_int(const GRat& b, int n) { return generic_pow(*this, b, n, GRat(1)); }
};

// ---------------------------------------------------------------- formal
// Values carry a rational function in (x1, x2) and, when possible, an affine
// form a*u + b*v + c used only to resolve exp(...) arguments.

struct FormalV {
    RatFunc val;
    bool has_val = true;
    GRat cu, cv, cc;
    bool has_aff = true;

    static FormalV con(const GRat& c) {
        FormalV f;
        f.val = RatFunc::con(c);
        f.cc = c;
        return f;
    }
    bool aff_const() const { return has_aff && cu.is_zero() && cv.is_zero(); }

    FormalV operator+(const FormalV& o) const {
        FormalV r;
        r.has_val = has_val && o.has_val;
        if (r.has_val) r.val = val + o.val;
        r.has_aff = has_aff && o.has_aff;
        if (r.has_aff) { r.cu = cu + o.cu; r.cv = cv + o.cv; r.cc = cc + o.cc; }
        return r;
    }
    FormalV operator-() const {
        FormalV r = *this;
        if (r.has_val) r.val = -r.val;
        if (r.has_aff) { r.cu = -r.cu; r.cv = -r.cv; r.cc = -r.cc; }
        return r;
    }
    FormalV operator-(const FormalV& o) const { return *this + (-o); }
    FormalV& operator+=(const FormalV& o) { *this = *this + o; return *this; }
    FormalV operator*(const FormalV& o) const {
        FormalV r;
        r.has_val = has_val && o.has_val;
        if (r.has_val) r.val = val * o.val;
        r.has_aff = false;
        if (has_aff && o.has_aff) {
            if (aff_const()) { r.has_aff = true; r.cu = o.cu * cc; r.cv = o.cv * cc; r.cc = o.cc * cc; }
            else if (o.aff_const()) { r.has_aff = true; r.cu = cu * o.cc; r.cv = cv * o.cc; r.cc = cc * o.cc; }
        }
        if (!r.has_val && !r.has_aff) throw EvalError("formal backend: non-affine use of u,v outside exp");
        return r;
    }
    FormalV operator/(const FormalV& o) const {
        FormalV r;
        if (!has_val || !o.has_val) {
            if (has_aff && o.aff_const()) {
                r = *this;
                GRat ic = o.cc.inv();
                r.cu = cu * ic; r.cv = cv * ic; r.cc = cc * ic;
                r.has_val = false;
                return r;
            }
            throw EvalError("formal backend: unsupported division");
        }
        r.val = val / o.val;
        r.has_aff = false;
        return r;
    }
};

template <>
struct ScalarOps<FormalV> {
    static FormalV zero() { return FormalV::con(GRat(0)); }
    static FormalV one() { return FormalV::con(GRat(1)); }
};

struct FormalCtx {
    using V = FormalV;
    FormalV u, v;
    std::map<std::string, FormalV> params;
    const FnBindings* fns = nullptr;
    int xe1 = 1, xe2 = 0;  // exponents of (x1, x2) representing e^{u-v} here

    static FormalCtx for_pairing(int e1, int e2) {
        FormalCtx c;
        c.xe1 = e1;
        c.xe2 = e2;
        c.u.has_val = false;
        c.u.cu = GRat(1);
        c.v.has_val = false;
        c.v.cv = GRat(1);
        return c;
    }

    FormalV num(const std::string& t) { return FormalV::con(GRat(rat_from_decimal(t))); }
    FormalV expf(const FormalV& a) {
        if (!a.has_aff || !a.cc.is_zero() || !(a.cu + a.cv).is_zero())
            throw EvalError("formal backend: exp argument must be a multiple of u-v");
        const GRat& al = a.cu;
        if (al.im != 0 || boost::multiprecision::denominator(al.re) != 1)
            throw EvalError("formal backend: exp exponent must be an integer multiple of u-v");
        long alpha = static_cast<long>(boost::multiprecision::numerator(al.re));
        FormalV r;
        r.val = RatFunc::mono(static_cast<int>(alpha) * xe1, static_cast<int>(alpha) * xe2);
        r.has_aff = false;
        return r;
    }
    FormalV pow_int(const FormalV& b, int n) {
        return generic_pow(*this, b, n, FormalV::con(GRat(1)));
    }
};

// ---------------------------------------------------------------- series

struct SeriesCtx {
    using V = Ser;
    Ser u, v;
    std::map<std::string, Ser> params;
    const FnBindings* fns = nullptr;
    int order = 4;

    Ser num(const std::string& t) { return Ser::con(C64(std::stod(t), 0.0), order); }
    Ser expf(const Ser& z) { return ser_exp(z); }
    Ser pow_int(const Ser& b, int n) { return generic_pow(*this, b, n, Ser::con(C64(1.0), order)); }
};

// Stock free-function bindings.
ExprPtr bind_constant(const std::string& value);
ExprPtr bind_exp_diff(int alpha);                       // exp(alpha*(u-v))
ExprPtr bind_smooth(uint64_t seed, int index);          // seeded random low-degree polynomial

}  // namespace ybx
