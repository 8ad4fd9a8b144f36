#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fixcofe/fixpoint.hpp"
#include "fixcofe/natfun.hpp"
#include "fixcofe/value.hpp"

namespace fixcofe::dsl {

// Byte offsets into the source text, for error reporting.
struct SourceSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
};

struct ParseError : std::runtime_error {
    ParseError(std::string msg, SourceSpan s)
        : std::runtime_error(std::move(msg)), span(s) {}
    SourceSpan span;
};

/// Body expression of a definition. Variables always refer to the single
/// parameter; calls always target the defined name.
struct Expr {
    enum class Kind { Lit, Var, Add, Monus, IfZero, Call };
    Kind kind;
    Value lit = 0;                       // Lit
    std::shared_ptr<const Expr> a, b, c; // operands: guard/then/else, lhs/rhs, call arg in a
    SourceSpan span;
};

using ExprPtr = std::shared_ptr<const Expr>;

struct DefAst {
    std::string name;
    std::string param;
    ExprPtr body;
};

// Structural equality, ignoring source spans.
bool expr_equal(const Expr& a, const Expr& b);
bool ast_equal(const DefAst& a, const DefAst& b);

/// Parses one definition, e.g. "f(x) = if x = 0 then 0 else f(f(x - 1))".
/// '-' is monus; '#' starts a comment; whitespace is insignificant.
DefAst parse_def(std::string_view text);

/// Canonical single-line rendering; parse_def(print_def(a)) reparses to an
/// identical tree.
std::string print_def(const DefAst& ast);

/// Big-step call-by-value evaluation of a body at argument x, with every
/// recursive call dispatched to the given element g (the previous
/// approximant). Total whenever g is total.
Value eval_expr(const Expr& body, Value x, const NatFun::Elem& g);

/// The definition as an operator on NatFun: apply(g) = λx. body[param := x,
/// name := g]. Mode is Unverified; declaring more is a checker's job.
Operator<NatFun> compile(const DefAst& ast);

}  // namespace fixcofe::dsl
