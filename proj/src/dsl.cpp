#include "fixcofe/dsl.hpp"

#include <cctype>
#include <utility>
#include <vector>

namespace fixcofe::dsl {

namespace {

struct Token {
    enum class Kind { Ident, Nat, LParen, RParen, Eq, Plus, Minus, KwIf, KwThen, KwElse, End };
    Kind kind;
    std::string text;
    Value nat = 0;
    SourceSpan span;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ >= src_.size()) {
            tok_ = {Token::Kind::End, "", 0, {start, start}};
            return;
        }
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Value v = 0;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                Value digit = static_cast<Value>(src_[pos_] - '0');
                if (v > (std::numeric_limits<Value>::max() - digit) / 10)
                    throw ParseError("numeric literal out of range", {start, pos_ + 1});
                v = v * 10 + digit;
                ++pos_;
            }
            tok_ = {Token::Kind::Nat, std::string(src_.substr(start, pos_ - start)), v, {start, pos_}};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            std::string word(src_.substr(start, pos_ - start));
            Token::Kind k = Token::Kind::Ident;
            if (word == "if") k = Token::Kind::KwIf;
            else if (word == "then") k = Token::Kind::KwThen;
            else if (word == "else") k = Token::Kind::KwElse;
            tok_ = {k, std::move(word), 0, {start, pos_}};
            return;
        }
        ++pos_;
        switch (c) {
            case '(': tok_ = {Token::Kind::LParen, "(", 0, {start, pos_}}; return;
            case ')': tok_ = {Token::Kind::RParen, ")", 0, {start, pos_}}; return;
            case '=': tok_ = {Token::Kind::Eq, "=", 0, {start, pos_}}; return;
            case '+': tok_ = {Token::Kind::Plus, "+", 0, {start, pos_}}; return;
            case '-': tok_ = {Token::Kind::Minus, "-", 0, {start, pos_}}; return;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", {start, pos_});
        }
    }

    void skip_ws() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    Token tok_;
};

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

class Parser {
public:
    Parser(std::string_view src) : lex_(src) {}

    DefAst parse() {
        DefAst def;
        def.name = expect_ident("function name");
        expect(Token::Kind::LParen, "'('");
        def.param = expect_ident("parameter name");
        expect(Token::Kind::RParen, "')'");
        expect(Token::Kind::Eq, "'='");
        name_ = def.name;
        param_ = def.param;
        def.body = parse_expr();
        const Token& t = lex_.peek();
        if (t.kind != Token::Kind::End)
            throw ParseError("trailing input after definition (one definition per file)", t.span);
        return def;
    }

private:
    ExprPtr parse_expr() {
        if (lex_.peek().kind == Token::Kind::KwIf) {
            Token kw = lex_.take();
            ExprPtr guard = parse_expr();
            expect(Token::Kind::Eq, "'='");
            Token zero = expect(Token::Kind::Nat, "'0'");
            if (zero.nat != 0)
                throw ParseError("only '= 0' guards are supported", zero.span);
            expect(Token::Kind::KwThen, "'then'");
            ExprPtr then_e = parse_expr();
            expect(Token::Kind::KwElse, "'else'");
            ExprPtr else_e = parse_expr();
            SourceSpan span{kw.span.begin, else_e->span.end};
            return make({Expr::Kind::IfZero, 0, guard, then_e, else_e, span});
        }
        return parse_sum();
    }

    ExprPtr parse_sum() {
        ExprPtr lhs = parse_atom();
        for (;;) {
            Token::Kind k = lex_.peek().kind;
            if (k != Token::Kind::Plus && k != Token::Kind::Minus) return lhs;
            lex_.take();
            ExprPtr rhs = parse_atom();
            SourceSpan span{lhs->span.begin, rhs->span.end};
            auto kind = k == Token::Kind::Plus ? Expr::Kind::Add : Expr::Kind::Monus;
            lhs = make({kind, 0, lhs, rhs, nullptr, span});
        }
    }

    ExprPtr parse_atom() {
        Token t = lex_.take();
        switch (t.kind) {
            case Token::Kind::Nat:
                return make({Expr::Kind::Lit, t.nat, nullptr, nullptr, nullptr, t.span});
            case Token::Kind::LParen: {
                ExprPtr e = parse_expr();
                expect(Token::Kind::RParen, "')'");
                return e;
            }
            case Token::Kind::Ident: {
                if (lex_.peek().kind == Token::Kind::LParen) {
                    if (t.text != name_)
                        throw ParseError("unknown function '" + t.text + "' (calls may only target '" +
                                             name_ + "')",
                                         t.span);
                    lex_.take();
                    ExprPtr arg = parse_expr();
                    Token close = expect(Token::Kind::RParen, "')'");
                    return make({Expr::Kind::Call, 0, arg, nullptr, nullptr,
                                 {t.span.begin, close.span.end}});
                }
                if (t.text != param_)
                    throw ParseError("unknown identifier '" + t.text + "' (the only variable is '" +
                                         param_ + "')",
                                     t.span);
                return make({Expr::Kind::Var, 0, nullptr, nullptr, nullptr, t.span});
            }
            default:
                throw ParseError("expected an expression", t.span);
        }
    }

    Token expect(Token::Kind k, const char* what) {
        Token t = lex_.take();
        if (t.kind != k) throw ParseError(std::string("expected ") + what, t.span);
        return t;
    }

    std::string expect_ident(const char* what) {
        Token t = lex_.take();
        if (t.kind != Token::Kind::Ident)
            throw ParseError(std::string("expected ") + what, t.span);
        return t.text;
    }

    Lexer lex_;
    std::string name_;
    std::string param_;
};

void print_expr(const Expr& e, const DefAst& ast, std::string& out, bool atom_position);

void print_child(const ExprPtr& e, const DefAst& ast, std::string& out, bool atom_position) {
    print_expr(*e, ast, out, atom_position);
}

void print_expr(const Expr& e, const DefAst& ast, std::string& out, bool atom_position) {
    switch (e.kind) {
        case Expr::Kind::Lit:
            out += std::to_string(e.lit);
            return;
        case Expr::Kind::Var:
            out += ast.param;
            return;
        case Expr::Kind::Call:
            out += ast.name;
            out += "(";
            print_child(e.a, ast, out, false);
            out += ")";
            return;
        case Expr::Kind::Add:
        case Expr::Kind::Monus: {
            if (atom_position) out += "(";
            // sums are left-associative; the right operand is an atom
            print_child(e.a, ast, out, e.a->kind == Expr::Kind::IfZero);
            out += e.kind == Expr::Kind::Add ? " + " : " - ";
            bool rhs_compound = e.b->kind == Expr::Kind::Add || e.b->kind == Expr::Kind::Monus ||
                                e.b->kind == Expr::Kind::IfZero;
            print_child(e.b, ast, out, rhs_compound);
            if (atom_position) out += ")";
            return;
        }
        case Expr::Kind::IfZero: {
            if (atom_position) out += "(";
            out += "if ";
            print_child(e.a, ast, out, e.a->kind == Expr::Kind::IfZero);
            out += " = 0 then ";
            print_child(e.b, ast, out, false);
            out += " else ";
            print_child(e.c, ast, out, false);
            if (atom_position) out += ")";
            return;
        }
    }
}

}  // namespace

bool expr_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Expr::Kind::Lit: return a.lit == b.lit;
        case Expr::Kind::Var: return true;
        case Expr::Kind::Call: return expr_equal(*a.a, *b.a);
        case Expr::Kind::Add:
        case Expr::Kind::Monus:
            return expr_equal(*a.a, *b.a) && expr_equal(*a.b, *b.b);
        case Expr::Kind::IfZero:
            return expr_equal(*a.a, *b.a) && expr_equal(*a.b, *b.b) && expr_equal(*a.c, *b.c);
    }
    return false;
}

bool ast_equal(const DefAst& a, const DefAst& b) {
    return a.name == b.name && a.param == b.param && expr_equal(*a.body, *b.body);
}

DefAst parse_def(std::string_view text) { return Parser(text).parse(); }

std::string print_def(const DefAst& ast) {
    std::string out = ast.name + "(" + ast.param + ") = ";
    print_expr(*ast.body, ast, out, false);
    return out;
}

Value eval_expr(const Expr& body, Value x, const NatFun::Elem& g) {
    switch (body.kind) {
        case Expr::Kind::Lit: return body.lit;
        case Expr::Kind::Var: return x;
        case Expr::Kind::Add:
            return add_checked(eval_expr(*body.a, x, g), eval_expr(*body.b, x, g));
        case Expr::Kind::Monus:
            return monus(eval_expr(*body.a, x, g), eval_expr(*body.b, x, g));
        case Expr::Kind::IfZero:
            return eval_expr(*body.a, x, g) == 0 ? eval_expr(*body.b, x, g)
                                                 : eval_expr(*body.c, x, g);
        case Expr::Kind::Call: return g(eval_expr(*body.a, x, g));
    }
    throw std::logic_error("unreachable expression kind");
}

Operator<NatFun> compile(const DefAst& ast) {
    ExprPtr body = ast.body;
    return Operator<NatFun>{
        .apply =
            [body](const NatFun::Elem& g) {
                return NatFun::Elem([body, g](Value x) { return eval_expr(*body, x, g); });
            },
        .mode = Mode::Unverified,
    };
}

}  // namespace fixcofe::dsl
