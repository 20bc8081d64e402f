#pragma once

// Expression language for algebra elements and action words.
//
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := atom ("^" ("-")? INT)? (dagger)?
//   atom   := "u[" INT "," INT "]" | "z[" INT "]" | "zs[" INT "]"
//           | "x[" INT "]" | "y[" INT "]" | "D[" set ";" set "]"
//           | "act(" word ";" expr ")" | "(" expr ")" | "q" | "s" | INT
//   word   := letter ("*" letter)*
//   letter := ("K"|"Kinv"|"E"|"F") "[" INT "]"
//   set    := INT ("," INT)*
//
// The dagger token is the UTF-8 character for the algebra involution.
// Division requires a scalar divisor; rational-function literals in q and s
// come out of the ordinary operator grammar.

#include <memory>
#include <variant>

#include "action.hpp"

namespace qflag {

struct ParseError : std::runtime_error {
    int line, col;
    ParseError(const std::string& msg, int l, int c)
        : std::runtime_error(msg + " at line " + std::to_string(l) + ", column " +
                             std::to_string(c)),
          line(l),
          col(c) {}
};

struct Expr;
using ExprPtr = std::shared_ptr<Expr>;

struct Expr {
    enum class Kind { Int, Q, S, Gen, Z, Zs, X, Y, Minor, Act, Add, Sub, Mul, Div, Pow, Star };
    Kind kind;
    long ival = 0;           // Int payload, Pow exponent
    int i = 0, j = 0;        // generator indices
    std::vector<int> I, J;   // minor rows/columns
    UqWord word;             // action word
    ExprPtr a, b;

    explicit Expr(Kind k) : kind(k) {}
};

class Parser {
public:
    Parser(std::string text, int rank) : text_(std::move(text)), n_(rank) {}

    ExprPtr parse() {
        ExprPtr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing input");
        return e;
    }

private:
    std::string text_;
    int n_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        int line = 1, col = 1;
        for (size_t k = 0; k < pos_ && k < text_.size(); ++k) {
            if (text_[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(msg, line, col);
    }

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                       text_[pos_] == '\n' || text_[pos_] == '\r'))
            ++pos_;
    }
    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }
    bool accept(char c) {
        if (peek(c)) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    bool accept_dagger() {
        skip_ws();
        if (pos_ + 2 < text_.size() && static_cast<unsigned char>(text_[pos_]) == 0xE2 &&
            static_cast<unsigned char>(text_[pos_ + 1]) == 0x80 &&
            static_cast<unsigned char>(text_[pos_ + 2]) == 0xA0) {
            pos_ += 3;
            return true;
        }
        return false;
    }

    long parse_int() {
        skip_ws();
        bool neg = false;
        if (pos_ < text_.size() && text_[pos_] == '-') {
            neg = true;
            ++pos_;
        }
        if (pos_ >= text_.size() || !isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("expected integer");
        long v = 0;
        while (pos_ < text_.size() && isdigit(static_cast<unsigned char>(text_[pos_]))) {
            if (v > 100000000) fail("integer literal too large");
            v = v * 10 + (text_[pos_++] - '0');
        }
        return neg ? -v : v;
    }

    std::string parse_ident() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < text_.size() && isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected identifier");
        return text_.substr(start, pos_ - start);
    }

    int parse_index(int lo, int hi, const char* what) {
        long v = parse_int();
        if (v < lo || v > hi) fail(std::string(what) + " index out of range");
        return static_cast<int>(v);
    }

    std::vector<int> parse_set() {
        std::vector<int> out;
        out.push_back(parse_index(1, n_, "set"));
        while (accept(',')) out.push_back(parse_index(1, n_, "set"));
        return out;
    }

    UqWord parse_word() {
        UqWord w;
        w.push_back(parse_letter());
        while (true) {
            size_t save = pos_;
            if (!accept('*')) break;
            skip_ws();
            if (pos_ < text_.size() && isalpha(static_cast<unsigned char>(text_[pos_]))) {
                w.push_back(parse_letter());
            } else {
                pos_ = save;
                break;
            }
        }
        return w;
    }

    UqLetter parse_letter() {
        std::string id = parse_ident();
        UqKind kind;
        if (id == "K") kind = UqKind::K;
        else if (id == "Kinv") kind = UqKind::Kinv;
        else if (id == "E") kind = UqKind::E;
        else if (id == "F") kind = UqKind::F;
        else fail("expected action letter K, Kinv, E or F");
        expect('[');
        int r = parse_index(1, n_ - 1, "letter");
        expect(']');
        return UqLetter{kind, r};
    }

    ExprPtr parse_expr() {
        ExprPtr e = parse_term();
        while (true) {
            if (accept('+')) {
                auto node = std::make_shared<Expr>(Expr::Kind::Add);
                node->a = e;
                node->b = parse_term();
                e = node;
            } else if (peek('-')) {
                ++pos_;
                auto node = std::make_shared<Expr>(Expr::Kind::Sub);
                node->a = e;
                node->b = parse_term();
                e = node;
            } else {
                break;
            }
        }
        return e;
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_factor();
        while (true) {
            if (accept('*')) {
                auto node = std::make_shared<Expr>(Expr::Kind::Mul);
                node->a = e;
                node->b = parse_factor();
                e = node;
            } else if (accept('/')) {
                auto node = std::make_shared<Expr>(Expr::Kind::Div);
                node->a = e;
                node->b = parse_factor();
                e = node;
            } else {
                break;
            }
        }
        return e;
    }

    ExprPtr parse_factor() {
        ExprPtr e = parse_atom();
        if (accept('^')) {
            auto node = std::make_shared<Expr>(Expr::Kind::Pow);
            node->a = e;
            node->ival = parse_int();
            e = node;
        }
        if (accept_dagger()) {
            auto node = std::make_shared<Expr>(Expr::Kind::Star);
            node->a = e;
            e = node;
        }
        return e;
    }

    ExprPtr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            ExprPtr e = parse_expr();
            expect(')');
            return e;
        }
        if (isdigit(static_cast<unsigned char>(c))) {
            auto node = std::make_shared<Expr>(Expr::Kind::Int);
            node->ival = parse_int();
            return node;
        }
        if (c == '-') {
            // unary minus on an atom: parse as 0 - atom
            ++pos_;
            auto node = std::make_shared<Expr>(Expr::Kind::Sub);
            auto zero = std::make_shared<Expr>(Expr::Kind::Int);
            zero->ival = 0;
            node->a = zero;
            node->b = parse_factor();
            return node;
        }
        if (!isalpha(static_cast<unsigned char>(c))) fail("unexpected character");
        std::string id = parse_ident();
        if (id == "q") return std::make_shared<Expr>(Expr::Kind::Q);
        if (id == "s") return std::make_shared<Expr>(Expr::Kind::S);
        if (id == "act") {
            expect('(');
            auto node = std::make_shared<Expr>(Expr::Kind::Act);
            node->word = parse_word();
            expect(';');
            node->a = parse_expr();
            expect(')');
            return node;
        }
        if (id == "u") {
            auto node = std::make_shared<Expr>(Expr::Kind::Gen);
            expect('[');
            node->i = parse_index(1, n_, "generator");
            expect(',');
            node->j = parse_index(1, n_, "generator");
            expect(']');
            return node;
        }
        if (id == "D") {
            auto node = std::make_shared<Expr>(Expr::Kind::Minor);
            expect('[');
            node->I = parse_set();
            expect(';');
            node->J = parse_set();
            expect(']');
            return node;
        }
        Expr::Kind kind;
        if (id == "z") kind = Expr::Kind::Z;
        else if (id == "zs") kind = Expr::Kind::Zs;
        else if (id == "x") kind = Expr::Kind::X;
        else if (id == "y") kind = Expr::Kind::Y;
        else fail("unknown identifier '" + id + "'");
        auto node = std::make_shared<Expr>(kind);
        expect('[');
        node->i = parse_index(1, n_, "sphere");
        expect(']');
        return node;
    }
};

inline ExprPtr parse_expr(const std::string& text, int rank) {
    return Parser(text, rank).parse();
}

// ---- evaluation --------------------------------------------------------------

struct EvalError : std::runtime_error {
    explicit EvalError(const std::string& m) : std::runtime_error(m) {}
};

using Value = std::variant<ScalarQ, NCPoly>;

inline NCPoly value_poly(const Value& v, const AlgebraContext& ctx) {
    if (std::holds_alternative<NCPoly>(v)) return std::get<NCPoly>(v);
    return NCPoly::scalar(ctx.rank(), std::get<ScalarQ>(v));
}

// a polynomial that is a multiple of the unit collapses back to a scalar
inline bool value_scalar(const Value& v, ScalarQ& out) {
    if (std::holds_alternative<ScalarQ>(v)) {
        out = std::get<ScalarQ>(v);
        return true;
    }
    const NCPoly& p = std::get<NCPoly>(v);
    if (p.is_zero()) {
        out = ScalarQ(0);
        return true;
    }
    if (p.terms.size() == 1 && p.terms.begin()->first.empty()) {
        out = p.terms.begin()->second;
        return true;
    }
    return false;
}

inline Value eval(const ExprPtr& e, const AlgebraContext& ctx) {
    switch (e->kind) {
        case Expr::Kind::Int: return ScalarQ(Rat(e->ival));
        case Expr::Kind::Q: return ScalarQ::q_pow(1);
        case Expr::Kind::S: return ScalarQ::s_pow(1);
        case Expr::Kind::Gen: return ctx.gen(e->i, e->j);
        case Expr::Kind::Z: return ctx.z(e->i);
        case Expr::Kind::Zs: return ctx.z_star(e->i);
        case Expr::Kind::X: return ctx.x_elem(e->i);
        case Expr::Kind::Y: return ctx.y_elem(e->i);
        case Expr::Kind::Minor: return ctx.quantum_minor(e->I, e->J);
        case Expr::Kind::Act: return act_d(ctx, e->word, value_poly(eval(e->a, ctx), ctx));
        case Expr::Kind::Star: {
            Value v = eval(e->a, ctx);
            ScalarQ s;
            if (value_scalar(v, s)) return s;  // real scalars are self-adjoint
            return ctx.star(std::get<NCPoly>(v));
        }
        case Expr::Kind::Add:
        case Expr::Kind::Sub: {
            Value va = eval(e->a, ctx), vb = eval(e->b, ctx);
            ScalarQ sa, sb;
            if (value_scalar(va, sa) && value_scalar(vb, sb))
                return e->kind == Expr::Kind::Add ? sa + sb : sa - sb;
            NCPoly pa = value_poly(va, ctx), pb = value_poly(vb, ctx);
            return ctx.reduce(e->kind == Expr::Kind::Add ? pa + pb : pa - pb);
        }
        case Expr::Kind::Mul: {
            Value va = eval(e->a, ctx), vb = eval(e->b, ctx);
            ScalarQ sa, sb;
            if (value_scalar(va, sa) && value_scalar(vb, sb)) return sa * sb;
            return ctx.mul(value_poly(va, ctx), value_poly(vb, ctx));
        }
        case Expr::Kind::Div: {
            Value va = eval(e->a, ctx), vb = eval(e->b, ctx);
            ScalarQ sb;
            if (!value_scalar(vb, sb)) throw EvalError("division requires a scalar divisor");
            if (sb.is_zero()) throw EvalError("division by zero");
            ScalarQ sa;
            if (value_scalar(va, sa)) return sa / sb;
            return sb.inverse() * std::get<NCPoly>(va);
        }
        case Expr::Kind::Pow: {
            Value va = eval(e->a, ctx);
            ScalarQ sa;
            if (value_scalar(va, sa)) {
                if (e->ival >= 0) {
                    ScalarQ acc(1);
                    for (long k = 0; k < e->ival; ++k) acc *= sa;
                    return acc;
                }
                if (sa.is_zero()) throw EvalError("negative power of zero");
                ScalarQ acc(1);
                for (long k = 0; k < -e->ival; ++k) acc *= sa;
                return acc.inverse();
            }
            if (e->ival < 0) throw EvalError("negative power of a non-scalar element");
            return ctx.pow(std::get<NCPoly>(va), static_cast<int>(e->ival));
        }
    }
    throw EvalError("malformed expression tree");
}

// ---- canonical printing --------------------------------------------------------

namespace detail {
inline int precedence(Expr::Kind k) {
    switch (k) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 1;
        case Expr::Kind::Mul:
        case Expr::Kind::Div: return 2;
        case Expr::Kind::Pow:
        case Expr::Kind::Star: return 3;
        default: return 4;
    }
}
}  // namespace detail

inline std::string print_expr(const ExprPtr& e) {
    auto wrap = [&](const ExprPtr& child, int min_prec) {
        std::string s = print_expr(child);
        if (detail::precedence(child->kind) < min_prec) return "(" + s + ")";
        return s;
    };
    switch (e->kind) {
        case Expr::Kind::Int: return std::to_string(e->ival);
        case Expr::Kind::Q: return "q";
        case Expr::Kind::S: return "s";
        case Expr::Kind::Gen:
            return "u[" + std::to_string(e->i) + "," + std::to_string(e->j) + "]";
        case Expr::Kind::Z: return "z[" + std::to_string(e->i) + "]";
        case Expr::Kind::Zs: return "zs[" + std::to_string(e->i) + "]";
        case Expr::Kind::X: return "x[" + std::to_string(e->i) + "]";
        case Expr::Kind::Y: return "y[" + std::to_string(e->i) + "]";
        case Expr::Kind::Minor: {
            std::string s = "D[";
            for (size_t k = 0; k < e->I.size(); ++k)
                s += (k ? "," : "") + std::to_string(e->I[k]);
            s += ";";
            for (size_t k = 0; k < e->J.size(); ++k)
                s += (k ? "," : "") + std::to_string(e->J[k]);
            return s + "]";
        }
        case Expr::Kind::Act: {
            std::string s = "act(";
            for (size_t k = 0; k < e->word.size(); ++k) {
                if (k) s += "*";
                switch (e->word[k].kind) {
                    case UqKind::E: s += "E"; break;
                    case UqKind::F: s += "F"; break;
                    case UqKind::K: s += "K"; break;
                    case UqKind::Kinv: s += "Kinv"; break;
                }
                s += "[" + std::to_string(e->word[k].idx) + "]";
            }
            return s + "; " + print_expr(e->a) + ")";
        }
        case Expr::Kind::Add: return wrap(e->a, 1) + " + " + wrap(e->b, 2);
        case Expr::Kind::Sub: return wrap(e->a, 1) + " - " + wrap(e->b, 2);
        case Expr::Kind::Mul: return wrap(e->a, 2) + "*" + wrap(e->b, 3);
        case Expr::Kind::Div: return wrap(e->a, 2) + "/" + wrap(e->b, 4);
        case Expr::Kind::Pow: return wrap(e->a, 4) + "^" + std::to_string(e->ival);
        case Expr::Kind::Star: return wrap(e->a, 4) + "\xE2\x80\xA0";
    }
    return "?";
}

}  // namespace qflag
