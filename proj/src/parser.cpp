#include "parser.hpp"

#include <cctype>
#include <charconv>
#include <optional>

namespace evsym {

namespace {

std::optional<int> u_index(std::string_view name) {
    if (name.empty() || name.front() != 'u') return std::nullopt;
    std::string_view rest = name.substr(1);
    if (rest.empty()) return 0;
    if (rest.front() == '_') rest.remove_prefix(1);
    if (rest.empty() || rest.size() > 2) return std::nullopt;
    for (char c : rest)
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    int value = 0;
    std::from_chars(rest.data(), rest.data() + rest.size(), value);
    if (value < 1 || rest.front() == '0') return std::nullopt;
    return value;
}

bool looks_like_u(std::string_view name) {
    if (name.size() < 2 || name.front() != 'u') return false;
    std::string_view rest = name.substr(1);
    if (rest.front() == '_') rest.remove_prefix(1);
    if (rest.empty()) return false;
    for (char c : rest)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

enum class Tok { Number, Name, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1;
    int column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_space();
        Token tok;
        tok.line = line_;
        tok.column = column_;
        if (pos_ >= src_.size()) return tok;
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            tok.kind = Tok::Number;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) tok.text += take();
            if (pos_ < src_.size() && src_[pos_] == '.')
                throw ParseError("decimal literals are not supported; use p/q", line_, column_);
            return tok;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            tok.kind = Tok::Name;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                tok.text += take();
            return tok;
        }
        tok.text = std::string(1, take());
        switch (c) {
            case '+': tok.kind = Tok::Plus; break;
            case '-': tok.kind = Tok::Minus; break;
            case '*': tok.kind = Tok::Star; break;
            case '/': tok.kind = Tok::Slash; break;
            case '^': tok.kind = Tok::Caret; break;
            case '(': tok.kind = Tok::LParen; break;
            case ')': tok.kind = Tok::RParen; break;
            default: throw ParseError("unexpected character '" + tok.text + "'", tok.line, tok.column);
        }
        return tok;
    }

private:
    char take() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }
    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) take();
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

struct Parsed {
    RawNode raw;
    DiffExpr value;
};

class Parser {
public:
    Parser(std::string_view src, const std::set<std::string>& constants) : lex_(src), constants_(constants) {
        advance();
    }

    Parsed parse_all() {
        Parsed e = expr();
        if (cur_.kind != Tok::End) fail_trailing();
        return e;
    }

private:
    void advance() { cur_ = lex_.next(); }

    [[noreturn]] void fail(const std::string& msg, const Token& at) { throw ParseError(msg, at.line, at.column); }

    [[noreturn]] void fail_trailing() {
        if (cur_.kind == Tok::Number || cur_.kind == Tok::Name || cur_.kind == Tok::LParen)
            fail("implicit multiplication is not allowed; use '*'", cur_);
        fail("unexpected '" + cur_.text + "'", cur_);
    }

    template <typename Fn>
    DiffExpr checked(const Token& at, Fn fn) {
        try {
            return fn();
        } catch (const DomainError& e) {
            fail(e.what(), at);
        }
    }

    Parsed expr() {
        Parsed acc = term();
        while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
            const bool plus = cur_.kind == Tok::Plus;
            advance();
            Parsed rhs = term();
            acc.raw = RawNode::binary(plus ? RawNode::Kind::Add : RawNode::Kind::Sub, std::move(acc.raw),
                                      std::move(rhs.raw));
            if (plus)
                acc.value += rhs.value;
            else
                acc.value -= rhs.value;
        }
        return acc;
    }

    Parsed term() {
        Parsed acc = unary();
        while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
            const Token op = cur_;
            advance();
            Parsed rhs = unary();
            if (op.kind == Tok::Star) {
                acc.value *= rhs.value;
                acc.raw = RawNode::binary(RawNode::Kind::Mul, std::move(acc.raw), std::move(rhs.raw));
            } else {
                if (rhs.value.is_zero()) fail("division by zero", op);
                acc.value = checked(op, [&] { return acc.value.divided_by(rhs.value); });
                acc.raw = RawNode::binary(RawNode::Kind::Div, std::move(acc.raw), std::move(rhs.raw));
            }
        }
        return acc;
    }

    Parsed unary() {
        if (cur_.kind == Tok::Minus) {
            advance();
            Parsed p = unary();
            return {RawNode::unary(RawNode::Kind::Neg, std::move(p.raw)), -p.value};
        }
        if (cur_.kind == Tok::Plus) {
            advance();
            return unary();
        }
        return power();
    }

    Parsed signed_power() {
        if (cur_.kind == Tok::Minus) {
            advance();
            Parsed p = signed_power();
            return {RawNode::unary(RawNode::Kind::Neg, std::move(p.raw)), -p.value};
        }
        if (cur_.kind == Tok::Plus) {
            advance();
            return signed_power();
        }
        return power();
    }

    Parsed power() {
        Parsed base = primary();
        if (cur_.kind != Tok::Caret) return base;
        advance();
        const Token at = cur_;
        Parsed ex = signed_power();
        auto r = as_rational(ex.value);
        if (ex.value.is_zero()) r = Rational(0);
        if (!r || r->get_den() != 1) fail("exponent must be an integer", at);
        if (!r->get_num().fits_sint_p() || abs(r->get_num()) > 10000) fail("exponent out of range", at);
        const int e = static_cast<int>(r->get_num().get_si());
        DiffExpr value = checked(at, [&] { return base.value.pow(e); });
        return {RawNode::binary(RawNode::Kind::Pow, std::move(base.raw), std::move(ex.raw)), std::move(value)};
    }

    Parsed primary() {
        const Token tok = cur_;
        switch (tok.kind) {
            case Tok::Number: {
                advance();
                Rational r(mpz_class(tok.text, 10));
                return {RawNode::num(r), DiffExpr(r)};
            }
            case Tok::Name: {
                advance();
                if (tok.text == "exp") {
                    if (cur_.kind != Tok::LParen) fail("expected '(' after exp", cur_);
                    advance();
                    const Token arg_at = cur_;
                    Parsed arg = expr();
                    expect_rparen();
                    DiffExpr value = checked(arg_at, [&] { return DiffExpr::exp(arg.value); });
                    return {RawNode::unary(RawNode::Kind::Exp, std::move(arg.raw)), std::move(value)};
                }
                Var v = resolve(tok);
                return {RawNode::sym(v), DiffExpr::var(v)};
            }
            case Tok::LParen: {
                advance();
                Parsed inner = expr();
                expect_rparen();
                return inner;
            }
            case Tok::End: fail("unexpected end of input", tok);
            default: fail("unexpected '" + tok.text + "'", tok);
        }
    }

    void expect_rparen() {
        if (cur_.kind == Tok::RParen) {
            advance();
            return;
        }
        if (cur_.kind == Tok::Number || cur_.kind == Tok::Name || cur_.kind == Tok::LParen)
            fail("implicit multiplication is not allowed; use '*'", cur_);
        fail("expected ')'", cur_);
    }

    Var resolve(const Token& tok) {
        const std::string& name = tok.text;
        if (name == "x") return Var::x();
        if (name == "t") return Var::t();
        if (auto i = u_index(name)) return Var::u(*i);
        if (looks_like_u(name)) fail("u index out of range in '" + name + "' (use u, u1 .. u99)", tok);
        if (constants_.count(name)) return Var::constant(name);
        fail("unknown identifier '" + name + "' (declare constants with --const)", tok);
    }

    Lexer lex_;
    const std::set<std::string>& constants_;
    Token cur_;
};

}  // namespace

bool is_reserved_name(std::string_view name) {
    return name == "x" || name == "t" || name == "exp" || looks_like_u(name) || name == "u";
}

void validate_constant_name(std::string_view name) {
    if (name.empty()) throw DomainError("empty constant name");
    if (!std::isalpha(static_cast<unsigned char>(name.front())))
        throw DomainError("constant name must start with a letter: " + std::string(name));
    for (char c : name)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            throw DomainError("invalid character in constant name: " + std::string(name));
    if (is_reserved_name(name)) throw DomainError("reserved name cannot be a constant: " + std::string(name));
}

RawNode parse_raw(std::string_view source, const std::set<std::string>& constants) {
    return Parser(source, constants).parse_all().raw;
}

DiffExpr parse(std::string_view source, const std::set<std::string>& constants) {
    for (const auto& c : constants) validate_constant_name(c);
    return Parser(source, constants).parse_all().value;
}

}  // namespace evsym
