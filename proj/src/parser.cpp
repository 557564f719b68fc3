#include "monaut/parser.hpp"

#include <cctype>
#include <charconv>
#include <string>
#include <vector>

#include "monaut/errors.hpp"

namespace monaut {
namespace {

enum class Tok {
    Ident, Number, LParen, RParen, Dot, And, Or, Not, Iff, Eq, Less, Plus, End
};

struct Token {
    Tok kind;
    std::string_view text;
    std::size_t pos;
};

bool reserved(std::string_view word) {
    return word == "forall" || word == "exists" || word == "true" || word == "false";
}

std::vector<Token> scan(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const unsigned char c = static_cast<unsigned char>(text[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        if (std::isalpha(c)) {
            std::size_t end = i + 1;
            while (end < text.size()) {
                const unsigned char u = static_cast<unsigned char>(text[end]);
                if (!std::isalnum(u) && text[end] != '_') break;
                ++end;
            }
            out.push_back({Tok::Ident, text.substr(i, end - i), i});
            i = end;
            continue;
        }
        if (std::isdigit(c)) {
            std::size_t end = i + 1;
            while (end < text.size() &&
                   std::isdigit(static_cast<unsigned char>(text[end]))) {
                ++end;
            }
            out.push_back({Tok::Number, text.substr(i, end - i), i});
            i = end;
            continue;
        }
        if (text.compare(i, 3, "<->") == 0) {
            out.push_back({Tok::Iff, text.substr(i, 3), i});
            i += 3;
            continue;
        }
        Tok kind;
        switch (text[i]) {
            case '(': kind = Tok::LParen; break;
            case ')': kind = Tok::RParen; break;
            case '.': kind = Tok::Dot; break;
            case '&': kind = Tok::And; break;
            case '|': kind = Tok::Or; break;
            case '!': kind = Tok::Not; break;
            case '=': kind = Tok::Eq; break;
            case '<': kind = Tok::Less; break;
            case '+': kind = Tok::Plus; break;
            default:
                throw SyntaxError(i, std::string("unexpected character '") +
                                         text[i] + "'");
        }
        out.push_back({kind, text.substr(i, 1), i});
        ++i;
    }
    out.push_back({Tok::End, std::string_view(), text.size()});
    return out;
}

class Parser {
public:
    Parser(std::vector<Token> tokens, const ParseOptions& options)
        : tokens_(std::move(tokens)), options_(options) {}

    FormulaRef run() {
        FormulaRef f = formula();
        if (peek().kind != Tok::End) fail(peek(), "unexpected trailing input");
        return f;
    }

private:
    std::vector<Token> tokens_;
    const ParseOptions& options_;
    std::size_t at_ = 0;

    const Token& peek() const { return tokens_[at_]; }

    Token take() {
        Token t = tokens_[at_];
        if (t.kind != Tok::End) ++at_;
        return t;
    }

    [[noreturn]] static void fail(const Token& t, const std::string& message) {
        throw SyntaxError(t.pos, message);
    }

    bool at_keyword(std::string_view word) const {
        return peek().kind == Tok::Ident && peek().text == word;
    }

    void expect(Tok kind, const char* what) {
        if (peek().kind != kind) fail(peek(), what);
        take();
    }

    std::string variable(VariableKind kind, const char* what) {
        const Token& t = peek();
        if (t.kind != Tok::Ident || reserved(t.text) ||
            !is_variable_name(t.text, kind)) {
            fail(t, what);
        }
        return std::string(take().text);
    }

    FormulaRef formula() {
        if (at_keyword("forall") || at_keyword("exists")) {
            const bool universal = peek().text == "forall";
            take();
            std::string name = variable(VariableKind::FirstOrder,
                                        "expected a first-order variable to bind");
            expect(Tok::Dot, "expected '.' after the quantified variable");
            FormulaRef body = formula();
            return universal ? forall(std::move(name), std::move(body))
                             : exists(std::move(name), std::move(body));
        }
        FormulaRef f = disjunction();
        while (peek().kind == Tok::Iff) {
            take();
            f = iff(std::move(f), disjunction());
        }
        return f;
    }

    FormulaRef disjunction() {
        FormulaRef f = conjunction();
        while (peek().kind == Tok::Or) {
            take();
            f = disj(std::move(f), conjunction());
        }
        return f;
    }

    FormulaRef conjunction() {
        FormulaRef f = unary();
        while (peek().kind == Tok::And) {
            take();
            f = conj(std::move(f), unary());
        }
        return f;
    }

    FormulaRef unary() {
        const Token& t = peek();
        if (t.kind == Tok::Not) {
            take();
            return neg(unary());
        }
        if (t.kind == Tok::LParen) {
            take();
            FormulaRef f = formula();
            expect(Tok::RParen, "expected ')'");
            return f;
        }
        if (t.kind == Tok::Ident) {
            if (t.text == "forall" || t.text == "exists") return formula();
            if (t.text == "true") {
                take();
                return truth();
            }
            if (t.text == "false") {
                take();
                return falsity();
            }
            return atom();
        }
        fail(t, "expected a formula");
    }

    FormulaRef atom() {
        Token name = take();
        if (is_variable_name(name.text, VariableKind::SecondOrder)) {
            return second_order_atom(std::string(name.text));
        }
        std::string left(name.text);
        Token op = take();
        if (op.kind == Tok::LParen) {
            fail(op, "'" + left + "' is first-order and cannot be applied");
        }
        if (op.kind == Tok::Eq) {
            std::string right = variable(VariableKind::FirstOrder,
                                         "expected a first-order variable after '='");
            if (peek().kind != Tok::Plus) {
                return eq_fo(std::move(left), std::move(right));
            }
            take();
            return offset_atom(std::move(left), std::move(right));
        }
        if (op.kind == Tok::Less) {
            std::string right = variable(VariableKind::FirstOrder,
                                         "expected a first-order variable after '<'");
            return less(std::move(left), std::move(right));
        }
        fail(op, "expected '=' or '<' after a first-order variable");
    }

    FormulaRef second_order_atom(std::string name) {
        Token op = take();
        if (op.kind == Tok::LParen) {
            std::string element = variable(VariableKind::FirstOrder,
                                           "expected a first-order argument");
            expect(Tok::RParen, "expected ')' after the membership argument");
            return member(std::move(name), std::move(element));
        }
        if (op.kind == Tok::Eq) {
            std::string right = variable(VariableKind::SecondOrder,
                                         "expected a second-order variable after '='");
            return eq_so(std::move(name), std::move(right));
        }
        fail(op, "expected '(' or '=' after a second-order variable");
    }

    FormulaRef offset_atom(std::string target, std::string base) {
        const Token& num = peek();
        if (num.kind != Tok::Number) fail(num, "expected a constant after '+'");
        std::uint64_t value = 0;
        const auto [ptr, ec] =
            std::from_chars(num.text.data(), num.text.data() + num.text.size(), value);
        if (ec != std::errc() || ptr != num.text.data() + num.text.size()) {
            fail(num, "offset constant is out of range");
        }
        if (value == 0 || value > options_.max_offset) {
            fail(num, "offset must be between 1 and " +
                          std::to_string(options_.max_offset));
        }
        take();
        return offset_eq(std::move(target), std::move(base), value);
    }
};

}  // namespace

FormulaRef parse_formula(std::string_view text, const ParseOptions& options) {
    Parser parser(scan(text), options);
    FormulaRef f = parser.run();
    check_scopes(*f);
    return f;
}

}  // namespace monaut
