#include <aspcomp/parser.hpp>

#include <aspcomp/errors.hpp>
#include <aspcomp/grounder.hpp>

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <utility>

namespace aspcomp::asp {
namespace {

enum class Tok {
    ident,      // lowercase-led name
    variable,   // uppercase- or underscore-led name
    integer,
    kw_not,
    agg_count,
    agg_sum,
    agg_min,
    agg_max,
    implied_by, // :-
    weak_head,  // :~
    dot,
    comma,
    semicolon,
    colon,
    lparen,
    rparen,
    lbrace,
    rbrace,
    lbracket,
    rbracket,
    at,
    bar,
    question,
    cmp_eq,
    cmp_neq,
    cmp_lt,
    cmp_leq,
    cmp_gt,
    cmp_geq,
    end,
};

const char* token_name(Tok t) {
    switch (t) {
        case Tok::ident     : return "identifier";
        case Tok::variable  : return "variable";
        case Tok::integer   : return "integer";
        case Tok::kw_not    : return "'not'";
        case Tok::agg_count : return "#count";
        case Tok::agg_sum   : return "#sum";
        case Tok::agg_min   : return "#min";
        case Tok::agg_max   : return "#max";
        case Tok::implied_by: return "':-'";
        case Tok::weak_head : return "':~'";
        case Tok::dot       : return "'.'";
        case Tok::comma     : return "','";
        case Tok::semicolon : return "';'";
        case Tok::colon     : return "':'";
        case Tok::lparen    : return "'('";
        case Tok::rparen    : return "')'";
        case Tok::lbrace    : return "'{'";
        case Tok::rbrace    : return "'}'";
        case Tok::lbracket  : return "'['";
        case Tok::rbracket  : return "']'";
        case Tok::at        : return "'@'";
        case Tok::bar       : return "'|'";
        case Tok::question  : return "'?'";
        case Tok::cmp_eq    : return "'='";
        case Tok::cmp_neq   : return "'!='";
        case Tok::cmp_lt    : return "'<'";
        case Tok::cmp_leq   : return "'<='";
        case Tok::cmp_gt    : return "'>'";
        case Tok::cmp_geq   : return "'>='";
        case Tok::end       : return "end of input";
    }
    return "?";
}

struct Token {
    Tok kind = Tok::end;
    std::string text;
    std::int64_t value = 0;
    int line = 1;
    int column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_trivia();
        Token t;
        t.line = line_;
        t.column = column_;
        if (pos_ >= text_.size()) {
            return t;
        }
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || (c == '-' && pos_ + 1 < text_.size() &&
                std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
            return lex_integer(t);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            return lex_name(t);
        }
        if (c == '#') {
            return lex_directive(t);
        }
        return lex_punct(t);
    }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_trivia() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '%') {
                while (pos_ < text_.size() && text_[pos_] != '\n') {
                    advance();
                }
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    Token lex_integer(Token t) {
        std::string digits;
        if (text_[pos_] == '-') {
            digits += '-';
            advance();
        }
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            digits += text_[pos_];
            advance();
        }
        t.kind = Tok::integer;
        t.text = digits;
        try {
            t.value = std::stoll(digits);
        } catch (const std::out_of_range&) {
            throw SyntaxError(t.line, t.column, "64-bit integer", "integer literal out of range: " + digits);
        }
        return t;
    }

    Token lex_name(Token t) {
        std::string name;
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
                name += c;
                advance();
            } else {
                break;
            }
        }
        if (name == "not") {
            t.kind = Tok::kw_not;
        } else if (std::isupper(static_cast<unsigned char>(name[0])) || name[0] == '_') {
            t.kind = Tok::variable;
        } else {
            t.kind = Tok::ident;
        }
        t.text = std::move(name);
        return t;
    }

    Token lex_directive(Token t) {
        advance(); // '#'
        std::string name;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
            name += text_[pos_];
            advance();
        }
        if (name == "count") {
            t.kind = Tok::agg_count;
        } else if (name == "sum") {
            t.kind = Tok::agg_sum;
        } else if (name == "min") {
            t.kind = Tok::agg_min;
        } else if (name == "max") {
            t.kind = Tok::agg_max;
        } else {
            throw SyntaxError(t.line, t.column, "#count, #sum, #min, #max",
                              "unknown directive: #" + name);
        }
        t.text = "#" + name;
        return t;
    }

    Token lex_punct(Token t) {
        const char c = text_[pos_];
        const char c2 = pos_ + 1 < text_.size() ? text_[pos_ + 1] : '\0';
        auto two = [&](Tok k) {
            advance();
            advance();
            t.kind = k;
            return t;
        };
        auto one = [&](Tok k) {
            advance();
            t.kind = k;
            return t;
        };
        switch (c) {
            case ':':
                if (c2 == '-') return two(Tok::implied_by);
                if (c2 == '~') return two(Tok::weak_head);
                return one(Tok::colon);
            case '!':
                if (c2 == '=') return two(Tok::cmp_neq);
                break;
            case '<': return c2 == '=' ? two(Tok::cmp_leq) : one(Tok::cmp_lt);
            case '>': return c2 == '=' ? two(Tok::cmp_geq) : one(Tok::cmp_gt);
            case '=': return one(Tok::cmp_eq);
            case '.': return one(Tok::dot);
            case ',': return one(Tok::comma);
            case ';': return one(Tok::semicolon);
            case '(': return one(Tok::lparen);
            case ')': return one(Tok::rparen);
            case '{': return one(Tok::lbrace);
            case '}': return one(Tok::rbrace);
            case '[': return one(Tok::lbracket);
            case ']': return one(Tok::rbracket);
            case '@': return one(Tok::at);
            case '|': return one(Tok::bar);
            case '?': return one(Tok::question);
            default: break;
        }
        throw SyntaxError(t.line, t.column, "token", std::string("stray character '") + c + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

std::optional<BuiltinOp> comparison_op(Tok t) {
    switch (t) {
        case Tok::cmp_eq : return BuiltinOp::eq;
        case Tok::cmp_neq: return BuiltinOp::neq;
        case Tok::cmp_lt : return BuiltinOp::lt;
        case Tok::cmp_leq: return BuiltinOp::leq;
        case Tok::cmp_gt : return BuiltinOp::gt;
        case Tok::cmp_geq: return BuiltinOp::geq;
        default          : return std::nullopt;
    }
}

std::optional<AggregateFunction> aggregate_function(Tok t) {
    switch (t) {
        case Tok::agg_count: return AggregateFunction::count;
        case Tok::agg_sum  : return AggregateFunction::sum;
        case Tok::agg_min  : return AggregateFunction::min;
        case Tok::agg_max  : return AggregateFunction::max;
        default            : return std::nullopt;
    }
}

class Parser {
public:
    explicit Parser(std::string_view text) : lexer_(text) {
        cur_ = lexer_.next();
        ahead_ = lexer_.next();
    }

    std::vector<Atom> parse_atoms() {
        std::vector<Atom> atoms;
        while (cur_.kind != Tok::end) {
            if (accept(Tok::dot)) {
                continue;
            }
            atoms.push_back(parse_atom());
            if (!atoms.back().is_ground()) {
                fail("ground atom", to_string(atoms.back()));
            }
        }
        return atoms;
    }

    Program parse() {
        Program program;
        while (cur_.kind != Tok::end) {
            if (cur_.kind == Tok::weak_head) {
                program.weak_constraints.push_back(parse_weak_constraint());
            } else if (is_query_start()) {
                if (program.query) {
                    fail("at most one query directive", "second query directive");
                }
                program.query = parse_atom();
                expect(Tok::question, "'?'");
            } else {
                program.rules.push_back(parse_rule());
            }
        }
        check_safety(program);
        return program;
    }

private:
    [[noreturn]] void fail(const std::string& expected, const std::string& got) {
        throw SyntaxError(cur_.line, cur_.column, expected, "expected " + expected + ", got " + got);
    }

    [[noreturn]] void fail_here(const std::string& expected) {
        fail(expected, cur_.kind == Tok::end ? "end of input"
             : cur_.text.empty()             ? token_name(cur_.kind)
                                             : "'" + cur_.text + "'");
    }

    void bump() {
        cur_ = ahead_;
        ahead_ = lexer_.next();
    }

    void expect(Tok kind, const std::string& expected) {
        if (cur_.kind != kind) {
            fail_here(expected);
        }
        bump();
    }

    bool accept(Tok kind) {
        if (cur_.kind == kind) {
            bump();
            return true;
        }
        return false;
    }

    // A query is an atom followed by '?': look past the (possibly
    // parenthesised) atom without consuming it.
    bool is_query_start() {
        if (cur_.kind != Tok::ident) {
            return false;
        }
        if (ahead_.kind == Tok::question) {
            return true;
        }
        if (ahead_.kind != Tok::lparen) {
            return false;
        }
        // The mark ends a statement like '.' does, so scanning to the matching
        // close paren stays within this statement.
        Lexer probe = lexer_;
        Token t = ahead_;
        int depth = 0;
        while (t.kind != Tok::end && t.kind != Tok::dot) {
            if (t.kind == Tok::lparen) {
                ++depth;
            } else if (t.kind == Tok::rparen) {
                if (--depth == 0) {
                    return probe.next().kind == Tok::question;
                }
            }
            t = probe.next();
        }
        return false;
    }

    Term parse_term() {
        if (cur_.kind == Tok::integer) {
            Term t = Term::integer(cur_.value);
            bump();
            return t;
        }
        if (cur_.kind == Tok::variable) {
            Term t = Term::variable(cur_.text);
            bump();
            return t;
        }
        if (cur_.kind == Tok::ident) {
            std::string name = cur_.text;
            bump();
            if (accept(Tok::lparen)) {
                std::vector<Term> args;
                args.push_back(parse_term());
                while (accept(Tok::comma)) {
                    args.push_back(parse_term());
                }
                expect(Tok::rparen, "')'");
                return Term::function(std::move(name), std::move(args));
            }
            return Term::constant(std::move(name));
        }
        fail_here("term");
    }

    Atom parse_atom() {
        if (cur_.kind != Tok::ident) {
            fail_here("predicate name");
        }
        Atom a;
        a.predicate = cur_.text;
        bump();
        if (accept(Tok::lparen)) {
            a.args.push_back(parse_term());
            while (accept(Tok::comma)) {
                a.args.push_back(parse_term());
            }
            expect(Tok::rparen, "')'");
        }
        return a;
    }

    Literal parse_literal() {
        bool negated = accept(Tok::kw_not);
        Term lhs = parse_term();
        if (auto op = comparison_op(cur_.kind)) {
            if (negated) {
                fail_here("classical atom after 'not'");
            }
            bump();
            Term rhs = parse_term();
            return BuiltinLiteral{std::move(lhs), *op, std::move(rhs)};
        }
        return ClassicalLiteral{term_to_atom(std::move(lhs)), negated};
    }

    Atom term_to_atom(Term t) {
        if (t.kind == Term::Kind::constant) {
            return Atom{std::move(t.symbol), {}};
        }
        if (t.kind == Term::Kind::function) {
            return Atom{std::move(t.symbol), std::move(t.args)};
        }
        fail_here("atom");
    }

    std::vector<Literal> parse_condition() {
        std::vector<Literal> lits;
        lits.push_back(parse_literal());
        while (accept(Tok::comma)) {
            lits.push_back(parse_literal());
        }
        return lits;
    }

    AggregateLiteral parse_aggregate(bool negated, std::optional<AggregateGuard> left) {
        AggregateLiteral agg;
        agg.negated = negated;
        agg.left = std::move(left);
        agg.function = *aggregate_function(cur_.kind);
        bump();
        expect(Tok::lbrace, "'{'");
        if (cur_.kind != Tok::rbrace) {
            agg.elements.push_back(parse_aggregate_element());
            while (accept(Tok::semicolon)) {
                agg.elements.push_back(parse_aggregate_element());
            }
        }
        expect(Tok::rbrace, "'}'");
        if (auto op = comparison_op(cur_.kind)) {
            bump();
            agg.right = AggregateGuard{*op, parse_term()};
        }
        if (!agg.left && !agg.right) {
            fail_here("aggregate guard ('=', '!=', '<', '<=', '>', '>=')");
        }
        return agg;
    }

    AggregateElement parse_aggregate_element() {
        AggregateElement e;
        e.terms.push_back(parse_term());
        while (accept(Tok::comma)) {
            e.terms.push_back(parse_term());
        }
        if (accept(Tok::colon)) {
            e.condition = parse_condition();
        }
        return e;
    }

    BodyLiteral parse_body_literal() {
        const bool negated = accept(Tok::kw_not);
        if (aggregate_function(cur_.kind)) {
            return parse_aggregate(negated, std::nullopt);
        }
        Term lhs = parse_term();
        if (auto op = comparison_op(cur_.kind)) {
            // Either a left aggregate guard or a builtin comparison,
            // disambiguated by what follows the operator.
            if (aggregate_function(ahead_.kind)) {
                bump();
                return parse_aggregate(negated, AggregateGuard{*op, std::move(lhs)});
            }
            if (negated) {
                fail_here("classical atom after 'not'");
            }
            bump();
            Term rhs = parse_term();
            return Literal{BuiltinLiteral{std::move(lhs), *op, std::move(rhs)}};
        }
        return Literal{ClassicalLiteral{term_to_atom(std::move(lhs)), negated}};
    }

    std::vector<BodyLiteral> parse_body() {
        std::vector<BodyLiteral> body;
        body.push_back(parse_body_literal());
        while (accept(Tok::comma)) {
            body.push_back(parse_body_literal());
        }
        return body;
    }

    ChoiceElement parse_choice_element() {
        ChoiceElement e;
        e.atom = parse_atom();
        if (accept(Tok::colon)) {
            e.condition = parse_condition();
        }
        return e;
    }

    Head parse_choice_head() {
        ChoiceHead choice;
        expect(Tok::lbrace, "'{'");
        if (cur_.kind != Tok::rbrace) {
            choice.elements.push_back(parse_choice_element());
            while (accept(Tok::semicolon)) {
                choice.elements.push_back(parse_choice_element());
            }
        }
        expect(Tok::rbrace, "'}'");
        if (auto op = comparison_op(cur_.kind)) {
            if (*op != BuiltinOp::eq && *op != BuiltinOp::leq && *op != BuiltinOp::geq) {
                fail_here("choice bound ('=', '<=', '>=')");
            }
            bump();
            if (cur_.kind != Tok::integer) {
                fail_here("integer bound");
            }
            choice.bound = ChoiceBound{*op, cur_.value};
            bump();
        }
        return choice;
    }

    Head parse_head() {
        if (cur_.kind == Tok::lbrace) {
            return parse_choice_head();
        }
        std::vector<Atom> atoms;
        atoms.push_back(parse_atom());
        while (accept(Tok::bar)) {
            atoms.push_back(parse_atom());
        }
        if (atoms.size() == 1) {
            return NormalHead{std::move(atoms.front())};
        }
        return DisjunctiveHead{std::move(atoms)};
    }

    Rule parse_rule() {
        Rule rule;
        if (accept(Tok::implied_by)) {
            rule.head = ConstraintHead{};
            rule.body = parse_body(); // at least one literal, so never empty
            expect(Tok::dot, "'.'");
            return rule;
        }
        rule.head = parse_head();
        if (accept(Tok::implied_by)) {
            rule.body = parse_body();
        }
        expect(Tok::dot, "'.'");
        return rule;
    }

    WeakConstraint parse_weak_constraint() {
        expect(Tok::weak_head, "':~'");
        WeakConstraint w;
        if (cur_.kind != Tok::dot) {
            w.body = parse_condition();
        }
        expect(Tok::dot, "'.'");
        expect(Tok::lbracket, "'['");
        w.weight = parse_term();
        if (accept(Tok::at)) {
            w.level = parse_term();
        }
        while (accept(Tok::comma)) {
            w.tuple.push_back(parse_term());
        }
        expect(Tok::rbracket, "']'");
        return w;
    }

    Lexer lexer_;
    Token cur_;
    Token ahead_;
};

} // namespace

std::vector<Atom> parse_atom_list(std::string_view text) {
    return Parser(text).parse_atoms();
}

Program parse_program(std::string_view text, const std::string& origin) {
    try {
        return Parser(text).parse();
    } catch (SyntaxError& e) {
        if (origin != "<string>") {
            throw SyntaxError(e.line, e.column, e.expected, origin + ": " + e.what());
        }
        throw;
    }
}

Program parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open program file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_program(buf.str(), path);
}

} // namespace aspcomp::asp
