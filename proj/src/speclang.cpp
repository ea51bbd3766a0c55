#include "safecoal/speclang.hpp"

#include <cctype>
#include <optional>
#include <set>

#include "safecoal/bisim.hpp"

namespace safecoal {

SpecError::SpecError(Kind k, SourcePos p, const std::string& message)
    : Error(std::to_string(p.line) + ":" + std::to_string(p.column) + ": " + message), kind(k), pos(p) {}

bool Regex::operator==(const Regex& other) const {
    return kind == other.kind && symbol == other.symbol && children == other.children;
}

namespace {

enum class Tok { ident, semi, bar, star, plus, question, lparen, rparen, end };

struct Token {
    Tok kind;
    std::string text;
    SourcePos pos;
};

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    SourcePos pos;
    std::size_t i = 0;
    auto advance = [&] {
        if (src[i] == '\n') {
            ++pos.line;
            pos.column = 1;
        } else {
            ++pos.column;
        }
        ++i;
    };
    while (i < src.size()) {
        const char c = src[i];
        if (c == '#') {
            while (i < src.size() && src[i] != '\n')
                advance();
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance();
            continue;
        }
        const SourcePos start = pos;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string ident;
            while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
                ident += src[i];
                advance();
            }
            out.push_back({Tok::ident, std::move(ident), start});
            continue;
        }
        Tok kind;
        switch (c) {
            case ';': kind = Tok::semi; break;
            case '|': kind = Tok::bar; break;
            case '*': kind = Tok::star; break;
            case '+': kind = Tok::plus; break;
            case '?': kind = Tok::question; break;
            case '(': kind = Tok::lparen; break;
            case ')': kind = Tok::rparen; break;
            default: {
                std::string shown = static_cast<unsigned char>(c) < 0x80 ? std::string(1, c) : "non-ASCII byte";
                throw SpecError(SpecError::Kind::lexical, start, "unexpected character '" + shown + "'");
            }
        }
        advance();
        out.push_back({kind, std::string(1, c), start});
    }
    out.push_back({Tok::end, "", pos});
    return out;
}

const char* describe(Tok t) {
    switch (t) {
        case Tok::ident: return "symbol";
        case Tok::semi: return "';'";
        case Tok::bar: return "'|'";
        case Tok::star: return "'*'";
        case Tok::plus: return "'+'";
        case Tok::question: return "'?'";
        case Tok::lparen: return "'('";
        case Tok::rparen: return "')'";
        case Tok::end: return "end of input";
    }
    return "token";
}

bool is_keyword(std::string_view s) { return s == "alphabet" || s == "violation"; }

class Parser {
  public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    ConstraintSpec spec(std::string name) {
        const Token& kw = peek();
        expect_keyword("alphabet");
        std::vector<std::string> symbols;
        std::set<std::string> seen;
        while (peek().kind == Tok::ident && !is_keyword(peek().text)) {
            const Token& t = take();
            if (!seen.insert(t.text).second)
                throw SpecError(SpecError::Kind::duplicate_symbol, t.pos, "duplicate alphabet symbol '" + t.text + "'");
            symbols.push_back(t.text);
        }
        if (symbols.empty())
            unexpected("alphabet symbol");
        if (symbols.size() < 2)
            throw SpecError(SpecError::Kind::alphabet_too_small, kw.pos,
                            "alphabet needs a minimum of two symbols, found " + std::to_string(symbols.size()));
        expect(Tok::semi);
        alphabet_.emplace(std::move(symbols));
        expect_keyword("violation");
        Regex pattern = alternation();
        expect(Tok::semi);
        if (peek().kind != Tok::end)
            unexpected("end of input");
        return {std::move(name), std::move(*alphabet_), std::move(pattern)};
    }

  private:
    const Token& peek() const { return tokens_[at_]; }
    const Token& take() { return tokens_[at_++]; }

    [[noreturn]] void unexpected(const std::string& wanted) const {
        const Token& t = peek();
        std::string found = t.kind == Tok::ident ? "'" + t.text + "'" : describe(t.kind);
        throw SpecError(SpecError::Kind::syntax, t.pos, "expected " + wanted + ", found " + found);
    }

    void expect(Tok kind) {
        if (peek().kind != kind)
            unexpected(describe(kind));
        take();
    }

    void expect_keyword(std::string_view kw) {
        if (peek().kind != Tok::ident || peek().text != kw)
            unexpected("'" + std::string(kw) + "'");
        take();
    }

    bool starts_atom() const {
        return (peek().kind == Tok::ident && !is_keyword(peek().text)) || peek().kind == Tok::lparen;
    }

    Regex alternation() {
        const SourcePos pos = peek().pos;
        std::vector<Regex> options{sequence()};
        while (peek().kind == Tok::bar) {
            take();
            options.push_back(sequence());
        }
        if (options.size() == 1)
            return std::move(options.front());
        return Regex::node(Regex::Kind::alternation, std::move(options), pos);
    }

    Regex sequence() {
        const SourcePos pos = peek().pos;
        if (!starts_atom())
            unexpected("symbol or '('");
        std::vector<Regex> items;
        while (starts_atom())
            items.push_back(repetition());
        if (items.size() == 1)
            return std::move(items.front());
        return Regex::node(Regex::Kind::concat, std::move(items), pos);
    }

    Regex repetition() {
        Regex base = atom();
        const SourcePos pos = base.pos;
        switch (peek().kind) {
            case Tok::star: take(); return Regex::node(Regex::Kind::star, {std::move(base)}, pos);
            case Tok::plus: take(); return Regex::node(Regex::Kind::plus, {std::move(base)}, pos);
            case Tok::question: take(); return Regex::node(Regex::Kind::optional, {std::move(base)}, pos);
            default: return base;
        }
    }

    Regex atom() {
        if (peek().kind == Tok::lparen) {
            const SourcePos pos = take().pos;
            Regex inner = alternation();
            expect(Tok::rparen);
            inner.pos = pos;
            return inner;
        }
        const Token& t = take();
        const auto n = alphabet_->find(t.text);
        if (!n)
            throw SpecError(SpecError::Kind::undeclared_symbol, t.pos, "undeclared symbol '" + t.text + "'");
        return Regex::literal(*n, t.pos);
    }

    std::vector<Token> tokens_;
    std::size_t at_ = 0;
    std::optional<Alphabet> alphabet_;
};

// binding strength: alternation < concatenation < postfix < symbol
int precedence(Regex::Kind k) {
    switch (k) {
        case Regex::Kind::alternation: return 0;
        case Regex::Kind::concat: return 1;
        case Regex::Kind::star:
        case Regex::Kind::plus:
        case Regex::Kind::optional: return 2;
        case Regex::Kind::symbol: return 3;
    }
    return 3;
}

void print(const Regex& r, const Alphabet& alphabet, int required, std::string& out) {
    const int own = precedence(r.kind);
    // a child of the same kind must be parenthesized so that the tree
    // shape survives reparsing
    const bool parens = own < required;
    if (parens)
        out += '(';
    switch (r.kind) {
        case Regex::Kind::symbol: out += alphabet[r.symbol]; break;
        case Regex::Kind::alternation:
            for (std::size_t i = 0; i < r.children.size(); ++i) {
                if (i)
                    out += " | ";
                print(r.children[i], alphabet, 1, out);
            }
            break;
        case Regex::Kind::concat:
            for (std::size_t i = 0; i < r.children.size(); ++i) {
                if (i)
                    out += ' ';
                print(r.children[i], alphabet, 2, out);
            }
            break;
        case Regex::Kind::star:
        case Regex::Kind::plus:
        case Regex::Kind::optional:
            print(r.children.front(), alphabet, 3, out);
            out += r.kind == Regex::Kind::star ? '*' : r.kind == Regex::Kind::plus ? '+' : '?';
            break;
    }
    if (parens)
        out += ')';
}

/// Glushkov position sets of a subexpression.
struct Positions {
    bool nullable = false;
    std::set<State> first;
    std::set<State> last;
};

class Glushkov {
  public:
    Positions visit(const Regex& r) {
        switch (r.kind) {
            case Regex::Kind::symbol: {
                const State p = static_cast<State>(symbols.size() + 1);
                symbols.push_back(r.symbol);
                follow.emplace_back();
                return {false, {p}, {p}};
            }
            case Regex::Kind::alternation: {
                Positions out;
                for (const Regex& c : r.children) {
                    Positions p = visit(c);
                    out.nullable = out.nullable || p.nullable;
                    out.first.insert(p.first.begin(), p.first.end());
                    out.last.insert(p.last.begin(), p.last.end());
                }
                return out;
            }
            case Regex::Kind::concat: {
                Positions out = visit(r.children.front());
                for (std::size_t i = 1; i < r.children.size(); ++i) {
                    Positions next = visit(r.children[i]);
                    link(out.last, next.first);
                    if (out.nullable)
                        out.first.insert(next.first.begin(), next.first.end());
                    if (next.nullable)
                        out.last.insert(next.last.begin(), next.last.end());
                    else
                        out.last = std::move(next.last);
                    out.nullable = out.nullable && next.nullable;
                }
                return out;
            }
            case Regex::Kind::star:
            case Regex::Kind::plus: {
                Positions out = visit(r.children.front());
                link(out.last, out.first);
                if (r.kind == Regex::Kind::star)
                    out.nullable = true;
                return out;
            }
            case Regex::Kind::optional: {
                Positions out = visit(r.children.front());
                out.nullable = true;
                return out;
            }
        }
        return {};
    }

    void link(const std::set<State>& from, const std::set<State>& to) {
        for (State p : from)
            follow[p - 1].insert(to.begin(), to.end());
    }

    std::vector<Symbol> symbols;             // symbol at position i + 1
    std::vector<std::set<State>> follow;     // follow set of position i + 1
};

}  // namespace

ConstraintSpec parse_spec(std::string_view text, std::string name) {
    return Parser(lex(text)).spec(std::move(name));
}

std::string to_string(const Regex& r, const Alphabet& alphabet) {
    std::string out;
    print(r, alphabet, 0, out);
    return out;
}

std::string to_string(const ConstraintSpec& spec) {
    std::string out = "alphabet";
    for (const auto& s : spec.alphabet.symbols())
        out += ' ' + s;
    out += ";\nviolation " + to_string(spec.pattern, spec.alphabet) + ";\n";
    return out;
}

EilenbergMachine pattern_machine(const Regex& r, const Alphabet& alphabet) {
    Glushkov g;
    const Positions top = g.visit(r);
    std::set<Transition> transitions;
    for (State p : top.first)
        transitions.insert({0, g.symbols[p - 1], p});
    for (std::size_t i = 0; i < g.follow.size(); ++i)
        for (State q : g.follow[i])
            transitions.insert({static_cast<State>(i + 1), g.symbols[q - 1], q});
    std::set<State> final_states = top.last;
    if (top.nullable)
        final_states.insert(0);
    return EilenbergMachine(alphabet, g.symbols.size() + 1, std::move(transitions), {0}, std::move(final_states));
}

Dfa pattern_dfa(const Regex& r, const Alphabet& alphabet) {
    return determinize(pattern_machine(r, alphabet)).dfa.minimized();
}

RegularPrefixFreeSet prefix_free_kernel(const Regex& r, const Alphabet& alphabet) {
    const Dfa language = pattern_dfa(r, alphabet);
    if (language.accepting(language.initial()))
        throw EpsilonViolation("violation pattern matches the empty word");
    return RegularPrefixFreeSet(language.prefix_kernel().minimized());
}

EilenbergMachine dfa_machine(const Dfa& dfa, const Alphabet& alphabet) {
    std::set<Transition> transitions;
    std::set<State> final_states;
    for (State x = 0; x < dfa.size(); ++x) {
        if (dfa.accepting(x))
            final_states.insert(x);
        for (Symbol n = 0; n < dfa.alphabet_size(); ++n)
            transitions.insert({x, n, dfa.next(x, n)});
    }
    return EilenbergMachine(alphabet, dfa.size(), std::move(transitions), {dfa.initial()}, std::move(final_states));
}

RootedDetector compile(const ConstraintSpec& spec) {
    const RegularPrefixFreeSet kernel = prefix_free_kernel(spec.pattern, spec.alphabet);
    const RootedDetector raw = machine_to_detector(dfa_machine(kernel.dfa(), spec.alphabet));
    return minimize(raw.detector, raw.initial);
}

bool kernel_changes_language(const ConstraintSpec& spec) {
    const Dfa language = pattern_dfa(spec.pattern, spec.alphabet);
    return !equivalent(language, prefix_free_kernel(spec.pattern, spec.alphabet).dfa());
}

}  // namespace safecoal
