// ============================================================================
// elp/syntax.hpp -- abstract syntax, parser and normal form for epistemic
// logic programs
// ============================================================================
//
// Surface syntax, one '.'-terminated rule per statement, '%' line comments:
//
//   eligible(S) :- fairGPA(S), minority(S).
//   p | -q :- r, not s, not not t, K p, M not q, not K -p.
//   !- K p.                      % world view constraint
//
// "-" is classical negation, "not" default negation, "K"/"M" the modal
// operators, "!-" introduces a world view constraint.  Variables start with
// an uppercase letter, constants and predicates with a lowercase letter or
// underscore.
//
// Every subjective element normalizes to a polarity over an epistemic
// negation "NOT f" (read: f fails in at least one belief set):
//
//   not K f  =  NOT f            K f      =  complement of NOT f
//   M f      =  NOT (not f)      not M f  =  complement of NOT (not f)
//
// The normal form is what guessing, reducts and verification work on.
// ============================================================================

#ifndef ELP_SYNTAX_HPP
#define ELP_SYNTAX_HPP

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace elp {

// ── positions and errors ────────────────────────────────────────────────────

struct SourcePos {
    int line = 1;
    int column = 1;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, SourcePos pos)
        : std::runtime_error(render(message, pos)), pos_(pos) {}

    SourcePos pos() const { return pos_; }

private:
    static std::string render(const std::string& message, SourcePos pos) {
        std::ostringstream os;
        os << "parse error at " << pos.line << ":" << pos.column << ": " << message;
        return os.str();
    }

    SourcePos pos_;
};

// Fresh-atom introduction clashed with a name already used by the program.
class FreshNameError : public std::runtime_error {
public:
    explicit FreshNameError(const std::string& message) : std::runtime_error(message) {}
};

// ── abstract syntax ─────────────────────────────────────────────────────────

struct Term {
    std::string name;

    bool is_variable() const {
        return !name.empty() && std::isupper(static_cast<unsigned char>(name.front())) != 0;
    }

    friend bool operator==(const Term&, const Term&) = default;
};

struct Atom {
    std::string predicate;
    std::vector<Term> terms;

    friend bool operator==(const Atom&, const Atom&) = default;
};

struct ObjectiveLiteral {
    Atom atom;
    bool strong_neg = false;

    ObjectiveLiteral complement() const { return ObjectiveLiteral{atom, !strong_neg}; }

    friend bool operator==(const ObjectiveLiteral&, const ObjectiveLiteral&) = default;
};

// Objective literal under 0, 1 or 2 default negations.  Depth 2 is
// transparent for satisfaction but contributes nothing to minimality.
struct ExtLiteral {
    ObjectiveLiteral lit;
    int depth = 0;

    friend bool operator==(const ExtLiteral&, const ExtLiteral&) = default;
};

enum class Modal { K, M };

struct SubjectiveElement {
    bool outer_neg = false;  // syntactic "not" before the modal operator
    Modal modal = Modal::K;
    ExtLiteral inner;        // depth 0 or 1

    friend bool operator==(const SubjectiveElement&, const SubjectiveElement&) = default;
};

using BodyElement = std::variant<ExtLiteral, SubjectiveElement>;

inline bool is_subjective(const BodyElement& e) {
    return std::holds_alternative<SubjectiveElement>(e);
}

enum class RuleKind { Regular, Wvc };

struct Rule {
    RuleKind kind = RuleKind::Regular;
    std::vector<ObjectiveLiteral> head;
    std::vector<BodyElement> body;
    SourcePos pos;  // diagnostics only, not part of equality

    bool is_constraint() const { return kind == RuleKind::Regular && head.empty(); }

    friend bool operator==(const Rule& a, const Rule& b) {
        return a.kind == b.kind && a.head == b.head && a.body == b.body;
    }
};

struct Program {
    std::vector<Rule> rules;  // regular rules, in source order
    std::vector<Rule> wvcs;   // world view constraints, in source order

    friend bool operator==(const Program&, const Program&) = default;
};

// Canonical NOT form; the unit of guessing.
struct EpistemicNegation {
    ExtLiteral target;  // depth 0 or 1

    friend bool operator==(const EpistemicNegation&, const EpistemicNegation&) = default;
};

// ── printing ────────────────────────────────────────────────────────────────

inline std::string to_string(const Term& t) { return t.name; }

inline std::string to_string(const Atom& a) {
    std::string out = a.predicate;
    if (!a.terms.empty()) {
        out += '(';
        for (std::size_t i = 0; i < a.terms.size(); ++i) {
            if (i > 0) out += ',';
            out += a.terms[i].name;
        }
        out += ')';
    }
    return out;
}

inline std::string to_string(const ObjectiveLiteral& l) {
    return l.strong_neg ? "-" + to_string(l.atom) : to_string(l.atom);
}

inline std::string to_string(const ExtLiteral& e) {
    std::string out;
    for (int i = 0; i < e.depth; ++i) out += "not ";
    return out + to_string(e.lit);
}

inline std::string to_string(const SubjectiveElement& s) {
    std::string out = s.outer_neg ? "not " : "";
    out += s.modal == Modal::K ? "K " : "M ";
    return out + to_string(s.inner);
}

inline std::string to_string(const EpistemicNegation& n) { return "NOT " + to_string(n.target); }

inline std::string to_string(const BodyElement& e) {
    if (const auto* s = std::get_if<SubjectiveElement>(&e)) return to_string(*s);
    return to_string(std::get<ExtLiteral>(e));
}

inline std::string to_string(const Rule& r) {
    std::string out;
    for (std::size_t i = 0; i < r.head.size(); ++i) {
        if (i > 0) out += " | ";
        out += to_string(r.head[i]);
    }
    if (r.kind == RuleKind::Wvc) {
        out += "!- ";
    } else if (!r.body.empty()) {
        if (!r.head.empty()) out += ' ';
        out += ":- ";
    }
    for (std::size_t i = 0; i < r.body.size(); ++i) {
        if (i > 0) out += ", ";
        out += to_string(r.body[i]);
    }
    return out + ".";
}

inline std::string to_string(const Program& p) {
    std::string out;
    for (const Rule& r : p.rules) out += to_string(r) + "\n";
    for (const Rule& r : p.wvcs) out += to_string(r) + "\n";
    return out;
}

// Printed-form comparison backs every canonical ordering in the pipeline.
inline bool printed_less(const EpistemicNegation& a, const EpistemicNegation& b) {
    return to_string(a) < to_string(b);
}

// ── normal form ─────────────────────────────────────────────────────────────

// Raw default-negation depths collapse into {0,1,2}: parity is preserved for
// d >= 1, so "not not not f" behaves as "not f".
inline int collapse_depth(int raw) {
    if (raw <= 2) return raw;
    return raw % 2 == 1 ? 1 : 2;
}

// Flips one default negation on a depth-0/1 literal.
inline ExtLiteral flip_default(const ExtLiteral& e) {
    if (e.depth > 1) throw std::invalid_argument("flip_default: depth must be 0 or 1");
    return ExtLiteral{e.lit, e.depth == 0 ? 1 : 0};
}

// Canonical epistemic negation denoted by a subjective element.
inline EpistemicNegation negation_of(const SubjectiveElement& s) {
    if (s.modal == Modal::K) return EpistemicNegation{s.inner};
    return EpistemicNegation{flip_default(s.inner)};
}

// True when the element stands for the complement of its negation:
// "K f" and "not M f" deny NOT f, "not K f" and "M f" assert it.
inline bool negated_use(const SubjectiveElement& s) {
    return s.modal == Modal::K ? !s.outer_neg : s.outer_neg;
}

inline SubjectiveElement normalized(SubjectiveElement s) {
    s.inner.depth = collapse_depth(s.inner.depth);
    return s;
}

// Collapses every default-negation depth in the program.  Total on valid
// programs and idempotent; the canonical (negation, polarity) pair of each
// subjective element is then given by negation_of / negated_use.
inline Program normalize(Program p) {
    auto fix_rule = [](Rule& r) {
        for (BodyElement& e : r.body) {
            if (auto* ext = std::get_if<ExtLiteral>(&e)) {
                ext->depth = collapse_depth(ext->depth);
            } else {
                e = normalized(std::get<SubjectiveElement>(e));
            }
        }
    };
    for (Rule& r : p.rules) fix_rule(r);
    for (Rule& r : p.wvcs) fix_rule(r);
    return p;
}

// Deduplicated epistemic negations of the regular rules, ordered
// lexicographically by printed form.  World view constraints contribute
// nothing to the guess space.
inline std::vector<EpistemicNegation> collect_epistemic_negations(const Program& p) {
    std::map<std::string, EpistemicNegation> seen;
    for (const Rule& r : p.rules) {
        for (const BodyElement& e : r.body) {
            if (const auto* s = std::get_if<SubjectiveElement>(&e)) {
                EpistemicNegation n = negation_of(*s);
                seen.emplace(to_string(n), n);
            }
        }
    }
    std::vector<EpistemicNegation> out;
    out.reserve(seen.size());
    for (auto& [key, n] : seen) out.push_back(n);
    return out;
}

// ── validation ──────────────────────────────────────────────────────────────

struct Diagnostic {
    int rule_index = 0;  // index into rules, or wvcs when is_wvc
    bool is_wvc = false;
    std::string reason;
    SourcePos pos;
};

inline std::string to_string(const Diagnostic& d) {
    std::ostringstream os;
    os << (d.is_wvc ? "wvc " : "rule ") << d.rule_index << ": " << d.reason;
    return os.str();
}

namespace detail {

inline bool valid_identifier(const std::string& name) {
    if (name.empty()) return false;
    unsigned char c0 = static_cast<unsigned char>(name.front());
    if (!std::isalpha(c0) && c0 != '_') return false;
    for (char ch : name) {
        unsigned char c = static_cast<unsigned char>(ch);
        if (!std::isalnum(c) && c != '_') return false;
    }
    return true;
}

inline void check_atom(const Atom& a, int index, bool is_wvc, SourcePos pos,
                       std::vector<Diagnostic>& out) {
    if (!valid_identifier(a.predicate) ||
        std::isupper(static_cast<unsigned char>(a.predicate.front())) != 0) {
        out.push_back({index, is_wvc, "invalid predicate name '" + a.predicate + "'", pos});
    }
    for (const Term& t : a.terms) {
        if (!valid_identifier(t.name))
            out.push_back({index, is_wvc, "invalid term name '" + t.name + "'", pos});
    }
}

}  // namespace detail

// Structural checks beyond what the grammar enforces; programs built through
// the API go through the same gate as parsed ones.  Empty result means
// accepted.
inline std::vector<Diagnostic> validate(const Program& p) {
    std::vector<Diagnostic> out;
    auto check_rule = [&](const Rule& r, int index, bool is_wvc) {
        if (is_wvc || r.kind == RuleKind::Wvc) {
            if (r.kind != RuleKind::Wvc)
                out.push_back({index, is_wvc, "non-wvc rule stored as world view constraint", r.pos});
            if (is_wvc != (r.kind == RuleKind::Wvc))
                out.push_back({index, is_wvc, "misplaced world view constraint", r.pos});
            if (!r.head.empty())
                out.push_back({index, is_wvc, "world view constraint with non-empty head", r.pos});
            for (const BodyElement& e : r.body) {
                if (!is_subjective(e))
                    out.push_back({index, is_wvc, "objective literal in WVC body", r.pos});
            }
        }
        for (const ObjectiveLiteral& h : r.head) detail::check_atom(h.atom, index, is_wvc, r.pos, out);
        for (std::size_t i = 0; i < r.head.size(); ++i)
            for (std::size_t j = i + 1; j < r.head.size(); ++j)
                if (r.head[i] == r.head[j]) {
                    out.push_back({index, is_wvc, "duplicate head literal " + to_string(r.head[i]), r.pos});
                }
        for (const BodyElement& e : r.body) {
            if (const auto* s = std::get_if<SubjectiveElement>(&e)) {
                if (s->inner.depth < 0 || s->inner.depth > 1)
                    out.push_back({index, is_wvc, "subjective inner literal depth out of range", r.pos});
                detail::check_atom(s->inner.lit.atom, index, is_wvc, r.pos, out);
            } else {
                const auto& ext = std::get<ExtLiteral>(e);
                if (ext.depth < 0 || ext.depth > 2)
                    out.push_back({index, is_wvc, "default negation depth out of range", r.pos});
                detail::check_atom(ext.lit.atom, index, is_wvc, r.pos, out);
            }
        }
    };
    for (std::size_t i = 0; i < p.rules.size(); ++i) {
        if (p.rules[i].kind == RuleKind::Wvc)
            out.push_back({static_cast<int>(i), false, "misplaced world view constraint", p.rules[i].pos});
        check_rule(p.rules[i], static_cast<int>(i), false);
    }
    for (std::size_t i = 0; i < p.wvcs.size(); ++i) check_rule(p.wvcs[i], static_cast<int>(i), true);
    return out;
}

// ── strong negation elimination ─────────────────────────────────────────────

// Rewrites "-p(t)" as "p__neg(t)" plus one constraint ":- p(t), p__neg(t)."
// per distinct eliminated ground literal.  The returned predicate map sends
// each fresh predicate back to the original one so belief sets translate
// back losslessly.
struct StrongNegationElimination {
    Program program;
    std::map<std::string, std::string> fresh_to_original;
};

inline StrongNegationElimination eliminate_strong_negation(const Program& ground) {
    static const std::string kSuffix = "__neg";

    std::set<std::string> predicates;
    std::map<std::string, Atom> eliminated;  // printed ground atom -> atom
    auto scan_lit = [&](const ObjectiveLiteral& l) {
        predicates.insert(l.atom.predicate);
        if (l.strong_neg) eliminated.emplace(to_string(l.atom), l.atom);
    };
    auto scan_rule = [&](const Rule& r) {
        for (const ObjectiveLiteral& h : r.head) scan_lit(h);
        for (const BodyElement& e : r.body) {
            if (const auto* s = std::get_if<SubjectiveElement>(&e))
                scan_lit(s->inner.lit);
            else
                scan_lit(std::get<ExtLiteral>(e).lit);
        }
    };
    for (const Rule& r : ground.rules) scan_rule(r);
    for (const Rule& r : ground.wvcs) scan_rule(r);

    StrongNegationElimination result;
    if (eliminated.empty()) {
        result.program = ground;
        return result;
    }

    std::set<std::string> fresh_needed;
    for (const auto& [printed, atom] : eliminated) fresh_needed.insert(atom.predicate + kSuffix);
    for (const std::string& fresh : fresh_needed) {
        if (predicates.count(fresh))
            throw FreshNameError("fresh predicate '" + fresh + "' collides with an existing predicate");
    }

    auto rewrite_lit = [&](ObjectiveLiteral l) {
        if (l.strong_neg) {
            result.fresh_to_original.emplace(l.atom.predicate + kSuffix, l.atom.predicate);
            l.atom.predicate += kSuffix;
            l.strong_neg = false;
        }
        return l;
    };
    auto rewrite_rule = [&](Rule r) {
        for (ObjectiveLiteral& h : r.head) h = rewrite_lit(h);
        for (BodyElement& e : r.body) {
            if (auto* s = std::get_if<SubjectiveElement>(&e))
                s->inner.lit = rewrite_lit(s->inner.lit);
            else
                std::get<ExtLiteral>(e).lit = rewrite_lit(std::get<ExtLiteral>(e).lit);
        }
        return r;
    };
    for (const Rule& r : ground.rules) result.program.rules.push_back(rewrite_rule(r));
    for (const Rule& r : ground.wvcs) result.program.wvcs.push_back(rewrite_rule(r));

    for (const auto& [printed, atom] : eliminated) {
        Rule guard;
        guard.kind = RuleKind::Regular;
        Atom fresh{atom.predicate + kSuffix, atom.terms};
        guard.body.push_back(ExtLiteral{ObjectiveLiteral{atom, false}, 0});
        guard.body.push_back(ExtLiteral{ObjectiveLiteral{fresh, false}, 0});
        result.program.rules.push_back(std::move(guard));
    }
    return result;
}

// Translates a literal of the rewritten program back to the original one.
inline ObjectiveLiteral translate_back(const ObjectiveLiteral& l,
                                       const std::map<std::string, std::string>& fresh_to_original) {
    auto it = fresh_to_original.find(l.atom.predicate);
    if (it == fresh_to_original.end() || l.strong_neg) return l;
    return ObjectiveLiteral{Atom{it->second, l.atom.terms}, true};
}

// ── lexer and parser ────────────────────────────────────────────────────────

namespace detail {

enum class Tok { Ident, KwNot, KwK, KwM, Dot, Comma, Pipe, If, WvcIf, Minus, LParen, RParen, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    SourcePos pos;
};

inline std::vector<Token> lex(std::string_view text) {
    std::vector<Token> out;
    SourcePos pos;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (i < text.size() && text[i] == '\n') {
                ++pos.line;
                pos.column = 1;
            } else {
                ++pos.column;
            }
            ++i;
        }
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '%') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        SourcePos start = pos;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            std::string word(text.substr(i, j - i));
            advance(j - i);
            Tok kind = Tok::Ident;
            if (word == "not") kind = Tok::KwNot;
            else if (word == "K") kind = Tok::KwK;
            else if (word == "M") kind = Tok::KwM;
            out.push_back({kind, std::move(word), start});
            continue;
        }
        switch (c) {
            case '.': out.push_back({Tok::Dot, ".", start}); advance(1); break;
            case ',': out.push_back({Tok::Comma, ",", start}); advance(1); break;
            case '|': out.push_back({Tok::Pipe, "|", start}); advance(1); break;
            case '(': out.push_back({Tok::LParen, "(", start}); advance(1); break;
            case ')': out.push_back({Tok::RParen, ")", start}); advance(1); break;
            case '-': out.push_back({Tok::Minus, "-", start}); advance(1); break;
            case ':':
                if (i + 1 < text.size() && text[i + 1] == '-') {
                    out.push_back({Tok::If, ":-", start});
                    advance(2);
                } else {
                    throw ParseError("expected ':-'", start);
                }
                break;
            case '!':
                if (i + 1 < text.size() && text[i + 1] == '-') {
                    out.push_back({Tok::WvcIf, "!-", start});
                    advance(2);
                } else {
                    throw ParseError("expected '!-'", start);
                }
                break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", start);
        }
    }
    out.push_back({Tok::End, "", pos});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    Program parse() {
        Program p;
        while (peek().kind != Tok::End) {
            Rule r = parse_rule();
            (r.kind == RuleKind::Wvc ? p.wvcs : p.rules).push_back(std::move(r));
        }
        return p;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        return tokens_[std::min(index_ + ahead, tokens_.size() - 1)];
    }
    Token take() { return tokens_[std::min(index_++, tokens_.size() - 1)]; }
    Token expect(Tok kind, const char* what) {
        if (peek().kind != kind) throw ParseError(std::string("expected ") + what, peek().pos);
        return take();
    }

    Rule parse_rule() {
        Rule r;
        r.pos = peek().pos;
        if (peek().kind == Tok::WvcIf) {
            take();
            r.kind = RuleKind::Wvc;
            r.body = parse_body(true);
            expect(Tok::Dot, "'.'");
            return r;
        }
        if (peek().kind == Tok::KwK || peek().kind == Tok::KwM || peek().kind == Tok::KwNot)
            throw ParseError("subjective element in rule head", peek().pos);
        if (peek().kind != Tok::If) {
            r.head.push_back(parse_objective());
            while (peek().kind == Tok::Pipe) {
                take();
                r.head.push_back(parse_objective());
            }
        }
        if (peek().kind == Tok::If) {
            take();
            r.body = parse_body(false);
        }
        if (r.head.empty() && r.body.empty()) throw ParseError("empty rule", peek().pos);
        expect(Tok::Dot, "'.'");
        return r;
    }

    std::vector<BodyElement> parse_body(bool wvc) {
        std::vector<BodyElement> body;
        body.push_back(parse_element(wvc));
        while (peek().kind == Tok::Comma) {
            take();
            body.push_back(parse_element(wvc));
        }
        return body;
    }

    BodyElement parse_element(bool wvc) {
        SourcePos start = peek().pos;
        int nots = 0;
        while (peek().kind == Tok::KwNot && nots < 2) {
            take();
            ++nots;
        }
        if (peek().kind == Tok::KwK || peek().kind == Tok::KwM) {
            if (nots == 2)
                throw ParseError("double default negation before a subjective element", start);
            SubjectiveElement s;
            s.outer_neg = nots == 1;
            s.modal = take().kind == Tok::KwK ? Modal::K : Modal::M;
            s.inner.depth = 0;
            if (peek().kind == Tok::KwNot) {
                take();
                s.inner.depth = 1;
            }
            s.inner.lit = parse_objective();
            return s;
        }
        if (wvc)
            throw ParseError("objective literal in world view constraint body", start);
        ExtLiteral e;
        e.depth = nots;
        e.lit = parse_objective();
        return e;
    }

    ObjectiveLiteral parse_objective() {
        ObjectiveLiteral l;
        if (peek().kind == Tok::Minus) {
            take();
            l.strong_neg = true;
        }
        Token name = expect(Tok::Ident, "atom");
        if (std::isupper(static_cast<unsigned char>(name.text.front())) != 0)
            throw ParseError("expected atom, found variable '" + name.text + "'", name.pos);
        l.atom.predicate = name.text;
        if (peek().kind == Tok::LParen) {
            take();
            l.atom.terms.push_back(parse_term());
            while (peek().kind == Tok::Comma) {
                take();
                l.atom.terms.push_back(parse_term());
            }
            expect(Tok::RParen, "')'");
        }
        return l;
    }

    Term parse_term() {
        Token t = expect(Tok::Ident, "term");
        return Term{t.text};
    }

    std::vector<Token> tokens_;
    std::size_t index_ = 0;
};

}  // namespace detail

inline Program parse_program(std::string_view text) {
    return detail::Parser(detail::lex(text)).parse();
}

}  // namespace elp

#endif  // ELP_SYNTAX_HPP
