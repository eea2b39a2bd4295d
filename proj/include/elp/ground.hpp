// ============================================================================
// elp/ground.hpp -- safety check, Herbrand grounding and the atom table
// ============================================================================
//
// Grounding substitutes every combination of Herbrand constants for the
// variables of each rule.  A variable is safe when it occurs in a positive
// body literal (depth 0) or inside the depth-0 inner literal of a subjective
// element.  The atom table assigns a dense index to every ground literal so
// downstream belief sets are plain bitsets.
// ============================================================================

#ifndef ELP_GROUND_HPP
#define ELP_GROUND_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "elp/syntax.hpp"

namespace elp {

class GroundingError : public std::runtime_error {
public:
    explicit GroundingError(const std::string& message) : std::runtime_error(message) {}
};

// ── atom table ──────────────────────────────────────────────────────────────

struct AtomTable {
    std::vector<ObjectiveLiteral> literals;        // index -> literal
    std::map<std::string, int> index;              // printed literal -> index
    std::vector<int> strong_complement;            // index -> index of "-l", or -1

    int intern(const ObjectiveLiteral& l) {
        std::string key = to_string(l);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        int id = static_cast<int>(literals.size());
        literals.push_back(l);
        index.emplace(std::move(key), id);
        return id;
    }

    int find(const ObjectiveLiteral& l) const {
        auto it = index.find(to_string(l));
        return it == index.end() ? -1 : it->second;
    }

    int size() const { return static_cast<int>(literals.size()); }

    void link_complements() {
        strong_complement.assign(literals.size(), -1);
        for (std::size_t i = 0; i < literals.size(); ++i) {
            auto it = index.find(to_string(literals[i].complement()));
            if (it != index.end()) strong_complement[i] = it->second;
        }
    }
};

struct GroundProgram {
    std::vector<Rule> rules;
    std::vector<Rule> wvcs;
    AtomTable atoms;
    std::vector<std::string> warnings;
};

// ── variable and constant collection ────────────────────────────────────────

namespace detail {

template <typename Fn>
void for_each_atom(const Rule& r, Fn&& fn) {
    for (const ObjectiveLiteral& h : r.head) fn(h.atom);
    for (const BodyElement& e : r.body) {
        if (const auto* s = std::get_if<SubjectiveElement>(&e))
            fn(s->inner.lit.atom);
        else
            fn(std::get<ExtLiteral>(e).lit.atom);
    }
}

// Variables of a rule in first-occurrence order (head first, then body).
inline std::vector<std::string> rule_variables(const Rule& r) {
    std::vector<std::string> vars;
    std::set<std::string> seen;
    for_each_atom(r, [&](const Atom& a) {
        for (const Term& t : a.terms)
            if (t.is_variable() && seen.insert(t.name).second) vars.push_back(t.name);
    });
    return vars;
}

inline Atom substitute(const Atom& a, const std::map<std::string, std::string>& binding) {
    Atom out{a.predicate, a.terms};
    for (Term& t : out.terms) {
        if (!t.is_variable()) continue;
        auto it = binding.find(t.name);
        if (it != binding.end()) t.name = it->second;
    }
    return out;
}

inline Rule substitute(const Rule& r, const std::map<std::string, std::string>& binding) {
    Rule out = r;
    for (ObjectiveLiteral& h : out.head) h.atom = substitute(h.atom, binding);
    for (BodyElement& e : out.body) {
        if (auto* s = std::get_if<SubjectiveElement>(&e))
            s->inner.lit.atom = substitute(s->inner.lit.atom, binding);
        else
            std::get<ExtLiteral>(e).lit.atom = substitute(std::get<ExtLiteral>(e).lit.atom, binding);
    }
    return out;
}

}  // namespace detail

// All constants occurring anywhere in the program, sorted lexicographically.
inline std::vector<std::string> herbrand_constants(const Program& p) {
    std::set<std::string> consts;
    auto scan = [&](const Rule& r) {
        detail::for_each_atom(r, [&](const Atom& a) {
            for (const Term& t : a.terms)
                if (!t.is_variable()) consts.insert(t.name);
        });
    };
    for (const Rule& r : p.rules) scan(r);
    for (const Rule& r : p.wvcs) scan(r);
    return {consts.begin(), consts.end()};
}

// Returns the first unsafe variable in occurrence order, or nullopt when the
// rule is safe.
inline std::optional<std::string> check_safety(const Rule& r) {
    std::set<std::string> safe;
    for (const BodyElement& e : r.body) {
        const ExtLiteral* grounding_lit = nullptr;
        if (const auto* s = std::get_if<SubjectiveElement>(&e)) {
            if (s->inner.depth == 0) grounding_lit = &s->inner;
        } else if (const auto& ext = std::get<ExtLiteral>(e); ext.depth == 0) {
            grounding_lit = &ext;
        }
        if (grounding_lit == nullptr) continue;
        for (const Term& t : grounding_lit->lit.atom.terms)
            if (t.is_variable()) safe.insert(t.name);
    }
    for (const std::string& v : detail::rule_variables(r))
        if (!safe.count(v)) return v;
    return std::nullopt;
}

// Grounds the program over its Herbrand constants.  Unsafe rules raise
// GroundingError; rules with variables in a constant-free program are
// dropped with a warning.  Duplicate ground rules are deduplicated and the
// atom table indexes every literal of the result.
inline GroundProgram ground_program(const Program& p) {
    GroundProgram out;

    auto check = [](const Rule& r, int idx, bool is_wvc) {
        if (auto unsafe = check_safety(r)) {
            std::ostringstream os;
            os << "unsafe " << (is_wvc ? "world view constraint " : "rule ") << idx << " at "
               << r.pos.line << ":" << r.pos.column << ": variable " << *unsafe
               << " does not occur in a positive body literal";
            throw GroundingError(os.str());
        }
    };
    for (std::size_t i = 0; i < p.rules.size(); ++i) check(p.rules[i], static_cast<int>(i), false);
    for (std::size_t i = 0; i < p.wvcs.size(); ++i) check(p.wvcs[i], static_cast<int>(i), true);

    std::vector<std::string> constants = herbrand_constants(p);

    auto expand = [&](const Rule& r, int idx, bool is_wvc, std::vector<Rule>& sink,
                      std::set<std::string>& seen) {
        std::vector<std::string> vars = detail::rule_variables(r);
        if (vars.empty()) {
            Rule g = r;
            if (seen.insert(to_string(g)).second) sink.push_back(std::move(g));
            return;
        }
        if (constants.empty()) {
            std::ostringstream os;
            os << (is_wvc ? "world view constraint " : "rule ") << idx
               << " dropped: variables but no Herbrand constants";
            out.warnings.push_back(os.str());
            return;
        }
        std::vector<std::size_t> odo(vars.size(), 0);
        while (true) {
            std::map<std::string, std::string> binding;
            for (std::size_t i = 0; i < vars.size(); ++i) binding[vars[i]] = constants[odo[i]];
            Rule g = detail::substitute(r, binding);
            if (seen.insert(to_string(g)).second) sink.push_back(std::move(g));
            std::size_t k = vars.size();
            while (k > 0) {
                --k;
                if (++odo[k] < constants.size()) break;
                odo[k] = 0;
                if (k == 0) return;
            }
        }
    };

    std::set<std::string> seen_rules, seen_wvcs;
    for (std::size_t i = 0; i < p.rules.size(); ++i)
        expand(p.rules[i], static_cast<int>(i), false, out.rules, seen_rules);
    for (std::size_t i = 0; i < p.wvcs.size(); ++i)
        expand(p.wvcs[i], static_cast<int>(i), true, out.wvcs, seen_wvcs);

    auto intern_rule = [&](const Rule& r) {
        for (const ObjectiveLiteral& h : r.head) out.atoms.intern(h);
        for (const BodyElement& e : r.body) {
            if (const auto* s = std::get_if<SubjectiveElement>(&e))
                out.atoms.intern(s->inner.lit);
            else
                out.atoms.intern(std::get<ExtLiteral>(e).lit);
        }
    };
    for (const Rule& r : out.rules) intern_rule(r);
    for (const Rule& r : out.wvcs) intern_rule(r);
    out.atoms.link_complements();
    return out;
}

inline bool is_ground(const Program& p) {
    bool ground = true;
    auto scan = [&](const Rule& r) {
        detail::for_each_atom(r, [&](const Atom& a) {
            for (const Term& t : a.terms)
                if (t.is_variable()) ground = false;
        });
    };
    for (const Rule& r : p.rules) scan(r);
    for (const Rule& r : p.wvcs) scan(r);
    return ground;
}

// Program view of a ground program, used where syntax-level operations apply.
inline Program to_program(const GroundProgram& g) {
    return Program{g.rules, g.wvcs};
}

inline std::vector<EpistemicNegation> collect_epistemic_negations(const GroundProgram& g) {
    return collect_epistemic_negations(to_program(g));
}

}  // namespace elp

#endif  // ELP_GROUND_HPP
