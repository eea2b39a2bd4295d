// ============================================================================
// elp/epistemic.hpp -- guesses, epistemic reducts and world view checking
// ============================================================================
//
// A guess selects a subset of the program's epistemic negations.  The reduct
// replaces every subjective element according to the guess and the chosen
// semantics:
//
//   es2016   guessed true: positive use vanishes, negated use kills the rule;
//            guessed false: "not f" for positive use, "not not f" for negated.
//   es2014   guessed true as es2016; guessed false: "not f" for positive use,
//            f itself for negated use.
//   es1994   every occurrence becomes a plain truth value (guess xor use).
//
// World view constraints never enter the reduct or the guess space; they are
// applied to finished world views afterwards.
//
// The reduct framework folds all guesses into one subjective-free program:
// each negation i gets a choice pair over fresh atoms __g<i> / __h<i> and
// every rule is duplicated over the assignments to its own negations, with
// the matching guard atoms appended.  Answer sets of the framework, grouped
// by guess atoms, are exactly the reduct answer sets per guess.
// ============================================================================

#ifndef ELP_EPISTEMIC_HPP
#define ELP_EPISTEMIC_HPP

#include <boost/dynamic_bitset.hpp>
#include <map>
#include <string>
#include <vector>

#include "elp/aspcore.hpp"
#include "elp/ground.hpp"

namespace elp {

enum class Semantics { ES1994, ES2014, ES2016 };

inline std::string to_string(Semantics s) {
    switch (s) {
        case Semantics::ES1994: return "es1994";
        case Semantics::ES2014: return "es2014";
        default: return "es2016";
    }
}

inline std::optional<Semantics> semantics_from_string(const std::string& s) {
    if (s == "es1994") return Semantics::ES1994;
    if (s == "es2014") return Semantics::ES2014;
    if (s == "es2016") return Semantics::ES2016;
    return std::nullopt;
}

// ── guesses and world views ─────────────────────────────────────────────────

// Subset of the ordered epistemic negations, one bit per negation.
struct Guess {
    boost::dynamic_bitset<> bits;

    std::size_t size() const { return bits.size(); }
    std::size_t count() const { return bits.count(); }
    bool test(std::size_t i) const { return bits.test(i); }

    bool proper_subset_of(const Guess& other) const {
        return bits.is_proper_subset_of(other.bits);
    }

    friend bool operator==(const Guess& a, const Guess& b) { return a.bits == b.bits; }
};

// Printed forms of the guessed negations, in epistemic-negation order.
inline std::vector<std::string> guess_strings(const Guess& phi,
                                              const std::vector<EpistemicNegation>& ep) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < phi.size(); ++i)
        if (phi.test(i)) out.push_back(to_string(ep[i]));
    return out;
}

struct WorldView {
    std::vector<BeliefSet> belief_sets;  // canonical order, nonempty
    Guess guess;
    Semantics semantics = Semantics::ES2016;
};

// ── subjective satisfaction ─────────────────────────────────────────────────

// K: inner holds in every belief set.  M: inner holds in at least one.
// An outer "not" flips the verdict.  Empty collections are rejected; world
// views are nonempty by construction.
inline bool satisfies_subjective(const std::vector<BeliefSet>& w, const SubjectiveElement& s,
                                 const AtomTable& atoms) {
    if (w.empty()) throw std::invalid_argument("satisfies_subjective: empty collection");
    bool verdict;
    if (s.modal == Modal::K) {
        verdict = true;
        for (const BeliefSet& b : w)
            if (!satisfies_ext(b, s.inner, atoms)) {
                verdict = false;
                break;
            }
    } else {
        verdict = false;
        for (const BeliefSet& b : w)
            if (satisfies_ext(b, s.inner, atoms)) {
                verdict = true;
                break;
            }
    }
    return s.outer_neg ? !verdict : verdict;
}

// "NOT f" holds when f fails in at least one belief set.
inline bool negation_satisfied(const std::vector<BeliefSet>& w, const EpistemicNegation& n,
                               const AtomTable& atoms) {
    if (w.empty()) throw std::invalid_argument("negation_satisfied: empty collection");
    for (const BeliefSet& b : w)
        if (!satisfies_ext(b, n.target, atoms)) return true;
    return false;
}

// ── guess filtering ─────────────────────────────────────────────────────────

// A guess commits the program to requirements "K f" for negations left out
// and "M comp(f)" for negations taken in.  Three requirement patterns can
// never be met by any collection of consistent belief sets:
//
//   K f together with K comp(f)           (f both always and never holds)
//   K l together with K -l  (depth 0)     (belief sets stay consistent)
//   K l together with M -l  (depth 0)     (same, witnessed in one set)
//
// Guesses showing one of them are filtered before any reduct is solved.
inline bool is_valid_guess(const std::vector<EpistemicNegation>& ep, const Guess& phi) {
    if (phi.size() != ep.size())
        throw std::invalid_argument("is_valid_guess: guess is not over the program's negations");
    std::map<std::string, ExtLiteral> know;   // printed f -> f, required K f
    std::map<std::string, ExtLiteral> maybe;  // printed f -> f, required M f
    for (std::size_t i = 0; i < ep.size(); ++i) {
        const ExtLiteral& f = ep[i].target;
        if (phi.test(i))
            maybe.emplace(to_string(flip_default(f)), flip_default(f));
        else
            know.emplace(to_string(f), f);
    }
    for (const auto& [key, f] : know) {
        ExtLiteral comp = flip_default(f);
        if (know.count(to_string(comp))) return false;  // K f and K comp(f), i.e. not M f
        if (f.depth == 0) {
            ExtLiteral strong{f.lit.complement(), 0};
            if (know.count(to_string(strong))) return false;   // K l and K -l
            if (maybe.count(to_string(strong))) return false;  // K l and M -l
        }
    }
    return true;
}

// ── epistemic reduct ────────────────────────────────────────────────────────

namespace detail {

// Index of each negation's printed form in the canonical order.
inline std::map<std::string, std::size_t> negation_index(const std::vector<EpistemicNegation>& ep) {
    std::map<std::string, std::size_t> out;
    for (std::size_t i = 0; i < ep.size(); ++i) out.emplace(to_string(ep[i]), i);
    return out;
}

// Replacement for one subjective occurrence: either a literal, nothing
// (element vanishes), or rule death.
struct Replacement {
    bool drop_rule = false;
    std::optional<ExtLiteral> literal;
};

inline Replacement replace_occurrence(const SubjectiveElement& s, bool in_phi, Semantics sem) {
    bool negated = negated_use(s);
    const ExtLiteral f = negation_of(s).target;
    Replacement out;
    switch (sem) {
        case Semantics::ES1994:
            // Truth value only: the occurrence holds iff the guess and the
            // use polarity agree.
            if (in_phi == negated) out.drop_rule = true;
            return out;
        case Semantics::ES2014:
            if (in_phi) {
                if (negated) out.drop_rule = true;
                return out;
            }
            if (negated) {
                out.literal = f;
            } else {
                out.literal = ExtLiteral{f.lit, collapse_depth(f.depth + 1)};
            }
            return out;
        default:  // es2016
            if (in_phi) {
                if (negated) out.drop_rule = true;
                return out;
            }
            out.literal = ExtLiteral{f.lit, collapse_depth(f.depth + (negated ? 2 : 1))};
            return out;
    }
}

}  // namespace detail

// Reduct of the regular rules with respect to a guess.  The atom table is
// carried over unchanged so belief sets stay comparable across guesses;
// world view constraints are excluded.
inline GroundProgram epistemic_reduct(const GroundProgram& g,
                                      const std::vector<EpistemicNegation>& ep, const Guess& phi,
                                      Semantics sem) {
    if (phi.size() != ep.size())
        throw std::invalid_argument("epistemic_reduct: guess is not over the program's negations");
    auto index = detail::negation_index(ep);
    GroundProgram out;
    out.atoms = g.atoms;
    for (const Rule& r : g.rules) {
        Rule reduced;
        reduced.kind = RuleKind::Regular;
        reduced.head = r.head;
        reduced.pos = r.pos;
        bool dropped = false;
        for (const BodyElement& e : r.body) {
            const auto* s = std::get_if<SubjectiveElement>(&e);
            if (s == nullptr) {
                reduced.body.push_back(e);
                continue;
            }
            auto it = index.find(to_string(negation_of(*s)));
            if (it == index.end())
                throw std::invalid_argument("epistemic_reduct: occurrence outside the negation set");
            detail::Replacement rep = detail::replace_occurrence(*s, phi.test(it->second), sem);
            if (rep.drop_rule) {
                dropped = true;
                break;
            }
            if (rep.literal) reduced.body.push_back(*rep.literal);
        }
        if (!dropped) out.rules.push_back(std::move(reduced));
    }
    return out;
}

inline GroundProgram epistemic_reduct(const GroundProgram& g, const Guess& phi, Semantics sem) {
    return epistemic_reduct(g, collect_epistemic_negations(g), phi, sem);
}

// ── verification ────────────────────────────────────────────────────────────

// A nonempty collection w is the world view for phi when the guessed
// negations are exactly those satisfied by w.
inline bool verify_guess(const GroundProgram& g, const std::vector<EpistemicNegation>& ep,
                         const Guess& phi, const std::vector<BeliefSet>& w) {
    if (w.empty()) return false;
    for (std::size_t i = 0; i < ep.size(); ++i)
        if (phi.test(i) != negation_satisfied(w, ep[i], g.atoms)) return false;
    return true;
}

inline bool verify_guess(const GroundProgram& g, const Guess& phi, const std::vector<BeliefSet>& w) {
    return verify_guess(g, collect_epistemic_negations(g), phi, w);
}

// ── reduct framework ────────────────────────────────────────────────────────

namespace detail {

inline std::string guard_atom(std::size_t i, bool in_phi) {
    return (in_phi ? "__g" : "__h") + std::to_string(i + 1);
}

inline bool is_guard_name(const std::string& predicate) {
    if (predicate.size() < 4 || predicate[0] != '_' || predicate[1] != '_') return false;
    if (predicate[2] != 'g' && predicate[2] != 'h') return false;
    for (std::size_t i = 3; i < predicate.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(predicate[i]))) return false;
    return true;
}

}  // namespace detail

// Emits the all-guess framework program as parseable text.  Each rule is
// duplicated over the assignments to the distinct negations occurring in it;
// assignments that kill the rule emit nothing, the others append the
// matching guard atoms.  One choice pair per negation generates the guesses.
inline std::string emit_reduct_framework(const GroundProgram& g, Semantics sem) {
    std::vector<EpistemicNegation> ep = collect_epistemic_negations(g);
    for (const ObjectiveLiteral& l : g.atoms.literals)
        if (detail::is_guard_name(l.atom.predicate))
            throw FreshNameError("guard predicate '" + l.atom.predicate +
                                 "' collides with a program atom");
    auto index = detail::negation_index(ep);

    std::string out;
    out += "% reduct framework, semantics " + to_string(sem) + "\n";
    for (std::size_t i = 0; i < ep.size(); ++i)
        out += "% " + detail::guard_atom(i, true) + " assumes " + to_string(ep[i]) + "\n";

    for (const Rule& r : g.rules) {
        std::vector<std::size_t> local;  // distinct negations of this rule, in ep order
        for (const BodyElement& e : r.body)
            if (const auto* s = std::get_if<SubjectiveElement>(&e)) {
                std::size_t idx = index.at(to_string(negation_of(*s)));
                if (std::find(local.begin(), local.end(), idx) == local.end())
                    local.push_back(idx);
            }
        std::sort(local.begin(), local.end());

        if (local.empty()) {
            out += to_string(r) + "\n";
            continue;
        }
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << local.size()); ++mask) {
            auto assumed = [&](std::size_t ep_idx) {
                for (std::size_t j = 0; j < local.size(); ++j)
                    if (local[j] == ep_idx) return (mask & (std::uint64_t(1) << j)) != 0;
                return false;
            };
            Rule variant;
            variant.kind = RuleKind::Regular;
            variant.head = r.head;
            bool dead = false;
            for (const BodyElement& e : r.body) {
                const auto* s = std::get_if<SubjectiveElement>(&e);
                if (s == nullptr) {
                    variant.body.push_back(e);
                    continue;
                }
                std::size_t idx = index.at(to_string(negation_of(*s)));
                detail::Replacement rep = detail::replace_occurrence(*s, assumed(idx), sem);
                if (rep.drop_rule) {
                    dead = true;
                    break;
                }
                if (rep.literal) variant.body.push_back(*rep.literal);
            }
            if (dead) continue;
            for (std::size_t j = 0; j < local.size(); ++j) {
                bool in_phi = (mask & (std::uint64_t(1) << j)) != 0;
                Atom guard{detail::guard_atom(local[j], in_phi), {}};
                variant.body.push_back(ExtLiteral{ObjectiveLiteral{guard, false}, 0});
            }
            out += to_string(variant) + "\n";
        }
    }
    for (std::size_t i = 0; i < ep.size(); ++i) {
        out += detail::guard_atom(i, true) + " :- not " + detail::guard_atom(i, false) + ".\n";
        out += detail::guard_atom(i, false) + " :- not " + detail::guard_atom(i, true) + ".\n";
    }
    return out;
}

}  // namespace elp

#endif  // ELP_EPISTEMIC_HPP
