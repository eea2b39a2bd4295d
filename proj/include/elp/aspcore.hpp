// ============================================================================
// elp/aspcore.hpp -- answer sets of ground disjunctive programs
// ============================================================================
//
// Satisfaction treats "not not l" as l; the Gelfond-Lifschitz reduct
// evaluates every element of depth >= 1 against the candidate and keeps only
// the depth-0 bodies, so depth 2 never helps minimality.  Answer sets are
// the consistent minimal models of the reduct.
//
// The search enumerates consistent subsets of the head literals only (no
// answer set can contain a literal that heads no rule) and rejects a partial
// assignment as soon as it fully falsifies some rule.  A configurable cap
// bounds the number of tested candidates; crossing it raises
// ResourceLimitError.
// ============================================================================

#ifndef ELP_ASPCORE_HPP
#define ELP_ASPCORE_HPP

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "elp/ground.hpp"

namespace elp {

class ResourceLimitError : public std::runtime_error {
public:
    explicit ResourceLimitError(const std::string& message) : std::runtime_error(message) {}
};

constexpr std::uint64_t kDefaultCandidateCap = std::uint64_t(1) << 22;

// ── belief sets ─────────────────────────────────────────────────────────────

// Set of objective literals over an atom table.  Consistency (never l and
// -l together) is enforced by the engines that produce belief sets.
struct BeliefSet {
    boost::dynamic_bitset<> bits;

    bool contains(int id) const { return id >= 0 && bits.test(static_cast<std::size_t>(id)); }
    std::size_t size() const { return bits.count(); }

    friend bool operator==(const BeliefSet& a, const BeliefSet& b) { return a.bits == b.bits; }
};

inline std::vector<std::string> literal_strings(const BeliefSet& b, const AtomTable& atoms) {
    std::vector<std::string> out;
    for (std::size_t i = b.bits.find_first(); i != boost::dynamic_bitset<>::npos;
         i = b.bits.find_next(i))
        out.push_back(to_string(atoms.literals[i]));
    std::sort(out.begin(), out.end());
    return out;
}

inline std::string to_string(const BeliefSet& b, const AtomTable& atoms) {
    std::string out = "{";
    for (const std::string& s : literal_strings(b, atoms)) out += " " + s;
    return out + " }";
}

// Canonical order: cardinality, then lexicographic on the printed literals.
inline bool belief_set_less(const BeliefSet& a, const BeliefSet& b, const AtomTable& atoms) {
    std::size_t ca = a.size(), cb = b.size();
    if (ca != cb) return ca < cb;
    return literal_strings(a, atoms) < literal_strings(b, atoms);
}

inline bool is_consistent(const BeliefSet& b, const AtomTable& atoms) {
    for (std::size_t i = b.bits.find_first(); i != boost::dynamic_bitset<>::npos;
         i = b.bits.find_next(i)) {
        int comp = atoms.strong_complement[i];
        if (comp >= 0 && b.bits.test(static_cast<std::size_t>(comp))) return false;
    }
    return true;
}

// ── satisfaction ────────────────────────────────────────────────────────────

// Depth 0 and 2 require membership, depth 1 requires absence.
inline bool satisfies_ext(const BeliefSet& b, const ExtLiteral& e, const AtomTable& atoms) {
    bool holds = b.contains(atoms.find(e.lit));
    return e.depth == 1 ? !holds : holds;
}

namespace detail {

inline bool satisfies_rule(const BeliefSet& b, const Rule& r, const AtomTable& atoms) {
    for (const BodyElement& e : r.body) {
        if (!satisfies_ext(b, std::get<ExtLiteral>(e), atoms)) return true;
    }
    for (const ObjectiveLiteral& h : r.head)
        if (b.contains(atoms.find(h))) return true;
    return false;
}

inline void require_subjective_free(const GroundProgram& g, const char* op) {
    for (const Rule& r : g.rules)
        for (const BodyElement& e : r.body)
            if (is_subjective(e))
                throw std::invalid_argument(std::string(op) + ": program has subjective elements");
}

}  // namespace detail

// ── reduct ──────────────────────────────────────────────────────────────────

// Disjunctive rules with depth-0 bodies only.
struct PositiveProgram {
    std::vector<Rule> rules;
};

// Gelfond-Lifschitz reduct of a subjective-free ground program with respect
// to a candidate: elements of depth >= 1 are evaluated against s (a rule
// with a falsified element is dropped), depth-0 elements are kept.
inline PositiveProgram gl_reduct(const GroundProgram& g, const BeliefSet& s) {
    detail::require_subjective_free(g, "gl_reduct");
    PositiveProgram out;
    for (const Rule& r : g.rules) {
        Rule kept;
        kept.kind = RuleKind::Regular;
        kept.head = r.head;
        kept.pos = r.pos;
        bool dropped = false;
        for (const BodyElement& e : r.body) {
            const auto& ext = std::get<ExtLiteral>(e);
            if (ext.depth == 0) {
                kept.body.push_back(ext);
            } else if (!satisfies_ext(s, ext, g.atoms)) {
                dropped = true;
                break;
            }
        }
        if (!dropped) out.rules.push_back(std::move(kept));
    }
    return out;
}

// ── answer set search ───────────────────────────────────────────────────────

struct AnswerSetOptions {
    std::uint64_t candidate_cap = kDefaultCandidateCap;
    bool full_candidate_space = false;  // all table literals instead of head literals
};

namespace detail {

struct CompiledElem {
    int lit;
    int depth;
};

struct CompiledRule {
    std::vector<int> head;
    std::vector<CompiledElem> body;
};

struct CompiledProgram {
    int num_lits = 0;
    std::vector<CompiledRule> rules;
    std::vector<std::vector<int>> watched;  // lit -> rules containing it
    std::vector<int> head_lits;             // sorted unique
};

inline CompiledProgram compile(const GroundProgram& g) {
    require_subjective_free(g, "answer_sets");
    CompiledProgram out;
    out.num_lits = g.atoms.size();
    out.watched.resize(g.atoms.size());
    std::set<int> heads;
    for (const Rule& r : g.rules) {
        CompiledRule cr;
        std::set<int> touched;
        for (const ObjectiveLiteral& h : r.head) {
            int id = g.atoms.find(h);
            cr.head.push_back(id);
            heads.insert(id);
            touched.insert(id);
        }
        for (const BodyElement& e : r.body) {
            const auto& ext = std::get<ExtLiteral>(e);
            int id = g.atoms.find(ext.lit);
            cr.body.push_back({id, ext.depth});
            touched.insert(id);
        }
        int idx = static_cast<int>(out.rules.size());
        for (int id : touched) out.watched[id].push_back(idx);
        out.rules.push_back(std::move(cr));
    }
    out.head_lits.assign(heads.begin(), heads.end());
    return out;
}

// Depth-first enumeration of consistent candidate sets with early rejection:
// a branch dies as soon as every element of some rule body is decided true
// while every head literal is decided false.
class AnswerSetSearch {
public:
    AnswerSetSearch(const GroundProgram& g, const AnswerSetOptions& opts)
        : ground_(g), prog_(compile(g)), opts_(opts) {
        order_ = opts.full_candidate_space
                     ? all_lits()
                     : prog_.head_lits;
        position_.assign(prog_.num_lits, -1);
        for (std::size_t i = 0; i < order_.size(); ++i) position_[order_[i]] = static_cast<int>(i);
        current_.bits.resize(prog_.num_lits);
    }

    std::vector<BeliefSet> run() {
        models_.clear();
        // Rules over pre-decided literals only (constraints with an empty
        // reduct body among them) are never reached through watch lists.
        for (const CompiledRule& r : prog_.rules)
            if (violated(r, 0)) return models_;
        descend(0);
        std::sort(models_.begin(), models_.end(), [&](const BeliefSet& a, const BeliefSet& b) {
            return belief_set_less(a, b, ground_.atoms);
        });
        return models_;
    }

private:
    std::vector<int> all_lits() const {
        std::vector<int> out(prog_.num_lits);
        for (int i = 0; i < prog_.num_lits; ++i) out[i] = i;
        return out;
    }

    bool decided(int lit, int next) const {
        int pos = position_[lit];
        return pos < 0 || pos < next;
    }

    // Rule is fully falsified by the decided part of the assignment.
    bool violated(const CompiledRule& r, int next) const {
        for (const CompiledElem& e : r.body) {
            if (!decided(e.lit, next)) return false;
            bool holds = current_.bits.test(static_cast<std::size_t>(e.lit));
            if (e.depth == 1 ? holds : !holds) return false;
        }
        for (int h : r.head) {
            if (!decided(h, next)) return false;
            if (current_.bits.test(static_cast<std::size_t>(h))) return false;
        }
        return true;
    }

    bool any_violated_watching(int lit, int next) const {
        for (int idx : prog_.watched[lit])
            if (violated(prog_.rules[idx], next)) return true;
        return false;
    }

    void descend(int depth) {
        if (depth == static_cast<int>(order_.size())) {
            leaf();
            return;
        }
        int lit = order_[depth];
        int comp = ground_.atoms.strong_complement[lit];
        bool comp_in = comp >= 0 && decided(comp, depth) &&
                       current_.bits.test(static_cast<std::size_t>(comp));
        if (!comp_in) {
            current_.bits.set(static_cast<std::size_t>(lit));
            if (!any_violated_watching(lit, depth + 1)) descend(depth + 1);
            current_.bits.reset(static_cast<std::size_t>(lit));
        }
        if (!any_violated_watching(lit, depth + 1)) descend(depth + 1);
    }

    void charge(std::uint64_t n = 1) {
        tested_ += n;
        if (tested_ > opts_.candidate_cap)
            throw ResourceLimitError("answer set search exceeded the candidate cap");
    }

    // All rules are fully decided and none is violated, so the candidate is
    // a consistent model; it remains to check minimality of the reduct.
    void leaf() {
        charge();
        if (minimal()) models_.push_back(current_);
    }

    bool minimal() {
        std::vector<int> members;
        for (std::size_t i = current_.bits.find_first(); i != boost::dynamic_bitset<>::npos;
             i = current_.bits.find_next(i))
            members.push_back(static_cast<int>(i));
        std::size_t m = members.size();
        if (m == 0) return true;
        if (m > 62) throw ResourceLimitError("candidate too large for minimality check");

        std::vector<int> member_pos(prog_.num_lits, -1);
        for (std::size_t i = 0; i < m; ++i) member_pos[members[i]] = static_cast<int>(i);

        // Reduct rules that can distinguish subsets of the candidate: all
        // depth >= 1 elements true under it and depth-0 body inside it.
        // Heads are restricted to the candidate; every model below the
        // candidate picks its head atoms from there.
        std::vector<std::pair<std::uint64_t, std::uint64_t>> clauses;  // (body, head)
        for (const CompiledRule& r : prog_.rules) {
            bool relevant = true;
            std::uint64_t body = 0;
            for (const CompiledElem& e : r.body) {
                bool holds = current_.bits.test(static_cast<std::size_t>(e.lit));
                if (e.depth == 0) {
                    if (!holds) {
                        relevant = false;
                        break;
                    }
                    body |= std::uint64_t(1) << member_pos[e.lit];
                } else if (e.depth == 1 ? holds : !holds) {
                    relevant = false;
                    break;
                }
            }
            if (!relevant) continue;
            std::uint64_t head = 0;
            for (int h : r.head)
                if (member_pos[h] >= 0) head |= std::uint64_t(1) << member_pos[h];
            clauses.emplace_back(body, head);
        }

        std::uint64_t full = (std::uint64_t(1) << m) - 1;

        // Unit propagation: a clause whose body is already forced and whose
        // head has a single atom forces that atom into every model below the
        // candidate.  If everything is forced the candidate is minimal.
        std::uint64_t forced = 0;
        bool grew = true;
        while (grew) {
            grew = false;
            for (const auto& [body, head] : clauses) {
                if ((forced & body) == body && (head & (head - 1)) == 0 && head != 0 &&
                    (forced & head) == 0) {
                    forced |= head;
                    grew = true;
                }
            }
        }
        if (forced == full) return true;

        auto is_model = [&](std::uint64_t sub) {
            for (const auto& [body, head] : clauses)
                if ((sub & body) == body && (sub & head) == 0) return false;
            return true;
        };

        // Single-removal pass catches unsupported atoms cheaply before the
        // exponential sweep over the unforced remainder.
        std::uint64_t free_bits = full & ~forced;
        for (std::size_t i = 0; i < m; ++i) {
            std::uint64_t bit = std::uint64_t(1) << i;
            if ((free_bits & bit) == 0) continue;
            charge();
            if (is_model(full & ~bit)) return false;
        }

        // Remaining models all contain the forced part, so only subsets of
        // the free bits need checking.
        for (std::uint64_t sub = (free_bits - 1) & free_bits;; sub = (sub - 1) & free_bits) {
            charge();
            if (is_model(forced | sub)) return false;
            if (sub == 0) break;
        }
        return true;
    }

    const GroundProgram& ground_;
    CompiledProgram prog_;
    AnswerSetOptions opts_;
    std::vector<int> order_;
    std::vector<int> position_;
    BeliefSet current_;
    std::vector<BeliefSet> models_;
    std::uint64_t tested_ = 0;
};

}  // namespace detail

// Answer sets of a subjective-free ground program, in canonical order
// (cardinality, then lexicographic printed form).
inline std::vector<BeliefSet> answer_sets(const GroundProgram& g,
                                          const AnswerSetOptions& opts = {}) {
    return detail::AnswerSetSearch(g, opts).run();
}

// Direct definition, usable as a cross-check: s is consistent, satisfies
// every rule, and no proper subset of s satisfies the reduct wrt s.
inline bool is_answer_set(const GroundProgram& g, const BeliefSet& s) {
    detail::require_subjective_free(g, "is_answer_set");
    if (!is_consistent(s, g.atoms)) return false;
    for (const Rule& r : g.rules)
        if (!detail::satisfies_rule(s, r, g.atoms)) return false;

    PositiveProgram reduct = gl_reduct(g, s);
    std::vector<int> members;
    for (std::size_t i = s.bits.find_first(); i != boost::dynamic_bitset<>::npos;
         i = s.bits.find_next(i))
        members.push_back(static_cast<int>(i));
    std::size_t m = members.size();
    if (m == 0) return true;
    if (m > 62) throw ResourceLimitError("candidate too large for minimality check");

    for (std::uint64_t sub = ((std::uint64_t(1) << m) - 2);; --sub) {
        BeliefSet t;
        t.bits.resize(g.atoms.size());
        for (std::size_t i = 0; i < m; ++i)
            if (sub & (std::uint64_t(1) << i)) t.bits.set(static_cast<std::size_t>(members[i]));
        bool model = true;
        for (const Rule& r : reduct.rules) {
            bool body_in = true;
            for (const BodyElement& e : r.body)
                if (!t.contains(g.atoms.find(std::get<ExtLiteral>(e).lit))) {
                    body_in = false;
                    break;
                }
            if (!body_in) continue;
            bool head_in = false;
            for (const ObjectiveLiteral& h : r.head)
                if (t.contains(g.atoms.find(h))) {
                    head_in = true;
                    break;
                }
            if (!head_in) {
                model = false;
                break;
            }
        }
        if (model) return false;
        if (sub == 0) break;
    }
    return true;
}

// ── consequences ────────────────────────────────────────────────────────────

struct LiteralSet {
    boost::dynamic_bitset<> bits;
    bool vacuous = false;  // cautious consequences of a program without answer sets
};

// Union of all answer sets; empty when there are none.
inline LiteralSet brave_consequences(const GroundProgram& g, const AnswerSetOptions& opts = {}) {
    LiteralSet out;
    out.bits.resize(g.atoms.size());
    for (const BeliefSet& b : answer_sets(g, opts)) out.bits |= b.bits;
    return out;
}

// Intersection of all answer sets; over zero answer sets the intersection is
// vacuous and contains every table literal, flagged in the result.
inline LiteralSet cautious_consequences(const GroundProgram& g, const AnswerSetOptions& opts = {}) {
    LiteralSet out;
    out.bits.resize(g.atoms.size());
    std::vector<BeliefSet> models = answer_sets(g, opts);
    if (models.empty()) {
        out.bits.set();
        out.vacuous = true;
        return out;
    }
    out.bits = models.front().bits;
    for (const BeliefSet& b : models) out.bits &= b.bits;
    return out;
}

}  // namespace elp

#endif  // ELP_ASPCORE_HPP
