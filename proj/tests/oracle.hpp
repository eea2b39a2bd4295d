#pragma once

// Brute-force reference implementations for the property suites.  Everything
// recomputes results from the definitions over plain string sets: candidates
// are drawn from the full powerset of the atom table (not the head-literal
// subset the library searches), reducts come from a second reading of each
// semantics, and world views from checking every guess mask.  Nothing here
// calls into aspcore, epistemic, or search logic; only the AST and the atom
// table are shared.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <elp/ground.hpp>
#include <elp/syntax.hpp>

namespace elp::oracle {

using NaiveSet = std::set<std::string>;

struct NaiveRule {
    std::vector<std::string> head;
    std::vector<std::pair<std::string, int>> body;  // printed literal, depth
};

struct PosRule {
    std::vector<std::string> head;
    std::vector<std::string> body;
};

inline std::string complement_of(const std::string& lit) {
    return lit.rfind('-', 0) == 0 ? lit.substr(1) : "-" + lit;
}

inline bool consistent(const NaiveSet& s) {
    for (const std::string& l : s)
        if (s.count(complement_of(l))) return false;
    return true;
}

// Depth 0 and 2 ask for membership, depth 1 for absence.
inline bool holds(const NaiveSet& s, const std::string& lit, int depth) {
    bool in = s.count(lit) > 0;
    return depth == 1 ? !in : in;
}

inline std::vector<NaiveRule> naive_rules(const GroundProgram& g) {
    std::vector<NaiveRule> out;
    for (const Rule& r : g.rules) {
        NaiveRule n;
        for (const ObjectiveLiteral& h : r.head) n.head.push_back(to_string(h));
        for (const BodyElement& e : r.body) {
            const auto* x = std::get_if<ExtLiteral>(&e);
            if (!x) throw std::logic_error("oracle: subjective element in objective program");
            n.body.emplace_back(to_string(x->lit), x->depth);
        }
        out.push_back(std::move(n));
    }
    return out;
}

// Keep rules whose depth >= 1 elements all hold wrt s; strip them.
inline std::vector<PosRule> naive_reduct(const std::vector<NaiveRule>& rules, const NaiveSet& s) {
    std::vector<PosRule> out;
    for (const NaiveRule& r : rules) {
        PosRule p;
        bool keep = true;
        for (const auto& [lit, d] : r.body) {
            if (d == 0)
                p.body.push_back(lit);
            else if (!holds(s, lit, d)) {
                keep = false;
                break;
            }
        }
        if (!keep) continue;
        p.head = r.head;
        out.push_back(std::move(p));
    }
    return out;
}

inline bool pos_model(const std::vector<PosRule>& rules, const NaiveSet& s) {
    for (const PosRule& r : rules) {
        bool body = true;
        for (const std::string& b : r.body)
            if (!s.count(b)) {
                body = false;
                break;
            }
        if (!body) continue;
        bool head = false;
        for (const std::string& h : r.head)
            if (s.count(h)) {
                head = true;
                break;
            }
        if (!head) return false;
    }
    return true;
}

inline void sort_canonical(std::vector<NaiveSet>& sets) {
    std::sort(sets.begin(), sets.end(), [](const NaiveSet& a, const NaiveSet& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    });
}

// Answer sets straight from the definition: S consistent, S a model of the
// reduct wrt S, and no proper subset of S a model of that reduct.
inline std::vector<NaiveSet> answer_sets_of(const std::vector<NaiveRule>& rules,
                                            const std::vector<std::string>& lits) {
    if (lits.size() > 20) throw std::logic_error("oracle: atom table too large");
    std::vector<NaiveSet> out;
    for (std::uint64_t mask = 0; mask < (1ull << lits.size()); ++mask) {
        NaiveSet s;
        for (std::size_t i = 0; i < lits.size(); ++i)
            if (mask >> i & 1) s.insert(lits[i]);
        if (!consistent(s)) continue;
        std::vector<PosRule> reduct = naive_reduct(rules, s);
        if (!pos_model(reduct, s)) continue;
        std::vector<std::string> members(s.begin(), s.end());
        bool minimal = true;
        std::uint64_t full = (1ull << members.size()) - 1;
        for (std::uint64_t sub = 0; minimal && sub < full; ++sub) {
            NaiveSet t;
            for (std::size_t i = 0; i < members.size(); ++i)
                if (sub >> i & 1) t.insert(members[i]);
            if (pos_model(reduct, t)) minimal = false;
        }
        if (minimal) out.push_back(std::move(s));
    }
    sort_canonical(out);
    return out;
}

inline std::vector<std::string> table_strings(const GroundProgram& g) {
    std::vector<std::string> out;
    for (const ObjectiveLiteral& l : g.atoms.literals) out.push_back(to_string(l));
    return out;
}

inline std::vector<NaiveSet> naive_answer_sets(const GroundProgram& g) {
    return answer_sets_of(naive_rules(g), table_strings(g));
}

// ── epistemic side ──────────────────────────────────────────────────────────

struct NaiveNegation {
    std::string lit;      // printed objective literal of the target
    int depth = 0;        // target depth, 0 or 1
    std::string printed;  // "NOT ..." form
};

// Rebuilds EP from the K/M dualities: K e contributes NOT e, M e contributes
// NOT comp(e).  World view constraint bodies are not consulted.
inline std::vector<NaiveNegation> naive_negations(const GroundProgram& g) {
    std::map<std::string, NaiveNegation> seen;
    for (const Rule& r : g.rules) {
        for (const BodyElement& e : r.body) {
            const auto* s = std::get_if<SubjectiveElement>(&e);
            if (!s) continue;
            std::string lit = to_string(s->inner.lit);
            int depth = s->inner.depth;
            if (s->modal == Modal::M) depth = depth == 0 ? 1 : 0;
            std::string printed = "NOT " + std::string(depth == 1 ? "not " : "") + lit;
            seen.emplace(printed, NaiveNegation{lit, depth, printed});
        }
    }
    std::vector<NaiveNegation> out;
    for (auto& [key, n] : seen) out.push_back(n);
    return out;
}

inline int collapse(int d) {
    if (d <= 2) return d;
    return d % 2 == 1 ? 1 : 2;
}

// Reduct rules for a guess, from a per-semantics reading of each occurrence.
// in_phi is keyed by the negation's printed form.
inline std::vector<NaiveRule> naive_reduct_rules(const GroundProgram& g,
                                                 const std::map<std::string, bool>& in_phi,
                                                 Semantics sem) {
    std::vector<NaiveRule> out;
    for (const Rule& r : g.rules) {
        NaiveRule n;
        bool drop = false;
        for (const BodyElement& e : r.body) {
            if (const auto* x = std::get_if<ExtLiteral>(&e)) {
                n.body.emplace_back(to_string(x->lit), x->depth);
                continue;
            }
            const auto& s = std::get<SubjectiveElement>(e);
            std::string lit = to_string(s.inner.lit);
            int fdepth = s.inner.depth;
            if (s.modal == Modal::M) fdepth = fdepth == 0 ? 1 : 0;
            std::string printed = "NOT " + std::string(fdepth == 1 ? "not " : "") + lit;
            bool in = in_phi.at(printed);
            bool negated = s.modal == Modal::K ? !s.outer_neg : s.outer_neg;
            switch (sem) {
                case Semantics::ES2016:
                    if (in) {
                        if (negated) drop = true;
                    } else {
                        n.body.emplace_back(lit, collapse(fdepth + (negated ? 2 : 1)));
                    }
                    break;
                case Semantics::ES2014:
                    if (in) {
                        if (negated) drop = true;
                    } else {
                        n.body.emplace_back(lit, negated ? fdepth : collapse(fdepth + 1));
                    }
                    break;
                case Semantics::ES1994:
                    if (in == negated) drop = true;
                    break;
            }
            if (drop) break;
        }
        if (drop) continue;
        for (const ObjectiveLiteral& h : r.head) n.head.push_back(to_string(h));
        out.push_back(std::move(n));
    }
    return out;
}

inline bool naive_negation_satisfied(const std::vector<NaiveSet>& w, const NaiveNegation& n) {
    for (const NaiveSet& b : w)
        if (!holds(b, n.lit, n.depth)) return true;
    return false;
}

inline bool naive_subjective_satisfied(const std::vector<NaiveSet>& w,
                                       const SubjectiveElement& s) {
    std::string lit = to_string(s.inner.lit);
    bool val;
    if (s.modal == Modal::K) {
        val = true;
        for (const NaiveSet& b : w)
            if (!holds(b, lit, s.inner.depth)) {
                val = false;
                break;
            }
    } else {
        val = false;
        for (const NaiveSet& b : w)
            if (holds(b, lit, s.inner.depth)) {
                val = true;
                break;
            }
    }
    return s.outer_neg ? !val : val;
}

struct NaiveWorldView {
    std::vector<std::string> guess;  // printed negations in phi, EP order
    std::vector<std::vector<std::string>> belief_sets;
};

// Every guess mask, checked against the definitions; ES2016 keeps maximal
// masks only; world view constraints filter last.
inline std::vector<NaiveWorldView> naive_world_views(const GroundProgram& g, Semantics sem) {
    std::vector<NaiveNegation> ep = naive_negations(g);
    if (ep.size() > 16) throw std::logic_error("oracle: too many epistemic negations");
    std::vector<std::string> lits = table_strings(g);

    struct Cand {
        std::uint64_t mask = 0;
        std::vector<NaiveSet> sets;
    };
    std::vector<Cand> accepted;
    for (std::uint64_t mask = 0; mask < (1ull << ep.size()); ++mask) {
        std::map<std::string, bool> in_phi;
        for (std::size_t i = 0; i < ep.size(); ++i)
            in_phi[ep[i].printed] = (mask >> i & 1) != 0;
        std::vector<NaiveSet> w = answer_sets_of(naive_reduct_rules(g, in_phi, sem), lits);
        if (w.empty()) continue;
        bool ok = true;
        for (std::size_t i = 0; i < ep.size() && ok; ++i)
            ok = naive_negation_satisfied(w, ep[i]) == ((mask >> i & 1) != 0);
        if (ok) accepted.push_back({mask, std::move(w)});
    }

    if (sem == Semantics::ES2016) {
        std::vector<Cand> keep;
        for (const Cand& c : accepted) {
            bool dominated = false;
            for (const Cand& d : accepted)
                if (c.mask != d.mask && (c.mask & d.mask) == c.mask) dominated = true;
            if (!dominated) keep.push_back(c);
        }
        accepted = std::move(keep);
    }

    std::vector<Cand> filtered;
    for (Cand& c : accepted) {
        bool drop = false;
        for (const Rule& wvc : g.wvcs) {
            bool all = true;
            for (const BodyElement& e : wvc.body)
                if (!naive_subjective_satisfied(c.sets, std::get<SubjectiveElement>(e))) {
                    all = false;
                    break;
                }
            if (all) {
                drop = true;
                break;
            }
        }
        if (!drop) filtered.push_back(std::move(c));
    }

    // EP[0] is the most significant position.
    std::sort(filtered.begin(), filtered.end(), [&](const Cand& a, const Cand& b) {
        for (std::size_t i = 0; i < ep.size(); ++i) {
            bool ai = (a.mask >> i & 1) != 0;
            bool bi = (b.mask >> i & 1) != 0;
            if (ai != bi) return ai;
        }
        return false;
    });

    std::vector<NaiveWorldView> out;
    for (const Cand& c : filtered) {
        NaiveWorldView v;
        for (std::size_t i = 0; i < ep.size(); ++i)
            if (c.mask >> i & 1) v.guess.push_back(ep[i].printed);
        for (const NaiveSet& b : c.sets)
            v.belief_sets.emplace_back(b.begin(), b.end());
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace elp::oracle
