// ============================================================================
// elp/search.hpp -- world view search over the guess space
// ============================================================================
//
// Strategies:
//
//   maximal_first  cardinality levels from |EP| down to 0; once a guess is
//                  accepted its proper subsets are skipped, so es2016
//                  maximality holds by construction.  The skip set only
//                  grows at level boundaries, which keeps multi-worker runs
//                  byte-identical.
//   exhaustive    every guess in ascending bitmask order, no skipping;
//                  es2016 keeps the maximal accepted guesses afterwards.
//   framework     candidate guesses are read off the answer sets of the
//                  reduct framework, then verified as usual.
//
// Consequence pruning solves the framework once and fixes negations whose
// status is the same in every framework answer set; guesses disagreeing
// with the fixed bits are discarded unsolved.
//
// World view constraints apply to finished world views: a world view is
// dropped when it satisfies the body of some constraint.  Maximality is
// decided before that filter.
// ============================================================================

#ifndef ELP_SEARCH_HPP
#define ELP_SEARCH_HPP

#include <cstdint>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "elp/epistemic.hpp"

namespace elp {

enum class Strategy { MaximalFirst, Exhaustive, Framework };

inline std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::MaximalFirst: return "maximal-first";
        case Strategy::Exhaustive: return "exhaustive";
        default: return "framework";
    }
}

inline std::optional<Strategy> strategy_from_string(const std::string& s) {
    if (s == "maximal-first") return Strategy::MaximalFirst;
    if (s == "exhaustive") return Strategy::Exhaustive;
    if (s == "framework") return Strategy::Framework;
    return std::nullopt;
}

struct SolveOptions {
    Strategy strategy = Strategy::MaximalFirst;
    int max_world_views = 0;  // 0 = all
    int workers = 1;
    int group_size = 16;
    bool guess_filter = true;
    bool consequence_pruning = true;
    std::uint64_t candidate_cap = kDefaultCandidateCap;
};

struct SearchStats {
    std::uint64_t enumerated = 0;  // filtered + pruned + skipped + solved
    std::uint64_t filtered = 0;    // rejected by the validity filter
    std::uint64_t pruned = 0;      // rejected by consequence pruning
    std::uint64_t skipped = 0;     // subsets of accepted guesses
    std::uint64_t solved = 0;      // reducts actually solved
    std::uint64_t reduct_solves = 0;
};

struct SolveReport {
    Semantics semantics = Semantics::ES2016;
    SolveOptions options;
    std::vector<EpistemicNegation> negations;
    AtomTable atoms;
    std::vector<WorldView> world_views;
    SearchStats stats;
};

// ── guess enumeration ───────────────────────────────────────────────────────

enum class GuessOrder { MaximalFirst, Exhaustive };

// Streams guesses in the order of the chosen strategy.  With skipping
// enabled, proper subsets of accepted guesses are withheld and counted.
// Levels of the maximal-first order never contain subset pairs, so accepting
// within a level cannot starve it.
class GuessEnumerator {
public:
    GuessEnumerator(std::size_t ep_size, GuessOrder order, bool skipping)
        : n_(ep_size), order_(order), skipping_(skipping) {
        if (order_ == GuessOrder::MaximalFirst) {
            level_ = static_cast<int>(n_);
            init_level();
        }
    }

    std::optional<Guess> next() {
        if (!peek()) return std::nullopt;
        ++enumerated_;
        Guess g = std::move(*pending_);
        pending_.reset();
        return g;
    }

    // All guesses of the next cardinality level (maximal-first) or one chunk
    // of the given size (exhaustive).
    std::vector<Guess> next_batch(std::size_t chunk) {
        std::vector<Guess> out;
        if (order_ == GuessOrder::MaximalFirst) {
            while (const Guess* p = peek()) {
                if (!out.empty() && p->count() != out.front().count()) break;
                out.push_back(*next());
            }
        } else {
            while (out.size() < chunk) {
                auto g = next();
                if (!g) break;
                out.push_back(std::move(*g));
            }
        }
        return out;
    }

    void mark_accepted(const Guess& g) { accepted_.push_back(g); }

    std::uint64_t enumerated() const { return enumerated_; }
    std::uint64_t skipped() const { return skipped_; }
    bool done() { return peek() == nullptr; }

private:
    // Next deliverable guess, left in the buffer.  Skip checks run here, so
    // a guess buffered before mark_accepted is re-examined on delivery.
    const Guess* peek() {
        while (true) {
            if (!pending_) pending_ = raw_next();
            if (!pending_) return nullptr;
            if (skipping_ && subset_of_accepted(*pending_)) {
                ++enumerated_;
                ++skipped_;
                pending_.reset();
                continue;
            }
            return &*pending_;
        }
    }

    void init_level() {
        combo_.resize(static_cast<std::size_t>(level_));
        for (int i = 0; i < level_; ++i) combo_[static_cast<std::size_t>(i)] = i;
        level_fresh_ = true;
    }

    bool advance_combo() {
        // Next k-combination of {0..n-1} in lexicographic order.
        int k = level_;
        for (int i = k - 1; i >= 0; --i) {
            if (combo_[static_cast<std::size_t>(i)] < static_cast<int>(n_) - (k - i)) {
                ++combo_[static_cast<std::size_t>(i)];
                for (int j = i + 1; j < k; ++j)
                    combo_[static_cast<std::size_t>(j)] = combo_[static_cast<std::size_t>(j - 1)] + 1;
                return true;
            }
        }
        return false;
    }

    std::optional<Guess> raw_next() {
        if (done_) return std::nullopt;
        if (order_ == GuessOrder::Exhaustive) {
            if (mask_ >= (std::uint64_t(1) << n_)) {
                done_ = true;
                return std::nullopt;
            }
            Guess g;
            g.bits.resize(n_);
            for (std::size_t i = 0; i < n_; ++i)
                if (mask_ & (std::uint64_t(1) << i)) g.bits.set(i);
            ++mask_;
            return g;
        }
        while (true) {
            if (level_ < 0) {
                done_ = true;
                return std::nullopt;
            }
            if (!level_fresh_ && !advance_combo()) {
                --level_;
                if (level_ < 0) {
                    done_ = true;
                    return std::nullopt;
                }
                init_level();
            }
            level_fresh_ = false;
            Guess g;
            g.bits.resize(n_);
            for (int i = 0; i < level_; ++i)
                g.bits.set(static_cast<std::size_t>(combo_[static_cast<std::size_t>(i)]));
            return g;
        }
    }

    bool subset_of_accepted(const Guess& g) const {
        for (const Guess& a : accepted_)
            if (g.proper_subset_of(a)) return true;
        return false;
    }

    std::size_t n_;
    GuessOrder order_;
    bool skipping_;
    bool done_ = false;
    std::optional<Guess> pending_;
    std::uint64_t mask_ = 0;            // exhaustive state
    int level_ = -1;                    // maximal-first state
    bool level_fresh_ = false;
    std::vector<int> combo_;
    std::vector<Guess> accepted_;
    std::uint64_t enumerated_ = 0;
    std::uint64_t skipped_ = 0;
};

inline std::vector<std::vector<Guess>> partition_groups(const std::vector<Guess>& guesses,
                                                        std::size_t group_size) {
    if (group_size == 0) throw std::invalid_argument("partition_groups: group size must be positive");
    std::vector<std::vector<Guess>> out;
    for (std::size_t i = 0; i < guesses.size(); i += group_size) {
        out.emplace_back(guesses.begin() + static_cast<std::ptrdiff_t>(i),
                         guesses.begin() + static_cast<std::ptrdiff_t>(
                                               std::min(i + group_size, guesses.size())));
    }
    return out;
}

// ── framework solving, pruning and candidates ───────────────────────────────

// One framework solve shared by consequence pruning and the framework
// strategy: answer sets of the emitted program, split into the guess the
// guard atoms encode and the projection onto the original atom table.
struct FrameworkSolve {
    std::vector<Guess> guesses;        // per framework answer set
    std::vector<BeliefSet> projected;  // per framework answer set
};

inline FrameworkSolve solve_framework(const GroundProgram& g,
                                      const std::vector<EpistemicNegation>& ep, Semantics sem,
                                      std::uint64_t candidate_cap = kDefaultCandidateCap) {
    GroundProgram fw = ground_program(normalize(parse_program(emit_reduct_framework(g, sem))));
    AnswerSetOptions opts;
    opts.candidate_cap = candidate_cap;
    std::vector<BeliefSet> models = answer_sets(fw, opts);

    std::vector<int> guard_ids(ep.size(), -1);
    for (std::size_t i = 0; i < ep.size(); ++i) {
        ObjectiveLiteral guard{Atom{detail::guard_atom(i, true), {}}, false};
        guard_ids[i] = fw.atoms.find(guard);
    }
    std::vector<int> original_ids(static_cast<std::size_t>(fw.atoms.size()), -1);
    for (int i = 0; i < fw.atoms.size(); ++i)
        original_ids[static_cast<std::size_t>(i)] =
            g.atoms.find(fw.atoms.literals[static_cast<std::size_t>(i)]);

    FrameworkSolve out;
    for (const BeliefSet& b : models) {
        Guess phi;
        phi.bits.resize(ep.size());
        for (std::size_t i = 0; i < ep.size(); ++i)
            if (b.contains(guard_ids[i])) phi.bits.set(i);
        BeliefSet proj;
        proj.bits.resize(g.atoms.size());
        for (std::size_t i = b.bits.find_first(); i != boost::dynamic_bitset<>::npos;
             i = b.bits.find_next(i)) {
            int orig = original_ids[i];
            if (orig >= 0) proj.bits.set(static_cast<std::size_t>(orig));
        }
        out.guesses.push_back(std::move(phi));
        out.projected.push_back(std::move(proj));
    }
    return out;
}

// Negation statuses shared by every framework answer set.  forced_in bits
// must be guessed, forced_out bits must not; guesses violating them cannot
// verify.  An empty framework fixes nothing.
struct PartialAssignment {
    boost::dynamic_bitset<> forced_in;
    boost::dynamic_bitset<> forced_out;

    bool consistent_with(const Guess& phi) const {
        if (forced_in.empty()) return true;
        return forced_in.is_subset_of(phi.bits) && !phi.bits.intersects(forced_out);
    }
};

inline PartialAssignment prune_with_consequences(const GroundProgram& g,
                                                 const std::vector<EpistemicNegation>& ep,
                                                 const FrameworkSolve& fw) {
    PartialAssignment out;
    out.forced_in.resize(ep.size());
    out.forced_out.resize(ep.size());
    if (fw.projected.empty()) return out;
    for (std::size_t i = 0; i < ep.size(); ++i) {
        bool all_hold = true, none_hold = true;
        for (const BeliefSet& b : fw.projected) {
            if (satisfies_ext(b, ep[i].target, g.atoms))
                none_hold = false;
            else
                all_hold = false;
        }
        // Negation satisfied means the target fails somewhere; a target that
        // holds in every reachable belief set can never be guessed, one that
        // fails everywhere always must be.
        if (all_hold) out.forced_out.set(i);
        if (none_hold) out.forced_in.set(i);
    }
    return out;
}

inline PartialAssignment prune_with_consequences(const GroundProgram& g, Semantics sem) {
    std::vector<EpistemicNegation> ep = collect_epistemic_negations(g);
    return prune_with_consequences(g, ep, solve_framework(g, ep, sem));
}

// Deduplicated guesses read off the framework answer sets, ordered like the
// maximal-first stream (descending cardinality, then lexicographic).
inline std::vector<Guess> framework_driven_candidates(const FrameworkSolve& fw) {
    std::vector<Guess> out;
    for (const Guess& g : fw.guesses) {
        bool seen = false;
        for (const Guess& o : out)
            if (o == g) {
                seen = true;
                break;
            }
        if (!seen) out.push_back(g);
    }
    std::sort(out.begin(), out.end(), [](const Guess& a, const Guess& b) {
        if (a.count() != b.count()) return a.count() > b.count();
        return b.bits < a.bits;
    });
    return out;
}

inline std::vector<Guess> framework_driven_candidates(const GroundProgram& g, Semantics sem) {
    std::vector<EpistemicNegation> ep = collect_epistemic_negations(g);
    return framework_driven_candidates(solve_framework(g, ep, sem));
}

// ── world view constraints ──────────────────────────────────────────────────

// Keeps the world views that satisfy no constraint body.  Bodies are
// conjunctions of subjective elements evaluated against the whole view.
inline std::vector<WorldView> apply_wvcs(std::vector<WorldView> views,
                                         const std::vector<Rule>& wvcs, const AtomTable& atoms) {
    if (wvcs.empty()) return views;
    std::vector<WorldView> out;
    for (WorldView& wv : views) {
        bool dropped = false;
        for (const Rule& c : wvcs) {
            bool body_holds = true;
            for (const BodyElement& e : c.body) {
                if (!satisfies_subjective(wv.belief_sets, std::get<SubjectiveElement>(e), atoms)) {
                    body_holds = false;
                    break;
                }
            }
            if (body_holds) {
                dropped = true;
                break;
            }
        }
        if (!dropped) out.push_back(std::move(wv));
    }
    return out;
}

// ── solve ───────────────────────────────────────────────────────────────────

namespace detail {

enum class GuessFate { Pruned, Filtered, Rejected, Accepted };

struct GuessResult {
    GuessFate fate = GuessFate::Rejected;
    bool solved = false;
    std::vector<BeliefSet> belief_sets;
};

// Guesses with EP[0] as the most significant bit, descending; larger guesses
// on the leading negations come first.
inline bool canonical_guess_before(const Guess& a, const Guess& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        bool ba = a.test(i), bb = b.test(i);
        if (ba != bb) return ba;
    }
    return false;
}

class Solver {
public:
    Solver(const GroundProgram& g, Semantics sem, const SolveOptions& opts)
        : g_(g), sem_(sem), opts_(opts), ep_(collect_epistemic_negations(g)) {
        if (opts_.workers < 1) throw std::invalid_argument("solve: workers must be positive");
        if (opts_.group_size < 1) throw std::invalid_argument("solve: group size must be positive");
    }

    SolveReport run() {
        SolveReport report;
        report.semantics = sem_;
        report.options = opts_;
        report.negations = ep_;
        report.atoms = g_.atoms;

        bool needs_framework =
            opts_.strategy == Strategy::Framework || (opts_.consequence_pruning && !ep_.empty());
        if (needs_framework) {
            framework_ = solve_framework(g_, ep_, sem_, opts_.candidate_cap);
            ++report.stats.reduct_solves;
        }
        if (opts_.consequence_pruning && !ep_.empty())
            partial_ = prune_with_consequences(g_, ep_, framework_);

        std::vector<WorldView> accepted;  // pre-wvc, in acceptance order
        if (opts_.strategy == Strategy::Framework) {
            std::vector<Guess> candidates = framework_driven_candidates(framework_);
            report.stats.enumerated = candidates.size();
            process_batch(candidates, accepted, report.stats);
        } else {
            GuessOrder order = opts_.strategy == Strategy::MaximalFirst ? GuessOrder::MaximalFirst
                                                                        : GuessOrder::Exhaustive;
            bool skipping = opts_.strategy == Strategy::MaximalFirst && sem_ == Semantics::ES2016;
            GuessEnumerator stream(ep_.size(), order, skipping);
            while (true) {
                std::vector<Guess> batch = stream.next_batch(
                    static_cast<std::size_t>(opts_.group_size) *
                    static_cast<std::size_t>(opts_.workers));
                if (batch.empty()) break;
                std::size_t before = accepted.size();
                process_batch(batch, accepted, report.stats);
                for (std::size_t i = before; i < accepted.size(); ++i)
                    stream.mark_accepted(accepted[i].guess);
                if (opts_.strategy == Strategy::MaximalFirst && opts_.max_world_views > 0) {
                    std::vector<WorldView> so_far = apply_wvcs(accepted, g_.wvcs, g_.atoms);
                    if (static_cast<int>(so_far.size()) >= opts_.max_world_views) break;
                }
            }
            report.stats.enumerated = stream.enumerated();
            report.stats.skipped = stream.skipped();
        }

        // es2016 keeps only maximal accepted guesses.  The maximal-first
        // stream guarantees this by skipping; the other strategies filter
        // here, before world view constraints.
        if (sem_ == Semantics::ES2016) accepted = antichain(std::move(accepted));
        std::vector<WorldView> views = apply_wvcs(std::move(accepted), g_.wvcs, g_.atoms);
        std::sort(views.begin(), views.end(), [](const WorldView& a, const WorldView& b) {
            return canonical_guess_before(a.guess, b.guess);
        });
        if (opts_.max_world_views > 0 &&
            static_cast<int>(views.size()) > opts_.max_world_views)
            views.resize(static_cast<std::size_t>(opts_.max_world_views));
        report.world_views = std::move(views);
        return report;
    }

private:
    static std::vector<WorldView> antichain(std::vector<WorldView> accepted) {
        std::vector<bool> dominated(accepted.size(), false);
        for (std::size_t i = 0; i < accepted.size(); ++i)
            for (std::size_t j = 0; j < accepted.size(); ++j)
                if (accepted[i].guess.proper_subset_of(accepted[j].guess)) {
                    dominated[i] = true;
                    break;
                }
        std::vector<WorldView> out;
        for (std::size_t i = 0; i < accepted.size(); ++i)
            if (!dominated[i]) out.push_back(std::move(accepted[i]));
        return out;
    }

    GuessResult examine(const Guess& phi) const {
        GuessResult result;
        if (!partial_.consistent_with(phi)) {
            result.fate = GuessFate::Pruned;
            return result;
        }
        if (opts_.guess_filter && !is_valid_guess(ep_, phi)) {
            result.fate = GuessFate::Filtered;
            return result;
        }
        result.solved = true;
        AnswerSetOptions as_opts;
        as_opts.candidate_cap = opts_.candidate_cap;
        GroundProgram reduct = epistemic_reduct(g_, ep_, phi, sem_);
        std::vector<BeliefSet> models = answer_sets(reduct, as_opts);
        if (verify_guess(g_, ep_, phi, models)) {
            result.fate = GuessFate::Accepted;
            result.belief_sets = std::move(models);
        }
        return result;
    }

    // Verifies one batch across the workers; results merge in batch order so
    // the outcome is independent of scheduling.
    void process_batch(const std::vector<Guess>& batch, std::vector<WorldView>& accepted,
                       SearchStats& stats) {
        std::vector<GuessResult> results(batch.size());
        if (opts_.workers == 1 || batch.size() <= 1) {
            for (std::size_t i = 0; i < batch.size(); ++i) results[i] = examine(batch[i]);
        } else {
            std::vector<std::vector<Guess>> groups =
                partition_groups(batch, static_cast<std::size_t>(opts_.group_size));
            std::vector<std::thread> pool;
            std::vector<std::exception_ptr> errors(static_cast<std::size_t>(opts_.workers));
            for (int w = 0; w < opts_.workers; ++w) {
                pool.emplace_back([&, w] {
                    try {
                        for (std::size_t gi = static_cast<std::size_t>(w); gi < groups.size();
                             gi += static_cast<std::size_t>(opts_.workers)) {
                            std::size_t base = gi * static_cast<std::size_t>(opts_.group_size);
                            for (std::size_t k = 0; k < groups[gi].size(); ++k)
                                results[base + k] = examine(groups[gi][k]);
                        }
                    } catch (...) {
                        errors[static_cast<std::size_t>(w)] = std::current_exception();
                    }
                });
            }
            for (std::thread& t : pool) t.join();
            for (const std::exception_ptr& e : errors)
                if (e) std::rethrow_exception(e);
        }
        for (std::size_t i = 0; i < batch.size(); ++i) {
            GuessResult& r = results[i];
            if (r.solved) {
                ++stats.solved;
                ++stats.reduct_solves;
            }
            switch (r.fate) {
                case GuessFate::Pruned: ++stats.pruned; break;
                case GuessFate::Filtered: ++stats.filtered; break;
                case GuessFate::Rejected: break;
                case GuessFate::Accepted: {
                    WorldView wv;
                    wv.guess = batch[i];
                    wv.semantics = sem_;
                    wv.belief_sets = std::move(r.belief_sets);
                    accepted.push_back(std::move(wv));
                    break;
                }
            }
        }
    }

    const GroundProgram& g_;
    Semantics sem_;
    SolveOptions opts_;
    std::vector<EpistemicNegation> ep_;
    FrameworkSolve framework_;
    PartialAssignment partial_;
};

}  // namespace detail

// World views of a normalized ground program under the given semantics, in
// canonical order: guesses as bit strings with the first negation most
// significant, descending.
inline SolveReport solve(const GroundProgram& g, Semantics sem, const SolveOptions& opts = {}) {
    return detail::Solver(g, sem, opts).run();
}

}  // namespace elp

#endif  // ELP_SEARCH_HPP
