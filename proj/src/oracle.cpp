#include "monaut/oracle.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "monaut/universal.hpp"

namespace monaut {

BuchiAutomaton random_model_automaton(const VariableSignature& sig,
                                      const RandomAutomatonOptions& options) {
    std::mt19937_64 rng(options.seed);
    std::bernoulli_distribution has_transition(options.transition_density);
    std::bernoulli_distribution is_accepting(options.accepting_probability);

    TransitionSystem ts;
    ts.signature = sig;
    ts.state_count = options.state_count;
    const std::uint64_t alphabet = std::uint64_t{1} << sig.width();
    for (StateId src = 0; src < options.state_count; ++src) {
        for (std::uint64_t bits = 0; bits < alphabet; ++bits) {
            for (StateId dst = 0; dst < options.state_count; ++dst) {
                if (has_transition(rng)) {
                    ts.transitions.push_back(
                        {src, Label::symbol(Symbol(bits, sig.width())), dst});
                }
            }
        }
        for (StateId dst = 0; dst < options.state_count; ++dst) {
            if (has_transition(rng)) {
                ts.transitions.push_back({src, Label::epsilon(), dst});
            }
        }
    }
    for (StateId q = 0; q < options.state_count; ++q) {
        if (is_accepting(rng)) {
            ts.accepting.push_back(q);
        }
    }
    if (options.state_count > 0) {
        ts.initial.push_back(0);
    }
    return acyclic_fo_normalize(BuchiAutomaton(std::move(ts)));
}

LassoWord lasso_with_fo_track(const LassoWord& w, std::uint32_t track,
                              std::uint64_t value) {
    const std::size_t u = w.prefix().size();
    const std::size_t v = w.period().size();
    std::size_t len = u;
    if (value >= len) {
        len += ((value + 1 - len) + v - 1) / v * v;
    }
    std::vector<Symbol> prefix;
    prefix.reserve(len);
    for (std::size_t i = 0; i < len; ++i) {
        prefix.push_back(w.symbol_at(i).insert_track(track, i == value));
    }
    std::vector<Symbol> period;
    period.reserve(v);
    for (const Symbol& s : w.period()) {
        period.push_back(s.insert_track(track, false));
    }
    return LassoWord(std::move(prefix), std::move(period));
}

namespace {

using StateSet = std::vector<StateId>;  // sorted, duplicate-free

struct Stepper {
    std::vector<std::vector<std::pair<Symbol, StateId>>> by_symbol;
    std::vector<std::vector<StateId>> by_epsilon;

    explicit Stepper(const BuchiAutomaton& a)
        : by_symbol(a.state_count()), by_epsilon(a.state_count()) {
        for (const Transition& t : a.transitions()) {
            if (t.label.is_epsilon()) {
                by_epsilon[t.src].push_back(t.dst);
            } else {
                by_symbol[t.src].push_back({t.label.symbol(), t.dst});
            }
        }
    }

    StateSet closure(StateSet set) const {
        std::set<StateId> seen(set.begin(), set.end());
        StateSet work = set;
        while (!work.empty()) {
            StateId q = work.back();
            work.pop_back();
            for (StateId d : by_epsilon[q]) {
                if (seen.insert(d).second) {
                    work.push_back(d);
                }
            }
        }
        return StateSet(seen.begin(), seen.end());
    }

    StateSet read(const StateSet& set, const Symbol& s) const {
        std::set<StateId> next;
        for (StateId q : set) {
            for (const auto& [label, dst] : by_symbol[q]) {
                if (label == s) {
                    next.insert(dst);
                }
            }
        }
        return closure(StateSet(next.begin(), next.end()));
    }
};

}  // namespace

std::size_t universal_candidate_bound(const BuchiAutomaton& a, const LassoWord& w,
                                      std::uint32_t track) {
    if (w.width() + 1 != a.signature().width()) {
        throw WidthMismatchError("lasso must be one track narrower than the automaton");
    }
    Stepper stepper(a);
    StateSet current = stepper.closure(a.initial_states());
    for (const Symbol& s : w.prefix()) {
        current = stepper.read(current, s.insert_track(track, false));
    }
    std::map<StateSet, std::size_t> seen;
    std::size_t iterations = 0;
    while (!seen.count(current)) {
        seen.emplace(current, iterations);
        for (const Symbol& s : w.period()) {
            current = stepper.read(current, s.insert_track(track, false));
        }
        ++iterations;
    }
    const std::size_t preperiod = seen.at(current);
    const std::size_t cycle = iterations - preperiod;
    return w.prefix().size() + w.period().size() * (preperiod + cycle + 1) - 1;
}

bool brute_force_universal_membership(const BuchiAutomaton& a, std::string_view var,
                                      const LassoWord& w) {
    const std::uint32_t track = a.signature().track_of(var);
    if (!a.signature().track_is_fo(track)) {
        throw NotFirstOrderError("cannot place second-order variable \"" +
                                 std::string(var) + "\" at a single position");
    }
    const std::size_t bound = universal_candidate_bound(a, w, track);
    for (std::size_t n = 0; n <= bound; ++n) {
        if (!lasso_membership(a, lasso_with_fo_track(w, track, n))) {
            return false;
        }
    }
    return true;
}

std::optional<LassoWord> languages_equal_on_lassos(const BuchiAutomaton& a,
                                                   const BuchiAutomaton& b,
                                                   std::size_t max_u,
                                                   std::size_t max_v) {
    if (a.signature() != b.signature()) {
        throw SignatureMismatchError("lasso comparison needs identical signatures");
    }
    const std::uint32_t width = a.signature().width();
    const std::uint64_t alphabet = std::uint64_t{1} << width;
    auto each_word = [&](std::size_t len, const auto& fn) {
        std::vector<std::uint64_t> digits(len, 0);
        while (true) {
            std::vector<Symbol> word;
            word.reserve(len);
            for (std::uint64_t d : digits) {
                word.push_back(Symbol(d, width));
            }
            if (fn(std::move(word))) {
                return true;
            }
            std::size_t i = 0;
            while (i < len && ++digits[i] == alphabet) {
                digits[i] = 0;
                ++i;
            }
            if (i == len) {
                return false;
            }
        }
    };
    std::optional<LassoWord> mismatch;
    for (std::size_t lu = 0; lu <= max_u && !mismatch; ++lu) {
        each_word(lu, [&](std::vector<Symbol> u) {
            for (std::size_t lv = 1; lv <= max_v; ++lv) {
                if (each_word(lv, [&](std::vector<Symbol> v) {
                        LassoWord w(u, std::move(v));
                        if (lasso_membership(a, w) != lasso_membership(b, w)) {
                            mismatch = w;
                            return true;
                        }
                        return false;
                    })) {
                    return true;
                }
            }
            return false;
        });
    }
    return mismatch;
}

}  // namespace monaut
