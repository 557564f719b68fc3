#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "monaut/automaton.hpp"

namespace monaut {

/// Brute-force reference implementations. Everything here is deliberately
/// simple and slow; the point is to validate the quantification pipeline on
/// small instances by independent means.

/// Reproducible random automata: every possible transition (each symbol and
/// epsilon, between every state pair) is included with probability
/// transition_density, each state is accepting with probability
/// accepting_probability, and state 0 is the only initial state.
struct RandomAutomatonOptions {
    std::size_t state_count = 3;
    std::uint64_t seed = 0;
    double transition_density = 0.3;
    double accepting_probability = 0.5;
};

/// Draws an automaton as described above, then normalizes it, so the result
/// only accepts valid encodings and is ready for quantification. The same
/// options always produce the same automaton.
BuchiAutomaton random_model_automaton(const VariableSignature& sig,
                                      const RandomAutomatonOptions& options);

/// Inserts a first-order track into w carrying a single 1 at position
/// `value`. The prefix is unrolled far enough that the 1 lands in it; the
/// period stays silent on the new track.
LassoWord lasso_with_fo_track(const LassoWord& w, std::uint32_t track,
                              std::uint64_t value);

/// How far brute_force_universal_membership must search: checking all
/// positions n <= bound is equivalent to checking every n. Let f(m) be the
/// set of states reachable from the initial states reading w's prefix and m
/// copies of its period with `track` silent; f is eventually periodic, its
/// preperiod and period are detected by iterating it, and past them the
/// acceptance of position n only depends on n's offset within w's period.
/// Throws WidthMismatchError when w's width is not one less than a's.
std::size_t universal_candidate_bound(const BuchiAutomaton& a, const LassoWord& w,
                                      std::uint32_t track);

/// True iff every placement of `var` is accepted: for all n, the word
/// obtained from w by inserting the var track with its 1 at position n lies
/// in a's language. Decided exactly, by explicit membership checks up to
/// universal_candidate_bound. Throws NotFirstOrderError or
/// WidthMismatchError.
bool brute_force_universal_membership(const BuchiAutomaton& a, std::string_view var,
                                      const LassoWord& w);

/// Compares the languages on every lasso with |prefix| <= max_u and
/// |period| <= max_v, in enumeration order (shorter first, symbols counted
/// up per position). Returns the first mismatching lasso, or nullopt when
/// all agree. Bounded, so agreement is necessary but not sufficient for
/// language equality. Throws SignatureMismatchError unless the signatures
/// are identical.
std::optional<LassoWord> languages_equal_on_lassos(const BuchiAutomaton& a,
                                                   const BuchiAutomaton& b,
                                                   std::size_t max_u,
                                                   std::size_t max_v);

}  // namespace monaut
