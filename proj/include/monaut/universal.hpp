#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "monaut/automaton.hpp"

namespace monaut {

/// Universal quantification of a first-order variable, done directly on the
/// automaton. The pipeline: make variable transitions acyclic, run a subset
/// construction that fires the variable exactly once per step, compute for
/// each original state q the language U_q of period words continuable from q,
/// intersect those into per-subset-state widget languages, and graft their
/// omega-closures as the only accepting components.

/// A subset-construction result. States of `automaton` are subsets of the
/// original automaton's states; `members[s]` lists the original ids making up
/// state s, sorted. All states are provisionally accepting.
struct SubsetAutomaton {
    BuchiAutomaton automaton;
    std::vector<std::vector<StateId>> members;
};

/// Lazy explores only subsets reachable from the initial ones; Full
/// materializes every non-empty subset (exponential, for small inputs and
/// tests).
enum class SubsetExploration { Lazy, Full };

/// Every intermediate stage, retained for inspection, stage dumps, and golden
/// tests.
struct QuantPipelineArtifacts {
    std::string variable;
    BuchiAutomaton normalized;
    SubsetAutomaton subset;
    /// Per original state q: cycles at q through an accepting state.
    std::vector<FiniteAutomaton> cycle_automata;
    /// Per ordered pair (q1, q2): projected path words from q1 to q2.
    std::map<std::pair<StateId, StateId>, FiniteAutomaton> path_automata;
    /// Per original state q: U_q, the candidate period words from q.
    std::vector<FiniteAutomaton> u_languages;
    /// Per subset state with an accepting member: its widget language,
    /// possibly empty.
    std::map<StateId, FiniteAutomaton> widget_languages;
    BuchiAutomaton result;
};

/// Rebuilds a so every transition firing a first-order variable is
/// cycle-free: product with the lattice of already-fired variable sets,
/// accepting only in the all-fired layer. Equivalent to intersecting with the
/// valid-encodings language. Automata without first-order variables come back
/// as isomorphic copies.
BuchiAutomaton acyclic_fo_normalize(const BuchiAutomaton& a);

/// First pipeline step. Each symbol transition between subset states stands
/// for a set of original transitions that covers the source subset, fires
/// `var` exactly once, and agrees on the projected symbol; its targets form
/// the destination subset. An original epsilon transition q1 -> q2 yields
/// both S -> S + {q2} and S -> S - {q1} + {q2}. Initial states are the
/// non-empty subsets of the original initial set; the signature loses `var`.
/// Throws NotFirstOrderError when `var` is second-order.
SubsetAutomaton subset_construction(const BuchiAutomaton& a, std::string_view var,
                                    SubsetExploration exploration = SubsetExploration::Lazy);

/// Words (projected along `var`) of non-empty cycles at q that pass through
/// an accepting state, counting q itself when it is accepting. Cycles whose
/// transitions are all epsilon are excluded, so the language never contains
/// the empty word.
FiniteAutomaton cycle_language_with_accept(const BuchiAutomaton& a, StateId q,
                                           std::string_view var);

/// U_q: words u such that, starting at q and reading copies of u forever (new
/// variable track silent), some accepting state recurs. Built as the union
/// over r of path words q -> r intersected with accepting cycles at r.
FiniteAutomaton u_language(const BuchiAutomaton& a, StateId q, std::string_view var);

/// The widget language of subset state q_prime: cycles of the subset
/// automaton at q_prime whose word lies in U_q for every member q. Requires
/// an accepting member (throws NoAcceptingMemberError otherwise); the result
/// may still be empty.
FiniteAutomaton widget_language(const SubsetAutomaton& subset, StateId q_prime,
                                const BuchiAutomaton& original,
                                const std::vector<FiniteAutomaton>& u_languages);

/// Final step: graft the omega-closure of each non-empty widget beside its
/// subset state via an epsilon transition, make the repeat states the only
/// accepting ones, and trim.
BuchiAutomaton assemble(const SubsetAutomaton& subset,
                        const std::map<StateId, FiniteAutomaton>& widgets);

/// The whole pipeline; recognizes the models of forall var applied to a's
/// formula. a must recognize valid encodings only.
BuchiAutomaton universal_quantify(const BuchiAutomaton& a, std::string_view var);

/// Same, retaining every stage.
QuantPipelineArtifacts universal_quantify_artifacts(
    const BuchiAutomaton& a, std::string_view var,
    SubsetExploration exploration = SubsetExploration::Lazy);

}  // namespace monaut
