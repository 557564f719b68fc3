#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "monaut/automaton.hpp"
#include "monaut/encoding.hpp"
#include "monaut/formula.hpp"
#include "monaut/universal.hpp"

namespace monaut {

/// Builds the automaton of one custom atom, over exactly
/// signature_for(that atom). The builder receives the negation flag so the
/// negated relation gets its own direct construction; the compiler never
/// inverts a language. The result must accept valid encodings only.
using RelationBuilder =
    std::function<BuchiAutomaton(const CustomNode&, bool negated)>;

struct CompileStats {
    std::size_t nodes = 0;
    std::size_t atoms = 0;
    std::size_t universals = 0;

    /// Largest state count over every intermediate automaton.
    std::size_t peak_states = 0;
};

struct CompileOptions {
    /// Custom relations, keyed by the relation name of the atom.
    std::map<std::string, RelationBuilder> relations;

    /// Observes the full artifact bundle of every universal quantifier the
    /// compiler eliminates, innermost first.
    std::function<void(const std::string& variable,
                       const QuantPipelineArtifacts&)> on_universal;

    /// Filled in during compile and decide_sat when set.
    CompileStats* stats = nullptr;
};

/// The automaton of a single atom, or of its negation, over `sig`. Accepts
/// exactly the valid encodings over `sig` whose interpretation satisfies the
/// (possibly negated) atom. Each atom form has a small direct machine for
/// both polarities; the remaining variables of `sig` are adjoined
/// unconstrained, first-order ones with their single-1 discipline.
///
/// Throws Error when `atom` is not atomic, UnknownVariableError when `sig`
/// is missing one of its variables or a custom relation is not registered,
/// and SignatureMismatchError when a custom builder returns an automaton
/// over the wrong signature.
BuchiAutomaton atom_automaton(const Formula& atom, bool negated,
                              const VariableSignature& sig,
                              const CompileOptions& options = {});

/// Compiles `f` into an automaton over signature_for(f) accepting exactly
/// the valid encodings of its models. Scope-checks, rewrites to negation
/// normal form, then builds bottom-up: conjunction and disjunction align
/// the operand signatures and combine, an existential projects its
/// variable's track away, and a universal runs the direct quantification
/// pipeline. No step on this path inverts an automaton's language.
BuchiAutomaton compile(const Formula& f, const CompileOptions& options = {});

/// Outcome of decide_sat. On a satisfiable formula, `witness` interprets
/// the free variables (decoded from an accepted lasso of the compiled
/// automaton) and `witness_lasso` is its re-encoding, which decide_sat has
/// checked the automaton accepts.
struct SatResult {
    bool satisfiable = false;
    std::optional<Interpretation> witness;
    std::optional<LassoWord> witness_lasso;
    BuchiAutomaton automaton;
};

SatResult decide_sat(const Formula& f, const CompileOptions& options = {});

/// Reference semantics: evaluates `f` under `interp` by structural
/// recursion. Quantifiers search n = 0 .. B where B depends on the encoded
/// context: its prefix length, plus every offset constant in the body, plus
/// two periods. Past B the truth of the body is periodic in n, so the
/// bounded search is exact. Custom atoms are checked against their
/// registered automaton; a custom atom under a quantifier throws Error
/// (its period need not divide the context's, so no syntactic bound
/// applies). Throws UnknownVariableError when `interp` misses a free
/// variable.
bool evaluate_formula(const Formula& f, const Interpretation& interp,
                      const CompileOptions& options = {});

}  // namespace monaut
