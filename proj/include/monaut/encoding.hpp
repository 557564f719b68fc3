#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "monaut/automaton.hpp"

namespace monaut {

/// A subset of the naturals given by a finite bit prefix and a non-empty
/// repeating bit period: n is a member iff bit n of prefix.period^omega is
/// set. Equality is semantic (two representations of the same set compare
/// equal regardless of how the period is rolled or unrolled).
class UltimatelyPeriodicSet {
public:
    UltimatelyPeriodicSet();  // the empty set
    UltimatelyPeriodicSet(std::vector<bool> prefix, std::vector<bool> period);

    static UltimatelyPeriodicSet from_members(const std::vector<std::size_t>& members);

    bool contains(std::size_t n) const;
    const std::vector<bool>& prefix_bits() const { return prefix_; }
    const std::vector<bool>& period_bits() const { return period_; }

    bool is_finite() const;

    /// Shortest equivalent representation: minimal period, maximally absorbed
    /// prefix. Used for stable witness printing.
    UltimatelyPeriodicSet normalized() const;

    /// "{0,2,4,...}" for display; lists the first few members.
    std::string preview(std::size_t max_members = 4) const;

    friend bool operator==(const UltimatelyPeriodicSet& a, const UltimatelyPeriodicSet& b);

private:
    std::vector<bool> prefix_;
    std::vector<bool> period_;
};

/// Assigns a natural to every first-order variable and an ultimately periodic
/// set to every second-order variable of some signature.
struct Interpretation {
    std::map<std::string, std::size_t> fo_values;
    std::map<std::string, UltimatelyPeriodicSet> so_values;

    friend bool operator==(const Interpretation& a, const Interpretation& b) = default;
};

/// The lasso encoding of an interpretation over `sig`: one track per
/// variable; a first-order value n becomes 0^n 1 0^omega, a second-order set
/// becomes its characteristic word. The prefix covers every first-order
/// position and every set prefix; the period length is the lcm of the set
/// period lengths (1 when there are none), with first-order tracks all zero
/// inside the period. Throws SignatureMismatchError when the interpretation's
/// domain differs from the signature.
LassoWord encode_interpretation(const Interpretation& interp, const VariableSignature& sig);

/// Inverse of encode_interpretation, defined on the spelled word (any
/// representation of the same word decodes identically). Throws
/// InvalidEncodingError naming the offending track when some first-order
/// track does not carry exactly one 1.
Interpretation decode_lasso(const LassoWord& w, const VariableSignature& sig);

/// Accepts exactly the valid encodings over `sig`: every first-order track
/// carries exactly one 1, second-order tracks are free. States are the
/// subsets of first-order variables whose 1 has been read (2^k states);
/// the full subset is the sole accepting state.
BuchiAutomaton valid_encodings_automaton(const VariableSignature& sig);

/// Deletes variable `var` and its track everywhere; existentially projects
/// the language. Throws UnknownVariableError.
BuchiAutomaton project_variable(const BuchiAutomaton& a, std::string_view var);
FiniteAutomaton project_variable(const FiniteAutomaton& a, std::string_view var);

/// Adds a fresh variable at `position` within its kind's list (default: at
/// the end). A second-order track is unconstrained (every transition is
/// duplicated for bit 0 and bit 1); a first-order track is additionally
/// forced to carry exactly one 1 per word. Throws DuplicateVariableError.
BuchiAutomaton add_variable(const BuchiAutomaton& a, std::string_view var,
                            VariableKind kind, std::size_t position = SIZE_MAX);
FiniteAutomaton add_variable(const FiniteAutomaton& a, std::string_view var,
                             VariableKind kind, std::size_t position = SIZE_MAX);

/// Rearranges tracks to match `target`, which must list the same variable
/// names per kind in some order. Throws InvalidPermutationError.
BuchiAutomaton reorder_variables(const BuchiAutomaton& a, const VariableSignature& target);
FiniteAutomaton reorder_variables(const FiniteAutomaton& a, const VariableSignature& target);

}  // namespace monaut
