#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "monaut/automaton.hpp"

namespace monaut {

/// Line-oriented text format for automata:
///
///     # free-form comment
///     kind buchi | finite        (optional, defaults to buchi)
///     sig fo:x1,x2 so:X1
///     states 3
///     initial 0
///     accepting 2
///     trans 0 1 010
///     trans 1 1 eps
///
/// Labels are `eps` or a bitstring of the signature's width, track 0 first
/// (first-order variables before second-order ones, in declaration order).
/// `sig` must precede any `trans` line; `initial` and `accepting` may list
/// several ids or none.

enum class AutomatonKind { Buchi, Finite };

struct ParsedAut {
    AutomatonKind kind = AutomatonKind::Buchi;
    TransitionSystem system;

    BuchiAutomaton as_buchi() const;
    FiniteAutomaton as_finite() const;
};

ParsedAut read_aut(std::istream& in);
ParsedAut read_aut_file(const std::filesystem::path& path);

void write_aut(std::ostream& out, const BuchiAutomaton& a, std::string_view comment = {});
void write_aut(std::ostream& out, const FiniteAutomaton& a, std::string_view comment = {});
void write_aut_file(const std::filesystem::path& path, const BuchiAutomaton& a,
                    std::string_view comment = {});
void write_aut_file(const std::filesystem::path& path, const FiniteAutomaton& a,
                    std::string_view comment = {});

/// GraphViz rendering. Labels of transitions sharing origin and destination
/// are grouped onto one edge; each non-epsilon label shows the second-order
/// bits as a tuple and, underneath, the set of first-order variables whose
/// track carries a 1 (omitted when empty).
std::string to_dot(const BuchiAutomaton& a, std::string_view graph_name = "automaton");
std::string to_dot(const FiniteAutomaton& a, std::string_view graph_name = "automaton");

}  // namespace monaut
