#pragma once

#include <cstdint>
#include <string_view>

#include "monaut/formula.hpp"

namespace monaut {

struct ParseOptions {
    /// Largest constant accepted in an offset atom "y = x + c".
    std::uint64_t max_offset = 64;
};

/// Parses the concrete formula syntax:
///
///   formula := "forall" fo "." formula | "exists" fo "." formula | iff
///   iff     := or ("<->" or)*
///   or      := and ("|" and)*
///   and     := unary ("&" unary)*
///   unary   := "!" unary | "(" formula ")" | "true" | "false"
///            | formula starting at a quantifier | atom
///   atom    := fo "=" fo ("+" number)? | fo "<" fo | so "=" so | so "(" fo ")"
///
/// First-order variables start lowercase, second-order ones uppercase;
/// "forall", "exists", "true" and "false" are reserved. A quantifier's scope
/// extends as far right as possible. Binding operators from tightest to
/// loosest: !, &, |, <->.
///
/// Throws SyntaxError with the byte offset of the offending token, and
/// ScopeError when a well-formed tree rebinds a variable or uses a name
/// both free and bound.
FormulaRef parse_formula(std::string_view text, const ParseOptions& options = {});

}  // namespace monaut
