#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "monaut/signature.hpp"

namespace monaut {

class Formula;

/// Formulas are immutable and shared; subtrees may appear in several
/// formulas at once.
using FormulaRef = std::shared_ptr<const Formula>;

struct TrueNode {};
struct FalseNode {};

/// left = right, both first-order.
struct EqFONode {
    std::string left, right;
};

/// left = right, both second-order (equal as sets).
struct EqSONode {
    std::string left, right;
};

/// set(element): the first-order value lies in the second-order set.
struct MemberNode {
    std::string set, element;
};

/// left < right on naturals, both first-order.
struct LessNode {
    std::string left, right;
};

/// target = base + offset with offset >= 1. Successor is offset 1.
struct OffsetEqNode {
    std::string target, base;
    std::uint64_t offset = 1;
};

/// An atom interpreted by a user-registered relation (see compiler.hpp).
/// There is no concrete syntax for these; they are built programmatically.
struct CustomNode {
    std::string relation;
    std::vector<std::string> fo_args;
    std::vector<std::string> so_args;
};

struct NotNode {
    FormulaRef operand;
};

struct AndNode {
    FormulaRef left, right;
};

struct OrNode {
    FormulaRef left, right;
};

struct IffNode {
    FormulaRef left, right;
};

/// Quantifiers bind first-order variables only.
struct ExistsNode {
    std::string variable;
    FormulaRef body;
};

struct ForallNode {
    std::string variable;
    FormulaRef body;
};

/// A first-order formula over < and +c with monadic predicate symbols.
class Formula {
public:
    using Node = std::variant<TrueNode, FalseNode, EqFONode, EqSONode, MemberNode,
                              LessNode, OffsetEqNode, CustomNode, NotNode, AndNode,
                              OrNode, IffNode, ExistsNode, ForallNode>;

    explicit Formula(Node node) : node_(std::move(node)) {}

    const Node& node() const { return node_; }

private:
    Node node_;
};

/// Structural equality, recursing through shared subtrees.
bool operator==(const Formula& a, const Formula& b);
inline bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

/// Variable names are a letter followed by letters, digits or underscores.
/// First-order names start lowercase, second-order names start uppercase.
bool is_variable_name(std::string_view name, VariableKind kind);

/// Builders. Each validates its variable names: a malformed name or a
/// first-order name in a second-order position throws ScopeError, a
/// second-order name in a first-order position throws NotFirstOrderError.
FormulaRef truth();
FormulaRef falsity();
FormulaRef eq_fo(std::string left, std::string right);
FormulaRef eq_so(std::string left, std::string right);
FormulaRef member(std::string set, std::string element);
FormulaRef less(std::string left, std::string right);

/// target = base + offset. Throws Error when offset is zero.
FormulaRef offset_eq(std::string target, std::string base, std::uint64_t offset);

FormulaRef custom_atom(std::string relation, std::vector<std::string> fo_args,
                       std::vector<std::string> so_args);
FormulaRef neg(FormulaRef operand);
FormulaRef conj(FormulaRef left, FormulaRef right);
FormulaRef disj(FormulaRef left, FormulaRef right);
FormulaRef iff(FormulaRef left, FormulaRef right);
FormulaRef exists(std::string variable, FormulaRef body);
FormulaRef forall(std::string variable, FormulaRef body);

/// The free variables of `f`, each kind sorted by name. This is the
/// signature the compiler gives the automaton of `f`.
VariableSignature signature_for(const Formula& f);

/// Rejects formulas whose variable use would be ambiguous: a quantifier
/// rebinding a name already bound in scope, or a name occurring both free
/// and bound anywhere in the formula. Distinct subtrees may reuse a bound
/// name. Throws ScopeError.
void check_scopes(const Formula& f);

/// Negation normal form: expands every Iff, pushes negations down to atoms
/// and flips quantifiers on the way. The result contains no Iff and applies
/// Not to atoms only.
FormulaRef to_nnf(const FormulaRef& f);

/// Concrete syntax, parenthesized so that parse_formula reads it back as
/// the same tree.
std::string to_string(const Formula& f);

}  // namespace monaut
