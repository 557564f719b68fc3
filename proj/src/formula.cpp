#include "monaut/formula.hpp"

#include <cctype>
#include <set>
#include <utility>

#include "monaut/errors.hpp"

namespace monaut {

bool is_variable_name(std::string_view name, VariableKind kind) {
    if (name.empty()) return false;
    const unsigned char first = static_cast<unsigned char>(name.front());
    if (kind == VariableKind::FirstOrder ? !std::islower(first) : !std::isupper(first)) {
        return false;
    }
    for (char c : name.substr(1)) {
        const unsigned char u = static_cast<unsigned char>(c);
        if (!std::isalnum(u) && c != '_') return false;
    }
    return true;
}

namespace {

FormulaRef make(Formula::Node node) {
    return std::make_shared<Formula>(std::move(node));
}

void require_name(const std::string& name, VariableKind kind, const char* where) {
    if (is_variable_name(name, kind)) return;
    if (kind == VariableKind::FirstOrder &&
        is_variable_name(name, VariableKind::SecondOrder)) {
        throw NotFirstOrderError("'" + name + "' is second-order but " + where +
                                 " takes a first-order variable");
    }
    const char* wanted =
        kind == VariableKind::FirstOrder ? "first-order" : "second-order";
    throw ScopeError("'" + name + "' is not a " + std::string(wanted) +
                     " variable name (" + where + ")");
}

void require_operand(const FormulaRef& f, const char* where) {
    if (!f) throw Error(std::string(where) + " is missing an operand");
}

}  // namespace

FormulaRef truth() { return make(TrueNode{}); }

FormulaRef falsity() { return make(FalseNode{}); }

FormulaRef eq_fo(std::string left, std::string right) {
    require_name(left, VariableKind::FirstOrder, "first-order equality");
    require_name(right, VariableKind::FirstOrder, "first-order equality");
    return make(EqFONode{std::move(left), std::move(right)});
}

FormulaRef eq_so(std::string left, std::string right) {
    require_name(left, VariableKind::SecondOrder, "second-order equality");
    require_name(right, VariableKind::SecondOrder, "second-order equality");
    return make(EqSONode{std::move(left), std::move(right)});
}

FormulaRef member(std::string set, std::string element) {
    require_name(set, VariableKind::SecondOrder, "membership");
    require_name(element, VariableKind::FirstOrder, "membership");
    return make(MemberNode{std::move(set), std::move(element)});
}

FormulaRef less(std::string left, std::string right) {
    require_name(left, VariableKind::FirstOrder, "order comparison");
    require_name(right, VariableKind::FirstOrder, "order comparison");
    return make(LessNode{std::move(left), std::move(right)});
}

FormulaRef offset_eq(std::string target, std::string base, std::uint64_t offset) {
    require_name(target, VariableKind::FirstOrder, "offset equality");
    require_name(base, VariableKind::FirstOrder, "offset equality");
    if (offset == 0) {
        throw Error("offset equality needs an offset of at least 1; '" + target +
                    " = " + base + "' states plain equality");
    }
    return make(OffsetEqNode{std::move(target), std::move(base), offset});
}

FormulaRef custom_atom(std::string relation, std::vector<std::string> fo_args,
                       std::vector<std::string> so_args) {
    if (!is_variable_name(relation, VariableKind::FirstOrder) &&
        !is_variable_name(relation, VariableKind::SecondOrder)) {
        throw ScopeError("'" + relation + "' is not a valid relation name");
    }
    for (const auto& v : fo_args) {
        require_name(v, VariableKind::FirstOrder, "custom atom");
    }
    for (const auto& v : so_args) {
        require_name(v, VariableKind::SecondOrder, "custom atom");
    }
    return make(CustomNode{std::move(relation), std::move(fo_args), std::move(so_args)});
}

FormulaRef neg(FormulaRef operand) {
    require_operand(operand, "negation");
    return make(NotNode{std::move(operand)});
}

FormulaRef conj(FormulaRef left, FormulaRef right) {
    require_operand(left, "conjunction");
    require_operand(right, "conjunction");
    return make(AndNode{std::move(left), std::move(right)});
}

FormulaRef disj(FormulaRef left, FormulaRef right) {
    require_operand(left, "disjunction");
    require_operand(right, "disjunction");
    return make(OrNode{std::move(left), std::move(right)});
}

FormulaRef iff(FormulaRef left, FormulaRef right) {
    require_operand(left, "equivalence");
    require_operand(right, "equivalence");
    return make(IffNode{std::move(left), std::move(right)});
}

FormulaRef exists(std::string variable, FormulaRef body) {
    require_name(variable, VariableKind::FirstOrder, "exists");
    require_operand(body, "exists");
    return make(ExistsNode{std::move(variable), std::move(body)});
}

FormulaRef forall(std::string variable, FormulaRef body) {
    require_name(variable, VariableKind::FirstOrder, "forall");
    require_operand(body, "forall");
    return make(ForallNode{std::move(variable), std::move(body)});
}

bool operator==(const Formula& a, const Formula& b) {
    const Formula::Node& na = a.node();
    const Formula::Node& nb = b.node();
    if (na.index() != nb.index()) return false;
    if (std::get_if<TrueNode>(&na) || std::get_if<FalseNode>(&na)) return true;
    if (const auto* x = std::get_if<EqFONode>(&na)) {
        const auto& y = std::get<EqFONode>(nb);
        return x->left == y.left && x->right == y.right;
    }
    if (const auto* x = std::get_if<EqSONode>(&na)) {
        const auto& y = std::get<EqSONode>(nb);
        return x->left == y.left && x->right == y.right;
    }
    if (const auto* x = std::get_if<MemberNode>(&na)) {
        const auto& y = std::get<MemberNode>(nb);
        return x->set == y.set && x->element == y.element;
    }
    if (const auto* x = std::get_if<LessNode>(&na)) {
        const auto& y = std::get<LessNode>(nb);
        return x->left == y.left && x->right == y.right;
    }
    if (const auto* x = std::get_if<OffsetEqNode>(&na)) {
        const auto& y = std::get<OffsetEqNode>(nb);
        return x->target == y.target && x->base == y.base && x->offset == y.offset;
    }
    if (const auto* x = std::get_if<CustomNode>(&na)) {
        const auto& y = std::get<CustomNode>(nb);
        return x->relation == y.relation && x->fo_args == y.fo_args &&
               x->so_args == y.so_args;
    }
    if (const auto* x = std::get_if<NotNode>(&na)) {
        return *x->operand == *std::get<NotNode>(nb).operand;
    }
    if (const auto* x = std::get_if<AndNode>(&na)) {
        const auto& y = std::get<AndNode>(nb);
        return *x->left == *y.left && *x->right == *y.right;
    }
    if (const auto* x = std::get_if<OrNode>(&na)) {
        const auto& y = std::get<OrNode>(nb);
        return *x->left == *y.left && *x->right == *y.right;
    }
    if (const auto* x = std::get_if<IffNode>(&na)) {
        const auto& y = std::get<IffNode>(nb);
        return *x->left == *y.left && *x->right == *y.right;
    }
    if (const auto* x = std::get_if<ExistsNode>(&na)) {
        const auto& y = std::get<ExistsNode>(nb);
        return x->variable == y.variable && *x->body == *y.body;
    }
    const auto& x = std::get<ForallNode>(na);
    const auto& y = std::get<ForallNode>(nb);
    return x.variable == y.variable && *x.body == *y.body;
}

namespace {

/// Shared traversal for signature_for and check_scopes. Records every free
/// first-order and second-order name, every quantified name, and rejects
/// rebinding when `strict` is set.
struct ScopeWalk {
    bool strict = false;
    std::vector<std::string> stack;
    std::set<std::string> free_fo;
    std::set<std::string> free_so;
    std::set<std::string> bound;

    bool on_stack(const std::string& name) const {
        for (const auto& s : stack) {
            if (s == name) return true;
        }
        return false;
    }

    void fo_use(const std::string& name) {
        if (!on_stack(name)) free_fo.insert(name);
    }

    void walk(const Formula& f) {
        const Formula::Node& n = f.node();
        if (const auto* x = std::get_if<EqFONode>(&n)) {
            fo_use(x->left);
            fo_use(x->right);
        } else if (const auto* x = std::get_if<EqSONode>(&n)) {
            free_so.insert(x->left);
            free_so.insert(x->right);
        } else if (const auto* x = std::get_if<MemberNode>(&n)) {
            free_so.insert(x->set);
            fo_use(x->element);
        } else if (const auto* x = std::get_if<LessNode>(&n)) {
            fo_use(x->left);
            fo_use(x->right);
        } else if (const auto* x = std::get_if<OffsetEqNode>(&n)) {
            fo_use(x->target);
            fo_use(x->base);
        } else if (const auto* x = std::get_if<CustomNode>(&n)) {
            for (const auto& v : x->fo_args) fo_use(v);
            for (const auto& v : x->so_args) free_so.insert(v);
        } else if (const auto* x = std::get_if<NotNode>(&n)) {
            walk(*x->operand);
        } else if (const auto* x = std::get_if<AndNode>(&n)) {
            walk(*x->left);
            walk(*x->right);
        } else if (const auto* x = std::get_if<OrNode>(&n)) {
            walk(*x->left);
            walk(*x->right);
        } else if (const auto* x = std::get_if<IffNode>(&n)) {
            walk(*x->left);
            walk(*x->right);
        } else if (const auto* x = std::get_if<ExistsNode>(&n)) {
            enter(x->variable, *x->body);
        } else if (const auto* x = std::get_if<ForallNode>(&n)) {
            enter(x->variable, *x->body);
        }
    }

    void enter(const std::string& variable, const Formula& body) {
        if (strict && on_stack(variable)) {
            throw ScopeError("variable '" + variable +
                             "' is rebound inside its own scope");
        }
        bound.insert(variable);
        stack.push_back(variable);
        walk(body);
        stack.pop_back();
    }
};

}  // namespace

VariableSignature signature_for(const Formula& f) {
    ScopeWalk walk;
    walk.walk(f);
    return VariableSignature(
        std::vector<std::string>(walk.free_fo.begin(), walk.free_fo.end()),
        std::vector<std::string>(walk.free_so.begin(), walk.free_so.end()));
}

void check_scopes(const Formula& f) {
    ScopeWalk walk;
    walk.strict = true;
    walk.walk(f);
    for (const auto& name : walk.free_fo) {
        if (walk.bound.count(name)) {
            throw ScopeError("variable '" + name + "' occurs both free and bound");
        }
    }
}

namespace {

FormulaRef rewrite_nnf(const FormulaRef& f, bool negated) {
    const Formula::Node& n = f->node();
    if (std::get_if<TrueNode>(&n)) return negated ? falsity() : f;
    if (std::get_if<FalseNode>(&n)) return negated ? truth() : f;
    if (const auto* x = std::get_if<NotNode>(&n)) {
        return rewrite_nnf(x->operand, !negated);
    }
    if (const auto* x = std::get_if<AndNode>(&n)) {
        return negated ? disj(rewrite_nnf(x->left, true), rewrite_nnf(x->right, true))
                       : conj(rewrite_nnf(x->left, false), rewrite_nnf(x->right, false));
    }
    if (const auto* x = std::get_if<OrNode>(&n)) {
        return negated ? conj(rewrite_nnf(x->left, true), rewrite_nnf(x->right, true))
                       : disj(rewrite_nnf(x->left, false), rewrite_nnf(x->right, false));
    }
    if (const auto* x = std::get_if<IffNode>(&n)) {
        // Positive: both hold or neither does. Negated: exactly one holds.
        FormulaRef ll = rewrite_nnf(x->left, false);
        FormulaRef ln = rewrite_nnf(x->left, true);
        FormulaRef rl = rewrite_nnf(x->right, negated);
        FormulaRef rn = rewrite_nnf(x->right, !negated);
        return disj(conj(std::move(ll), std::move(rl)),
                    conj(std::move(ln), std::move(rn)));
    }
    if (const auto* x = std::get_if<ExistsNode>(&n)) {
        return negated ? forall(x->variable, rewrite_nnf(x->body, true))
                       : exists(x->variable, rewrite_nnf(x->body, false));
    }
    if (const auto* x = std::get_if<ForallNode>(&n)) {
        return negated ? exists(x->variable, rewrite_nnf(x->body, true))
                       : forall(x->variable, rewrite_nnf(x->body, false));
    }
    return negated ? neg(f) : f;
}

}  // namespace

FormulaRef to_nnf(const FormulaRef& f) { return rewrite_nnf(f, false); }

namespace {

enum Precedence { kIff = 0, kOr = 1, kAnd = 2, kNot = 3, kAtom = 4 };

int precedence(const Formula& f) {
    const Formula::Node& n = f.node();
    if (std::get_if<IffNode>(&n)) return kIff;
    if (std::get_if<OrNode>(&n)) return kOr;
    if (std::get_if<AndNode>(&n)) return kAnd;
    if (std::get_if<NotNode>(&n)) return kNot;
    if (std::get_if<ExistsNode>(&n) || std::get_if<ForallNode>(&n)) return -1;
    return kAtom;
}

/// Infix atoms read badly right after '!', so those keep their parentheses.
bool tight_under_not(const Formula& f) {
    const Formula::Node& n = f.node();
    return std::get_if<TrueNode>(&n) || std::get_if<FalseNode>(&n) ||
           std::get_if<MemberNode>(&n) || std::get_if<CustomNode>(&n) ||
           std::get_if<NotNode>(&n);
}

void print(const Formula& f, std::string& out);

void print_child(const Formula& f, int parent, bool tight_side, std::string& out) {
    const int p = precedence(f);
    const bool parens = tight_side ? p <= parent : p < parent;
    if (parens) out += '(';
    print(f, out);
    if (parens) out += ')';
}

void print_infix(const Formula& l, const char* op, const Formula& r, int prec,
                 std::string& out) {
    print_child(l, prec, false, out);
    out += op;
    print_child(r, prec, true, out);
}

void print(const Formula& f, std::string& out) {
    const Formula::Node& n = f.node();
    if (std::get_if<TrueNode>(&n)) {
        out += "true";
    } else if (std::get_if<FalseNode>(&n)) {
        out += "false";
    } else if (const auto* x = std::get_if<EqFONode>(&n)) {
        out += x->left + " = " + x->right;
    } else if (const auto* x = std::get_if<EqSONode>(&n)) {
        out += x->left + " = " + x->right;
    } else if (const auto* x = std::get_if<MemberNode>(&n)) {
        out += x->set + "(" + x->element + ")";
    } else if (const auto* x = std::get_if<LessNode>(&n)) {
        out += x->left + " < " + x->right;
    } else if (const auto* x = std::get_if<OffsetEqNode>(&n)) {
        out += x->target + " = " + x->base + " + " + std::to_string(x->offset);
    } else if (const auto* x = std::get_if<CustomNode>(&n)) {
        out += x->relation + "(";
        bool first = true;
        for (const auto& v : x->fo_args) {
            if (!first) out += ", ";
            out += v;
            first = false;
        }
        for (const auto& v : x->so_args) {
            if (!first) out += ", ";
            out += v;
            first = false;
        }
        out += ")";
    } else if (const auto* x = std::get_if<NotNode>(&n)) {
        out += '!';
        if (tight_under_not(*x->operand)) {
            print(*x->operand, out);
        } else {
            out += '(';
            print(*x->operand, out);
            out += ')';
        }
    } else if (const auto* x = std::get_if<AndNode>(&n)) {
        print_infix(*x->left, " & ", *x->right, kAnd, out);
    } else if (const auto* x = std::get_if<OrNode>(&n)) {
        print_infix(*x->left, " | ", *x->right, kOr, out);
    } else if (const auto* x = std::get_if<IffNode>(&n)) {
        print_infix(*x->left, " <-> ", *x->right, kIff, out);
    } else if (const auto* x = std::get_if<ExistsNode>(&n)) {
        out += "exists " + x->variable + ". ";
        print(*x->body, out);
    } else {
        const auto& all = std::get<ForallNode>(n);
        out += "forall " + all.variable + ". ";
        print(*all.body, out);
    }
}

}  // namespace

std::string to_string(const Formula& f) {
    std::string out;
    print(f, out);
    return out;
}

}  // namespace monaut
