#include "monaut/compiler.hpp"

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <set>
#include <utility>
#include <vector>

#include "monaut/errors.hpp"

namespace monaut {
namespace {

BuchiAutomaton empty_over(const VariableSignature& sig) {
    TransitionSystem ts;
    ts.signature = sig;
    return BuchiAutomaton(std::move(ts));
}

Symbol fire(std::uint32_t width, std::initializer_list<std::uint32_t> tracks) {
    Symbol s = Symbol::zeros(width);
    for (std::uint32_t t : tracks) s = s.with_bit(t, true);
    return s;
}

BuchiAutomaton machine(const VariableSignature& sig,
                       std::size_t states,
                       std::vector<std::tuple<StateId, Symbol, StateId>> edges,
                       std::vector<StateId> accepting) {
    TransitionSystem ts;
    ts.signature = sig;
    ts.state_count = states;
    ts.initial = {0};
    ts.accepting = std::move(accepting);
    for (auto& [src, sym, dst] : edges) {
        ts.transitions.push_back({src, Label::symbol(sym), dst});
    }
    ts.canonicalize();
    return BuchiAutomaton(std::move(ts));
}

/// Track t1 fires strictly before track t2; nothing else fires. Both tracks
/// are first-order, so every other position reads zeros.
BuchiAutomaton less_machine(const VariableSignature& sig, std::uint32_t t1,
                            std::uint32_t t2) {
    const std::uint32_t w = sig.width();
    const Symbol z = Symbol::zeros(w);
    return machine(sig, 3,
                   {{0, z, 0}, {0, fire(w, {t1}), 1},
                    {1, z, 1}, {1, fire(w, {t2}), 2},
                    {2, z, 2}},
                   {2});
}

/// Tracks t1 and t2 fire together once. Collapses to the one-track valid
/// encoder when t1 == t2.
BuchiAutomaton same_position_machine(const VariableSignature& sig,
                                     std::uint32_t t1, std::uint32_t t2) {
    const std::uint32_t w = sig.width();
    const Symbol z = Symbol::zeros(w);
    return machine(sig, 2,
                   {{0, z, 0}, {0, fire(w, {t1, t2}), 1}, {1, z, 1}},
                   {1});
}

/// Track `target` fires exactly `offset` positions after track `base`.
BuchiAutomaton offset_machine(const VariableSignature& sig, std::uint32_t target,
                              std::uint32_t base, std::uint64_t offset) {
    const std::uint32_t w = sig.width();
    const Symbol z = Symbol::zeros(w);
    // States: 0 before base fires, 1..offset counting positions since, then
    // the accepting sink.
    const StateId last = static_cast<StateId>(offset);
    std::vector<std::tuple<StateId, Symbol, StateId>> edges = {
        {0, z, 0}, {0, fire(w, {base}), 1}, {last + 1, z, last + 1}};
    for (StateId i = 1; i < last; ++i) {
        edges.push_back({i, z, i + 1});
    }
    edges.push_back({last, fire(w, {target}), last + 1});
    return machine(sig, static_cast<std::size_t>(offset) + 2, std::move(edges),
                   {last + 1});
}

/// Track `target` fires anywhere except exactly `offset` positions after
/// track `base`: before it, together with it, too close, or too far.
BuchiAutomaton not_offset_machine(const VariableSignature& sig,
                                  std::uint32_t target, std::uint32_t base,
                                  std::uint64_t offset) {
    const std::uint32_t w = sig.width();
    const Symbol z = Symbol::zeros(w);
    // States: 0 start, 1 target fired first, 2..offset+2 counting positions
    // since base fired, then the accepting sink. The count state for
    // "exactly offset positions" refuses the target fire; the overshoot
    // state accepts it whenever it comes later.
    const StateId first = 1;
    const StateId count0 = 2;                                    // base just fired
    const StateId overshoot = count0 + static_cast<StateId>(offset);
    const StateId sink = overshoot + 1;
    std::vector<std::tuple<StateId, Symbol, StateId>> edges = {
        {0, z, 0},
        {0, fire(w, {target}), first},
        {0, fire(w, {base, target}), sink},
        {0, fire(w, {base}), count0},
        {first, z, first},
        {first, fire(w, {base}), sink},
        {overshoot, z, overshoot},
        {overshoot, fire(w, {target}), sink},
        {sink, z, sink},
    };
    for (StateId i = count0; i < overshoot; ++i) {
        edges.push_back({i, z, i + 1});
        if (i + 1 < overshoot) {
            // Target fires d positions after base with 1 <= d < offset.
            edges.push_back({i, fire(w, {target}), sink});
        }
    }
    return machine(sig, static_cast<std::size_t>(sink) + 1, std::move(edges),
                   {sink});
}

/// The element track fires once on a position whose set-track bit matches
/// `inside`; the set track is otherwise free.
BuchiAutomaton member_machine(const VariableSignature& sig,
                              std::uint32_t element, std::uint32_t set,
                              bool inside) {
    const std::uint32_t w = sig.width();
    std::vector<std::tuple<StateId, Symbol, StateId>> edges;
    for (bool set_bit : {false, true}) {
        Symbol idle = Symbol::zeros(w).with_bit(set, set_bit);
        edges.push_back({0, idle, 0});
        edges.push_back({1, idle, 1});
    }
    edges.push_back({0, Symbol::zeros(w).with_bit(element, true).with_bit(set, inside), 1});
    return machine(sig, 2, std::move(edges), {1});
}

/// Both second-order tracks agree everywhere (equal), or differ somewhere
/// (not equal). With t1 == t2 the disagreement state is unreachable, which
/// is exactly the empty inequality X != X.
BuchiAutomaton set_equality_machine(const VariableSignature& sig,
                                    std::uint32_t t1, std::uint32_t t2,
                                    bool equal) {
    const std::uint32_t w = sig.width();
    std::vector<std::tuple<StateId, Symbol, StateId>> edges;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << w); ++bits) {
        Symbol s(bits, w);
        if (s.bit(t1) == s.bit(t2)) {
            edges.push_back({0, s, 0});
        } else {
            edges.push_back({0, s, 1});
        }
        edges.push_back({1, s, 1});
    }
    return machine(sig, 2, std::move(edges), {equal ? StateId{0} : StateId{1}});
}

/// Adds every variable of `target` that `a` lacks, then reorders the tracks
/// into target order.
BuchiAutomaton aligned(BuchiAutomaton a, const VariableSignature& target) {
    for (const auto& v : target.fo_vars()) {
        if (!a.signature().has_variable(v)) {
            a = add_variable(a, v, VariableKind::FirstOrder);
        }
    }
    for (const auto& v : target.so_vars()) {
        if (!a.signature().has_variable(v)) {
            a = add_variable(a, v, VariableKind::SecondOrder);
        }
    }
    if (a.signature() == target) return a;
    return reorder_variables(a, target);
}

VariableSignature merged(const VariableSignature& a, const VariableSignature& b) {
    std::set<std::string> fo(a.fo_vars().begin(), a.fo_vars().end());
    std::set<std::string> so(a.so_vars().begin(), a.so_vars().end());
    fo.insert(b.fo_vars().begin(), b.fo_vars().end());
    so.insert(b.so_vars().begin(), b.so_vars().end());
    return VariableSignature(std::vector<std::string>(fo.begin(), fo.end()),
                             std::vector<std::string>(so.begin(), so.end()));
}

BuchiAutomaton shrink(BuchiAutomaton a) { return trim(reduce(trim(std::move(a)))); }

void require_contains(const VariableSignature& sig, const VariableSignature& own) {
    for (const auto& v : own.fo_vars()) {
        if (!sig.has_variable(v)) {
            throw UnknownVariableError("signature misses atom variable '" + v + "'");
        }
        if (!sig.is_fo(v)) {
            throw ScopeError("'" + v + "' is second-order in the signature but "
                             "first-order in the atom");
        }
    }
    for (const auto& v : own.so_vars()) {
        if (!sig.has_variable(v)) {
            throw UnknownVariableError("signature misses atom variable '" + v + "'");
        }
        if (!sig.is_so(v)) {
            throw ScopeError("'" + v + "' is first-order in the signature but "
                             "second-order in the atom");
        }
    }
}

BuchiAutomaton custom_machine(const CustomNode& atom, bool negated,
                              const VariableSignature& own,
                              const CompileOptions& options) {
    auto it = options.relations.find(atom.relation);
    if (it == options.relations.end()) {
        throw UnknownVariableError("no relation registered for '" +
                                   atom.relation + "'");
    }
    BuchiAutomaton built = it->second(atom, negated);
    if (!(built.signature() == own)) {
        throw SignatureMismatchError(
            "relation '" + atom.relation + "' built an automaton over '" +
            built.signature().to_string() + "', expected '" + own.to_string() + "'");
    }
    return built;
}

}  // namespace

BuchiAutomaton atom_automaton(const Formula& atom, bool negated,
                              const VariableSignature& sig,
                              const CompileOptions& options) {
    const Formula::Node& n = atom.node();
    const VariableSignature own = signature_for(atom);
    require_contains(sig, own);

    auto build = [&]() -> BuchiAutomaton {
        if (std::get_if<TrueNode>(&n)) {
            return negated ? empty_over(own) : valid_encodings_automaton(own);
        }
        if (std::get_if<FalseNode>(&n)) {
            return negated ? valid_encodings_automaton(own) : empty_over(own);
        }
        if (const auto* x = std::get_if<EqFONode>(&n)) {
            if (x->left == x->right) {
                return negated ? empty_over(own) : valid_encodings_automaton(own);
            }
            const std::uint32_t t1 = own.track_of(x->left);
            const std::uint32_t t2 = own.track_of(x->right);
            return negated ? buchi_union(less_machine(own, t1, t2),
                                         less_machine(own, t2, t1))
                           : same_position_machine(own, t1, t2);
        }
        if (const auto* x = std::get_if<LessNode>(&n)) {
            if (x->left == x->right) {
                return negated ? valid_encodings_automaton(own) : empty_over(own);
            }
            const std::uint32_t t1 = own.track_of(x->left);
            const std::uint32_t t2 = own.track_of(x->right);
            return negated ? buchi_union(same_position_machine(own, t1, t2),
                                         less_machine(own, t2, t1))
                           : less_machine(own, t1, t2);
        }
        if (const auto* x = std::get_if<OffsetEqNode>(&n)) {
            if (x->target == x->base) {
                return negated ? valid_encodings_automaton(own) : empty_over(own);
            }
            const std::uint32_t tt = own.track_of(x->target);
            const std::uint32_t tb = own.track_of(x->base);
            return negated ? not_offset_machine(own, tt, tb, x->offset)
                           : offset_machine(own, tt, tb, x->offset);
        }
        if (const auto* x = std::get_if<MemberNode>(&n)) {
            return member_machine(own, own.track_of(x->element),
                                  own.track_of(x->set), !negated);
        }
        if (const auto* x = std::get_if<EqSONode>(&n)) {
            return set_equality_machine(own, own.track_of(x->left),
                                        own.track_of(x->right), !negated);
        }
        if (const auto* x = std::get_if<CustomNode>(&n)) {
            return custom_machine(*x, negated, own, options);
        }
        throw Error("atom_automaton needs an atomic formula, got: " +
                    to_string(atom));
    };
    return aligned(trim(build()), sig);
}

namespace {

bool is_atomic(const Formula& f) {
    const Formula::Node& n = f.node();
    return !std::get_if<NotNode>(&n) && !std::get_if<AndNode>(&n) &&
           !std::get_if<OrNode>(&n) && !std::get_if<IffNode>(&n) &&
           !std::get_if<ExistsNode>(&n) && !std::get_if<ForallNode>(&n);
}

struct Compiler {
    const CompileOptions& options;

    BuchiAutomaton record(BuchiAutomaton a) {
        if (options.stats) {
            ++options.stats->nodes;
            options.stats->peak_states =
                std::max(options.stats->peak_states, a.state_count());
        }
        return a;
    }

    BuchiAutomaton atom(const Formula& f, bool negated) {
        if (options.stats) ++options.stats->atoms;
        return record(atom_automaton(f, negated, signature_for(f), options));
    }

    BuchiAutomaton binary(const Formula& l, const Formula& r, bool conjunction) {
        BuchiAutomaton left = go(l);
        BuchiAutomaton right = go(r);
        const VariableSignature target = merged(left.signature(), right.signature());
        left = aligned(std::move(left), target);
        right = aligned(std::move(right), target);
        return record(shrink(conjunction ? buchi_intersection(left, right)
                                         : buchi_union(left, right)));
    }

    BuchiAutomaton go(const Formula& f) {
        const Formula::Node& n = f.node();
        if (const auto* x = std::get_if<NotNode>(&n)) {
            if (!is_atomic(*x->operand)) {
                throw Error("negation above a connective survived the normal "
                            "form rewrite");
            }
            return atom(*x->operand, true);
        }
        if (const auto* x = std::get_if<AndNode>(&n)) {
            return binary(*x->left, *x->right, true);
        }
        if (const auto* x = std::get_if<OrNode>(&n)) {
            return binary(*x->left, *x->right, false);
        }
        if (std::get_if<IffNode>(&n)) {
            throw Error("equivalence survived the normal form rewrite");
        }
        if (const auto* x = std::get_if<ExistsNode>(&n)) {
            BuchiAutomaton body = go(*x->body);
            if (!body.signature().has_variable(x->variable)) {
                // The variable never occurs; over a non-empty domain the
                // quantifier is vacuous.
                return body;
            }
            return record(shrink(project_variable(body, x->variable)));
        }
        if (const auto* x = std::get_if<ForallNode>(&n)) {
            BuchiAutomaton body = go(*x->body);
            if (!body.signature().has_variable(x->variable)) {
                return body;
            }
            QuantPipelineArtifacts artifacts =
                universal_quantify_artifacts(body, x->variable);
            if (options.on_universal) {
                options.on_universal(x->variable, artifacts);
            }
            if (options.stats) ++options.stats->universals;
            return record(shrink(std::move(artifacts.result)));
        }
        return atom(f, false);
    }
};

}  // namespace

BuchiAutomaton compile(const Formula& f, const CompileOptions& options) {
    check_scopes(f);
    FormulaRef nnf = to_nnf(std::make_shared<Formula>(f));
    Compiler compiler{options};
    return compiler.go(*nnf);
}

SatResult decide_sat(const Formula& f, const CompileOptions& options) {
    SatResult out{false, std::nullopt, std::nullopt, compile(f, options)};
    std::optional<LassoWord> found = buchi_witness(out.automaton);
    if (!found) {
        return out;
    }
    const VariableSignature sig = signature_for(f);
    Interpretation interp = decode_lasso(*found, sig);
    LassoWord encoded = encode_interpretation(interp, sig);
    if (!lasso_membership(out.automaton, encoded)) {
        throw Error("witness re-encoding was rejected by the compiled automaton");
    }
    out.satisfiable = true;
    out.witness = std::move(interp);
    out.witness_lasso = std::move(encoded);
    return out;
}

namespace {

std::uint64_t offsets_total(const Formula& f) {
    const Formula::Node& n = f.node();
    if (const auto* x = std::get_if<OffsetEqNode>(&n)) return x->offset;
    if (const auto* x = std::get_if<NotNode>(&n)) return offsets_total(*x->operand);
    if (const auto* x = std::get_if<AndNode>(&n)) {
        return offsets_total(*x->left) + offsets_total(*x->right);
    }
    if (const auto* x = std::get_if<OrNode>(&n)) {
        return offsets_total(*x->left) + offsets_total(*x->right);
    }
    if (const auto* x = std::get_if<IffNode>(&n)) {
        return offsets_total(*x->left) + offsets_total(*x->right);
    }
    if (const auto* x = std::get_if<ExistsNode>(&n)) return offsets_total(*x->body);
    if (const auto* x = std::get_if<ForallNode>(&n)) return offsets_total(*x->body);
    return 0;
}

bool contains_custom(const Formula& f) {
    const Formula::Node& n = f.node();
    if (std::get_if<CustomNode>(&n)) return true;
    if (const auto* x = std::get_if<NotNode>(&n)) return contains_custom(*x->operand);
    if (const auto* x = std::get_if<AndNode>(&n)) {
        return contains_custom(*x->left) || contains_custom(*x->right);
    }
    if (const auto* x = std::get_if<OrNode>(&n)) {
        return contains_custom(*x->left) || contains_custom(*x->right);
    }
    if (const auto* x = std::get_if<IffNode>(&n)) {
        return contains_custom(*x->left) || contains_custom(*x->right);
    }
    if (const auto* x = std::get_if<ExistsNode>(&n)) return contains_custom(*x->body);
    if (const auto* x = std::get_if<ForallNode>(&n)) return contains_custom(*x->body);
    return false;
}

struct Evaluator {
    const CompileOptions& options;

    static std::size_t fo(const Interpretation& interp, const std::string& name) {
        auto it = interp.fo_values.find(name);
        if (it == interp.fo_values.end()) {
            throw UnknownVariableError("interpretation misses '" + name + "'");
        }
        return it->second;
    }

    static const UltimatelyPeriodicSet& so(const Interpretation& interp,
                                           const std::string& name) {
        auto it = interp.so_values.find(name);
        if (it == interp.so_values.end()) {
            throw UnknownVariableError("interpretation misses '" + name + "'");
        }
        return it->second;
    }

    bool custom(const CustomNode& atom, const Interpretation& interp) const {
        const Formula wrapped{Formula::Node{atom}};
        const VariableSignature own = signature_for(wrapped);
        BuchiAutomaton built = custom_machine(atom, false, own, options);
        Interpretation restricted;
        for (const auto& v : own.fo_vars()) restricted.fo_values[v] = fo(interp, v);
        for (const auto& v : own.so_vars()) restricted.so_values[v] = so(interp, v);
        return lasso_membership(built, encode_interpretation(restricted, own));
    }

    bool quantified(const std::string& variable, const Formula& body,
                    bool universal, const Interpretation& interp) const {
        if (contains_custom(body)) {
            throw Error("cannot bound the quantifier search over '" + variable +
                        "': the body uses a custom relation");
        }
        VariableSignature context = signature_for(body);
        if (context.has_variable(variable)) {
            context = context.without(variable);
        }
        Interpretation restricted;
        for (const auto& v : context.fo_vars()) {
            restricted.fo_values[v] = fo(interp, v);
        }
        for (const auto& v : context.so_vars()) {
            restricted.so_values[v] = so(interp, v);
        }
        const LassoWord encoded = encode_interpretation(restricted, context);
        // Truth of the body as a function of the bound value is periodic
        // (period dividing the context period) once past the context prefix
        // plus every offset the body can span, so this range is exhaustive.
        const std::uint64_t bound = encoded.prefix().size() +
                                    offsets_total(body) +
                                    2 * encoded.period().size();
        for (std::uint64_t value = 0; value <= bound; ++value) {
            Interpretation inner = interp;
            inner.fo_values[variable] = static_cast<std::size_t>(value);
            if (eval(body, inner) != universal) {
                return !universal;
            }
        }
        return universal;
    }

    bool eval(const Formula& f, const Interpretation& interp) const {
        const Formula::Node& n = f.node();
        if (std::get_if<TrueNode>(&n)) return true;
        if (std::get_if<FalseNode>(&n)) return false;
        if (const auto* x = std::get_if<EqFONode>(&n)) {
            return fo(interp, x->left) == fo(interp, x->right);
        }
        if (const auto* x = std::get_if<EqSONode>(&n)) {
            return so(interp, x->left) == so(interp, x->right);
        }
        if (const auto* x = std::get_if<MemberNode>(&n)) {
            return so(interp, x->set).contains(fo(interp, x->element));
        }
        if (const auto* x = std::get_if<LessNode>(&n)) {
            return fo(interp, x->left) < fo(interp, x->right);
        }
        if (const auto* x = std::get_if<OffsetEqNode>(&n)) {
            return fo(interp, x->target) == fo(interp, x->base) + x->offset;
        }
        if (const auto* x = std::get_if<CustomNode>(&n)) {
            return custom(*x, interp);
        }
        if (const auto* x = std::get_if<NotNode>(&n)) {
            return !eval(*x->operand, interp);
        }
        if (const auto* x = std::get_if<AndNode>(&n)) {
            return eval(*x->left, interp) && eval(*x->right, interp);
        }
        if (const auto* x = std::get_if<OrNode>(&n)) {
            return eval(*x->left, interp) || eval(*x->right, interp);
        }
        if (const auto* x = std::get_if<IffNode>(&n)) {
            return eval(*x->left, interp) == eval(*x->right, interp);
        }
        if (const auto* x = std::get_if<ExistsNode>(&n)) {
            return quantified(x->variable, *x->body, false, interp);
        }
        const auto& x = std::get<ForallNode>(n);
        return quantified(x.variable, *x.body, true, interp);
    }
};

}  // namespace

bool evaluate_formula(const Formula& f, const Interpretation& interp,
                      const CompileOptions& options) {
    return Evaluator{options}.eval(f, interp);
}

}  // namespace monaut
