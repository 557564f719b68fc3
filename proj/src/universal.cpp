#include "monaut/universal.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

#include "monaut/encoding.hpp"

namespace monaut {

namespace {

using Subset = std::vector<StateId>;  // sorted, duplicate-free

Subset insert_sorted(const Subset& s, StateId q) {
    Subset out;
    out.reserve(s.size() + 1);
    auto it = std::lower_bound(s.begin(), s.end(), q);
    if (it != s.end() && *it == q) {
        return s;
    }
    out.assign(s.begin(), it);
    out.push_back(q);
    out.insert(out.end(), it, s.end());
    return out;
}

Subset erase_sorted(const Subset& s, StateId q) {
    Subset out;
    out.reserve(s.size());
    for (StateId x : s) {
        if (x != q) {
            out.push_back(x);
        }
    }
    return out;
}

std::uint32_t checked_fo_track(const VariableSignature& sig, std::string_view var) {
    std::uint32_t track = sig.track_of(var);
    if (!sig.track_is_fo(track)) {
        throw NotFirstOrderError("cannot quantify over second-order variable \"" +
                                 std::string(var) + "\"");
    }
    return track;
}

void check_state(const BuchiAutomaton& a, StateId q) {
    if (q >= a.state_count()) {
        throw UnknownStateError("state " + std::to_string(q) +
                                " out of range; automaton has " +
                                std::to_string(a.state_count()) + " states");
    }
}

std::string member_label(const TransitionSystem& ts, StateId q) {
    if (q < ts.state_labels.size() && !ts.state_labels[q].empty()) {
        return ts.state_labels[q];
    }
    return "q" + std::to_string(q);
}

std::string subset_label(const TransitionSystem& ts, const Subset& members) {
    std::string out = "{";
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += member_label(ts, members[i]);
    }
    out += '}';
    return out;
}

/// All unions A + N with A from `in`, N a subset of `options`; N must be
/// non-empty unless `allow_empty`. Grows element by element with
/// deduplication, so the cost is bounded by the number of distinct results.
/// Smallest language-preserving normal form we have: determinize (which also
/// removes epsilon transitions), merge equivalent states, drop useless ones.
/// Products of path languages explode as plain automata; their minimal
/// deterministic forms stay tiny.
FiniteAutomaton compact(const FiniteAutomaton& a) {
    return trim(reduce(determinize(trim(a))));
}

std::set<Subset> closed_unions(const std::set<Subset>& in,
                               const std::vector<StateId>& options, bool allow_empty) {
    std::set<Subset> out;
    std::deque<Subset> work;
    auto push = [&](Subset s) {
        if (out.insert(s).second) {
            work.push_back(std::move(s));
        }
    };
    if (allow_empty) {
        for (const Subset& s : in) {
            push(s);
        }
    } else {
        for (const Subset& s : in) {
            for (StateId d : options) {
                push(insert_sorted(s, d));
            }
        }
    }
    while (!work.empty()) {
        Subset s = std::move(work.front());
        work.pop_front();
        for (StateId d : options) {
            Subset grown = insert_sorted(s, d);
            if (grown.size() != s.size()) {
                push(std::move(grown));
            }
        }
    }
    return out;
}

}  // namespace

BuchiAutomaton acyclic_fo_normalize(const BuchiAutomaton& a) {
    const VariableSignature& sig = a.signature();
    const std::size_t k = sig.fo_count();
    if (k == 0) {
        return a;
    }
    const TransitionSystem& ts = a.core();
    const std::uint64_t layers = std::uint64_t{1} << k;
    const std::uint64_t full = layers - 1;
    auto id = [&](StateId q, std::uint64_t fired) {
        return static_cast<StateId>(q * layers + fired);
    };
    auto fo_bits = [&](const Symbol& s) {
        std::uint64_t fired = 0;
        for (std::uint32_t j = 0; j < k; ++j) {
            if (s.bit(j)) {
                fired |= std::uint64_t{1} << j;
            }
        }
        return fired;
    };

    TransitionSystem out;
    out.signature = sig;
    out.state_count = ts.state_count * layers;
    for (const Transition& t : ts.transitions) {
        if (t.label.is_epsilon()) {
            for (std::uint64_t fired = 0; fired < layers; ++fired) {
                out.transitions.push_back({id(t.src, fired), t.label, id(t.dst, fired)});
            }
        } else {
            const std::uint64_t fires = fo_bits(t.label.symbol());
            for (std::uint64_t fired = 0; fired < layers; ++fired) {
                if ((fires & fired) == 0) {
                    out.transitions.push_back(
                        {id(t.src, fired), t.label, id(t.dst, fired | fires)});
                }
            }
        }
    }
    for (StateId q : ts.initial) {
        out.initial.push_back(id(q, 0));
    }
    for (StateId q : ts.accepting) {
        out.accepting.push_back(id(q, full));
    }
    return trim(BuchiAutomaton(std::move(out)));
}

SubsetAutomaton subset_construction(const BuchiAutomaton& a, std::string_view var,
                                    SubsetExploration exploration) {
    const VariableSignature& sig = a.signature();
    const std::uint32_t track = checked_fo_track(sig, var);
    const TransitionSystem& ts = a.core();

    // Outgoing edges per state, keyed by projected symbol and split into
    // silent and firing target lists (distinct targets only).
    struct Split {
        std::vector<StateId> silent;
        std::vector<StateId> firing;
    };
    std::vector<std::map<Symbol, Split>> arrows(ts.state_count);
    std::vector<std::vector<StateId>> eps_from(ts.state_count);
    for (const Transition& t : ts.transitions) {
        if (t.label.is_epsilon()) {
            eps_from[t.src].push_back(t.dst);
        } else {
            const Symbol& s = t.label.symbol();
            Split& split = arrows[t.src]
                               .try_emplace(s.drop_track(track), Split{})
                               .first->second;
            (s.bit(track) ? split.firing : split.silent).push_back(t.dst);
        }
    }
    for (auto& by_symbol : arrows) {
        for (auto& [symbol, split] : by_symbol) {
            std::sort(split.silent.begin(), split.silent.end());
            split.silent.erase(std::unique(split.silent.begin(), split.silent.end()),
                               split.silent.end());
            std::sort(split.firing.begin(), split.firing.end());
            split.firing.erase(std::unique(split.firing.begin(), split.firing.end()),
                               split.firing.end());
        }
    }

    std::set<Subset> discovered;
    std::deque<Subset> frontier;
    auto discover = [&](const Subset& s) {
        if (discovered.insert(s).second) {
            frontier.push_back(s);
        }
    };

    constexpr std::size_t kMaxEnumerated = 20;
    std::vector<Subset> initial_subsets;
    {
        const std::vector<StateId>& roots = ts.initial;
        if (roots.size() > kMaxEnumerated) {
            throw Error("subset construction cannot enumerate the start subsets of " +
                        std::to_string(roots.size()) + " initial states");
        }
        for (std::uint64_t pick = 1; pick < (std::uint64_t{1} << roots.size()); ++pick) {
            Subset s;
            for (std::size_t j = 0; j < roots.size(); ++j) {
                if (pick & (std::uint64_t{1} << j)) {
                    s.push_back(roots[j]);
                }
            }
            std::sort(s.begin(), s.end());
            initial_subsets.push_back(std::move(s));
        }
    }
    for (const Subset& s : initial_subsets) {
        discover(s);
    }
    if (exploration == SubsetExploration::Full) {
        if (ts.state_count > kMaxEnumerated) {
            throw Error("full subset exploration over " +
                        std::to_string(ts.state_count) + " states is not supported");
        }
        for (std::uint64_t pick = 1; pick < (std::uint64_t{1} << ts.state_count);
             ++pick) {
            Subset s;
            for (std::size_t j = 0; j < ts.state_count; ++j) {
                if (pick & (std::uint64_t{1} << j)) {
                    s.push_back(static_cast<StateId>(j));
                }
            }
            discover(s);
        }
    }

    struct SubsetTransition {
        Subset src;
        Label label;
        Subset dst;
    };
    std::vector<SubsetTransition> edges;

    while (!frontier.empty()) {
        Subset src = std::move(frontier.front());
        frontier.pop_front();

        for (StateId q : src) {
            for (StateId to : eps_from[q]) {
                Subset grown = insert_sorted(src, to);
                Subset moved = insert_sorted(erase_sorted(src, q), to);
                edges.push_back({src, Label::epsilon(), grown});
                edges.push_back({src, Label::epsilon(), moved});
                discover(grown);
                discover(moved);
            }
        }

        // Candidate symbols: any projected symbol with a firing edge from a
        // member; the single firing edge makes the witness set legal.
        std::set<Symbol> candidates;
        for (StateId q : src) {
            for (const auto& [symbol, split] : arrows[q]) {
                if (!split.firing.empty()) {
                    candidates.insert(symbol);
                }
            }
        }
        for (const Symbol& symbol : candidates) {
            for (StateId firing_source : src) {
                auto it = arrows[firing_source].find(symbol);
                if (it == arrows[firing_source].end() || it->second.firing.empty()) {
                    continue;
                }
                // Every other member must be coverable without a second fire.
                bool coverable = true;
                for (StateId q : src) {
                    if (q == firing_source) {
                        continue;
                    }
                    auto qit = arrows[q].find(symbol);
                    if (qit == arrows[q].end() || qit->second.silent.empty()) {
                        coverable = false;
                        break;
                    }
                }
                if (!coverable) {
                    continue;
                }
                for (StateId fired_target : it->second.firing) {
                    std::set<Subset> targets{Subset{fired_target}};
                    for (StateId q : src) {
                        const Split& split = arrows[q].at(symbol);
                        targets = closed_unions(targets, split.silent,
                                                /*allow_empty=*/q == firing_source);
                    }
                    for (const Subset& dst : targets) {
                        edges.push_back({src, Label::symbol(symbol), dst});
                        discover(dst);
                    }
                }
            }
        }
    }

    std::vector<Subset> states(discovered.begin(), discovered.end());
    std::map<Subset, StateId> index;
    for (std::size_t i = 0; i < states.size(); ++i) {
        index[states[i]] = static_cast<StateId>(i);
    }

    TransitionSystem out;
    out.signature = sig.without(var);
    out.state_count = states.size();
    for (const SubsetTransition& e : edges) {
        out.transitions.push_back({index.at(e.src), e.label, index.at(e.dst)});
    }
    for (const Subset& s : initial_subsets) {
        out.initial.push_back(index.at(s));
    }
    for (std::size_t i = 0; i < states.size(); ++i) {
        out.accepting.push_back(static_cast<StateId>(i));
        out.state_labels.push_back(subset_label(ts, states[i]));
    }
    return SubsetAutomaton{BuchiAutomaton(std::move(out)), std::move(states)};
}

FiniteAutomaton cycle_language_with_accept(const BuchiAutomaton& a, StateId q,
                                           std::string_view var) {
    check_state(a, q);
    const std::uint32_t track = checked_fo_track(a.signature(), var);
    const TransitionSystem& ts = a.core();
    auto accepting = [&](StateId p) { return a.is_accepting(p); };

    // States carry two extra bits: an accepting state has been visited, and a
    // symbol has been read (ruling out all-epsilon cycles).
    auto id = [&](StateId p, bool seen, bool read) {
        return static_cast<StateId>(p * 4 + (seen ? 2 : 0) + (read ? 1 : 0));
    };
    TransitionSystem out;
    out.signature = ts.signature.without(var);
    out.state_count = ts.state_count * 4;
    for (const Transition& t : ts.transitions) {
        for (bool seen : {false, true}) {
            const bool seen_after = seen || accepting(t.dst);
            for (bool read : {false, true}) {
                if (t.label.is_epsilon()) {
                    out.transitions.push_back({id(t.src, seen, read), Label::epsilon(),
                                               id(t.dst, seen_after, read)});
                } else {
                    Label projected = Label::symbol(t.label.symbol().drop_track(track));
                    out.transitions.push_back(
                        {id(t.src, seen, read), projected, id(t.dst, seen_after, true)});
                }
            }
        }
    }
    out.initial = {id(q, accepting(q), false)};
    out.accepting = {id(q, true, true)};
    return compact(FiniteAutomaton(std::move(out)));
}

namespace {

FiniteAutomaton empty_language(const VariableSignature& sig) {
    TransitionSystem ts;
    ts.signature = sig;
    return FiniteAutomaton(std::move(ts));
}

FiniteAutomaton union_of_path_cycle_products(
    const VariableSignature& projected, StateId q,
    const std::function<FiniteAutomaton(StateId, StateId)>& path,
    const std::vector<FiniteAutomaton>& cycles) {
    FiniteAutomaton acc = empty_language(projected);
    for (StateId r = 0; r < cycles.size(); ++r) {
        if (finite_is_empty(cycles[r])) {
            continue;
        }
        acc = finite_union(acc, compact(finite_intersection(path(q, r), cycles[r])));
    }
    return compact(acc);
}

}  // namespace

FiniteAutomaton u_language(const BuchiAutomaton& a, StateId q, std::string_view var) {
    check_state(a, q);
    checked_fo_track(a.signature(), var);
    std::vector<FiniteAutomaton> cycles;
    cycles.reserve(a.state_count());
    for (StateId r = 0; r < a.state_count(); ++r) {
        cycles.push_back(cycle_language_with_accept(a, r, var));
    }
    auto path = [&](StateId q1, StateId q2) {
        return project_variable(paths_automaton(a, q1, q2), var);
    };
    return union_of_path_cycle_products(a.signature().without(var), q, path, cycles);
}

FiniteAutomaton widget_language(const SubsetAutomaton& subset, StateId q_prime,
                                const BuchiAutomaton& original,
                                const std::vector<FiniteAutomaton>& u_languages) {
    check_state(subset.automaton, q_prime);
    if (u_languages.size() != original.state_count()) {
        throw UnknownStateError("need one U_q automaton per original state");
    }
    const Subset& members = subset.members[q_prime];
    const bool has_accepting = std::any_of(members.begin(), members.end(),
                                           [&](StateId q) { return original.is_accepting(q); });
    if (!has_accepting) {
        throw NoAcceptingMemberError("subset state " + std::to_string(q_prime) +
                                     " has no accepting member");
    }

    // Fold the members' languages smallest-first and bring in the subset
    // cycles last; that keeps every intermediate product small.
    Subset by_size = members;
    std::sort(by_size.begin(), by_size.end(), [&](StateId x, StateId y) {
        return u_languages[x].state_count() < u_languages[y].state_count();
    });
    FiniteAutomaton result = u_languages[by_size.front()];
    for (std::size_t i = 1; i < by_size.size(); ++i) {
        if (finite_is_empty(result)) {
            return result;
        }
        result = compact(finite_intersection(result, u_languages[by_size[i]]));
    }
    if (finite_is_empty(result)) {
        return result;
    }
    FiniteAutomaton cycles = compact(paths_automaton(subset.automaton, q_prime, q_prime));
    return compact(finite_intersection(result, cycles));
}

BuchiAutomaton assemble(const SubsetAutomaton& subset,
                        const std::map<StateId, FiniteAutomaton>& widgets) {
    TransitionSystem ts = subset.automaton.core();
    ts.accepting.clear();
    if (ts.state_labels.empty()) {
        ts.state_labels.resize(ts.state_count);
    }
    for (const auto& [q_prime, widget] : widgets) {
        if (finite_is_empty(widget)) {
            continue;
        }
        BuchiAutomaton closed = omega_closure(widget);
        const TransitionSystem& w = closed.core();
        const StateId offset = static_cast<StateId>(ts.state_count);
        ts.state_count += w.state_count;
        for (const Transition& t : w.transitions) {
            ts.transitions.push_back(
                {static_cast<StateId>(t.src + offset), t.label,
                 static_cast<StateId>(t.dst + offset)});
        }
        const StateId repeat = static_cast<StateId>(w.initial.front() + offset);
        ts.transitions.push_back({q_prime, Label::epsilon(), repeat});
        ts.accepting.push_back(repeat);
        ts.state_labels.resize(ts.state_count);
        ts.state_labels[repeat] = "rep:" + ts.state_labels[q_prime];
    }
    return trim(BuchiAutomaton(std::move(ts)));
}

QuantPipelineArtifacts universal_quantify_artifacts(const BuchiAutomaton& a,
                                                    std::string_view var,
                                                    SubsetExploration exploration) {
    BuchiAutomaton normalized = acyclic_fo_normalize(a);
    SubsetAutomaton subset = subset_construction(normalized, var, exploration);

    std::vector<FiniteAutomaton> cycles;
    cycles.reserve(normalized.state_count());
    for (StateId q = 0; q < normalized.state_count(); ++q) {
        cycles.push_back(cycle_language_with_accept(normalized, q, var));
    }

    std::map<std::pair<StateId, StateId>, FiniteAutomaton> paths;
    for (StateId q1 = 0; q1 < normalized.state_count(); ++q1) {
        for (StateId q2 = 0; q2 < normalized.state_count(); ++q2) {
            paths.emplace(std::make_pair(q1, q2),
                          project_variable(paths_automaton(normalized, q1, q2), var));
        }
    }

    const VariableSignature projected = normalized.signature().without(var);
    std::vector<FiniteAutomaton> u_langs;
    u_langs.reserve(normalized.state_count());
    for (StateId q = 0; q < normalized.state_count(); ++q) {
        u_langs.push_back(union_of_path_cycle_products(
            projected, q,
            [&](StateId q1, StateId q2) { return paths.at({q1, q2}); }, cycles));
    }

    std::map<StateId, FiniteAutomaton> widgets;
    for (StateId q_prime = 0; q_prime < subset.automaton.state_count(); ++q_prime) {
        const Subset& members = subset.members[q_prime];
        const bool eligible = std::any_of(members.begin(), members.end(), [&](StateId q) {
            return normalized.is_accepting(q);
        });
        if (eligible) {
            widgets.emplace(q_prime,
                            widget_language(subset, q_prime, normalized, u_langs));
        }
    }

    BuchiAutomaton result = assemble(subset, widgets);
    return QuantPipelineArtifacts{std::string(var),    std::move(normalized),
                                  std::move(subset),   std::move(cycles),
                                  std::move(paths),    std::move(u_langs),
                                  std::move(widgets),  std::move(result)};
}

BuchiAutomaton universal_quantify(const BuchiAutomaton& a, std::string_view var) {
    return universal_quantify_artifacts(a, var).result;
}

}  // namespace monaut
