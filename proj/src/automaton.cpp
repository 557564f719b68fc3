#include "monaut/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace monaut {

namespace {

void check_same_signature(const VariableSignature& a, const VariableSignature& b,
                          const char* op) {
    if (!(a == b)) {
        throw SignatureMismatchError(std::string(op) + " requires matching signatures, got " +
                                     a.to_string() + " vs " + b.to_string());
    }
}

bool contains(std::span<const StateId> sorted, StateId q) {
    return std::binary_search(sorted.begin(), sorted.end(), q);
}

/// Outgoing adjacency: one vector of transition indices per state.
std::vector<std::vector<std::size_t>> out_edges(const TransitionSystem& ts) {
    std::vector<std::vector<std::size_t>> adj(ts.state_count);
    for (std::size_t i = 0; i < ts.transitions.size(); ++i) {
        adj[ts.transitions[i].src].push_back(i);
    }
    return adj;
}

std::vector<char> forward_reachable(const TransitionSystem& ts) {
    std::vector<char> seen(ts.state_count, 0);
    std::deque<StateId> queue;
    for (StateId q : ts.initial) {
        if (!seen[q]) {
            seen[q] = 1;
            queue.push_back(q);
        }
    }
    auto adj = out_edges(ts);
    while (!queue.empty()) {
        StateId q = queue.front();
        queue.pop_front();
        for (std::size_t i : adj[q]) {
            StateId d = ts.transitions[i].dst;
            if (!seen[d]) {
                seen[d] = 1;
                queue.push_back(d);
            }
        }
    }
    return seen;
}

/// Iterative Tarjan decomposition over an explicit edge list.
struct SccResult {
    std::vector<std::uint32_t> component;  // per node
    std::uint32_t count = 0;
};

SccResult tarjan(std::size_t n, const std::vector<std::vector<StateId>>& adj) {
    constexpr std::uint32_t kUnset = UINT32_MAX;
    SccResult result;
    result.component.assign(n, kUnset);
    std::vector<std::uint32_t> index(n, kUnset);
    std::vector<std::uint32_t> lowlink(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<StateId> stack;
    std::uint32_t next_index = 0;

    struct Frame {
        StateId node;
        std::size_t edge;
    };
    std::vector<Frame> frames;

    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != kUnset) {
            continue;
        }
        frames.push_back({static_cast<StateId>(root), 0});
        while (!frames.empty()) {
            Frame& f = frames.back();
            StateId v = f.node;
            if (f.edge == 0) {
                index[v] = lowlink[v] = next_index++;
                stack.push_back(v);
                on_stack[v] = 1;
            }
            bool descended = false;
            while (f.edge < adj[v].size()) {
                StateId w = adj[v][f.edge++];
                if (index[w] == kUnset) {
                    frames.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[w]) {
                    lowlink[v] = std::min(lowlink[v], index[w]);
                }
            }
            if (descended) {
                continue;
            }
            if (lowlink[v] == index[v]) {
                while (true) {
                    StateId w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    result.component[w] = result.count;
                    if (w == v) {
                        break;
                    }
                }
                ++result.count;
            }
            frames.pop_back();
            if (!frames.empty()) {
                StateId parent = frames.back().node;
                lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
            }
        }
    }
    return result;
}

std::vector<std::vector<StateId>> plain_adjacency(const TransitionSystem& ts) {
    std::vector<std::vector<StateId>> adj(ts.state_count);
    for (const Transition& t : ts.transitions) {
        adj[t.src].push_back(t.dst);
    }
    return adj;
}

/// Components that host an accepting run by themselves: an accepting member
/// plus an internal transition that reads a symbol.
std::vector<char> live_components(const TransitionSystem& ts, const SccResult& scc) {
    std::vector<char> has_accepting(scc.count, 0);
    std::vector<char> has_word_edge(scc.count, 0);
    for (StateId q : ts.accepting) {
        has_accepting[scc.component[q]] = 1;
    }
    for (const Transition& t : ts.transitions) {
        if (!t.label.is_epsilon() && scc.component[t.src] == scc.component[t.dst]) {
            has_word_edge[scc.component[t.src]] = 1;
        }
    }
    std::vector<char> live(scc.count, 0);
    for (std::uint32_t c = 0; c < scc.count; ++c) {
        live[c] = has_accepting[c] && has_word_edge[c];
    }
    return live;
}

std::vector<char> backward_reachable(const TransitionSystem& ts,
                                     const std::vector<char>& targets) {
    std::vector<std::vector<StateId>> rev(ts.state_count);
    for (const Transition& t : ts.transitions) {
        rev[t.dst].push_back(t.src);
    }
    std::vector<char> seen = targets;
    std::deque<StateId> queue;
    for (StateId q = 0; q < ts.state_count; ++q) {
        if (seen[q]) {
            queue.push_back(q);
        }
    }
    while (!queue.empty()) {
        StateId q = queue.front();
        queue.pop_front();
        for (StateId p : rev[q]) {
            if (!seen[p]) {
                seen[p] = 1;
                queue.push_back(p);
            }
        }
    }
    return seen;
}

TransitionSystem restrict_to(const TransitionSystem& ts, const std::vector<char>& keep) {
    std::vector<StateId> new_id(ts.state_count, 0);
    StateId next = 0;
    for (StateId q = 0; q < ts.state_count; ++q) {
        if (keep[q]) {
            new_id[q] = next++;
        }
    }
    TransitionSystem out;
    out.signature = ts.signature;
    out.state_count = next;
    for (const Transition& t : ts.transitions) {
        if (keep[t.src] && keep[t.dst]) {
            out.transitions.push_back({new_id[t.src], t.label, new_id[t.dst]});
        }
    }
    for (StateId q : ts.initial) {
        if (keep[q]) {
            out.initial.push_back(new_id[q]);
        }
    }
    for (StateId q : ts.accepting) {
        if (keep[q]) {
            out.accepting.push_back(new_id[q]);
        }
    }
    if (!ts.state_labels.empty()) {
        out.state_labels.resize(next);
        for (StateId q = 0; q < ts.state_count; ++q) {
            if (keep[q]) {
                out.state_labels[new_id[q]] = ts.state_labels[q];
            }
        }
    }
    out.canonicalize();
    return out;
}

void check_state(const TransitionSystem& ts, StateId q, const char* role) {
    if (q >= ts.state_count) {
        throw UnknownStateError(std::string(role) + " state " + std::to_string(q) +
                                " out of range; automaton has " +
                                std::to_string(ts.state_count) + " states");
    }
}

/// Epsilon closure of a sorted state set, kept sorted.
std::vector<StateId> epsilon_closure(const TransitionSystem& ts,
                                     const std::vector<std::vector<std::size_t>>& adj,
                                     std::vector<StateId> states) {
    std::vector<char> in(ts.state_count, 0);
    std::deque<StateId> queue;
    for (StateId q : states) {
        if (!in[q]) {
            in[q] = 1;
            queue.push_back(q);
        }
    }
    while (!queue.empty()) {
        StateId q = queue.front();
        queue.pop_front();
        for (std::size_t i : adj[q]) {
            const Transition& t = ts.transitions[i];
            if (t.label.is_epsilon() && !in[t.dst]) {
                in[t.dst] = 1;
                queue.push_back(t.dst);
            }
        }
    }
    std::vector<StateId> out;
    for (StateId q = 0; q < ts.state_count; ++q) {
        if (in[q]) {
            out.push_back(q);
        }
    }
    return out;
}

}  // namespace

void TransitionSystem::canonicalize() {
    std::sort(transitions.begin(), transitions.end());
    transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());
    std::sort(initial.begin(), initial.end());
    initial.erase(std::unique(initial.begin(), initial.end()), initial.end());
    std::sort(accepting.begin(), accepting.end());
    accepting.erase(std::unique(accepting.begin(), accepting.end()), accepting.end());
}

void TransitionSystem::validate() const {
    const std::uint32_t width = signature.width();
    for (const Transition& t : transitions) {
        if (t.src >= state_count || t.dst >= state_count) {
            throw MalformedAutomatonError("transition endpoint out of range: " +
                                          std::to_string(t.src) + " -> " +
                                          std::to_string(t.dst) + " with " +
                                          std::to_string(state_count) + " states");
        }
        if (!t.label.is_epsilon() && t.label.symbol().width() != width) {
            throw WidthMismatchError("transition label " + t.label.to_string() +
                                     " has width " +
                                     std::to_string(t.label.symbol().width()) +
                                     " but the signature has " + std::to_string(width) +
                                     " tracks");
        }
    }
    for (StateId q : initial) {
        if (q >= state_count) {
            throw MalformedAutomatonError("initial state " + std::to_string(q) +
                                          " out of range");
        }
    }
    for (StateId q : accepting) {
        if (q >= state_count) {
            throw MalformedAutomatonError("accepting state " + std::to_string(q) +
                                          " out of range");
        }
    }
    if (!state_labels.empty() && state_labels.size() != state_count) {
        throw MalformedAutomatonError("state_labels must be empty or give one label per state");
    }
}

BuchiAutomaton::BuchiAutomaton(TransitionSystem core) : core_(std::move(core)) {
    core_.canonicalize();
    core_.validate();
}

bool BuchiAutomaton::is_initial(StateId q) const { return contains(core_.initial, q); }
bool BuchiAutomaton::is_accepting(StateId q) const { return contains(core_.accepting, q); }

FiniteAutomaton::FiniteAutomaton(TransitionSystem core) : core_(std::move(core)) {
    core_.canonicalize();
    core_.validate();
}

bool FiniteAutomaton::is_initial(StateId q) const { return contains(core_.initial, q); }
bool FiniteAutomaton::is_accepting(StateId q) const { return contains(core_.accepting, q); }

LassoWord::LassoWord(std::vector<Symbol> prefix, std::vector<Symbol> period)
    : prefix_(std::move(prefix)), period_(std::move(period)) {
    if (period_.empty()) {
        throw MalformedAutomatonError("a lasso word needs a non-empty period");
    }
    width_ = period_.front().width();
    for (const Symbol& s : period_) {
        if (s.width() != width_) {
            throw WidthMismatchError("lasso period symbols must share one width");
        }
    }
    for (const Symbol& s : prefix_) {
        if (s.width() != width_) {
            throw WidthMismatchError("lasso prefix symbols must share the period width");
        }
    }
}

const Symbol& LassoWord::symbol_at(std::size_t n) const {
    if (n < prefix_.size()) {
        return prefix_[n];
    }
    return period_[(n - prefix_.size()) % period_.size()];
}

std::string LassoWord::to_string() const {
    std::string out = "u=";
    for (std::size_t i = 0; i < prefix_.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += prefix_[i].to_string();
    }
    out += " v=";
    for (std::size_t i = 0; i < period_.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += period_[i].to_string();
    }
    return out;
}

bool buchi_is_empty(const BuchiAutomaton& a) {
    const TransitionSystem& ts = a.core();
    if (ts.initial.empty()) {
        return true;
    }
    auto reach = forward_reachable(ts);
    auto scc = tarjan(ts.state_count, plain_adjacency(ts));
    auto live = live_components(ts, scc);
    for (StateId q = 0; q < ts.state_count; ++q) {
        if (reach[q] && live[scc.component[q]]) {
            return false;
        }
    }
    return true;
}

bool lasso_membership(const BuchiAutomaton& a, const LassoWord& w) {
    if (w.width() != a.signature().width()) {
        throw WidthMismatchError("lasso word width " + std::to_string(w.width()) +
                                 " does not match automaton width " +
                                 std::to_string(a.signature().width()));
    }
    const TransitionSystem& ts = a.core();
    const std::size_t total = w.prefix().size() + w.period().size();
    const std::size_t wrap = w.prefix().size();
    auto next_pos = [&](std::size_t p) { return p + 1 < total ? p + 1 : wrap; };

    // Product of the automaton with the lasso positions; acceptance reuses the
    // emptiness criterion on the product graph.
    auto node_id = [&](StateId q, std::size_t p) {
        return static_cast<std::size_t>(q) * total + p;
    };
    const std::size_t n = ts.state_count * total;
    if (n == 0) {
        return false;
    }
    auto adj_idx = out_edges(ts);

    std::vector<char> seen(n, 0);
    std::deque<std::size_t> queue;
    for (StateId q : ts.initial) {
        std::size_t v = node_id(q, 0);
        if (!seen[v]) {
            seen[v] = 1;
            queue.push_back(v);
        }
    }
    std::vector<std::vector<StateId>> adj(n);
    std::vector<std::pair<std::size_t, std::size_t>> word_edges;  // (from, to)
    while (!queue.empty()) {
        std::size_t v = queue.front();
        queue.pop_front();
        StateId q = static_cast<StateId>(v / total);
        std::size_t p = v % total;
        for (std::size_t i : adj_idx[q]) {
            const Transition& t = ts.transitions[i];
            std::size_t to;
            bool reads = false;
            if (t.label.is_epsilon()) {
                to = node_id(t.dst, p);
            } else if (t.label.symbol() == w.symbol_at(p)) {
                to = node_id(t.dst, next_pos(p));
                reads = true;
            } else {
                continue;
            }
            adj[v].push_back(static_cast<StateId>(to));
            if (reads) {
                word_edges.emplace_back(v, to);
            }
            if (!seen[to]) {
                seen[to] = 1;
                queue.push_back(to);
            }
        }
    }

    auto scc = tarjan(n, adj);
    std::vector<char> comp_accepting(scc.count, 0);
    std::vector<char> comp_word_edge(scc.count, 0);
    for (std::size_t v = 0; v < n; ++v) {
        if (seen[v] && contains(ts.accepting, static_cast<StateId>(v / total))) {
            comp_accepting[scc.component[v]] = 1;
        }
    }
    for (auto [from, to] : word_edges) {
        if (scc.component[from] == scc.component[to]) {
            comp_word_edge[scc.component[from]] = 1;
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (seen[v] && comp_accepting[scc.component[v]] && comp_word_edge[scc.component[v]]) {
            return true;
        }
    }
    return false;
}

BuchiAutomaton trim(const BuchiAutomaton& a) {
    const TransitionSystem& ts = a.core();
    auto reach = forward_reachable(ts);
    auto scc = tarjan(ts.state_count, plain_adjacency(ts));
    auto live = live_components(ts, scc);
    std::vector<char> in_live(ts.state_count, 0);
    for (StateId q = 0; q < ts.state_count; ++q) {
        in_live[q] = live[scc.component[q]];
    }
    auto useful = backward_reachable(ts, in_live);
    std::vector<char> keep(ts.state_count, 0);
    for (StateId q = 0; q < ts.state_count; ++q) {
        keep[q] = reach[q] && useful[q];
    }
    return BuchiAutomaton(restrict_to(ts, keep));
}

FiniteAutomaton trim(const FiniteAutomaton& a) {
    const TransitionSystem& ts = a.core();
    auto reach = forward_reachable(ts);
    std::vector<char> is_accepting(ts.state_count, 0);
    for (StateId q : ts.accepting) {
        is_accepting[q] = 1;
    }
    auto useful = backward_reachable(ts, is_accepting);
    std::vector<char> keep(ts.state_count, 0);
    for (StateId q = 0; q < ts.state_count; ++q) {
        keep[q] = reach[q] && useful[q];
    }
    return FiniteAutomaton(restrict_to(ts, keep));
}

namespace {

/// Partition refinement: start from the accepting/non-accepting split and
/// re-split classes by their outgoing (label, class) sets until stable, then
/// collapse each class to one state. Classes are numbered by first
/// occurrence, so the result is deterministic.
TransitionSystem quotient_core(const TransitionSystem& ts) {
    const std::size_t n = ts.state_count;
    std::map<Label, int> label_ids;
    for (const Transition& t : ts.transitions) {
        label_ids.try_emplace(t.label, static_cast<int>(label_ids.size()));
    }
    std::vector<std::vector<std::pair<int, StateId>>> out(n);
    for (const Transition& t : ts.transitions) {
        out[t.src].push_back({label_ids.at(t.label), t.dst});
    }

    std::vector<int> cls(n, 0);
    for (StateId q : ts.accepting) {
        cls[q] = 1;
    }
    std::size_t classes = 0;
    while (true) {
        using Signature = std::pair<int, std::vector<std::pair<int, int>>>;
        std::map<Signature, int> ids;
        std::vector<int> next(n, 0);
        for (std::size_t q = 0; q < n; ++q) {
            Signature sig{cls[q], {}};
            for (const auto& [label, dst] : out[q]) {
                sig.second.push_back({label, cls[dst]});
            }
            std::sort(sig.second.begin(), sig.second.end());
            sig.second.erase(std::unique(sig.second.begin(), sig.second.end()),
                             sig.second.end());
            auto [it, inserted] = ids.try_emplace(std::move(sig),
                                                  static_cast<int>(ids.size()));
            next[q] = it->second;
        }
        const bool stable = ids.size() == classes;
        cls = std::move(next);
        classes = ids.size();
        if (stable) {
            break;
        }
    }

    // Renumber classes by the first state belonging to them.
    std::vector<int> order(classes, -1);
    int seen = 0;
    for (std::size_t q = 0; q < n; ++q) {
        if (order[cls[q]] < 0) {
            order[cls[q]] = seen++;
        }
    }

    TransitionSystem quotient;
    quotient.signature = ts.signature;
    quotient.state_count = classes;
    for (const Transition& t : ts.transitions) {
        quotient.transitions.push_back({static_cast<StateId>(order[cls[t.src]]), t.label,
                                        static_cast<StateId>(order[cls[t.dst]])});
    }
    for (StateId q : ts.initial) {
        quotient.initial.push_back(static_cast<StateId>(order[cls[q]]));
    }
    for (StateId q : ts.accepting) {
        quotient.accepting.push_back(static_cast<StateId>(order[cls[q]]));
    }
    return quotient;
}

}  // namespace

FiniteAutomaton reduce(const FiniteAutomaton& a) {
    return FiniteAutomaton(quotient_core(a.core()));
}

BuchiAutomaton reduce(const BuchiAutomaton& a) {
    return BuchiAutomaton(quotient_core(a.core()));
}

FiniteAutomaton determinize(const FiniteAutomaton& a) {
    const TransitionSystem& ts = a.core();
    std::vector<std::vector<std::pair<Symbol, StateId>>> by_symbol(ts.state_count);
    std::vector<std::vector<StateId>> by_epsilon(ts.state_count);
    for (const Transition& t : ts.transitions) {
        if (t.label.is_epsilon()) {
            by_epsilon[t.src].push_back(t.dst);
        } else {
            by_symbol[t.src].push_back({t.label.symbol(), t.dst});
        }
    }
    auto closure = [&](std::set<StateId> set) {
        std::vector<StateId> work(set.begin(), set.end());
        while (!work.empty()) {
            StateId q = work.back();
            work.pop_back();
            for (StateId d : by_epsilon[q]) {
                if (set.insert(d).second) {
                    work.push_back(d);
                }
            }
        }
        return std::vector<StateId>(set.begin(), set.end());
    };

    TransitionSystem out;
    out.signature = ts.signature;
    std::vector<StateId> start =
        closure(std::set<StateId>(ts.initial.begin(), ts.initial.end()));
    if (start.empty()) {
        return FiniteAutomaton(std::move(out));
    }

    std::map<std::vector<StateId>, StateId> ids;
    std::deque<const std::vector<StateId>*> queue;
    auto intern = [&](std::vector<StateId> subset) {
        auto [it, inserted] = ids.try_emplace(std::move(subset),
                                              static_cast<StateId>(ids.size()));
        if (inserted) {
            queue.push_back(&it->first);
        }
        return it->second;
    };
    out.initial.push_back(intern(std::move(start)));

    while (!queue.empty()) {
        const std::vector<StateId>& subset = *queue.front();
        queue.pop_front();
        const StateId src = ids.at(subset);
        std::map<Symbol, std::set<StateId>> successors;
        for (StateId q : subset) {
            for (const auto& [symbol, dst] : by_symbol[q]) {
                successors[symbol].insert(dst);
            }
        }
        for (auto& [symbol, raw] : successors) {
            StateId dst = intern(closure(std::move(raw)));
            out.transitions.push_back({src, Label::symbol(symbol), dst});
        }
    }

    out.state_count = ids.size();
    for (const auto& [subset, id] : ids) {
        if (std::any_of(subset.begin(), subset.end(),
                        [&](StateId q) { return contains(ts.accepting, q); })) {
            out.accepting.push_back(id);
        }
    }
    return FiniteAutomaton(std::move(out));
}

namespace {

/// Lazily explored product. `phased` selects the Buchi flavour (phase 0/1/2
/// acceptance bookkeeping); otherwise plain pairs with both-accepting finals.
TransitionSystem product_core(const TransitionSystem& a, const TransitionSystem& b,
                              bool phased) {
    TransitionSystem out;
    out.signature = a.signature;

    struct Node {
        StateId qa, qb;
        int phase;
    };
    std::map<std::tuple<StateId, StateId, int>, StateId> ids;
    std::vector<Node> nodes;
    std::deque<StateId> queue;

    auto a_accepting = [&](StateId q) { return contains(a.accepting, q); };
    auto b_accepting = [&](StateId q) { return contains(b.accepting, q); };
    auto advance = [&](int phase, StateId qa, StateId qb) {
        if (!phased) {
            return 0;
        }
        int next = phase == 2 ? 0 : phase;
        if (next == 0 && a_accepting(qa)) {
            next = 1;
        }
        if (next == 1 && b_accepting(qb)) {
            next = 2;
        }
        return next;
    };
    auto intern = [&](StateId qa, StateId qb, int phase) {
        auto [it, inserted] = ids.try_emplace({qa, qb, phase},
                                              static_cast<StateId>(nodes.size()));
        if (inserted) {
            nodes.push_back({qa, qb, phase});
            queue.push_back(it->second);
        }
        return it->second;
    };

    for (StateId ia : a.initial) {
        for (StateId ib : b.initial) {
            intern(ia, ib, 0);
        }
    }
    auto adj_a = out_edges(a);
    auto adj_b = out_edges(b);
    while (!queue.empty()) {
        StateId v = queue.front();
        queue.pop_front();
        Node node = nodes[v];
        for (std::size_t i : adj_a[node.qa]) {
            const Transition& ta = a.transitions[i];
            if (ta.label.is_epsilon()) {
                StateId to = intern(ta.dst, node.qb,
                                    advance(node.phase, ta.dst, node.qb));
                out.transitions.push_back({v, Label::epsilon(), to});
            } else {
                for (std::size_t j : adj_b[node.qb]) {
                    const Transition& tb = b.transitions[j];
                    if (!tb.label.is_epsilon() && tb.label == ta.label) {
                        StateId to = intern(ta.dst, tb.dst,
                                            advance(node.phase, ta.dst, tb.dst));
                        out.transitions.push_back({v, ta.label, to});
                    }
                }
            }
        }
        for (std::size_t j : adj_b[node.qb]) {
            const Transition& tb = b.transitions[j];
            if (tb.label.is_epsilon()) {
                StateId to = intern(node.qa, tb.dst,
                                    advance(node.phase, node.qa, tb.dst));
                out.transitions.push_back({v, Label::epsilon(), to});
            }
        }
    }

    out.state_count = nodes.size();
    for (StateId ia : a.initial) {
        for (StateId ib : b.initial) {
            out.initial.push_back(ids.at({ia, ib, 0}));
        }
    }
    for (std::size_t v = 0; v < nodes.size(); ++v) {
        if (phased ? nodes[v].phase == 2
                   : (a_accepting(nodes[v].qa) && b_accepting(nodes[v].qb))) {
            out.accepting.push_back(static_cast<StateId>(v));
        }
    }
    out.canonicalize();
    return out;
}

TransitionSystem disjoint_union_core(const TransitionSystem& a, const TransitionSystem& b) {
    TransitionSystem out;
    out.signature = a.signature;
    out.state_count = a.state_count + b.state_count;
    const StateId offset = static_cast<StateId>(a.state_count);
    out.transitions = a.transitions;
    for (const Transition& t : b.transitions) {
        out.transitions.push_back({t.src + offset, t.label, t.dst + offset});
    }
    out.initial = a.initial;
    for (StateId q : b.initial) {
        out.initial.push_back(q + offset);
    }
    out.accepting = a.accepting;
    for (StateId q : b.accepting) {
        out.accepting.push_back(q + offset);
    }
    out.canonicalize();
    return out;
}

}  // namespace

BuchiAutomaton buchi_intersection(const BuchiAutomaton& a, const BuchiAutomaton& b) {
    check_same_signature(a.signature(), b.signature(), "buchi_intersection");
    return BuchiAutomaton(product_core(a.core(), b.core(), true));
}

BuchiAutomaton buchi_union(const BuchiAutomaton& a, const BuchiAutomaton& b) {
    check_same_signature(a.signature(), b.signature(), "buchi_union");
    return BuchiAutomaton(disjoint_union_core(a.core(), b.core()));
}

FiniteAutomaton finite_intersection(const FiniteAutomaton& a, const FiniteAutomaton& b) {
    check_same_signature(a.signature(), b.signature(), "finite_intersection");
    return FiniteAutomaton(product_core(a.core(), b.core(), false));
}

FiniteAutomaton finite_union(const FiniteAutomaton& a, const FiniteAutomaton& b) {
    check_same_signature(a.signature(), b.signature(), "finite_union");
    return FiniteAutomaton(disjoint_union_core(a.core(), b.core()));
}

bool finite_is_empty(const FiniteAutomaton& a) {
    const TransitionSystem& ts = a.core();
    auto reach = forward_reachable(ts);
    for (StateId q : ts.accepting) {
        if (reach[q]) {
            return false;
        }
    }
    return true;
}

bool finite_membership(const FiniteAutomaton& a, std::span<const Symbol> word) {
    const TransitionSystem& ts = a.core();
    for (const Symbol& s : word) {
        if (s.width() != ts.signature.width()) {
            throw WidthMismatchError("word symbol width " + std::to_string(s.width()) +
                                     " does not match automaton width " +
                                     std::to_string(ts.signature.width()));
        }
    }
    auto adj = out_edges(ts);
    std::vector<StateId> current = epsilon_closure(ts, adj, ts.initial);
    for (const Symbol& s : word) {
        std::vector<StateId> next;
        for (StateId q : current) {
            for (std::size_t i : adj[q]) {
                const Transition& t = ts.transitions[i];
                if (!t.label.is_epsilon() && t.label.symbol() == s) {
                    next.push_back(t.dst);
                }
            }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        current = epsilon_closure(ts, adj, std::move(next));
        if (current.empty()) {
            return false;
        }
    }
    for (StateId q : current) {
        if (contains(ts.accepting, q)) {
            return true;
        }
    }
    return false;
}

bool finite_accepts_epsilon(const FiniteAutomaton& a) {
    const TransitionSystem& ts = a.core();
    auto adj = out_edges(ts);
    for (StateId q : epsilon_closure(ts, adj, ts.initial)) {
        if (contains(ts.accepting, q)) {
            return true;
        }
    }
    return false;
}

namespace {

FiniteAutomaton paths_core(const TransitionSystem& ts, StateId q1, StateId q2) {
    check_state(ts, q1, "path source");
    check_state(ts, q2, "path target");
    TransitionSystem out = ts;
    out.initial = {q1};
    out.accepting = {q2};
    return FiniteAutomaton(std::move(out));
}

}  // namespace

FiniteAutomaton paths_automaton(const BuchiAutomaton& a, StateId q1, StateId q2) {
    return paths_core(a.core(), q1, q2);
}

FiniteAutomaton paths_automaton(const FiniteAutomaton& a, StateId q1, StateId q2) {
    return paths_core(a.core(), q1, q2);
}

BuchiAutomaton omega_closure(const FiniteAutomaton& n) {
    if (finite_accepts_epsilon(n)) {
        throw EpsilonInLanguageError(
            "omega_closure requires a language without the empty word");
    }
    const TransitionSystem& ts = n.core();
    TransitionSystem out = ts;
    const StateId repeat = static_cast<StateId>(ts.state_count);
    out.state_count += 1;
    if (!out.state_labels.empty()) {
        out.state_labels.push_back("repeat");
    }
    for (StateId q : ts.initial) {
        out.transitions.push_back({repeat, Label::epsilon(), q});
    }
    for (StateId q : ts.accepting) {
        out.transitions.push_back({q, Label::epsilon(), repeat});
    }
    out.initial = {repeat};
    out.accepting = {repeat};
    return BuchiAutomaton(std::move(out));
}

std::optional<LassoWord> buchi_witness(const BuchiAutomaton& a) {
    const TransitionSystem& ts = a.core();
    if (ts.state_count == 0 || ts.initial.empty()) {
        return std::nullopt;
    }
    auto scc = tarjan(ts.state_count, plain_adjacency(ts));
    auto live = live_components(ts, scc);
    auto adj = out_edges(ts);  // transition indices; transitions are sorted

    // Breadth first search for the first accepting state inside a live
    // component. Initial states and transitions are visited in canonical
    // order, which pins down the witness.
    std::vector<std::int64_t> parent_edge(ts.state_count, -1);
    std::vector<char> seen(ts.state_count, 0);
    std::deque<StateId> queue;
    for (StateId q : ts.initial) {
        if (!seen[q]) {
            seen[q] = 1;
            queue.push_back(q);
        }
    }
    std::optional<StateId> anchor;
    for (StateId q : ts.initial) {
        if (contains(ts.accepting, q) && live[scc.component[q]]) {
            anchor = q;
            break;
        }
    }
    while (!anchor && !queue.empty()) {
        StateId q = queue.front();
        queue.pop_front();
        for (std::size_t i : adj[q]) {
            StateId d = ts.transitions[i].dst;
            if (!seen[d]) {
                seen[d] = 1;
                parent_edge[d] = static_cast<std::int64_t>(i);
                if (contains(ts.accepting, d) && live[scc.component[d]]) {
                    anchor = d;
                    break;
                }
                queue.push_back(d);
            }
        }
    }
    if (!anchor) {
        return std::nullopt;
    }

    std::vector<Symbol> prefix;
    for (StateId q = *anchor; parent_edge[q] >= 0;) {
        const Transition& t = ts.transitions[static_cast<std::size_t>(parent_edge[q])];
        if (!t.label.is_epsilon()) {
            prefix.push_back(t.label.symbol());
        }
        q = t.src;
    }
    std::reverse(prefix.begin(), prefix.end());

    // Shortest cycle through the anchor that reads at least one symbol,
    // found on (state, read-flag) pairs restricted to the anchor's component.
    const std::uint32_t comp = scc.component[*anchor];
    auto cyc_id = [&](StateId q, bool read) {
        return static_cast<std::size_t>(q) * 2 + (read ? 1 : 0);
    };
    struct CycleParent {
        std::size_t node = SIZE_MAX;
        std::size_t edge = SIZE_MAX;
    };
    std::vector<CycleParent> cyc_parent(ts.state_count * 2);
    std::vector<char> cyc_seen(ts.state_count * 2, 0);
    std::deque<std::size_t> cyc_queue;
    const std::size_t start = cyc_id(*anchor, false);
    cyc_seen[start] = 1;
    cyc_queue.push_back(start);
    while (!cyc_queue.empty()) {
        std::size_t v = cyc_queue.front();
        cyc_queue.pop_front();
        StateId q = static_cast<StateId>(v / 2);
        bool read = v % 2 == 1;
        for (std::size_t i : adj[q]) {
            const Transition& t = ts.transitions[i];
            if (scc.component[t.dst] != comp) {
                continue;
            }
            const bool next_read = read || !t.label.is_epsilon();
            if (t.dst == *anchor && next_read) {
                // Closing edge found: unwind the path anchor -> v, append it.
                std::vector<Symbol> period;
                if (!t.label.is_epsilon()) {
                    period.push_back(t.label.symbol());
                }
                for (std::size_t cur = v; cur != start;) {
                    const CycleParent& p = cyc_parent[cur];
                    const Transition& pt = ts.transitions[p.edge];
                    if (!pt.label.is_epsilon()) {
                        period.push_back(pt.label.symbol());
                    }
                    cur = p.node;
                }
                std::reverse(period.begin(), period.end());
                return LassoWord(std::move(prefix), std::move(period));
            }
            const std::size_t to = cyc_id(t.dst, next_read);
            if (!cyc_seen[to]) {
                cyc_seen[to] = 1;
                cyc_parent[to] = {v, i};
                cyc_queue.push_back(to);
            }
        }
    }
    return std::nullopt;
}

std::vector<LassoWord> enumerate_accepted_lassos(const BuchiAutomaton& a,
                                                 std::size_t max_prefix,
                                                 std::size_t max_period,
                                                 std::size_t limit) {
    std::vector<LassoWord> out;
    const std::uint32_t width = a.signature().width();
    const std::uint64_t alphabet = std::uint64_t{1} << width;

    auto words_of_length = [&](std::size_t len) {
        std::vector<std::vector<Symbol>> words;
        std::vector<Symbol> current(len, Symbol::zeros(width));
        std::vector<std::uint64_t> digits(len, 0);
        while (true) {
            words.push_back(current);
            std::size_t i = 0;
            for (; i < len; ++i) {
                if (++digits[i] < alphabet) {
                    current[i] = Symbol(digits[i], width);
                    break;
                }
                digits[i] = 0;
                current[i] = Symbol(0, width);
            }
            if (i == len) {
                break;
            }
        }
        return words;
    };

    for (std::size_t lu = 0; lu <= max_prefix; ++lu) {
        auto prefixes = words_of_length(lu);
        for (std::size_t lv = 1; lv <= max_period; ++lv) {
            auto periods = words_of_length(lv);
            for (const auto& u : prefixes) {
                for (const auto& v : periods) {
                    LassoWord w(u, v);
                    if (lasso_membership(a, w)) {
                        out.push_back(std::move(w));
                        if (out.size() >= limit) {
                            return out;
                        }
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace monaut
