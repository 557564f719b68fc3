#include "monaut/encoding.hpp"

#include <algorithm>
#include <numeric>

namespace monaut {

namespace {

std::size_t lcm_size(std::size_t a, std::size_t b) { return std::lcm(a, b); }

}  // namespace

UltimatelyPeriodicSet::UltimatelyPeriodicSet() : period_{false} {}

UltimatelyPeriodicSet::UltimatelyPeriodicSet(std::vector<bool> prefix, std::vector<bool> period)
    : prefix_(std::move(prefix)), period_(std::move(period)) {
    if (period_.empty()) {
        throw MalformedAutomatonError("an ultimately periodic set needs a non-empty period");
    }
}

UltimatelyPeriodicSet UltimatelyPeriodicSet::from_members(
    const std::vector<std::size_t>& members) {
    std::size_t len = 0;
    for (std::size_t m : members) {
        len = std::max(len, m + 1);
    }
    std::vector<bool> prefix(len, false);
    for (std::size_t m : members) {
        prefix[m] = true;
    }
    return UltimatelyPeriodicSet(std::move(prefix), {false});
}

bool UltimatelyPeriodicSet::contains(std::size_t n) const {
    if (n < prefix_.size()) {
        return prefix_[n];
    }
    return period_[(n - prefix_.size()) % period_.size()];
}

bool UltimatelyPeriodicSet::is_finite() const {
    return std::none_of(period_.begin(), period_.end(), [](bool b) { return b; });
}

UltimatelyPeriodicSet UltimatelyPeriodicSet::normalized() const {
    // Shrink the period to its smallest cyclic divisor.
    std::vector<bool> period = period_;
    for (std::size_t d = 1; d <= period.size() / 2; ++d) {
        if (period.size() % d != 0) {
            continue;
        }
        bool repeats = true;
        for (std::size_t i = d; i < period.size() && repeats; ++i) {
            repeats = period[i] == period[i % d];
        }
        if (repeats) {
            period.resize(d);
            break;
        }
    }
    // Absorb the prefix tail into the period by rotating.
    std::vector<bool> prefix = prefix_;
    while (!prefix.empty() && prefix.back() == period.back()) {
        prefix.pop_back();
        std::rotate(period.begin(), period.end() - 1, period.end());
    }
    return UltimatelyPeriodicSet(std::move(prefix), std::move(period));
}

std::string UltimatelyPeriodicSet::preview(std::size_t max_members) const {
    const std::size_t horizon = is_finite()
                                    ? prefix_.size()
                                    : prefix_.size() + (max_members + 1) * period_.size();
    std::string out = "{";
    std::size_t listed = 0;
    bool truncated = !is_finite();
    for (std::size_t n = 0; n < horizon; ++n) {
        if (!contains(n)) {
            continue;
        }
        if (listed == max_members) {
            truncated = true;
            break;
        }
        if (listed > 0) {
            out += ',';
        }
        out += std::to_string(n);
        ++listed;
    }
    if (truncated) {
        out += listed > 0 ? ",..." : "...";
    }
    out += '}';
    return out;
}

bool operator==(const UltimatelyPeriodicSet& a, const UltimatelyPeriodicSet& b) {
    const std::size_t prefix = std::max(a.prefix_.size(), b.prefix_.size());
    const std::size_t horizon = prefix + lcm_size(a.period_.size(), b.period_.size());
    for (std::size_t n = 0; n < horizon; ++n) {
        if (a.contains(n) != b.contains(n)) {
            return false;
        }
    }
    return true;
}

LassoWord encode_interpretation(const Interpretation& interp, const VariableSignature& sig) {
    if (interp.fo_values.size() != sig.fo_count() ||
        interp.so_values.size() != sig.so_count()) {
        throw SignatureMismatchError("interpretation domain does not match signature " +
                                     sig.to_string());
    }
    for (const auto& name : sig.fo_vars()) {
        if (!interp.fo_values.count(name)) {
            throw SignatureMismatchError("interpretation misses first-order variable \"" +
                                         name + "\"");
        }
    }
    for (const auto& name : sig.so_vars()) {
        if (!interp.so_values.count(name)) {
            throw SignatureMismatchError("interpretation misses second-order variable \"" +
                                         name + "\"");
        }
    }

    std::size_t prefix_len = 0;
    for (const auto& [name, value] : interp.fo_values) {
        prefix_len = std::max(prefix_len, value + 1);
    }
    std::size_t period_len = 1;
    for (const auto& [name, set] : interp.so_values) {
        prefix_len = std::max(prefix_len, set.prefix_bits().size());
        period_len = lcm_size(period_len, set.period_bits().size());
    }

    auto symbol_at = [&](std::size_t n) {
        Symbol s = Symbol::zeros(sig.width());
        for (std::uint32_t t = 0; t < sig.width(); ++t) {
            const std::string& name = sig.track_name(t);
            bool bit;
            if (sig.track_is_fo(t)) {
                bit = interp.fo_values.at(name) == n;
            } else {
                bit = interp.so_values.at(name).contains(n);
            }
            if (bit) {
                s = s.with_bit(t, true);
            }
        }
        return s;
    };

    std::vector<Symbol> prefix;
    prefix.reserve(prefix_len);
    for (std::size_t n = 0; n < prefix_len; ++n) {
        prefix.push_back(symbol_at(n));
    }
    std::vector<Symbol> period;
    period.reserve(period_len);
    for (std::size_t n = prefix_len; n < prefix_len + period_len; ++n) {
        period.push_back(symbol_at(n));
    }
    return LassoWord(std::move(prefix), std::move(period));
}

Interpretation decode_lasso(const LassoWord& w, const VariableSignature& sig) {
    if (w.width() != sig.width()) {
        throw WidthMismatchError("lasso width " + std::to_string(w.width()) +
                                 " does not match signature width " +
                                 std::to_string(sig.width()));
    }
    Interpretation out;
    for (std::uint32_t t = 0; t < sig.width(); ++t) {
        const std::string& name = sig.track_name(t);
        if (sig.track_is_fo(t)) {
            bool in_period = false;
            for (const Symbol& s : w.period()) {
                in_period = in_period || s.bit(t);
            }
            if (in_period) {
                throw InvalidEncodingError(
                    name, "track " + name + " carries infinitely many 1s");
            }
            std::vector<std::size_t> ones;
            for (std::size_t n = 0; n < w.prefix().size(); ++n) {
                if (w.prefix()[n].bit(t)) {
                    ones.push_back(n);
                }
            }
            if (ones.size() != 1) {
                throw InvalidEncodingError(
                    name, "track " + name + " carries " + std::to_string(ones.size()) +
                              " 1s; a first-order track needs exactly one");
            }
            out.fo_values[name] = ones.front();
        } else {
            std::vector<bool> prefix;
            prefix.reserve(w.prefix().size());
            for (const Symbol& s : w.prefix()) {
                prefix.push_back(s.bit(t));
            }
            std::vector<bool> period;
            period.reserve(w.period().size());
            for (const Symbol& s : w.period()) {
                period.push_back(s.bit(t));
            }
            out.so_values.emplace(name, UltimatelyPeriodicSet(std::move(prefix),
                                                              std::move(period)));
        }
    }
    return out;
}

BuchiAutomaton valid_encodings_automaton(const VariableSignature& sig) {
    const std::size_t k = sig.fo_count();
    const std::uint32_t width = sig.width();
    TransitionSystem ts;
    ts.signature = sig;
    ts.state_count = std::size_t{1} << k;
    const std::uint64_t full = (std::uint64_t{1} << k) - 1;
    const std::uint64_t alphabet = std::uint64_t{1} << width;
    for (std::uint64_t consumed = 0; consumed <= full; ++consumed) {
        for (std::uint64_t bits = 0; bits < alphabet; ++bits) {
            const std::uint64_t fires = bits & full;  // first-order tracks come first
            if ((fires & consumed) != 0) {
                continue;
            }
            ts.transitions.push_back({static_cast<StateId>(consumed),
                                      Label::symbol(Symbol(bits, width)),
                                      static_cast<StateId>(consumed | fires)});
        }
    }
    ts.initial = {0};
    ts.accepting = {static_cast<StateId>(full)};
    return BuchiAutomaton(std::move(ts));
}

namespace {

TransitionSystem project_core(const TransitionSystem& ts, std::string_view var) {
    const std::uint32_t track = ts.signature.track_of(var);
    TransitionSystem out;
    out.signature = ts.signature.without(var);
    out.state_count = ts.state_count;
    out.initial = ts.initial;
    out.accepting = ts.accepting;
    out.state_labels = ts.state_labels;
    out.transitions.reserve(ts.transitions.size());
    for (const Transition& t : ts.transitions) {
        Label label = t.label.is_epsilon()
                          ? Label::epsilon()
                          : Label::symbol(t.label.symbol().drop_track(track));
        out.transitions.push_back({t.src, label, t.dst});
    }
    out.canonicalize();
    return out;
}

TransitionSystem duplicate_track_core(const TransitionSystem& ts, std::string_view var,
                                      VariableKind kind, std::size_t position) {
    VariableSignature sig = ts.signature.with_variable(var, kind, position);
    const std::uint32_t track = sig.track_of(var);
    TransitionSystem out;
    out.signature = sig;
    out.state_count = ts.state_count;
    out.initial = ts.initial;
    out.accepting = ts.accepting;
    out.state_labels = ts.state_labels;
    for (const Transition& t : ts.transitions) {
        if (t.label.is_epsilon()) {
            out.transitions.push_back(t);
        } else {
            const Symbol& s = t.label.symbol();
            out.transitions.push_back({t.src, Label::symbol(s.insert_track(track, false)),
                                       t.dst});
            out.transitions.push_back({t.src, Label::symbol(s.insert_track(track, true)),
                                       t.dst});
        }
    }
    out.canonicalize();
    return out;
}

/// Product with the two-phase "has the new track fired yet" gadget; the new
/// first-order track fires exactly once along every accepted word.
TransitionSystem add_fo_core(const TransitionSystem& ts, std::string_view var,
                             std::size_t position) {
    VariableSignature sig = ts.signature.with_variable(var, VariableKind::FirstOrder,
                                                       position);
    const std::uint32_t track = sig.track_of(var);
    TransitionSystem out;
    out.signature = sig;
    out.state_count = ts.state_count * 2;
    auto id = [&](StateId q, bool fired) {
        return static_cast<StateId>(q + (fired ? ts.state_count : 0));
    };
    for (const Transition& t : ts.transitions) {
        if (t.label.is_epsilon()) {
            out.transitions.push_back({id(t.src, false), t.label, id(t.dst, false)});
            out.transitions.push_back({id(t.src, true), t.label, id(t.dst, true)});
        } else {
            const Symbol& s = t.label.symbol();
            Label quiet = Label::symbol(s.insert_track(track, false));
            Label firing = Label::symbol(s.insert_track(track, true));
            out.transitions.push_back({id(t.src, false), quiet, id(t.dst, false)});
            out.transitions.push_back({id(t.src, false), firing, id(t.dst, true)});
            out.transitions.push_back({id(t.src, true), quiet, id(t.dst, true)});
        }
    }
    for (StateId q : ts.initial) {
        out.initial.push_back(id(q, false));
    }
    for (StateId q : ts.accepting) {
        out.accepting.push_back(id(q, true));
    }
    if (!ts.state_labels.empty()) {
        out.state_labels.resize(out.state_count);
        for (StateId q = 0; q < ts.state_count; ++q) {
            out.state_labels[id(q, false)] = ts.state_labels[q];
            out.state_labels[id(q, true)] = ts.state_labels[q] + "+" + std::string(var);
        }
    }
    out.canonicalize();
    return out;
}

TransitionSystem reorder_core(const TransitionSystem& ts, const VariableSignature& target) {
    auto same_names = [](std::span<const std::string> a, std::span<const std::string> b) {
        std::vector<std::string> sa(a.begin(), a.end());
        std::vector<std::string> sb(b.begin(), b.end());
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        return sa == sb;
    };
    if (!same_names(ts.signature.fo_vars(), target.fo_vars()) ||
        !same_names(ts.signature.so_vars(), target.so_vars())) {
        throw InvalidPermutationError("target signature " + target.to_string() +
                                      " is not a permutation of " +
                                      ts.signature.to_string());
    }
    std::vector<std::uint32_t> source_for(target.width());
    for (std::uint32_t j = 0; j < target.width(); ++j) {
        source_for[j] = ts.signature.track_of(target.track_name(j));
    }
    TransitionSystem out;
    out.signature = target;
    out.state_count = ts.state_count;
    out.initial = ts.initial;
    out.accepting = ts.accepting;
    out.state_labels = ts.state_labels;
    for (const Transition& t : ts.transitions) {
        Label label = t.label.is_epsilon()
                          ? Label::epsilon()
                          : Label::symbol(t.label.symbol().reordered(source_for));
        out.transitions.push_back({t.src, label, t.dst});
    }
    out.canonicalize();
    return out;
}

}  // namespace

BuchiAutomaton project_variable(const BuchiAutomaton& a, std::string_view var) {
    return BuchiAutomaton(project_core(a.core(), var));
}

FiniteAutomaton project_variable(const FiniteAutomaton& a, std::string_view var) {
    return FiniteAutomaton(project_core(a.core(), var));
}

BuchiAutomaton add_variable(const BuchiAutomaton& a, std::string_view var,
                            VariableKind kind, std::size_t position) {
    if (kind == VariableKind::SecondOrder) {
        return BuchiAutomaton(duplicate_track_core(a.core(), var, kind, position));
    }
    return BuchiAutomaton(add_fo_core(a.core(), var, position));
}

FiniteAutomaton add_variable(const FiniteAutomaton& a, std::string_view var,
                             VariableKind kind, std::size_t position) {
    if (kind == VariableKind::SecondOrder) {
        return FiniteAutomaton(duplicate_track_core(a.core(), var, kind, position));
    }
    return FiniteAutomaton(add_fo_core(a.core(), var, position));
}

BuchiAutomaton reorder_variables(const BuchiAutomaton& a, const VariableSignature& target) {
    return BuchiAutomaton(reorder_core(a.core(), target));
}

FiniteAutomaton reorder_variables(const FiniteAutomaton& a, const VariableSignature& target) {
    return FiniteAutomaton(reorder_core(a.core(), target));
}

}  // namespace monaut
