#include "monaut/aut_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

namespace monaut {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : text) {
        if (c == sep) {
            parts.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    parts.push_back(current);
    return parts;
}

std::string strip(const std::string& text) {
    auto begin = text.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return {};
    }
    auto end = text.find_last_not_of(" \t\r");
    return text.substr(begin, end - begin + 1);
}

std::vector<std::string> variable_list(const std::string& field, std::size_t line_no) {
    if (field.empty()) {
        return {};
    }
    std::vector<std::string> names = split(field, ',');
    for (const std::string& name : names) {
        if (name.empty()) {
            throw AutFormatError(line_no, "empty variable name in signature");
        }
    }
    return names;
}

StateId parse_state_id(const std::string& token, std::size_t line_no) {
    if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos) {
        throw AutFormatError(line_no, "expected a state id, got \"" + token + "\"");
    }
    unsigned long value = std::stoul(token);
    if (value > 0xffffffffUL) {
        throw AutFormatError(line_no, "state id " + token + " out of range");
    }
    return static_cast<StateId>(value);
}

}  // namespace

BuchiAutomaton ParsedAut::as_buchi() const { return BuchiAutomaton(system); }

FiniteAutomaton ParsedAut::as_finite() const { return FiniteAutomaton(system); }

ParsedAut read_aut(std::istream& in) {
    ParsedAut result;
    std::optional<VariableSignature> sig;
    std::optional<std::size_t> states;
    bool seen_initial = false;
    bool seen_accepting = false;
    bool seen_kind = false;
    std::vector<Transition> transitions;
    std::vector<StateId> initial;
    std::vector<StateId> accepting;

    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = strip(raw);
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::istringstream fields(line);
        std::string keyword;
        fields >> keyword;

        if (keyword == "kind") {
            if (seen_kind) {
                throw AutFormatError(line_no, "duplicate kind line");
            }
            seen_kind = true;
            std::string value;
            fields >> value;
            if (value == "buchi") {
                result.kind = AutomatonKind::Buchi;
            } else if (value == "finite") {
                result.kind = AutomatonKind::Finite;
            } else {
                throw AutFormatError(line_no, "unknown kind \"" + value + "\"");
            }
        } else if (keyword == "sig") {
            if (sig) {
                throw AutFormatError(line_no, "duplicate sig line");
            }
            std::string fo_field;
            std::string so_field;
            fields >> fo_field >> so_field;
            if (fo_field.rfind("fo:", 0) != 0 || so_field.rfind("so:", 0) != 0) {
                throw AutFormatError(line_no, "expected `sig fo:<names> so:<names>`");
            }
            try {
                sig = VariableSignature(variable_list(fo_field.substr(3), line_no),
                                        variable_list(so_field.substr(3), line_no));
            } catch (const Error& e) {
                throw AutFormatError(line_no, e.what());
            }
        } else if (keyword == "states") {
            if (states) {
                throw AutFormatError(line_no, "duplicate states line");
            }
            std::string count;
            fields >> count;
            states = parse_state_id(count, line_no);
        } else if (keyword == "initial" || keyword == "accepting") {
            bool& seen = keyword == "initial" ? seen_initial : seen_accepting;
            if (seen) {
                throw AutFormatError(line_no, "duplicate " + keyword + " line");
            }
            seen = true;
            std::vector<StateId>& target = keyword == "initial" ? initial : accepting;
            std::string token;
            while (fields >> token) {
                target.push_back(parse_state_id(token, line_no));
            }
        } else if (keyword == "trans") {
            if (!sig) {
                throw AutFormatError(line_no, "trans line before sig line");
            }
            std::string src;
            std::string dst;
            std::string label;
            fields >> src >> dst >> label;
            if (label.empty()) {
                throw AutFormatError(line_no, "expected `trans <src> <dst> <label>`");
            }
            Label parsed = Label::epsilon();
            if (label != "eps") {
                if (label.size() != sig->width() ||
                    label.find_first_not_of("01") != std::string::npos) {
                    throw AutFormatError(line_no, "label \"" + label +
                                                      "\" is not eps or a bitstring of width " +
                                                      std::to_string(sig->width()));
                }
                parsed = Label::symbol(Symbol::from_string(label));
            }
            transitions.push_back(
                {parse_state_id(src, line_no), parsed, parse_state_id(dst, line_no)});
        } else {
            throw AutFormatError(line_no, "unknown directive \"" + keyword + "\"");
        }

        std::string extra;
        if (fields >> extra) {
            throw AutFormatError(line_no, "trailing token \"" + extra + "\"");
        }
    }

    if (!sig) {
        throw AutFormatError(line_no, "missing sig line");
    }
    if (!states) {
        throw AutFormatError(line_no, "missing states line");
    }
    result.system.signature = *sig;
    result.system.state_count = *states;
    result.system.transitions = std::move(transitions);
    result.system.initial = std::move(initial);
    result.system.accepting = std::move(accepting);
    try {
        result.system.canonicalize();
        result.system.validate();
    } catch (const Error& e) {
        throw AutFormatError(line_no, e.what());
    }
    return result;
}

ParsedAut read_aut_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw AutFormatError(0, "cannot open " + path.string());
    }
    return read_aut(in);
}

namespace {

void write_core(std::ostream& out, const TransitionSystem& ts, AutomatonKind kind,
                std::string_view comment) {
    if (!comment.empty()) {
        std::istringstream lines{std::string(comment)};
        std::string line;
        while (std::getline(lines, line)) {
            out << "# " << line << '\n';
        }
    }
    for (std::size_t q = 0; q < ts.state_labels.size(); ++q) {
        if (!ts.state_labels[q].empty()) {
            out << "# state " << q << ": " << ts.state_labels[q] << '\n';
        }
    }
    out << "kind " << (kind == AutomatonKind::Buchi ? "buchi" : "finite") << '\n';
    out << "sig " << ts.signature.to_string() << '\n';
    out << "states " << ts.state_count << '\n';
    out << "initial";
    for (StateId q : ts.initial) {
        out << ' ' << q;
    }
    out << '\n';
    out << "accepting";
    for (StateId q : ts.accepting) {
        out << ' ' << q;
    }
    out << '\n';
    for (const Transition& t : ts.transitions) {
        out << "trans " << t.src << ' ' << t.dst << ' ' << t.label.to_string() << '\n';
    }
}

std::string dot_escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out;
}

/// One grouped edge label in the style of the figures: second-order bits as a
/// tuple with the fired first-order variables underneath.
std::string figure_label(const Label& label, const VariableSignature& sig) {
    if (label.is_epsilon()) {
        return "eps";
    }
    const Symbol& s = label.symbol();
    std::string so_part = "(";
    for (std::uint32_t t = static_cast<std::uint32_t>(sig.fo_count()); t < sig.width(); ++t) {
        if (t > sig.fo_count()) {
            so_part += ',';
        }
        so_part += s.bit(t) ? '1' : '0';
    }
    so_part += ')';
    std::string fired;
    for (std::uint32_t t = 0; t < sig.fo_count(); ++t) {
        if (s.bit(t)) {
            if (!fired.empty()) {
                fired += ',';
            }
            fired += sig.track_name(t);
        }
    }
    if (fired.empty()) {
        return so_part;
    }
    return so_part + " {" + fired + "}";
}

std::string dot_core(const TransitionSystem& ts, AutomatonKind kind,
                     std::string_view graph_name) {
    std::ostringstream out;
    out << "digraph \"" << dot_escape(std::string(graph_name)) << "\" {\n";
    out << "  rankdir=LR;\n";
    out << "  node [shape=circle];\n";
    auto is_accepting = [&](StateId q) {
        return std::find(ts.accepting.begin(), ts.accepting.end(), q) != ts.accepting.end();
    };
    for (std::size_t q = 0; q < ts.state_count; ++q) {
        std::string name = q < ts.state_labels.size() && !ts.state_labels[q].empty()
                               ? ts.state_labels[q]
                               : "q" + std::to_string(q);
        out << "  s" << q << " [label=\"" << dot_escape(name) << '"';
        if (is_accepting(static_cast<StateId>(q))) {
            out << ", shape=doublecircle";
        }
        out << "];\n";
    }
    for (std::size_t i = 0; i < ts.initial.size(); ++i) {
        out << "  init" << i << " [shape=none, label=\"\"];\n";
        out << "  init" << i << " -> s" << ts.initial[i] << ";\n";
    }
    std::map<std::pair<StateId, StateId>, std::vector<std::string>> grouped;
    for (const Transition& t : ts.transitions) {
        grouped[{t.src, t.dst}].push_back(figure_label(t.label, ts.signature));
    }
    for (const auto& [endpoints, labels] : grouped) {
        out << "  s" << endpoints.first << " -> s" << endpoints.second << " [label=\"";
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (i > 0) {
                out << "\\n";
            }
            out << dot_escape(labels[i]);
        }
        out << "\"];\n";
    }
    out << "  label=\"" << (kind == AutomatonKind::Buchi ? "Buchi" : "finite") << "\";\n";
    out << "}\n";
    return out.str();
}

}  // namespace

void write_aut(std::ostream& out, const BuchiAutomaton& a, std::string_view comment) {
    write_core(out, a.core(), AutomatonKind::Buchi, comment);
}

void write_aut(std::ostream& out, const FiniteAutomaton& a, std::string_view comment) {
    write_core(out, a.core(), AutomatonKind::Finite, comment);
}

namespace {

void write_file(const std::filesystem::path& path, auto writer) {
    std::ofstream out(path);
    if (!out) {
        throw AutFormatError(0, "cannot open " + path.string() + " for writing");
    }
    writer(out);
}

}  // namespace

void write_aut_file(const std::filesystem::path& path, const BuchiAutomaton& a,
                    std::string_view comment) {
    write_file(path, [&](std::ostream& out) { write_aut(out, a, comment); });
}

void write_aut_file(const std::filesystem::path& path, const FiniteAutomaton& a,
                    std::string_view comment) {
    write_file(path, [&](std::ostream& out) { write_aut(out, a, comment); });
}

std::string to_dot(const BuchiAutomaton& a, std::string_view graph_name) {
    return dot_core(a.core(), AutomatonKind::Buchi, graph_name);
}

std::string to_dot(const FiniteAutomaton& a, std::string_view graph_name) {
    return dot_core(a.core(), AutomatonKind::Finite, graph_name);
}

}  // namespace monaut
