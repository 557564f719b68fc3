// Python bindings for the formula frontend and the automaton pipeline.
// Symbols cross the boundary as bit strings ("010", one character per
// track), sets as UltimatelyPeriodicSet objects, and interpretations as a
// pair of plain dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <string>
#include <vector>

#include "monaut/aut_io.hpp"
#include "monaut/compiler.hpp"
#include "monaut/encoding.hpp"
#include "monaut/errors.hpp"
#include "monaut/oracle.hpp"
#include "monaut/parser.hpp"
#include "monaut/universal.hpp"

namespace py = pybind11;
using namespace monaut;

namespace {

Symbol symbol_from_bits(const std::string& bits) {
    Symbol s = Symbol::zeros(static_cast<std::uint32_t>(bits.size()));
    for (std::uint32_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            s = s.with_bit(i, true);
        } else if (bits[i] != '0') {
            throw Error("symbol strings use only '0' and '1', got \"" + bits + "\"");
        }
    }
    return s;
}

std::vector<Symbol> word_from_bits(const std::vector<std::string>& bits) {
    std::vector<Symbol> word;
    word.reserve(bits.size());
    for (const std::string& b : bits) word.push_back(symbol_from_bits(b));
    return word;
}

std::vector<std::string> word_to_bits(const std::vector<Symbol>& word) {
    std::vector<std::string> out;
    out.reserve(word.size());
    for (const Symbol& s : word) out.push_back(s.to_string());
    return out;
}

std::vector<bool> bits_from_string(const std::string& bits) {
    std::vector<bool> out;
    out.reserve(bits.size());
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw Error("bit strings use only '0' and '1', got \"" + bits + "\"");
        }
        out.push_back(c == '1');
    }
    return out;
}

std::string bits_to_string(const std::vector<bool>& bits) {
    std::string out;
    out.reserve(bits.size());
    for (bool b : bits) out += b ? '1' : '0';
    return out;
}

py::list transition_list(const TransitionSystem& core) {
    py::list out;
    for (const Transition& t : core.transitions) {
        out.append(py::make_tuple(t.src, t.label.to_string(), t.dst));
    }
    return out;
}

// Formulas are held through shared_ptr<const Formula>; wrapping the ref
// keeps them immutable on the Python side too.
struct PyFormula {
    FormulaRef ref;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Automata-based satisfiability over the naturals with order, "
              "successor offsets, and monadic predicates";

    py::register_exception<Error>(m, "Error");

    py::class_<VariableSignature>(m, "Signature")
        .def(py::init<std::vector<std::string>, std::vector<std::string>>(),
             py::arg("fo_vars"), py::arg("so_vars"))
        .def_property_readonly("fo_vars",
                               [](const VariableSignature& s) {
                                   return std::vector<std::string>(
                                       s.fo_vars().begin(), s.fo_vars().end());
                               })
        .def_property_readonly("so_vars",
                               [](const VariableSignature& s) {
                                   return std::vector<std::string>(
                                       s.so_vars().begin(), s.so_vars().end());
                               })
        .def_property_readonly("width", &VariableSignature::width)
        .def("has_variable", &VariableSignature::has_variable, py::arg("name"))
        .def("track_of", &VariableSignature::track_of, py::arg("name"))
        .def("track_name", &VariableSignature::track_name, py::arg("track"))
        .def("__eq__",
             [](const VariableSignature& a, const VariableSignature& b) {
                 return a == b;
             })
        .def("__repr__", [](const VariableSignature& s) {
            return "Signature(" + s.to_string() + ")";
        });

    py::class_<UltimatelyPeriodicSet>(m, "PeriodicSet")
        .def(py::init([](const std::string& prefix, const std::string& period) {
                 return UltimatelyPeriodicSet(bits_from_string(prefix),
                                              bits_from_string(period));
             }),
             py::arg("prefix"), py::arg("period"))
        .def_static("from_members", &UltimatelyPeriodicSet::from_members,
                    py::arg("members"))
        .def("contains", &UltimatelyPeriodicSet::contains, py::arg("n"))
        .def("__contains__", &UltimatelyPeriodicSet::contains)
        .def_property_readonly("prefix",
                               [](const UltimatelyPeriodicSet& s) {
                                   return bits_to_string(s.prefix_bits());
                               })
        .def_property_readonly("period",
                               [](const UltimatelyPeriodicSet& s) {
                                   return bits_to_string(s.period_bits());
                               })
        .def_property_readonly("is_finite", &UltimatelyPeriodicSet::is_finite)
        .def("normalized", &UltimatelyPeriodicSet::normalized)
        .def("preview", &UltimatelyPeriodicSet::preview,
             py::arg("max_members") = 4)
        .def("__eq__",
             [](const UltimatelyPeriodicSet& a, const UltimatelyPeriodicSet& b) {
                 return a == b;
             })
        .def("__repr__", [](const UltimatelyPeriodicSet& s) {
            return "PeriodicSet(" + s.preview(6) + ")";
        });

    py::class_<Interpretation>(m, "Interpretation")
        .def(py::init([](std::map<std::string, std::size_t> fo,
                         std::map<std::string, UltimatelyPeriodicSet> so) {
                 Interpretation interp;
                 interp.fo_values = std::move(fo);
                 interp.so_values = std::move(so);
                 return interp;
             }),
             py::arg("fo") = std::map<std::string, std::size_t>{},
             py::arg("so") = std::map<std::string, UltimatelyPeriodicSet>{})
        .def_readwrite("fo_values", &Interpretation::fo_values)
        .def_readwrite("so_values", &Interpretation::so_values)
        .def("__eq__", [](const Interpretation& a, const Interpretation& b) {
            return a == b;
        });

    py::class_<LassoWord>(m, "Lasso")
        .def(py::init([](const std::vector<std::string>& prefix,
                         const std::vector<std::string>& period) {
                 return LassoWord(word_from_bits(prefix), word_from_bits(period));
             }),
             py::arg("prefix"), py::arg("period"))
        .def_property_readonly("width", &LassoWord::width)
        .def_property_readonly(
            "prefix", [](const LassoWord& w) { return word_to_bits(w.prefix()); })
        .def_property_readonly(
            "period", [](const LassoWord& w) { return word_to_bits(w.period()); })
        .def("symbol_at",
             [](const LassoWord& w, std::size_t n) {
                 return w.symbol_at(n).to_string();
             },
             py::arg("n"))
        .def("__eq__",
             [](const LassoWord& a, const LassoWord& b) { return a == b; })
        .def("__str__", &LassoWord::to_string)
        .def("__repr__", [](const LassoWord& w) {
            return "Lasso(" + w.to_string() + ")";
        });

    py::class_<PyFormula>(m, "Formula")
        .def("nnf", [](const PyFormula& f) { return PyFormula{to_nnf(f.ref)}; })
        .def_property_readonly(
            "signature",
            [](const PyFormula& f) { return signature_for(*f.ref); })
        .def("__eq__", [](const PyFormula& a, const PyFormula& b) {
            return *a.ref == *b.ref;
        })
        .def("__str__", [](const PyFormula& f) { return to_string(*f.ref); })
        .def("__repr__", [](const PyFormula& f) {
            return "Formula(" + to_string(*f.ref) + ")";
        });

    py::class_<BuchiAutomaton>(m, "Buchi")
        .def_property_readonly("signature", &BuchiAutomaton::signature)
        .def_property_readonly("state_count", &BuchiAutomaton::state_count)
        .def_property_readonly("initial_states",
                               &BuchiAutomaton::initial_states)
        .def_property_readonly("accepting_states",
                               &BuchiAutomaton::accepting_states)
        .def_property_readonly(
            "transitions",
            [](const BuchiAutomaton& a) { return transition_list(a.core()); })
        .def_property_readonly("is_empty",
                               [](const BuchiAutomaton& a) {
                                   return buchi_is_empty(a);
                               })
        .def("__repr__", [](const BuchiAutomaton& a) {
            return "Buchi(" + std::to_string(a.state_count()) + " states, " +
                   a.signature().to_string() + ")";
        });

    py::class_<FiniteAutomaton>(m, "Finite")
        .def_property_readonly("signature", &FiniteAutomaton::signature)
        .def_property_readonly("state_count", &FiniteAutomaton::state_count)
        .def_property_readonly("initial_states",
                               &FiniteAutomaton::initial_states)
        .def_property_readonly("accepting_states",
                               &FiniteAutomaton::accepting_states)
        .def_property_readonly(
            "transitions",
            [](const FiniteAutomaton& a) { return transition_list(a.core()); })
        .def_property_readonly("is_empty",
                               [](const FiniteAutomaton& a) {
                                   return finite_is_empty(a);
                               })
        .def("__repr__", [](const FiniteAutomaton& a) {
            return "Finite(" + std::to_string(a.state_count()) + " states, " +
                   a.signature().to_string() + ")";
        });

    py::class_<SatResult>(m, "SatResult")
        .def_readonly("satisfiable", &SatResult::satisfiable)
        .def_readonly("witness", &SatResult::witness)
        .def_readonly("witness_lasso", &SatResult::witness_lasso)
        .def_readonly("automaton", &SatResult::automaton)
        .def("__bool__", [](const SatResult& r) { return r.satisfiable; })
        .def("__repr__", [](const SatResult& r) {
            return r.satisfiable ? std::string("SatResult(SAT)")
                                 : std::string("SatResult(UNSAT)");
        });

    m.def(
        "parse",
        [](const std::string& text, std::uint64_t max_offset) {
            return PyFormula{parse_formula(text, {.max_offset = max_offset})};
        },
        py::arg("text"), py::arg("max_offset") = 64,
        "Parse a formula; raises Error on syntax or scoping problems");

    m.def(
        "compile",
        [](const PyFormula& f) { return compile(*f.ref); }, py::arg("formula"),
        "Compile a formula to an automaton over the encodings of its models");

    m.def(
        "decide",
        [](const PyFormula& f) { return decide_sat(*f.ref); },
        py::arg("formula"),
        "Decide satisfiability; a SAT result carries a verified witness");

    m.def(
        "evaluate",
        [](const PyFormula& f, const Interpretation& interp) {
            return evaluate_formula(*f.ref, interp);
        },
        py::arg("formula"), py::arg("interpretation"),
        "Evaluate a formula under an interpretation by direct semantics");

    m.def("universal_quantify",
          [](const BuchiAutomaton& a, const std::string& var) {
              return universal_quantify(a, var);
          },
          py::arg("automaton"), py::arg("variable"),
          "Universally quantify one first-order variable directly on the "
          "automaton");

    m.def("project",
          [](const BuchiAutomaton& a, const std::string& var) {
              return project_variable(a, var);
          },
          py::arg("automaton"), py::arg("variable"),
          "Existentially quantify a variable by dropping its track");

    m.def("lasso_membership", &lasso_membership, py::arg("automaton"),
          py::arg("lasso"));

    m.def("witness", &buchi_witness, py::arg("automaton"),
          "A deterministic accepted lasso, or None when the language is empty");

    m.def("accepted_lassos", &enumerate_accepted_lassos, py::arg("automaton"),
          py::arg("max_prefix"), py::arg("max_period"),
          py::arg("limit") = SIZE_MAX);

    m.def("equal_on_lassos", &languages_equal_on_lassos, py::arg("first"),
          py::arg("second"), py::arg("max_prefix") = 3, py::arg("max_period") = 3,
          "None when the automata agree on every bounded lasso, otherwise a "
          "separating lasso");

    m.def("encode", &encode_interpretation, py::arg("interpretation"),
          py::arg("signature"),
          "The lasso word spelling an interpretation's track encoding");

    m.def("decode", &decode_lasso, py::arg("lasso"), py::arg("signature"),
          "The interpretation a valid encoding spells; raises Error otherwise");

    m.def(
        "read_aut",
        [](const std::filesystem::path& path) -> py::object {
            ParsedAut parsed = read_aut_file(path);
            if (parsed.kind == AutomatonKind::Finite) {
                return py::cast(parsed.as_finite());
            }
            return py::cast(parsed.as_buchi());
        },
        py::arg("path"), "Read an .aut file as a Buchi or Finite automaton");

    m.def(
        "write_aut",
        [](const std::filesystem::path& path, const BuchiAutomaton& a,
           const std::string& comment) { write_aut_file(path, a, comment); },
        py::arg("path"), py::arg("automaton"), py::arg("comment") = "");
    m.def(
        "write_aut",
        [](const std::filesystem::path& path, const FiniteAutomaton& a,
           const std::string& comment) { write_aut_file(path, a, comment); },
        py::arg("path"), py::arg("automaton"), py::arg("comment") = "");

    m.def(
        "to_dot",
        [](const BuchiAutomaton& a, const std::string& name) {
            return to_dot(a, name);
        },
        py::arg("automaton"), py::arg("name") = "automaton");
    m.def(
        "to_dot",
        [](const FiniteAutomaton& a, const std::string& name) {
            return to_dot(a, name);
        },
        py::arg("automaton"), py::arg("name") = "automaton");
}
