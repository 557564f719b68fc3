// Command-line driver: decide satisfiability of a formula, apply universal
// quantification to an automaton file, cross-check against the brute-force
// oracle, or render an automaton as GraphViz.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "monaut/aut_io.hpp"
#include "monaut/compiler.hpp"
#include "monaut/errors.hpp"
#include "monaut/oracle.hpp"
#include "monaut/parser.hpp"
#include "monaut/universal.hpp"

namespace {

using namespace monaut;
namespace fs = std::filesystem;

std::string bit_string(const std::vector<bool>& bits) {
    std::string out;
    out.reserve(bits.size());
    for (bool b : bits) out += b ? '1' : '0';
    return out;
}

std::string size_tag(const TransitionSystem& ts) {
    return std::to_string(ts.state_count) + "s/" +
           std::to_string(ts.transitions.size()) + "t";
}

void print_witness(const Interpretation& witness, std::ostream& out) {
    for (const auto& [name, value] : witness.fo_values) {
        out << name << " = " << value << "\n";
    }
    for (const auto& [name, set] : witness.so_values) {
        const UltimatelyPeriodicSet canon = set.normalized();
        out << name << " = " << canon.preview(6) << " (prefix=\""
            << bit_string(canon.prefix_bits()) << "\", period=\""
            << bit_string(canon.period_bits()) << "\")\n";
    }
}

nlohmann::ordered_json stage_entry(const std::string& file,
                                   const TransitionSystem& ts) {
    nlohmann::ordered_json entry;
    entry["file"] = file;
    entry["states"] = ts.state_count;
    entry["transitions"] = ts.transitions.size();
    return entry;
}

/// Writes every intermediate of one universal-quantification run into its
/// own directory: the normalized body, the subset automaton, the per-state
/// cycle and period-candidate languages, the per-pair path languages, the
/// per-subset-state widget languages, the assembled result, and a
/// manifest.json indexing them.
void dump_stages(const fs::path& dir, std::size_t index,
                 const QuantPipelineArtifacts& art) {
    const fs::path base =
        dir / ("universal_" + std::to_string(index) + "_" + art.variable);
    fs::create_directories(base);

    nlohmann::ordered_json manifest;
    manifest["variable"] = art.variable;

    write_aut_file(base / "normalized.aut", art.normalized,
                   "quantified body, normalized");
    manifest["normalized"] = stage_entry("normalized.aut", art.normalized.core());

    write_aut_file(base / "subset.aut", art.subset.automaton,
                   "subset construction over the body");
    manifest["subset"] = stage_entry("subset.aut", art.subset.automaton.core());
    manifest["subset"]["members"] = art.subset.members;

    nlohmann::ordered_json cycles = nlohmann::ordered_json::array();
    for (std::size_t q = 0; q < art.cycle_automata.size(); ++q) {
        const std::string file = "cycle_q" + std::to_string(q) + ".aut";
        write_aut_file(base / file, art.cycle_automata[q],
                       "projected accepting cycles at state " + std::to_string(q));
        cycles.push_back(stage_entry(file, art.cycle_automata[q].core()));
    }
    manifest["cycles"] = std::move(cycles);

    nlohmann::ordered_json paths = nlohmann::ordered_json::object();
    for (const auto& [pair, automaton] : art.path_automata) {
        const std::string key =
            std::to_string(pair.first) + "->" + std::to_string(pair.second);
        const std::string file = "path_" + std::to_string(pair.first) + "_" +
                                 std::to_string(pair.second) + ".aut";
        write_aut_file(base / file, automaton, "projected paths " + key);
        paths[key] = stage_entry(file, automaton.core());
    }
    manifest["paths"] = std::move(paths);

    nlohmann::ordered_json u_langs = nlohmann::ordered_json::array();
    for (std::size_t q = 0; q < art.u_languages.size(); ++q) {
        const std::string file = "u_q" + std::to_string(q) + ".aut";
        write_aut_file(base / file, art.u_languages[q],
                       "continuable period words from state " + std::to_string(q));
        u_langs.push_back(stage_entry(file, art.u_languages[q].core()));
    }
    manifest["u_languages"] = std::move(u_langs);

    nlohmann::ordered_json widgets = nlohmann::ordered_json::object();
    for (const auto& [state, automaton] : art.widget_languages) {
        const std::string file = "widget_s" + std::to_string(state) + ".aut";
        write_aut_file(base / file, automaton,
                       "widget language at subset state " + std::to_string(state));
        widgets[std::to_string(state)] = stage_entry(file, automaton.core());
    }
    manifest["widgets"] = std::move(widgets);

    write_aut_file(base / "result.aut", art.result, "quantified result");
    manifest["result"] = stage_entry("result.aut", art.result.core());

    std::ofstream out(base / "manifest.json");
    out << manifest.dump(2) << "\n";
}

std::string load_formula_text(const std::string& inline_text,
                              const std::string& file) {
    if (file.empty()) return inline_text;
    std::ifstream in(file);
    if (!in) throw Error("cannot open formula file '" + file + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

struct DecideArgs {
    std::string formula;
    std::string file;
    std::uint64_t max_offset = 64;
    bool stats = false;
    std::string emit_dot;
    std::string emit_aut;
    std::string stages_dir;
};

int run_decide(const DecideArgs& args) {
    const std::string text = load_formula_text(args.formula, args.file);
    if (text.empty()) throw Error("no formula given (argument or --file)");
    FormulaRef f = parse_formula(text, {.max_offset = args.max_offset});

    CompileStats stats;
    CompileOptions options;
    options.stats = &stats;
    std::size_t index = 0;
    options.on_universal = [&](const std::string& variable,
                               const QuantPipelineArtifacts& art) {
        if (!args.stages_dir.empty()) dump_stages(args.stages_dir, index, art);
        if (args.stats) {
            std::cout << "universal[" << index << "] " << variable
                      << ": body=" << size_tag(art.normalized.core())
                      << " subset=" << size_tag(art.subset.automaton.core())
                      << " result=" << size_tag(art.result.core()) << "\n";
        }
        ++index;
    };

    SatResult result = decide_sat(*f, options);

    if (!args.emit_aut.empty()) {
        write_aut_file(args.emit_aut, result.automaton, "compiled formula automaton");
    }
    if (!args.emit_dot.empty()) {
        std::ofstream out(args.emit_dot);
        if (!out) throw Error("cannot write '" + args.emit_dot + "'");
        out << to_dot(result.automaton, "formula");
    }
    if (!args.stages_dir.empty()) {
        fs::create_directories(args.stages_dir);
        write_aut_file(fs::path(args.stages_dir) / "compiled.aut",
                       result.automaton, "compiled formula automaton");
    }
    if (args.stats) {
        std::cout << "stats: nodes=" << stats.nodes << " atoms=" << stats.atoms
                  << " universals=" << stats.universals
                  << " peak_states=" << stats.peak_states << "\n";
        std::cout << "automaton: " << result.automaton.state_count()
                  << " states, " << result.automaton.transitions().size()
                  << " transitions\n";
    }

    if (!result.satisfiable) {
        std::cout << "UNSAT\n";
        return 1;
    }
    std::cout << "SAT\n";
    print_witness(*result.witness, std::cout);
    return 0;
}

BuchiAutomaton read_buchi(const std::string& path, const char* purpose) {
    ParsedAut parsed = read_aut_file(path);
    if (parsed.kind != AutomatonKind::Buchi) {
        throw Error(std::string(purpose) + " needs a buchi automaton, but '" +
                    path + "' declares kind finite");
    }
    return parsed.as_buchi();
}

int run_quantify(const std::string& in_path, const std::string& variable,
                 const std::string& out_path, const std::string& stages_dir) {
    BuchiAutomaton a = read_buchi(in_path, "quantify");
    QuantPipelineArtifacts art = universal_quantify_artifacts(a, variable);
    if (!stages_dir.empty()) dump_stages(stages_dir, 0, art);
    write_aut_file(out_path, art.result, "forall " + variable + " of " + in_path);
    return 0;
}

/// Enumerates every lasso of the given width within the bounds, shortest
/// first, and stops early when `fn` returns false.
void each_lasso(std::uint32_t width, std::size_t max_u, std::size_t max_v,
                const std::function<bool(const LassoWord&)>& fn) {
    const std::uint64_t alphabet = std::uint64_t{1} << width;
    auto each_word = [&](std::size_t len,
                         const std::function<bool(const std::vector<Symbol>&)>& go) {
        std::vector<std::uint64_t> digits(len, 0);
        while (true) {
            std::vector<Symbol> w;
            w.reserve(len);
            for (std::uint64_t d : digits) w.push_back(Symbol(d, width));
            if (!go(w)) return false;
            std::size_t i = 0;
            while (i < len && ++digits[i] == alphabet) {
                digits[i] = 0;
                ++i;
            }
            if (i == len) return true;
        }
    };
    for (std::size_t lu = 0; lu <= max_u; ++lu) {
        bool keep = each_word(lu, [&](const std::vector<Symbol>& u) {
            for (std::size_t lv = 1; lv <= max_v; ++lv) {
                bool inner = each_word(lv, [&](const std::vector<Symbol>& v) {
                    return fn(LassoWord(u, v));
                });
                if (!inner) return false;
            }
            return true;
        });
        if (!keep) return;
    }
}

int run_oracle_check(const std::string& first, const std::string& second,
                     const std::string& variable, std::size_t max_u,
                     std::size_t max_v) {
    if (second.empty() == variable.empty()) {
        throw Error("oracle-check needs either a second .aut file or --var");
    }
    BuchiAutomaton a = read_buchi(first, "oracle-check");

    if (!variable.empty()) {
        const BuchiAutomaton quantified = universal_quantify(a, variable);
        std::size_t count = 0;
        std::optional<LassoWord> mismatch;
        bool pipeline = false, oracle = false;
        each_lasso(quantified.signature().width(), max_u, max_v,
                   [&](const LassoWord& w) {
                       ++count;
                       pipeline = lasso_membership(quantified, w);
                       oracle = brute_force_universal_membership(a, variable, w);
                       if (pipeline == oracle) return true;
                       mismatch = w;
                       return false;
                   });
        if (mismatch) {
            std::cout << "MISMATCH at " << mismatch->to_string()
                      << ": pipeline=" << (pipeline ? "accept" : "reject")
                      << " oracle=" << (oracle ? "accept" : "reject") << "\n";
            return 1;
        }
        std::cout << "AGREE: " << count << " lassos, |u| <= " << max_u
                  << ", |v| <= " << max_v << "\n";
        return 0;
    }

    BuchiAutomaton b = read_buchi(second, "oracle-check");
    std::optional<LassoWord> differ = languages_equal_on_lassos(a, b, max_u, max_v);
    if (differ) {
        std::cout << "DIFFER at " << differ->to_string() << ": first="
                  << (lasso_membership(a, *differ) ? "accept" : "reject")
                  << " second="
                  << (lasso_membership(b, *differ) ? "accept" : "reject") << "\n";
        return 1;
    }
    std::cout << "EQUAL on all lassos with |u| <= " << max_u << ", |v| <= "
              << max_v << "\n";
    return 0;
}

int run_export_dot(const std::string& in_path, const std::string& out_path,
                   const std::string& name) {
    ParsedAut parsed = read_aut_file(in_path);
    const std::string dot = parsed.kind == AutomatonKind::Finite
                                ? to_dot(parsed.as_finite(), name)
                                : to_dot(parsed.as_buchi(), name);
    if (out_path.empty()) {
        std::cout << dot;
        return 0;
    }
    std::ofstream out(out_path);
    if (!out) throw Error("cannot write '" + out_path + "'");
    out << dot;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Satisfiability of first-order formulas over <ℕ, <, +c> with "
                 "monadic predicates, via Büchi automata"};
    app.require_subcommand(1);

    DecideArgs decide_args;
    CLI::App* decide = app.add_subcommand(
        "decide", "Decide satisfiability of a formula (exit 0 SAT, 1 UNSAT)");
    decide->add_option("formula", decide_args.formula, "Formula text");
    decide->add_option("-f,--file", decide_args.file, "Read the formula from a file");
    decide->add_option("--max-offset", decide_args.max_offset,
                       "Largest constant allowed in y = x + c")
        ->capture_default_str();
    decide->add_flag("--stats", decide_args.stats,
                     "Print per-stage state and transition counts");
    decide->add_option("--emit-dot", decide_args.emit_dot,
                       "Write the compiled automaton as GraphViz");
    decide->add_option("--emit-aut", decide_args.emit_aut,
                       "Write the compiled automaton in .aut format");
    decide->add_option("--dump-stages", decide_args.stages_dir,
                       "Write every quantification stage into this directory");

    std::string q_in, q_var, q_out, q_stages;
    CLI::App* quantify = app.add_subcommand(
        "quantify", "Universally quantify one variable of an .aut file");
    quantify->add_option("input", q_in, "Input .aut file")->required();
    quantify->add_option("variable", q_var, "First-order variable")->required();
    quantify->add_option("output", q_out, "Output .aut file")->required();
    quantify->add_option("--dump-stages", q_stages,
                         "Write every pipeline stage into this directory");

    std::string oc_first, oc_second, oc_var;
    std::size_t oc_max_u = 3, oc_max_v = 3;
    CLI::App* oracle_check = app.add_subcommand(
        "oracle-check",
        "Compare two automata, or one against the brute-force universal "
        "quantification oracle, on bounded lassos");
    oracle_check->add_option("first", oc_first, "First .aut file")->required();
    oracle_check->add_option("second", oc_second, "Second .aut file");
    oracle_check->add_option("--var", oc_var,
                             "Check universal quantification of this variable "
                             "against the oracle");
    oracle_check->add_option("--max-prefix", oc_max_u, "Largest lasso prefix")
        ->capture_default_str();
    oracle_check->add_option("--max-period", oc_max_v, "Largest lasso period")
        ->capture_default_str();

    std::string dot_in, dot_out, dot_name = "automaton";
    CLI::App* export_dot =
        app.add_subcommand("export-dot", "Render an .aut file as GraphViz");
    export_dot->add_option("input", dot_in, "Input .aut file")->required();
    export_dot->add_option("output", dot_out, "Output file (default stdout)");
    export_dot->add_option("--name", dot_name, "Graph name")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*decide) return run_decide(decide_args);
        if (*quantify) return run_quantify(q_in, q_var, q_out, q_stages);
        if (*oracle_check) {
            return run_oracle_check(oc_first, oc_second, oc_var, oc_max_u, oc_max_v);
        }
        return run_export_dot(dot_in, dot_out, dot_name);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
