#include "qsl/cli_app.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsl/axiom_corpus.hpp"
#include "qsl/do_model.hpp"
#include "qsl/formula.hpp"
#include "qsl/json_io.hpp"
#include "qsl/rational_model.hpp"
#include "qsl/universe.hpp"

namespace qsl {

namespace {

using nlohmann::json;

json verdict_to_json(const AxiomVerdict& v) {
    json out{{"axiom", d_axiom_name(v.axiom)}, {"holds", v.holds}};
    if (!v.note.empty())
        out["note"] = v.note;
    if (v.witness) {
        json w{{"detail", v.witness->detail}};
        json particles = json::array();
        for (std::size_t i : v.witness->particle_indices)
            particles.push_back(i + 1);
        json lambdas = json::array();
        for (std::size_t i : v.witness->lambda_indices)
            lambdas.push_back(i + 1);
        w["particles"] = std::move(particles);
        w["lambda_indices"] = std::move(lambdas);
        out["witness"] = std::move(w);
    }
    return out;
}

void print_verdict(std::ostream& os, const AxiomVerdict& v) {
    os << d_axiom_name(v.axiom) << ": " << (v.holds ? "holds" : "VIOLATED");
    if (!v.note.empty())
        os << " (" << v.note << ")";
    if (v.witness)
        os << " -- " << v.witness->detail;
    os << '\n';
}

json corpus_verdict_to_json(const CorpusVerdict& v) {
    json out{{"axiom", corpus_axiom_name(v.axiom)},
             {"holds", v.holds},
             {"checked", v.instances_checked},
             {"skipped", v.instances_skipped}};
    if (v.violation)
        out["violation"] = *v.violation;
    out["witnesses"] = v.witnesses;
    return out;
}

void print_corpus_verdict(std::ostream& os, const CorpusVerdict& v) {
    os << corpus_axiom_name(v.axiom) << ": " << (v.holds ? "holds" : "VIOLATED")
       << " (" << v.instances_checked << " instances";
    if (v.instances_skipped > 0)
        os << ", " << v.instances_skipped << " skipped beyond bound";
    os << ")";
    if (v.violation)
        os << " -- " << *v.violation;
    os << '\n';
    std::size_t shown = 0;
    for (const std::string& w : v.witnesses) {
        if (shown++ == 4) {
            os << "  ... " << v.witnesses.size() - 4 << " more witnesses\n";
            break;
        }
        os << "  witness: " << w << '\n';
    }
}

int command_check_do(const std::string& in, const std::string& axiom_name,
                     bool as_json, std::ostream& out) {
    DOSystem s = load_do_system(in);
    std::vector<AxiomVerdict> verdicts;
    if (axiom_name == "all") {
        verdicts = check_all(s);
    } else {
        auto a = d_axiom_from_name(axiom_name);
        if (!a)
            throw validation_error("unknown axiom '" + axiom_name +
                                   "' (expected D1..D6 or all)");
        verdicts.push_back(check_axiom(s, *a));
    }
    bool all_hold = true;
    if (as_json) {
        json report{{"format", format_version}, {"verdicts", json::array()}};
        for (const AxiomVerdict& v : verdicts) {
            report["verdicts"].push_back(verdict_to_json(v));
            all_hold = all_hold && v.holds;
        }
        out << report.dump(2) << '\n';
    } else {
        for (const AxiomVerdict& v : verdicts) {
            print_verdict(out, v);
            all_hold = all_hold && v.holds;
        }
    }
    return all_hold ? exit_ok : exit_violated;
}

int command_gen_do(std::size_t n, std::size_t species, double micro_fraction,
                   std::uint64_t seed, const std::string& out_path,
                   std::ostream& out) {
    GenConfig config{n, species, micro_fraction, seed};
    DOSystem s = gen_do(config);
    save_do_system(out_path, s);
    out << "generated system with " << s.particles.size() << " particles, "
        << s.pool.size() << " intrinsic states -> " << out_path << '\n';
    return exit_ok;
}

int command_interpret(const std::string& in, const std::string& out_path,
                      bool as_json, std::ostream& out) {
    DOSystem s = load_do_system(in);
    try {
        Interpretation result = interpret(s);
        save_universe(out_path, result.universe);
        out << "interpreted " << s.particles.size() << " particles into "
            << result.universe.size() << " entities -> " << out_path << '\n';
        return exit_ok;
    } catch (const do_axiom_violation& e) {
        if (as_json) {
            json report{{"format", format_version},
                        {"refused", verdict_to_json(e.verdict())}};
            out << report.dump(2) << '\n';
        } else {
            out << "interpretation refused:\n";
            print_verdict(out, e.verdict());
        }
        return exit_violated;
    }
}

int command_build_rational(const std::string& in, const std::string& out_path,
                           std::ostream& out) {
    RationalUniverseSpec spec = load_rational_spec(in);
    Universe u = build_universe(spec);
    save_universe(out_path, u);
    out << "built universe with " << u.size() << " entities -> " << out_path
        << '\n';
    return exit_ok;
}

int command_close(const std::string& in, const std::string& out_path,
                  const std::string& ops, std::size_t max_card,
                  std::ostream& out) {
    Universe u = load_universe(in);
    bool do_weakpair = false, do_power = false;
    std::stringstream ss(ops);
    std::string op;
    while (std::getline(ss, op, ',')) {
        if (op == "weakpair")
            do_weakpair = true;
        else if (op == "power")
            do_power = true;
        else if (!op.empty())
            throw validation_error("unknown closure op '" + op +
                                   "' (expected weakpair, power)");
    }
    ClosureOptions closure{do_weakpair, do_power, max_card};
    ClosureStats stats;
    Universe closed = witness_closure(u, closure, &stats);
    save_universe(out_path, closed);
    out << "closed universe: " << u.size() << " -> " << closed.size()
        << " entities (" << stats.weak_pairs_added << " weak pairs, "
        << stats.subsets_added << " subsets) -> " << out_path << '\n';
    return exit_ok;
}

int command_eval(const std::string& universe_path, const std::string& formulas_path,
                 bool as_json, std::ostream& out) {
    Universe u = load_universe(universe_path);
    std::ifstream in(formulas_path);
    if (!in)
        throw validation_error(formulas_path + ": cannot open file");

    json report{{"format", format_version}, {"results", json::array()}};
    bool any_false = false, any_error = false;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        std::string body = line.substr(0, line.find('#'));
        if (body.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        std::string label = formulas_path + ":" + std::to_string(line_number);
        try {
            auto f = parse(body);
            bool verdict = evaluate(u, *f);
            any_false = any_false || !verdict;
            if (as_json)
                report["results"].push_back(
                    {{"line", line_number}, {"verdict", verdict}});
            else
                out << label << ": " << (verdict ? "true" : "false") << '\n';
        } catch (const parse_error& e) {
            any_error = true;
            std::string msg = label + ":" + std::to_string(e.span().begin + 1) +
                              ": syntax error: " + e.what();
            if (as_json)
                report["results"].push_back({{"line", line_number}, {"error", msg}});
            else
                out << msg << '\n';
        } catch (const eval_error& e) {
            any_error = true;
            std::string msg = label + ":" + std::to_string(e.span().begin + 1) +
                              ": " + e.what();
            if (as_json)
                report["results"].push_back({{"line", line_number}, {"error", msg}});
            else
                out << msg << '\n';
        } catch (const validation_error& e) {
            any_error = true;
            std::string msg = label + ": " + e.what();
            if (as_json)
                report["results"].push_back({{"line", line_number}, {"error", msg}});
            else
                out << msg << '\n';
        }
    }
    if (as_json)
        out << report.dump(2) << '\n';
    if (any_error)
        return exit_bad_input;
    return any_false ? exit_violated : exit_ok;
}

int command_axioms(const std::string& universe_path, const std::string& corpus,
                   bool as_json, std::ostream& out) {
    Universe u = load_universe(universe_path);
    std::vector<CorpusVerdict> verdicts;
    if (corpus == "all") {
        verdicts = check_all_axioms(u);
    } else {
        auto a = corpus_axiom_from_name(corpus);
        if (!a)
            throw validation_error("unknown corpus axiom '" + corpus + "'");
        verdicts.push_back(check_axiom(u, *a));
    }
    bool all_hold = true;
    if (as_json) {
        json report{{"format", format_version}, {"verdicts", json::array()}};
        for (const CorpusVerdict& v : verdicts) {
            report["verdicts"].push_back(corpus_verdict_to_json(v));
            all_hold = all_hold && v.holds;
        }
        out << report.dump(2) << '\n';
    } else {
        for (const CorpusVerdict& v : verdicts) {
            print_corpus_verdict(out, v);
            all_hold = all_hold && v.holds;
        }
    }
    return all_hold ? exit_ok : exit_violated;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"finite quasi-set laboratory"};
    app.require_subcommand(1);

    // check-do
    auto* check_do = app.add_subcommand("check-do", "check the D axioms of a "
                                                    "particle system");
    std::string in_path, out_path, axiom = "all";
    bool as_json = false;
    check_do->add_option("--in", in_path, "particle system JSON")->required();
    check_do->add_option("--axiom", axiom, "D1..D6 or all");
    check_do->add_flag("--json", as_json, "machine-readable report");

    // gen-do
    auto* gen = app.add_subcommand("gen-do", "generate a valid particle system");
    std::size_t n = 1, species = 1;
    double micro_fraction = 1.0;
    std::uint64_t seed = 0;
    gen->add_option("--n", n, "number of particles")->required();
    gen->add_option("--species", species, "number of intrinsic states")->required();
    gen->add_option("--micro-fraction", micro_fraction,
                    "fraction of microscopic particles");
    gen->add_option("--seed", seed, "generator seed");
    gen->add_option("--out", out_path, "output path")->required();

    // interpret
    auto* interp = app.add_subcommand("interpret", "translate a valid particle "
                                                   "system into a universe");
    interp->add_option("--in", in_path, "particle system JSON")->required();
    interp->add_option("--out", out_path, "universe output path")->required();
    interp->add_flag("--json", as_json, "machine-readable refusal report");

    // build-rational
    auto* build = app.add_subcommand("build-rational",
                                     "build a universe from a rational-model spec");
    build->add_option("--in", in_path, "rational spec JSON")->required();
    build->add_option("--out", out_path, "universe output path")->required();

    // close
    auto* close = app.add_subcommand("close", "extend a universe with witness "
                                              "qsets");
    std::string ops = "weakpair,power";
    std::size_t max_card = 12;
    close->add_option("--in", in_path, "universe JSON")->required();
    close->add_option("--out", out_path, "output path")->required();
    close->add_option("--ops", ops, "comma list of weakpair, power");
    close->add_option("--max-card", max_card,
                      "largest qc fed to the power closure (hard cap 16)");

    // eval
    auto* eval = app.add_subcommand("eval", "evaluate formulas over a universe");
    std::string universe_path, formulas_path;
    eval->add_option("--universe", universe_path, "universe JSON")->required();
    eval->add_option("--formulas", formulas_path, "formula file, one per line")
        ->required();
    eval->add_flag("--json", as_json, "machine-readable report");

    // axioms
    auto* axioms = app.add_subcommand("axioms", "run the quasi-set axiom corpus");
    std::string corpus = "all";
    axioms->add_option("--universe", universe_path, "universe JSON")->required();
    axioms->add_option("--corpus", corpus,
                       "weak_pair, separation, quasi_cardinality, "
                       "subqset_cardinals, power_qset, weak_extensionality or all");
    axioms->add_flag("--json", as_json, "machine-readable report");

    std::vector<const char*> argv;
    argv.push_back("qslab");
    for (const std::string& a : args)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return exit_ok;
        }
        err << e.what() << '\n';
        return exit_bad_input;
    }

    try {
        if (check_do->parsed())
            return command_check_do(in_path, axiom, as_json, out);
        if (gen->parsed())
            return command_gen_do(n, species, micro_fraction, seed, out_path, out);
        if (interp->parsed())
            return command_interpret(in_path, out_path, as_json, out);
        if (build->parsed())
            return command_build_rational(in_path, out_path, out);
        if (close->parsed())
            return command_close(in_path, out_path, ops, max_card, out);
        if (eval->parsed())
            return command_eval(universe_path, formulas_path, as_json, out);
        if (axioms->parsed())
            return command_axioms(universe_path, corpus, as_json, out);
    } catch (const resource_error& e) {
        err << "resource bound exceeded: " << e.what() << '\n';
        return exit_resource;
    } catch (const parse_error& e) {
        err << "parse error at offset " << e.span().begin + 1 << ": " << e.what()
            << '\n';
        return exit_bad_input;
    } catch (const validation_error& e) {
        err << "invalid input: " << e.what() << '\n';
        return exit_bad_input;
    } catch (const error& e) {
        err << e.what() << '\n';
        return exit_bad_input;
    }
    return exit_bad_input;
}

} // namespace qsl
