// Command-line front end: reachability analysis, rule synthesis and
// simulation of logical consensus networks, driven by JSON scenario files.
//
// Exit codes: 0 success, 1 usage or file problems, 2 infeasible synthesis or
// incomplete reachability, 3 simulation failed to agree with the centralized
// decision. Set LOGICON_VERBOSE=1 for progress chatter on stderr.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>

#include <logicon/logicon.hpp>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_infeasible = 2;
constexpr int exit_disagreement = 3;

bool verbose() {
    const char* v = std::getenv("LOGICON_VERBOSE");
    return v != nullptr && *v != '\0' && std::string_view(v) != "0";
}

void log_note(const std::string& msg) {
    if (verbose()) std::cerr << "logicon: " << msg << '\n';
}

// Renders an index set with 1-based ids, e.g. "{1,3,5}".
std::string id_set(const std::vector<std::size_t>& ids) {
    std::string s = "{";
    for (std::size_t k = 0; k < ids.size(); ++k) {
        if (k) s += ',';
        s += std::to_string(ids[k] + 1);
    }
    return s + "}";
}

std::string bits(const logicon::bool_vec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += v.get(i) ? '1' : '0';
    }
    return s + ")";
}

int cmd_analyze(const std::string& config_path) {
    const logicon::scenario_config cfg = logicon::load_scenario(config_path);
    const logicon::network_spec& net = cfg.network;
    log_note("loaded scenario " + config_path);
    std::cout << "scenario: " << net.n << " agents, " << net.m << " inputs, "
              << cfg.decisions.q << " subterms, " << cfg.decisions.p << " decisions\n";

    bool all_reachable = true;
    bool all_redundant = true;
    for (std::size_t j = 0; j < net.m; ++j) {
        const logicon::reachability_report rep = logicon::analyze(net, j);
        std::cout << "input u" << (j + 1) << ":\n";
        std::cout << "  roots: " << id_set(rep.roots) << " (nu=" << rep.nu << ")\n";
        std::cout << "  reachable: " << id_set(rep.reachable) << '\n';
        std::cout << "  unreachable: " << id_set(rep.unreachable) << '\n';
        std::cout << "  kappa: " << rep.kappa << '\n';
        if (rep.roots.empty()) {
            std::cout << "  kappa per root: none\n";
        } else {
            const logicon::linear_system sys = logicon::synthesize_linear(net, j);
            std::cout << "  kappa per root:";
            for (std::size_t k = 0; k < sys.tree_roots.size(); ++k)
                std::cout << (k ? "," : "") << " root " << (sys.tree_roots[k] + 1) << ": "
                          << sys.kappa_per_root[k];
            std::cout << '\n';
        }
        const bool reachable = rep.unreachable.empty();
        all_reachable = all_reachable && reachable;
        std::cout << "  completely reachable: " << (reachable ? "yes" : "no") << '\n';
        if (cfg.gamma) {
            const std::size_t r = 2 * *cfg.gamma + 1;
            const auto [secured, complete] = logicon::r_reachable_set(net, j, r);
            all_redundant = all_redundant && complete;
            std::cout << "  r-reachable with r=" << r << ": " << (complete ? "yes" : "no");
            if (!complete) {
                std::vector<std::size_t> missing;
                for (std::size_t i = 0, k = 0; i < net.n; ++i) {
                    if (k < secured.size() && secured[k] == i)
                        ++k;
                    else
                        missing.push_back(i);
                }
                std::cout << ", missing " << id_set(missing);
            }
            std::cout << '\n';
        }
    }
    const bool ok = all_reachable && all_redundant;
    std::cout << "overall: " << (ok ? "ok" : "incomplete coverage") << '\n';
    return ok ? exit_ok : exit_infeasible;
}

int cmd_synthesize(const std::string& config_path, const std::string& mode,
                   const std::string& out_path) {
    const logicon::scenario_config cfg = logicon::load_scenario(config_path);
    const logicon::decision_system& ds = cfg.decisions;
    log_note("loaded scenario " + config_path);
    log_note("synthesizing " + std::to_string(ds.q) + " subterm(s), mode " + mode);

    logicon::rule_file rf;
    rf.n = cfg.network.n;
    rf.m = cfg.network.m;
    for (std::size_t h = 0; h < ds.q; ++h) {
        const std::size_t j = ds.subterm_input[h];
        const char* chi_name = ds.chi[h] == logicon::chi_op::negation ? "not" : "id";
        if (mode == "linear") {
            const logicon::linear_system sys = logicon::synthesize_linear(cfg.network, j);
            if (!sys.fully_reachable)
                std::cerr << "warning: input u" << (j + 1) << " cannot reach agents "
                          << id_set(sys.unreachable) << "; their rules hold their own state\n";
            rf.sections.push_back(logicon::make_rule_section(sys, ds.chi[h]));
            std::cout << "subterm " << (h + 1) << " (u" << (j + 1) << ", chi " << chi_name
                      << "): linear, rounds " << sys.rounds;
            if (!sys.fully_reachable) std::cout << ", unreachable " << id_set(sys.unreachable);
            std::cout << '\n';
        } else {
            if (!cfg.gamma)
                throw logicon::error("robust synthesis needs 'gamma' in the scenario file");
            const logicon::robust_system sys =
                logicon::synthesize_robust(cfg.network, j, static_cast<int>(*cfg.gamma));
            rf.sections.push_back(logicon::make_rule_section(sys, ds.chi[h]));
            std::cout << "subterm " << (h + 1) << " (u" << (j + 1) << ", chi " << chi_name
                      << "): robust, gamma " << sys.gamma << ", r " << sys.r << '\n';
        }
    }

    std::ofstream out(out_path);
    if (!out) throw logicon::error("cannot write rule file: " + out_path);
    logicon::write_rules(out, rf);
    if (!out) throw logicon::error("failed while writing rule file: " + out_path);
    log_note("rule file written");
    std::cout << "wrote " << rf.sections.size() << " subterm rule"
              << (rf.sections.size() == 1 ? "" : "s") << " to " << out_path << '\n';
    return exit_ok;
}

int cmd_simulate(const std::string& config_path, const std::string& rules_path,
                 const std::string& out_path) {
    const logicon::scenario_config cfg = logicon::load_scenario(config_path);
    log_note("loaded scenario " + config_path);
    std::ifstream rin(rules_path);
    if (!rin) throw logicon::error("cannot open rule file: " + rules_path);
    const logicon::rule_file rf = logicon::read_rules(rin);
    log_note("loaded " + std::to_string(rf.sections.size()) + " rule section(s) from " + rules_path);

    if (rf.n != cfg.network.n || rf.m != cfg.network.m)
        throw logicon::shape_error("rule file is for " + std::to_string(rf.n) + " agents and " +
                                   std::to_string(rf.m) + " inputs, scenario has " +
                                   std::to_string(cfg.network.n) + " and " +
                                   std::to_string(cfg.network.m));
    std::vector<logicon::subterm_system> subs;
    subs.reserve(rf.sections.size());
    for (const auto& sec : rf.sections)
        subs.push_back(logicon::to_subterm_system(sec, rf.n, rf.m));
    const logicon::consensus_system sys =
        logicon::make_consensus_system(cfg.decisions, cfg.network.V, std::move(subs));

    logicon::bool_mat x0 = cfg.initial_state ? *cfg.initial_state : logicon::bool_mat();
    log_note("running up to " + std::to_string(cfg.t_max) + " rounds");
    const logicon::sim_trace trace = logicon::run(sys, x0, cfg.u, cfg.faults, cfg.t_max);

    std::ofstream out(out_path);
    if (!out) throw logicon::error("cannot write trace file: " + out_path);
    logicon::write_trace_csv(out, trace, sys.n, sys.subterms.size(), cfg.decisions.p);
    if (!out) throw logicon::error("failed while writing trace file: " + out_path);

    if (!trace.excluded.empty())
        std::cout << "excluded from disagreement: " << id_set(trace.excluded) << '\n';
    std::cout << "centralized decision: y* = " << bits(trace.y_star) << '\n';
    if (trace.match) {
        std::cout << "converged at t=" << trace.converged_at
                  << ", consensus matches the centralized decision\n";
        return exit_ok;
    }
    if (trace.stationary)
        std::cout << "converged at t=" << trace.converged_at
                  << ", outputs disagree with the centralized decision (e="
                  << trace.rounds.back().e << ")\n";
    else
        std::cout << "no agreement within " << cfg.t_max << " rounds (e="
                  << trace.rounds.back().e << " at t=" << (trace.rounds.size() - 1) << ")\n";
    return exit_disagreement;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Logical consensus toolkit: analyze reachability, synthesize update rules,\n"
                 "and simulate agent networks under fault injection.\n"
                 "Set LOGICON_VERBOSE=1 for progress output on stderr."};
    app.require_subcommand(1);

    std::string config, rules, out, mode;
    CLI::App* analyze = app.add_subcommand("analyze", "Per-input reachability report");
    analyze->add_option("config", config, "scenario JSON file")->required();

    CLI::App* synthesize = app.add_subcommand("synthesize", "Generate consensus update rules");
    synthesize->add_option("--mode", mode, "synthesis mode: linear or robust")
        ->required()
        ->check(CLI::IsMember({"linear", "robust"}));
    synthesize->add_option("config", config, "scenario JSON file")->required();
    synthesize->add_option("-o,--output", out, "rule file to write")->required();

    CLI::App* simulate = app.add_subcommand("simulate", "Run a scenario against a rule file");
    simulate->add_option("config", config, "scenario JSON file")->required();
    simulate->add_option("rules", rules, "rule file from 'synthesize'")->required();
    simulate->add_option("-o,--output", out, "trace CSV to write")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(config);
        if (synthesize->parsed()) return cmd_synthesize(config, mode, out);
        if (simulate->parsed()) return cmd_simulate(config, rules, out);
    } catch (const logicon::infeasible_error& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return exit_infeasible;
    } catch (const logicon::no_root_error& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return exit_infeasible;
    } catch (const logicon::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
