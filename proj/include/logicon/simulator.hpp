#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bool_expr.hpp"
#include "bool_mat.hpp"
#include "bool_vec.hpp"
#include "decision.hpp"
#include "errors.hpp"

namespace logicon {

/// The consensus dynamics of one subterm: an update map over the n agent
/// estimates of l_h, reading input j through chi. Agents listed as
/// unreachable can never learn the value and are left out of the
/// disagreement count.
struct subterm_system {
    bool_map update; // n_state = n agents, n_input = m
    std::size_t input = 0;
    chi_op chi = chi_op::identity;
    std::vector<std::size_t> unreachable; // sorted, 0-based
};

/// A complete runnable network: per-subterm update dynamics plus per-agent
/// output maps over the local state row and the live inputs.
struct consensus_system {
    std::size_t n = 0;
    std::size_t m = 0;
    decision_system decisions;
    std::vector<subterm_system> subterms; // size q
    std::vector<std::vector<bool_expr>> outputs; // [agent][decision]
};

/// Bundles a decision system with one synthesized update per subterm and
/// derives the output maps from V. Validates that the pieces agree.
inline consensus_system make_consensus_system(const decision_system& ds, const bool_mat& v,
                                              std::vector<subterm_system> subterms) {
    consensus_system sys;
    sys.n = v.rows();
    sys.m = v.cols();
    sys.decisions = ds;
    if (v.cols() != ds.m)
        throw shape_error("make_consensus_system: V has " + std::to_string(v.cols()) +
                          " columns, expected " + std::to_string(ds.m));
    if (subterms.size() != ds.q)
        throw shape_error("make_consensus_system: " + std::to_string(subterms.size()) +
                          " update systems for " + std::to_string(ds.q) + " subterms");
    for (std::size_t h = 0; h < subterms.size(); ++h) {
        const subterm_system& s = subterms[h];
        if (s.update.n_state != sys.n || s.update.n_input != sys.m)
            throw shape_error("make_consensus_system: subterm " + std::to_string(h + 1) +
                              " update map has the wrong dimensions");
        if (s.input != ds.subterm_input[h])
            throw shape_error("make_consensus_system: subterm " + std::to_string(h + 1) +
                              " reads u" + std::to_string(s.input + 1) + " but the decisions use u" +
                              std::to_string(ds.subterm_input[h] + 1));
        if (s.chi != ds.chi[h])
            throw shape_error("make_consensus_system: subterm " + std::to_string(h + 1) +
                              " disagrees with the decisions about the literal shape");
    }
    sys.subterms = std::move(subterms);
    sys.outputs = build_output_maps(ds, v);
    return sys;
}

/// Fault injection: temporary faults corrupt single bits of the initial
/// state; a permanent fault pins every state component an agent broadcasts
/// to a stuck value from round 1 onward.
struct fault_model {
    std::vector<std::pair<std::size_t, std::size_t>> temporary; // (agent, subterm)
    std::map<std::size_t, bool> permanent;                      // agent -> stuck value
};

/// One synchronous round: every agent reads only round-t state, then the
/// permanently faulty agents' rows are overwritten with their stuck value,
/// which is what the next round will see.
inline bool_mat step(const consensus_system& sys, const bool_mat& x, const bool_vec& u,
                     const fault_model& faults) {
    const std::size_t q = sys.subterms.size();
    if (x.rows() != sys.n || x.cols() != q)
        throw shape_error("step: state matrix must be " + std::to_string(sys.n) + "x" +
                          std::to_string(q));
    if (u.size() != sys.m)
        throw shape_error("step: input vector must have size " + std::to_string(sys.m));
    bool_mat next(sys.n, q);
    for (std::size_t h = 0; h < q; ++h) {
        const subterm_system& s = sys.subterms[h];
        // Present the subterm value, not the raw input: a root must store
        // chi(u_j) so the network agrees on l_h.
        bool_vec u_eff = u;
        u_eff.set(s.input, apply_chi(s.chi, u.get(s.input)));
        next.set_col(h, s.update.eval(x.col(h), u_eff));
    }
    for (const auto& [agent, value] : faults.permanent) {
        if (agent >= sys.n)
            throw index_error("permanent fault on agent " + std::to_string(agent + 1) +
                              " but the network has " + std::to_string(sys.n) + " agents");
        for (std::size_t h = 0; h < q; ++h) next.set(agent, h, value);
    }
    return next;
}

/// Network outputs for a given state: Y(i, h) applies agent i's h-th output
/// map to its own state row and the live inputs.
inline bool_mat outputs(const consensus_system& sys, const bool_mat& x, const bool_vec& u) {
    bool_mat y(sys.n, sys.decisions.p);
    for (std::size_t i = 0; i < sys.n; ++i)
        for (std::size_t h = 0; h < sys.decisions.p; ++h)
            y.set(i, h, sys.outputs[i][h].eval(x.row(i), u));
    return y;
}

/// Count of output bits differing from the centralized decision y* = f(u),
/// skipping the excluded agents (sorted index list).
inline std::size_t disagreement(const bool_mat& y, const decision_system& ds, const bool_vec& u,
                                const std::vector<std::size_t>& excluded = {}) {
    if (y.cols() != ds.p)
        throw shape_error("disagreement: output matrix has " + std::to_string(y.cols()) +
                          " columns for " + std::to_string(ds.p) + " decisions");
    const bool_vec y_star = centralized_decision(ds, u);
    std::size_t e = 0;
    for (std::size_t i = 0; i < y.rows(); ++i) {
        if (std::binary_search(excluded.begin(), excluded.end(), i)) continue;
        for (std::size_t h = 0; h < ds.p; ++h) e += y.get(i, h) != y_star.get(h);
    }
    return e;
}

/// State, outputs and disagreement of one recorded round.
struct sim_round {
    bool_mat X;
    bool_mat Y;
    std::size_t e = 0;
};

struct sim_trace {
    std::vector<sim_round> rounds; // index = t
    bool_vec u;
    bool_vec y_star;
    /// Agents left out of e(t): unreachable for some subterm, or permanently
    /// faulty. Sorted.
    std::vector<std::size_t> excluded;
    bool stationary = false;
    std::size_t converged_at = 0; // round the state stopped changing; valid when stationary
    /// True when the run went stationary with zero disagreement among the
    /// counted agents.
    bool match = false;
};

/// Runs the network from x0 for at most t_max rounds, stopping early once
/// the state repeats. Temporary faults flip bits of x0 before round 0 is
/// recorded; the input is held constant for the whole run.
inline sim_trace run(const consensus_system& sys, bool_mat x0, const bool_vec& u,
                     const fault_model& faults, std::size_t t_max) {
    const std::size_t q = sys.subterms.size();
    if (t_max < 1) throw precondition_error("run: t_max must be at least 1");
    if (x0.rows() == 0 && x0.cols() == 0) x0 = bool_mat(sys.n, q);
    if (x0.rows() != sys.n || x0.cols() != q)
        throw shape_error("run: initial state must be " + std::to_string(sys.n) + "x" +
                          std::to_string(q));
    for (const auto& [agent, subterm] : faults.temporary) {
        if (agent >= sys.n || subterm >= q)
            throw index_error("temporary fault at agent " + std::to_string(agent + 1) +
                              ", subterm " + std::to_string(subterm + 1) + " is out of range");
        x0.set(agent, subterm, !x0.get(agent, subterm));
    }

    sim_trace trace;
    trace.u = u;
    trace.y_star = centralized_decision(sys.decisions, u);
    std::set<std::size_t> excluded;
    for (const auto& s : sys.subterms) excluded.insert(s.unreachable.begin(), s.unreachable.end());
    for (const auto& [agent, value] : faults.permanent) {
        (void)value;
        excluded.insert(agent);
    }
    trace.excluded.assign(excluded.begin(), excluded.end());

    auto record = [&](const bool_mat& x) {
        bool_mat y = outputs(sys, x, u);
        const std::size_t e = disagreement(y, sys.decisions, u, trace.excluded);
        trace.rounds.push_back({x, std::move(y), e});
    };

    bool_mat x = std::move(x0);
    record(x);
    for (std::size_t t = 1; t <= t_max; ++t) {
        bool_mat next = step(sys, x, u, faults);
        if (next == x) {
            trace.stationary = true;
            trace.converged_at = t - 1;
            break;
        }
        x = std::move(next);
        record(x);
    }
    trace.match = trace.stationary && trace.rounds.back().e == 0;
    return trace;
}

/// Writes the trace as CSV: t, e, then the state and output matrices
/// flattened agent-major, with 1-based agent.subterm / agent.decision
/// column names.
inline void write_trace_csv(std::ostream& out, const sim_trace& trace, std::size_t n,
                            std::size_t q, std::size_t p) {
    out << "t,e";
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t h = 0; h < q; ++h) out << ",x" << (i + 1) << '.' << (h + 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t h = 0; h < p; ++h) out << ",y" << (i + 1) << '.' << (h + 1);
    out << '\n';
    for (std::size_t t = 0; t < trace.rounds.size(); ++t) {
        const sim_round& r = trace.rounds[t];
        out << t << ',' << r.e;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t h = 0; h < q; ++h) out << ',' << (r.X.get(i, h) ? '1' : '0');
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t h = 0; h < p; ++h) out << ',' << (r.Y.get(i, h) ? '1' : '0');
        out << '\n';
    }
}

} // namespace logicon
