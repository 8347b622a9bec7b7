#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "bool_mat.hpp"
#include "bool_vec.hpp"
#include "errors.hpp"

namespace logicon {

/// A synthesis problem instance: n agents, m inputs, who hears whom and who
/// sees what. C(i,k) = 1 means agent i receives data from agent k; V(i,j) = 1
/// means agent i measures input j.
struct network_spec {
    std::size_t n = 0;
    std::size_t m = 0;
    bool_mat C;
    bool_mat V;

    network_spec() = default;

    network_spec(bool_mat c, bool_mat v) : n(c.rows()), m(v.cols()), C(std::move(c)), V(std::move(v)) {
        if (C.rows() != C.cols())
            throw shape_error("network_spec: C must be square, got " + std::to_string(C.rows()) +
                              "x" + std::to_string(C.cols()));
        if (V.rows() != n)
            throw shape_error("network_spec: V has " + std::to_string(V.rows()) +
                              " rows for " + std::to_string(n) + " agents");
        if (n < 1 || m < 1)
            throw shape_error("network_spec: need at least one agent and one input");
    }

    void check_input(std::size_t j) const {
        if (j >= m)
            throw index_error("input index " + std::to_string(j) + " out of range [0," +
                              std::to_string(m) + ")");
    }
};

/// Everything the propagation analysis of one input column produces.
struct reachability_report {
    /// Column k holds C^k V_j: the agents an input value can occupy after
    /// exactly k communication steps.
    bool_mat R;
    /// Logical sum of the columns of R; 1 marks an agent the input can ever
    /// reach.
    bool_vec span;
    std::vector<std::size_t> reachable;   // sorted, 0-based
    std::vector<std::size_t> unreachable; // sorted, 0-based
    std::vector<std::size_t> roots;       // agents measuring the input directly
    std::size_t nu = 0;                   // number of roots
    /// Visibility diameter: the measurement round counts as round 1, so a
    /// network where every agent measures directly has kappa = 1. Zero when
    /// nothing is reachable.
    std::size_t kappa = 0;
    /// Round at which each agent first holds the value (roots are 1);
    /// 0 marks unreachable agents.
    std::vector<std::size_t> layer;
};

/// R_j = (V_j  C V_j  C^2 V_j ... C^(n-1) V_j).
inline bool_mat reachability_matrix(const network_spec& spec, std::size_t j) {
    spec.check_input(j);
    bool_mat r(spec.n, spec.n);
    bool_vec col = spec.V.col(j);
    for (std::size_t k = 0; k < spec.n; ++k) {
        r.set_col(k, col);
        col = mat_vec(spec.C, col);
    }
    return r;
}

/// Full propagation analysis of the pair (C, column j of V).
inline reachability_report analyze(const network_spec& spec, std::size_t j) {
    spec.check_input(j);
    reachability_report rep;
    rep.R = reachability_matrix(spec, j);
    rep.span = bool_vec(spec.n);
    for (std::size_t k = 0; k < spec.n; ++k) rep.span |= rep.R.col(k);
    for (std::size_t i = 0; i < spec.n; ++i)
        (rep.span.get(i) ? rep.reachable : rep.unreachable).push_back(i);

    // Breadth-first rounds: roots hold the value in round 1, everyone else
    // one round after the first agent it hears. Self-loops carry nothing new
    // and cannot change the round structure.
    rep.layer.assign(spec.n, 0);
    std::vector<std::size_t> frontier;
    for (std::size_t i = 0; i < spec.n; ++i) {
        if (spec.V.get(i, j)) {
            rep.roots.push_back(i);
            rep.layer[i] = 1;
            frontier.push_back(i);
        }
    }
    rep.nu = rep.roots.size();
    std::size_t round = 1;
    while (!frontier.empty()) {
        rep.kappa = round;
        std::vector<std::size_t> next;
        for (std::size_t i = 0; i < spec.n; ++i) {
            if (rep.layer[i] != 0) continue;
            for (std::size_t k : frontier) {
                if (i != k && spec.C.get(i, k)) {
                    rep.layer[i] = round + 1;
                    next.push_back(i);
                    break;
                }
            }
        }
        frontier = std::move(next);
        ++round;
    }
    return rep;
}

/// True when every agent can eventually hold the value of input j.
inline bool is_reachable(const network_spec& spec, std::size_t j) {
    return analyze(spec, j).span.all();
}

/// Agents that can secure input j through at least r independent witnesses.
/// Roots qualify by their own sensor; any other agent joins once it hears r
/// already-secured agents. Returns the secured set (sorted) and whether it
/// covers the whole network.
inline std::pair<std::vector<std::size_t>, bool> r_reachable_set(const network_spec& spec,
                                                                 std::size_t j, std::size_t r) {
    spec.check_input(j);
    if (r < 1) throw precondition_error("r_reachable_set: redundancy must be at least 1");
    std::vector<bool> secured(spec.n, false);
    for (std::size_t i = 0; i < spec.n; ++i)
        if (spec.V.get(i, j)) secured[i] = true;
    bool grew = true;
    while (grew) {
        grew = false;
        for (std::size_t i = 0; i < spec.n; ++i) {
            if (secured[i]) continue;
            std::size_t witnesses = spec.V.get(i, j) ? 1 : 0;
            for (std::size_t k = 0; k < spec.n && witnesses < r; ++k)
                if (k != i && secured[k] && spec.C.get(i, k)) ++witnesses;
            if (witnesses >= r) {
                secured[i] = true;
                grew = true;
            }
        }
    }
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < spec.n; ++i)
        if (secured[i]) members.push_back(i);
    const bool complete = members.size() == spec.n;
    return {std::move(members), complete};
}

} // namespace logicon
