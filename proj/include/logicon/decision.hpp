#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bool_expr.hpp"
#include "bool_mat.hpp"
#include "bool_vec.hpp"
#include "errors.hpp"

namespace logicon {

/// The unary shape of a subterm: l_h is either the input itself or its
/// complement.
enum class chi_op { identity, negation };

inline bool apply_chi(chi_op op, bool v) { return op == chi_op::negation ? !v : v; }

/// A decision task y = f(u) factored through a minimal set of subterms.
///
/// Each distinct input that the decisions use gets exactly one subterm
/// l_h = chi_h(u_j); the decisions are rewritten over the subterm variables
/// (state_var(h) in their alphabet). Agents later estimate the subterm
/// vector, not the raw inputs, which is what the consensus state stores.
struct decision_system {
    std::size_t m = 0; // inputs
    std::size_t q = 0; // subterms
    std::size_t p = 0; // decisions
    std::vector<std::size_t> subterm_input; // h -> input index
    std::vector<chi_op> chi;                // h -> literal shape
    /// Decisions over subterm variables: state_var(h) stands for l_h.
    std::vector<bool_expr> decisions;
    /// The original decisions over the raw inputs.
    std::vector<bool_expr> raw_decisions;
};

/// Factors the given decisions (expressions over input variables only)
/// through subterms. Subterms are numbered by first occurrence, scanning the
/// decisions in order and each expression depth-first left to right; an
/// input whose first occurrence is under a negation gets a negated subterm.
inline decision_system make_decision_system(std::size_t m,
                                             std::vector<bool_expr> decisions_over_inputs) {
    decision_system ds;
    ds.m = m;
    ds.p = decisions_over_inputs.size();
    ds.raw_decisions = std::move(decisions_over_inputs);

    const std::size_t unassigned = m;
    std::vector<std::size_t> subterm_of(m, unassigned);

    // Pass 1: discover subterms. Track negation parity of the walk so the
    // "first occurrence is negated" test sees the literal, i.e. only a
    // negation sitting directly on the variable counts.
    for (const auto& d : ds.raw_decisions) {
        auto walk = [&](auto&& self, const bool_expr& e, bool negated_leaf) -> void {
            switch (e.node_kind()) {
                case bool_expr::kind::input_var: {
                    const std::size_t j = e.index();
                    if (j >= m)
                        throw index_error("decision references u" + std::to_string(j + 1) +
                                          " but only " + std::to_string(m) + " inputs exist");
                    if (subterm_of[j] == unassigned) {
                        subterm_of[j] = ds.q++;
                        ds.subterm_input.push_back(j);
                        ds.chi.push_back(negated_leaf ? chi_op::negation : chi_op::identity);
                    }
                    break;
                }
                case bool_expr::kind::negation:
                    self(self, e.children()[0],
                         e.children()[0].node_kind() == bool_expr::kind::input_var);
                    break;
                case bool_expr::kind::conjunction:
                case bool_expr::kind::disjunction:
                    for (const auto& c : e.children()) self(self, c, false);
                    break;
                default: break;
            }
        };
        walk(walk, d, false);
    }

    // Pass 2: rewrite each decision over the subterm alphabet. A negated
    // subterm absorbs one negation; the factories fold the double negation
    // that appears when a negated input meets its negated subterm.
    for (const auto& d : ds.raw_decisions) {
        ds.decisions.push_back(d.substitute(nullptr, [&](std::size_t j) {
            const std::size_t h = subterm_of[j];
            bool_expr var = bool_expr::state_var(h);
            return ds.chi[h] == chi_op::negation ? bool_expr::negation(var) : var;
        }));
    }
    return ds;
}

/// The centralized decision vector y* = f(u).
inline bool_vec centralized_decision(const decision_system& ds, const bool_vec& u) {
    if (u.size() != ds.m)
        throw shape_error("centralized_decision: input vector has size " +
                          std::to_string(u.size()) + ", expected " + std::to_string(ds.m));
    bool_vec y(ds.p);
    const bool_vec no_state(0);
    for (std::size_t h = 0; h < ds.p; ++h) y.set(h, ds.raw_decisions[h].eval(no_state, u));
    return y;
}

/// The subterm values l(u).
inline bool_vec subterm_values(const decision_system& ds, const bool_vec& u) {
    bool_vec l(ds.q);
    for (std::size_t h = 0; h < ds.q; ++h)
        l.set(h, apply_chi(ds.chi[h], u.get(ds.subterm_input[h])));
    return l;
}

/// Per-agent output maps: decision h of agent i computes over the agent's
/// own subterm estimates, except that a subterm whose input the agent
/// measures directly (V(i, j) = 1) is replaced by the live measurement.
///
/// Result is indexed [agent][decision]; the expressions read q state
/// variables (the agent's state row) and m inputs.
inline std::vector<std::vector<bool_expr>> build_output_maps(const decision_system& ds,
                                                             const bool_mat& v) {
    if (v.cols() != ds.m)
        throw shape_error("build_output_maps: V has " + std::to_string(v.cols()) +
                          " columns, expected " + std::to_string(ds.m));
    std::vector<std::vector<bool_expr>> maps(v.rows());
    for (std::size_t i = 0; i < v.rows(); ++i) {
        maps[i].reserve(ds.p);
        for (const auto& d : ds.decisions) {
            maps[i].push_back(d.substitute(
                [&](std::size_t h) {
                    const std::size_t j = ds.subterm_input[h];
                    if (!v.get(i, j)) return bool_expr::state_var(h);
                    bool_expr live = bool_expr::input_var(j);
                    return ds.chi[h] == chi_op::negation ? bool_expr::negation(live) : live;
                },
                nullptr));
        }
    }
    return maps;
}

} // namespace logicon
