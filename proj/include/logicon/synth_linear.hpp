#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "bool_expr.hpp"
#include "bool_mat.hpp"
#include "bool_vec.hpp"
#include "errors.hpp"
#include "reachability.hpp"

namespace logicon {

/// Linear consensus update x(t+1) = F x(t) + B u(t), produced by
/// breadth-first input propagation. F and B are in the original agent order;
/// the permutation P is metadata that exhibits the triangular structure.
struct linear_system {
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t input = 0; // which input column was synthesized
    bool_mat F;            // n x n, one parent per reached non-root
    bool_vec B;            // n, 1 on the measuring agents
    /// Permutation as a matrix: column k of P is the unit vector of the
    /// agent placed k-th in tree order, so P^T * F * P is strictly
    /// lower-triangular and block-diagonal across trees.
    bool_mat P;
    bool_mat S; // mask of communication edges actually used (equals F)
    /// Roots in the order their trees appear in P (deepest tree first, ties
    /// by lowest root index), and the depth in rounds of each tree.
    std::vector<std::size_t> tree_roots;
    std::vector<std::size_t> kappa_per_root;
    /// Rounds needed to reach every reachable agent; max of kappa_per_root.
    std::size_t rounds = 0;
    std::vector<std::size_t> unreachable; // sorted; their F/B rows are zero
    bool fully_reachable = true;
};

/// Builds the minimal-message, minimal-rounds linear system for input j.
///
/// Every agent that measures the input reads it directly; every other
/// reachable agent is fed by exactly one agent reached the round before.
/// When several feeders qualify, the one from the lowest-indexed root's tree
/// wins, then the lowest agent index. Unreachable agents get zero rows and
/// the fully_reachable flag drops.
inline linear_system synthesize_linear(const network_spec& spec, std::size_t j) {
    const reachability_report rep = analyze(spec, j);
    if (rep.roots.empty())
        throw no_root_error("no agent measures input u" + std::to_string(j + 1) +
                            "; nothing to propagate");

    linear_system sys;
    sys.n = spec.n;
    sys.m = spec.m;
    sys.input = j;
    sys.F = bool_mat(spec.n, spec.n);
    sys.B = bool_vec(spec.n);
    sys.unreachable = rep.unreachable;
    sys.fully_reachable = rep.unreachable.empty();
    sys.rounds = rep.kappa;

    const std::size_t none = spec.n;
    std::vector<std::size_t> tree(spec.n, none); // root owning each agent
    for (std::size_t root : rep.roots) {
        sys.B.set(root, true);
        tree[root] = root;
    }

    // Agents in layer order; within a layer pick each agent's parent among
    // the previous layer's agents it can hear.
    std::vector<std::size_t> by_layer(rep.reachable);
    std::sort(by_layer.begin(), by_layer.end(), [&](std::size_t a, std::size_t b) {
        return rep.layer[a] != rep.layer[b] ? rep.layer[a] < rep.layer[b] : a < b;
    });
    for (std::size_t i : by_layer) {
        if (rep.layer[i] == 1) continue; // roots have no parent
        std::size_t parent = none;
        for (std::size_t k = 0; k < spec.n; ++k) {
            if (k == i || rep.layer[k] != rep.layer[i] - 1 || !spec.C.get(i, k)) continue;
            if (parent == none || tree[k] < tree[parent] ||
                (tree[k] == tree[parent] && k < parent))
                parent = k;
        }
        sys.F.set(i, parent, true);
        tree[i] = tree[parent];
    }

    // Tree depths and the permutation exhibiting the block structure:
    // deepest tree first (ties by root index), agents within a tree by
    // layer then index, unreachable agents last.
    std::vector<std::size_t> depth(spec.n, 0);
    for (std::size_t i : rep.reachable)
        depth[tree[i]] = std::max(depth[tree[i]], rep.layer[i]);
    std::vector<std::size_t> root_order(rep.roots);
    std::sort(root_order.begin(), root_order.end(), [&](std::size_t a, std::size_t b) {
        return depth[a] != depth[b] ? depth[a] > depth[b] : a < b;
    });
    for (std::size_t root : root_order) {
        sys.tree_roots.push_back(root);
        sys.kappa_per_root.push_back(depth[root]);
    }

    std::vector<std::size_t> order;
    order.reserve(spec.n);
    for (std::size_t root : root_order) {
        std::vector<std::size_t> members;
        for (std::size_t i : rep.reachable)
            if (tree[i] == root) members.push_back(i);
        std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
            return rep.layer[a] != rep.layer[b] ? rep.layer[a] < rep.layer[b] : a < b;
        });
        order.insert(order.end(), members.begin(), members.end());
    }
    order.insert(order.end(), rep.unreachable.begin(), rep.unreachable.end());

    sys.P = bool_mat(spec.n, spec.n);
    for (std::size_t pos = 0; pos < spec.n; ++pos) sys.P.set(order[pos], pos, true);
    sys.S = sys.F;
    return sys;
}

/// The system as a symbolic map over all m inputs: roots read the input,
/// reached agents copy their parent, unreachable agents hold their own state
/// so they stay inert.
inline bool_map to_bool_map(const linear_system& sys) {
    std::vector<bool_expr> comps(sys.n);
    for (std::size_t i = 0; i < sys.n; ++i) {
        std::vector<bool_expr> parts;
        sys.F.row(i).for_each_set(
            [&](std::size_t k) { parts.push_back(bool_expr::state_var(k)); });
        if (sys.B.get(i)) parts.push_back(bool_expr::input_var(sys.input));
        comps[i] = parts.empty() ? bool_expr::state_var(i)
                                 : bool_expr::disjunction(std::move(parts));
    }
    return bool_map(sys.n, sys.m, std::move(comps));
}

} // namespace logicon
