#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "bool_expr.hpp"
#include "errors.hpp"
#include "reachability.hpp"

namespace logicon {

/// Update rule of one agent in a fault-tolerant system: either read the
/// input directly, or take the majority of r = 2*gamma + 1 sources,
/// expressed as the disjunction of all (gamma+1)-element source products.
struct robust_rule {
    bool direct = false;
    std::vector<std::size_t> sources; // ascending agent indices, size r
    /// All (gamma+1)-subsets of sources, in lexicographic order. Any
    /// gamma+1 correct sources force the correct value, so up to gamma
    /// lying sources are outvoted.
    std::vector<std::vector<std::size_t>> terms;
};

/// A gamma-fault-tolerant consensus system for one input column.
struct robust_system {
    network_spec spec;
    std::size_t input = 0;
    std::size_t gamma = 0;
    std::size_t r = 1; // 2 * gamma + 1
    std::vector<robust_rule> rules; // one per agent
    /// Round at which each agent's value becomes secured (roots are 1).
    std::vector<std::size_t> layer;
};

namespace detail {

inline std::vector<std::vector<std::size_t>> subsets_of_size(
    const std::vector<std::size_t>& items, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> pick;
    // Lexicographic enumeration over the (already sorted) item list.
    auto recurse = [&](auto&& self, std::size_t start) -> void {
        if (pick.size() == k) {
            out.push_back(pick);
            return;
        }
        for (std::size_t p = start; p + (k - pick.size()) <= items.size(); ++p) {
            pick.push_back(items[p]);
            self(self, p + 1);
            pick.pop_back();
        }
    };
    recurse(recurse, 0);
    return out;
}

} // namespace detail

/// Builds the gamma-fault-tolerant system for input j.
///
/// Measuring agents read the input. The rest are secured in rounds: an agent
/// joins once it hears r already-secured agents, and votes over the first r
/// of them in secured-round order (ties by agent index). Fails if some agent
/// can never gather r sources.
inline robust_system synthesize_robust(const network_spec& spec, std::size_t j, int gamma) {
    spec.check_input(j);
    if (gamma < 0) throw precondition_error("synthesize_robust: gamma must be non-negative");

    robust_system sys;
    sys.spec = spec;
    sys.input = j;
    sys.gamma = static_cast<std::size_t>(gamma);
    sys.r = 2 * sys.gamma + 1;
    sys.rules.resize(spec.n);
    sys.layer.assign(spec.n, 0);

    for (std::size_t i = 0; i < spec.n; ++i) {
        if (spec.V.get(i, j)) {
            sys.rules[i].direct = true;
            sys.layer[i] = 1;
        }
    }

    std::size_t secured = 0;
    for (std::size_t l : sys.layer) secured += l != 0;
    std::size_t round = 1;
    bool grew = true;
    while (grew && secured < spec.n) {
        grew = false;
        ++round;
        // Collect the whole layer first so agents secured in the same round
        // cannot vouch for each other.
        std::vector<std::size_t> newcomers;
        for (std::size_t i = 0; i < spec.n; ++i) {
            if (sys.layer[i] != 0) continue;
            std::vector<std::size_t> audible;
            for (std::size_t k = 0; k < spec.n; ++k)
                if (k != i && sys.layer[k] != 0 && spec.C.get(i, k)) audible.push_back(k);
            if (audible.size() < sys.r) continue;
            std::sort(audible.begin(), audible.end(), [&](std::size_t a, std::size_t b) {
                return sys.layer[a] != sys.layer[b] ? sys.layer[a] < sys.layer[b] : a < b;
            });
            audible.resize(sys.r);
            std::sort(audible.begin(), audible.end());
            sys.rules[i].sources = std::move(audible);
            newcomers.push_back(i);
        }
        for (std::size_t i : newcomers) {
            sys.layer[i] = round;
            sys.rules[i].terms = detail::subsets_of_size(sys.rules[i].sources, sys.gamma + 1);
            ++secured;
            grew = true;
        }
    }

    if (secured < spec.n) {
        for (std::size_t i = 0; i < spec.n; ++i) {
            if (sys.layer[i] == 0)
                throw infeasible_error("agent " + std::to_string(i + 1) + " cannot gather " +
                                           std::to_string(sys.r) +
                                           " independent sources for input u" +
                                           std::to_string(j + 1),
                                       i);
        }
    }
    return sys;
}

/// The system as a symbolic map over all m inputs: direct readers get the
/// input variable, voters get their sum-of-products majority.
inline bool_map to_bool_map(const robust_system& sys) {
    std::vector<bool_expr> comps(sys.spec.n);
    for (std::size_t i = 0; i < sys.spec.n; ++i) {
        const robust_rule& rule = sys.rules[i];
        if (rule.direct) {
            comps[i] = bool_expr::input_var(sys.input);
            continue;
        }
        std::vector<bool_expr> products;
        products.reserve(rule.terms.size());
        for (const auto& term : rule.terms) {
            std::vector<bool_expr> factors;
            factors.reserve(term.size());
            for (std::size_t k : term) factors.push_back(bool_expr::state_var(k));
            products.push_back(bool_expr::conjunction(std::move(factors)));
        }
        comps[i] = bool_expr::disjunction(std::move(products));
    }
    return bool_map(sys.spec.n, sys.spec.m, std::move(comps));
}

} // namespace logicon
