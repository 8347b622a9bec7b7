#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bool_expr.hpp"
#include "bool_mat.hpp"
#include "bool_vec.hpp"
#include "errors.hpp"

namespace logicon {

namespace detail {

// One variable slot of a component's structural support.
struct support_var {
    bool is_input;
    std::size_t index;
};

inline std::vector<support_var> structural_support(const bool_expr& e) {
    std::vector<support_var> vars;
    e.visit_vars([&](bool_expr::kind k, std::size_t idx) {
        const bool is_input = k == bool_expr::kind::input_var;
        for (const auto& v : vars)
            if (v.is_input == is_input && v.index == idx) return;
        vars.push_back({is_input, idx});
    });
    return vars;
}

} // namespace detail

/// Dependence matrix of a map: entry (i, j) is 1 when component i depends on
/// variable j. The first n_state columns are the state variables, the
/// remaining n_input columns the inputs.
///
/// When the map has at most 20 variables in total, dependence is decided
/// semantically (there is an assignment where flipping the variable flips the
/// component); beyond that the structural occurrence of the variable is used,
/// a sound over-approximation for the compliance test.
inline bool_mat incidence_matrix(const bool_map& f) {
    const std::size_t total = f.n_state + f.n_input;
    bool_mat b(f.n_state, total);
    const bool semantic = total <= 20;
    for (std::size_t i = 0; i < f.n_state; ++i) {
        const auto vars = detail::structural_support(f.components[i]);
        if (!semantic) {
            for (const auto& v : vars) b.set(i, v.is_input ? f.n_state + v.index : v.index, true);
            continue;
        }
        // Enumerate assignments of the variables that occur in the
        // component; everything else is irrelevant to its value.
        const std::size_t k = vars.size();
        std::vector<bool> depends(k, false);
        std::size_t found = 0;
        bool_vec x(f.n_state), u(f.n_input);
        for (std::uint64_t a = 0; a < (std::uint64_t{1} << k) && found < k; ++a) {
            for (std::size_t p = 0; p < k; ++p) {
                const bool bit = (a >> p) & 1;
                if (vars[p].is_input)
                    u.set(vars[p].index, bit);
                else
                    x.set(vars[p].index, bit);
            }
            const bool base = f.components[i].eval(x, u);
            for (std::size_t p = 0; p < k; ++p) {
                if (depends[p]) continue;
                if (vars[p].is_input) {
                    u.flip(vars[p].index);
                    if (f.components[i].eval(x, u) != base) {
                        depends[p] = true;
                        ++found;
                    }
                    u.flip(vars[p].index);
                } else {
                    x.flip(vars[p].index);
                    if (f.components[i].eval(x, u) != base) {
                        depends[p] = true;
                        ++found;
                    }
                    x.flip(vars[p].index);
                }
            }
        }
        for (std::size_t p = 0; p < k; ++p)
            if (depends[p]) b.set(i, vars[p].is_input ? f.n_state + vars[p].index : vars[p].index, true);
    }
    return b;
}

/// The state block of the incidence matrix of the autonomous map obtained by
/// fixing the inputs at u. This is the B(F) of the convergence criterion.
inline bool_mat state_incidence(const bool_map& f, const bool_vec& u) {
    return incidence_matrix(fix_inputs(f, u));
}

/// Boolean Jacobian at (x, u): entry (i, j) is 1 when flipping x_j flips
/// component i, i.e. F_i(x) XOR F_i with the j-th state bit inverted.
inline bool_mat discrete_derivative(const bool_map& f, const bool_vec& x, const bool_vec& u) {
    const bool_vec base = f.eval(x, u);
    bool_mat d(f.n_state, f.n_state);
    bool_vec probe = x;
    for (std::size_t j = 0; j < f.n_state; ++j) {
        probe.flip(j);
        d.set_col(j, base ^ f.eval(probe, u));
        probe.flip(j);
    }
    return d;
}

namespace detail {

// Maps the integer a to the state vector whose tuple (x_1, ..., x_n) reads
// off the bits of a from the most significant end, so increasing a walks
// the vectors in lexicographic order.
inline bool_vec lex_vector(std::uint64_t a, std::size_t n) {
    bool_vec x(n);
    for (std::size_t i = 0; i < n; ++i) x.set(i, (a >> (n - 1 - i)) & 1);
    return x;
}

} // namespace detail

/// All fixed points of F at input u, in lexicographic order of the state
/// tuple. Exhaustive, so the state dimension is capped.
inline std::vector<bool_vec> equilibria(const bool_map& f, const bool_vec& u) {
    if (f.n_state > 24)
        throw capacity_error("equilibria: " + std::to_string(f.n_state) +
                             " state variables exceed the enumeration cap of 24");
    std::vector<bool_vec> fixed;
    const std::uint64_t count = std::uint64_t{1} << f.n_state;
    for (std::uint64_t a = 0; a < count; ++a) {
        bool_vec x = detail::lex_vector(a, f.n_state);
        if (f.eval(x, u) == x) fixed.push_back(std::move(x));
    }
    return fixed;
}

/// Whether the equilibrium x attracts its whole Von Neumann neighborhood:
/// the derivative at x must be nilpotent and have at most one non-null
/// entry per column. x must actually be an equilibrium.
inline bool is_attractive(const bool_map& f, const bool_vec& x, const bool_vec& u) {
    if (!(f.eval(x, u) == x))
        throw precondition_error("is_attractive: the given point is not an equilibrium");
    const bool_mat d = discrete_derivative(f, x, u);
    if (spectral_radius(d) != 0) return false;
    for (std::size_t j = 0; j < d.cols(); ++j)
        if (d.col(j).count() > 1) return false;
    return true;
}

struct convergence_result {
    bool convergent = false;
    /// Smallest q with B(F)^q = 0; meaningful only when convergent.
    std::size_t horizon = 0;
};

/// Global convergence test: the map (with inputs fixed at u) converges to a
/// unique equilibrium from every initial state iff its state incidence
/// matrix is nilpotent. The horizon is the smallest vanishing power, which
/// bounds the number of iterations needed from any start.
inline convergence_result is_globally_convergent(const bool_map& f, const bool_vec& u) {
    const bool_mat b = state_incidence(f, u);
    if (spectral_radius(b) != 0) return {false, 0};
    convergence_result result{true, 0};
    bool_mat power = bool_mat::identity(f.n_state);
    while (power.any()) {
        power = mat_mul(power, b);
        ++result.horizon;
    }
    return result;
}

/// Compliance of a map with a communication matrix C and visibility matrix
/// V: every dependence must be licensed, i.e. the incidence matrix is
/// bounded by (C|V) entrywise.
inline bool is_compliant(const bool_map& f, const bool_mat& c, const bool_mat& v) {
    if (c.rows() != f.n_state || c.cols() != f.n_state)
        throw shape_error("is_compliant: C must be " + std::to_string(f.n_state) + "x" +
                          std::to_string(f.n_state));
    if (v.rows() != f.n_state || v.cols() != f.n_input)
        throw shape_error("is_compliant: V must be " + std::to_string(f.n_state) + "x" +
                          std::to_string(f.n_input));
    return incidence_matrix(f).leq(c.augment(v));
}

} // namespace logicon
