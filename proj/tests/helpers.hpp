#pragma once

// Shared oracles and generators for the test suites. Everything here is
// deliberately naive: scalar loops and exhaustive enumeration, so the
// bit-packed kernels are checked against an independent formulation.

#include <cstdint>
#include <random>
#include <vector>

#include <logicon/logicon.hpp>

namespace testutil {

using logicon::bool_mat;
using logicon::bool_vec;
using logicon::network_spec;

inline bool_mat random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                              double density) {
    std::bernoulli_distribution bit(density);
    bool_mat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (bit(rng)) m.set(i, j, true);
    return m;
}

// Scalar triple loop, the oracle for mat_mul.
inline bool_mat mul_oracle(const bool_mat& a, const bool_mat& b) {
    bool_mat r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < b.cols(); ++k)
            for (std::size_t j = 0; j < a.cols(); ++j)
                if (a.get(i, j) && b.get(j, k)) {
                    r.set(i, k, true);
                    break;
                }
    return r;
}

// Bits of `code` laid out with bit i at index i; the enumeration helper for
// exhaustive state sweeps.
inline bool_vec vec_from_bits(std::uint64_t code, std::size_t n) {
    bool_vec v(n);
    for (std::size_t i = 0; i < n; ++i)
        if (code >> i & 1) v.set(i, true);
    return v;
}

// Eigen-enumeration reading of the spectral radius: 1 iff some nonzero x
// satisfies Ax = x, i.e. 1 is an eigenvalue with a nontrivial eigenvector.
inline int rho_oracle(const bool_mat& a) {
    const std::size_t n = a.rows();
    for (std::uint64_t code = 1; code < (std::uint64_t(1) << n); ++code) {
        const bool_vec x = vec_from_bits(code, n);
        if (logicon::mat_vec(a, x) == x) return 1;
    }
    return 0;
}

// Independent incidence oracle: OR the Boolean derivative over every state,
// and probe each input by flipping it at every assignment.
inline bool_mat incidence_oracle(const logicon::bool_map& f) {
    const std::size_t n = f.n_state, m = f.n_input;
    bool_mat inc(n, n + m);
    for (std::uint64_t uc = 0; uc < (std::uint64_t{1} << m); ++uc) {
        const bool_vec uv = vec_from_bits(uc, m);
        for (std::uint64_t xc = 0; xc < (std::uint64_t{1} << n); ++xc) {
            const bool_vec xv = vec_from_bits(xc, n);
            const bool_mat d = logicon::discrete_derivative(f, xv, uv);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (d.get(i, j)) inc.set(i, j, true);
            const bool_vec base = f.eval(xv, uv);
            bool_vec probe = uv;
            for (std::size_t j = 0; j < m; ++j) {
                probe.flip(j);
                const bool_vec flipped = f.eval(xv, probe);
                probe.flip(j);
                for (std::size_t i = 0; i < n; ++i)
                    if (base.get(i) != flipped.get(i)) inc.set(i, n + j, true);
            }
        }
    }
    return inc;
}

// True iff some simultaneous row/column permutation makes the matrix
// strictly lower triangular. Exhaustive order search with backtracking:
// a node can take the next position only once everything it reads from
// (including itself) is already placed.
inline bool triangularizable(const bool_mat& a) {
    const std::size_t n = a.rows();
    std::vector<bool> used(n, false);
    std::size_t placed = 0;
    auto extend = [&](auto&& self) -> bool {
        if (placed == n) return true;
        for (std::size_t i = 0; i < n; ++i) {
            if (used[i]) continue;
            bool ready = true;
            for (std::size_t k = 0; k < n && ready; ++k)
                if (!used[k] && a.get(i, k)) ready = false;
            if (!ready) continue;
            used[i] = true;
            ++placed;
            if (self(self)) return true;
            used[i] = false;
            --placed;
        }
        return false;
    };
    return extend(extend);
}

// Random single-input spec that is completely reachable; the fill density
// ramps up across attempts so the loop always terminates.
inline network_spec random_reachable_spec(std::mt19937_64& rng, std::size_t n) {
    for (int attempt = 0;; ++attempt) {
        const double density = std::min(0.9, 0.15 + 0.02 * attempt);
        bool_mat c = random_matrix(rng, n, n, density);
        bool_mat v(n, 1);
        const std::size_t roots = 1 + rng() % std::max<std::size_t>(std::size_t{1}, n / 3);
        for (std::size_t k = 0; k < roots; ++k) v.set(rng() % n, 0, true);
        network_spec spec(std::move(c), std::move(v));
        if (logicon::is_reachable(spec, 0)) return spec;
    }
}

// Random single-input spec that is completely r-reachable.
inline network_spec random_r_reachable_spec(std::mt19937_64& rng, std::size_t n, std::size_t r) {
    for (int attempt = 0;; ++attempt) {
        const double density = std::min(0.95, 0.3 + 0.02 * attempt);
        bool_mat c = random_matrix(rng, n, n, density);
        bool_mat v(n, 1);
        std::size_t roots = std::min(n, r + rng() % (n - std::min(n - 1, r) + 1));
        for (std::size_t k = 0; k < roots; ++k) v.set(rng() % n, 0, true);
        network_spec spec(std::move(c), std::move(v));
        if (spec.V.col(0).count() < std::min(n, r)) continue;
        if (logicon::r_reachable_set(spec, 0, r).second) return spec;
    }
}

} // namespace testutil
