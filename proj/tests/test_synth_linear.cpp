#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "helpers.hpp"

using logicon::bool_expr;
using logicon::bool_map;
using logicon::bool_mat;
using logicon::bool_vec;
using logicon::linear_system;
using logicon::network_spec;

namespace {

network_spec single_root_spec() {
    bool_mat c{{1, 1, 0, 0, 1},
               {1, 0, 1, 0, 1},
               {1, 1, 1, 1, 1},
               {0, 1, 1, 1, 1},
               {0, 0, 0, 0, 1}};
    bool_mat v(5, 1);
    v.set(0, 0, true);
    return network_spec(std::move(c), std::move(v));
}

network_spec two_roots_spec() {
    bool_mat c{{1, 1, 0, 0, 1},
               {1, 0, 1, 0, 1},
               {0, 1, 1, 1, 1},
               {0, 1, 1, 1, 1},
               {1, 0, 1, 0, 1}};
    bool_mat v(5, 1);
    v.set(0, 0, true);
    v.set(1, 0, true);
    return network_spec(std::move(c), std::move(v));
}

// Positions of the agents in tree order, inverted from the permutation.
std::vector<std::size_t> order_from_p(const bool_mat& p) {
    std::vector<std::size_t> order(p.cols());
    for (std::size_t pos = 0; pos < p.cols(); ++pos) {
        const bool_vec col = p.col(pos);
        REQUIRE(col.count() == 1);
        col.for_each_set([&](std::size_t i) { order[pos] = i; });
    }
    return order;
}

} // namespace

TEST_CASE("linear synthesis on the single-root network") {
    const linear_system sys = logicon::synthesize_linear(single_root_spec(), 0);

    bool_mat f_expected(5, 5);
    f_expected.set(1, 0, true);
    f_expected.set(2, 0, true);
    f_expected.set(3, 1, true);
    REQUIRE(sys.F == f_expected);
    REQUIRE(sys.B == bool_vec{1, 0, 0, 0, 0});
    REQUIRE(sys.S == sys.F);
    REQUIRE(sys.rounds == 3);
    REQUIRE(sys.tree_roots == std::vector<std::size_t>{0});
    REQUIRE(sys.kappa_per_root == std::vector<std::size_t>{3});
    REQUIRE(sys.unreachable == std::vector<std::size_t>{4});
    REQUIRE_FALSE(sys.fully_reachable);

    const bool_map f = logicon::to_bool_map(sys);
    REQUIRE(f.components[0] == bool_expr::input_var(0));
    REQUIRE(f.components[1] == bool_expr::state_var(0));
    REQUIRE(f.components[2] == bool_expr::state_var(0));
    REQUIRE(f.components[3] == bool_expr::state_var(1));
    REQUIRE(f.components[4] == bool_expr::state_var(4));
}

TEST_CASE("linear synthesis on the two-root network") {
    const linear_system sys = logicon::synthesize_linear(two_roots_spec(), 0);

    bool_mat f_expected(5, 5);
    f_expected.set(2, 1, true);
    f_expected.set(3, 1, true);
    f_expected.set(4, 0, true);
    REQUIRE(sys.F == f_expected);
    REQUIRE(sys.B == bool_vec{1, 1, 0, 0, 0});
    REQUIRE(sys.rounds == 2);
    REQUIRE(sys.fully_reachable);
    REQUIRE(sys.unreachable.empty());
    REQUIRE(sys.tree_roots == std::vector<std::size_t>{0, 1});
    REQUIRE(sys.kappa_per_root == std::vector<std::size_t>{2, 2});

    // Tree order: root 1's tree is {1} then {4}; root 2's is {2} then {3,4}.
    REQUIRE(order_from_p(sys.P) == std::vector<std::size_t>{0, 4, 1, 2, 3});
}

TEST_CASE("parent choice prefers the tree of the lowest root over the lower index") {
    // Agent 5 hears agent 2 (in root 3's tree) and agent 4 (in root 1's
    // tree); the tree rule must beat the smaller index of agent 2.
    bool_mat c(5, 5);
    c.set(1, 2, true);
    c.set(3, 0, true);
    c.set(4, 1, true);
    c.set(4, 3, true);
    bool_mat v(5, 1);
    v.set(0, 0, true);
    v.set(2, 0, true);
    const linear_system sys = logicon::synthesize_linear(network_spec(std::move(c), std::move(v)), 0);
    REQUIRE(sys.F.get(4, 3));
    REQUIRE_FALSE(sys.F.get(4, 1));
}

TEST_CASE("deeper trees come first in the permutation") {
    bool_mat c(4, 4);
    c.set(1, 3, true);
    c.set(2, 1, true);
    bool_mat v(4, 1);
    v.set(0, 0, true);
    v.set(3, 0, true);
    const linear_system sys = logicon::synthesize_linear(network_spec(std::move(c), std::move(v)), 0);
    REQUIRE(sys.tree_roots == std::vector<std::size_t>{3, 0});
    REQUIRE(sys.kappa_per_root == std::vector<std::size_t>{3, 1});
    REQUIRE(sys.rounds == 3);
    REQUIRE(order_from_p(sys.P) == std::vector<std::size_t>{3, 1, 2, 0});
}

TEST_CASE("everyone measuring means no messages at all") {
    bool_mat c = bool_mat::ones(4, 4);
    bool_mat v = bool_mat::ones(4, 1);
    const linear_system sys = logicon::synthesize_linear(network_spec(std::move(c), std::move(v)), 0);
    REQUIRE(sys.F.is_zero());
    REQUIRE(sys.B.all());
    REQUIRE(sys.rounds == 1);
}

TEST_CASE("an input nobody measures cannot be synthesized") {
    bool_mat c = bool_mat::ones(3, 3);
    bool_mat v(3, 1);
    REQUIRE_THROWS_AS(logicon::synthesize_linear(network_spec(std::move(c), std::move(v)), 0),
                      logicon::no_root_error);
}

TEST_CASE("synthesized systems satisfy the structural invariants") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + rng() % 9;
        const network_spec spec = testutil::random_reachable_spec(rng, n);
        const linear_system sys = logicon::synthesize_linear(spec, 0);
        REQUIRE(sys.fully_reachable);

        // Exactly one source per agent: the input for roots, one parent
        // otherwise, and every parent link is a real communication edge.
        for (std::size_t i = 0; i < n; ++i) {
            REQUIRE(sys.F.row(i).count() + (sys.B.get(i) ? 1 : 0) == 1);
            sys.F.row(i).for_each_set([&](std::size_t k) { REQUIRE(spec.C.get(i, k)); });
        }
        REQUIRE(sys.F.count() + sys.B.count() == n);

        // The permuted update matrix is strictly lower triangular, with no
        // links crossing between the trees stacked along the diagonal.
        const auto order = order_from_p(sys.P);
        const bool_mat t = sys.P.transpose() * sys.F * sys.P;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) REQUIRE_FALSE(t.get(i, j));

        std::vector<std::size_t> tree_of(n);
        {
            // Recover each agent's tree by walking parents down to a root.
            for (std::size_t i = 0; i < n; ++i) {
                std::size_t cur = i;
                while (!sys.B.get(cur)) {
                    std::size_t parent = n;
                    sys.F.row(cur).for_each_set([&](std::size_t k) { parent = k; });
                    REQUIRE(parent != n);
                    cur = parent;
                }
                tree_of[i] = cur;
            }
        }
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (t.get(a, b)) REQUIRE(tree_of[order[a]] == tree_of[order[b]]);

        // The symbolic map only uses licensed links.
        const bool_map f = logicon::to_bool_map(sys);
        REQUIRE(logicon::is_compliant(f, spec.C, spec.V));
    }
}

TEST_CASE("synthesized systems converge to the input within the advertised rounds") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 2 + rng() % 7;
        const network_spec spec = testutil::random_reachable_spec(rng, n);
        const linear_system sys = logicon::synthesize_linear(spec, 0);
        const bool_map f = logicon::to_bool_map(sys);
        for (int bit = 0; bit <= 1; ++bit) {
            const bool_vec u(1, bit == 1);
            const bool_vec target(n, bit == 1);
            for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
                bool_vec s = testutil::vec_from_bits(code, n);
                for (std::size_t t = 0; t < sys.rounds; ++t) s = f.eval(s, u);
                REQUIRE(s == target);
            }
        }
    }
}

TEST_CASE("the convergence horizon of the reached subsystem equals the round count") {
    const linear_system sys = logicon::synthesize_linear(single_root_spec(), 0);
    const bool_map sub = logicon::restrict_states(logicon::to_bool_map(sys), {0, 1, 2, 3});
    const auto res = logicon::is_globally_convergent(sub, bool_vec{1});
    REQUIRE(res.convergent);
    REQUIRE(res.horizon == sys.rounds);

    // The full map keeps the isolated agent inert, which blocks global
    // convergence: its self-dependence is a cycle.
    const auto full = logicon::is_globally_convergent(logicon::to_bool_map(sys), bool_vec{1});
    REQUIRE_FALSE(full.convergent);
}
