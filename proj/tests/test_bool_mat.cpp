#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "helpers.hpp"

using logicon::bool_mat;
using logicon::bool_vec;

TEST_CASE("bool_mat construction, access and factories") {
    bool_mat m(2, 3);
    REQUIRE(m.rows() == 2);
    REQUIRE(m.cols() == 3);
    REQUIRE(m.is_zero());
    m.set(1, 2, true);
    REQUIRE(m.get(1, 2));
    REQUIRE(m.count() == 1);

    bool_mat lit{{1, 0}, {0, 1}, {1, 1}};
    REQUIRE(lit.rows() == 3);
    REQUIRE(lit.cols() == 2);
    REQUIRE(lit.get(2, 0));
    REQUIRE_FALSE(lit.get(1, 0));

    REQUIRE(bool_mat::zeros(3, 4).is_zero());
    REQUIRE(bool_mat::ones(3, 4).count() == 12);
    bool_mat id = bool_mat::identity(4);
    REQUIRE(id.count() == 4);
    for (std::size_t i = 0; i < 4; ++i) REQUIRE(id.get(i, i));
}

TEST_CASE("bool_mat rows, columns and transpose") {
    bool_mat m{{1, 0, 1}, {0, 1, 1}};
    REQUIRE(m.row(0) == bool_vec{1, 0, 1});
    REQUIRE(m.col(2) == bool_vec{1, 1});
    REQUIRE(m.col(0) == bool_vec{1, 0});

    bool_mat t = m.transpose();
    REQUIRE(t.rows() == 3);
    REQUIRE(t.cols() == 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j) REQUIRE(m.get(i, j) == t.get(j, i));

    m.set_col(1, bool_vec{1, 0});
    REQUIRE(m.get(0, 1));
    REQUIRE_FALSE(m.get(1, 1));
}

TEST_CASE("bool_mat augment places blocks side by side") {
    bool_mat a{{1, 0}, {0, 1}};
    bool_mat b{{1}, {1}};
    bool_mat ab = a.augment(b);
    REQUIRE(ab.rows() == 2);
    REQUIRE(ab.cols() == 3);
    REQUIRE(ab.get(0, 0));
    REQUIRE(ab.get(0, 2));
    REQUIRE(ab.get(1, 1));
    REQUIRE(ab.get(1, 2));
    REQUIRE(ab.count() == 4);
    REQUIRE_THROWS_AS(a.augment(bool_mat(3, 1)), logicon::shape_error);
}

TEST_CASE("mat_vec is or-of-selected-columns") {
    bool_mat a{{1, 1, 0}, {0, 0, 1}, {0, 0, 0}};
    REQUIRE(logicon::mat_vec(a, bool_vec{0, 1, 0}) == bool_vec{1, 0, 0});
    REQUIRE(logicon::mat_vec(a, bool_vec{0, 0, 1}) == bool_vec{0, 1, 0});
    REQUIRE(logicon::mat_vec(a, bool_vec{1, 1, 1}) == bool_vec{1, 1, 0});
    REQUIRE(a * bool_vec{0, 1, 0} == bool_vec{1, 0, 0});
}

TEST_CASE("mat_mul agrees with the scalar oracle on random matrices") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + rng() % 9;
        const std::size_t k = 1 + rng() % 9;
        const std::size_t p = 1 + rng() % 9;
        bool_mat a = testutil::random_matrix(rng, n, k, 0.4);
        bool_mat b = testutil::random_matrix(rng, k, p, 0.4);
        REQUIRE(logicon::mat_mul(a, b) == testutil::mul_oracle(a, b));
    }
}

TEST_CASE("mat_mul shape mismatch throws") {
    REQUIRE_THROWS_AS(logicon::mat_mul(bool_mat(2, 3), bool_mat(2, 3)), logicon::shape_error);
    REQUIRE_THROWS_AS(logicon::mat_vec(bool_mat(2, 3), bool_vec(2)), logicon::shape_error);
}

TEST_CASE("mat_pow matches repeated multiplication") {
    std::mt19937_64 rng(13);
    bool_mat a = testutil::random_matrix(rng, 6, 6, 0.3);
    bool_mat acc = bool_mat::identity(6);
    for (std::size_t p = 0; p <= 8; ++p) {
        REQUIRE(logicon::mat_pow(a, p) == acc);
        acc = logicon::mat_mul(acc, a);
    }
}

TEST_CASE("spectral radius equals the eigenvector oracle, exhaustively for n <= 3") {
    for (std::size_t n = 1; n <= 3; ++n) {
        const std::uint64_t cells = std::uint64_t(1) << (n * n);
        for (std::uint64_t code = 0; code < cells; ++code) {
            bool_mat a(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (code >> (i * n + j) & 1) a.set(i, j, true);
            REQUIRE(logicon::spectral_radius(a) == testutil::rho_oracle(a));
        }
    }
}

TEST_CASE("spectral radius equals the eigenvector oracle on random matrices") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng() % 5;
        bool_mat a = testutil::random_matrix(rng, n, n, 0.15 + 0.1 * (rng() % 7));
        REQUIRE(logicon::spectral_radius(a) == testutil::rho_oracle(a));
    }
}

TEST_CASE("spectral radius zero, nilpotency and triangularizability coincide") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 7;
        bool_mat a = testutil::random_matrix(rng, n, n, 0.1 + 0.05 * (rng() % 6));
        const bool rho_zero = logicon::spectral_radius(a) == 0;
        const bool nilpotent = logicon::mat_pow(a, n).is_zero();
        const bool tri = testutil::triangularizable(a);
        REQUIRE(rho_zero == nilpotent);
        REQUIRE(rho_zero == tri);
    }
}

TEST_CASE("spectral radius requires a square matrix") {
    REQUIRE_THROWS_AS(logicon::spectral_radius(bool_mat(2, 3)), logicon::shape_error);
}

TEST_CASE("matrix text round-trip") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        bool_mat a = testutil::random_matrix(rng, 1 + rng() % 8, 1 + rng() % 8, 0.5);
        std::ostringstream out;
        logicon::write_matrix(out, a);
        REQUIRE(logicon::read_matrix(out.str()) == a);
    }
}

TEST_CASE("matrix parsing accepts the documented layout") {
    bool_mat m = logicon::read_matrix("2 3\n1 0 1\n0 1 0\n");
    REQUIRE(m.rows() == 2);
    REQUIRE(m.cols() == 3);
    REQUIRE(m.get(0, 2));
    REQUIRE(m.get(1, 1));
    REQUIRE(m.count() == 3);
}

TEST_CASE("matrix parsing rejects malformed input") {
    REQUIRE_THROWS_AS(logicon::read_matrix(""), logicon::parse_error);
    REQUIRE_THROWS_AS(logicon::read_matrix("junk"), logicon::parse_error);
    REQUIRE_THROWS_AS(logicon::read_matrix("2 2\n1 0\n1"), logicon::parse_error);
    REQUIRE_THROWS_AS(logicon::read_matrix("2 2\n1 0\n1 2"), logicon::parse_error);
    try {
        logicon::read_matrix("2 2\n1 0\n1 x");
        FAIL("expected a parse error");
    } catch (const logicon::parse_error& e) {
        REQUIRE(std::string(e.what()).find("(2,2)") != std::string::npos);
    }
}
