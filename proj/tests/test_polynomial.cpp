#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rumkit/polynomial.hpp"
#include "test_support.hpp"

using namespace rumkit;
using namespace rumkit::testing;

namespace {

LaurentPoly mono(int rank, ExpVec e, long num, long den = 1) {
    return LaurentPoly::monomial(rank, std::move(e), ExactScalar(Rational(num, den)));
}

LaurentMatrix transpose(const LaurentMatrix& m) {
    LaurentMatrix t(m.cols, m.rows, m.var_rank);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) t.at(c, r) = m.at(r, c);
    return t;
}

} // namespace

TEST_CASE("determinants match the permutation-expansion oracle") {
    std::mt19937_64 rng(41);
    for (int n = 1; n <= 4; ++n) {
        for (int trial = 0; trial < 25; ++trial) {
            const LaurentMatrix m = random_laurent_matrix(rng, n, 2);
            const LaurentPoly oracle = leibniz_determinant(m);
            CHECK(laurent_determinant(m, DeterminantAlgo::Cofactor) == oracle);
            CHECK(laurent_determinant(m, DeterminantAlgo::Bareiss) == oracle);
        }
    }
}

TEST_CASE("determinant sign flips under a row swap; transpose is invariant") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 25; ++trial) {
        LaurentMatrix m = random_laurent_matrix(rng, 3, 2);
        const LaurentPoly det = laurent_determinant(m);
        CHECK(laurent_determinant(transpose(m)) == det);
        for (int c = 0; c < 3; ++c) std::swap(m.at(0, c), m.at(2, c));
        CHECK(laurent_determinant(m) == -det);
    }
}

TEST_CASE("base cases and validation") {
    LaurentMatrix one(1, 1, 2);
    one.at(0, 0) = mono(2, {1, -1}, 5, 2);
    CHECK(laurent_determinant(one) == one.at(0, 0));

    LaurentMatrix rect(2, 3, 1);
    CHECK_THROWS_AS((void)laurent_determinant(rect), ValidationError);
}

TEST_CASE("grid2d determinant and crystal polynomial") {
    const SymbolMatrix phi = build_symbol(make_generator("grid2d"));
    const LaurentPoly det = determinant(phi);
    const LaurentPoly expected =
        (mono(2, {0, 0}, -1) + mono(2, {-1, 0}, 1)) * (mono(2, {0, 0}, -1) + mono(2, {0, -1}, 1));
    CHECK(det == expected);

    const CrystalPolynomial pc = crystal_polynomial(det);
    CHECK(pc.poly == var_minus_one(2, 0) * var_minus_one(2, 1));
    CHECK(pc.shift == ExpVec{1, 1});
    CHECK(pc.scale == ExactScalar(1));
}

TEST_CASE("kagome crystal polynomial has the expected six-term form") {
    const LaurentPoly det = determinant(build_symbol(make_generator("kagome")));
    const CrystalPolynomial pc = crystal_polynomial(det);
    const LaurentPoly target =
        var_minus_one(2, 0) * var_minus_one(2, 1) * var_minus_var(2, 0, 1);
    CHECK(pc.poly == target);
    CHECK(proportional_to(det, target).has_value());
}

TEST_CASE("kagome net crystal polynomial equals the six-factor expansion") {
    const LaurentPoly det =
        laurent_determinant(build_symbol(make_generator("kagome_net")).mat, DeterminantAlgo::Bareiss);
    const LaurentPoly target = var_minus_one(3, 0) * var_minus_one(3, 1) * var_minus_one(3, 2) *
                               var_minus_var(3, 0, 1) * var_minus_var(3, 1, 2) *
                               var_minus_var(3, 0, 2);
    CHECK(crystal_polynomial(det).poly == target);
}

TEST_CASE("crystal polynomial invariants hold structurally") {
    for (const char* name : {"grid2d", "kagome", "kagome_net"}) {
        const CrystalPolynomial pc =
            crystal_polynomial(determinant(build_symbol(make_generator(name))));
        std::vector<int> min_exp;
        bool first = true;
        for (const auto& [e, c] : pc.poly.terms()) {
            (void)c;
            if (first) {
                min_exp = e;
                first = false;
            }
            for (size_t i = 0; i < e.size(); ++i) {
                CHECK(e[i] >= 0);
                min_exp[i] = std::min(min_exp[i], e[i]);
            }
        }
        for (int m : min_exp) CHECK(m == 0);  // the shift is minimal
        CHECK(pc.poly.leading_term().second == ExactScalar(1));
    }
    CHECK_THROWS_AS((void)crystal_polynomial(LaurentPoly(2)), ValidationError);
}

TEST_CASE("cofactor and fraction-free elimination agree on the generators") {
    for (const char* name : {"grid2d", "kagome", "subdivided_grid_diag"}) {
        const LaurentMatrix m = build_symbol(make_generator(name)).mat;
        CHECK(laurent_determinant(m, DeterminantAlgo::Cofactor) ==
              laurent_determinant(m, DeterminantAlgo::Bareiss));
    }
}

TEST_CASE("identically-zero tests, exact and probabilistic") {
    const SymbolMatrix sub = build_symbol(make_generator("subdivided_grid_diag"));
    const LaurentPoly det_sub = determinant(sub);
    CHECK(det_sub.is_zero());
    CHECK(is_identically_zero_exact(det_sub));
    CHECK(is_identically_zero_probabilistic(sub.mat, 100, 1));
    CHECK(is_identically_zero_probabilistic(det_sub, 100, 1));

    const SymbolMatrix kag = build_symbol(make_generator("kagome"));
    CHECK_FALSE(determinant(kag).is_zero());
    CHECK_FALSE(is_identically_zero_probabilistic(kag.mat, 100, 1));
    CHECK_FALSE(is_identically_zero_probabilistic(determinant(kag), 100, 1));

    LaurentMatrix zero(2, 2, 2);
    CHECK(is_identically_zero_probabilistic(zero, 20, 1));
}

TEST_CASE("proportionality detection") {
    const LaurentPoly lhs =
        (mono(2, {0, 0}, 1) + mono(2, {-1, 0}, -1)) * (mono(2, {0, 0}, 1) + mono(2, {0, -1}, -1));
    const LaurentPoly rhs = var_minus_one(2, 0) * var_minus_one(2, 1);
    const auto hit = proportional_to(lhs, rhs);
    REQUIRE(hit.has_value());
    CHECK(hit->first == ExactScalar(1));
    CHECK(hit->second == ExpVec{-1, -1});
    CHECK(lhs == rhs.monomial_shift(hit->second).scaled(hit->first));

    const auto kag = proportional_to(
        determinant(build_symbol(make_generator("kagome"))),
        var_minus_one(2, 0) * var_minus_one(2, 1) * var_minus_var(2, 0, 1));
    REQUIRE(kag.has_value());

    CHECK_FALSE(proportional_to(var_minus_one(2, 0), var_minus_one(2, 1)).has_value());
    CHECK_THROWS_AS((void)proportional_to(LaurentPoly(2), var_minus_one(2, 0)), ValidationError);
}

TEST_CASE("exact determinant matches the numeric determinant at random torus points") {
    std::mt19937_64 rng(47);
    for (const char* name : {"grid2d", "kagome", "subdivided_grid_diag", "kagome_net"}) {
        const SymbolMatrix phi = build_symbol(make_generator(name));
        const LaurentPoly det = determinant(phi);
        for (int t = 0; t < 50; ++t) {
            const auto z = random_torus_point(rng, phi.mat.var_rank);
            const std::complex<double> exact_val = det.evaluate(z);
            const std::complex<double> numeric = evaluate_symbol(phi, z).determinant();
            CHECK(std::abs(exact_val - numeric) <= 1e-8 * std::max(1.0, std::abs(numeric)));
        }
    }
}
