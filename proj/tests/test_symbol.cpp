#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rumkit/rigidity.hpp"
#include "test_support.hpp"

using namespace rumkit;
using namespace rumkit::testing;

namespace {

LaurentPoly cpoly(int rank, long c) { return LaurentPoly::constant(rank, ExactScalar(c)); }

LaurentPoly mono(int rank, ExpVec e, long num) {
    return LaurentPoly::monomial(rank, std::move(e), ExactScalar(num));
}

/// The reference 5x6 strip matrix, written entry by entry.
LaurentMatrix strip_expected() {
    LaurentMatrix m(5, 6, 1);
    m.at(0, 1) = cpoly(1, -4);
    m.at(0, 3) = cpoly(1, 4);
    m.at(1, 2) = cpoly(1, -1);
    m.at(1, 3) = cpoly(1, 1);
    m.at(1, 4) = cpoly(1, 1);
    m.at(1, 5) = cpoly(1, -1);
    m.at(2, 0) = cpoly(1, -1);
    m.at(2, 1) = cpoly(1, -3);
    m.at(2, 4) = cpoly(1, 1);
    m.at(2, 5) = cpoly(1, 3);
    m.at(3, 0) = cpoly(1, -4) + mono(1, {-1}, 4);  // -4(1 - zbar)
    m.at(4, 2) = mono(1, {-1}, 3);
    m.at(4, 3) = mono(1, {-1}, 1);
    m.at(4, 4) = cpoly(1, -3);
    m.at(4, 5) = cpoly(1, -1);
    return m;
}

} // namespace

TEST_CASE("strip symbol equals the reference matrix, entry for entry") {
    const SymbolMatrix phi = build_symbol(make_generator("strip"));
    const LaurentMatrix expected = strip_expected();
    REQUIRE(phi.rows() == 5);
    REQUIRE(phi.cols() == 6);
    for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 6; ++c) CHECK(phi.mat.at(r, c) == expected.at(r, c));
}

TEST_CASE("grid2d symbol is diag(-(1 - zbar), -(1 - wbar))") {
    const SymbolMatrix phi = build_symbol(make_generator("grid2d"));
    REQUIRE(phi.rows() == 2);
    REQUIRE(phi.cols() == 2);
    CHECK(phi.mat.at(0, 0) == cpoly(2, -1) + mono(2, {-1, 0}, 1));
    CHECK(phi.mat.at(1, 1) == cpoly(2, -1) + mono(2, {0, -1}, 1));
    CHECK(phi.mat.at(0, 1).is_zero());
    CHECK(phi.mat.at(1, 0).is_zero());
}

TEST_CASE("a single offset-zero edge gives the constant row [v, -v]") {
    Motif m;
    m.dimension = 2;
    m.vertices = {{ExactScalar(0), ExactScalar(0)}, {ExactScalar(-1), ExactScalar(0)}};
    m.edges = {{0, 1, {0}}};
    const CrystalFramework fw = new_framework(
        std::move(m), TranslationGroup({{ExactScalar(3), ExactScalar(0)}}));
    const SymbolMatrix phi = build_symbol(fw);
    CHECK(phi.mat.at(0, 0) == cpoly(1, 1));
    CHECK(phi.mat.at(0, 1).is_zero());
    CHECK(phi.mat.at(0, 2) == cpoly(1, -1));
    CHECK(phi.mat.at(0, 3).is_zero());
}

TEST_CASE("evaluation of the strip symbol") {
    const SymbolMatrix phi = build_symbol(make_generator("strip"));
    const std::vector<std::complex<double>> one = {{1.0, 0.0}};
    const Eigen::MatrixXcd at_one = evaluate_symbol(phi, one);
    CHECK(at_one.row(3).norm() == 0.0);  // row e4 vanishes at z = 1

    const std::vector<std::complex<double>> minus_one = {{-1.0, 0.0}};
    const Eigen::MatrixXcd at_minus = evaluate_symbol(phi, minus_one);
    CHECK(std::abs(at_minus(3, 0) - std::complex<double>(-8.0, 0.0)) < 1e-15);

    CHECK_THROWS_AS((void)evaluate_symbol(phi, std::vector<std::complex<double>>{{0.0, 0.0}}),
                    ValidationError);
}

TEST_CASE("grid2d symbol vanishes at (1,1)") {
    const SymbolMatrix phi = build_symbol(make_generator("grid2d"));
    const std::vector<std::complex<double>> ones = {{1.0, 0.0}, {1.0, 0.0}};
    CHECK(evaluate_symbol(phi, ones).norm() == 0.0);
}

TEST_CASE("translation annihilation: Phi(1,...,1) kills both translations exactly") {
    for (const auto& name : generator_names()) {
        const CrystalFramework fw = make_generator(name);
        const SymbolMatrix phi = build_symbol(fw);
        for (int sigma = 0; sigma < fw.dim(); ++sigma) {
            for (int r = 0; r < phi.rows(); ++r) {
                ExactScalar sum;
                for (int k = 0; k < phi.nverts; ++k)
                    sum += phi.mat.at(r, phi.column_of(k, sigma)).coefficient_sum();
                CHECK(sum.is_zero());
            }
        }
    }
}

TEST_CASE("conjugation symmetry of singular values") {
    std::mt19937_64 rng(31);
    for (const auto& name : generator_names()) {
        const SymbolMatrix phi = build_symbol(make_generator(name));
        for (int t = 0; t < 5; ++t) {
            auto omega = random_torus_point(rng, phi.mat.var_rank);
            auto conj_omega = omega;
            for (auto& c : conj_omega) c = std::conj(c);
            const Eigen::VectorXd a = singular_values(evaluate_symbol(phi, omega));
            const Eigen::VectorXd b = singular_values(evaluate_symbol(phi, conj_omega));
            CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("float and exact coefficient backends agree at 100 random torus points") {
    std::mt19937_64 rng(37);
    for (const auto& name : generator_names()) {
        const SymbolMatrix phi = build_symbol(make_generator(name));
        const FloatLaurentMatrix fphi = to_float(phi.mat);
        for (int t = 0; t < 100; ++t) {
            const auto omega = random_torus_point(rng, phi.mat.var_rank);
            const Eigen::MatrixXcd a = evaluate_laurent_matrix(phi.mat, omega);
            const Eigen::MatrixXcd b = evaluate_laurent_matrix(fphi, omega);
            CHECK((a - b).norm() <= 1e-9 * std::max(1.0, a.norm()));
        }
    }
}

TEST_CASE("plain-text grid rendering expands reflexive entries") {
    const std::string grid = format_laurent_matrix(build_symbol(make_generator("strip")).mat);
    CHECK(grid.find("-4+4z^-1") != std::string::npos);
    CHECK(grid.find("3z^-1") != std::string::npos);
    CHECK(std::count(grid.begin(), grid.end(), '\n') == 5);
}
