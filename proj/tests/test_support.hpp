#pragma once

#include <complex>
#include <random>
#include <vector>

#include "rumkit/laurent.hpp"
#include "rumkit/symbol.hpp"

namespace rumkit::testing {

/// Brute-force determinant by permutation expansion; the independent oracle
/// for the elimination-based implementations (n <= 5 or so).
inline LaurentPoly leibniz_determinant(const LaurentMatrix& m) {
    const int n = m.rows;
    std::vector<int> perm(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
    LaurentPoly det(m.var_rank);
    do {
        int sign = 1;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (perm[static_cast<size_t>(i)] > perm[static_cast<size_t>(j)]) sign = -sign;
        LaurentPoly term = LaurentPoly::constant(m.var_rank, ExactScalar(sign));
        for (int i = 0; i < n && !term.is_zero(); ++i)
            term = term * m.at(i, perm[static_cast<size_t>(i)]);
        det += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

/// Random sparse Laurent polynomial with small integer or half-integer
/// coefficients and exponents in [-2, 2].
inline LaurentPoly random_laurent_poly(std::mt19937_64& rng, int rank, int max_terms = 3) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> exp_dist(-2, 2);
    std::uniform_int_distribution<int> num_dist(-4, 4);
    std::uniform_int_distribution<int> den_dist(1, 2);
    LaurentPoly p(rank);
    const int terms = nterms(rng);
    for (int t = 0; t < terms; ++t) {
        ExpVec e(static_cast<size_t>(rank));
        for (auto& x : e) x = exp_dist(rng);
        p.add_term(std::move(e), ExactScalar(Rational(num_dist(rng), den_dist(rng))));
    }
    return p;
}

inline LaurentMatrix random_laurent_matrix(std::mt19937_64& rng, int n, int rank) {
    LaurentMatrix m(n, n, rank);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m.at(r, c) = random_laurent_poly(rng, rank);
    return m;
}

inline std::vector<std::complex<double>> random_torus_point(std::mt19937_64& rng, int rank) {
    std::uniform_real_distribution<double> dist(0.0, 2.0 * 3.14159265358979323846);
    std::vector<std::complex<double>> z(static_cast<size_t>(rank));
    for (auto& c : z) {
        const double t = dist(rng);
        c = {std::cos(t), std::sin(t)};
    }
    return z;
}

/// z - 1 etc. as rank-`rank` polynomials; var is 0-based.
inline LaurentPoly var_minus_one(int rank, int var) {
    LaurentPoly p = LaurentPoly::variable(rank, var);
    p.add_term(ExpVec(static_cast<size_t>(rank), 0), ExactScalar(-1));
    return p;
}

inline LaurentPoly var_minus_var(int rank, int a, int b) {
    LaurentPoly p = LaurentPoly::variable(rank, a);
    p += -LaurentPoly::variable(rank, b);
    return p;
}

} // namespace rumkit::testing
