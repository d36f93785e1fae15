#include "rumkit/polynomial.hpp"

#include <cmath>
#include <random>

namespace rumkit {

namespace {

/// Minor expansion over column subsets: minors[S] is the determinant of the
/// first popcount(S) rows restricted to columns S. Division-free, shares
/// minors across cofactor paths, and skips zero entries, which matters for
/// the sparse symbol rows.
template <class Coeff>
BasicLaurentPoly<Coeff> cofactor_determinant(const BasicLaurentMatrix<Coeff>& m) {
    const int n = m.rows;
    using Poly = BasicLaurentPoly<Coeff>;
    std::vector<Poly> minors(static_cast<size_t>(1) << n, Poly(m.var_rank));
    minors[0] = Poly::constant(m.var_rank, Coeff(1));
    std::vector<std::vector<uint32_t>> by_popcount(static_cast<size_t>(n + 1));
    for (uint32_t s = 0; s < (1u << n); ++s)
        by_popcount[static_cast<size_t>(__builtin_popcount(s))].push_back(s);

    for (int k = 1; k <= n; ++k) {
        const int row = k - 1;
        for (uint32_t s : by_popcount[static_cast<size_t>(k)]) {
            Poly det(m.var_rank);
            int pos = 0;
            for (int j = 0; j < n; ++j) {
                if (!(s & (1u << j))) continue;
                const Poly& entry = m.at(row, j);
                if (!entry.is_zero()) {
                    const Poly& sub = minors[s & ~(1u << j)];
                    if (!sub.is_zero()) {
                        Poly term = entry * sub;
                        // expansion along the last row: sign (-1)^{row + pos}
                        if ((row + pos) % 2 == 1) term = -term;
                        det += term;
                    }
                }
                ++pos;
            }
            minors[s] = std::move(det);
        }
        // Minors of the previous size are no longer needed; drop them to
        // bound memory for n = 12.
        for (uint32_t s : by_popcount[static_cast<size_t>(k - 1)]) minors[s] = Poly(m.var_rank);
        minors[0] = Poly::constant(m.var_rank, Coeff(1));
    }
    return minors[(1u << n) - 1];
}

/// Fraction-free Gaussian elimination. Exact divisions require the exact
/// coefficient field, so this path is only instantiated for ExactScalar.
LaurentPoly bareiss_determinant(const LaurentMatrix& m) {
    const int n = m.rows;
    // Clear each row to nonnegative exponents; det picks up z^{total}.
    ExpVec total_shift(static_cast<size_t>(m.var_rank), 0);
    std::vector<std::vector<LaurentPoly>> a(static_cast<size_t>(n));
    for (int r = 0; r < n; ++r) {
        ExpVec row_min(static_cast<size_t>(m.var_rank), 0);
        bool any = false;
        for (int c = 0; c < n; ++c) {
            const LaurentPoly& p = m.at(r, c);
            if (p.is_zero()) continue;
            const ExpVec e = p.min_exponents();
            if (!any) {
                row_min = e;
                any = true;
            } else {
                for (size_t i = 0; i < row_min.size(); ++i) row_min[i] = std::min(row_min[i], e[i]);
            }
        }
        ExpVec up(static_cast<size_t>(m.var_rank), 0);
        for (size_t i = 0; i < up.size(); ++i) {
            up[i] = row_min[i] < 0 ? -row_min[i] : 0;
            total_shift[i] += up[i];
        }
        a[static_cast<size_t>(r)].reserve(static_cast<size_t>(n));
        for (int c = 0; c < n; ++c) a[static_cast<size_t>(r)].push_back(m.at(r, c).monomial_shift(up));
    }

    int sign = 1;
    LaurentPoly prev = LaurentPoly::constant(m.var_rank, ExactScalar(1));
    for (int k = 0; k < n - 1; ++k) {
        // Pivot: nonzero entry with fewest terms (ties to the lowest row).
        int pivot = -1;
        size_t best = 0;
        for (int r = k; r < n; ++r) {
            const LaurentPoly& cand = a[static_cast<size_t>(r)][static_cast<size_t>(k)];
            if (cand.is_zero()) continue;
            if (pivot < 0 || cand.term_count() < best) {
                pivot = r;
                best = cand.term_count();
            }
        }
        if (pivot < 0) return LaurentPoly(m.var_rank);  // singular
        if (pivot != k) {
            std::swap(a[static_cast<size_t>(pivot)], a[static_cast<size_t>(k)]);
            sign = -sign;
        }
        const LaurentPoly& pkk = a[static_cast<size_t>(k)][static_cast<size_t>(k)];
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                LaurentPoly num = pkk * a[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                                  a[static_cast<size_t>(i)][static_cast<size_t>(k)] *
                                      a[static_cast<size_t>(k)][static_cast<size_t>(j)];
                a[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    num.is_zero() ? LaurentPoly(m.var_rank) : exact_divide(num, prev);
            }
            a[static_cast<size_t>(i)][static_cast<size_t>(k)] = LaurentPoly(m.var_rank);
        }
        prev = pkk;
    }
    LaurentPoly det = a[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)];
    if (sign < 0) det = -det;
    ExpVec down(total_shift.size());
    for (size_t i = 0; i < down.size(); ++i) down[i] = -total_shift[i];
    return det.monomial_shift(down);
}

} // namespace

template <class Coeff>
BasicLaurentPoly<Coeff> laurent_determinant(const BasicLaurentMatrix<Coeff>& m,
                                            DeterminantAlgo algo) {
    if (m.rows != m.cols)
        throw ValidationError("determinant of a non-square matrix (" + std::to_string(m.rows) +
                              "x" + std::to_string(m.cols) + ")");
    if (m.rows == 0) return BasicLaurentPoly<Coeff>::constant(m.var_rank, Coeff(1));
    if (m.rows > 30) throw ValidationError("exact determinant limited to 30x30");

    if constexpr (std::is_same_v<Coeff, ExactScalar>) {
        switch (algo) {
            case DeterminantAlgo::Cofactor:
                return cofactor_determinant(m);
            case DeterminantAlgo::Bareiss:
                return bareiss_determinant(m);
            case DeterminantAlgo::Auto:
                return m.rows <= 8 ? cofactor_determinant(m) : bareiss_determinant(m);
        }
        throw ValidationError("unknown determinant algorithm");
    } else {
        // The floating backend has no exact division; the division-free
        // expansion is used regardless of size.
        (void)algo;
        return cofactor_determinant(m);
    }
}

template LaurentPoly laurent_determinant<ExactScalar>(const LaurentMatrix&, DeterminantAlgo);
template FloatLaurentPoly laurent_determinant<double>(const FloatLaurentMatrix&, DeterminantAlgo);

CrystalPolynomial crystal_polynomial(const LaurentPoly& p) {
    if (p.is_zero())
        throw ValidationError(
            "crystal polynomial of the identically zero determinant (RUM dimension d)");
    const ExpVec mins = p.min_exponents();
    ExpVec gamma(mins.size());
    for (size_t i = 0; i < mins.size(); ++i) gamma[i] = -mins[i];
    LaurentPoly shifted = p.monomial_shift(gamma);
    const ExactScalar lead = shifted.leading_term().second;
    CrystalPolynomial out;
    out.poly = shifted.scaled(lead.inverse());
    out.shift = std::move(gamma);
    out.scale = lead;
    return out;
}

bool is_identically_zero_exact(const LaurentPoly& p) { return p.is_zero(); }

namespace {

std::vector<std::complex<double>> random_torus_point(std::mt19937_64& rng, int rank) {
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    std::vector<std::complex<double>> z(static_cast<size_t>(rank));
    for (auto& c : z) {
        const double t = 2.0 * M_PI * dist(rng);
        c = {std::cos(t), std::sin(t)};
    }
    return z;
}

} // namespace

bool is_identically_zero_probabilistic(const LaurentMatrix& m, int trials, unsigned long seed) {
    if (m.rows != m.cols) throw ValidationError("probabilistic zero test needs a square matrix");
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        const auto z = random_torus_point(rng, m.var_rank);
        const Eigen::MatrixXcd a = evaluate_laurent_matrix(m, z);
        double hadamard = 1.0;
        for (int r = 0; r < a.rows(); ++r) hadamard *= std::max(a.row(r).norm(), 1e-30);
        const double det = std::abs(a.determinant());
        if (det > 1e-10 * std::max(hadamard, 1e-30)) return false;
    }
    return true;
}

bool is_identically_zero_probabilistic(const LaurentPoly& p, int trials, unsigned long seed) {
    if (p.is_zero()) return true;
    double scale = 0.0;
    for (const auto& [e, c] : p.terms()) {
        (void)e;
        scale += std::abs(c.to_double());
    }
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        const auto z = random_torus_point(rng, p.rank());
        if (std::abs(p.evaluate(z)) > 1e-10 * std::max(scale, 1.0)) return false;
    }
    return true;
}

std::optional<std::pair<ExactScalar, ExpVec>> proportional_to(const LaurentPoly& p,
                                                              const LaurentPoly& q) {
    if (p.is_zero() || q.is_zero())
        throw ValidationError("proportionality test needs nonzero polynomials");
    if (p.rank() != q.rank()) return std::nullopt;
    if (p.term_count() != q.term_count()) return std::nullopt;
    const ExpVec pm = p.min_exponents();
    const ExpVec qm = q.min_exponents();
    ExpVec gamma(pm.size());
    for (size_t i = 0; i < pm.size(); ++i) gamma[i] = pm[i] - qm[i];
    // c from the leading terms, then verify p == c * z^gamma * q exactly.
    const LaurentPoly q_shifted = q.monomial_shift(gamma);
    const auto& [ple, plc] = p.leading_term();
    const auto& [qle, qlc] = q_shifted.leading_term();
    if (ple != qle) return std::nullopt;
    const ExactScalar c = plc / qlc;
    if (p != q_shifted.scaled(c)) return std::nullopt;
    return std::make_pair(c, gamma);
}

} // namespace rumkit
