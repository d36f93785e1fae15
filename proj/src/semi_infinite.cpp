#include "rumkit/semi_infinite.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <set>

#include "rumkit/polynomial.hpp"

namespace rumkit {

RootedSymbol rooted_symbol(const CrystalFramework& fw, std::vector<int> removed_vertices,
                           std::vector<int> removed_edges) {
    RootedSymbol rs;
    rs.base = build_symbol(fw);
    rs.removed_vertices = std::move(removed_vertices);
    rs.removed_edges = std::move(removed_edges);

    std::set<int> vset, eset;
    for (int v : rs.removed_vertices) {
        if (v < 0 || v >= fw.vertex_count())
            throw ValidationError("removed vertex index out of range: " + std::to_string(v + 1));
        if (!vset.insert(v).second)
            throw ValidationError("duplicate removed vertex: " + std::to_string(v + 1));
    }
    for (int e : rs.removed_edges) {
        if (e < 0 || e >= fw.edge_count())
            throw ValidationError("removed edge index out of range: " + std::to_string(e + 1));
        if (!eset.insert(e).second)
            throw ValidationError("duplicate removed edge: " + std::to_string(e + 1));
    }

    std::vector<int> kept_rows, kept_cols;
    for (int e = 0; e < rs.base.rows(); ++e)
        if (!eset.count(e)) kept_rows.push_back(e);
    for (int k = 0; k < fw.vertex_count(); ++k) {
        if (vset.count(k)) continue;
        rs.kept_vertices.push_back(k);
        for (int s = 0; s < fw.dim(); ++s) kept_cols.push_back(rs.base.column_of(k, s));
    }
    if (kept_rows.empty() || kept_cols.empty())
        throw ValidationError("rooted symbol is empty after removal");

    rs.phi0 = LaurentMatrix(static_cast<int>(kept_rows.size()), static_cast<int>(kept_cols.size()),
                            rs.base.mat.var_rank);
    for (size_t r = 0; r < kept_rows.size(); ++r)
        for (size_t c = 0; c < kept_cols.size(); ++c)
            rs.phi0.at(static_cast<int>(r), static_cast<int>(c)) =
                rs.base.mat.at(kept_rows[r], kept_cols[c]);
    return rs;
}

namespace {

// Parlett-Reinsch style balancing with powers of two; reduces the norm
// imbalance between row/column pairs before the eigensolve.
void balance_in_place(Eigen::MatrixXcd& a) {
    const Eigen::Index n = a.rows();
    bool converged = false;
    while (!converged) {
        converged = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            double c = 0.0, r = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double f = 1.0;
            const double s = c + r;
            while (c < r / 2.0) {
                c *= 2.0;
                r /= 2.0;
                f *= 2.0;
            }
            while (c >= r * 2.0) {
                c /= 2.0;
                r *= 2.0;
                f /= 2.0;
            }
            if ((c + r) < 0.95 * s && f != 1.0) {
                converged = false;
                a.col(i) *= f;
                a.row(i) /= f;
            }
        }
    }
}

} // namespace

std::vector<std::complex<double>> polynomial_roots(
    const std::vector<std::complex<double>>& coeffs) {
    if (coeffs.empty() || coeffs.back() == std::complex<double>(0.0, 0.0))
        throw ValidationError("root finder needs a nonzero leading coefficient");
    const int deg = static_cast<int>(coeffs.size()) - 1;
    if (deg == 0) return {};
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i)
        companion(i, deg - 1) = -coeffs[static_cast<size_t>(i)] / coeffs.back();
    balance_in_place(companion);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    if (solver.info() != Eigen::Success) throw Error("eigenvalue iteration failed");
    std::vector<std::complex<double>> roots(solver.eigenvalues().data(),
                                            solver.eigenvalues().data() + deg);
    return roots;
}

RootReport analyze_determinant(const LaurentPoly& det, double tol) {
    if (det.rank() != 1)
        throw ValidationError("root analysis requires a rank-1 (strip-type) framework");
    RootReport report;
    report.determinant = det;
    report.tol = tol;
    if (det.is_zero()) {
        report.det_zero = true;
        report.cleared = det;
        return report;
    }

    const int min_exp = det.min_exponents()[0];
    report.shift = -min_exp;
    LaurentPoly cleared = det.monomial_shift({report.shift});

    // Content normalization: integer-primitive with positive leading
    // coefficient when all coefficients are rational, monic otherwise.
    bool all_rational = true;
    for (const auto& [e, c] : cleared.terms()) {
        (void)e;
        if (!c.is_rational()) all_rational = false;
    }
    if (all_rational) {
        mpz_class num_gcd = 0, den_lcm = 1;
        for (const auto& [e, c] : cleared.terms()) {
            (void)e;
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(),
                    c.rational_part().get_num().get_mpz_t());
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
                    c.rational_part().get_den().get_mpz_t());
        }
        Rational content(num_gcd, den_lcm);
        content.canonicalize();
        ExactScalar divisor(content);
        // Highest-degree coefficient positive.
        int max_exp = 0;
        for (const auto& [e, c] : cleared.terms()) {
            (void)c;
            max_exp = std::max(max_exp, e[0]);
        }
        const ExactScalar lead = cleared.terms().at(ExpVec{max_exp});
        if (lead.rational_part() < 0) divisor = -divisor;
        cleared = cleared.scaled(divisor.inverse());
    } else {
        cleared = cleared.scaled(cleared.leading_term().second.inverse());
    }
    report.cleared = cleared;

    int deg = 0;
    for (const auto& [e, c] : cleared.terms()) {
        (void)c;
        deg = std::max(deg, e[0]);
    }
    if (deg == 0) return report;  // nonzero constant: no roots

    std::vector<std::complex<double>> coeffs(static_cast<size_t>(deg) + 1, {0.0, 0.0});
    for (const auto& [e, c] : cleared.terms())
        coeffs[static_cast<size_t>(e[0])] = {c.to_double(), 0.0};
    std::vector<std::complex<double>> raw = polynomial_roots(coeffs);

    // Cluster numerically coincident roots into multiplicities.
    std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    std::vector<bool> used(raw.size(), false);
    for (size_t i = 0; i < raw.size(); ++i) {
        if (used[i]) continue;
        std::complex<double> sum = raw[i];
        int count = 1;
        used[i] = true;
        for (size_t j = i + 1; j < raw.size(); ++j) {
            if (used[j]) continue;
            if (std::abs(raw[j] - raw[i]) <= 1e-7 * std::max(1.0, std::abs(raw[i]))) {
                sum += raw[j];
                ++count;
                used[j] = true;
            }
        }
        DeterminantRoot root;
        root.value = sum / static_cast<double>(count);
        root.multiplicity = count;
        const double dist = std::abs(root.value) - 1.0;
        if (std::abs(dist) <= tol) {
            root.location = RootLocation::OnCircle;
        } else {
            root.location = dist < 0 ? RootLocation::Inside : RootLocation::Outside;
            root.decay_ratio = 1.0 / root.value;
        }
        report.roots.push_back(root);
    }
    return report;
}

RootReport root_analysis(const RootedSymbol& rs, double tol) {
    if (rs.phi0.var_rank != 1)
        throw ValidationError("root analysis requires a rank-1 (strip-type) framework");
    if (rs.phi0.rows != rs.phi0.cols)
        throw ValidationError("rooted symbol must be square for root analysis (" +
                              std::to_string(rs.phi0.rows) + "x" + std::to_string(rs.phi0.cols) +
                              ")");
    return analyze_determinant(laurent_determinant(rs.phi0), tol);
}

RootedVerdict rooted_rigidity_verdict(const RootReport& report) {
    RootedVerdict verdict;
    if (report.det_zero) {
        verdict.degenerate = true;
        verdict.phase_periodic_flex_exists = true;
        verdict.square_summable_rooted_flex = true;
        verdict.summary = "degenerate: flexes at every phase";
        return verdict;
    }
    for (const DeterminantRoot& r : report.roots) {
        if (r.location == RootLocation::OnCircle) {
            verdict.phase_periodic_flex_exists = true;
        } else {
            GeometricMode mode;
            mode.root = r.value;
            mode.ratio = r.decay_ratio;
            mode.multiplicity = r.multiplicity;
            // |ratio| < 1: amplitudes ratio^k die out toward +infinity.
            mode.decay_direction =
                r.location == RootLocation::Outside ? "+infinity" : "-infinity";
            verdict.geometric_modes.push_back(mode);
        }
    }
    // A nonvanishing determinant kills flexes on a positive-measure phase
    // set; finitely many circle roots do not change that.
    verdict.square_summable_rooted_flex = false;
    verdict.summary = verdict.phase_periodic_flex_exists
                          ? "phase-periodic flexes exist at isolated phases"
                          : "infinitesimally rigid for phase-periodic flexes";
    verdict.summary += "; no square-summable flex fixing the base";
    if (!verdict.geometric_modes.empty())
        verdict.summary +=
            "; " + std::to_string(verdict.geometric_modes.size()) + " geometric mode(s)";
    return verdict;
}

VelocityField geometric_flex_field(const CrystalFramework& fw, const RootedSymbol& rs,
                                   std::complex<double> root, int cell_lo, int cell_hi) {
    if (fw.rank() != 1) throw ValidationError("geometric flexes require a rank-1 framework");
    if (root == std::complex<double>(0.0, 0.0)) throw ValidationError("root must be nonzero");
    const std::vector<std::complex<double>> point = {root};
    const Eigen::MatrixXcd m = evaluate_laurent_matrix(rs.phi0, point);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
    const Eigen::VectorXcd kernel = canonicalize_phase(svd.matrixV().col(m.cols() - 1));

    const std::complex<double> ratio = 1.0 / root;
    VelocityField field;
    const int dim = fw.dim();
    for (int cell = cell_lo; cell < cell_hi; ++cell) {
        const std::complex<double> scale = LaurentPoly::int_pow(ratio, cell);
        for (size_t i = 0; i < rs.kept_vertices.size(); ++i) {
            Eigen::VectorXcd v(dim);
            for (int s = 0; s < dim; ++s)
                v(s) = scale * kernel(static_cast<Eigen::Index>(i) * dim + s);
            field.set(rs.kept_vertices[i], {cell}, std::move(v));
        }
        // The supporting vertices are pinned; store the zeros so window
        // checks still see the base edges.
        for (int v : rs.removed_vertices) field.set(v, {cell}, Eigen::VectorXcd::Zero(dim));
    }
    return field;
}

} // namespace rumkit
