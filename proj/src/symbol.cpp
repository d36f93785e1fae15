#include "rumkit/symbol.hpp"

#include <algorithm>

namespace rumkit {

SymbolMatrix build_symbol(const CrystalFramework& fw) {
    SymbolMatrix phi;
    phi.dim = fw.dim();
    phi.nverts = fw.vertex_count();
    phi.mat = LaurentMatrix(fw.edge_count(), fw.dim() * fw.vertex_count(), fw.rank());

    for (int e = 0; e < fw.edge_count(); ++e) {
        const EdgeSpec& ed = fw.motif().edges[static_cast<size_t>(e)];
        const ExactVec v = fw.edge_vector(e);
        ExpVec neg_delta(ed.delta.size());
        for (size_t i = 0; i < ed.delta.size(); ++i) neg_delta[i] = -ed.delta[i];
        const ExpVec zero(ed.delta.size(), 0);
        // Accumulation realizes both cases of the definition: for a
        // reflexive edge the kappa and tau contributions combine into
        // (v_e)_sigma (1 - zbar^delta).
        for (int s = 0; s < fw.dim(); ++s) {
            const ExactScalar& c = v[static_cast<size_t>(s)];
            if (c.is_zero()) continue;
            phi.mat.at(e, phi.column_of(ed.kappa, s)).add_term(zero, c);
            phi.mat.at(e, phi.column_of(ed.tau, s)).add_term(neg_delta, -c);
        }
    }
    return phi;
}

FloatLaurentMatrix to_float(const LaurentMatrix& m) {
    FloatLaurentMatrix f(m.rows, m.cols, m.var_rank);
    for (size_t i = 0; i < m.entries.size(); ++i) f.entries[i] = to_float(m.entries[i]);
    return f;
}

namespace {

template <class M>
Eigen::MatrixXcd evaluate_impl(const M& m, std::span<const std::complex<double>> point) {
    if (static_cast<int>(point.size()) != m.var_rank)
        throw ValidationError("evaluation point has wrong dimension");
    for (const auto& z : point)
        if (z == std::complex<double>(0.0, 0.0))
            throw ValidationError("cannot evaluate a Laurent matrix at a zero component");
    Eigen::MatrixXcd out(m.rows, m.cols);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) out(r, c) = m.at(r, c).evaluate(point);
    return out;
}

} // namespace

Eigen::MatrixXcd evaluate_laurent_matrix(const LaurentMatrix& m,
                                         std::span<const std::complex<double>> point) {
    return evaluate_impl(m, point);
}

Eigen::MatrixXcd evaluate_laurent_matrix(const FloatLaurentMatrix& m,
                                         std::span<const std::complex<double>> point) {
    return evaluate_impl(m, point);
}

std::string format_laurent_matrix(const LaurentMatrix& m) {
    const auto vars = variable_names(m.var_rank);
    std::vector<std::string> cells(m.entries.size());
    std::vector<size_t> widths(static_cast<size_t>(m.cols), 0);
    for (int r = 0; r < m.rows; ++r) {
        for (int c = 0; c < m.cols; ++c) {
            std::string s = render_poly(m.at(r, c), vars, false);
            widths[static_cast<size_t>(c)] = std::max(widths[static_cast<size_t>(c)], s.size());
            cells[static_cast<size_t>(r) * static_cast<size_t>(m.cols) + static_cast<size_t>(c)] =
                std::move(s);
        }
    }
    std::string out;
    for (int r = 0; r < m.rows; ++r) {
        out += "[ ";
        for (int c = 0; c < m.cols; ++c) {
            const std::string& s =
                cells[static_cast<size_t>(r) * static_cast<size_t>(m.cols) + static_cast<size_t>(c)];
            out.append(widths[static_cast<size_t>(c)] - s.size(), ' ');
            out += s;
            out += (c + 1 < m.cols) ? "  " : " ";
        }
        out += "]\n";
    }
    return out;
}

} // namespace rumkit
