#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "rumkit/framework.hpp"
#include "rumkit/laurent.hpp"

namespace rumkit {

/// Rectangular matrix of Laurent polynomials in var_rank variables.
template <class Coeff>
struct BasicLaurentMatrix {
    int rows = 0;
    int cols = 0;
    int var_rank = 0;
    std::vector<BasicLaurentPoly<Coeff>> entries;  // row-major

    BasicLaurentMatrix() = default;
    BasicLaurentMatrix(int r, int c, int vr)
        : rows(r), cols(c), var_rank(vr),
          entries(static_cast<size_t>(r) * static_cast<size_t>(c), BasicLaurentPoly<Coeff>(vr)) {}

    BasicLaurentPoly<Coeff>& at(int r, int c) {
        return entries[static_cast<size_t>(r) * static_cast<size_t>(cols) + static_cast<size_t>(c)];
    }
    const BasicLaurentPoly<Coeff>& at(int r, int c) const {
        return entries[static_cast<size_t>(r) * static_cast<size_t>(cols) + static_cast<size_t>(c)];
    }
};

using LaurentMatrix = BasicLaurentMatrix<ExactScalar>;
using FloatLaurentMatrix = BasicLaurentMatrix<double>;

/// The symbol function Phi_C(z): |F_e| rows, dim * |F_v| columns ordered
/// (kappa major, coordinate sigma minor), row order = motif edge order.
/// Entries are Laurent polynomials in rank variables with zbar^k stored as
/// exponent -k.
struct SymbolMatrix {
    LaurentMatrix mat;
    int dim = 0;
    int nverts = 0;

    int rows() const { return mat.rows; }
    int cols() const { return mat.cols; }
    int column_of(int kappa, int sigma) const { return kappa * dim + sigma; }
};

SymbolMatrix build_symbol(const CrystalFramework& fw);

FloatLaurentMatrix to_float(const LaurentMatrix& m);

/// Entrywise evaluation at a point with nonzero components.
Eigen::MatrixXcd evaluate_laurent_matrix(const LaurentMatrix& m,
                                         std::span<const std::complex<double>> point);
Eigen::MatrixXcd evaluate_laurent_matrix(const FloatLaurentMatrix& m,
                                         std::span<const std::complex<double>> point);

inline Eigen::MatrixXcd evaluate_symbol(const SymbolMatrix& phi,
                                        std::span<const std::complex<double>> point) {
    return evaluate_laurent_matrix(phi.mat, point);
}

/// Plain-text grid with expanded entries (e.g. "-4+4z^-1"), columns padded.
std::string format_laurent_matrix(const LaurentMatrix& m);

} // namespace rumkit
