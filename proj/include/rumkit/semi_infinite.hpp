#pragma once

#include <complex>
#include <string>
#include <vector>

#include "rumkit/rigidity.hpp"
#include "rumkit/symbol.hpp"

namespace rumkit {

/// Symbol with supporting-vertex columns and base-edge rows removed.
struct RootedSymbol {
    SymbolMatrix base;
    std::vector<int> removed_vertices;  // 0-based
    std::vector<int> removed_edges;     // 0-based
    LaurentMatrix phi0;
    std::vector<int> kept_vertices;
};

RootedSymbol rooted_symbol(const CrystalFramework& fw, std::vector<int> removed_vertices,
                           std::vector<int> removed_edges);

enum class RootLocation { OnCircle, Inside, Outside };

struct DeterminantRoot {
    std::complex<double> value;
    int multiplicity = 1;
    RootLocation location = RootLocation::OnCircle;
    /// 1/root for off-circle roots: the per-cell factor of the geometric
    /// flex in its decaying direction.
    std::complex<double> decay_ratio{0.0, 0.0};
};

struct RootReport {
    bool det_zero = false;
    LaurentPoly determinant;   // univariate Laurent polynomial
    LaurentPoly cleared;       // ordinary polynomial, content-normalized
    int shift = 0;             // power of z multiplied in to clear exponents
    std::vector<DeterminantRoot> roots;
    double tol = 1e-9;
};

/// Exact determinant of Phi0, cleared to an ordinary polynomial, roots by
/// companion-matrix eigenvalues with balancing. Requires a square Phi0 over
/// a rank-1 (strip-type) framework.
RootReport root_analysis(const RootedSymbol& rs, double tol = 1e-9);

/// Same pipeline starting from a given univariate determinant; the testing
/// seam for shift invariance and synthetic determinants.
RootReport analyze_determinant(const LaurentPoly& det, double tol = 1e-9);

struct GeometricMode {
    std::complex<double> root;
    std::complex<double> ratio;
    int multiplicity = 1;
    std::string decay_direction;  // "+infinity" or "-infinity"
};

struct RootedVerdict {
    bool degenerate = false;                  // det identically zero
    bool phase_periodic_flex_exists = false;  // some root on the circle
    bool square_summable_rooted_flex = false;
    std::vector<GeometricMode> geometric_modes;
    std::string summary;
};

RootedVerdict rooted_rigidity_verdict(const RootReport& report);

/// Velocity field u_{kappa,k} = ratio^k * (kernel of Phi0 at the root),
/// zero on the removed vertices, spanning cells [cell_lo, cell_hi).
VelocityField geometric_flex_field(const CrystalFramework& fw, const RootedSymbol& rs,
                                   std::complex<double> root, int cell_lo, int cell_hi);

/// Monic complex polynomial roots via a balanced companion matrix;
/// coefficients are c[0] + c[1] z + ... + c[deg] z^deg with c[deg] != 0.
std::vector<std::complex<double>> polynomial_roots(const std::vector<std::complex<double>>& coeffs);

} // namespace rumkit
