#pragma once

#include <optional>
#include <utility>

#include "rumkit/symbol.hpp"

namespace rumkit {

enum class DeterminantAlgo {
    Auto,      // cofactor for n <= 8, fraction-free elimination beyond
    Cofactor,  // memoized minor expansion, division-free
    Bareiss,   // fraction-free elimination after monomial clearing
};

/// Exact determinant over the Laurent ring.
template <class Coeff>
BasicLaurentPoly<Coeff> laurent_determinant(const BasicLaurentMatrix<Coeff>& m,
                                            DeterminantAlgo algo = DeterminantAlgo::Auto);

inline LaurentPoly determinant(const SymbolMatrix& phi,
                               DeterminantAlgo algo = DeterminantAlgo::Auto) {
    return laurent_determinant(phi.mat, algo);
}

/// det Phi shifted to nonnegative exponents with zero minimum per variable
/// and divided by its graded-lex leading coefficient. The componentwise-
/// minimal shift is the reading of "minimum total degree" used here; for
/// determinants of symbol matrices the two coincide, since every variable
/// reaches exponent zero after the shift.
struct CrystalPolynomial {
    LaurentPoly poly;     // all exponents >= 0, min exponent 0 per variable
    ExpVec shift;         // gamma with poly = scale^{-1} * z^gamma * input
    ExactScalar scale;    // leading coefficient divided out
};

/// Throws ValidationError on the zero polynomial (det == 0 means the RUM
/// spectrum is the whole torus).
CrystalPolynomial crystal_polynomial(const LaurentPoly& p);

bool is_identically_zero_exact(const LaurentPoly& p);

/// Monte-Carlo zero test for the determinant of a Laurent matrix: evato
/// random torus points and compare |det| against 1e-10 times the Hadamard
/// bound of the evaluated matrix. Exists for matrices too large for exact
/// determinants.
bool is_identically_zero_probabilistic(const LaurentMatrix& m, int trials = 100,
                                       unsigned long seed = 0);
bool is_identically_zero_probabilistic(const LaurentPoly& p, int trials = 100,
                                       unsigned long seed = 0);

/// Tests p == c * z^gamma * q exactly; returns (c, gamma) when so.
std::optional<std::pair<ExactScalar, ExpVec>> proportional_to(const LaurentPoly& p,
                                                              const LaurentPoly& q);

} // namespace rumkit
