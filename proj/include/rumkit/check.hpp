#pragma once

#include <ostream>
#include <string>

#include "rumkit/framework.hpp"
#include "rumkit/spectrum.hpp"

namespace rumkit {

struct CheckOptions {
    unsigned long seed = kDefaultSeed;
    bool verbose = true;
};

/// Cross-module invariant suite for one framework: construction and file
/// round trip, placement additivity, supercell consistency, translation
/// annihilation, conjugation symmetry, the phase-restriction identity,
/// symbol/patch agreement, Fourier block diagonalization, backend
/// agreement, spectrum symmetries, and (for Maxwell-square frameworks) the
/// local/summable/square-summable equivalence. Prints one line per
/// invariant; returns the number of failures.
int run_invariant_suite(const CrystalFramework& fw, std::ostream& out,
                        const CheckOptions& opts = {});

} // namespace rumkit
