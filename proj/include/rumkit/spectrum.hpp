#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

#include "rumkit/framework.hpp"
#include "rumkit/symbol.hpp"

namespace rumkit {

constexpr unsigned long kDefaultSeed = 0x52554d;

/// Which rank deficiency of Phi counts as a spectrum point. The two differ
/// for non-square symbols (the strip): RowDeficiency is the variety condition
/// rank < |F_e|; KernelMode detects a nonzero wave flex (rank < dim |F_v|).
enum class SpectrumMode { RowDeficiency, KernelMode };

/// sigma_min(Phi(conj omega)) sampled over the uniform N^rank torus grid
/// omega_i = e^{2 pi i j_i / N}, row-major over (j_1..j_rank).
struct SpectrumGrid {
    int rank = 0;
    int resolution = 0;
    SpectrumMode mode = SpectrumMode::RowDeficiency;
    std::vector<double> sigma;      // mode-selected singular value, >= 0
    std::vector<double> sigma_max;  // largest singular value per point

    long point_count() const { return static_cast<long>(sigma.size()); }
    long index_of(std::span<const int> j) const;
};

struct SpectrumPoint {
    std::vector<int> indices;          // grid indices j in [0,N)^rank
    std::vector<double> wave_vector;   // k = j / N in [0,1)^rank
    double sigma_min = 0.0;
};

struct SpectrumReport {
    double threshold = 0.0;
    SpectrumMode mode = SpectrumMode::RowDeficiency;
    int resolution = 0;
    std::vector<SpectrumPoint> points;
};

SpectrumGrid sigma_min_field(const CrystalFramework& fw, int resolution,
                             SpectrumMode mode = SpectrumMode::RowDeficiency);

/// Points with sigma <= threshold * max(sigma_max, 1).
SpectrumReport rum_points(const SpectrumGrid& grid, double threshold = 1e-8);

/// Right singular vector of Phi(conj omega) for the smallest singular
/// value, with canonical phase; second member is that singular value
/// (KernelMode sense: zero when the symbol has more columns than rows).
std::pair<Eigen::VectorXcd, double> wave_flex_at(const CrystalFramework& fw,
                                                 std::span<const std::complex<double>> omega);

struct RumDimensionEstimate {
    std::vector<int> resolutions;
    std::vector<long> counts;
    double slope = 0.0;
    int dimension = 0;
};

RumDimensionEstimate rum_dimension_estimate(const CrystalFramework& fw,
                                            std::vector<int> resolutions = {16, 32, 64},
                                            SpectrumMode mode = SpectrumMode::RowDeficiency,
                                            double threshold = 1e-8);

struct SupercellSpectrumInfo {
    long forward_checked = 0;     // spectrum points of the base framework
    long forward_failures = 0;    // image points missing from the supercell spectrum
    long reverse_unmatched = 0;   // supercell spectrum points with no grid preimage
};

/// Forward inclusion of the doubling-map property: every sampled spectrum
/// point omega of fw maps to a spectrum point (omega_1^{m_1}, ...) of the
/// supercell. Reverse-inclusion samples are reported in `info`.
bool supercell_spectrum_check(const CrystalFramework& fw, const std::vector<int>& m,
                              int resolution, double threshold = 1e-8,
                              SupercellSpectrumInfo* info = nullptr);

struct SquareSummableReport {
    bool exists = false;
    int generic_column_rank = 0;
    int column_count = 0;
    std::string method;
};

/// Generic column rank over random torus points; reduced column rank on a
/// positive-measure set coincides with generic deficiency for these
/// analytic matrix functions. Cross-checked against the exact determinant
/// for Maxwell-square frameworks.
SquareSummableReport square_summable_flex_exists(const CrystalFramework& fw,
                                                 unsigned long seed = kDefaultSeed);

} // namespace rumkit
