#pragma once

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <optional>
#include <vector>

#include "rumkit/framework.hpp"
#include "rumkit/symbol.hpp"

namespace rumkit {

/// Product of half-open integer intervals in Z^rank.
struct Box {
    std::vector<int> lo;
    std::vector<int> hi;

    static Box cube(int rank, int lo, int hi) {
        return Box{std::vector<int>(static_cast<size_t>(rank), lo),
                   std::vector<int>(static_cast<size_t>(rank), hi)};
    }
    int rank() const { return static_cast<int>(lo.size()); }
    bool contains(std::span<const int> cell) const {
        for (size_t i = 0; i < lo.size(); ++i)
            if (cell[i] < lo[i] || cell[i] >= hi[i]) return false;
        return true;
    }
};

/// How a finite patch of the infinite framework is closed off.
struct BoundaryCondition {
    enum class Kind { Free, FixedBoundary, Periodic, PhasePeriodic };

    Kind kind = Kind::Free;
    int ring_width = 0;                       // FixedBoundary
    int n = 0;                                // Periodic / PhasePeriodic
    std::vector<std::complex<double>> omega;  // PhasePeriodic

    static BoundaryCondition free_patch() { return {}; }
    static BoundaryCondition fixed_boundary(int width) {
        BoundaryCondition bc;
        bc.kind = Kind::FixedBoundary;
        bc.ring_width = width;
        return bc;
    }
    static BoundaryCondition periodic(int n) {
        BoundaryCondition bc;
        bc.kind = Kind::Periodic;
        bc.n = n;
        return bc;
    }
    static BoundaryCondition phase_periodic(std::vector<std::complex<double>> omega, int n) {
        BoundaryCondition bc;
        bc.kind = Kind::PhasePeriodic;
        bc.n = n;
        bc.omega = std::move(omega);
        return bc;
    }
};

struct ColumnLabel {
    int kappa;
    std::vector<int> cell;
    int sigma;
};
struct RowLabel {
    int edge;
    std::vector<int> cell;
};

/// Finite section of the rigidity matrix. Real for Free/FixedBoundary/
/// Periodic (stored as complex with zero imaginary part), genuinely complex
/// for PhasePeriodic.
struct PatchRigidityMatrix {
    Eigen::MatrixXcd mat;
    std::vector<RowLabel> row_labels;
    std::vector<ColumnLabel> col_labels;
    bool complex_valued = false;
};

PatchRigidityMatrix patch_rigidity_matrix(const CrystalFramework& fw, const Box& box,
                                          const BoundaryCondition& bc);

/// Finitely supported velocity assignment (kappa, cell) -> C^dim.
class VelocityField {
public:
    using Key = std::pair<int, std::vector<int>>;

    void set(int kappa, std::vector<int> cell, Eigen::VectorXcd v) {
        values_[Key(kappa, std::move(cell))] = std::move(v);
    }
    const std::map<Key, Eigen::VectorXcd>& values() const { return values_; }
    bool empty() const { return values_.empty(); }
    bool defined(int kappa, std::span<const int> cell) const {
        return values_.count(Key(kappa, std::vector<int>(cell.begin(), cell.end()))) > 0;
    }

    /// Zero for vertices outside the support.
    Eigen::VectorXcd at(int kappa, std::span<const int> cell, int dim) const;

private:
    std::map<Key, Eigen::VectorXcd> values_;
};

struct FlexCheck {
    bool is_flex;
    double max_residual;
};

/// How edge instances with an endpoint outside the stored field are treated:
/// ZeroOutside reads the field as a finitely supported field of the infinite
/// framework (missing vertices move with velocity zero); WindowRestriction
/// reads it as the visible window of a possibly infinite field and skips
/// edges that leave the window.
enum class MissingVertexPolicy { ZeroOutside, WindowRestriction };

/// Evaluates <v_e, u_a - u_b> over every edge instance meeting the stored
/// vertices (bilinear form, complex velocities allowed).
FlexCheck is_infinitesimal_flex(const CrystalFramework& fw, const VelocityField& u,
                                double tol = 1e-10,
                                MissingVertexPolicy policy = MissingVertexPolicy::ZeroOutside);

/// Orthonormal kernel basis: right singular vectors with sigma <= tol *
/// sigma_max (all columns when the matrix has no rows or vanishes).
std::vector<Eigen::VectorXcd> flex_space(const PatchRigidityMatrix& m, double tol = 1e-10);

/// Kernel vector of the fixed-boundary patch matrix, mapped back to a
/// finitely supported velocity field; zero-extension is a genuine flex of
/// the infinite framework. The box must strictly exceed twice the maximal
/// edge offset per dimension.
std::optional<VelocityField> local_flex_search(const CrystalFramework& fw, const Box& box,
                                               double tol = 1e-10);

/// Max bond-length deviation of the harmonic wave motion
/// p(t) = p + eps * Re(u_kappa omega^k e^{i alpha t}) over 64 uniform time
/// samples in [0, T] and all edge instances rooted in the patch box.
double wave_motion_defect(const CrystalFramework& fw,
                          std::span<const std::complex<double>> omega,
                          const Eigen::VectorXcd& u, double alpha, double T, const Box& patch,
                          double eps);

/// Finite-section surrogate for the multiplication-operator equivalence:
/// the singular values of the Periodic(N) patch matrix match the union over
/// N-th root-of-unity phases of the singular values of Phi(conj omega).
bool fourier_block_check(const CrystalFramework& fw, int n, double tol = 1e-9);

/// Singular values (descending) without vectors; BDC for larger blocks.
Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m);

/// Canonical phase: rotate so the vector is as real as possible and the
/// dominant component has positive real part. Keeps kernel vectors of real
/// matrices real and output deterministic.
Eigen::VectorXcd canonicalize_phase(Eigen::VectorXcd v);

} // namespace rumkit
