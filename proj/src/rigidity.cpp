#include "rumkit/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace rumkit {

namespace {

std::vector<double> to_double_vec(const ExactVec& v) {
    std::vector<double> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[i].to_double();
    return out;
}

struct PatchIndex {
    std::map<std::vector<int>, int> cell_index;
    std::vector<std::vector<int>> cells;

    explicit PatchIndex(const Box& box) {
        for_each_cell(box.lo, box.hi, [&](std::span<const int> c) {
            std::vector<int> cell(c.begin(), c.end());
            cell_index.emplace(cell, static_cast<int>(cells.size()));
            cells.push_back(std::move(cell));
        });
    }
};

} // namespace

PatchRigidityMatrix patch_rigidity_matrix(const CrystalFramework& fw, const Box& box,
                                          const BoundaryCondition& bc) {
    const int r = fw.rank();
    const int dim = fw.dim();
    if (box.rank() != r) throw ValidationError("patch box has wrong dimension");

    const bool wrapped = bc.kind == BoundaryCondition::Kind::Periodic ||
                         bc.kind == BoundaryCondition::Kind::PhasePeriodic;
    if (wrapped) {
        if (bc.n < 1) throw ValidationError("periodic boundary needs N >= 1");
        for (int i = 0; i < r; ++i)
            if (box.lo[static_cast<size_t>(i)] != 0 || box.hi[static_cast<size_t>(i)] != bc.n)
                throw ValidationError("periodic boundary requires box = [0,N)^rank");
        if (bc.kind == BoundaryCondition::Kind::PhasePeriodic &&
            static_cast<int>(bc.omega.size()) != r)
            throw ValidationError("phase has wrong dimension");
    }
    if (bc.kind == BoundaryCondition::Kind::FixedBoundary) {
        if (bc.ring_width < fw.max_edge_offset())
            throw ValidationError("fixed boundary ring must cover every edge offset");
        for (int i = 0; i < r; ++i)
            if (box.hi[static_cast<size_t>(i)] - box.lo[static_cast<size_t>(i)] <= 2 * bc.ring_width)
                throw ValidationError("box too small for the fixed boundary ring");
    }

    // Interior = cells whose columns survive (all cells except the fixed
    // ring for FixedBoundary, every box cell otherwise).
    Box interior = box;
    if (bc.kind == BoundaryCondition::Kind::FixedBoundary) {
        for (int i = 0; i < r; ++i) {
            interior.lo[static_cast<size_t>(i)] += bc.ring_width;
            interior.hi[static_cast<size_t>(i)] -= bc.ring_width;
        }
    }
    const PatchIndex cols_index(interior);

    PatchRigidityMatrix out;
    out.complex_valued = bc.kind == BoundaryCondition::Kind::PhasePeriodic;
    const int ncols = static_cast<int>(cols_index.cells.size()) * fw.vertex_count() * dim;
    for (const auto& cell : cols_index.cells)
        for (int k = 0; k < fw.vertex_count(); ++k)
            for (int s = 0; s < dim; ++s) out.col_labels.push_back({k, cell, s});

    auto column_of = [&](int kappa, const std::vector<int>& cell, int sigma) -> int {
        auto it = cols_index.cell_index.find(cell);
        if (it == cols_index.cell_index.end()) return -1;  // pinned or absent
        return (it->second * fw.vertex_count() + kappa) * dim + sigma;
    };

    // Candidate edge instances: origin cells within reach of the box.
    const int reach = fw.max_edge_offset();
    Box scan = box;
    if (!wrapped) {
        for (int i = 0; i < r; ++i) {
            scan.lo[static_cast<size_t>(i)] -= reach;
            scan.hi[static_cast<size_t>(i)] += reach;
        }
    }

    struct Triplet {
        int col;
        std::complex<double> val;
    };
    std::vector<std::vector<Triplet>> rows;
    std::vector<RowLabel> row_labels;

    std::vector<int> target(static_cast<size_t>(r));
    for_each_cell(scan.lo, scan.hi, [&](std::span<const int> c) {
        const std::vector<int> cell(c.begin(), c.end());
        for (int e = 0; e < fw.edge_count(); ++e) {
            const EdgeSpec& ed = fw.motif().edges[static_cast<size_t>(e)];
            for (int i = 0; i < r; ++i)
                target[static_cast<size_t>(i)] =
                    cell[static_cast<size_t>(i)] + ed.delta[static_cast<size_t>(i)];

            std::vector<int> wrapped_target = target;
            std::complex<double> factor(1.0, 0.0);
            bool include = false;
            switch (bc.kind) {
                case BoundaryCondition::Kind::Free:
                    include = box.contains(cell) && box.contains(target);
                    break;
                case BoundaryCondition::Kind::FixedBoundary:
                    include = interior.contains(cell) || interior.contains(target);
                    // With ring_width >= max offset both endpoints stay in
                    // the box, so pinning (column -1) is the only effect.
                    break;
                case BoundaryCondition::Kind::Periodic:
                case BoundaryCondition::Kind::PhasePeriodic: {
                    include = true;
                    for (int i = 0; i < r; ++i) {
                        int t = target[static_cast<size_t>(i)];
                        int q = t >= 0 ? t / bc.n : -((-t + bc.n - 1) / bc.n);
                        wrapped_target[static_cast<size_t>(i)] = t - q * bc.n;
                        if (bc.kind == BoundaryCondition::Kind::PhasePeriodic && q != 0)
                            factor *= LaurentPoly::int_pow(bc.omega[static_cast<size_t>(i)], q);
                    }
                    break;
                }
            }
            if (!include) continue;

            const std::vector<double> v = to_double_vec(fw.edge_vector(e));
            std::vector<Triplet> row;
            for (int s = 0; s < dim; ++s) {
                if (v[static_cast<size_t>(s)] == 0.0) continue;
                if (const int ca = column_of(ed.kappa, cell, s); ca >= 0)
                    row.push_back({ca, std::complex<double>(v[static_cast<size_t>(s)], 0.0)});
                if (const int cb = column_of(ed.tau, wrapped_target, s); cb >= 0)
                    row.push_back({cb, -factor * v[static_cast<size_t>(s)]});
            }
            rows.push_back(std::move(row));
            row_labels.push_back({e, cell});
        }
    });

    out.mat = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows.size()), ncols);
    for (size_t i = 0; i < rows.size(); ++i)
        for (const Triplet& t : rows[i])
            out.mat(static_cast<Eigen::Index>(i), t.col) += t.val;
    out.row_labels = std::move(row_labels);
    return out;
}

Eigen::VectorXcd VelocityField::at(int kappa, std::span<const int> cell, int dim) const {
    auto it = values_.find(Key(kappa, std::vector<int>(cell.begin(), cell.end())));
    if (it == values_.end()) return Eigen::VectorXcd::Zero(dim);
    return it->second;
}

FlexCheck is_infinitesimal_flex(const CrystalFramework& fw, const VelocityField& u, double tol,
                                MissingVertexPolicy policy) {
    const int r = fw.rank();
    const int dim = fw.dim();
    std::set<std::pair<int, std::vector<int>>> instances;  // (edge, origin cell)
    for (const auto& [key, vel] : u.values()) {
        (void)vel;
        const auto& [kappa, cell] = key;
        for (int e = 0; e < fw.edge_count(); ++e) {
            const EdgeSpec& ed = fw.motif().edges[static_cast<size_t>(e)];
            if (ed.kappa == kappa) instances.emplace(e, cell);
            if (ed.tau == kappa) {
                std::vector<int> origin(static_cast<size_t>(r));
                for (int i = 0; i < r; ++i)
                    origin[static_cast<size_t>(i)] =
                        cell[static_cast<size_t>(i)] - ed.delta[static_cast<size_t>(i)];
                instances.emplace(e, std::move(origin));
            }
        }
    }
    double max_residual = 0.0;
    std::vector<int> target(static_cast<size_t>(r));
    for (const auto& [e, cell] : instances) {
        const EdgeSpec& ed = fw.motif().edges[static_cast<size_t>(e)];
        for (int i = 0; i < r; ++i)
            target[static_cast<size_t>(i)] =
                cell[static_cast<size_t>(i)] + ed.delta[static_cast<size_t>(i)];
        if (policy == MissingVertexPolicy::WindowRestriction &&
            (!u.defined(ed.kappa, cell) || !u.defined(ed.tau, target)))
            continue;
        const std::vector<double> v = to_double_vec(fw.edge_vector(e));
        const Eigen::VectorXcd ua = u.at(ed.kappa, cell, dim);
        const Eigen::VectorXcd ub = u.at(ed.tau, target, dim);
        std::complex<double> res(0.0, 0.0);
        for (int s = 0; s < dim; ++s) res += v[static_cast<size_t>(s)] * (ua(s) - ub(s));
        max_residual = std::max(max_residual, std::abs(res));
    }
    return {max_residual <= tol, max_residual};
}

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m) {
    if (m.rows() == 0 || m.cols() == 0) return Eigen::VectorXd();
    if (std::max(m.rows(), m.cols()) >= 32) {
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
        return svd.singularValues();
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues();
}

Eigen::VectorXcd canonicalize_phase(Eigen::VectorXcd v) {
    std::complex<double> s(0.0, 0.0);
    for (Eigen::Index i = 0; i < v.size(); ++i) s += v(i) * v(i);
    if (std::abs(s) > 1e-12) v *= std::exp(std::complex<double>(0.0, -0.5 * std::arg(s)));
    Eigen::Index dominant = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (std::abs(v(i)) > best + 1e-12) {
            best = std::abs(v(i));
            dominant = i;
        }
    const std::complex<double> d = v(dominant);
    if (d.real() < 0 || (d.real() == 0 && d.imag() < 0)) v = -v;
    return v;
}

std::vector<Eigen::VectorXcd> flex_space(const PatchRigidityMatrix& m, double tol) {
    std::vector<Eigen::VectorXcd> basis;
    const Eigen::Index n = m.mat.cols();
    if (n == 0) return basis;
    if (m.mat.rows() == 0 || m.mat.norm() == 0.0) {
        for (Eigen::Index i = 0; i < n; ++i) {
            Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
            e(i) = 1.0;
            basis.push_back(std::move(e));
        }
        return basis;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m.mat, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    const Eigen::Index nsv = sv.size();
    for (Eigen::Index i = 0; i < n; ++i) {
        const double s = i < nsv ? sv(i) : 0.0;
        if (s <= tol * smax) basis.push_back(canonicalize_phase(svd.matrixV().col(i)));
    }
    return basis;
}

std::optional<VelocityField> local_flex_search(const CrystalFramework& fw, const Box& box,
                                               double tol) {
    const int w = std::max(1, fw.max_edge_offset());
    for (int i = 0; i < box.rank(); ++i)
        if (box.hi[static_cast<size_t>(i)] - box.lo[static_cast<size_t>(i)] <= 2 * w)
            throw ValidationError("box too small: needs extent > twice the maximal edge offset");
    const PatchRigidityMatrix m =
        patch_rigidity_matrix(fw, box, BoundaryCondition::fixed_boundary(w));
    const auto kernel = flex_space(m, tol);
    if (kernel.empty()) return std::nullopt;
    const Eigen::VectorXcd& vec = kernel.back();  // the most-null direction
    VelocityField field;
    const int dim = fw.dim();
    for (size_t i = 0; i < m.col_labels.size(); i += static_cast<size_t>(dim)) {
        const ColumnLabel& label = m.col_labels[i];
        Eigen::VectorXcd v(dim);
        bool nonzero = false;
        for (int s = 0; s < dim; ++s) {
            v(s) = vec(static_cast<Eigen::Index>(i) + s);
            if (std::abs(v(s)) > 1e-14) nonzero = true;
        }
        if (nonzero) field.set(label.kappa, label.cell, std::move(v));
    }
    return field;
}

double wave_motion_defect(const CrystalFramework& fw,
                          std::span<const std::complex<double>> omega,
                          const Eigen::VectorXcd& u, double alpha, double T, const Box& patch,
                          double eps) {
    const int r = fw.rank();
    const int dim = fw.dim();
    if (static_cast<int>(omega.size()) != r) throw ValidationError("phase has wrong dimension");
    for (const auto& o : omega)
        if (std::abs(std::abs(o) - 1.0) > 1e-9)
            throw ValidationError("phase components must lie on the unit circle");
    if (alpha <= 0) throw ValidationError("alpha must be positive");
    if (u.size() != static_cast<Eigen::Index>(dim * fw.vertex_count()))
        throw ValidationError("velocity vector has wrong dimension");

    constexpr int kSamples = 64;
    double max_defect = 0.0;

    std::vector<int> target(static_cast<size_t>(r));
    for_each_cell(patch.lo, patch.hi, [&](std::span<const int> c) {
        for (int e = 0; e < fw.edge_count(); ++e) {
            const EdgeSpec& ed = fw.motif().edges[static_cast<size_t>(e)];
            for (int i = 0; i < r; ++i)
                target[static_cast<size_t>(i)] = c[i] + ed.delta[static_cast<size_t>(i)];

            // Rest separation of the placed endpoints equals the exact edge
            // vector for every instance.
            const std::vector<double> v = to_double_vec(fw.edge_vector(e));

            std::complex<double> wa(1.0, 0.0), wb(1.0, 0.0);
            for (int i = 0; i < r; ++i) {
                wa *= LaurentPoly::int_pow(omega[static_cast<size_t>(i)], c[i]);
                wb *= LaurentPoly::int_pow(omega[static_cast<size_t>(i)],
                                           target[static_cast<size_t>(i)]);
            }
            // Complex displacement difference per coordinate; identically
            // zero for a rigid translation, which keeps its defect exactly 0.
            std::vector<std::complex<double>> du(static_cast<size_t>(dim));
            bool moving = false;
            for (int s = 0; s < dim; ++s) {
                du[static_cast<size_t>(s)] = u(ed.kappa * dim + s) * wa - u(ed.tau * dim + s) * wb;
                if (du[static_cast<size_t>(s)] != std::complex<double>(0.0, 0.0)) moving = true;
            }
            if (!moving) continue;

            double len0 = 0.0;
            for (int t = 0; t < kSamples; ++t) {
                const double time = T * static_cast<double>(t) / (kSamples - 1);
                const std::complex<double> ph = std::exp(std::complex<double>(0.0, alpha * time));
                double len2 = 0.0;
                for (int s = 0; s < dim; ++s) {
                    const double q = v[static_cast<size_t>(s)] +
                                     eps * std::real(du[static_cast<size_t>(s)] * ph);
                    len2 += q * q;
                }
                const double len = std::sqrt(len2);
                if (t == 0)
                    len0 = len;
                else
                    max_defect = std::max(max_defect, std::abs(len - len0));
            }
        }
    });
    return max_defect;
}

bool fourier_block_check(const CrystalFramework& fw, int n, double tol) {
    if (n < 1) throw ValidationError("fourier block check needs N >= 1");
    const Box box = Box::cube(fw.rank(), 0, n);
    const PatchRigidityMatrix patch =
        patch_rigidity_matrix(fw, box, BoundaryCondition::periodic(n));
    const Eigen::VectorXd sv = singular_values(patch.mat);
    std::vector<double> patch_sv(sv.data(), sv.data() + sv.size());
    std::sort(patch_sv.begin(), patch_sv.end());

    const SymbolMatrix phi = build_symbol(fw);
    std::vector<double> block_sv;
    const std::vector<int> lo(static_cast<size_t>(fw.rank()), 0);
    const std::vector<int> hi(static_cast<size_t>(fw.rank()), n);
    for_each_cell(lo, hi, [&](std::span<const int> j) {
        std::vector<std::complex<double>> conj_omega(static_cast<size_t>(fw.rank()));
        for (int i = 0; i < fw.rank(); ++i) {
            const double t = 2.0 * M_PI * j[i] / n;
            conj_omega[static_cast<size_t>(i)] = {std::cos(t), -std::sin(t)};
        }
        const Eigen::VectorXd s = singular_values(evaluate_symbol(phi, conj_omega));
        block_sv.insert(block_sv.end(), s.data(), s.data() + s.size());
    });
    std::sort(block_sv.begin(), block_sv.end());

    if (patch_sv.size() != block_sv.size()) return false;
    for (size_t i = 0; i < patch_sv.size(); ++i)
        if (std::abs(patch_sv[i] - block_sv[i]) > tol) return false;
    return true;
}

} // namespace rumkit
