#include "rumkit/check.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "rumkit/framework_io.hpp"
#include "rumkit/polynomial.hpp"
#include "rumkit/rigidity.hpp"
#include "rumkit/symbol.hpp"

namespace rumkit {

namespace {

using Complex = std::complex<double>;

std::vector<Complex> random_phase(std::mt19937_64& rng, int rank) {
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    std::vector<Complex> omega(static_cast<size_t>(rank));
    for (auto& o : omega) {
        const double t = 2.0 * M_PI * dist(rng);
        o = {std::cos(t), std::sin(t)};
    }
    return omega;
}

std::string placed_point_key(const CrystalFramework& fw, int kappa, std::span<const int> cell) {
    const ExactVec p = fw.place_vertex(kappa, cell);
    std::string s;
    for (const auto& c : p) s += c.to_string() + ";";
    return s;
}

} // namespace

int run_invariant_suite(const CrystalFramework& fw, std::ostream& out, const CheckOptions& opts) {
    int failures = 0;
    std::mt19937_64 rng(opts.seed);

    auto run = [&](const std::string& name, const std::function<bool(std::string&)>& fn) {
        std::string detail;
        bool ok = false;
        try {
            ok = fn(detail);
        } catch (const std::exception& e) {
            detail = e.what();
        }
        if (!ok) ++failures;
        if (opts.verbose || !ok)
            out << (ok ? "ok   " : "FAIL ") << name << (detail.empty() ? "" : ": " + detail)
                << "\n";
    };

    const SymbolMatrix phi = build_symbol(fw);
    const int dim = fw.dim();
    const int rank = fw.rank();

    run("file round trip", [&](std::string&) {
        const CrystalFramework back = parse_framework(serialize_framework(fw));
        if (back.dim() != fw.dim() || back.rank() != fw.rank()) return false;
        if (back.motif().vertices != fw.motif().vertices) return false;
        if (back.motif().edges != fw.motif().edges) return false;
        return back.translations().periods() == fw.translations().periods();
    });

    run("placement additivity", [&](std::string&) {
        std::uniform_int_distribution<int> d(-3, 3);
        for (int trial = 0; trial < 20; ++trial) {
            const int kappa = static_cast<int>(rng() % static_cast<unsigned long>(fw.vertex_count()));
            std::vector<int> k1(static_cast<size_t>(rank)), k2(static_cast<size_t>(rank)),
                sum(static_cast<size_t>(rank));
            for (int i = 0; i < rank; ++i) {
                k1[static_cast<size_t>(i)] = d(rng);
                k2[static_cast<size_t>(i)] = d(rng);
                sum[static_cast<size_t>(i)] = k1[static_cast<size_t>(i)] + k2[static_cast<size_t>(i)];
            }
            ExactVec lhs = fw.place_vertex(kappa, sum);
            ExactVec rhs = fw.place_vertex(kappa, k1);
            const ExactVec shift = fw.place_vertex(kappa, k2) - fw.motif().vertices[static_cast<size_t>(kappa)];
            rhs = rhs + shift;
            for (size_t i = 0; i < lhs.size(); ++i)
                if (lhs[i] != rhs[i]) return false;
        }
        return true;
    });

    run("supercell preserves placed sets", [&](std::string&) {
        std::vector<int> m(static_cast<size_t>(rank), 1);
        m[0] = 2;
        const CrystalFramework super = supercell(fw, m);
        std::set<std::string> base_pts, super_pts;
        std::set<std::pair<std::string, std::string>> base_edges, super_edges;
        const std::vector<int> lo(static_cast<size_t>(rank), 0);
        std::vector<int> hi_base(static_cast<size_t>(rank), 1), hi_super(static_cast<size_t>(rank), 1);
        hi_base[0] = 2;  // one supercell covers two base cells along dim 0
        auto edge_key = [](std::string a, std::string b) {
            return a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
        };
        for_each_cell(lo, hi_base, [&](std::span<const int> c) {
            for (int k = 0; k < fw.vertex_count(); ++k) base_pts.insert(placed_point_key(fw, k, c));
            for (int e = 0; e < fw.edge_count(); ++e) {
                const EdgeSpec& ed = fw.motif().edges[static_cast<size_t>(e)];
                std::vector<int> t(c.begin(), c.end());
                for (int i = 0; i < rank; ++i) t[static_cast<size_t>(i)] += ed.delta[static_cast<size_t>(i)];
                base_edges.insert(edge_key(placed_point_key(fw, ed.kappa, c), placed_point_key(fw, ed.tau, t)));
            }
        });
        for_each_cell(lo, hi_super, [&](std::span<const int> c) {
            for (int k = 0; k < super.vertex_count(); ++k)
                super_pts.insert(placed_point_key(super, k, c));
            for (int e = 0; e < super.edge_count(); ++e) {
                const EdgeSpec& ed = super.motif().edges[static_cast<size_t>(e)];
                std::vector<int> t(c.begin(), c.end());
                for (int i = 0; i < rank; ++i) t[static_cast<size_t>(i)] += ed.delta[static_cast<size_t>(i)];
                super_edges.insert(edge_key(placed_point_key(super, ed.kappa, c),
                                            placed_point_key(super, ed.tau, t)));
            }
        });
        return base_pts == super_pts && base_edges == super_edges;
    });

    run("translation annihilation (exact)", [&](std::string&) {
        for (int sigma = 0; sigma < dim; ++sigma) {
            for (int r = 0; r < phi.rows(); ++r) {
                ExactScalar sum;
                for (int k = 0; k < phi.nverts; ++k)
                    sum += phi.mat.at(r, phi.column_of(k, sigma)).coefficient_sum();
                if (!sum.is_zero()) return false;
            }
        }
        return true;
    });

    run("conjugation symmetry of singular values", [&](std::string& detail) {
        for (int trial = 0; trial < 5; ++trial) {
            const auto omega = random_phase(rng, rank);
            std::vector<Complex> conj_omega(omega.size());
            for (size_t i = 0; i < omega.size(); ++i) conj_omega[i] = std::conj(omega[i]);
            const Eigen::VectorXd a = singular_values(evaluate_symbol(phi, omega));
            const Eigen::VectorXd b = singular_values(evaluate_symbol(phi, conj_omega));
            if ((a - b).cwiseAbs().maxCoeff() > 1e-12) {
                detail = "sigma mismatch " + std::to_string((a - b).cwiseAbs().maxCoeff());
                return false;
            }
        }
        return true;
    });

    run("phase restriction identity (20 random pairs)", [&](std::string& detail) {
        std::normal_distribution<double> g(0.0, 1.0);
        for (int trial = 0; trial < 20; ++trial) {
            const auto omega = random_phase(rng, rank);
            std::vector<Complex> conj_omega(omega.size());
            for (size_t i = 0; i < omega.size(); ++i) conj_omega[i] = std::conj(omega[i]);
            Eigen::VectorXcd u(dim * fw.vertex_count());
            for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = Complex(g(rng), g(rng));
            const Eigen::MatrixXcd m = evaluate_symbol(phi, conj_omega);
            const Eigen::VectorXcd via_symbol = m * u;
            for (int e = 0; e < fw.edge_count(); ++e) {
                const EdgeSpec& ed = fw.motif().edges[static_cast<size_t>(e)];
                const ExactVec v = fw.edge_vector(e);
                Complex factor(1.0, 0.0);
                for (int i = 0; i < rank; ++i)
                    factor *= LaurentPoly::int_pow(omega[static_cast<size_t>(i)],
                                                   ed.delta[static_cast<size_t>(i)]);
                Complex direct(0.0, 0.0);
                for (int s = 0; s < dim; ++s) {
                    const double vs = v[static_cast<size_t>(s)].to_double();
                    direct += vs * u(ed.kappa * dim + s) - vs * factor * u(ed.tau * dim + s);
                }
                const double scale = std::max(1.0, std::abs(via_symbol(e)));
                if (std::abs(direct - via_symbol(e)) > 1e-12 * scale) {
                    detail = "edge " + std::to_string(e + 1);
                    return false;
                }
            }
        }
        return true;
    });

    run("symbol matches phase-periodic patch (N=1)", [&](std::string&) {
        for (int trial = 0; trial < 5; ++trial) {
            const auto omega = random_phase(rng, rank);
            std::vector<Complex> conj_omega(omega.size());
            for (size_t i = 0; i < omega.size(); ++i) conj_omega[i] = std::conj(omega[i]);
            const PatchRigidityMatrix patch = patch_rigidity_matrix(
                fw, Box::cube(rank, 0, 1), BoundaryCondition::phase_periodic(omega, 1));
            const Eigen::MatrixXcd direct = evaluate_symbol(phi, conj_omega);
            if ((patch.mat - direct).cwiseAbs().maxCoeff() > 1e-12) return false;
        }
        return true;
    });

    run("fourier block diagonalization (N=1,2)", [&](std::string&) {
        return fourier_block_check(fw, 1, 1e-9) && fourier_block_check(fw, 2, 1e-9);
    });

    run("float backend agrees at 100 random points", [&](std::string& detail) {
        const FloatLaurentMatrix fphi = to_float(phi.mat);
        for (int trial = 0; trial < 100; ++trial) {
            const auto omega = random_phase(rng, rank);
            const Eigen::MatrixXcd a = evaluate_laurent_matrix(phi.mat, omega);
            const Eigen::MatrixXcd b = evaluate_laurent_matrix(fphi, omega);
            const double scale = std::max(1.0, a.norm());
            if ((a - b).norm() > 1e-9 * scale) {
                detail = "difference " + std::to_string((a - b).norm());
                return false;
            }
        }
        return true;
    });

    run("sigma field symmetric under j -> N-j", [&](std::string&) {
        const int n = 8;
        const SpectrumGrid grid = sigma_min_field(fw, n, SpectrumMode::KernelMode);
        const std::vector<int> lo(static_cast<size_t>(rank), 0);
        const std::vector<int> hi(static_cast<size_t>(rank), n);
        bool ok = true;
        for_each_cell(lo, hi, [&](std::span<const int> j) {
            std::vector<int> mirrored(j.size());
            for (size_t i = 0; i < j.size(); ++i) mirrored[i] = (n - j[i]) % n;
            const double a = grid.sigma[static_cast<size_t>(grid.index_of(j))];
            const double b = grid.sigma[static_cast<size_t>(grid.index_of(mirrored))];
            if (std::abs(a - b) > 1e-12) ok = false;
        });
        return ok;
    });

    run("translation phase is always in the kernel report", [&](std::string&) {
        const SpectrumGrid grid = sigma_min_field(fw, 4, SpectrumMode::KernelMode);
        const SpectrumReport report = rum_points(grid, 1e-8);
        for (const auto& p : report.points) {
            if (std::all_of(p.indices.begin(), p.indices.end(), [](int x) { return x == 0; }))
                return true;
        }
        return false;
    });

    run("wave motion of a translation has zero defect", [&](std::string&) {
        Eigen::VectorXcd u(dim * fw.vertex_count());
        for (int k = 0; k < fw.vertex_count(); ++k)
            for (int s = 0; s < dim; ++s) u(k * dim + s) = s == 0 ? 1.0 : 0.0;
        const std::vector<Complex> ones(static_cast<size_t>(rank), Complex(1.0, 0.0));
        const double defect =
            wave_motion_defect(fw, ones, u, 0.05, 1.0, Box::cube(rank, 0, 2), 1.0);
        return defect == 0.0;
    });

    run("supercell spectrum forward inclusion", [&](std::string& detail) {
        std::vector<int> m(static_cast<size_t>(rank), 1);
        m[0] = 2;
        SupercellSpectrumInfo info;
        const bool ok = supercell_spectrum_check(fw, m, 8, 1e-8, &info);
        std::ostringstream os;
        os << info.forward_checked << " points, " << info.reverse_unmatched
           << " supercell-only points";
        detail = os.str();
        return ok;
    });

    if (fw.maxwell_equilibrium()) {
        run("row and kernel spectra coincide (Maxwell-square)", [&](std::string&) {
            const SpectrumGrid rows = sigma_min_field(fw, 8, SpectrumMode::RowDeficiency);
            const SpectrumGrid kernel = sigma_min_field(fw, 8, SpectrumMode::KernelMode);
            const auto a = rum_points(rows, 1e-8);
            const auto b = rum_points(kernel, 1e-8);
            if (a.points.size() != b.points.size()) return false;
            for (size_t i = 0; i < a.points.size(); ++i)
                if (a.points[i].indices != b.points[i].indices) return false;
            return true;
        });

        run("exact and probabilistic zero tests agree", [&](std::string&) {
            const LaurentPoly det = determinant(phi);
            return det.is_zero() == is_identically_zero_probabilistic(phi.mat, 100, opts.seed);
        });

        run("local flex, zero determinant, square-summable flex align", [&](std::string& detail) {
            const int w = std::max(1, fw.max_edge_offset());
            const Box box = Box::cube(rank, 0, 2 * w + 2);
            const bool has_local = local_flex_search(fw, box).has_value();
            const bool det_zero = determinant(phi).is_zero();
            const bool summable = square_summable_flex_exists(fw, opts.seed).exists;
            std::ostringstream os;
            os << "local=" << has_local << " detzero=" << det_zero << " l2=" << summable;
            detail = os.str();
            return has_local == det_zero && det_zero == summable;
        });
    }

    return failures;
}

} // namespace rumkit
