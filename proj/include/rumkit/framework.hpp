#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rumkit/exact.hpp"

namespace rumkit {

/// Motif edge in canonical form: the first endpoint carries offset zero, so
/// the placed edge is [p_{kappa,0}, p_{tau,delta}]. Indices are 0-based in
/// the library; file format and CLI use 1-based.
struct EdgeSpec {
    int kappa = 0;
    int tau = 0;
    std::vector<int> delta;  // in Z^rank

    bool operator==(const EdgeSpec&) const = default;
};

/// The finite set pair (F_v, F_e): vertex positions in R^dim plus edges.
struct Motif {
    int dimension = 0;
    std::vector<ExactVec> vertices;
    std::vector<EdgeSpec> edges;
};

/// Period vectors a_1..a_rank as rows of a rank x dim matrix. rank <= dim;
/// rows must be linearly independent (exact Gram determinant check).
class TranslationGroup {
public:
    explicit TranslationGroup(std::vector<ExactVec> periods) : periods_(std::move(periods)) {}

    int rank() const { return static_cast<int>(periods_.size()); }
    const std::vector<ExactVec>& periods() const { return periods_; }
    const ExactVec& period(int i) const { return periods_.at(static_cast<size_t>(i)); }

private:
    std::vector<ExactVec> periods_;
};

/// Translationally periodic bar-joint framework: a motif together with its
/// translation group. Immutable once constructed; construction runs the full
/// validation (ranks, edge vectors, discreteness).
class CrystalFramework {
public:
    static CrystalFramework create(Motif motif, TranslationGroup translations);

    int dim() const { return motif_.dimension; }
    int rank() const { return translations_.rank(); }
    int vertex_count() const { return static_cast<int>(motif_.vertices.size()); }
    int edge_count() const { return static_cast<int>(motif_.edges.size()); }
    const Motif& motif() const { return motif_; }
    const TranslationGroup& translations() const { return translations_; }

    /// The shared surd radicand D (0 when all coordinates are rational).
    long framework_radicand() const { return radicand_; }

    /// p_{kappa,k} = p_{kappa,0} + sum_i k_i a_i, exact.
    ExactVec place_vertex(int kappa, std::span<const int> cell) const;

    /// v_e = p_{kappa,0} - p_{tau,delta}, exact.
    ExactVec edge_vector(int e) const;

    /// |F_e| = dim * |F_v|.
    bool maxwell_equilibrium() const {
        return edge_count() == dim() * vertex_count();
    }

    /// max over edges of the offset infinity norm.
    int max_edge_offset() const;

private:
    CrystalFramework(Motif motif, TranslationGroup translations, long radicand)
        : motif_(std::move(motif)), translations_(std::move(translations)), radicand_(radicand) {}

    Motif motif_;
    TranslationGroup translations_;
    long radicand_ = 0;
};

/// Convenience wrapper matching the construction operation name.
inline CrystalFramework new_framework(Motif motif, TranslationGroup translations) {
    return CrystalFramework::create(std::move(motif), std::move(translations));
}

/// Enlarged-cell framework: motif replicated over the box prod [0, m_i),
/// offsets reduced modulo m, periods diag(m) * A. Vertex (kappa, r) gets
/// index cell_rank(r) * |F_v| + kappa with cells in row-major order.
CrystalFramework supercell(const CrystalFramework& fw, const std::vector<int>& m);

/// Built-in geometries: strip, grid2d, kagome, kagome_net,
/// subdivided_grid_diag.
CrystalFramework make_generator(std::string_view name);
const std::vector<std::string>& generator_names();

/// Exact determinant of a square ExactScalar matrix (row vectors).
ExactScalar exact_determinant(const std::vector<ExactVec>& rows);

/// Iterate an integer box prod [lo_i, hi_i) in row-major order (first
/// coordinate slowest).
void for_each_cell(std::span<const int> lo, std::span<const int> hi,
                   const std::function<void(std::span<const int>)>& fn);

/// Total number of cells in the box, throwing on an empty interval.
long box_cell_count(std::span<const int> lo, std::span<const int> hi);

} // namespace rumkit
