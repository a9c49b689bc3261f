#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "distlab/bigint.hpp"
#include "distlab/jacobi.hpp"
#include "distlab/pointset.hpp"

namespace distlab {

/// Dense spectral work is bounded at this many vertices.
inline constexpr std::uint64_t kGraphBound = 4096;

/// The sum-product graph on F_q^d x F_q: vertices (a, b), with (a, b) ~ (c, e)
/// iff a.c = b + e. The relation is symmetric, every vertex has exactly q^d
/// neighbours, and vertices with a.a = 2b carry a loop (kept as a single
/// diagonal 1 -- dropping loops would break regularity).
class SumProductGraph {
public:
    static SumProductGraph build(FieldPtr field, std::size_t d);

    const FieldSpec& field() const { return *field_; }
    const FieldPtr& field_ptr() const { return field_; }
    std::size_t d() const { return d_; }
    std::uint64_t n() const { return n_; }
    std::uint64_t degree() const { return degree_; }

    bool adjacent(std::uint64_t u, std::uint64_t v) const { return adj_[u * n_ + v] != 0; }

    /// Vertex position of (a, b): point index of a (base-q digits) times q,
    /// plus the element index of b.
    std::uint64_t vertex_index(const Point& a, const FieldElement& b) const;

    std::uint64_t row_sum(std::uint64_t u) const;
    std::uint64_t loop_count() const;

    std::size_t words_per_row() const { return words_; }
    const std::uint64_t* row_bits(std::uint64_t u) const { return &bits_[u * words_]; }

private:
    SumProductGraph() = default;

    FieldPtr field_;
    std::size_t d_ = 0;
    std::uint64_t n_ = 0;
    std::uint64_t degree_ = 0;
    std::vector<std::uint8_t> adj_;
    std::vector<std::uint64_t> bits_;
    std::size_t words_ = 0;
};

struct Spectrum {
    std::vector<double> eigenvalues;  // descending
    double gamma1 = 0.0;              // largest eigenvalue
    double gamma = 0.0;               // max(second largest, -smallest)
    int sweeps = 0;
};

/// Full spectrum of the adjacency matrix via Jacobi iteration, off-diagonal
/// Frobenius norm driven below 1e-10 * degree, at most 50 sweeps.
Spectrum spectrum(const SumProductGraph& g);

/// Same contract through the serial cyclic Jacobi.
Spectrum spectrum_serial(const SumProductGraph& g);

/// {q, d, n, degree, gamma1, gamma, bound_sqrt_2qd, certified}.
nlohmann::ordered_json spectral_report(const SumProductGraph& g, const Spectrum& s);

/// A multiset of graph vertices with exact multiplicities and cached first
/// and second moments. References the graph; does not own it.
class VertexMultiset {
public:
    explicit VertexMultiset(const SumProductGraph& g)
        : g_(&g), mult_(g.n()) {}

    const SumProductGraph* graph() const { return g_; }

    void add(std::uint64_t vertex, const Int& count);

    const Int& at(std::uint64_t vertex) const { return mult_[vertex]; }
    const Int& total() const { return sum_; }
    const Int& total_squares() const { return sum_sq_; }
    bool zero_one() const { return zero_one_; }

    std::vector<std::uint64_t> support() const;

private:
    const SumProductGraph* g_;
    std::vector<Int> mult_;
    Int sum_ = 0;
    Int sum_sq_ = 0;
    bool zero_one_ = true;
};

/// Ordered-sum edge count between multisets: sum over ordered vertex pairs
/// (u, v) of m_B(u) m_C(v) A(u, v); diagonal (loop) terms enter once per
/// ordered pair. Exact.
Int edges_between_multisets(const SumProductGraph& g, const VertexMultiset& B,
                            const VertexMultiset& C);

namespace serial {
Int edges_between_multisets(const SumProductGraph& g, const VertexMultiset& B,
                            const VertexMultiset& C);
}

struct MixingReport {
    Int edges;            // e_m(B, C)
    Rat main_term;        // degree * total(B) * total(C) / n
    Rat deviation;        // |edges - main_term|
    double rhs_measured;  // gamma_measured * sqrt(sum m_B^2) * sqrt(sum m_C^2)
    double rhs_lemma;     // sqrt(2 q^d) in place of gamma
    bool holds;           // deviation <= rhs_measured * (1 + 1e-6)
};

/// Expander mixing inequality instance with the measured second eigenvalue.
MixingReport mixing_check(const SumProductGraph& g, double gamma_measured,
                          const VertexMultiset& B, const VertexMultiset& C);

struct EnergyMultisets {
    VertexMultiset left;
    VertexMultiset right;
};

/// The two vertex multisets over SP_{q,2d} whose ordered edge count equals
/// the k-fold additive energy of E. Left entries come from tuples
/// (x1, x2, (x_i,y_i) for 3<=i<=k, (x_{k+1},y_{k+1})) mapped to
/// (-2x1, -2x2, -|x1|-|x2|-sum of middle distances + last distance); right
/// entries are the mirror construction on (y1, y2, trailing pairs). Both
/// multisets have total mass |E|^(2k). Requires k >= 2 and a graph built
/// for (q, 2d).
EnergyMultisets energy_multisets(const SumProductGraph& g, const PointSet& E, int k);

}  // namespace distlab
