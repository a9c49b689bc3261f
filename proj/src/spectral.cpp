#include "distlab/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace distlab {

namespace {

std::uint64_t checked_graph_size(const FieldSpec& f, std::size_t d) {
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < d + 1; ++i) {
        if (n > kGraphBound / f.q())
            throw TooLargeGraph("q^(d+1) exceeds the dense spectral bound " +
                                std::to_string(kGraphBound));
        n *= f.q();
    }
    return n;
}

}  // namespace

SumProductGraph SumProductGraph::build(FieldPtr field, std::size_t d) {
    SumProductGraph g;
    g.field_ = std::move(field);
    g.d_ = d;
    g.n_ = checked_graph_size(*g.field_, d);
    const FieldSpec& f = *g.field_;
    const std::uint64_t q = f.q();
    const std::uint64_t points = g.n_ / q;  // q^d
    g.degree_ = points;
    g.adj_.assign(g.n_ * g.n_, 0);
    g.words_ = (g.n_ + 63) / 64;
    g.bits_.assign(g.n_ * g.words_, 0);

    // All of F_q^d in index order.
    std::vector<std::vector<FieldElement>> pts(points);
    for (std::uint64_t idx = 0; idx < points; ++idx) {
        auto& coords = pts[idx];
        coords.resize(d);
        std::uint64_t t = idx;
        for (std::size_t j = d; j-- > 0;) {
            coords[j] = f.from_index(t % q);
            t /= q;
        }
    }

    #pragma omp parallel for schedule(static)
    for (std::int64_t u = 0; u < static_cast<std::int64_t>(g.n_); ++u) {
        const std::uint64_t a_idx = static_cast<std::uint64_t>(u) / q;
        const FieldElement b = f.from_index(static_cast<std::uint64_t>(u) % q);
        const auto& a = pts[a_idx];
        std::uint8_t* row = &g.adj_[static_cast<std::uint64_t>(u) * g.n_];
        std::uint64_t* rowbits = &g.bits_[static_cast<std::uint64_t>(u) * g.words_];
        for (std::uint64_t c_idx = 0; c_idx < points; ++c_idx) {
            const auto& c = pts[c_idx];
            FieldElement dot = f.zero();
            for (std::size_t j = 0; j < d; ++j) dot = f.add(dot, f.mul(a[j], c[j]));
            const std::uint64_t v = c_idx * q + f.sub(dot, b).index();
            row[v] = 1;
            rowbits[v / 64] |= std::uint64_t(1) << (v % 64);
        }
    }

    // Degree invariant: one neighbour for each c, so every row sums to q^d.
    for (std::uint64_t u = 0; u < g.n_; ++u)
        if (g.row_sum(u) != g.degree_)
            throw Error("sum-product graph row " + std::to_string(u) + " has degree " +
                        std::to_string(g.row_sum(u)));
    return g;
}

std::uint64_t SumProductGraph::vertex_index(const Point& a, const FieldElement& b) const {
    if (a.dim() != d_) throw DimensionMismatch("vertex point must have the graph dimension");
    std::uint64_t idx = 0;
    for (std::size_t j = 0; j < d_; ++j) idx = idx * field_->q() + a.coords[j].index();
    return idx * field_->q() + b.index();
}

std::uint64_t SumProductGraph::row_sum(std::uint64_t u) const {
    std::uint64_t s = 0;
    for (std::size_t w = 0; w < words_; ++w) s += std::popcount(bits_[u * words_ + w]);
    return s;
}

std::uint64_t SumProductGraph::loop_count() const {
    std::uint64_t s = 0;
    for (std::uint64_t u = 0; u < n_; ++u) s += adj_[u * n_ + u];
    return s;
}

namespace {

Spectrum spectrum_impl(const SumProductGraph& g, bool parallel) {
    const std::uint64_t n = g.n();
    std::vector<double> a(n * n);
    for (std::uint64_t u = 0; u < n; ++u)
        for (std::uint64_t v = 0; v < n; ++v) a[u * n + v] = g.adjacent(u, v) ? 1.0 : 0.0;
    const double tol = 1e-10 * static_cast<double>(g.degree());
    JacobiResult jr = parallel ? jacobi_eigenvalues(std::move(a), n, tol, 50)
                               : jacobi_eigenvalues_serial(std::move(a), n, tol, 50);
    Spectrum s;
    s.eigenvalues = std::move(jr.eigenvalues);
    s.gamma1 = s.eigenvalues.front();
    s.gamma = std::max(s.eigenvalues.size() > 1 ? s.eigenvalues[1] : 0.0, -s.eigenvalues.back());
    s.sweeps = jr.sweeps;
    return s;
}

}  // namespace

Spectrum spectrum(const SumProductGraph& g) { return spectrum_impl(g, true); }
Spectrum spectrum_serial(const SumProductGraph& g) { return spectrum_impl(g, false); }

nlohmann::ordered_json spectral_report(const SumProductGraph& g, const Spectrum& s) {
    const double deg = static_cast<double>(g.degree());
    const double bound = std::sqrt(2.0 * deg);
    nlohmann::ordered_json j;
    j["q"] = g.field().q();
    j["d"] = g.d();
    j["n"] = g.n();
    j["degree"] = g.degree();
    j["gamma1"] = s.gamma1;
    j["gamma"] = s.gamma;
    j["bound_sqrt_2qd"] = bound;
    j["certified"] = std::abs(s.gamma1 - deg) <= 1e-8 * deg && s.gamma <= bound + 1e-6;
    return j;
}

void VertexMultiset::add(std::uint64_t vertex, const Int& count) {
    if (count < 0) throw Error("multiplicities must be nonnegative");
    if (count == 0) return;
    Int& slot = mult_[vertex];
    sum_sq_ += (slot + count) * (slot + count) - slot * slot;
    sum_ += count;
    slot += count;
    if (slot > 1) zero_one_ = false;
}

std::vector<std::uint64_t> VertexMultiset::support() const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t v = 0; v < mult_.size(); ++v)
        if (mult_[v] > 0) out.push_back(v);
    return out;
}

namespace {

void check_same_graph(const SumProductGraph& g, const VertexMultiset& B,
                      const VertexMultiset& C) {
    if (B.graph() != &g || C.graph() != &g) throw GraphMismatch();
}

}  // namespace

Int edges_between_multisets(const SumProductGraph& g, const VertexMultiset& B,
                            const VertexMultiset& C) {
    check_same_graph(g, B, C);
    const auto supp_b = B.support();

    if (B.zero_one() && C.zero_one()) {
        // 0/1 multisets: the row-mask intersection popcount is the edge count.
        const std::size_t words = g.words_per_row();
        std::vector<std::uint64_t> mask(words, 0);
        for (std::uint64_t v : C.support()) mask[v / 64] |= std::uint64_t(1) << (v % 64);
        std::uint64_t total = 0;
        #pragma omp parallel for schedule(static) reduction(+ : total)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(supp_b.size()); ++i) {
            const std::uint64_t* row = g.row_bits(supp_b[static_cast<std::size_t>(i)]);
            std::uint64_t acc = 0;
            for (std::size_t w = 0; w < words; ++w) acc += std::popcount(row[w] & mask[w]);
            total += acc;
        }
        return Int(total);
    }

    const auto supp_c = C.support();
    Int total = 0;
    #pragma omp parallel
    {
        Int local = 0;
        #pragma omp for schedule(static) nowait
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(supp_b.size()); ++i) {
            const std::uint64_t u = supp_b[static_cast<std::size_t>(i)];
            Int row_acc = 0;
            for (std::uint64_t v : supp_c)
                if (g.adjacent(u, v)) row_acc += C.at(v);
            local += B.at(u) * row_acc;
        }
        #pragma omp critical
        total += local;
    }
    return total;
}

namespace serial {

Int edges_between_multisets(const SumProductGraph& g, const VertexMultiset& B,
                            const VertexMultiset& C) {
    check_same_graph(g, B, C);
    Int total = 0;
    for (std::uint64_t u = 0; u < g.n(); ++u) {
        if (B.at(u) == 0) continue;
        for (std::uint64_t v = 0; v < g.n(); ++v)
            if (g.adjacent(u, v)) total += B.at(u) * C.at(v);
    }
    return total;
}

}  // namespace serial

MixingReport mixing_check(const SumProductGraph& g, double gamma_measured,
                          const VertexMultiset& B, const VertexMultiset& C) {
    check_same_graph(g, B, C);
    MixingReport r;
    r.edges = edges_between_multisets(g, B, C);
    r.main_term = Rat(Int(g.degree()) * B.total() * C.total(), Int(g.n()));
    r.deviation = rat_abs(Rat(r.edges) - r.main_term);
    const double l2 = std::sqrt(to_double(B.total_squares())) *
                      std::sqrt(to_double(C.total_squares()));
    r.rhs_measured = gamma_measured * l2;
    r.rhs_lemma = std::sqrt(2.0 * static_cast<double>(g.degree())) * l2;
    r.holds = to_double(r.deviation) <= r.rhs_measured * (1.0 + 1e-6);
    return r;
}

EnergyMultisets energy_multisets(const SumProductGraph& g, const PointSet& E, int k) {
    if (k < 2) throw InvalidK(k, 2);
    if (!E.field().same_as(g.field())) throw FieldMismatch();
    if (g.d() != 2 * E.dim())
        throw GraphMismatch("embedding needs the sum-product graph on F_q^(2d) x F_q");

    const FieldSpec& f = E.field();
    const std::uint64_t q = f.q();
    const std::uint64_t ne = E.size();
    {
        Int tuples = int_pow(Int(ne), 2 * static_cast<unsigned>(k));
        if (tuples > Int(kAmbientGuard))
            throw TooLarge("|E|^(2k) = " + to_decimal(tuples) + " tuples exceed the guard");
    }

    // Per-point data: norms, point indices of x and of -2x in F_q^d, and the
    // full ordered pair-distance table.
    const auto& pts = E.points();
    const FieldElement minus_two = f.neg(f.from_integer(2));
    std::vector<std::uint64_t> nrm(ne), pidx(ne), pidx_scaled(ne);
    for (std::uint64_t i = 0; i < ne; ++i) {
        nrm[i] = norm(pts[i]).index();
        std::uint64_t plain = 0, scaled = 0;
        for (std::size_t j = 0; j < E.dim(); ++j) {
            plain = plain * q + pts[i].coords[j].index();
            scaled = scaled * q + f.mul(minus_two, pts[i].coords[j]).index();
        }
        pidx[i] = plain;
        pidx_scaled[i] = scaled;
    }
    std::vector<std::uint64_t> pd(ne * ne);
    for (std::uint64_t i = 0; i < ne; ++i)
        for (std::uint64_t j = 0; j < ne; ++j) pd[i * ne + j] = distance(pts[i], pts[j]).index();

    std::uint64_t points_half = 1;  // |F_q^d|
    for (std::size_t j = 0; j < E.dim(); ++j) points_half *= q;

    EnergyMultisets out{VertexMultiset(g), VertexMultiset(g)};

    // Walks the remaining pair slots of a tuple: neg_slots distances are
    // subtracted from the running b-coordinate, pos_slots added. One tuple
    // per leaf, contributing multiplicity 1 at its vertex.
    auto enum_pairs = [&](auto&& self, VertexMultiset& target, std::uint64_t a_part,
                          std::uint64_t b_idx, int neg_slots, int pos_slots) -> void {
        if (neg_slots == 0 && pos_slots == 0) {
            target.add(a_part * q + b_idx, 1);
            return;
        }
        const bool negative = neg_slots > 0;
        for (std::uint64_t pair = 0; pair < ne * ne; ++pair) {
            const std::uint64_t dist = pd[pair];
            const std::uint64_t next =
                negative ? f.sub_index(b_idx, dist) : f.add_index(b_idx, dist);
            self(self, target, a_part, next, neg_slots - (negative ? 1 : 0),
                 pos_slots - (negative ? 0 : 1));
        }
    };

    for (std::uint64_t i1 = 0; i1 < ne; ++i1) {
        for (std::uint64_t i2 = 0; i2 < ne; ++i2) {
            const std::uint64_t base = f.sub_index(0, f.add_index(nrm[i1], nrm[i2]));
            // Left: (-2x1, -2x2 | -|x1|-|x2| - middle distances + one trailing).
            const std::uint64_t a_l = pidx_scaled[i1] * points_half + pidx_scaled[i2];
            enum_pairs(enum_pairs, out.left, a_l, base, k - 2, 1);
            // Right: (y1, y2 | -|y1|-|y2| + k-1 trailing distances).
            const std::uint64_t a_r = pidx[i1] * points_half + pidx[i2];
            enum_pairs(enum_pairs, out.right, a_r, base, 0, k - 1);
        }
    }
    return out;
}

}  // namespace distlab
