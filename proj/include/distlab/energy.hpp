#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "distlab/bigint.hpp"
#include "distlab/pointset.hpp"

namespace distlab {

/// Exact nonnegative counts indexed by the q field elements in enumeration
/// order. Houses pair-distance multiplicities and their k-fold additive
/// convolutions; entries are arbitrary precision.
class MultiplicityVector {
public:
    explicit MultiplicityVector(FieldPtr spec)
        : spec_(std::move(spec)), counts_(spec_->q()) {}

    const FieldSpec& field() const { return *spec_; }
    const FieldPtr& field_ptr() const { return spec_; }
    std::uint64_t size() const { return counts_.size(); }

    const Int& operator[](std::uint64_t idx) const { return counts_[idx]; }
    Int& operator[](std::uint64_t idx) { return counts_[idx]; }

    Int total() const;
    Int sum_squares() const;

    /// Indices with a positive count, ascending.
    std::vector<std::uint64_t> support() const;

    bool operator==(const MultiplicityVector& other) const {
        return spec_->same_as(*other.spec_) && counts_ == other.counts_;
    }

    /// {"field": "...", ["modulus": [...],] "counts": ["3","6","0"]} with
    /// counts as decimal strings.
    nlohmann::ordered_json to_json() const;
    static MultiplicityVector from_json(const nlohmann::json& j);

private:
    FieldPtr spec_;
    std::vector<Int> counts_;
};

/// Ordered-pair distance counts: entry at index(lambda) is the number of
/// (x, y) in E x F with distance(x, y) = lambda. E = F gives the symmetric
/// count. Exact; internally parallel.
MultiplicityVector distance_multiplicities(const PointSet& E, const PointSet& F);

/// Support of the pair-distance counts, computed by a direct pair scan.
std::vector<FieldElement> distance_set(const PointSet& E, const PointSet& F);

/// Convolution over the additive group (Z_p)^m: out(l) = sum over a+b=l of
/// u(a) v(b). Exact integers; internally parallel over output indices.
MultiplicityVector additive_convolution(const MultiplicityVector& u,
                                        const MultiplicityVector& v);

/// k-fold additive energy via the convolution identity: with N the k-fold
/// convolution of the pair-distance counts, returns sum over lambda of
/// N(lambda)^2. k >= 1.
Int energy(const PointSet& E, const PointSet& F, int k);

/// Same quantity by direct enumeration of k-tuples of point pairs on each
/// side; independent of the convolution path. Guarded by
/// (|E||F|)^k <= 10^8.
Int energy_bruteforce(const PointSet& E, const PointSet& F, int k);

inline constexpr std::uint64_t kOracleGuard = 100'000'000;

/// Iterated sumset of the distance set of E inside (F_q, +), k >= 1.
std::vector<FieldElement> k_sumset(const PointSet& E, int k);

/// |E|^(4k) / energy(E, E, k), exact. Cauchy-Schwarz guarantees
/// |k_sumset(E, k)| is at least this value.
Rat cauchy_schwarz_bound(const PointSet& E, int k);

namespace serial {
/// Reference implementations: single-threaded, arbitrary-precision all the
/// way through, structured as the definitions read. Kept for equivalence
/// tests and the kernel benchmark.
MultiplicityVector distance_multiplicities(const PointSet& E, const PointSet& F);
MultiplicityVector additive_convolution(const MultiplicityVector& u,
                                        const MultiplicityVector& v);
}  // namespace serial

}  // namespace distlab
