#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "distlab/field.hpp"

namespace distlab {

/// A point of F_q^d. All coordinates belong to one field.
struct Point {
    std::vector<FieldElement> coords;

    std::size_t dim() const { return coords.size(); }
};

bool operator==(const Point& a, const Point& b);
bool operator!=(const Point& a, const Point& b);

/// Lexicographic order on coordinate enumeration indices, coords[0] first.
bool lex_less(const Point& a, const Point& b);

/// The quadratic form (x1-y1)^2 + ... + (xd-yd)^2. Symmetric, zero on the
/// diagonal, invariant under translations and signed coordinate permutations.
/// Not a metric: distinct points can be at "distance" zero.
FieldElement distance(const Point& x, const Point& y);

/// Sum of squared coordinates, i.e. distance to the origin.
FieldElement norm(const Point& x);

/// Ambient scan guard for sphere/product/full-grid generation.
inline constexpr std::uint64_t kAmbientGuard = 10'000'000;

/// A deduplicated point set in F_q^d, sorted lexicographically so equal sets
/// compare equal and serialize identically. Immutable after construction.
class PointSet {
public:
    PointSet(FieldPtr field, std::size_t d, std::vector<Point> points, std::string label);

    /// Uniform sample of exactly n distinct points, deterministic in seed.
    static PointSet random(FieldPtr field, std::size_t d, std::uint64_t n, std::uint64_t seed);

    /// The level set {x : norm(x) = r}, by exhaustive scan of F_q^d.
    static PointSet sphere(FieldPtr field, std::size_t d, const FieldElement& r);

    /// The Cartesian power A^d for a nonempty coefficient set A.
    static PointSet product(FieldPtr field, const std::vector<FieldElement>& values,
                            std::size_t d);

    /// All of F_q^d.
    static PointSet full_grid(FieldPtr field, std::size_t d);

    /// Image under x -> (signs[j] * x[perm[j]] + t[j])_j. Signed coordinate
    /// permutations are orthogonal, so the image has the same distance set.
    PointSet isometry_image(const std::vector<std::size_t>& perm, const std::vector<int>& signs,
                            const Point& t) const;

    const FieldPtr& field_ptr() const { return field_; }
    const FieldSpec& field() const { return *field_; }
    std::size_t dim() const { return d_; }
    std::uint64_t size() const { return points_.size(); }
    const std::vector<Point>& points() const { return points_; }
    const std::string& label() const { return label_; }

    /// |F_q^d| saturated at 2^63 when it overflows.
    static std::uint64_t ambient_size(const FieldSpec& field, std::size_t d);

    /// Enumeration position of a point: base-q digits, coords[0] most
    /// significant, matching lex order.
    std::uint64_t point_index(const Point& x) const;
    Point point_at(std::uint64_t idx) const;

    void save_csv(const std::string& path) const;
    static PointSet load_csv(const std::string& path);

private:
    FieldPtr field_;
    std::size_t d_ = 0;
    std::vector<Point> points_;
    std::string label_;
};

}  // namespace distlab
