#include "distlab/energy.hpp"

#include <algorithm>
#include <limits>

namespace distlab {

namespace {

void check_compatible(const PointSet& E, const PointSet& F) {
    if (!E.field().same_as(F.field())) throw FieldMismatch();
    if (E.dim() != F.dim())
        throw DimensionMismatch("sets of dimension " + std::to_string(E.dim()) + " and " +
                                std::to_string(F.dim()));
}

// Pair-distance histogram with plain 64-bit counts. Total mass is |E||F|,
// which fits: set sizes are capped well below 2^32.
std::vector<std::uint64_t> pair_histogram(const PointSet& E, const PointSet& F) {
    const FieldSpec& f = E.field();
    const std::uint64_t q = f.q();
    std::vector<std::uint64_t> hist(q, 0);

    const auto& ep = E.points();
    const auto& fp = F.points();
    const std::int64_t ne = static_cast<std::int64_t>(ep.size());

    if (f.m() == 1) {
        // Flat coordinate arrays; the inner loop is pure integer arithmetic.
        const std::size_t d = E.dim();
        const std::uint64_t p = f.p();
        std::vector<std::uint32_t> ec(ep.size() * d), fc(fp.size() * d);
        for (std::size_t i = 0; i < ep.size(); ++i)
            for (std::size_t j = 0; j < d; ++j) ec[i * d + j] = ep[i].coords[j].coeff(0);
        for (std::size_t i = 0; i < fp.size(); ++i)
            for (std::size_t j = 0; j < d; ++j) fc[i * d + j] = fp[i].coords[j].coeff(0);

        #pragma omp parallel
        {
            std::vector<std::uint64_t> local(q, 0);
            #pragma omp for schedule(static) nowait
            for (std::int64_t i = 0; i < ne; ++i) {
                const std::uint32_t* x = &ec[static_cast<std::size_t>(i) * d];
                for (std::size_t r = 0; r < fp.size(); ++r) {
                    const std::uint32_t* y = &fc[r * d];
                    std::uint64_t acc = 0;
                    for (std::size_t j = 0; j < d; ++j) {
                        const std::uint64_t diff = x[j] >= y[j] ? x[j] - y[j] : x[j] + p - y[j];
                        acc += diff * diff;
                    }
                    ++local[acc % p];
                }
            }
            #pragma omp critical
            for (std::uint64_t l = 0; l < q; ++l) hist[l] += local[l];
        }
    } else {
        #pragma omp parallel
        {
            std::vector<std::uint64_t> local(q, 0);
            #pragma omp for schedule(static) nowait
            for (std::int64_t i = 0; i < ne; ++i) {
                for (const auto& y : fp) ++local[distance(ep[i], y).index()];
            }
            #pragma omp critical
            for (std::uint64_t l = 0; l < q; ++l) hist[l] += local[l];
        }
    }
    return hist;
}

}  // namespace

Int MultiplicityVector::total() const {
    Int s = 0;
    for (const auto& c : counts_) s += c;
    return s;
}

Int MultiplicityVector::sum_squares() const {
    Int s = 0;
    for (const auto& c : counts_) s += c * c;
    return s;
}

std::vector<std::uint64_t> MultiplicityVector::support() const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 0; i < counts_.size(); ++i)
        if (counts_[i] > 0) out.push_back(i);
    return out;
}

nlohmann::ordered_json MultiplicityVector::to_json() const {
    nlohmann::ordered_json j;
    j["field"] = spec_->spec_string();
    if (spec_->m() > 1) j["modulus"] = spec_->modulus();
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : counts_) arr.push_back(to_decimal(c));
    j["counts"] = std::move(arr);
    return j;
}

MultiplicityVector MultiplicityVector::from_json(const nlohmann::json& j) {
    std::optional<std::vector<std::uint32_t>> modulus;
    if (j.contains("modulus")) modulus = j.at("modulus").get<std::vector<std::uint32_t>>();
    FieldPtr spec = FieldSpec::parse(j.at("field").get<std::string>(), std::move(modulus));
    MultiplicityVector v(spec);
    const auto& arr = j.at("counts");
    if (arr.size() != spec->q()) throw ConfigError("counts array must have length q");
    for (std::uint64_t i = 0; i < spec->q(); ++i)
        v[i] = Int(arr.at(i).get<std::string>());
    return v;
}

MultiplicityVector distance_multiplicities(const PointSet& E, const PointSet& F) {
    check_compatible(E, F);
    MultiplicityVector out(E.field_ptr());
    const auto hist = pair_histogram(E, F);
    for (std::uint64_t l = 0; l < hist.size(); ++l) out[l] = hist[l];
    return out;
}

std::vector<FieldElement> distance_set(const PointSet& E, const PointSet& F) {
    check_compatible(E, F);
    const FieldSpec& f = E.field();
    std::vector<char> seen(f.q(), 0);
    for (const auto& x : E.points())
        for (const auto& y : F.points()) seen[distance(x, y).index()] = 1;
    std::vector<FieldElement> out;
    for (std::uint64_t i = 0; i < f.q(); ++i)
        if (seen[i]) out.push_back(f.from_index(i));
    return out;
}

MultiplicityVector additive_convolution(const MultiplicityVector& u,
                                        const MultiplicityVector& v) {
    if (!u.field().same_as(v.field())) throw FieldMismatch();
    const FieldSpec& f = u.field();
    const std::uint64_t q = f.q();
    MultiplicityVector out(u.field_ptr());

    // The result fits 64-bit iff total(u) * total(v) does; use machine words
    // then, arbitrary precision otherwise. Both paths are exact.
    const Int cap = u.total() * v.total();
    if (cap <= Int(std::numeric_limits<std::uint64_t>::max())) {
        std::vector<std::uint64_t> a(q), b(q), c(q);
        for (std::uint64_t i = 0; i < q; ++i) {
            a[i] = u[i].convert_to<std::uint64_t>();
            b[i] = v[i].convert_to<std::uint64_t>();
        }
        #pragma omp parallel for schedule(static)
        for (std::int64_t l = 0; l < static_cast<std::int64_t>(q); ++l) {
            std::uint64_t acc = 0;
            for (std::uint64_t alpha = 0; alpha < q; ++alpha) {
                const std::uint64_t av = a[alpha];
                if (av == 0) continue;
                acc += av * b[f.sub_index(static_cast<std::uint64_t>(l), alpha)];
            }
            c[static_cast<std::uint64_t>(l)] = acc;
        }
        for (std::uint64_t l = 0; l < q; ++l) out[l] = c[l];
        return out;
    }

    #pragma omp parallel for schedule(static)
    for (std::int64_t l = 0; l < static_cast<std::int64_t>(q); ++l) {
        Int acc = 0;
        for (std::uint64_t alpha = 0; alpha < q; ++alpha) {
            if (u[alpha] == 0) continue;
            acc += u[alpha] * v[f.sub_index(static_cast<std::uint64_t>(l), alpha)];
        }
        out[static_cast<std::uint64_t>(l)] = acc;
    }
    return out;
}

Int energy(const PointSet& E, const PointSet& F, int k) {
    if (k < 1) throw InvalidK(k, 1);
    check_compatible(E, F);
    MultiplicityVector nu = distance_multiplicities(E, F);
    MultiplicityVector fold = nu;
    for (int i = 1; i < k; ++i) fold = additive_convolution(fold, nu);
    return fold.sum_squares();
}

Int energy_bruteforce(const PointSet& E, const PointSet& F, int k) {
    if (k < 1) throw InvalidK(k, 1);
    check_compatible(E, F);
    const FieldSpec& f = E.field();

    const Int tuples = int_pow(Int(E.size()) * Int(F.size()), static_cast<unsigned>(k));
    if (tuples > Int(kOracleGuard))
        throw TooLargeForOracle("(|E||F|)^k = " + to_decimal(tuples) + " exceeds " +
                                std::to_string(kOracleGuard));

    std::vector<std::uint64_t> pair_dist;
    pair_dist.reserve(E.size() * F.size());
    for (const auto& x : E.points())
        for (const auto& y : F.points()) pair_dist.push_back(distance(x, y).index());

    // Histogram of k-term sums by explicit enumeration of tuples of pairs.
    std::vector<std::uint64_t> hist(f.q(), 0);
    const std::size_t depth_max = static_cast<std::size_t>(k);
    auto enumerate = [&](auto&& self, std::size_t depth, std::uint64_t sum_idx) -> void {
        if (depth == depth_max) {
            ++hist[sum_idx];
            return;
        }
        for (std::uint64_t d_idx : pair_dist) self(self, depth + 1, f.add_index(sum_idx, d_idx));
    };
    enumerate(enumerate, 0, 0);

    Int total = 0;
    for (std::uint64_t c : hist) total += Int(c) * Int(c);
    return total;
}

std::vector<FieldElement> k_sumset(const PointSet& E, int k) {
    if (k < 1) throw InvalidK(k, 1);
    const FieldSpec& f = E.field();
    const std::vector<FieldElement> delta = distance_set(E, E);
    std::vector<char> cur(f.q(), 0);
    for (const auto& e : delta) cur[e.index()] = 1;
    for (int step = 1; step < k; ++step) {
        std::vector<char> nxt(f.q(), 0);
        for (std::uint64_t s = 0; s < f.q(); ++s) {
            if (!cur[s]) continue;
            for (const auto& e : delta) nxt[f.add_index(s, e.index())] = 1;
        }
        cur.swap(nxt);
    }
    std::vector<FieldElement> out;
    for (std::uint64_t i = 0; i < f.q(); ++i)
        if (cur[i]) out.push_back(f.from_index(i));
    return out;
}

Rat cauchy_schwarz_bound(const PointSet& E, int k) {
    if (k < 1) throw InvalidK(k, 1);
    return Rat(int_pow(Int(E.size()), 4 * static_cast<unsigned>(k)), energy(E, E, k));
}

namespace serial {

MultiplicityVector distance_multiplicities(const PointSet& E, const PointSet& F) {
    check_compatible(E, F);
    MultiplicityVector out(E.field_ptr());
    for (const auto& x : E.points())
        for (const auto& y : F.points()) out[distance(x, y).index()] += 1;
    return out;
}

MultiplicityVector additive_convolution(const MultiplicityVector& u,
                                        const MultiplicityVector& v) {
    if (!u.field().same_as(v.field())) throw FieldMismatch();
    const FieldSpec& f = u.field();
    MultiplicityVector out(u.field_ptr());
    for (std::uint64_t a = 0; a < f.q(); ++a) {
        if (u[a] == 0) continue;
        for (std::uint64_t b = 0; b < f.q(); ++b) {
            if (v[b] == 0) continue;
            out[f.add_index(a, b)] += u[a] * v[b];
        }
    }
    return out;
}

}  // namespace serial

}  // namespace distlab
