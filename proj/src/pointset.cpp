#include "distlab/pointset.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "distlab/rng.hpp"

namespace distlab {

bool operator==(const Point& a, const Point& b) {
    if (a.coords.size() != b.coords.size()) return false;
    for (std::size_t i = 0; i < a.coords.size(); ++i)
        if (a.coords[i] != b.coords[i]) return false;
    return true;
}

bool operator!=(const Point& a, const Point& b) { return !(a == b); }

bool lex_less(const Point& a, const Point& b) {
    for (std::size_t i = 0; i < a.coords.size(); ++i) {
        const std::uint64_t ia = a.coords[i].index();
        const std::uint64_t ib = b.coords[i].index();
        if (ia != ib) return ia < ib;
    }
    return false;
}

FieldElement distance(const Point& x, const Point& y) {
    if (x.dim() != y.dim())
        throw DimensionMismatch("distance between points of dimension " +
                                std::to_string(x.dim()) + " and " + std::to_string(y.dim()));
    if (x.dim() == 0) throw DimensionMismatch("zero-dimensional point");
    const FieldSpec& f = x.coords[0].field();
    FieldElement acc = f.zero();
    for (std::size_t i = 0; i < x.dim(); ++i) {
        FieldElement diff = f.sub(x.coords[i], y.coords[i]);
        acc = f.add(acc, f.mul(diff, diff));
    }
    return acc;
}

FieldElement norm(const Point& x) {
    if (x.dim() == 0) throw DimensionMismatch("zero-dimensional point");
    const FieldSpec& f = x.coords[0].field();
    FieldElement acc = f.zero();
    for (const auto& c : x.coords) acc = f.add(acc, f.mul(c, c));
    return acc;
}

std::uint64_t PointSet::ambient_size(const FieldSpec& field, std::size_t d) {
    const std::uint64_t cap = std::uint64_t(1) << 63;
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < d; ++i) {
        if (r > cap / field.q()) return cap;
        r *= field.q();
    }
    return r;
}

PointSet::PointSet(FieldPtr field, std::size_t d, std::vector<Point> points, std::string label)
    : field_(std::move(field)), d_(d), points_(std::move(points)), label_(std::move(label)) {
    if (d_ < 1) throw DimensionMismatch("point sets need dimension >= 1");
    for (const auto& pt : points_) {
        if (pt.dim() != d_)
            throw DimensionMismatch("point of dimension " + std::to_string(pt.dim()) +
                                    " in a set of dimension " + std::to_string(d_));
        for (const auto& c : pt.coords)
            if (!c.has_field() || !c.field().same_as(*field_)) throw FieldMismatch();
    }
    std::sort(points_.begin(), points_.end(), lex_less);
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
    if (points_.empty()) throw TooLarge("point set must be nonempty");
}

Point PointSet::point_at(std::uint64_t idx) const {
    Point pt;
    pt.coords.resize(d_);
    for (std::size_t j = d_; j-- > 0;) {
        pt.coords[j] = field_->from_index(idx % field_->q());
        idx /= field_->q();
    }
    return pt;
}

std::uint64_t PointSet::point_index(const Point& x) const {
    std::uint64_t idx = 0;
    for (std::size_t j = 0; j < d_; ++j) idx = idx * field_->q() + x.coords[j].index();
    return idx;
}

PointSet PointSet::random(FieldPtr field, std::size_t d, std::uint64_t n, std::uint64_t seed) {
    const std::uint64_t ambient = ambient_size(*field, d);
    if (n < 1 || n > ambient)
        throw TooLarge("requested " + std::to_string(n) + " points from an ambient space of " +
                       std::to_string(ambient));
    if (n > kAmbientGuard)
        throw TooLarge("requested size exceeds the generation guard " +
                       std::to_string(kAmbientGuard));
    Rng rng = Rng::stream(seed, 0);

    std::vector<std::uint64_t> chosen;
    chosen.reserve(n);
    if (ambient <= kAmbientGuard) {
        // Partial Fisher-Yates over the whole index range: exact sampling
        // without replacement.
        std::vector<std::uint64_t> pool(ambient);
        for (std::uint64_t i = 0; i < ambient; ++i) pool[i] = i;
        for (std::uint64_t i = 0; i < n; ++i) {
            const std::uint64_t j = i + rng.below(ambient - i);
            std::swap(pool[i], pool[j]);
            chosen.push_back(pool[i]);
        }
    } else {
        // Sparse regime: draw coordinates and reject duplicates.
        std::unordered_set<std::uint64_t> seen;
        while (chosen.size() < n) {
            std::uint64_t idx = 0;
            for (std::size_t j = 0; j < d; ++j) idx = idx * field->q() + rng.below(field->q());
            if (seen.insert(idx).second) chosen.push_back(idx);
        }
    }

    std::string label = "random(n=" + std::to_string(n) + ",seed=" + std::to_string(seed) + ")";
    PointSet shell(field, d, {Point{std::vector<FieldElement>(d, field->zero())}}, label);
    std::vector<Point> pts;
    pts.reserve(n);
    for (std::uint64_t idx : chosen) pts.push_back(shell.point_at(idx));
    return PointSet(std::move(field), d, std::move(pts), std::move(label));
}

PointSet PointSet::sphere(FieldPtr field, std::size_t d, const FieldElement& r) {
    const std::uint64_t ambient = ambient_size(*field, d);
    if (ambient > kAmbientGuard)
        throw TooLargeAmbient("sphere scan over " + std::to_string(ambient) + " points");
    if (!r.has_field() || !r.field().same_as(*field)) throw FieldMismatch();
    const std::string label = "sphere(r=" + r.str() + ")";
    PointSet shell(field, d, {Point{std::vector<FieldElement>(d, field->zero())}}, label);

    std::vector<std::vector<Point>> found;
    #pragma omp parallel
    {
        const int tid = omp_get_thread_num();
        #pragma omp single
        found.resize(omp_get_num_threads());
        std::vector<Point>& mine = found[tid];
        #pragma omp for schedule(static)
        for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(ambient); ++idx) {
            Point pt = shell.point_at(static_cast<std::uint64_t>(idx));
            if (norm(pt) == r) mine.push_back(std::move(pt));
        }
    }
    std::vector<Point> pts;
    for (auto& part : found)
        for (auto& pt : part) pts.push_back(std::move(pt));
    return PointSet(std::move(field), d, std::move(pts), label);
}

PointSet PointSet::product(FieldPtr field, const std::vector<FieldElement>& values,
                           std::size_t d) {
    if (values.empty()) throw TooLarge("product generator needs a nonempty coefficient set");
    std::vector<FieldElement> base = values;
    for (const auto& v : base)
        if (!v.has_field() || !v.field().same_as(*field)) throw FieldMismatch();
    std::sort(base.begin(), base.end(),
              [](const FieldElement& a, const FieldElement& b) { return a.index() < b.index(); });
    base.erase(std::unique(base.begin(), base.end()), base.end());

    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) {
        if (count > kAmbientGuard / base.size())
            throw TooLargeAmbient("|A|^d exceeds the generation guard");
        count *= base.size();
    }
    std::vector<Point> pts;
    pts.reserve(count);
    std::vector<std::size_t> odo(d, 0);
    for (std::uint64_t i = 0; i < count; ++i) {
        Point pt;
        pt.coords.reserve(d);
        for (std::size_t j = 0; j < d; ++j) pt.coords.push_back(base[odo[j]]);
        pts.push_back(std::move(pt));
        for (std::size_t j = d; j-- > 0;) {
            if (++odo[j] < base.size()) break;
            odo[j] = 0;
        }
    }
    return PointSet(std::move(field), d, std::move(pts),
                    "product(|A|=" + std::to_string(base.size()) + ")");
}

PointSet PointSet::full_grid(FieldPtr field, std::size_t d) {
    auto all = field->elements();
    PointSet ps = product(std::move(field), all, d);
    return PointSet(ps.field_ptr(), d, ps.points(), "full");
}

PointSet PointSet::isometry_image(const std::vector<std::size_t>& perm,
                                  const std::vector<int>& signs, const Point& t) const {
    if (perm.size() != d_ || signs.size() != d_ || t.dim() != d_)
        throw DimensionMismatch("isometry data must match the set dimension");
    std::vector<bool> hit(d_, false);
    for (std::size_t j : perm) {
        if (j >= d_ || hit[j]) throw DimensionMismatch("perm is not a permutation of coordinates");
        hit[j] = true;
    }
    for (int s : signs)
        if (s != 1 && s != -1) throw DimensionMismatch("signs must be +1 or -1");

    std::vector<Point> pts;
    pts.reserve(points_.size());
    for (const auto& pt : points_) {
        Point img;
        img.coords.resize(d_);
        for (std::size_t j = 0; j < d_; ++j) {
            FieldElement v = pt.coords[perm[j]];
            if (signs[j] < 0) v = field_->neg(v);
            img.coords[j] = field_->add(v, t.coords[j]);
        }
        pts.push_back(std::move(img));
    }
    return PointSet(field_, d_, std::move(pts), label_ + "+isometry");
}

void PointSet::save_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    out << "# q=" << field_->q() << " p=" << field_->p() << " m=" << field_->m()
        << " d=" << d_;
    if (field_->m() > 1 && !field_->has_default_modulus()) {
        out << " modulus=";
        const auto& mod = field_->modulus();
        for (std::size_t i = 0; i < mod.size(); ++i) out << (i ? "," : "") << mod[i];
    }
    out << "\n";
    for (const auto& pt : points_) {
        for (std::size_t j = 0; j < d_; ++j) out << (j ? "," : "") << pt.coords[j].str();
        out << "\n";
    }
    if (!out) throw ConfigError("write to '" + path + "' failed");
}

namespace {

std::uint64_t parse_u64_str(const std::string& s) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ConfigError("bad integer '" + s + "' in CSV header");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

PointSet PointSet::load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::string header;
    if (!std::getline(in, header) || header.rfind("# ", 0) != 0)
        throw ConfigError("missing '# q=... p=... m=... d=...' header in " + path);

    std::uint64_t q = 0, p = 0, m = 0, d = 0;
    std::optional<std::vector<std::uint32_t>> modulus;
    std::istringstream hs(header.substr(2));
    std::string tok;
    while (hs >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw ConfigError("bad header token '" + tok + "'");
        const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "q") q = parse_u64_str(val);
        else if (key == "p") p = parse_u64_str(val);
        else if (key == "m") m = parse_u64_str(val);
        else if (key == "d") d = parse_u64_str(val);
        else if (key == "modulus") {
            std::vector<std::uint32_t> coeffs;
            for (const auto& piece : split(val, ','))
                coeffs.push_back(static_cast<std::uint32_t>(parse_u64_str(piece)));
            modulus = std::move(coeffs);
        } else {
            throw ConfigError("unknown header key '" + key + "'");
        }
    }
    if (q == 0 || p == 0 || m == 0 || d == 0)
        throw ConfigError("incomplete CSV header in " + path);

    FieldPtr field = FieldSpec::make(p, m, std::move(modulus));
    if (field->q() != q) throw ConfigError("header q does not equal p^m in " + path);

    std::vector<Point> pts;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        Point pt;
        for (const auto& coord : split(line, ',')) {
            std::vector<std::int64_t> coeffs;
            for (const auto& piece : split(coord, ':'))
                coeffs.push_back(static_cast<std::int64_t>(parse_u64_str(piece)));
            if (coeffs.size() != m) throw ConfigError("coordinate '" + coord + "' has wrong degree");
            pt.coords.push_back(field->from_coeffs(coeffs));
        }
        pts.push_back(std::move(pt));
    }
    return PointSet(std::move(field), d, std::move(pts), "csv:" + path);
}

}  // namespace distlab
