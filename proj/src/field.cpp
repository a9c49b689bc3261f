#include "distlab/field.hpp"

#include <algorithm>
#include <charconv>

namespace distlab {

namespace {

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t f = 2; f * f <= n; ++f)
        if (n % f == 0) return false;
    return true;
}

std::uint64_t checked_pow(std::uint64_t base, std::size_t exp) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (r > kMaxFieldOrder / base)
            throw TooLarge("field order p^m exceeds the supported bound " +
                           std::to_string(kMaxFieldOrder));
        r *= base;
    }
    return r;
}

// Horner evaluation of a polynomial over Z_p.
std::uint64_t eval_mod_p(const std::vector<std::uint32_t>& coeffs, std::uint64_t x,
                         std::uint64_t p) {
    std::uint64_t acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = (acc * x + coeffs[i]) % p;
    return acc;
}

// Remainder of a by b over Z_p, b monic. Degrees are tiny (<= 4).
std::vector<std::uint32_t> poly_mod(std::vector<std::uint64_t> a,
                                    const std::vector<std::uint32_t>& b, std::uint64_t p) {
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        const std::uint64_t lead = a.back() % p;
        if (lead != 0) {
            const std::size_t shift = a.size() - 1 - db;
            for (std::size_t i = 0; i <= db; ++i) {
                std::uint64_t sub = (lead * b[i]) % p;
                a[shift + i] = (a[shift + i] + p * p - sub) % p;
            }
        }
        a.pop_back();
    }
    std::vector<std::uint32_t> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<std::uint32_t>(a[i] % p);
    return r;
}

bool is_zero_poly(const std::vector<std::uint32_t>& a) {
    return std::all_of(a.begin(), a.end(), [](std::uint32_t c) { return c == 0; });
}

}  // namespace

bool is_irreducible_mod_p(std::uint64_t p, const std::vector<std::uint32_t>& coeffs) {
    const std::size_t deg = coeffs.size() - 1;
    if (deg == 1) return true;
    // Any factorization of a polynomial of degree <= 3 has a linear factor,
    // i.e. a root. Degree 4 additionally needs a quadratic-factor check.
    for (std::uint64_t x = 0; x < p; ++x)
        if (eval_mod_p(coeffs, x, p) == 0) return false;
    if (deg <= 3) return true;
    if (deg == 4) {
        for (std::uint64_t b = 0; b < p; ++b) {
            for (std::uint64_t c = 0; c < p; ++c) {
                std::vector<std::uint32_t> g = {static_cast<std::uint32_t>(c),
                                                static_cast<std::uint32_t>(b), 1};
                bool g_has_root = false;
                for (std::uint64_t x = 0; x < p && !g_has_root; ++x)
                    g_has_root = eval_mod_p(g, x, p) == 0;
                if (g_has_root) continue;  // reducible g cannot be a minimal factor
                std::vector<std::uint64_t> a(coeffs.begin(), coeffs.end());
                if (is_zero_poly(poly_mod(std::move(a), g, p))) return false;
            }
        }
        return true;
    }
    throw TooLarge("irreducibility check only supported up to degree " +
                   std::to_string(kMaxExtensionDegree));
}

FieldPtr FieldSpec::make(std::uint64_t p, std::size_t m,
                         std::optional<std::vector<std::uint32_t>> modulus) {
    if (p % 2 == 0) throw EvenCharacteristic();
    if (p > kMaxFieldOrder || !is_prime_u64(p)) throw NonPrime(p);
    if (m < 1) throw TooLarge("extension degree m must be >= 1");
    if (m > kMaxExtensionDegree)
        throw TooLarge("extension degree m = " + std::to_string(m) +
                       " unsupported (irreducibility certification stops at degree " +
                       std::to_string(kMaxExtensionDegree) + ")");
    const std::uint64_t q = checked_pow(p, m);

    auto spec = std::shared_ptr<FieldSpec>(new FieldSpec());
    spec->p_ = p;
    spec->m_ = m;
    spec->q_ = q;

    auto default_search = [&]() {
        // Non-leading coefficient vectors scanned in enumeration order
        // (value order of sum c_i p^i); first irreducible wins.
        std::vector<std::uint32_t> f(m + 1, 0);
        f[m] = 1;
        for (std::uint64_t v = 0;; ++v) {
            std::uint64_t t = v;
            for (std::size_t i = 0; i < m; ++i) {
                f[i] = static_cast<std::uint32_t>(t % p);
                t /= p;
            }
            if (t != 0)
                throw ReducibleModulus("no irreducible of degree " + std::to_string(m) +
                                       " found over Z_" + std::to_string(p));
            if (is_irreducible_mod_p(p, f)) return f;
        }
    };

    if (m == 1) {
        spec->modulus_ = {0, 1};  // t; unused for prime fields
        spec->default_modulus_ = true;
    } else if (!modulus.has_value()) {
        spec->modulus_ = default_search();
        spec->default_modulus_ = true;
    } else {
        std::vector<std::uint32_t> f = std::move(*modulus);
        if (f.size() != m + 1)
            throw ReducibleModulus("modulus must have degree m = " + std::to_string(m));
        for (auto& c : f) c = static_cast<std::uint32_t>(c % p);
        if (f[m] != 1) throw ReducibleModulus("modulus must be monic");
        if (!is_irreducible_mod_p(p, f))
            throw ReducibleModulus("modulus is reducible over Z_" + std::to_string(p));
        spec->modulus_ = f;
        spec->default_modulus_ = (f == default_search());
    }

    if (m > 1) {
        // reduction_[j] = t^(m+j) mod f, computed iteratively.
        std::array<std::uint32_t, kMaxExtensionDegree> cur{};
        for (std::size_t i = 0; i < m; ++i)
            cur[i] = static_cast<std::uint32_t>((p - spec->modulus_[i] % p) % p);
        spec->reduction_.push_back(cur);
        for (std::size_t j = 1; j + 1 < m; ++j) {
            std::array<std::uint32_t, kMaxExtensionDegree> nxt{};
            const std::uint64_t high = cur[m - 1];
            for (std::size_t i = m - 1; i > 0; --i) nxt[i] = cur[i - 1];
            nxt[0] = 0;
            for (std::size_t i = 0; i < m; ++i) {
                std::uint64_t v = nxt[i] + high * spec->reduction_[0][i];
                nxt[i] = static_cast<std::uint32_t>(v % p);
            }
            spec->reduction_.push_back(nxt);
            cur = nxt;
        }
    }
    return spec;
}

FieldPtr FieldSpec::parse(std::string_view sv, std::optional<std::vector<std::uint32_t>> modulus) {
    auto parse_u64 = [](std::string_view s) -> std::uint64_t {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size())
            throw ConfigError("bad field spec component '" + std::string(s) + "'");
        return v;
    };
    const auto caret = sv.find('^');
    if (caret == std::string_view::npos) return make(parse_u64(sv), 1, std::move(modulus));
    return make(parse_u64(sv.substr(0, caret)),
                static_cast<std::size_t>(parse_u64(sv.substr(caret + 1))), std::move(modulus));
}

std::string FieldSpec::spec_string() const {
    if (m_ == 1) return std::to_string(q_);
    return std::to_string(p_) + "^" + std::to_string(m_);
}

bool FieldSpec::same_as(const FieldSpec& other) const {
    if (this == &other) return true;
    return p_ == other.p_ && m_ == other.m_ && modulus_ == other.modulus_;
}

void FieldSpec::check_owned(const FieldElement& a) const {
    if (a.spec_ == nullptr || !same_as(*a.spec_)) throw FieldMismatch();
}

void FieldSpec::check_pair(const FieldElement& a, const FieldElement& b) const {
    check_owned(a);
    check_owned(b);
}

FieldElement FieldSpec::from_index(std::uint64_t idx) const {
    FieldElement e;
    e.spec_ = this;
    for (std::size_t i = 0; i < m_; ++i) {
        e.c_[i] = static_cast<std::uint32_t>(idx % p_);
        idx /= p_;
    }
    return e;
}

FieldElement FieldSpec::from_coeffs(const std::vector<std::int64_t>& coeffs) const {
    if (coeffs.size() > m_) throw FieldMismatch("too many coefficients for degree-m element");
    FieldElement e;
    e.spec_ = this;
    const std::int64_t sp = static_cast<std::int64_t>(p_);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        std::int64_t r = coeffs[i] % sp;
        if (r < 0) r += sp;
        e.c_[i] = static_cast<std::uint32_t>(r);
    }
    return e;
}

FieldElement FieldSpec::from_integer(std::int64_t n) const { return from_coeffs({n}); }

std::vector<FieldElement> FieldSpec::elements() const {
    std::vector<FieldElement> out;
    out.reserve(q_);
    for (std::uint64_t i = 0; i < q_; ++i) out.push_back(from_index(i));
    return out;
}

FieldElement FieldSpec::add(const FieldElement& a, const FieldElement& b) const {
    check_pair(a, b);
    FieldElement r;
    r.spec_ = this;
    for (std::size_t i = 0; i < m_; ++i) {
        std::uint32_t s = a.c_[i] + b.c_[i];
        r.c_[i] = s >= p_ ? s - static_cast<std::uint32_t>(p_) : s;
    }
    return r;
}

FieldElement FieldSpec::sub(const FieldElement& a, const FieldElement& b) const {
    check_pair(a, b);
    FieldElement r;
    r.spec_ = this;
    for (std::size_t i = 0; i < m_; ++i) {
        std::uint32_t s = a.c_[i] + static_cast<std::uint32_t>(p_) - b.c_[i];
        r.c_[i] = s >= p_ ? s - static_cast<std::uint32_t>(p_) : s;
    }
    return r;
}

FieldElement FieldSpec::neg(const FieldElement& a) const {
    check_owned(a);
    FieldElement r;
    r.spec_ = this;
    for (std::size_t i = 0; i < m_; ++i)
        r.c_[i] = a.c_[i] == 0 ? 0 : static_cast<std::uint32_t>(p_) - a.c_[i];
    return r;
}

FieldElement FieldSpec::mul(const FieldElement& a, const FieldElement& b) const {
    check_pair(a, b);
    FieldElement r;
    r.spec_ = this;
    if (m_ == 1) {
        r.c_[0] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(a.c_[0]) * b.c_[0]) % p_);
        return r;
    }
    // Schoolbook product, then fold degrees m..2m-2 with the reduction table.
    std::array<std::uint64_t, 2 * kMaxExtensionDegree> prod{};
    for (std::size_t i = 0; i < m_; ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < m_; ++j)
            prod[i + j] += static_cast<std::uint64_t>(a.c_[i]) * b.c_[j];
    }
    std::array<std::uint64_t, kMaxExtensionDegree> acc{};
    for (std::size_t i = 0; i < m_; ++i) acc[i] = prod[i] % p_;
    for (std::size_t j = 0; j + 1 < m_; ++j) {
        const std::uint64_t high = prod[m_ + j] % p_;
        if (high == 0) continue;
        for (std::size_t i = 0; i < m_; ++i) acc[i] += high * reduction_[j][i];
    }
    for (std::size_t i = 0; i < m_; ++i) r.c_[i] = static_cast<std::uint32_t>(acc[i] % p_);
    return r;
}

FieldElement FieldSpec::pow(FieldElement base, std::uint64_t exp) const {
    check_owned(base);
    FieldElement r = one();
    while (exp > 0) {
        if (exp & 1u) r = mul(r, base);
        base = mul(base, base);
        exp >>= 1u;
    }
    return r;
}

bool FieldSpec::is_square(const FieldElement& a) const {
    check_owned(a);
    if (a.is_zero()) return true;
    return pow(a, (q_ - 1) / 2) == one();
}

std::uint64_t FieldSpec::add_index(std::uint64_t i, std::uint64_t j) const {
    if (m_ == 1) {
        std::uint64_t s = i + j;
        return s >= q_ ? s - q_ : s;
    }
    std::uint64_t out = 0, scale = 1;
    for (std::size_t k = 0; k < m_; ++k) {
        std::uint64_t di = i % p_, dj = j % p_;
        std::uint64_t s = di + dj;
        if (s >= p_) s -= p_;
        out += s * scale;
        scale *= p_;
        i /= p_;
        j /= p_;
    }
    return out;
}

std::uint64_t FieldSpec::sub_index(std::uint64_t i, std::uint64_t j) const {
    if (m_ == 1) {
        return i >= j ? i - j : i + q_ - j;
    }
    std::uint64_t out = 0, scale = 1;
    for (std::size_t k = 0; k < m_; ++k) {
        std::uint64_t di = i % p_, dj = j % p_;
        std::uint64_t s = di + p_ - dj;
        if (s >= p_) s -= p_;
        out += s * scale;
        scale *= p_;
        i /= p_;
        j /= p_;
    }
    return out;
}

std::uint64_t FieldSpec::neg_index(std::uint64_t i) const { return sub_index(0, i); }

std::uint64_t FieldElement::index() const {
    std::uint64_t out = 0, scale = 1;
    const std::uint64_t p = spec_->p();
    for (std::size_t i = 0; i < spec_->m(); ++i) {
        out += c_[i] * scale;
        scale *= p;
    }
    return out;
}

bool FieldElement::is_zero() const {
    for (std::size_t i = 0; i < spec_->m(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

std::string FieldElement::str() const {
    std::string out = std::to_string(c_[0]);
    for (std::size_t i = 1; i < spec_->m(); ++i) out += ":" + std::to_string(c_[i]);
    return out;
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    if (a.spec_ == nullptr) throw FieldMismatch();
    return a.spec_->add(a, b);
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    if (a.spec_ == nullptr) throw FieldMismatch();
    return a.spec_->sub(a, b);
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    if (a.spec_ == nullptr) throw FieldMismatch();
    return a.spec_->mul(a, b);
}

FieldElement FieldElement::operator-() const {
    if (spec_ == nullptr) throw FieldMismatch();
    return spec_->neg(*this);
}

bool operator==(const FieldElement& a, const FieldElement& b) {
    if (a.spec_ == nullptr || b.spec_ == nullptr) return a.spec_ == b.spec_;
    if (!a.spec_->same_as(*b.spec_)) return false;
    for (std::size_t i = 0; i < a.spec_->m(); ++i)
        if (a.c_[i] != b.c_[i]) return false;
    return true;
}

}  // namespace distlab
