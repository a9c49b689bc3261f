#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "distlab/errors.hpp"

namespace distlab {

class FieldSpec;
using FieldPtr = std::shared_ptr<const FieldSpec>;

/// Extension degrees above this cannot be certified irreducible by the
/// exhaustive root/factor check, so make_field rejects them.
inline constexpr std::size_t kMaxExtensionDegree = 4;

/// Largest field order in scope.
inline constexpr std::uint64_t kMaxFieldOrder = 1'000'000;

/// An element of F_q = F_p[t]/(f), stored as the canonical coefficient
/// vector (coeffs[i] is the t^i coefficient, reduced mod p). Elements are
/// plain values; they keep a pointer to their FieldSpec for mismatch checks
/// but do not own it.
class FieldElement {
public:
    FieldElement() = default;

    const FieldSpec& field() const { return *spec_; }
    bool has_field() const { return spec_ != nullptr; }

    std::uint32_t coeff(std::size_t i) const { return c_[i]; }

    /// Position of this element in enumeration order: sum of coeffs[i] * p^i.
    std::uint64_t index() const;

    bool is_zero() const;

    /// "c0" for prime fields, "c0:c1:...:c(m-1)" for extensions.
    std::string str() const;

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    FieldElement operator-() const;

    friend bool operator==(const FieldElement& a, const FieldElement& b);
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

private:
    friend class FieldSpec;

    const FieldSpec* spec_ = nullptr;
    std::array<std::uint32_t, kMaxExtensionDegree> c_{};
};

/// Immutable description of F_q, q = p^m, p an odd prime. All arithmetic on
/// elements goes through the owning FieldSpec; operations are pure and the
/// object is safe to share read-only across threads.
class FieldSpec : public std::enable_shared_from_this<FieldSpec> {
public:
    /// Validates p (odd prime, trial division), m >= 1 and builds the field.
    /// When m > 1 and no modulus is given, picks the lexicographically first
    /// monic irreducible of degree m, so construction is deterministic.
    /// Throws NonPrime, EvenCharacteristic, ReducibleModulus, TooLarge.
    static FieldPtr make(std::uint64_t p, std::size_t m,
                         std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

    /// Parses "q" (prime) or "p^m".
    static FieldPtr parse(std::string_view spec,
                          std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

    std::uint64_t p() const { return p_; }
    std::size_t m() const { return m_; }
    std::uint64_t q() const { return q_; }
    int residue_mod4() const { return static_cast<int>(q_ % 4); }

    /// Monic modulus polynomial, degree m, coefficient vector of length m+1.
    /// For m = 1 this is the (ignored) polynomial t.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    /// True when the default deterministic modulus search would have chosen
    /// the stored modulus.
    bool has_default_modulus() const { return default_modulus_; }

    /// "q" for prime fields, "p^m" otherwise.
    std::string spec_string() const;

    bool same_as(const FieldSpec& other) const;

    FieldElement zero() const { return from_index(0); }
    FieldElement one() const { return from_index(1); }

    /// Element at a given enumeration position (base-p digits of idx).
    FieldElement from_index(std::uint64_t idx) const;

    /// Builds an element from arbitrary integer coefficients, reducing mod p.
    FieldElement from_coeffs(const std::vector<std::int64_t>& coeffs) const;

    /// Scalar n mapped into the field (n mod p in the prime subfield).
    FieldElement from_integer(std::int64_t n) const;

    /// All q elements in enumeration order; position 0 is zero. The order is
    /// a pure function of (p, m), stable across runs.
    std::vector<FieldElement> elements() const;

    FieldElement add(const FieldElement& a, const FieldElement& b) const;
    FieldElement sub(const FieldElement& a, const FieldElement& b) const;
    FieldElement neg(const FieldElement& a) const;
    FieldElement mul(const FieldElement& a, const FieldElement& b) const;
    FieldElement square(const FieldElement& a) const { return mul(a, a); }
    FieldElement pow(FieldElement base, std::uint64_t exp) const;

    /// True iff a = b^2 for some b; decided by a^((q-1)/2), with 0 -> true.
    bool is_square(const FieldElement& a) const;

    // Index-level group operations in (F_q, +) = (Z_p)^m. These avoid
    // materializing elements in counting kernels.
    std::uint64_t add_index(std::uint64_t i, std::uint64_t j) const;
    std::uint64_t sub_index(std::uint64_t i, std::uint64_t j) const;
    std::uint64_t neg_index(std::uint64_t i) const;

private:
    FieldSpec() = default;

    void check_owned(const FieldElement& a) const;
    void check_pair(const FieldElement& a, const FieldElement& b) const;

    std::uint64_t p_ = 0;
    std::size_t m_ = 0;
    std::uint64_t q_ = 0;
    bool default_modulus_ = false;
    std::vector<std::uint32_t> modulus_;
    // reduction_[j] = t^(m+j) mod f, for j = 0 .. m-2 (used by mul).
    std::vector<std::array<std::uint32_t, kMaxExtensionDegree>> reduction_;
};

/// Exhaustive-root/factor irreducibility test over Z_p for degree <= 4.
/// Exposed for tests; coeffs has length deg+1 and must be monic.
bool is_irreducible_mod_p(std::uint64_t p, const std::vector<std::uint32_t>& coeffs);

}  // namespace distlab
