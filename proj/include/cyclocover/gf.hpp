#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

// Arithmetic in small finite fields F_{p^k}: construction with a canonical
// modulus, log/antilog tables for small orders, Frobenius, trace, discrete
// logs, normal elements and trace-dual bases.
namespace cyclocover::gf {

struct FieldError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonPrimeCharacteristic : FieldError {
    using FieldError::FieldError;
};
struct TableBudgetExceeded : FieldError {
    using FieldError::FieldError;
};
struct DivisionByZero : FieldError {
    using FieldError::FieldError;
};
struct MixedContexts : FieldError {
    using FieldError::FieldError;
};
struct NonDivisorSubfield : FieldError {
    using FieldError::FieldError;
};
struct ZeroArgument : FieldError {
    using FieldError::FieldError;
};
struct DependentBasis : FieldError {
    using FieldError::FieldError;
};

// An element is its index: sum c_i * p^i over the power-basis coefficients.
// Index order coincides with comparing coefficient vectors from the highest
// degree down, which is the canonical order used for every "smallest element"
// choice in this library.
using Elem = std::uint64_t;

class FieldCtx;
using FieldPtr = std::shared_ptr<const FieldCtx>;

class FieldCtx {
public:
    // Canonical field of order p^k. The modulus is the smallest monic
    // irreducible of degree k over F_p, the generator the smallest primitive
    // element. Results are cached process-wide; contexts are immutable.
    static FieldPtr make(std::uint64_t p, std::uint32_t k);

    std::uint64_t p() const { return p_; }
    std::uint32_t k() const { return k_; }
    std::uint64_t q() const { return q_; }
    // Monic modulus, ascending coefficients, length k+1. For k = 1 this is x.
    const std::vector<std::uint64_t>& modulus() const { return modulus_; }
    Elem generator() const { return generator_; }
    bool has_tables() const { return !log_.empty(); }

    std::vector<std::uint64_t> coeffs(Elem a) const;
    Elem from_coeffs(const std::vector<std::uint64_t>& c) const;

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    Elem inv(Elem a) const;
    Elem pow(Elem a, std::uint64_t e) const;
    // x -> x^p; applying it k times is the identity.
    Elem frobenius(Elem a) const { return pow(a, p_); }
    Elem frobenius_iter(Elem a, std::uint64_t times) const;

    // Exponent e with generator^e = a, reduced mod q-1.
    std::uint64_t dlog(Elem a) const;
    Elem antilog(std::uint64_t e) const;

    // Tr_{F_{p^k} / F_{p^sub_degree}}: sum of the p^sub_degree-power
    // conjugates. sub_degree must divide k.
    Elem trace(Elem a, std::uint32_t sub_degree = 1) const;

    // Scalar embedding F_p -> F_{p^k} (constant polynomials).
    Elem scalar(std::uint64_t c) const { return c % p_; }

    std::string describe() const;  // "F_{p^k}" for diagnostics

private:
    FieldCtx() = default;

    std::uint64_t p_ = 0;
    std::uint32_t k_ = 0;
    std::uint64_t q_ = 0;
    std::vector<std::uint64_t> modulus_;
    Elem generator_ = 0;
    std::vector<std::uint32_t> log_;      // index 0 unused
    std::vector<std::uint64_t> antilog_;  // g^i for i < q-1

    Elem mul_direct(Elem a, Elem b) const;
};

// Normal element gamma: the conjugates {gamma^{p^i}} form a basis over F_p.
// to_normal maps standard (power-basis) coordinates to normal-basis
// coordinates; from_normal is its inverse. Both are k x k over F_p.
struct NormalBasis {
    Elem gamma;
    std::vector<std::vector<std::uint64_t>> to_normal;
    std::vector<std::vector<std::uint64_t>> from_normal;
};

// Smallest gamma whose conjugate matrix is invertible.
NormalBasis normal_element(const FieldCtx& ctx);

// Dual basis w.r.t. the absolute trace: Tr(basis[i] * dual[j]) = delta_ij.
std::vector<Elem> dual_basis(const FieldCtx& ctx, const std::vector<Elem>& basis);

// Embedding of F_{p^k} into F_{p^{k*m}}, with a lookup-based inverse for the
// subfield image. The image of x is the smallest root of the base modulus.
class Embedding {
public:
    Embedding(FieldPtr base, FieldPtr big);

    const FieldPtr& base() const { return base_; }
    const FieldPtr& big() const { return big_; }
    Elem map(Elem a) const;
    // Inverse for elements of the subfield image; throws MixedContexts
    // otherwise.
    Elem down(Elem a) const;
    bool in_subfield(Elem a) const;

private:
    FieldPtr base_, big_;
    std::vector<Elem> root_powers_;               // image of x^i, i < k
    std::vector<std::pair<Elem, Elem>> down_map_; // sorted (image, preimage)
};

// Number-theory helpers shared across modules.
bool is_prime_u64(std::uint64_t n);
std::vector<std::pair<std::uint64_t, std::uint32_t>> factor_u64(std::uint64_t n);
std::uint64_t pow_mod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m);
std::uint64_t mul_order_mod(std::uint64_t a, std::uint64_t m);  // ord_m(a), gcd(a,m)=1
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
// Decompose a prime power q = p^k; throws NonPrimeCharacteristic otherwise.
std::pair<std::uint64_t, std::uint32_t> prime_power_split(std::uint64_t q);
FieldPtr field_from_order(std::uint64_t q);

}  // namespace cyclocover::gf
