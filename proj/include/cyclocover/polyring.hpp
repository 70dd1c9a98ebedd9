#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cyclocover/gf.hpp"

// Polynomials over F_q, factorization of x^n - 1 via q-cyclotomic cosets,
// minimal polynomials, power-coefficient rows, and the CRT split/lift between
// F_q[x]/(x^n - 1) and its components.
namespace cyclocover::polyring {

struct PolyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonCoprime : PolyError {
    using PolyError::PolyError;
};
struct ReduciblePolynomial : PolyError {
    using PolyError::PolyError;
};
struct LengthMismatch : PolyError {
    using PolyError::PolyError;
};

// Coefficients ascending, no trailing zeros; zero polynomial = empty coeffs.
struct Poly {
    gf::FieldPtr ctx;
    std::vector<gf::Elem> coeffs;

    std::int64_t degree() const { return static_cast<std::int64_t>(coeffs.size()) - 1; }
    bool is_zero() const { return coeffs.empty(); }
    bool monic() const { return !coeffs.empty() && coeffs.back() == 1; }
    bool operator==(const Poly& o) const { return coeffs == o.coeffs; }
};

Poly poly_make(gf::FieldPtr ctx, std::vector<gf::Elem> coeffs);  // trims
Poly poly_zero(gf::FieldPtr ctx);
Poly poly_x_pow(gf::FieldPtr ctx, std::size_t e, gf::Elem c = 1);  // c * x^e
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
// Quotient and remainder; b nonzero.
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);
Poly poly_mod(const Poly& a, const Poly& b);
Poly poly_gcd(Poly a, Poly b);  // monic gcd
Poly poly_pow(const Poly& a, std::uint64_t e);
Poly poly_powmod(const Poly& a, std::uint64_t e, const Poly& m);
// Inverse of a modulo m (extended Euclid); gcd(a, m) must be a unit.
Poly poly_invmod(const Poly& a, const Poly& m);
gf::Elem poly_eval(const Poly& a, gf::Elem x);
bool poly_irreducible(const Poly& f);  // Rabin's test

// Machine form "c0 + c1*x + ... (mod q)" with every coefficient listed.
std::string poly_text(const Poly& a);
// Human form, descending, zero terms skipped; signed_mode prints residues
// above q/2 as negatives (prime fields).
std::string poly_human(const Poly& a, bool signed_mode = false);
std::vector<std::uint64_t> poly_json_coeffs(const Poly& a);  // [c0..cd]

// Partition of Z_n into orbits of multiplication by q; cosets sorted
// ascending, ordered by minimum.
std::vector<std::vector<std::uint64_t>> cyclotomic_cosets(std::uint64_t q, std::uint64_t n);

struct BaseFactor {
    Poly poly;                        // monic irreducible over F_q
    std::uint64_t multiplicity;       // p^e with n = p^e * n'
    std::vector<std::uint64_t> coset; // exponent coset mod n'
};

struct Factorization {
    std::uint64_t q = 0, n = 0;
    std::uint64_t p_power = 1;  // p^e
    std::uint64_t n_prime = 0;  // n / p^e, coprime to p
    std::vector<BaseFactor> base_factors;
};

// x^n - 1 over F_q: one monic irreducible per q-cyclotomic coset mod n', each
// with multiplicity p^e. Factors ordered by minimum coset element. The
// product is re-multiplied and verified against x^n - 1.
Factorization factor_xn_minus_1(std::uint64_t q, std::uint64_t n);

// Minimal polynomial of omega over the subfield of order base_q inside ctx.
Poly minimal_poly(const gf::FieldPtr& ctx, gf::Elem omega, std::uint64_t base_q);

// Coefficients of x^i mod f in the basis {1, omega, ..., omega^{d-1}}, as a
// row of d base-field residues. f must be irreducible.
std::vector<gf::Elem> power_coeffs(const Poly& f, std::uint64_t i);

// Isomorphism between F_q[x]/(x^n - 1) and the product of its components:
// split(v)[i] = v mod f_i^{mult}; lift is the CRT inverse.
std::vector<Poly> crt_split(const std::vector<gf::Elem>& v, const Factorization& fac);
std::vector<gf::Elem> crt_lift(const std::vector<Poly>& residues, const Factorization& fac);

}  // namespace cyclocover::polyring
