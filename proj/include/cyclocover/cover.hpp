#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cyclocover/certs.hpp"
#include "cyclocover/gf.hpp"

// Vectors and subspaces of F_q^n, the cyclic shift tau, direct covering
// verification, the tau-invariant decomposition ker f_i(tau), the m-fold
// shift tau_3, and exact brute force for tiny instances.
namespace cyclocover::cover {

struct CoverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct LengthMismatch : CoverError {
    using CoverError::CoverError;
};
struct BudgetExceeded : CoverError {
    using CoverError::CoverError;
};
struct NonCoprime : CoverError {
    using CoverError::CoverError;
};

struct VecFq {
    gf::FieldPtr ctx;
    std::vector<gf::Elem> entries;

    std::uint64_t n() const { return entries.size(); }
    bool operator==(const VecFq& o) const { return entries == o.entries; }
};

// Rotate entries forward by i positions (tau^i; entry j moves to j+i).
VecFq shift(const VecFq& v, std::int64_t i);
gf::Elem inner(const VecFq& a, const VecFq& b);

// Basis kept in reduced row-echelon form; rows nonzero.
struct Subspace {
    gf::FieldPtr ctx;
    std::uint64_t n = 0;
    std::vector<std::vector<gf::Elem>> basis;

    std::uint64_t dim() const { return basis.size(); }
};

Subspace subspace_from_rows(gf::FieldPtr ctx, std::uint64_t n,
                            const std::vector<std::vector<gf::Elem>>& rows);
bool contains(const Subspace& s, const VecFq& v);

inline constexpr std::uint64_t kDefaultEnumBudget = 1ULL << 24;

// Covering under the cyclic group of shifts: CoveringWitness, or
// NonCoveringWitness with the lex-smallest missed vector.
certs::Certificate is_cyclic_covering(const Subspace& s,
                                      std::uint64_t budget = kDefaultEnumBudget);

// Covering under the group generated by the m-fold shift of F_q^{mn}.
certs::Certificate is_tau3_covering(const Subspace& s, std::uint64_t m, std::uint64_t n,
                                    std::uint64_t budget = kDefaultEnumBudget);

// F_q^n = direct sum of W_i = ker f_i(tau), in factor order; gcd(q,n)=1.
std::vector<Subspace> decompose_invariant(std::uint64_t q, std::uint64_t n);

inline constexpr std::uint64_t kDefaultBruteBudget = 1ULL << 20;

// Exact h_q(n) by levelwise exhaustion over canonical dual tuples.
certs::HqResult hq_bruteforce(std::uint64_t q, std::uint64_t n,
                              std::uint64_t budget = kDefaultBruteBudget);

}  // namespace cyclocover::cover
