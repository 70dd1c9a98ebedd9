#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "cyclocover/certs.hpp"
#include "cyclocover/cover.hpp"
#include "cyclocover/polyring.hpp"

// Theorem-backed decision procedures: the component criterion deciding
// h_q(n) = 0, number-theoretic sufficient conditions, transfer theorems,
// prime-power reductions, and the orchestrator combining them.
namespace cyclocover::criteria {

struct CriteriaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotAFactor : CriteriaError {
    using CriteriaError::CriteriaError;
};
struct NotOddPrime : CriteriaError {
    using CriteriaError::CriteriaError;
};
struct BadParameters : CriteriaError {
    using CriteriaError::CriteriaError;
};
struct EvenInput : CriteriaError {
    using CriteriaError::CriteriaError;
};
struct ZeroAlpha : CriteriaError {
    using CriteriaError::CriteriaError;
};
struct NonCoprime : CriteriaError {
    using CriteriaError::CriteriaError;
};
struct BudgetExceeded : CriteriaError {
    using CriteriaError::CriteriaError;
};

inline constexpr std::uint64_t kDefaultTupleBudget = 1ULL << 26;

// Verdict for one irreducible component of x^n - 1: does F_q[x]/(f) admit a
// codimension-1 sigma-covering? Decided by scanning every tuple in (F_q^*)^d
// against the power-coefficient rows for i in [d, n].
struct ComponentReport {
    polyring::Poly factor;
    std::vector<std::vector<gf::Elem>> rows;  // power_coeffs rows, i = d..n
    bool admits = false;
    std::optional<std::vector<gf::Elem>> witness;  // bad tuple when !admits
    std::uint64_t tuples_checked = 0;
};

ComponentReport component_codim1_check(std::uint64_t q, std::uint64_t n,
                                       const polyring::Poly& f,
                                       std::uint64_t budget = kDefaultTupleBudget);

// h_q(n) = 0 iff no component admits (after stripping the p-power part of n).
// Returns Exact(0) or Bounds(1, floor(log_q n)).
certs::HqResult hq_zero_decision(std::uint64_t q, std::uint64_t n,
                                 std::uint64_t budget = kDefaultTupleBudget);

// The primitive-root family: h_q(l^t) = 0 and h_q(2*l^t) = 0 when q is a
// primitive root modulo l^t, q != 2 and q is not the square of a prime.
struct PrimitiveRootReport {
    std::uint64_t ord = 0;       // ord_{l^t}(q)
    std::uint64_t phi = 0;       // phi(l^t)
    bool primitive_root = false;
    bool theorem_applies = false;
    std::vector<certs::Certificate> certificates;  // filled when applicable
};

PrimitiveRootReport primitive_root_family(std::uint64_t q, std::uint64_t ell,
                                          std::uint32_t t);

// True iff the (q-1)*n values ((q^t-1)/(q-1))*i + N*j are pairwise distinct
// modulo q^t - 1. Requires n*N = q^t - 1.
bool residue_system_check(std::uint64_t q, std::uint32_t t, std::uint64_t N,
                          std::uint64_t n);

// Lower bound h_q(n) >= m - ord_N(q) with m = ord_n(q), N = (q^m - 1)/n,
// valid when gcd(n, N) = 1; plus the m = 2 exactness branch.
struct OrdBoundReport {
    std::uint64_t m = 0, N = 0;
    std::optional<std::uint32_t> lower_bound;  // set when gcd(n, N) = 1
    std::optional<bool> h_is_one;              // set when nN = q^2-1 and n > q
};

OrdBoundReport ord_lower_bound(std::uint64_t q, std::uint64_t n);

// Memo of resolved instances, keyed by (q, n).
class ResultStore {
public:
    void put(const certs::HqResult& r) { map_[{r.q, r.n}] = r; }
    const certs::HqResult* get(std::uint64_t q, std::uint64_t n) const {
        auto it = map_.find({q, n});
        return it == map_.end() ? nullptr : &it->second;
    }

private:
    std::map<std::pair<std::uint64_t, std::uint64_t>, certs::HqResult> map_;
};

// h_q(n) = 0 with q and n odd implies h_q(2n) = 0. Returns the result for
// (q, 2n) when a certified zero for (q, n) is in the store.
std::optional<certs::HqResult> transfer_2n(std::uint64_t q, std::uint64_t n,
                                           const ResultStore& store);

// h_q(mn) <= m-1 implies h_{q^m}(n) = 0, via the m-fold shift tau_3.
std::optional<certs::HqResult> qm_reduction(std::uint64_t q, std::uint64_t m,
                                            std::uint64_t n, const ResultStore& store);

// Tightest bounds from the closed-form lemma clauses, with provenance naming
// each clause fired. Always includes the floor(log_q n) upper bound.
certs::HqResult known_value_oracle(std::uint64_t q, std::uint64_t n);

// V_alpha criterion over F_{q^n} (q prime): alpha given in normal-basis
// coordinates; decides whether the trace hyperplane V_alpha is cyclically
// covering via the conjugate-rank tuple scan.
struct ValphaReport {
    std::uint64_t t = 0;  // rank of the conjugate set over F_q
    bool covering = false;
    bool corollary_shortcut = false;  // span inside F_q^* . conjugates
    std::optional<std::vector<gf::Elem>> witness;  // bad tuple when !covering
};

ValphaReport valpha_covering_check(std::uint64_t q, std::uint64_t n,
                                   const std::vector<gf::Elem>& alpha_normal,
                                   std::uint64_t budget = kDefaultTupleBudget);

// Escalation hook: given (q, n, lo, hi) returns a tightened result or nothing.
using EscalateFn = std::function<std::optional<certs::HqResult>(
    std::uint64_t, std::uint64_t, std::uint32_t, std::uint32_t)>;

struct ResolveConfig {
    std::uint64_t tuple_budget = kDefaultTupleBudget;
    std::uint64_t brute_budget = cover::kDefaultBruteBudget;
    bool allow_brute = true;
    EscalateFn escalate;  // optional search-module hook
};

// Orchestrator: oracle, component criterion, bound theorems, transfer and
// reduction rules, optional escalation, brute force for tiny instances.
// Never returns Exact without a certificate chain.
certs::HqResult hq_resolve(std::uint64_t q, std::uint64_t n, ResultStore& store,
                           const ResolveConfig& cfg = {});

}  // namespace cyclocover::criteria
