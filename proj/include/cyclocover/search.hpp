#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cyclocover/certs.hpp"
#include "cyclocover/cover.hpp"
#include "cyclocover/criteria.hpp"

// Optimized exhaustive searches: the codimension-1 covering search over
// canonical dual candidates and the codimension-2 non-existence search,
// built on orbit canonicalization and shift-bitmask intersection.
namespace cyclocover::search {

struct SearchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BudgetExceeded : SearchError {
    using SearchError::SearchError;
};
struct MemoryBudgetExceeded : SearchError {
    using SearchError::SearchError;
};

// One representative per {scalar x shift} orbit of nonzero vectors.
struct OrbitRep {
    std::vector<gf::Elem> vec;  // lex-min over the orbit
    std::uint64_t orbit_size = 0;
    std::uint64_t stabilizer = 0;  // group elements fixing vec
};

inline constexpr std::uint64_t kDefaultVectorBudget = 1ULL << 26;

// Number of orbits of F_q^n (zero included) under shifts, optionally fused
// with scalar multiplication, by the orbit-counting lemma.
std::uint64_t orbit_count_burnside(std::uint64_t q, std::uint64_t n,
                                   bool with_scalars = true);

std::vector<OrbitRep> orbit_representatives(std::uint64_t q, std::uint64_t n,
                                            std::uint64_t budget = kDefaultVectorBudget);

// All q^{dim W} - 1 nonzero combinations of the basis of W; one per
// projective class when projective is set.
std::vector<std::vector<gf::Elem>> candidate_duals(
    std::uint64_t q, std::uint64_t n, const cover::Subspace& W,
    bool projective = false, std::uint64_t budget = kDefaultVectorBudget);

// Bit i set iff inner(shift(w, i), alpha) = 0; n <= 32.
using ShiftMask = std::uint32_t;

// Direct-loop oracle for one mask.
ShiftMask shift_mask(std::uint64_t q, std::uint64_t n,
                     const std::vector<gf::Elem>& w,
                     const std::vector<gf::Elem>& alpha);

struct MaskTable {
    std::uint64_t n = 0;
    std::size_t rep_count = 0, cand_count = 0;
    std::vector<ShiftMask> bits;  // row-major: rep index major

    ShiftMask at(std::size_t rep, std::size_t cand) const {
        return bits[rep * cand_count + cand];
    }
};

MaskTable mask_table(std::uint64_t q, std::uint64_t n,
                     const std::vector<std::vector<gf::Elem>>& reps,
                     const std::vector<std::vector<gf::Elem>>& candidates,
                     std::uint64_t mask_memory_mb = 512);

struct SearchConfig {
    unsigned threads = 1;
    std::uint64_t vector_budget = kDefaultVectorBudget;
    std::uint64_t mask_memory_mb = 512;
    std::uint64_t block = 2048;  // reps per block in the pair sweep
    bool progress = false;       // progress lines on standard error
};

// First covering dual alpha in canonical order, as a CoveringWitness for
// V_alpha, or nothing when the exhaustive scan rules codimension 1 out.
std::optional<certs::Certificate> codim1_search(std::uint64_t q, std::uint64_t n,
                                                const SearchConfig& cfg = {});

// Every canonical dual alpha whose V_alpha is cyclically covering.
std::vector<std::vector<gf::Elem>> covering_duals(std::uint64_t q, std::uint64_t n,
                                                  const SearchConfig& cfg = {});

// Candidate pool for the pair search; covering_precheck false marks a pool
// whose candidates are uniformly non-covering (pairs pruned wholesale).
struct DualPool {
    std::string label;
    std::vector<std::vector<gf::Elem>> candidates;
    std::optional<bool> covering_precheck;
};

struct PairCounts {
    std::size_t pool_a = 0, pool_b = 0;
    std::uint64_t raw_pairs = 0;
    std::uint64_t dependent_skipped = 0;
    std::uint64_t precheck_pruned = 0;
    std::uint64_t pairs_checked = 0;
};

struct Codim2Report {
    bool found = false;
    std::optional<std::pair<std::vector<gf::Elem>, std::vector<gf::Elem>>> pair;
    certs::Certificate certificate;  // CoveringWitness or ExhaustiveNonExistence
    std::vector<PairCounts> combinations;
    std::uint64_t reps_scanned = 0;
};

// Pair sweep with reps outermost: a pair (alpha, beta) of independent duals
// covers iff every orbit rep has mask(w, alpha) & mask(w, beta) != 0.
Codim2Report codim2_nonexistence(std::uint64_t q, std::uint64_t n,
                                 const std::vector<DualPool>& pools,
                                 const SearchConfig& cfg = {});

// Escalation hook for hq_resolve: exhaustive codimension-1 scan, then the
// codimension-2 pair search over invariant-component pools (pool
// completeness is certified by the covering-dual support scan).
criteria::EscalateFn make_escalator(const SearchConfig& cfg = {});

}  // namespace cyclocover::search
