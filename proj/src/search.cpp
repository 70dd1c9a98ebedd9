#include "cyclocover/search.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdio>
#include <set>
#include <thread>

#include <json.hpp>

namespace cyclocover::search {

using gf::Elem;
using gf::FieldCtx;
using gf::FieldPtr;

namespace {

std::uint64_t checked_pow(std::uint64_t q, std::uint64_t n, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
        if (r > cap / q) return cap + 1;
        r *= q;
    }
    return r;
}

// entries[0] is the most significant digit, so ascending key = lex order.
std::vector<Elem> decode_lex(std::uint64_t key, std::uint64_t q, std::uint64_t n) {
    std::vector<Elem> v(n);
    for (std::uint64_t i = n; i-- > 0;) {
        v[i] = static_cast<Elem>(key % q);
        key /= q;
    }
    return v;
}

bool lex_less(const std::vector<Elem>& a, const std::vector<Elem>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::uint64_t rref(const FieldCtx& f, std::vector<std::vector<Elem>>& rows) {
    const std::uint64_t n = rows.empty() ? 0 : rows[0].size();
    std::uint64_t rank = 0;
    for (std::uint64_t col = 0; col < n && rank < rows.size(); ++col) {
        std::uint64_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        Elem inv = f.inv(rows[rank][col]);
        for (std::uint64_t j = 0; j < n; ++j) rows[rank][j] = f.mul(inv, rows[rank][j]);
        for (std::uint64_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            Elem c = rows[r][col];
            for (std::uint64_t j = 0; j < n; ++j)
                rows[r][j] = f.sub(rows[r][j], f.mul(c, rows[rank][j]));
        }
        ++rank;
    }
    rows.resize(rank);
    return rank;
}

// Kernel basis of the linear map x -> (inner(x, row))_rows.
std::vector<std::vector<Elem>> nullspace(const FieldCtx& f, std::uint64_t n,
                                         std::vector<std::vector<Elem>> rows) {
    rref(f, rows);
    std::vector<std::int64_t> pivot_of_col(n, -1);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        std::uint64_t col = 0;
        while (rows[r][col] == 0) ++col;
        pivot_of_col[col] = static_cast<std::int64_t>(r);
    }
    std::vector<std::vector<Elem>> basis;
    for (std::uint64_t j = 0; j < n; ++j) {
        if (pivot_of_col[j] >= 0) continue;
        std::vector<Elem> v(n, 0);
        v[j] = 1;
        for (std::uint64_t c = 0; c < n; ++c)
            if (pivot_of_col[c] >= 0)
                v[c] = f.sub(0, rows[static_cast<std::size_t>(pivot_of_col[c])][j]);
        basis.push_back(std::move(v));
    }
    return basis;
}

nlohmann::json vec_json(const std::vector<Elem>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (Elem e : v) a.push_back(e);
    return a;
}

nlohmann::json rows_json(const std::vector<std::vector<Elem>>& rows) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& r : rows) a.push_back(vec_json(r));
    return a;
}

// Bit-plane packing for q <= 3: bit k of p1/p2 marks entries equal to 1/2.
struct Packed {
    std::uint32_t p1 = 0, p2 = 0;
};

struct Engine {
    std::uint64_t q = 0, n = 0;
    FieldPtr ctx;
    bool fast = false;                     // q <= 3 packed planes
    std::vector<Packed> preps;             // fast path, ascending lex
    std::vector<std::vector<Elem>> gvecs;  // generic path, ascending lex

    std::size_t size() const { return fast ? preps.size() : gvecs.size(); }

    std::uint32_t mask_limit() const {
        return (n == 32) ? 0xffffffffu : ((1u << n) - 1);
    }

    std::uint32_t rotl(std::uint32_t m, std::uint64_t s) const {
        s %= n;
        if (s == 0) return m;
        return ((m << s) | (m >> (n - s))) & mask_limit();
    }

    std::uint32_t rotr(std::uint32_t m, std::uint64_t s) const {
        return rotl(m, n - s % n);
    }

    // Lex comparison on packed digit vectors; entry 0 is most significant,
    // so the lowest differing bit index decides.
    int cmp(Packed a, Packed b) const {
        std::uint32_t diff = (a.p1 ^ b.p1) | (a.p2 ^ b.p2);
        if (diff == 0) return 0;
        unsigned k = static_cast<unsigned>(std::countr_zero(diff));
        unsigned da = ((a.p1 >> k) & 1) + 2 * ((a.p2 >> k) & 1);
        unsigned db = ((b.p1 >> k) & 1) + 2 * ((b.p2 >> k) & 1);
        return da < db ? -1 : 1;
    }

    bool is_canonical(Packed v) const {
        for (Elem c = 1; c < q; ++c) {
            Packed s = (c == 1) ? v : Packed{v.p2, v.p1};
            for (std::uint64_t sh = 0; sh < n; ++sh) {
                if (c == 1 && sh == 0) continue;
                Packed t{rotl(s.p1, sh), rotl(s.p2, sh)};
                if (cmp(t, v) < 0) return false;
            }
        }
        return true;
    }

    // Stabilizer order in the scalar x shift group, 0 if not canonical.
    std::uint64_t canonical_stab(Packed v) const {
        std::uint64_t stab = 1;
        for (Elem c = 1; c < q; ++c) {
            Packed s = (c == 1) ? v : Packed{v.p2, v.p1};
            for (std::uint64_t sh = 0; sh < n; ++sh) {
                if (c == 1 && sh == 0) continue;
                Packed t{rotl(s.p1, sh), rotl(s.p2, sh)};
                int r = cmp(t, v);
                if (r < 0) return 0;
                if (r == 0) ++stab;
            }
        }
        return stab;
    }

    std::vector<Elem> decode_rep(std::size_t i) const {
        if (!fast) return gvecs[i];
        std::vector<Elem> v(n);
        for (std::uint64_t k = 0; k < n; ++k)
            v[k] = static_cast<Elem>(((preps[i].p1 >> k) & 1) + 2 * ((preps[i].p2 >> k) & 1));
        return v;
    }

    static Packed pack(const std::vector<Elem>& v) {
        Packed p;
        for (std::uint64_t k = 0; k < v.size(); ++k) {
            if (v[k] == 1) p.p1 |= (1u << k);
            if (v[k] == 2) p.p2 |= (1u << k);
        }
        return p;
    }
};

// Enumerate canonical nonzero vectors; with_stab also collects stabilizers.
Engine build_engine(std::uint64_t q, std::uint64_t n, std::uint64_t budget,
                    std::vector<std::uint64_t>* stabs = nullptr) {
    if (n < 1 || n > 32) throw SearchError("search: n out of range [1, 32]");
    Engine e;
    e.q = q;
    e.n = n;
    e.ctx = gf::field_from_order(q);
    e.fast = q <= 3;
    const std::uint64_t total = checked_pow(q, n, budget);
    if (total > budget) throw BudgetExceeded("search: q^n exceeds vector budget");
    if (e.fast) {
        std::vector<Elem> d(n, 0);
        Packed v;
        for (std::uint64_t key = 1; key < total; ++key) {
            std::uint64_t i = n - 1;
            for (;;) {
                const std::uint32_t bit = 1u << i;
                if (d[i] == 1) v.p1 &= ~bit;
                if (d[i] == 2) v.p2 &= ~bit;
                d[i] = static_cast<Elem>((d[i] + 1) % q);
                if (d[i] == 1) v.p1 |= bit;
                if (d[i] == 2) v.p2 |= bit;
                if (d[i] != 0) break;
                --i;
            }
            if (stabs) {
                std::uint64_t s = e.canonical_stab(v);
                if (s) {
                    e.preps.push_back(v);
                    stabs->push_back(s);
                }
            } else if (e.is_canonical(v)) {
                e.preps.push_back(v);
            }
        }
    } else {
        if (total > (1ULL << 22))
            throw BudgetExceeded("search: generic path limited to q^n <= 2^22");
        const FieldCtx& f = *e.ctx;
        std::vector<Elem> w(n);
        for (std::uint64_t key = 1; key < total; ++key) {
            std::vector<Elem> v = decode_lex(key, q, n);
            std::uint64_t stab = 1;
            bool canonical = true;
            for (Elem c = 1; c < q && canonical; ++c) {
                for (std::uint64_t sh = 0; sh < n; ++sh) {
                    if (c == 1 && sh == 0) continue;
                    for (std::uint64_t j = 0; j < n; ++j) w[(j + sh) % n] = f.mul(c, v[j]);
                    if (lex_less(w, v)) {
                        canonical = false;
                        break;
                    }
                    if (w == v) ++stab;
                }
            }
            if (canonical) {
                e.gvecs.push_back(std::move(v));
                if (stabs) stabs->push_back(stab);
            }
        }
    }
    return e;
}

// Rotated dual planes of one candidate: a1[i] bit k = [alpha_{(k+i) mod n} = 1].
struct PreppedCand {
    std::vector<Elem> vec;
    std::array<std::uint32_t, 32> a1{}, a2{};
};

PreppedCand prep_cand(const Engine& e, std::vector<Elem> alpha) {
    PreppedCand c;
    if (e.fast) {
        Packed p = Engine::pack(alpha);
        for (std::uint64_t i = 0; i < e.n; ++i) {
            c.a1[i] = e.rotr(p.p1, i);
            c.a2[i] = e.rotr(p.p2, i);
        }
    }
    c.vec = std::move(alpha);
    return c;
}

// mask bit i = [ <tau^i w, alpha> = 0 ].
ShiftMask mask_of(const Engine& e, std::size_t rep, const PreppedCand& c) {
    if (e.fast) {
        const std::uint32_t w1 = e.preps[rep].p1, w2 = e.preps[rep].p2;
        std::uint32_t m = 0;
        if (e.q == 2) {
            for (std::uint64_t i = 0; i < e.n; ++i)
                if (!(std::popcount(w1 & c.a1[i]) & 1)) m |= (1u << i);
        } else {
            for (std::uint64_t i = 0; i < e.n; ++i) {
                unsigned t = std::popcount(w1 & c.a1[i]) + std::popcount(w2 & c.a2[i]) +
                             2 * (std::popcount(w1 & c.a2[i]) + std::popcount(w2 & c.a1[i]));
                if (t % 3 == 0) m |= (1u << i);
            }
        }
        return m;
    }
    const FieldCtx& f = *e.ctx;
    const auto& w = e.gvecs[rep];
    std::uint32_t m = 0;
    for (std::uint64_t i = 0; i < e.n; ++i) {
        Elem s = 0;
        for (std::uint64_t k = 0; k < e.n; ++k) {
            std::uint64_t idx = k + i < e.n ? k + i : k + i - e.n;
            s = f.add(s, f.mul(w[k], c.vec[idx]));
        }
        if (s == 0) m |= (1u << i);
    }
    return m;
}

// Indices of canonical duals whose V_alpha covers every orbit rep. The
// recent-killer cache retires non-covering duals in O(1) typical time.
std::vector<std::size_t> covering_scan(const Engine& e, bool stop_first) {
    std::vector<std::size_t> out;
    const std::size_t total = e.size();
    std::array<std::size_t, 8> killers{};
    std::size_t nkillers = 0;
    for (std::size_t di = 0; di < total; ++di) {
        PreppedCand c = prep_cand(e, e.decode_rep(di));
        bool dead = false;
        for (std::size_t k = 0; k < nkillers; ++k) {
            if (mask_of(e, killers[k], c) == 0) {
                std::size_t hit = killers[k];
                for (std::size_t j = k; j > 0; --j) killers[j] = killers[j - 1];
                killers[0] = hit;
                dead = true;
                break;
            }
        }
        if (dead) continue;
        bool covering = true;
        for (std::size_t wi = 0; wi < total; ++wi) {
            if (mask_of(e, wi, c) == 0) {
                covering = false;
                if (nkillers < killers.size()) ++nkillers;
                for (std::size_t j = nkillers; j-- > 1;) killers[j] = killers[j - 1];
                killers[0] = wi;
                break;
            }
        }
        if (covering) {
            out.push_back(di);
            if (stop_first) return out;
        }
    }
    return out;
}

certs::Certificate codim1_witness_cert(const Engine& e, const std::vector<Elem>& alpha) {
    auto basis = nullspace(*e.ctx, e.n, {alpha});
    return certs::Certificate{
        "CoveringWitness",
        {{"q", e.q},
         {"n", e.n},
         {"codim", 1},
         {"duals", rows_json({alpha})},
         {"basis", rows_json(basis)},
         {"orbits_checked", e.size()},
         {"group_stride", 1}}};
}

Codim2Report codim2_core(const Engine& e, const std::vector<DualPool>& pools,
                         const SearchConfig& cfg) {
    if (pools.empty()) throw SearchError("codim2_nonexistence: empty pool list");
    const FieldCtx& f = *e.ctx;
    Codim2Report rep;

    // Flatten unpruned candidates; pruned pools only contribute counts.
    struct Cand {
        std::size_t pool;
        PreppedCand pc;
    };
    std::vector<Cand> cands;
    std::vector<std::size_t> base(pools.size(), 0);  // flat index of pool start
    std::vector<bool> pruned(pools.size(), false);
    for (std::size_t p = 0; p < pools.size(); ++p) {
        pruned[p] = pools[p].covering_precheck.has_value() && !*pools[p].covering_precheck;
        base[p] = cands.size();
        if (pruned[p]) continue;
        for (const auto& v : pools[p].candidates)
            cands.push_back({p, prep_cand(e, v)});
    }

    auto dependent = [&](const std::vector<Elem>& a, const std::vector<Elem>& b) {
        for (Elem c = 1; c < e.q; ++c) {
            bool eq = true;
            for (std::uint64_t k = 0; k < e.n && eq; ++k)
                eq = b[k] == f.mul(c, a[k]);
            if (eq) return true;
        }
        return false;
    };

    struct Pair {
        std::uint32_t a, b;       // flat candidate indices
        std::uint32_t combo;      // index into rep.combinations
    };
    std::vector<Pair> alive;
    for (std::size_t pa = 0; pa < pools.size(); ++pa) {
        for (std::size_t pb = pa; pb < pools.size(); ++pb) {
            PairCounts pc;
            pc.pool_a = pa;
            pc.pool_b = pb;
            const std::uint64_t ma = pools[pa].candidates.size();
            const std::uint64_t mb = pools[pb].candidates.size();
            pc.raw_pairs = (pa == pb) ? ma * (ma - 1) / 2 : ma * mb;
            if (pruned[pa] || pruned[pb]) {
                pc.precheck_pruned = pc.raw_pairs;
                rep.combinations.push_back(pc);
                continue;
            }
            const std::uint32_t combo = static_cast<std::uint32_t>(rep.combinations.size());
            for (std::uint64_t i = 0; i < ma; ++i) {
                const std::uint64_t jstart = (pa == pb) ? i + 1 : 0;
                for (std::uint64_t j = jstart; j < mb; ++j) {
                    const std::uint32_t ia = static_cast<std::uint32_t>(base[pa] + i);
                    const std::uint32_t ib = static_cast<std::uint32_t>(base[pb] + j);
                    if (dependent(cands[ia].pc.vec, cands[ib].pc.vec)) {
                        ++pc.dependent_skipped;
                        continue;
                    }
                    ++pc.pairs_checked;
                    alive.push_back({ia, ib, combo});
                }
            }
            rep.combinations.push_back(pc);
        }
    }

    // Reps outermost: per block compute all candidate masks, then refute
    // alive pairs whose mask intersection is empty. Ascending rep order
    // makes the first failing rep of each pair deterministic.
    const std::size_t total = e.size();
    const std::size_t ncand = cands.size();
    const std::size_t block = std::max<std::uint64_t>(1, cfg.block);
    std::vector<ShiftMask> mb(block * ncand);
    for (std::size_t r0 = 0; r0 < total && !alive.empty(); r0 += block) {
        const std::size_t r1 = std::min(total, r0 + block);
        auto fill = [&](std::size_t lo, std::size_t hi) {
            for (std::size_t r = lo; r < hi; ++r)
                for (std::size_t c = 0; c < ncand; ++c)
                    mb[(r - r0) * ncand + c] = mask_of(e, r, cands[c].pc);
        };
        if (cfg.threads <= 1) {
            fill(r0, r1);
        } else {
            std::vector<std::thread> ts;
            const std::size_t span = r1 - r0;
            const std::size_t chunk = (span + cfg.threads - 1) / cfg.threads;
            for (unsigned t = 0; t < cfg.threads; ++t) {
                std::size_t lo = r0 + t * chunk;
                std::size_t hi = std::min(r1, lo + chunk);
                if (lo < hi) ts.emplace_back(fill, lo, hi);
            }
            for (auto& t : ts) t.join();
        }
        for (std::size_t r = r0; r < r1 && !alive.empty(); ++r) {
            ++rep.reps_scanned;
            const ShiftMask* row = mb.data() + (r - r0) * ncand;
            alive.erase(std::remove_if(alive.begin(), alive.end(),
                                       [&](const Pair& p) {
                                           return (row[p.a] & row[p.b]) == 0;
                                       }),
                        alive.end());
        }
        if (cfg.progress)
            std::fprintf(stderr, "codim2: reps %zu/%zu, alive pairs %zu\n", r1, total,
                         alive.size());
    }

    nlohmann::json pools_j = nlohmann::json::array();
    for (std::size_t p = 0; p < pools.size(); ++p)
        pools_j.push_back({{"label", pools[p].label},
                           {"candidates", pools[p].candidates.size()},
                           {"pruned", static_cast<bool>(pruned[p])}});
    nlohmann::json combos_j = nlohmann::json::array();
    for (const auto& pc : rep.combinations)
        combos_j.push_back({{"pool_a", pools[pc.pool_a].label},
                            {"pool_b", pools[pc.pool_b].label},
                            {"raw_pairs", pc.raw_pairs},
                            {"dependent_skipped", pc.dependent_skipped},
                            {"precheck_pruned", pc.precheck_pruned},
                            {"pairs_checked", pc.pairs_checked}});

    if (!alive.empty()) {
        rep.found = true;
        const auto& a = cands[alive.front().a].pc.vec;
        const auto& b = cands[alive.front().b].pc.vec;
        rep.pair = {a, b};
        auto basis = nullspace(f, e.n, {a, b});
        rep.certificate = certs::Certificate{
            "CoveringWitness",
            {{"q", e.q},
             {"n", e.n},
             {"codim", 2},
             {"duals", rows_json({a, b})},
             {"basis", rows_json(basis)},
             {"orbits_checked", total},
             {"group_stride", 1},
             {"pools", pools_j}}};
    } else {
        rep.certificate = certs::Certificate{
            "ExhaustiveNonExistence",
            {{"q", e.q},
             {"n", e.n},
             {"codim", 2},
             {"orbit_reps", total},
             {"reps_scanned", rep.reps_scanned},
             {"pools", pools_j},
             {"combinations", combos_j},
             {"covering_pairs", 0}}};
    }
    return rep;
}

}  // namespace

std::uint64_t orbit_count_burnside(std::uint64_t q, std::uint64_t n, bool with_scalars) {
    // Orbit counting over the shift group, optionally fused with F_q^*:
    // fix(s, c) = q^gcd(n,s) when c^(n/gcd) = 1, else 1 (the zero vector).
    std::uint64_t sum = 0;
    for (std::uint64_t s = 0; s < n; ++s) {
        const std::uint64_t g = s == 0 ? n : gf::gcd_u64(n, s);
        const std::uint64_t fix = checked_pow(q, g, ~0ULL >> 1);
        if (with_scalars) {
            const std::uint64_t L = n / g;
            const std::uint64_t roots = gf::gcd_u64(L, q - 1);
            sum += roots * fix + (q - 1 - roots);
        } else {
            sum += fix;
        }
    }
    const std::uint64_t order = with_scalars ? n * (q - 1) : n;
    if (sum % order != 0) throw SearchError("orbit_count_burnside: non-integral count");
    return sum / order;
}

std::vector<OrbitRep> orbit_representatives(std::uint64_t q, std::uint64_t n,
                                            std::uint64_t budget) {
    std::vector<std::uint64_t> stabs;
    Engine e = build_engine(q, n, budget, &stabs);
    const std::uint64_t order = n * (q - 1);
    std::vector<OrbitRep> out;
    out.reserve(e.size());
    for (std::size_t i = 0; i < e.size(); ++i)
        out.push_back({e.decode_rep(i), order / stabs[i], stabs[i]});
    return out;
}

std::vector<std::vector<Elem>> candidate_duals(std::uint64_t q, std::uint64_t n,
                                               const cover::Subspace& W, bool projective,
                                               std::uint64_t budget) {
    const FieldCtx& f = *gf::field_from_order(q);
    const std::uint64_t d = W.dim();
    if (checked_pow(q, d, budget) > budget)
        throw BudgetExceeded("candidate_duals: q^dim exceeds budget");
    std::vector<Elem> c(d, 0);
    std::vector<std::vector<Elem>> out;
    for (;;) {
        std::uint64_t i = d;
        while (i-- > 0) {
            c[i] = static_cast<Elem>((c[i] + 1) % q);
            if (c[i] != 0) break;
            if (i == 0) return out;
        }
        if (projective) {
            Elem lead = 0;
            for (std::uint64_t j = 0; j < d; ++j)
                if (c[j] != 0) {
                    lead = c[j];
                    break;
                }
            if (lead != 1) continue;
        }
        std::vector<Elem> v(n, 0);
        for (std::uint64_t j = 0; j < d; ++j) {
            if (c[j] == 0) continue;
            for (std::uint64_t k = 0; k < n; ++k)
                v[k] = f.add(v[k], f.mul(c[j], W.basis[j][k]));
        }
        out.push_back(std::move(v));
    }
}

ShiftMask shift_mask(std::uint64_t q, std::uint64_t n, const std::vector<Elem>& w,
                     const std::vector<Elem>& alpha) {
    if (n > 32) throw SearchError("shift_mask: n out of range [1, 32]");
    const FieldCtx& f = *gf::field_from_order(q);
    ShiftMask m = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        Elem s = 0;
        for (std::uint64_t k = 0; k < n; ++k) {
            std::uint64_t idx = k + i < n ? k + i : k + i - n;
            s = f.add(s, f.mul(w[k], alpha[idx]));
        }
        if (s == 0) m |= (1u << i);
    }
    return m;
}

MaskTable mask_table(std::uint64_t q, std::uint64_t n,
                     const std::vector<std::vector<Elem>>& reps,
                     const std::vector<std::vector<Elem>>& candidates,
                     std::uint64_t mask_memory_mb) {
    const std::uint64_t bytes = static_cast<std::uint64_t>(reps.size()) *
                                candidates.size() * sizeof(ShiftMask);
    if (bytes > mask_memory_mb << 20)
        throw MemoryBudgetExceeded("mask_table: table exceeds memory budget");
    MaskTable t;
    t.n = n;
    t.rep_count = reps.size();
    t.cand_count = candidates.size();
    t.bits.resize(reps.size() * candidates.size());
    for (std::size_t r = 0; r < reps.size(); ++r)
        for (std::size_t c = 0; c < candidates.size(); ++c)
            t.bits[r * candidates.size() + c] = shift_mask(q, n, reps[r], candidates[c]);
    return t;
}

std::optional<certs::Certificate> codim1_search(std::uint64_t q, std::uint64_t n,
                                                const SearchConfig& cfg) {
    Engine e = build_engine(q, n, cfg.vector_budget);
    auto hits = covering_scan(e, true);
    if (hits.empty()) return std::nullopt;
    return codim1_witness_cert(e, e.decode_rep(hits.front()));
}

std::vector<std::vector<Elem>> covering_duals(std::uint64_t q, std::uint64_t n,
                                              const SearchConfig& cfg) {
    Engine e = build_engine(q, n, cfg.vector_budget);
    std::vector<std::vector<Elem>> out;
    for (std::size_t i : covering_scan(e, false)) out.push_back(e.decode_rep(i));
    return out;
}

Codim2Report codim2_nonexistence(std::uint64_t q, std::uint64_t n,
                                 const std::vector<DualPool>& pools,
                                 const SearchConfig& cfg) {
    Engine e = build_engine(q, n, cfg.vector_budget);
    return codim2_core(e, pools, cfg);
}

criteria::EscalateFn make_escalator(const SearchConfig& cfg) {
    return [cfg](std::uint64_t q, std::uint64_t n, std::uint32_t lo,
                 std::uint32_t hi) -> std::optional<certs::HqResult> {
        if (n < 2 || n > 32) return std::nullopt;
        const std::uint64_t gate = q <= 3 ? cfg.vector_budget
                                          : std::min<std::uint64_t>(cfg.vector_budget, 1ULL << 22);
        if (checked_pow(q, n, gate) > gate) return std::nullopt;

        Engine e = build_engine(q, n, cfg.vector_budget);
        certs::HqResult r;
        r.q = q;
        r.n = n;
        r.status = certs::Status::Bounds;
        r.lo = lo;
        r.hi = hi;

        auto cov_idx = covering_scan(e, false);
        if (cov_idx.empty()) {
            r.lo = 0;
            r.hi = 0;
            r.status = certs::Status::Exact;
            r.certificates.push_back(certs::Certificate{
                "ExhaustiveNonExistence",
                {{"q", q},
                 {"n", n},
                 {"codim", 1},
                 {"orbit_reps", e.size()},
                 {"candidates_checked", e.size()},
                 {"covering_duals", 0}}});
            r.provenance.push_back("codim-1 search: exhausted, h = 0");
            return r;
        }
        std::vector<std::vector<Elem>> cov;
        cov.reserve(cov_idx.size());
        for (std::size_t i : cov_idx) cov.push_back(e.decode_rep(i));
        r.lo = std::max(r.lo, 1u);
        r.certificates.push_back(codim1_witness_cert(e, cov.front()));
        r.provenance.push_back("codim-1 search: covering dual found among " +
                               std::to_string(e.size()) + " orbit reps");
        if (hi < 2) {
            if (r.lo == r.hi) r.status = certs::Status::Exact;
            return r;
        }

        // Pair pools. A codimension-2 dual plane consists of covering duals
        // only, so when every covering dual lies in a single invariant
        // component the component pools are complete; otherwise fall back to
        // the shift expansion of the covering duals themselves.
        std::vector<DualPool> pools;
        bool single_support = false;
        if (gf::gcd_u64(q, n) == 1) {
            auto ws = cover::decompose_invariant(q, n);
            std::vector<bool> admits(ws.size(), false);
            single_support = true;
            for (const auto& d : cov) {
                std::size_t home = ws.size();
                for (std::size_t i = 0; i < ws.size() && single_support; ++i) {
                    if (cover::contains(ws[i], cover::VecFq{e.ctx, d})) {
                        home = i;
                        break;
                    }
                }
                if (home == ws.size()) {
                    single_support = false;
                    break;
                }
                admits[home] = true;
            }
            if (single_support) {
                for (std::size_t i = 0; i < ws.size(); ++i) {
                    DualPool p;
                    p.label = "W_" + std::to_string(i);
                    p.candidates = candidate_duals(q, n, ws[i], false, cfg.vector_budget);
                    p.covering_precheck = admits[i];
                    pools.push_back(std::move(p));
                }
            }
        }
        if (!single_support) {
            DualPool p;
            p.label = "covering-dual-shifts";
            std::set<std::vector<Elem>> seen;
            const FieldCtx& f = *e.ctx;
            for (const auto& d : cov)
                for (std::uint64_t sh = 0; sh < n; ++sh) {
                    std::vector<Elem> v(n);
                    for (std::uint64_t k = 0; k < n; ++k) v[(k + sh) % n] = d[k];
                    (void)f;
                    if (seen.insert(v).second) p.candidates.push_back(std::move(v));
                }
            p.covering_precheck = true;
            pools.push_back(std::move(p));
        }

        auto c2 = codim2_core(e, pools, cfg);
        r.certificates.push_back(c2.certificate);
        if (c2.found) {
            r.lo = std::max(r.lo, 2u);
            r.provenance.push_back("codim-2 search: covering pair found");
        } else {
            r.hi = std::min(r.hi, 1u);
            r.provenance.push_back("codim-2 search: exhausted, h <= 1 (" +
                                   std::to_string(e.size()) + " orbit reps)");
        }
        if (r.lo == r.hi) r.status = certs::Status::Exact;
        return r;
    };
}

}  // namespace cyclocover::search
