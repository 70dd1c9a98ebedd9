#include "cyclocover/cover.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <unordered_set>

#include "cyclocover/polyring.hpp"

namespace cyclocover::cover {

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

// Keys enumerate vectors in entry-lex order: entries[0] is the most
// significant digit, so ascending key = lexicographic on tuples.
std::vector<Elem> decode_lex(std::uint64_t key, std::uint64_t q, std::uint64_t n) {
    std::vector<Elem> v(n);
    for (std::uint64_t i = n; i-- > 0;) {
        v[i] = key % q;
        key /= q;
    }
    return v;
}

bool lex_less(const std::vector<Elem>& a, const std::vector<Elem>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// RREF in place over F_q; returns rank. Rows may shrink (zero rows dropped).
std::uint64_t rref(const FieldCtx& f, std::vector<std::vector<Elem>>& rows) {
    const std::uint64_t n = rows.empty() ? 0 : rows[0].size();
    std::uint64_t r = 0;
    for (std::uint64_t col = 0; col < n && r < rows.size(); ++col) {
        std::uint64_t piv = r;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[r]);
        Elem s = f.inv(rows[r][col]);
        for (auto& x : rows[r]) x = f.mul(x, s);
        for (std::uint64_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][col] == 0) continue;
            Elem c = rows[i][col];
            for (std::uint64_t j = 0; j < n; ++j)
                rows[i][j] = f.sub(rows[i][j], f.mul(c, rows[r][j]));
        }
        ++r;
    }
    rows.resize(r);
    return r;
}

nlohmann::json basis_json(const Subspace& s) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : s.basis) rows.push_back(row);
    return rows;
}

// Covering under the shift subgroup {stride*j mod n}.
certs::Certificate covering_check(const Subspace& s, std::uint64_t stride,
                                  std::uint64_t budget) {
    const FieldCtx& f = *s.ctx;
    const std::uint64_t q = f.q(), n = s.n;
    const std::uint64_t total = checked_pow(q, n, budget);
    if (total > budget) throw BudgetExceeded("covering enumeration over budget");

    std::vector<std::uint64_t> shifts{0};
    for (std::uint64_t sh = stride % n; sh != 0; sh = (sh + stride) % n)
        shifts.push_back(sh);

    std::uint64_t orbits = 0;
    std::vector<Elem> w(n);
    for (std::uint64_t key = 1; key < total; ++key) {
        std::vector<Elem> v = decode_lex(key, q, n);
        // Canonical orbit representative: lex-min over scalars and the shift
        // subgroup; everything else is equivalent.
        bool canonical = true;
        for (Elem c = 1; c < q && canonical; ++c) {
            for (std::uint64_t sh : shifts) {
                for (std::uint64_t j = 0; j < n; ++j) w[(j + sh) % n] = f.mul(c, v[j]);
                if (lex_less(w, v)) {
                    canonical = false;
                    break;
                }
            }
        }
        if (!canonical) continue;
        ++orbits;
        bool covered = false;
        for (std::uint64_t sh : shifts) {
            VecFq sv{s.ctx, std::vector<Elem>(n)};
            for (std::uint64_t j = 0; j < n; ++j) sv.entries[(j + sh) % n] = v[j];
            if (contains(s, sv)) {
                covered = true;
                break;
            }
        }
        if (!covered) {
            return certs::Certificate{
                "NonCoveringWitness",
                {{"q", q},
                 {"n", n},
                 {"group_stride", stride},
                 {"basis", basis_json(s)},
                 {"missed", v}}};
        }
    }
    return certs::Certificate{"CoveringWitness",
                              {{"q", q},
                               {"n", n},
                               {"group_stride", stride},
                               {"basis", basis_json(s)},
                               {"orbits_checked", orbits}}};
}

}  // namespace

VecFq shift(const VecFq& v, std::int64_t i) {
    const std::int64_t n = static_cast<std::int64_t>(v.entries.size());
    VecFq out{v.ctx, std::vector<Elem>(n)};
    std::int64_t sh = ((i % n) + n) % n;
    for (std::int64_t j = 0; j < n; ++j)
        out.entries[(j + sh) % n] = v.entries[j];
    return out;
}

Elem inner(const VecFq& a, const VecFq& b) {
    if (a.entries.size() != b.entries.size()) throw LengthMismatch("inner: lengths differ");
    const FieldCtx& f = *a.ctx;
    Elem s = 0;
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        s = f.add(s, f.mul(a.entries[i], b.entries[i]));
    return s;
}

Subspace subspace_from_rows(FieldPtr ctx, std::uint64_t n,
                            const std::vector<std::vector<Elem>>& rows) {
    for (const auto& r : rows)
        if (r.size() != n) throw LengthMismatch("subspace_from_rows: row length != n");
    std::vector<std::vector<Elem>> b = rows;
    rref(*ctx, b);
    return Subspace{std::move(ctx), n, std::move(b)};
}

bool contains(const Subspace& s, const VecFq& v) {
    if (v.entries.size() != s.n) throw LengthMismatch("contains: length != n");
    const FieldCtx& f = *s.ctx;
    std::vector<Elem> r = v.entries;
    for (const auto& row : s.basis) {
        std::uint64_t piv = 0;
        while (piv < s.n && row[piv] != 1) ++piv;  // leading 1 of an RREF row
        if (piv == s.n || r[piv] == 0) continue;
        Elem c = r[piv];
        for (std::uint64_t j = 0; j < s.n; ++j) r[j] = f.sub(r[j], f.mul(c, row[j]));
    }
    return std::all_of(r.begin(), r.end(), [](Elem x) { return x == 0; });
}

certs::Certificate is_cyclic_covering(const Subspace& s, std::uint64_t budget) {
    return covering_check(s, 1, budget);
}

certs::Certificate is_tau3_covering(const Subspace& s, std::uint64_t m, std::uint64_t n,
                                    std::uint64_t budget) {
    if (s.n != m * n) throw LengthMismatch("is_tau3_covering: dimension != m*n");
    return covering_check(s, m, budget);
}

std::vector<Subspace> decompose_invariant(std::uint64_t q, std::uint64_t n) {
    if (gf::gcd_u64(q, n) != 1) throw NonCoprime("decompose_invariant: gcd(q,n) != 1");
    auto fac = polyring::factor_xn_minus_1(q, n);
    FieldPtr ctx = gf::field_from_order(q);
    const FieldCtx& f = *ctx;
    std::vector<Subspace> out;
    std::uint64_t dim_total = 0;
    for (const auto& bf : fac.base_factors) {
        // W_i = ker f_i(tau); f_i(tau) is the circulant with entry (r,c) =
        // coeff[(r - c) mod n].
        std::vector<std::vector<Elem>> m(n, std::vector<Elem>(n, 0));
        for (std::uint64_t r = 0; r < n; ++r)
            for (std::uint64_t c = 0; c < n; ++c) {
                std::uint64_t j = (r + n - c % n) % n;
                if (j < bf.poly.coeffs.size()) m[r][c] = bf.poly.coeffs[j];
            }
        // Null space via RREF.
        std::vector<std::vector<Elem>> rows = m;
        rref(f, rows);
        std::vector<std::int64_t> pivot_of_col(n, -1);
        for (std::uint64_t r = 0; r < rows.size(); ++r) {
            std::uint64_t piv = 0;
            while (rows[r][piv] == 0) ++piv;
            pivot_of_col[piv] = static_cast<std::int64_t>(r);
        }
        std::vector<std::vector<Elem>> kernel;
        for (std::uint64_t c = 0; c < n; ++c) {
            if (pivot_of_col[c] >= 0) continue;
            std::vector<Elem> v(n, 0);
            v[c] = 1;
            for (std::uint64_t cc = 0; cc < n; ++cc) {
                if (pivot_of_col[cc] < 0) continue;
                v[cc] = f.neg(rows[static_cast<std::uint64_t>(pivot_of_col[cc])][c]);
            }
            kernel.push_back(std::move(v));
        }
        rref(f, kernel);
        dim_total += kernel.size();
        if (kernel.size() != static_cast<std::uint64_t>(bf.poly.degree()))
            throw CoverError("decompose_invariant: kernel dimension mismatch");
        out.push_back(Subspace{ctx, n, std::move(kernel)});
    }
    if (dim_total != n) throw CoverError("decompose_invariant: dimensions do not sum to n");
    return out;
}

namespace {

// Brute-force machinery: orbit representatives, per-candidate shift masks,
// levelwise dual-tuple search.
struct BruteCtx {
    FieldPtr ctx;
    std::uint64_t q, n;
    std::vector<std::vector<Elem>> reps;  // canonical nonzero vectors, lex order
    // Bit planes for q <= 3: bit k of plane1/plane2 marks entries equal to 1/2.
    std::vector<std::uint32_t> plane1, plane2;

    std::uint32_t mask_limit() const { return (n == 32) ? 0xffffffffu : ((1u << n) - 1); }

    std::uint32_t rotl(std::uint32_t m, std::uint64_t s) const {
        s %= n;
        if (s == 0) return m;
        return ((m << s) | (m >> (n - s))) & mask_limit();
    }

    std::uint32_t rotr(std::uint32_t m, std::uint64_t s) const { return rotl(m, n - s % n); }

    void build_planes() {
        if (q > 3) return;
        plane1.resize(reps.size());
        plane2.resize(reps.size());
        for (std::size_t wi = 0; wi < reps.size(); ++wi) {
            std::uint32_t p1 = 0, p2 = 0;
            for (std::uint64_t k = 0; k < n; ++k) {
                if (reps[wi][k] == 1) p1 |= (1u << k);
                if (reps[wi][k] == 2) p2 |= (1u << k);
            }
            plane1[wi] = p1;
            plane2[wi] = p2;
        }
    }

    // Per-candidate rotated dual planes: a1[i] bit k = [alpha_{(k+i) mod n} = c].
    struct Cand {
        std::array<std::uint32_t, 32> a1{}, a2{};
    };

    Cand prep(const std::vector<Elem>& alpha) const {
        Cand c;
        std::uint32_t b1 = 0, b2 = 0;
        for (std::uint64_t k = 0; k < n; ++k) {
            if (alpha[k] == 1) b1 |= (1u << k);
            if (alpha[k] == 2) b2 |= (1u << k);
        }
        for (std::uint64_t i = 0; i < n; ++i) {
            c.a1[i] = rotr(b1, i);
            c.a2[i] = rotr(b2, i);
        }
        return c;
    }

    // mask bit i = [ <tau^i w, alpha> = 0 ], via packed planes for q <= 3.
    std::uint32_t mask_fast(std::size_t wi, const Cand& c) const {
        std::uint32_t m = 0;
        const std::uint32_t w1 = plane1[wi], w2 = plane2[wi];
        if (q == 2) {
            for (std::uint64_t i = 0; i < n; ++i)
                if (!(std::popcount(w1 & c.a1[i]) & 1)) m |= (1u << i);
        } else {
            for (std::uint64_t i = 0; i < n; ++i) {
                unsigned t = std::popcount(w1 & c.a1[i]) + std::popcount(w2 & c.a2[i]) +
                             2 * (std::popcount(w1 & c.a2[i]) + std::popcount(w2 & c.a1[i]));
                if (t % 3 == 0) m |= (1u << i);
            }
        }
        return m;
    }

    // mask bit i = [ <tau^i w, alpha> = 0 ].
    std::uint32_t mask_of(const std::vector<Elem>& w, const std::vector<Elem>& alpha) const {
        const FieldCtx& f = *ctx;
        std::uint32_t m = 0;
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
};

std::vector<std::vector<Elem>> orbit_reps(const FieldCtx& f, std::uint64_t q, std::uint64_t n,
                                          std::uint64_t total) {
    std::vector<std::vector<Elem>> reps;
    std::vector<Elem> w(n);
    for (std::uint64_t key = 1; key < total; ++key) {
        std::vector<Elem> v = decode_lex(key, q, n);
        bool canonical = true;
        for (Elem c = 1; c < q && canonical; ++c) {
            for (std::uint64_t sh = 0; sh < n; ++sh) {
                if (c == 1 && sh == 0) continue;
                for (std::uint64_t j = 0; j < n; ++j) w[(j + sh) % n] = f.mul(c, v[j]);
                if (lex_less(w, v)) {
                    canonical = false;
                    break;
                }
            }
        }
        if (canonical) reps.push_back(std::move(v));
    }
    return reps;
}

// Canonical key of the dual span: RREF rows, minimized over all shifts,
// flattened with a dimension prefix.
std::vector<Elem> space_key(const FieldCtx& f, std::uint64_t n,
                            const std::vector<std::vector<Elem>>& dual_rows) {
    std::vector<Elem> best;
    for (std::uint64_t sh = 0; sh < n; ++sh) {
        std::vector<std::vector<Elem>> rot(dual_rows.size(), std::vector<Elem>(n));
        for (std::size_t r = 0; r < dual_rows.size(); ++r)
            for (std::uint64_t j = 0; j < n; ++j) rot[r][(j + sh) % n] = dual_rows[r][j];
        rref(f, rot);
        std::vector<Elem> flat{static_cast<Elem>(rot.size())};
        for (const auto& row : rot) flat.insert(flat.end(), row.begin(), row.end());
        if (best.empty() || lex_less(flat, best)) best = std::move(flat);
    }
    return best;
}

struct KeyHash {
    std::size_t operator()(const std::vector<Elem>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (Elem e : v) {
            h ^= e + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

}  // namespace

certs::HqResult hq_bruteforce(std::uint64_t q, std::uint64_t n, std::uint64_t budget) {
    FieldPtr ctx = gf::field_from_order(q);
    const FieldCtx& f = *ctx;
    const std::uint64_t total = checked_pow(q, n, budget);
    if (total > budget) throw BudgetExceeded("hq_bruteforce over budget");
    if (n > 32) throw BudgetExceeded("hq_bruteforce: n too large for masks");

    std::uint32_t hi = 0;
    while (checked_pow(q, hi + 1, n) <= n) ++hi;  // floor(log_q n)

    BruteCtx bc{ctx, q, n, orbit_reps(f, q, n, total)};
    bc.build_planes();
    const std::size_t nreps = bc.reps.size();
    const bool fast = q <= 3;

    certs::HqResult res;
    res.q = q;
    res.n = n;
    res.status = certs::Status::Exact;

    // Level 1: covering hyperplane duals among canonical candidates. Most
    // candidates are defeated by a handful of vectors, so the rep that killed
    // the previous candidate is tried first.
    std::vector<std::uint32_t> singles;               // indices into reps
    std::vector<std::vector<std::uint32_t>> smasks;   // per single: mask per rep
    std::uint64_t l1_checked = 0;
    std::size_t killer = 0;
    for (std::uint32_t a = 0; a < nreps; ++a) {
        ++l1_checked;
        BruteCtx::Cand cand;
        if (fast) cand = bc.prep(bc.reps[a]);
        auto mask_at = [&](std::size_t wi) {
            return fast ? bc.mask_fast(wi, cand) : bc.mask_of(bc.reps[wi], bc.reps[a]);
        };
        if (mask_at(killer) == 0) continue;
        std::vector<std::uint32_t> masks(nreps);
        bool ok = true;
        for (std::size_t wi = 0; wi < nreps; ++wi) {
            std::uint32_t m = mask_at(wi);
            if (m == 0) {
                ok = false;
                killer = wi;
                break;
            }
            masks[wi] = m;
        }
        if (ok) {
            singles.push_back(a);
            smasks.push_back(std::move(masks));
        }
    }

    auto kernel_basis = [&](const std::vector<std::vector<Elem>>& dual_rows) {
        std::vector<std::vector<Elem>> rows = dual_rows;
        rref(f, rows);
        std::vector<std::int64_t> pivot_of_col(n, -1);
        for (std::uint64_t r = 0; r < rows.size(); ++r) {
            std::uint64_t piv = 0;
            while (rows[r][piv] == 0) ++piv;
            pivot_of_col[piv] = static_cast<std::int64_t>(r);
        }
        std::vector<std::vector<Elem>> kernel;
        for (std::uint64_t c = 0; c < n; ++c) {
            if (pivot_of_col[c] >= 0) continue;
            std::vector<Elem> v(n, 0);
            v[c] = 1;
            for (std::uint64_t cc = 0; cc < n; ++cc)
                if (pivot_of_col[cc] >= 0)
                    v[cc] = f.neg(rows[static_cast<std::uint64_t>(pivot_of_col[cc])][c]);
            kernel.push_back(std::move(v));
        }
        rref(f, kernel);
        return kernel;
    };

    auto witness_cert = [&](const std::vector<std::vector<Elem>>& dual_rows) {
        nlohmann::json duals = nlohmann::json::array();
        for (const auto& d : dual_rows) duals.push_back(d);
        nlohmann::json basis = nlohmann::json::array();
        for (const auto& b : kernel_basis(dual_rows)) basis.push_back(b);
        return certs::Certificate{"CoveringWitness",
                                  {{"q", q}, {"n", n}, {"group_stride", 1},
                                   {"duals", duals}, {"basis", basis}}};
    };

    auto exhaustion_cert = [&](std::uint32_t codim, std::uint64_t checked,
                               std::uint64_t dependent) {
        return certs::Certificate{"ExhaustiveNonExistence",
                                  {{"q", q},
                                   {"n", n},
                                   {"codim", codim},
                                   {"candidates_checked", checked},
                                   {"dependent_skipped", dependent},
                                   {"covering_found", 0}}};
    };

    if (singles.empty()) {
        res.lo = res.hi = 0;
        res.certificates.push_back(exhaustion_cert(1, l1_checked, 0));
        res.provenance.push_back("hq_bruteforce: no covering hyperplane among " +
                                 std::to_string(l1_checked) + " canonical duals");
        return res;
    }

    // A space at level c is a list of (single index, shift) generators.
    struct Space {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> gens;
    };
    std::vector<Space> level;
    std::vector<std::vector<std::vector<Elem>>> level_duals;  // dual rows per space
    for (std::uint32_t si = 0; si < singles.size(); ++si) {
        level.push_back(Space{{{si, 0u}}});
        level_duals.push_back({bc.reps[singles[si]]});
    }
    std::uint32_t value = 1;
    std::vector<std::vector<Elem>> best_duals = level_duals[0];

    while (value < hi) {
        const std::uint32_t next_codim = value + 1;
        std::vector<Space> next;
        std::vector<std::vector<std::vector<Elem>>> next_duals;
        std::unordered_set<std::vector<Elem>, KeyHash> seen;
        std::uint64_t checked = 0, dependent = 0;
        std::vector<std::uint32_t> base_masks(nreps);
        std::size_t lkiller = 0;
        for (std::size_t pi = 0; pi < level.size(); ++pi) {
            const Space& base = level[pi];
            for (std::size_t wi = 0; wi < nreps; ++wi) {
                std::uint32_t m = ~0u;
                for (const auto& [gi, gsh] : base.gens) m &= bc.rotl(smasks[gi][wi], gsh);
                base_masks[wi] = m;  // nonzero: the base space is covering
            }
            for (std::uint32_t si = 0; si < singles.size(); ++si) {
                for (std::uint32_t sh = 0; sh < n; ++sh) {
                    ++checked;
                    if ((bc.rotl(smasks[si][lkiller], sh) & base_masks[lkiller]) == 0)
                        continue;
                    bool ok = true;
                    for (std::size_t wi = 0; wi < nreps; ++wi) {
                        if ((bc.rotl(smasks[si][wi], sh) & base_masks[wi]) == 0) {
                            ok = false;
                            lkiller = wi;
                            break;
                        }
                    }
                    if (!ok) continue;
                    // Independence of the dual rows.
                    std::vector<std::vector<Elem>> dual_rows = level_duals[pi];
                    std::vector<Elem> nv(n);
                    const auto& alpha = bc.reps[singles[si]];
                    for (std::uint64_t j = 0; j < n; ++j) nv[(j + sh) % n] = alpha[j];
                    dual_rows.push_back(std::move(nv));
                    std::vector<std::vector<Elem>> probe = dual_rows;
                    if (rref(f, probe) < next_codim) {
                        ++dependent;
                        continue;
                    }
                    auto key = space_key(f, n, dual_rows);
                    if (!seen.insert(std::move(key)).second) continue;
                    next.push_back(Space{base.gens});
                    next.back().gens.emplace_back(si, sh);
                    next_duals.push_back(std::move(dual_rows));
                }
            }
        }
        if (next.empty()) {
            res.lo = res.hi = value;
            res.certificates.push_back(witness_cert(best_duals));
            res.certificates.push_back(exhaustion_cert(next_codim, checked, dependent));
            res.provenance.push_back("hq_bruteforce: covering at codim " +
                                     std::to_string(value) + ", exhaustion at codim " +
                                     std::to_string(next_codim));
            return res;
        }
        level = std::move(next);
        level_duals = std::move(next_duals);
        best_duals = level_duals[0];
        value = next_codim;
    }

    res.lo = res.hi = value;
    res.certificates.push_back(witness_cert(best_duals));
    res.certificates.push_back(certs::Certificate{
        "TheoremBound",
        {{"theorem", "log_upper_bound"},
         {"params", {{"q", q}, {"n", n}}},
         {"claim", {{"hi", hi}}}}});
    res.provenance.push_back("hq_bruteforce: covering at codim " + std::to_string(value) +
                             " meets the floor(log_q n) upper bound");
    return res;
}

}  // namespace cyclocover::cover
