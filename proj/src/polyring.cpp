#include "cyclocover/polyring.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace cyclocover::polyring {

using gf::Elem;
using gf::FieldCtx;
using gf::FieldPtr;

namespace {

void trim(std::vector<Elem>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

Poly poly_one(FieldPtr ctx) { return Poly{std::move(ctx), {1}}; }

}  // namespace

Poly poly_make(FieldPtr ctx, std::vector<Elem> coeffs) {
    trim(coeffs);
    return Poly{std::move(ctx), std::move(coeffs)};
}

Poly poly_zero(FieldPtr ctx) { return Poly{std::move(ctx), {}}; }

Poly poly_x_pow(FieldPtr ctx, std::size_t e, Elem c) {
    if (c == 0) return poly_zero(std::move(ctx));
    std::vector<Elem> v(e + 1, 0);
    v[e] = c;
    return Poly{std::move(ctx), std::move(v)};
}

Poly poly_add(const Poly& a, const Poly& b) {
    const FieldCtx& f = *a.ctx;
    std::vector<Elem> r(std::max(a.coeffs.size(), b.coeffs.size()), 0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) r[i] = a.coeffs[i];
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) r[i] = f.add(r[i], b.coeffs[i]);
    trim(r);
    return Poly{a.ctx, std::move(r)};
}

Poly poly_sub(const Poly& a, const Poly& b) {
    const FieldCtx& f = *a.ctx;
    std::vector<Elem> r(std::max(a.coeffs.size(), b.coeffs.size()), 0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) r[i] = a.coeffs[i];
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) r[i] = f.sub(r[i], b.coeffs[i]);
    trim(r);
    return Poly{a.ctx, std::move(r)};
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return poly_zero(a.ctx);
    const FieldCtx& f = *a.ctx;
    std::vector<Elem> r(a.coeffs.size() + b.coeffs.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            r[i + j] = f.add(r[i + j], f.mul(a.coeffs[i], b.coeffs[j]));
    }
    return Poly{a.ctx, std::move(r)};
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw PolyError("division by zero polynomial");
    const FieldCtx& f = *a.ctx;
    if (a.coeffs.size() < b.coeffs.size()) return {poly_zero(a.ctx), a};
    std::vector<Elem> rem = a.coeffs;
    std::vector<Elem> quo(a.coeffs.size() - b.coeffs.size() + 1, 0);
    const Elem lead_inv = f.inv(b.coeffs.back());
    const std::size_t db = b.coeffs.size() - 1;
    for (std::size_t i = rem.size(); i-- > db;) {
        Elem c = f.mul(rem[i], lead_inv);
        if (c == 0) continue;
        quo[i - db] = c;
        for (std::size_t j = 0; j <= db; ++j)
            rem[i - db + j] = f.sub(rem[i - db + j], f.mul(c, b.coeffs[j]));
    }
    trim(rem);
    trim(quo);
    return {Poly{a.ctx, std::move(quo)}, Poly{a.ctx, std::move(rem)}};
}

Poly poly_mod(const Poly& a, const Poly& b) { return poly_divmod(a, b).second; }

Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero() && a.coeffs.back() != 1) {
        const FieldCtx& f = *a.ctx;
        Elem s = f.inv(a.coeffs.back());
        for (auto& c : a.coeffs) c = f.mul(c, s);
    }
    return a;
}

Poly poly_pow(const Poly& a, std::uint64_t e) {
    Poly r = poly_one(a.ctx), x = a;
    while (e) {
        if (e & 1) r = poly_mul(r, x);
        x = poly_mul(x, x);
        e >>= 1;
    }
    return r;
}

Poly poly_powmod(const Poly& a, std::uint64_t e, const Poly& m) {
    Poly r = poly_one(a.ctx), x = poly_mod(a, m);
    while (e) {
        if (e & 1) r = poly_mod(poly_mul(r, x), m);
        x = poly_mod(poly_mul(x, x), m);
        e >>= 1;
    }
    return r;
}

Poly poly_invmod(const Poly& a, const Poly& m) {
    // Extended Euclid: r0 = m, r1 = a mod m; maintain s with s*a = r mod m.
    Poly r0 = m, r1 = poly_mod(a, m);
    Poly s0 = poly_zero(a.ctx), s1 = poly_one(a.ctx);
    while (!r1.is_zero()) {
        auto [q, r2] = poly_divmod(r0, r1);
        Poly s2 = poly_sub(s0, poly_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.degree() != 0) throw PolyError("invmod: arguments not coprime");
    const FieldCtx& f = *a.ctx;
    Elem s = f.inv(r0.coeffs[0]);
    for (auto& c : s0.coeffs) c = f.mul(c, s);
    return poly_mod(s0, m);
}

Elem poly_eval(const Poly& a, Elem x) {
    const FieldCtx& f = *a.ctx;
    Elem r = 0;
    for (std::size_t i = a.coeffs.size(); i-- > 0;) r = f.add(f.mul(r, x), a.coeffs[i]);
    return r;
}

bool poly_irreducible(const Poly& f) {
    const std::int64_t d = f.degree();
    if (d <= 0) return false;
    if (d == 1) return true;
    const std::uint64_t q = f.ctx->q();
    // Rabin: x^{q^d} = x mod f, and gcd(x^{q^{d/ell}} - x, f) = 1 for prime
    // ell | d.
    Poly x = poly_x_pow(f.ctx, 1);
    Poly xqd = x;
    for (std::int64_t i = 0; i < d; ++i) xqd = poly_powmod(xqd, q, f);
    if (!(poly_sub(xqd, x).is_zero())) return false;
    for (auto [ell, e] : gf::factor_u64(static_cast<std::uint64_t>(d))) {
        (void)e;
        Poly t = x;
        for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(d) / ell; ++i)
            t = poly_powmod(t, q, f);
        Poly g = poly_gcd(poly_sub(t, x), f);
        if (g.degree() != 0) return false;
    }
    return true;
}

std::string poly_text(const Poly& a) {
    std::string s;
    const std::size_t terms = a.is_zero() ? 1 : a.coeffs.size();
    for (std::size_t i = 0; i < terms; ++i) {
        if (i) s += " + ";
        std::uint64_t c = a.is_zero() ? 0 : a.coeffs[i];
        s += std::to_string(c);
        if (i >= 1) s += "*x";
        if (i >= 2) s += "^" + std::to_string(i);
    }
    s += " (mod " + std::to_string(a.ctx->q()) + ")";
    return s;
}

std::string poly_human(const Poly& a, bool signed_mode) {
    if (a.is_zero()) return "0";
    const std::uint64_t q = a.ctx->q();
    std::string s;
    for (std::size_t i = a.coeffs.size(); i-- > 0;) {
        std::uint64_t c = a.coeffs[i];
        if (c == 0) continue;
        bool neg = false;
        if (signed_mode && a.ctx->k() == 1 && c > q / 2) {
            neg = true;
            c = q - c;
        }
        if (s.empty()) {
            if (neg) s += "-";
        } else {
            s += neg ? " - " : " + ";
        }
        if (c != 1 || i == 0) s += std::to_string(c);
        if (i >= 1) {
            if (c != 1) s += "*";
            s += "x";
            if (i >= 2) s += "^" + std::to_string(i);
        }
    }
    return s;
}

std::vector<std::uint64_t> poly_json_coeffs(const Poly& a) {
    return std::vector<std::uint64_t>(a.coeffs.begin(), a.coeffs.end());
}

std::vector<std::vector<std::uint64_t>> cyclotomic_cosets(std::uint64_t q, std::uint64_t n) {
    if (n == 0 || gf::gcd_u64(q, n) != 1)
        throw NonCoprime("cyclotomic_cosets: gcd(q,n) != 1");
    std::vector<bool> seen(n, false);
    std::vector<std::vector<std::uint64_t>> cosets;
    for (std::uint64_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<std::uint64_t> c;
        std::uint64_t x = s;
        do {
            seen[x] = true;
            c.push_back(x);
            x = x * (q % n) % n;
        } while (x != s);
        std::sort(c.begin(), c.end());
        cosets.push_back(std::move(c));
    }
    return cosets;
}

Poly minimal_poly(const FieldPtr& ctx, Elem omega, std::uint64_t base_q) {
    auto [bp, bk] = gf::prime_power_split(base_q);
    if (bp != ctx->p() || ctx->k() % bk != 0)
        throw PolyError("minimal_poly: base field is not a subfield");
    FieldPtr base = FieldCtx::make(bp, bk);
    gf::Embedding emb(base, ctx);
    // Product of (x - conj) over the orbit of x -> x^{base_q}.
    std::vector<Elem> conj;
    Elem c = omega;
    do {
        conj.push_back(c);
        c = ctx->frobenius_iter(c, bk);
    } while (c != omega);
    std::vector<Elem> f{1};  // ascending, over the big field
    for (Elem r : conj) {
        std::vector<Elem> g(f.size() + 1, 0);
        for (std::size_t i = 0; i < f.size(); ++i) {
            g[i + 1] = ctx->add(g[i + 1], f[i]);
            g[i] = ctx->sub(g[i], ctx->mul(r, f[i]));
        }
        f = std::move(g);
    }
    std::vector<Elem> down(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) down[i] = emb.down(f[i]);
    return poly_make(base, std::move(down));
}

namespace {

// np-th cyclotomic polynomial over F_q (gcd(np, q) = 1): divide x^np - 1 by
// the cyclotomic polynomials of all proper divisors.
Poly cyclotomic_poly(const FieldPtr& base, std::uint64_t np) {
    std::map<std::uint64_t, Poly> phi;
    for (std::uint64_t d = 1; d <= np; ++d) {
        if (np % d != 0) continue;
        Poly num = poly_add(poly_x_pow(base, d), poly_make(base, {base->neg(1)}));
        for (auto& [e, ph] : phi)
            if (d % e == 0) num = poly_divmod(num, ph).first;
        phi.emplace(d, std::move(num));
    }
    return phi.at(np);
}

// Deterministic equal-degree splitting: f is a product of distinct monic
// irreducibles all of degree m. Trial elements are enumerated by index.
void split_equal_degree(const Poly& f, std::uint64_t m, std::vector<Poly>& out) {
    if (static_cast<std::uint64_t>(f.degree()) == m) {
        out.push_back(f);
        return;
    }
    const FieldPtr& base = f.ctx;
    const std::uint64_t q = base->q();
    const std::uint64_t deg = static_cast<std::uint64_t>(f.degree());
    // Low-degree structured trials can be systematically blind (their trace
    // functionals may vanish on every component difference), so trials are
    // dense pseudorandom polynomials from a seed fixed by (q, f): the split
    // is deterministic and reproducible.
    std::mt19937 rng(static_cast<std::uint32_t>(q * 1315423911u + deg * 2654435761u));
    std::uniform_int_distribution<std::uint64_t> dist(0, q - 1);
    while (true) {
        std::vector<Elem> tc(deg);
        for (auto& c : tc) c = dist(rng);
        Poly a = poly_make(base, std::move(tc));
        Poly g = poly_zero(base);
        if (base->p() == 2) {
            // Characteristic 2: relative trace to F_q takes one of q values
            // per component; gcd against each value.
            Poly tr = a, pw = a;
            for (std::uint64_t i = 1; i < m; ++i) {
                pw = poly_powmod(pw, q, f);
                tr = poly_add(tr, pw);
            }
            for (Elem c = 0; c < q; ++c) {
                Poly cand = poly_gcd(poly_sub(tr, poly_make(base, {c})), f);
                if (cand.degree() > 0 && static_cast<std::uint64_t>(cand.degree()) < deg) {
                    g = std::move(cand);
                    break;
                }
            }
        } else {
            std::uint64_t qm = 1;
            for (std::uint64_t i = 0; i < m; ++i) qm *= q;
            Poly b = poly_powmod(a, (qm - 1) / 2, f);
            g = poly_gcd(poly_sub(b, poly_make(base, {1})), f);
        }
        if (g.degree() > 0 && static_cast<std::uint64_t>(g.degree()) < deg) {
            split_equal_degree(g, m, out);
            split_equal_degree(poly_divmod(f, g).first, m, out);
            return;
        }
    }
}

Poly canonical_cyclotomic_factor(const FieldPtr& base, std::uint64_t np, std::uint64_t m) {
    Poly phi = cyclotomic_poly(base, np);
    std::vector<Poly> factors;
    split_equal_degree(phi, m, factors);
    const Poly* best = &factors[0];
    for (const Poly& f : factors)
        if (std::lexicographical_compare(f.coeffs.begin(), f.coeffs.end(),
                                         best->coeffs.begin(), best->coeffs.end()))
            best = &f;
    return *best;
}

// Product of (y - z^c) over the coset, with coefficients in F_q[z]/(g); the
// result's coefficients are constants of the base field.
Poly coset_factor(const FieldPtr& base, const Poly& g, const std::vector<std::uint64_t>& coset) {
    const Poly z = poly_x_pow(base, 1);
    std::vector<Poly> f{poly_make(base, {1})};  // ascending in y
    for (std::uint64_t c : coset) {
        Poly root = poly_powmod(z, c, g);
        std::vector<Poly> nf(f.size() + 1, poly_zero(base));
        for (std::size_t i = 0; i < f.size(); ++i) {
            nf[i + 1] = poly_add(nf[i + 1], f[i]);
            nf[i] = poly_sub(nf[i], poly_mod(poly_mul(root, f[i]), g));
        }
        f = std::move(nf);
    }
    std::vector<Elem> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i].degree() > 0) throw PolyError("coset factor coefficient not in base field");
        out[i] = f[i].is_zero() ? 0 : f[i].coeffs[0];
    }
    return poly_make(base, std::move(out));
}

}  // namespace

Factorization factor_xn_minus_1(std::uint64_t q, std::uint64_t n) {
    auto [p, k] = gf::prime_power_split(q);
    if (n == 0) throw PolyError("factor_xn_minus_1: n must be positive");
    FieldPtr base = FieldCtx::make(p, k);

    Factorization fac;
    fac.q = q;
    fac.n = n;
    fac.p_power = 1;
    std::uint64_t np = n;
    while (np % p == 0) {
        np /= p;
        fac.p_power *= p;
    }
    fac.n_prime = np;

    const Elem minus_one = base->neg(1);
    if (np == 1) {
        fac.base_factors.push_back(
            BaseFactor{poly_make(base, {minus_one, 1}), fac.p_power, {0}});
    } else {
        auto cosets = cyclotomic_cosets(q, np);
        const std::uint64_t m = gf::mul_order_mod(q % np, np);

        // Canonical irreducible divisor g of the np-th cyclotomic polynomial
        // over F_q: smallest in ascending-coefficient lex order. F_q[z]/(g)
        // is the splitting field F_{q^m} with omega = z a primitive np-th
        // root of unity, so the factor attached to coset {1} is g itself.
        Poly g = canonical_cyclotomic_factor(base, np, m);

        for (const auto& coset : cosets) {
            Poly f = coset_factor(base, g, coset);
            if (static_cast<std::uint64_t>(f.degree()) != coset.size())
                throw PolyError("factor degree does not match coset size");
            fac.base_factors.push_back(BaseFactor{std::move(f), fac.p_power, coset});
        }
    }

    // Reconstruction check: the product must be exactly x^n - 1.
    Poly prod = poly_make(base, {1});
    for (const auto& bf : fac.base_factors)
        prod = poly_mul(prod, poly_pow(bf.poly, bf.multiplicity));
    Poly target = poly_add(poly_x_pow(base, n), poly_make(base, {minus_one}));
    if (!(prod == target)) throw PolyError("factorization reconstruction failed");
    return fac;
}

std::vector<Elem> power_coeffs(const Poly& f, std::uint64_t i) {
    if (!poly_irreducible(f)) throw ReduciblePolynomial("power_coeffs: reducible modulus");
    const std::size_t d = static_cast<std::size_t>(f.degree());
    Poly r = poly_powmod(poly_x_pow(f.ctx, 1), i, f);
    std::vector<Elem> row(d, 0);
    for (std::size_t j = 0; j < r.coeffs.size(); ++j) row[j] = r.coeffs[j];
    return row;
}

std::vector<Poly> crt_split(const std::vector<Elem>& v, const Factorization& fac) {
    if (v.size() != fac.n) throw LengthMismatch("crt_split: vector length != n");
    FieldPtr base = gf::field_from_order(fac.q);
    Poly vp = poly_make(base, v);
    std::vector<Poly> out;
    out.reserve(fac.base_factors.size());
    for (const auto& bf : fac.base_factors)
        out.push_back(poly_mod(vp, poly_pow(bf.poly, bf.multiplicity)));
    return out;
}

std::vector<Elem> crt_lift(const std::vector<Poly>& residues, const Factorization& fac) {
    if (residues.size() != fac.base_factors.size())
        throw LengthMismatch("crt_lift: residue count mismatch");
    FieldPtr base = gf::field_from_order(fac.q);
    const Elem minus_one = base->neg(1);
    Poly modulus = poly_add(poly_x_pow(base, fac.n), poly_make(base, {minus_one}));
    Poly acc = poly_zero(base);
    for (std::size_t i = 0; i < residues.size(); ++i) {
        Poly fi = poly_pow(fac.base_factors[i].poly, fac.base_factors[i].multiplicity);
        Poly mi = poly_divmod(modulus, fi).first;
        Poly ui = poly_invmod(mi, fi);
        acc = poly_add(acc, poly_mul(residues[i], poly_mul(ui, mi)));
    }
    acc = poly_mod(acc, modulus);
    std::vector<Elem> out(fac.n, 0);
    for (std::size_t i = 0; i < acc.coeffs.size(); ++i) out[i] = acc.coeffs[i];
    return out;
}

}  // namespace cyclocover::polyring
