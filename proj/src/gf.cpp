#include "cyclocover/gf.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_map>

namespace cyclocover::gf {

namespace {

constexpr std::uint64_t kMaxOrder = 1ULL << 36;  // construction cap
constexpr std::uint64_t kTableMax = 1ULL << 20;  // log/antilog tables cap

// Dense F_p[x] polynomials, ascending coefficients, no trailing zeros.
using PolyP = std::vector<std::uint64_t>;

void trim(PolyP& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint64_t inv_mod_p(std::uint64_t a, std::uint64_t p) {
    return pow_mod_u64(a % p, p - 2, p);
}

// Remainder of a by monic b.
PolyP poly_mod(PolyP a, const PolyP& b, std::uint64_t p) {
    trim(a);
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        const std::uint64_t c = a.back();
        const std::size_t shift = a.size() - 1 - db;
        if (c != 0) {
            for (std::size_t i = 0; i < db; ++i) {
                std::uint64_t t = (c * b[i]) % p;
                a[shift + i] = (a[shift + i] + p - t) % p;
            }
        }
        a.pop_back();
    }
    trim(a);
    return a;
}

PolyP poly_mul_mod(const PolyP& a, const PolyP& b, const PolyP& m, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    PolyP r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    return poly_mod(std::move(r), m, p);
}

bool divides(const PolyP& d, const PolyP& f, std::uint64_t p) {
    return poly_mod(f, d, p).empty();
}

// Trial division by every monic polynomial of degree <= deg(f)/2.
bool irreducible_trial(const PolyP& f, std::uint64_t p) {
    const std::size_t k = f.size() - 1;
    if (k == 1) return true;
    if (f[0] == 0) return false;  // divisible by x
    PolyP d;
    for (std::size_t deg = 1; deg <= k / 2; ++deg) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < deg; ++i) count *= p;
        d.assign(deg + 1, 0);
        d[deg] = 1;
        for (std::uint64_t t = 0; t < count; ++t) {
            std::uint64_t v = t;
            for (std::size_t i = 0; i < deg; ++i) {
                d[i] = v % p;
                v /= p;
            }
            if (divides(d, f, p)) return false;
        }
    }
    return true;
}

std::mutex g_cache_mutex;
std::map<std::pair<std::uint64_t, std::uint32_t>, FieldPtr>& cache() {
    static std::map<std::pair<std::uint64_t, std::uint32_t>, FieldPtr> c;
    return c;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::pair<std::uint64_t, std::uint32_t>> factor_u64(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        std::uint32_t e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::uint64_t pow_mod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    unsigned __int128 r = 1, x = b % m;
    while (e) {
        if (e & 1) r = r * x % m;
        x = x * x % m;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(r);
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

std::uint64_t mul_order_mod(std::uint64_t a, std::uint64_t m) {
    if (m == 1) return 1;
    a %= m;
    if (gcd_u64(a, m) != 1) throw ZeroArgument("mul_order_mod: arguments not coprime");
    // ord divides the group order; strip primes from a Carmichael-style bound.
    std::uint64_t phi = 1;
    for (auto [ell, e] : factor_u64(m)) {
        std::uint64_t pe = 1;
        for (std::uint32_t i = 1; i < e; ++i) pe *= ell;
        phi *= pe * (ell - 1);
    }
    std::uint64_t ord = phi;
    for (auto [ell, e] : factor_u64(phi)) {
        (void)e;
        while (ord % ell == 0 && pow_mod_u64(a, ord / ell, m) == 1) ord /= ell;
    }
    return ord;
}

std::pair<std::uint64_t, std::uint32_t> prime_power_split(std::uint64_t q) {
    if (q < 2) throw NonPrimeCharacteristic("order must be at least 2");
    auto f = factor_u64(q);
    if (f.size() != 1) throw NonPrimeCharacteristic("order is not a prime power");
    return {f[0].first, f[0].second};
}

FieldPtr field_from_order(std::uint64_t q) {
    auto [p, k] = prime_power_split(q);
    return FieldCtx::make(p, k);
}

FieldPtr FieldCtx::make(std::uint64_t p, std::uint32_t k) {
    if (!is_prime_u64(p)) throw NonPrimeCharacteristic("characteristic must be prime");
    if (k == 0) throw FieldError("extension degree must be positive");
    {
        std::lock_guard<std::mutex> lk(g_cache_mutex);
        auto it = cache().find({p, k});
        if (it != cache().end()) return it->second;
    }

    // Order check with overflow guard.
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        if (q > kMaxOrder / p) throw TableBudgetExceeded("field order exceeds construction cap");
        q *= p;
    }
    if (q > kMaxOrder) throw TableBudgetExceeded("field order exceeds construction cap");

    auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
    ctx->p_ = p;
    ctx->k_ = k;
    ctx->q_ = q;

    if (k == 1) {
        ctx->modulus_ = {0, 1};
    } else {
        // Smallest monic irreducible of degree k: low coefficients enumerated
        // as ascending base-p integers, so the first hit is index-minimal.
        PolyP f(k + 1, 0);
        f[k] = 1;
        for (std::uint64_t t = 1;; ++t) {
            std::uint64_t v = t;
            for (std::uint32_t i = 0; i < k; ++i) {
                f[i] = v % p;
                v /= p;
            }
            if (irreducible_trial(f, p)) break;
        }
        ctx->modulus_ = f;
    }

    // Smallest primitive element.
    auto ell_factors = factor_u64(q - 1);
    for (Elem a = q == 2 ? 1 : 2;; ++a) {
        bool ok = true;
        for (auto [ell, e] : ell_factors) {
            (void)e;
            if (ctx->pow(a, (q - 1) / ell) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            ctx->generator_ = a;
            break;
        }
        if (a + 1 >= q) throw FieldError("no generator found");
    }

    if (q <= kTableMax) {
        ctx->antilog_.resize(q - 1);
        ctx->log_.assign(q, 0);
        Elem cur = 1;
        for (std::uint64_t i = 0; i < q - 1; ++i) {
            ctx->antilog_[i] = cur;
            ctx->log_[cur] = static_cast<std::uint32_t>(i);
            cur = ctx->mul_direct(cur, ctx->generator_);
        }
    }

    FieldPtr shared = ctx;
    std::lock_guard<std::mutex> lk(g_cache_mutex);
    auto [it, inserted] = cache().emplace(std::make_pair(p, k), shared);
    return it->second;
}

std::vector<std::uint64_t> FieldCtx::coeffs(Elem a) const {
    std::vector<std::uint64_t> c(k_, 0);
    for (std::uint32_t i = 0; i < k_; ++i) {
        c[i] = a % p_;
        a /= p_;
    }
    return c;
}

Elem FieldCtx::from_coeffs(const std::vector<std::uint64_t>& c) const {
    Elem a = 0;
    for (std::size_t i = std::min<std::size_t>(c.size(), k_); i-- > 0;)
        a = a * p_ + c[i] % p_;
    return a;
}

Elem FieldCtx::add(Elem a, Elem b) const {
    Elem r = 0, mult = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
        r += (a % p_ + b % p_) % p_ * mult;
        a /= p_;
        b /= p_;
        mult *= p_;
    }
    return r;
}

Elem FieldCtx::neg(Elem a) const {
    Elem r = 0, mult = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
        r += (p_ - a % p_) % p_ * mult;
        a /= p_;
        mult *= p_;
    }
    return r;
}

Elem FieldCtx::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem FieldCtx::mul_direct(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    PolyP pa = coeffs(a), pb = coeffs(b);
    trim(pa);
    trim(pb);
    PolyP r = poly_mul_mod(pa, pb, modulus_, p_);
    return from_coeffs(r);
}

Elem FieldCtx::mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    if (has_tables()) {
        std::uint64_t e = log_[a] + log_[b];
        if (e >= q_ - 1) e -= q_ - 1;
        return antilog_[e];
    }
    return mul_direct(a, b);
}

Elem FieldCtx::inv(Elem a) const {
    if (a == 0) throw DivisionByZero("inverse of zero");
    if (has_tables()) {
        std::uint64_t e = log_[a];
        return antilog_[e == 0 ? 0 : q_ - 1 - e];
    }
    return pow(a, q_ - 2);
}

Elem FieldCtx::pow(Elem a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    if (has_tables()) {
        unsigned __int128 ee = static_cast<unsigned __int128>(log_[a]) * e % (q_ - 1);
        return antilog_[static_cast<std::uint64_t>(ee)];
    }
    Elem r = 1, x = a;
    while (e) {
        if (e & 1) r = mul(r, x);
        x = mul(x, x);
        e >>= 1;
    }
    return r;
}

Elem FieldCtx::frobenius_iter(Elem a, std::uint64_t times) const {
    times %= k_;
    for (std::uint64_t i = 0; i < times; ++i) a = frobenius(a);
    return a;
}

std::uint64_t FieldCtx::dlog(Elem a) const {
    if (a == 0) throw ZeroArgument("dlog of zero");
    if (has_tables()) return log_[a];
    // Baby-step giant-step.
    const std::uint64_t n = q_ - 1;
    std::uint64_t m = 1;
    while (m * m < n) ++m;
    std::unordered_map<Elem, std::uint64_t> baby;
    baby.reserve(m);
    Elem cur = 1;
    for (std::uint64_t j = 0; j < m; ++j) {
        baby.emplace(cur, j);
        cur = mul(cur, generator_);
    }
    const Elem giant = inv(pow(generator_, m));
    Elem y = a;
    for (std::uint64_t i = 0; i <= m; ++i) {
        auto it = baby.find(y);
        if (it != baby.end()) return (i * m + it->second) % n;
        y = mul(y, giant);
    }
    throw FieldError("dlog: not found");
}

Elem FieldCtx::antilog(std::uint64_t e) const {
    e %= q_ - 1;
    if (has_tables()) return antilog_[e];
    return pow(generator_, e);
}

Elem FieldCtx::trace(Elem a, std::uint32_t sub_degree) const {
    if (sub_degree == 0 || k_ % sub_degree != 0)
        throw NonDivisorSubfield("trace: sub_degree must divide k");
    Elem sum = 0, cur = a;
    const std::uint32_t steps = k_ / sub_degree;
    for (std::uint32_t i = 0; i < steps; ++i) {
        sum = add(sum, cur);
        cur = frobenius_iter(cur, sub_degree);
    }
    return sum;
}

std::string FieldCtx::describe() const {
    if (k_ == 1) return "F_" + std::to_string(p_);
    return "F_{" + std::to_string(p_) + "^" + std::to_string(k_) + "}";
}

namespace {

using Mat = std::vector<std::vector<std::uint64_t>>;

// Gauss-Jordan inverse over F_p; empty result when singular.
Mat mat_inv_mod_p(Mat m, std::uint64_t p) {
    const std::size_t n = m.size();
    Mat inv(n, std::vector<std::uint64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return {};
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        std::uint64_t s = inv_mod_p(m[col][col], p);
        for (std::size_t j = 0; j < n; ++j) {
            m[col][j] = m[col][j] * s % p;
            inv[col][j] = inv[col][j] * s % p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            std::uint64_t f = m[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                m[r][j] = (m[r][j] + p - f * m[col][j] % p) % p;
                inv[r][j] = (inv[r][j] + p - f * inv[col][j] % p) % p;
            }
        }
    }
    return inv;
}

}  // namespace

NormalBasis normal_element(const FieldCtx& ctx) {
    const std::uint32_t k = ctx.k();
    const std::uint64_t p = ctx.p();
    for (Elem gamma = 1; gamma < ctx.q(); ++gamma) {
        // Columns are the conjugates' power-basis coefficients.
        Mat b(k, std::vector<std::uint64_t>(k, 0));
        Elem c = gamma;
        for (std::uint32_t j = 0; j < k; ++j) {
            auto cc = ctx.coeffs(c);
            for (std::uint32_t i = 0; i < k; ++i) b[i][j] = cc[i];
            c = ctx.frobenius(c);
        }
        Mat binv = mat_inv_mod_p(b, p);
        if (binv.empty()) continue;
        return NormalBasis{gamma, std::move(binv), std::move(b)};
    }
    throw FieldError("no normal element found");  // unreachable: one always exists
}

std::vector<Elem> dual_basis(const FieldCtx& ctx, const std::vector<Elem>& basis) {
    const std::uint32_t k = ctx.k();
    if (basis.size() != k) throw DependentBasis("dual_basis: wrong basis size");
    // T[i][m] = Tr(basis_i * x^m); dual_j has power-basis coefficients from
    // column j of T^{-1}.
    Mat t(k, std::vector<std::uint64_t>(k, 0));
    for (std::uint32_t i = 0; i < k; ++i) {
        Elem xm = 1;
        for (std::uint32_t m = 0; m < k; ++m) {
            t[i][m] = ctx.trace(ctx.mul(basis[i], xm));
            xm = ctx.mul(xm, ctx.from_coeffs({0, 1}));
        }
    }
    Mat tinv = mat_inv_mod_p(std::move(t), ctx.p());
    if (tinv.empty()) throw DependentBasis("dual_basis: basis is dependent");
    std::vector<Elem> dual(k);
    for (std::uint32_t j = 0; j < k; ++j) {
        std::vector<std::uint64_t> c(k);
        for (std::uint32_t m = 0; m < k; ++m) c[m] = tinv[m][j];
        dual[j] = ctx.from_coeffs(c);
    }
    return dual;
}

Embedding::Embedding(FieldPtr base, FieldPtr big) : base_(std::move(base)), big_(std::move(big)) {
    if (base_->p() != big_->p()) throw MixedContexts("embedding: different characteristic");
    if (big_->k() % base_->k() != 0)
        throw NonDivisorSubfield("embedding: base degree must divide big degree");
    const std::uint64_t q = base_->q(), bigq = big_->q();
    // Roots of the base modulus inside the image subfield; smallest index wins.
    Elem root = 0;
    bool found = false;
    const std::uint64_t stride = (bigq - 1) / (q - 1);
    std::vector<Elem> sub_elems;
    sub_elems.reserve(q);
    sub_elems.push_back(0);
    for (std::uint64_t j = 0; j < q - 1; ++j) sub_elems.push_back(big_->antilog(j * stride));
    std::sort(sub_elems.begin(), sub_elems.end());
    const auto& mod = base_->modulus();
    for (Elem cand : sub_elems) {
        Elem val = 0, xp = 1;
        for (std::size_t i = 0; i < mod.size(); ++i) {
            if (mod[i]) val = big_->add(val, big_->mul(big_->scalar(mod[i]), xp));
            xp = big_->mul(xp, cand);
        }
        if (val == 0) {
            root = cand;
            found = true;
            break;
        }
    }
    if (!found) throw FieldError("embedding: no root of base modulus in big field");
    root_powers_.resize(base_->k());
    Elem xp = 1;
    for (std::uint32_t i = 0; i < base_->k(); ++i) {
        root_powers_[i] = xp;
        xp = big_->mul(xp, root);
    }
    down_map_.reserve(q);
    for (Elem a = 0; a < q; ++a) down_map_.emplace_back(map(a), a);
    std::sort(down_map_.begin(), down_map_.end());
}

Elem Embedding::map(Elem a) const {
    auto c = base_->coeffs(a);
    Elem r = 0;
    for (std::uint32_t i = 0; i < base_->k(); ++i)
        if (c[i]) r = big_->add(r, big_->mul(big_->scalar(c[i]), root_powers_[i]));
    return r;
}

Elem Embedding::down(Elem a) const {
    auto it = std::lower_bound(down_map_.begin(), down_map_.end(), std::make_pair(a, Elem{0}));
    if (it == down_map_.end() || it->first != a)
        throw MixedContexts("down: element not in subfield image");
    return it->second;
}

bool Embedding::in_subfield(Elem a) const {
    auto it = std::lower_bound(down_map_.begin(), down_map_.end(), std::make_pair(a, Elem{0}));
    return it != down_map_.end() && it->first == a;
}

}  // namespace cyclocover::gf
