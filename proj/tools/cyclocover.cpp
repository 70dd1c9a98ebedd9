#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cyclocover/certs.hpp"
#include "cyclocover/cover.hpp"
#include "cyclocover/criteria.hpp"
#include "cyclocover/gf.hpp"
#include "cyclocover/polyring.hpp"
#include "cyclocover/search.hpp"

// Command-line front end. Exit codes: 0 exact result / recheck pass,
// 2 usage or malformed input, 3 bounds-only result, 4 budget exhausted,
// 5 recheck failure.
namespace {

using namespace cyclocover;
using gf::Elem;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitBounds = 3;
constexpr int kExitBudget = 4;
constexpr int kExitRecheckFail = 5;

struct RecheckFail : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MalformedCertificate : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint32_t floor_log(std::uint64_t q, std::uint64_t n) {
    std::uint32_t e = 0;
    for (std::uint64_t p = 1; p <= n / q; p *= q) ++e;
    return e;
}

unsigned env_threads() {
    const char* s = std::getenv("CYCLOCOVER_THREADS");
    if (!s || !*s) return 1;
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    return (end && *end == '\0' && v >= 1 && v <= 256) ? static_cast<unsigned>(v) : 1;
}

struct CommonOpts {
    unsigned threads = env_threads();
    std::uint64_t mask_memory_mb = 512;
    std::uint64_t vector_budget = search::kDefaultVectorBudget;
    std::uint64_t tuple_budget = criteria::kDefaultTupleBudget;
    std::uint64_t brute_budget = cover::kDefaultBruteBudget;
    bool progress = false;

    search::SearchConfig search_config() const {
        search::SearchConfig c;
        c.threads = threads;
        c.vector_budget = vector_budget;
        c.mask_memory_mb = mask_memory_mb;
        c.progress = progress;
        return c;
    }
    criteria::ResolveConfig resolve_config() const {
        criteria::ResolveConfig c;
        c.tuple_budget = tuple_budget;
        c.brute_budget = brute_budget;
        c.escalate = search::make_escalator(search_config());
        return c;
    }
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--threads", o.threads, "worker threads for the pair search");
    cmd->add_option("--mask-memory-mb", o.mask_memory_mb, "mask table memory budget");
    cmd->add_option("--vector-budget", o.vector_budget, "vector enumeration budget");
    cmd->add_option("--tuple-budget", o.tuple_budget, "tuple scan budget");
    cmd->add_option("--brute-budget", o.brute_budget, "brute-force enumeration budget");
    cmd->add_flag("--progress", o.progress, "progress lines on standard error");
}

json factorization_json(const polyring::Factorization& fac, bool signed_mode) {
    json factors = json::array();
    for (const auto& bf : fac.base_factors) {
        factors.push_back({{"coeffs", polyring::poly_json_coeffs(bf.poly)},
                           {"human", polyring::poly_human(bf.poly, signed_mode)},
                           {"multiplicity", bf.multiplicity},
                           {"coset", bf.coset}});
    }
    return json{{"q", fac.q},
                {"n", fac.n},
                {"p_power", fac.p_power},
                {"n_prime", fac.n_prime},
                {"factors", factors}};
}

std::string coset_text(const std::vector<std::uint64_t>& coset) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < coset.size(); ++i) os << (i ? ", " : "") << coset[i];
    os << "}";
    return os.str();
}

int cmd_factor(std::uint64_t q, std::uint64_t n, bool signed_mode,
               const std::string& format) {
    auto fac = polyring::factor_xn_minus_1(q, n);
    if (format == "json") {
        std::cout << factorization_json(fac, signed_mode).dump(2) << "\n";
        return kExitOk;
    }
    std::cout << "x^" << n << " - 1 over F_" << q << ": " << fac.base_factors.size()
              << " distinct irreducible factor"
              << (fac.base_factors.size() == 1 ? "" : "s");
    if (fac.p_power > 1) std::cout << ", each with multiplicity " << fac.p_power;
    std::cout << "\n";
    for (std::size_t i = 0; i < fac.base_factors.size(); ++i) {
        const auto& bf = fac.base_factors[i];
        std::cout << "f_" << i << "(x) = " << polyring::poly_human(bf.poly, signed_mode)
                  << "   [deg " << bf.poly.degree() << ", coset "
                  << coset_text(bf.coset) << " mod " << fac.n_prime << "]\n";
    }
    return kExitOk;
}

void print_result_human(const certs::HqResult& r) {
    std::cout << "h_" << r.q << "(" << r.n << ")";
    if (r.status == certs::Status::Exact)
        std::cout << " = " << r.lo << "\n";
    else
        std::cout << " in [" << r.lo << ", " << r.hi << "]  (bounds only)\n";
    for (const auto& p : r.provenance) std::cout << "  provenance: " << p << "\n";
    for (std::size_t i = 0; i < r.certificates.size(); ++i)
        std::cout << "  certificate[" << i << "]: " << r.certificates[i].kind << " "
                  << r.certificates[i].data.dump() << "\n";
}

int cmd_hq(std::uint64_t q, std::uint64_t n, const CommonOpts& o,
           const std::string& format) {
    criteria::ResultStore store;
    certs::HqResult r = criteria::hq_resolve(q, n, store, o.resolve_config());
    if (format == "json")
        std::cout << r.to_json().dump(2) << "\n";
    else
        print_result_human(r);
    return r.status == certs::Status::Exact ? kExitOk : kExitBounds;
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

int cmd_table(std::uint64_t q, std::uint64_t from, std::uint64_t to,
              const CommonOpts& o, const std::string& format) {
    if (from == 0 || to < from) throw CLI::ValidationError("table", "need 1 <= from <= to");
    criteria::ResultStore store;
    auto cfg = o.resolve_config();
    std::vector<certs::HqResult> rows;
    for (std::uint64_t n = from; n <= to; ++n)
        rows.push_back(criteria::hq_resolve(q, n, store, cfg));

    bool all_exact = true;
    for (const auto& r : rows) all_exact = all_exact && r.status == certs::Status::Exact;

    if (format == "json") {
        json arr = json::array();
        for (const auto& r : rows) arr.push_back(r.to_json());
        std::cout << arr.dump(2) << "\n";
    } else if (format == "csv") {
        std::cout << "q,n,status,lo,hi,provenance\n";
        for (const auto& r : rows) {
            std::string prov;
            for (const auto& p : r.provenance) {
                if (!prov.empty()) prov += "; ";
                prov += p;
            }
            std::cout << r.q << "," << r.n << ","
                      << (r.status == certs::Status::Exact ? "exact" : "bounds") << ","
                      << r.lo << "," << r.hi << "," << csv_quote(prov) << "\n";
        }
    } else {
        std::cout << "  n | h_" << q << "(n) | certificates | provenance\n";
        std::cout << "----+---------+--------------+-----------\n";
        for (const auto& r : rows) {
            std::ostringstream h;
            if (r.status == certs::Status::Exact)
                h << r.lo;
            else
                h << "[" << r.lo << "," << r.hi << "]";
            std::ostringstream kinds;
            for (std::size_t i = 0; i < r.certificates.size(); ++i)
                kinds << (i ? "+" : "") << r.certificates[i].kind;
            std::cout << std::setw(3) << r.n << " | " << std::setw(7) << h.str() << " | "
                      << kinds.str() << " | "
                      << (r.provenance.empty() ? "" : r.provenance.front()) << "\n";
        }
    }
    return all_exact ? kExitOk : kExitBounds;
}

// ---- recheck ----------------------------------------------------------

std::vector<std::vector<Elem>> rows_from_json(const json& j) {
    std::vector<std::vector<Elem>> rows;
    if (!j.is_array()) throw MalformedCertificate("row list is not an array");
    for (const auto& r : j) {
        if (!r.is_array()) throw MalformedCertificate("row is not an array");
        rows.push_back(r.get<std::vector<Elem>>());
    }
    return rows;
}

bool verify_covering_witness(const json& d, const CommonOpts& o) {
    const std::uint64_t q = d.at("q").get<std::uint64_t>();
    const std::uint64_t n = d.at("n").get<std::uint64_t>();
    const std::uint64_t stride = d.value("group_stride", std::uint64_t{1});
    auto basis = rows_from_json(d.at("basis"));
    gf::FieldPtr ctx = gf::field_from_order(q);
    cover::Subspace s = cover::subspace_from_rows(ctx, n, basis);
    if (s.dim() != basis.size()) return false;  // dependent basis rows
    if (d.contains("codim") && s.dim() != n - d.at("codim").get<std::uint64_t>())
        return false;

    std::vector<std::vector<Elem>> duals;
    if (d.contains("duals")) {
        duals = rows_from_json(d.at("duals"));
        cover::VecFq dv{ctx, {}};
        for (const auto& du : duals) {
            bool nonzero = false;
            for (Elem e : du) nonzero = nonzero || e != 0;
            if (!nonzero || du.size() != n) return false;
            for (const auto& b : basis) {
                dv.entries = du;
                if (cover::inner(dv, cover::VecFq{ctx, b}) != 0) return false;
            }
        }
        if (s.dim() + duals.size() != n) return false;
    }

    if (stride != 1) {
        if (n % stride != 0) return false;
        auto c = cover::is_tau3_covering(s, stride, n / stride, o.vector_budget);
        return c.kind == "CoveringWitness";
    }
    if (!duals.empty()) {
        const search::ShiftMask all =
            n >= 32 ? ~search::ShiftMask(0) : ((search::ShiftMask(1) << n) - 1);
        auto reps = search::orbit_representatives(q, n, o.vector_budget);
        for (const auto& rep : reps) {
            search::ShiftMask m = all;
            for (const auto& du : duals) m &= search::shift_mask(q, n, rep.vec, du);
            if (m == 0) return false;
        }
        return true;
    }
    auto c = cover::is_cyclic_covering(s, o.vector_budget);
    return c.kind == "CoveringWitness";
}

bool verify_noncovering_witness(const json& d, const CommonOpts& o) {
    const std::uint64_t q = d.at("q").get<std::uint64_t>();
    const std::uint64_t n = d.at("n").get<std::uint64_t>();
    const std::uint64_t stride = d.value("group_stride", std::uint64_t{1});
    gf::FieldPtr ctx = gf::field_from_order(q);
    cover::Subspace s = cover::subspace_from_rows(ctx, n, rows_from_json(d.at("basis")));
    auto missed = d.at("missed").get<std::vector<Elem>>();
    if (missed.size() != n) return false;
    (void)o;
    for (std::uint64_t sh = 0; sh < n; sh += stride)
        if (cover::contains(s, cover::shift(cover::VecFq{ctx, missed},
                                            static_cast<std::int64_t>(sh))))
            return false;
    return true;
}

// Rebuild the complete candidate pool: shift orbit of every covering dual.
std::vector<std::vector<Elem>> covering_dual_shift_pool(std::uint64_t q, std::uint64_t n,
                                                        const search::SearchConfig& cfg) {
    auto cov = search::covering_duals(q, n, cfg);
    std::set<std::vector<Elem>> seen;
    std::vector<std::vector<Elem>> pool;
    for (const auto& d : cov) {
        std::vector<Elem> v = d;
        for (std::uint64_t sh = 0; sh < n; ++sh) {
            if (seen.insert(v).second) pool.push_back(v);
            std::rotate(v.rbegin(), v.rbegin() + 1, v.rend());
        }
    }
    return pool;
}

bool dependent_pair(std::uint64_t q, const std::vector<Elem>& a,
                    const std::vector<Elem>& b) {
    gf::FieldPtr ctx = gf::field_from_order(q);
    for (std::uint64_t c = 1; c < q; ++c) {
        bool eq = true;
        for (std::size_t j = 0; j < a.size() && eq; ++j)
            eq = ctx->mul(static_cast<Elem>(c), a[j]) == b[j];
        if (eq) return true;
    }
    return false;
}

bool verify_exhaustive(const json& d, bool fast, const CommonOpts& o) {
    const std::uint64_t q = d.at("q").get<std::uint64_t>();
    const std::uint64_t n = d.at("n").get<std::uint64_t>();
    const std::uint64_t codim = d.at("codim").get<std::uint64_t>();
    auto scfg = o.search_config();

    if (!d.contains("orbit_reps")) {
        // Levelwise brute-force exhaustion: recompute the exact value and
        // confirm no covering exists at the stated codimension.
        certs::HqResult r = cover::hq_bruteforce(q, n, std::max(o.brute_budget,
                                                                std::uint64_t{1} << 24));
        return r.value() < codim;
    }

    if (codim == 1) {
        if (search::codim1_search(q, n, scfg)) return false;
        return d.value("covering_duals", std::uint64_t{0}) == 0;
    }
    if (codim != 2) throw MalformedCertificate("unsupported codim in exhaustion cert");

    auto pool = covering_dual_shift_pool(q, n, scfg);
    if (!fast) {
        search::DualPool p{"covering-dual-shifts", pool, std::nullopt};
        auto rep = search::codim2_nonexistence(q, n, {p}, scfg);
        return !rep.found;
    }
    // Fast mode: sample roughly 1% of independent pairs and refute each one
    // directly against the orbit representatives.
    auto reps = search::orbit_representatives(q, n, o.vector_budget);
    std::mt19937_64 rng(0x5eed5eedULL ^ (q << 8) ^ n);
    const std::uint64_t raw = pool.size() < 2
                                  ? 0
                                  : static_cast<std::uint64_t>(pool.size()) *
                                        (pool.size() - 1) / 2;
    std::uint64_t samples = std::max<std::uint64_t>(raw / 100, 1);
    samples = std::min<std::uint64_t>(samples, 20000);
    for (std::uint64_t s = 0; s < samples && pool.size() >= 2; ++s) {
        std::size_t i = rng() % pool.size();
        std::size_t j = rng() % pool.size();
        if (i == j || dependent_pair(q, pool[i], pool[j])) continue;
        bool covers = true;
        for (const auto& rep : reps) {
            if ((search::shift_mask(q, n, rep.vec, pool[i]) &
                 search::shift_mask(q, n, rep.vec, pool[j])) == 0) {
                covers = false;
                break;
            }
        }
        if (covers) return false;
    }
    return true;
}

bool verify_theorem(const json& d, const CommonOpts& o) {
    const std::string theorem = d.at("theorem").get<std::string>();
    const json& params = d.at("params");
    const json& claim = d.at("claim");

    if (theorem == "log_upper_bound") {
        return claim.at("hi").get<std::uint32_t>() ==
               floor_log(params.at("q").get<std::uint64_t>(),
                         params.at("n").get<std::uint64_t>());
    }
    if (theorem == "component_criterion") {
        const std::uint64_t q = params.at("q").get<std::uint64_t>();
        const std::uint64_t n = params.at("n").get<std::uint64_t>();
        if (claim.contains("h")) {
            auto r = criteria::hq_zero_decision(q, n, o.tuple_budget);
            return r.status == certs::Status::Exact &&
                   r.value() == claim.at("h").get<std::uint32_t>();
        }
        auto coeffs = claim.at("admitting_factor").get<std::vector<Elem>>();
        auto f = polyring::poly_make(gf::field_from_order(q), coeffs);
        return criteria::component_codim1_check(q, n, f, o.tuple_budget).admits &&
               claim.at("lo").get<std::uint32_t>() == 1;
    }
    if (theorem == "primitive_root_family") {
        const std::uint64_t q = params.at("q").get<std::uint64_t>();
        const std::uint64_t ell = params.at("ell").get<std::uint64_t>();
        const std::uint32_t t = params.at("t").get<std::uint32_t>();
        auto rep = criteria::primitive_root_family(q, ell, t);
        if (!rep.theorem_applies) return false;
        std::uint64_t mod = 1;
        for (std::uint32_t i = 0; i < t; ++i) mod *= ell;
        const std::uint64_t cn = claim.at("n").get<std::uint64_t>();
        return (cn == mod || cn == 2 * mod) && claim.at("h").get<std::uint32_t>() == 0;
    }
    if (theorem == "known_value_oracle") {
        auto r = criteria::known_value_oracle(params.at("q").get<std::uint64_t>(),
                                              params.at("n").get<std::uint64_t>());
        return r.status == certs::Status::Exact &&
               r.value() == claim.at("h").get<std::uint32_t>();
    }
    if (theorem == "ord_lower_bound") {
        auto ob = criteria::ord_lower_bound(params.at("q").get<std::uint64_t>(),
                                            params.at("n").get<std::uint64_t>());
        return ob.lower_bound && *ob.lower_bound == claim.at("lo").get<std::uint32_t>();
    }
    if (theorem == "ord_bound_exactness") {
        auto ob = criteria::ord_lower_bound(params.at("q").get<std::uint64_t>(),
                                            params.at("n").get<std::uint64_t>());
        return ob.h_is_one && *ob.h_is_one && claim.at("h").get<std::uint32_t>() == 1;
    }
    if (theorem == "transfer_2n") {
        const std::uint64_t q = params.at("q").get<std::uint64_t>();
        const std::uint64_t n = params.at("n").get<std::uint64_t>();
        if (q % 2 == 0 || n % 2 == 0) return false;
        criteria::ResultStore store;
        auto r = criteria::hq_resolve(q, n, store, o.resolve_config());
        return r.status == certs::Status::Exact && r.value() == 0 &&
               claim.at("n").get<std::uint64_t>() == 2 * n &&
               claim.at("h").get<std::uint32_t>() == 0;
    }
    if (theorem == "qm_reduction") {
        const std::uint64_t q = params.at("q").get<std::uint64_t>();
        const std::uint64_t m = params.at("m").get<std::uint64_t>();
        const std::uint64_t n = params.at("n").get<std::uint64_t>();
        criteria::ResultStore store;
        auto r = criteria::hq_resolve(q, m * n, store, o.resolve_config());
        std::uint64_t qm = 1;
        for (std::uint64_t i = 0; i < m; ++i) qm *= q;
        return r.hi <= m - 1 && claim.at("q").get<std::uint64_t>() == qm &&
               claim.at("h").get<std::uint32_t>() == 0;
    }
    throw MalformedCertificate("unknown theorem id: " + theorem);
}

bool verify_certificate(const certs::Certificate& c, bool fast, const CommonOpts& o) {
    if (c.kind == "CoveringWitness") return verify_covering_witness(c.data, o);
    if (c.kind == "NonCoveringWitness") return verify_noncovering_witness(c.data, o);
    if (c.kind == "ExhaustiveNonExistence") return verify_exhaustive(c.data, fast, o);
    if (c.kind == "TheoremBound") return verify_theorem(c.data, o);
    throw MalformedCertificate("unknown certificate kind: " + c.kind);
}

int cmd_recheck(const std::string& path, bool fast, const CommonOpts& o) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "recheck: cannot open " << path << "\n";
        return kExitUsage;
    }
    json doc;
    std::vector<certs::Certificate> certs_list;
    try {
        in >> doc;
        if (doc.is_object() && doc.contains("certificates")) {
            for (const auto& c : doc.at("certificates"))
                certs_list.push_back(certs::Certificate::from_json(c));
            if (doc.at("status").get<std::string>() == "exact" &&
                doc.at("lo").get<std::uint32_t>() != doc.at("hi").get<std::uint32_t>())
                throw MalformedCertificate("exact result with lo != hi");
        } else if (doc.is_object() && doc.contains("kind")) {
            certs_list.push_back(certs::Certificate::from_json(doc));
        } else if (doc.is_array()) {
            for (const auto& c : doc) certs_list.push_back(certs::Certificate::from_json(c));
        } else {
            throw MalformedCertificate("not a certificate document");
        }
    } catch (const json::exception& e) {
        std::cerr << "recheck: malformed JSON: " << e.what() << "\n";
        return kExitUsage;
    } catch (const MalformedCertificate& e) {
        std::cerr << "recheck: " << e.what() << "\n";
        return kExitUsage;
    }
    if (certs_list.empty()) {
        std::cerr << "recheck: no certificates in " << path << "\n";
        return kExitUsage;
    }

    bool all_ok = true;
    for (std::size_t i = 0; i < certs_list.size(); ++i) {
        bool ok = false;
        try {
            ok = verify_certificate(certs_list[i], fast, o);
        } catch (const json::exception& e) {
            std::cerr << "recheck: malformed certificate " << i << ": " << e.what() << "\n";
            return kExitUsage;
        } catch (const MalformedCertificate& e) {
            std::cerr << "recheck: certificate " << i << ": " << e.what() << "\n";
            return kExitUsage;
        }
        std::cout << (ok ? "pass" : "FAIL") << "  [" << i << "] "
                  << certs_list[i].kind << "\n";
        all_ok = all_ok && ok;
    }
    std::cout << (all_ok ? "recheck: all certificates verified\n"
                         : "recheck: verification FAILED\n");
    return all_ok ? kExitOk : kExitRecheckFail;
}

// ---- pinned example reproductions -------------------------------------

int cmd_example11(const CommonOpts& o) {
    const std::uint64_t q = 3, n = 11;
    std::cout << "== x^11 - 1 over F_3 ==\n";
    cmd_factor(q, n, true, "table");

    auto fac = polyring::factor_xn_minus_1(q, n);
    const auto& f1 = fac.base_factors[1].poly;
    std::cout << "\n== power-coefficient rows of f_1, i = 5..10 ==\n";
    for (std::uint64_t i = 5; i <= 10; ++i) {
        auto row = polyring::power_coeffs(f1, i);
        std::cout << "x^" << i << " mod f_1 = (";
        for (std::size_t j = 0; j < row.size(); ++j) {
            std::int64_t v = static_cast<std::int64_t>(row[j]);
            if (v > static_cast<std::int64_t>(q) / 2) v -= static_cast<std::int64_t>(q);
            std::cout << (j ? ", " : "") << v;
        }
        std::cout << ")\n";
    }
    auto rep1 = criteria::component_codim1_check(q, n, f1);
    std::cout << "component criterion on f_1: " << rep1.tuples_checked
              << " tuples checked, admits = " << (rep1.admits ? "yes" : "no")
              << "  => h_3(11) >= 1\n";

    std::cout << "\n== codimension-2 pair search over invariant components ==\n";
    auto comps = cover::decompose_invariant(q, n);
    std::vector<search::DualPool> pools;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        search::DualPool p;
        p.label = "W_" + std::to_string(i);
        p.candidates = search::candidate_duals(q, n, comps[i], false, o.vector_budget);
        p.covering_precheck =
            criteria::component_codim1_check(q, n, fac.base_factors[i].poly).admits;
        pools.push_back(std::move(p));
    }
    auto rep = search::codim2_nonexistence(q, n, pools, o.search_config());
    for (const auto& c : rep.combinations) {
        std::cout << "  " << pools[c.pool_a].label << " x " << pools[c.pool_b].label
                  << ": raw pairs " << c.raw_pairs << ", dependent skipped "
                  << c.dependent_skipped << ", precheck pruned " << c.precheck_pruned
                  << ", checked " << c.pairs_checked << "\n";
    }
    std::cout << "covering pairs found: " << (rep.found ? 1 : 0) << "\n";
    if (rep.found) return kExitRecheckFail;
    std::cout << "\nconclusion: h_3(11) = 1\n";
    std::cout << "certificate: " << rep.certificate.to_json().dump() << "\n";
    return kExitOk;
}

int cmd_example16(const CommonOpts& o) {
    const std::uint64_t q = 3, n = 16;
    std::cout << "== x^16 - 1 over F_3 ==\n";
    cmd_factor(q, n, true, "table");

    std::cout << "\n== codimension-1 covering search ==\n";
    auto esc = search::make_escalator(o.search_config());
    auto r = esc(q, n, 0, floor_log(q, n));
    if (!r) {
        std::cerr << "example16: search gate refused the instance\n";
        return kExitBudget;
    }
    for (const auto& p : r->provenance) std::cout << "  " << p << "\n";
    for (const auto& c : r->certificates) {
        if (c.kind == "CoveringWitness") {
            std::cout << "covering dual: " << c.data.at("duals").dump() << "\n";
            std::cout << "subspace basis: " << c.data.at("basis").dump() << "\n";
        }
        if (c.kind == "ExhaustiveNonExistence" &&
            c.data.at("codim").get<int>() == 2) {
            std::cout << "\n== codimension-2 exhaustion ==\n";
            std::cout << "pools: " << c.data.at("pools").dump() << "\n";
            std::cout << "combinations: " << c.data.at("combinations").dump() << "\n";
            std::cout << "covering pairs: " << c.data.at("covering_pairs").dump() << "\n";
        }
    }
    if (r->status != certs::Status::Exact || r->value() != 1) {
        std::cerr << "example16: unexpected result\n";
        return kExitRecheckFail;
    }
    std::cout << "\nconclusion: h_3(16) = 1\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cyclocover: cyclically covering subspaces of F_q^n"};
    app.require_subcommand(1);

    std::uint64_t q = 0, n = 0, from = 1, to = 1;
    bool signed_mode = false, fast = false;
    std::string format = "table";
    std::string recheck_path;
    CommonOpts opts;

    auto* c_factor = app.add_subcommand("factor", "factor x^n - 1 over F_q");
    c_factor->add_option("-q,--q", q, "field order")->required();
    c_factor->add_option("-n,--n", n, "exponent")->required();
    c_factor->add_flag("--signed", signed_mode, "signed coefficient display");
    c_factor->add_option("--format", format)
        ->check(CLI::IsMember({"table", "csv", "json"}));

    auto* c_hq = app.add_subcommand("hq", "resolve h_q(n) with certificates");
    c_hq->add_option("-q,--q", q, "field order")->required();
    c_hq->add_option("-n,--n", n, "dimension")->required();
    c_hq->add_option("--format", format)->check(CLI::IsMember({"table", "csv", "json"}));
    add_common(c_hq, opts);

    auto* c_table = app.add_subcommand("table", "resolve a range of h_q(n)");
    c_table->add_option("-q,--q", q, "field order")->required();
    c_table->add_option("--from", from, "first n")->required();
    c_table->add_option("--to", to, "last n")->required();
    c_table->add_option("--format", format)
        ->check(CLI::IsMember({"table", "csv", "json"}));
    add_common(c_table, opts);

    auto* c_recheck = app.add_subcommand("recheck", "re-verify a certificate file");
    c_recheck->add_option("file", recheck_path, "JSON certificate or result file")
        ->required();
    c_recheck->add_flag("--fast", fast, "sample 1% of pairs in exhaustion rechecks");
    add_common(c_recheck, opts);

    auto* c_ex11 = app.add_subcommand("example11", "pinned reproduction: h_3(11) = 1");
    add_common(c_ex11, opts);
    auto* c_ex16 = app.add_subcommand("example16", "pinned reproduction: h_3(16) = 1");
    add_common(c_ex16, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (c_factor->parsed()) return cmd_factor(q, n, signed_mode, format);
        if (c_hq->parsed()) return cmd_hq(q, n, opts, format);
        if (c_table->parsed()) return cmd_table(q, from, to, opts, format);
        if (c_recheck->parsed()) return cmd_recheck(recheck_path, fast, opts);
        if (c_ex11->parsed()) return cmd_example11(opts);
        if (c_ex16->parsed()) return cmd_example16(opts);
    } catch (const cover::BudgetExceeded& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return kExitBudget;
    } catch (const criteria::BudgetExceeded& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return kExitBudget;
    } catch (const search::BudgetExceeded& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return kExitBudget;
    } catch (const search::MemoryBudgetExceeded& e) {
        std::cerr << "memory budget exhausted: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
