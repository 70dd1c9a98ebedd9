#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

// Certificates and result envelopes shared by the covering, criteria and
// search modules. Every Exact result carries a re-checkable certificate
// chain; the JSON field names are frozen.
namespace cyclocover::certs {

// kind is one of "CoveringWitness", "NonCoveringWitness",
// "ExhaustiveNonExistence", "TheoremBound"; data is kind-specific.
struct Certificate {
    std::string kind;
    nlohmann::json data;

    nlohmann::json to_json() const {
        return nlohmann::json{{"kind", kind}, {"data", data}};
    }
    static Certificate from_json(const nlohmann::json& j) {
        return Certificate{j.at("kind").get<std::string>(), j.at("data")};
    }
};

enum class Status { Exact, Bounds };

struct HqResult {
    std::uint64_t q = 0, n = 0;
    Status status = Status::Bounds;
    std::uint32_t lo = 0, hi = 0;
    std::vector<Certificate> certificates;
    std::vector<std::string> provenance;

    std::uint32_t value() const { return lo; }  // meaningful when Exact

    nlohmann::json to_json() const {
        nlohmann::json certs_j = nlohmann::json::array();
        for (const auto& c : certificates) certs_j.push_back(c.to_json());
        return nlohmann::json{{"q", q},
                              {"n", n},
                              {"status", status == Status::Exact ? "exact" : "bounds"},
                              {"lo", lo},
                              {"hi", hi},
                              {"certificates", certs_j},
                              {"provenance", provenance}};
    }
};

inline HqResult exact_result(std::uint64_t q, std::uint64_t n, std::uint32_t v) {
    HqResult r;
    r.q = q;
    r.n = n;
    r.status = Status::Exact;
    r.lo = r.hi = v;
    return r;
}

}  // namespace cyclocover::certs
