#include "lkq/certificate.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace lkq {

using nlohmann::json;

std::string certificate_to_json(const CircuitCertificate& cert) {
    json j;
    j["k"] = cert.k;
    j["p"] = cert.field->p();
    j["m"] = cert.field->m();
    if (cert.field->m() > 1) j["modulus"] = cert.field->modulus();
    j["u"] = cert.type.u;
    j["v"] = cert.type.v;
    j["length"] = cert.length;
    j["coords_zero"] = cert.checks.coords_zero;
    j["v_sum_zero"] = cert.checks.v_sum_zero;
    j["vertices_distinct"] = cert.checks.vertices_distinct;
    j["provenance"] = cert.provenance;
    return j.dump(2) + "\n";
}

CircuitCertificate certificate_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed certificate JSON: ") + e.what());
    }
    try {
        CircuitCertificate cert;
        cert.k = j.at("k").get<int>();
        int p = j.at("p").get<int>();
        int m = j.at("m").get<int>();
        std::optional<std::vector<int>> modulus;
        if (j.contains("modulus")) modulus = j["modulus"].get<std::vector<int>>();
        cert.field = Field::make(p, m, modulus);
        cert.type.u = j.at("u").get<std::vector<uint16_t>>();
        cert.type.v = j.at("v").get<std::vector<uint16_t>>();
        cert.length = j.at("length").get<int>();
        cert.checks.coords_zero = j.value("coords_zero", false);
        cert.checks.v_sum_zero = j.value("v_sum_zero", false);
        cert.checks.vertices_distinct = j.value("vertices_distinct", false);
        cert.provenance = j.value("provenance", "");
        for (uint16_t e : cert.type.u)
            if (int(e) >= cert.field->q()) throw std::invalid_argument("u entry out of field range");
        for (uint16_t e : cert.type.v)
            if (int(e) >= cert.field->q()) throw std::invalid_argument("v entry out of field range");
        return cert;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed certificate: ") + e.what());
    }
}

void save_certificate(const CircuitCertificate& cert, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << certificate_to_json(cert);
}

CircuitCertificate load_certificate(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return certificate_from_json(buf.str());
}

VerifyResult verify_certificate(const CircuitCertificate& cert) {
    VerifyResult res;
    if (cert.type.u.size() != cert.type.v.size() || cert.type.u.empty()) {
        res.message = "certificate needs |u| == |v| >= 1";
        return res;
    }
    if (cert.length != 2 * int(cert.type.u.size())) {
        res.message = "stated length does not match the type";
        return res;
    }
    GraphParams g = cert.params();
    try {
        res.recomputed = evaluate_circuit_type(g, cert.type);
    } catch (const std::invalid_argument& e) {
        res.message = e.what();
        return res;
    }
    if (!res.recomputed.coords_zero) {
        res.message = "endpoint coordinates do not vanish";
        return res;
    }
    if (!res.recomputed.v_sum_zero) {
        res.message = "v-increments do not sum to zero";
        return res;
    }
    if (cert.checks.vertices_distinct && !res.recomputed.vertices_distinct) {
        res.message = "claimed vertex-distinct but the walk repeats a vertex";
        return res;
    }
    res.ok = true;
    res.message = "ok";
    return res;
}

} // namespace lkq
