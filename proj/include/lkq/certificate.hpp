#pragma once

#include "lkq/graph.hpp"

#include <string>

namespace lkq {

// Self-contained JSON form: the field spec (p, m, modulus when m > 1) is
// embedded so a certificate file can be re-checked in isolation. Elements
// are serialized by canonical index.
std::string certificate_to_json(const CircuitCertificate& cert);
CircuitCertificate certificate_from_json(const std::string& text);

void save_certificate(const CircuitCertificate& cert, const std::string& path);
CircuitCertificate load_certificate(const std::string& path);

struct VerifyResult {
    bool ok = false;
    CircuitChecks recomputed;
    std::string message;
};

// Recomputes every flag from scratch. Fails when the closure conditions do
// not hold or when the file claims vertices_distinct that the walk does not
// have.
VerifyResult verify_certificate(const CircuitCertificate& cert);

} // namespace lkq
