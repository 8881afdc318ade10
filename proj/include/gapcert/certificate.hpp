#pragma once

#include <string>
#include <vector>

#include "gapcert/prover.hpp"

namespace gapcert {

// Shortest decimal string that parses back to the same double.
std::string exact_decimal(double x);
double parse_exact_decimal(const std::string& s);

std::string certificate_to_json(const ProofCertificate& cert, bool include_timestamps = true);
ProofCertificate certificate_from_json(const std::string& text);

struct VerifyReport {
    bool ok = true;
    std::vector<std::string> failures;
};

// Re-checks every recorded inequality from the stored endpoints.
VerifyReport verify_certificate(const ProofCertificate& cert);

}  // namespace gapcert
