#pragma once

#include <string>

#include "nilric/quotient.hpp"

namespace nilric {

// Algebra file format: {"name": str, "dim": int, "brackets": [{"i": int,
// "j": int, "coeffs": {"<l>": "<rational>", ...}}]} with i < j; the
// antisymmetric partners are implied.
NilpotentAlgebra load_algebra_json(const std::string& path);
NilpotentAlgebra algebra_from_json_text(const std::string& text);
std::string algebra_to_json_text(const NilpotentAlgebra& a);

std::string certificate_json(const SubmersionParams& p, const PositivityCertificate& cert);

std::string scan_csv(const SubmersionParams& p, const std::vector<BaseDiag>& rows);

// Shortest-width fixed form with 17 significant digits; round-trips doubles.
std::string format_double(double v);

}  // namespace nilric
