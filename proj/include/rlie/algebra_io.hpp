#pragma once

// Algebra definition files:
//   {"p": 2, "basis": ["x", "y", "z"],
//    "brackets": {"x,y": {"z": 1}},   // key "a,b" with a listed before b
//    "pmap": {"x": {"y": 1}}}         // e_i^[p]; omitted rows are zero
// Coefficients are integers reduced mod p. Axioms are not checked here.

#include <string>

#include "rlie/restricted_lie.hpp"

namespace rlie {

/// Throws ParseError (malformed JSON or schema), NameError (undeclared or
/// duplicate name) or ModulusError (p not a prime below 2^31).
[[nodiscard]] RestrictedLieAlgebra parse_algebra(const std::string& json_text);
/// Reads and parses a file; unreadable files raise ParseError.
[[nodiscard]] RestrictedLieAlgebra parse_algebra_file(const std::string& path);

/// Canonical file text for an algebra (zero entries omitted).
[[nodiscard]] std::string algebra_to_json(const RestrictedLieAlgebra& lie);

}  // namespace rlie
