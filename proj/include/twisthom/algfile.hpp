#pragma once

#include <nlohmann/json_fwd.hpp>

#include "twisthom/algebra.hpp"

namespace thh {

// Parsed algebra definition: either a builtin reference or an explicit
// structure-constant table, both validated on load.
struct AlgebraFile {
    AlgebraPtr algebra;
    std::map<std::string, Automorphism> automorphisms;
    std::string source; // "builtin:<spec>" or "explicit"

    const Automorphism& automorphism(const std::string& name) const;
};

// Throws ParseError for malformed input and ValidationError when the table
// violates an algebra invariant; diagnostics name the offending field.
AlgebraFile parse_algebra_file(const std::string& path);
AlgebraFile parse_algebra_text(const std::string& text, const std::string& origin);

// Emits the explicit-table form; the result re-parses and re-validates to
// the same algebra entry-for-entry.
std::string emit_algebra(const GradedAlgebra& A,
                         const std::map<std::string, Automorphism>& automorphisms);

} // namespace thh
