#pragma once

#include "eduassist/diagnostic.hpp"
#include "eduassist/erd/model.hpp"

#include <string_view>
#include <vector>

namespace eduassist::erd {

// Parsing gives up after this many errors.
inline constexpr std::size_t kMaxParseErrors = 50;

struct ParseResult {
    ErdModel model;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return !has_errors(diagnostics); }
};

// Recursive-descent parser for the textual ERD notation:
//
//   document     = { entity_decl | rel_decl } ;
//   entity_decl  = "entity" ident "{" { attr_decl } "}" ;
//   attr_decl    = ident ":" type { modifier } ;
//   type         = "INTEGER" | "DECIMAL" | "DATE" | "BOOLEAN" | "TEXT"
//                | "VARCHAR" "(" integer ")" ;
//   modifier     = "pk" | "notnull" | "ref" "(" ident "." ident ")" ;
//   rel_decl     = "rel" ident card "--" card ident ;
//   card         = "1" | "0..1" | "1..*" | "0..*" ;
//
// `#` starts a comment running to end of line. Never throws; malformed
// input produces diagnostics and a best-effort partial model.
ParseResult parse_erd(std::string_view source);

} // namespace eduassist::erd
