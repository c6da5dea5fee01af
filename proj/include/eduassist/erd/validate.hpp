#pragma once

#include "eduassist/diagnostic.hpp"
#include "eduassist/erd/model.hpp"

#include <vector>

namespace eduassist::erd {

// Semantic checks on a parsed model. Errors: duplicate entity/attribute
// names, empty entities, unresolved refs, ref type mismatches, relationships
// naming undeclared entities. Warnings: entities without a primary key,
// many-to-many relationships with no associative entity referencing both ends.
std::vector<Diagnostic> validate_erd(const ErdModel& model);

} // namespace eduassist::erd
