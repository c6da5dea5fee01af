#include "eduassist/erd/validate.hpp"

#include <set>
#include <string>

namespace eduassist::erd {

namespace {

Diagnostic at(const SourceLoc& loc, Severity sev, std::string code, std::string msg)
{
    return {sev, loc.line, loc.column, std::move(code), std::move(msg)};
}

bool references_entity(const Entity& e, const std::string& target)
{
    for (const auto& a : e.attributes)
        if (a.ref && a.ref->entity == target)
            return true;
    return false;
}

} // namespace

std::vector<Diagnostic> validate_erd(const ErdModel& model)
{
    std::vector<Diagnostic> out;

    std::set<std::string> seen_entities;
    for (const auto& e : model.entities) {
        if (!seen_entities.insert(e.name).second)
            out.push_back(at(e.loc, Severity::Error, "duplicate_name", "duplicate entity '" + e.name + "'"));

        if (e.attributes.empty())
            out.push_back(at(e.loc, Severity::Error, "empty_entity",
                             "entity '" + e.name + "' declares no attributes"));

        std::set<std::string> seen_attrs;
        for (const auto& a : e.attributes) {
            if (!seen_attrs.insert(a.name).second)
                out.push_back(at(a.loc, Severity::Error, "duplicate_name",
                                 "duplicate attribute '" + a.name + "' in entity '" + e.name + "'"));
            if (!a.ref)
                continue;

            const Entity* target = model.find_entity(a.ref->entity);
            if (!target) {
                out.push_back(at(a.loc, Severity::Error, "unknown_entity",
                                 "unknown entity '" + a.ref->entity + "' in ref of " + e.name + "." + a.name));
                continue;
            }
            const Attribute* col = target->find_attribute(a.ref->attribute);
            if (!col) {
                out.push_back(at(a.loc, Severity::Error, "unknown_attribute",
                                 "unknown attribute '" + a.ref->attribute + "' in entity '" + a.ref->entity
                                     + "' (ref of " + e.name + "." + a.name + ")"));
                continue;
            }
            if (!(col->type == a.type))
                out.push_back(at(a.loc, Severity::Error, "type_mismatch",
                                 "type mismatch: " + e.name + "." + a.name + " is " + to_string(a.type) + " but "
                                     + target->name + "." + col->name + " is " + to_string(col->type)));
        }

        if (!e.attributes.empty() && e.primary_key_count() == 0)
            out.push_back(at(e.loc, Severity::Warning, "no_primary_key",
                             "entity '" + e.name + "' has no primary key attribute"));
    }

    for (const auto& r : model.relationships) {
        bool endpoints_ok = true;
        for (const auto* name : {&r.left, &r.right}) {
            if (!model.find_entity(*name)) {
                out.push_back(at(r.loc, Severity::Error, "unknown_entity",
                                 "unknown entity '" + *name + "' in relationship"));
                endpoints_ok = false;
            }
        }
        if (!endpoints_ok || !is_many(r.left_card) || !is_many(r.right_card))
            continue;

        bool associated = false;
        for (const auto& e : model.entities)
            if (references_entity(e, r.left) && references_entity(e, r.right))
                associated = true;
        if (!associated)
            out.push_back(at(r.loc, Severity::Warning, "many_to_many",
                             "many-to-many relationship between '" + r.left + "' and '" + r.right
                                 + "' has no associative entity referencing both"));
    }

    return out;
}

} // namespace eduassist::erd
