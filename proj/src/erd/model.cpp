#include "eduassist/erd/model.hpp"

#include <algorithm>

namespace eduassist::erd {

std::string to_string(const SqlType& t)
{
    switch (t.base) {
    case BaseType::Integer: return "INTEGER";
    case BaseType::Decimal: return "DECIMAL";
    case BaseType::Date: return "DATE";
    case BaseType::Boolean: return "BOOLEAN";
    case BaseType::Text: return "TEXT";
    case BaseType::Varchar: return "VARCHAR(" + std::to_string(t.length) + ")";
    }
    return "?";
}

std::string to_string(Cardinality c)
{
    switch (c) {
    case Cardinality::One: return "1";
    case Cardinality::ZeroOrOne: return "0..1";
    case Cardinality::OneOrMany: return "1..*";
    case Cardinality::ZeroOrMany: return "0..*";
    }
    return "?";
}

const Attribute* Entity::find_attribute(const std::string& attr) const
{
    auto it = std::find_if(attributes.begin(), attributes.end(),
                           [&](const Attribute& a) { return a.name == attr; });
    return it == attributes.end() ? nullptr : &*it;
}

std::size_t Entity::primary_key_count() const
{
    return static_cast<std::size_t>(
        std::count_if(attributes.begin(), attributes.end(), [](const Attribute& a) { return a.is_pk; }));
}

const Entity* ErdModel::find_entity(const std::string& name) const
{
    auto it = std::find_if(entities.begin(), entities.end(),
                           [&](const Entity& e) { return e.name == name; });
    return it == entities.end() ? nullptr : &*it;
}

std::string to_dsl(const ErdModel& model)
{
    std::string out;
    for (const auto& e : model.entities) {
        out += "entity " + e.name + " {\n";
        for (const auto& a : e.attributes) {
            out += "  " + a.name + ": " + to_string(a.type);
            if (a.is_pk)
                out += " pk";
            if (a.not_null)
                out += " notnull";
            if (a.ref)
                out += " ref(" + a.ref->entity + "." + a.ref->attribute + ")";
            out += "\n";
        }
        out += "}\n\n";
    }
    for (const auto& r : model.relationships)
        out += "rel " + r.left + " " + to_string(r.left_card) + " -- " + to_string(r.right_card) + " "
            + r.right + "\n";
    return out;
}

} // namespace eduassist::erd
