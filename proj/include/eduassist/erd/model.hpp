#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace eduassist::erd {

enum class BaseType { Integer, Decimal, Date, Boolean, Text, Varchar };

struct SqlType {
    BaseType base = BaseType::Integer;
    std::uint32_t length = 0; // VARCHAR only, >= 1

    friend bool operator==(const SqlType&, const SqlType&) = default;
};

// "INTEGER", "VARCHAR(255)", ...
std::string to_string(const SqlType& t);

enum class Cardinality { One, ZeroOrOne, OneOrMany, ZeroOrMany };

std::string to_string(Cardinality c);

inline bool is_many(Cardinality c)
{
    return c == Cardinality::OneOrMany || c == Cardinality::ZeroOrMany;
}

struct SourceLoc {
    std::size_t line = 0;
    std::size_t column = 0;
};

struct ColumnRef {
    std::string entity;
    std::string attribute;

    friend bool operator==(const ColumnRef&, const ColumnRef&) = default;
};

// Equality on the model types is structural: source locations are ignored.

struct Attribute {
    std::string name;
    SqlType type;
    bool is_pk = false;
    bool not_null = false;
    std::optional<ColumnRef> ref;
    SourceLoc loc;

    friend bool operator==(const Attribute& a, const Attribute& b)
    {
        return a.name == b.name && a.type == b.type && a.is_pk == b.is_pk
            && a.not_null == b.not_null && a.ref == b.ref;
    }
};

struct Entity {
    std::string name;
    std::vector<Attribute> attributes;
    SourceLoc loc;

    const Attribute* find_attribute(const std::string& attr) const;
    std::size_t primary_key_count() const;

    friend bool operator==(const Entity& a, const Entity& b)
    {
        return a.name == b.name && a.attributes == b.attributes;
    }
};

struct Relationship {
    std::string left;
    Cardinality left_card = Cardinality::One;
    std::string right;
    Cardinality right_card = Cardinality::One;
    SourceLoc loc;

    friend bool operator==(const Relationship& a, const Relationship& b)
    {
        return a.left == b.left && a.left_card == b.left_card && a.right == b.right
            && a.right_card == b.right_card;
    }
};

struct ErdModel {
    std::vector<Entity> entities;
    std::vector<Relationship> relationships;

    // First declaration with this name, or nullptr.
    const Entity* find_entity(const std::string& name) const;

    friend bool operator==(const ErdModel&, const ErdModel&) = default;
};

// Renders the model back into the textual ERD notation. Parsing the result
// yields a structurally equal model.
std::string to_dsl(const ErdModel& model);

} // namespace eduassist::erd
