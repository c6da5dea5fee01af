#include "eduassist/erd/sql.hpp"

#include "eduassist/erd/order.hpp"

namespace eduassist::erd {

std::string SqlScript::str() const
{
    std::string out;
    for (std::size_t i = 0; i < statements.size(); ++i) {
        if (i > 0)
            out += "\n\n";
        out += statements[i].text;
    }
    if (!out.empty())
        out += "\n";
    return out;
}

std::string create_table(const Entity& entity)
{
    const bool composite_key = entity.primary_key_count() >= 2;

    std::vector<std::string> lines;
    for (const auto& a : entity.attributes) {
        std::string line = "  " + a.name + " " + to_string(a.type);
        if (a.is_pk && !composite_key)
            line += " PRIMARY KEY";
        if (a.not_null && !a.is_pk)
            line += " NOT NULL";
        if (a.ref)
            line += " REFERENCES " + a.ref->entity + "(" + a.ref->attribute + ")";
        lines.push_back(std::move(line));
    }
    if (composite_key) {
        std::string line = "  PRIMARY KEY (";
        bool first = true;
        for (const auto& a : entity.attributes) {
            if (!a.is_pk)
                continue;
            if (!first)
                line += ", ";
            line += a.name;
            first = false;
        }
        lines.push_back(line + ")");
    }

    std::string out = "CREATE TABLE " + entity.name + " (\n";
    for (std::size_t i = 0; i < lines.size(); ++i) {
        out += lines[i];
        out += (i + 1 < lines.size()) ? ",\n" : "\n";
    }
    out += ");";
    return out;
}

SqlScript generate_sql(const ErdModel& model)
{
    SqlScript script;
    for (const auto& name : topo_order(model)) {
        const Entity* e = model.find_entity(name);
        script.statements.push_back({name, create_table(*e)});
    }
    return script;
}

} // namespace eduassist::erd
