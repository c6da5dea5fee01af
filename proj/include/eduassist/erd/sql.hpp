#pragma once

#include "eduassist/erd/model.hpp"

#include <string>
#include <vector>

namespace eduassist::erd {

struct SqlStatement {
    std::string table;
    std::string text; // "CREATE TABLE ... (\n...\n);"

    friend bool operator==(const SqlStatement&, const SqlStatement&) = default;
};

struct SqlScript {
    std::vector<SqlStatement> statements;

    // Statements separated by one blank line, newline-terminated.
    std::string str() const;
};

// CREATE TABLE text for a single entity. Column lines read
// `  name TYPE [PRIMARY KEY] [NOT NULL] [REFERENCES T(col)]`; a composite
// key becomes a trailing table-level `PRIMARY KEY (a, b)` line instead.
std::string create_table(const Entity& entity);

// One CREATE TABLE per entity in topo_order(). Expects a validated model;
// throws CyclicDependency if the ref graph has a cycle.
SqlScript generate_sql(const ErdModel& model);

} // namespace eduassist::erd
