#include <doctest.h>

#include "../support/erd_generators.hpp"
#include "eduassist/erd/parser.hpp"

#include <random>

using namespace eduassist;
using namespace eduassist::erd;

namespace {

bool has_code(const std::vector<Diagnostic>& diags, const std::string& code)
{
    for (const auto& d : diags)
        if (d.code == code)
            return true;
    return false;
}

const Diagnostic& first_error(const ParseResult& r)
{
    for (const auto& d : r.diagnostics)
        if (d.is_error())
            return d;
    FAIL("no error diagnostic");
    return r.diagnostics.front();
}

} // namespace

TEST_CASE("minimal entity")
{
    auto r = parse_erd("entity E { id: INTEGER pk }");
    REQUIRE(r.ok());
    REQUIRE(r.model.entities.size() == 1);
    const auto& e = r.model.entities[0];
    CHECK(e.name == "E");
    REQUIRE(e.attributes.size() == 1);
    CHECK(e.attributes[0].name == "id");
    CHECK(e.attributes[0].type == SqlType{BaseType::Integer, 0});
    CHECK(e.attributes[0].is_pk);
    CHECK_FALSE(e.attributes[0].not_null);
    CHECK(r.diagnostics.empty());
}

TEST_CASE("empty input warns about missing entities")
{
    for (const char* src : {"", "   \n# only a comment\n"}) {
        auto r = parse_erd(src);
        CHECK(r.ok());
        CHECK(r.model.entities.empty());
        REQUIRE(r.diagnostics.size() == 1);
        CHECK(r.diagnostics[0].severity == Severity::Warning);
        CHECK(r.diagnostics[0].message == "no entities");
    }
}

TEST_CASE("modifiers, types and relationships")
{
    auto r = parse_erd(R"(
        entity A {
          id: INTEGER pk notnull   # pk + notnull is legal
          label: VARCHAR(40) notnull
          flag: BOOLEAN
          body: TEXT
          when: DATE
          amount: DECIMAL
        }
        entity B { id: INTEGER pk  a: INTEGER ref(A.id) }
        rel A 1 -- 0..* B
        rel A 0..1 -- 1..* B
    )");
    REQUIRE(r.ok());
    REQUIRE(r.model.entities.size() == 2);
    const auto& a = r.model.entities[0];
    CHECK(a.attributes[0].is_pk);
    CHECK(a.attributes[0].not_null);
    CHECK(a.attributes[1].type == SqlType{BaseType::Varchar, 40});
    CHECK(a.attributes[2].type.base == BaseType::Boolean);
    const auto& b = r.model.entities[1];
    REQUIRE(b.attributes[1].ref);
    CHECK(*b.attributes[1].ref == ColumnRef{"A", "id"});
    REQUIRE(r.model.relationships.size() == 2);
    CHECK(r.model.relationships[0].left_card == Cardinality::One);
    CHECK(r.model.relationships[0].right_card == Cardinality::ZeroOrMany);
    CHECK(r.model.relationships[1].left_card == Cardinality::ZeroOrOne);
    CHECK(r.model.relationships[1].right_card == Cardinality::OneOrMany);
}

TEST_CASE("company schema parses to five entities with a composite key")
{
    auto r = parse_erd(R"(
        entity Employee { employeeID: INTEGER pk }
        entity Department { departmentID: INTEGER pk }
        entity Salary_Grade { gradeID: INTEGER pk minSalary: DECIMAL maxSalary: DECIMAL }
        entity Project_Assignment {
          employeeID: INTEGER pk ref(Employee.employeeID)
          projectNo: INTEGER pk ref(Project.projectNo)
          startDate: DATE endDate: DATE allocatedHours: INTEGER
        }
        entity Project {
          projectNo: INTEGER pk projectName: VARCHAR(255) notnull
          departmentID: INTEGER ref(Department.departmentID)
        }
    )");
    REQUIRE(r.ok());
    REQUIRE(r.model.entities.size() == 5);
    const Entity* pa = r.model.find_entity("Project_Assignment");
    REQUIRE(pa);
    CHECK(pa->primary_key_count() == 2);
}

TEST_CASE("syntax errors carry positions and expected-token messages")
{
    SUBCASE("unknown keyword")
    {
        auto r = parse_erd("entty E { id: INTEGER }");
        CHECK_FALSE(r.ok());
        const auto& d = first_error(r);
        CHECK(d.line == 1);
        CHECK(d.column == 1);
        CHECK(d.message.find("expected 'entity' or 'rel'") != std::string::npos);
    }
    SUBCASE("unbalanced brace")
    {
        auto r = parse_erd("entity E {\n  id: INTEGER pk\n");
        CHECK_FALSE(r.ok());
        CHECK(first_error(r).message.find("expected '}'") != std::string::npos);
        CHECK(first_error(r).line == 3);
    }
    SUBCASE("bad cardinality")
    {
        auto r = parse_erd("entity A { id: INTEGER pk }\nrel A 2 -- 1 A\n");
        CHECK_FALSE(r.ok());
        CHECK(first_error(r).message.find("bad cardinality") != std::string::npos);
        CHECK(first_error(r).line == 2);
        CHECK(first_error(r).column == 7);

        CHECK_FALSE(parse_erd("entity A { id: INTEGER pk }\nrel A 0 -- 1 A").ok());
        CHECK_FALSE(parse_erd("entity A { id: INTEGER pk }\nrel A 1..1 -- 1 A").ok());
    }
    SUBCASE("bad VARCHAR arity")
    {
        for (const char* src : {"entity A { s: VARCHAR }", "entity A { s: VARCHAR() }",
                                "entity A { s: VARCHAR(1 2) }", "entity A { s: VARCHAR(0) }",
                                "entity A { s: VARCHAR(99999999999) }"}) {
            CAPTURE(src);
            auto r = parse_erd(src);
            CHECK_FALSE(r.ok());
            CHECK(first_error(r).message.find("VARCHAR") != std::string::npos);
        }
    }
    SUBCASE("unknown type and modifier")
    {
        CHECK(first_error(parse_erd("entity A { id: int }")).message.find("unknown type") != std::string::npos);
        CHECK(first_error(parse_erd("entity A { id: INTEGER primary }")).message.find("unknown modifier")
              != std::string::npos);
    }
    SUBCASE("stray character")
    {
        auto r = parse_erd("entity A { id: INTEGER pk, }");
        CHECK_FALSE(r.ok());
        CHECK(first_error(r).column == 26);
    }
}

TEST_CASE("recovery reports several independent errors")
{
    auto r = parse_erd(R"(entity A {
  id: INTEGR pk
  name: VARCHAR
  ok: TEXT
}
entity B { x: DATE }
bogus
)");
    std::size_t errors = 0;
    for (const auto& d : r.diagnostics)
        errors += d.is_error();
    CHECK(errors == 3);
    // Well-formed declarations after the errors are still recovered.
    REQUIRE(r.model.entities.size() == 2);
    CHECK(r.model.entities[0].find_attribute("ok"));
    CHECK(r.model.entities[1].name == "B");
}

TEST_CASE("parsing stops at the error cap")
{
    std::string src;
    for (int i = 0; i < 200; ++i)
        src += "garbage" + std::to_string(i) + " @ ";
    auto r = parse_erd(src);
    std::size_t errors = 0;
    for (const auto& d : r.diagnostics)
        errors += d.is_error();
    CHECK(errors == kMaxParseErrors);
}

TEST_CASE("pretty-print round trip on generated models")
{
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        const auto model = testing::random_model(rng);
        const auto text = to_dsl(model);
        auto r = parse_erd(text);
        CAPTURE(text);
        REQUIRE(r.ok());
        CHECK(r.model == model);
    }
}

TEST_CASE("random bytes never escape as exceptions")
{
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> byte(0, 255);
    for (int i = 0; i < 300; ++i) {
        std::string src(std::uniform_int_distribution<std::size_t>(0, 256)(rng), '\0');
        for (auto& c : src)
            c = static_cast<char>(byte(rng));
        CHECK_NOTHROW(parse_erd(src));
    }
}
