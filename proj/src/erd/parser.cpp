#include "eduassist/erd/parser.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <limits>
#include <optional>
#include <tuple>

namespace eduassist::erd {

namespace {

enum class Tok { Ident, Integer, LBrace, RBrace, Colon, LParen, RParen, Dot, DotDot, Star, DashDash, End };

struct Token {
    Tok kind;
    std::string_view text;
    SourceLoc loc;
};

std::string describe(const Token& t)
{
    switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::Ident: return "identifier '" + std::string(t.text) + "'";
    case Tok::Integer: return "number '" + std::string(t.text) + "'";
    default: return "'" + std::string(t.text) + "'";
    }
}

bool ident_start(char c)
{
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool ident_char(char c)
{
    return ident_start(c) || (c >= '0' && c <= '9');
}

bool digit(char c)
{
    return c >= '0' && c <= '9';
}

class Lexer {
public:
    Lexer(std::string_view src, std::vector<Diagnostic>& diags)
        : src_(src), diags_(diags)
    {
    }

    std::vector<Token> run()
    {
        std::vector<Token> out;
        while (true) {
            skip_trivia();
            const SourceLoc loc{line_, col_};
            if (pos_ >= src_.size()) {
                out.push_back({Tok::End, {}, loc});
                return out;
            }
            const char c = src_[pos_];
            const std::size_t start = pos_;
            if (ident_start(c)) {
                while (pos_ < src_.size() && ident_char(src_[pos_]))
                    advance();
                out.push_back({Tok::Ident, src_.substr(start, pos_ - start), loc});
            } else if (digit(c)) {
                while (pos_ < src_.size() && digit(src_[pos_]))
                    advance();
                out.push_back({Tok::Integer, src_.substr(start, pos_ - start), loc});
            } else if (c == '.' && peek(1) == '.') {
                advance();
                advance();
                out.push_back({Tok::DotDot, src_.substr(start, 2), loc});
            } else if (c == '-' && peek(1) == '-') {
                advance();
                advance();
                out.push_back({Tok::DashDash, src_.substr(start, 2), loc});
            } else if (auto k = single(c)) {
                advance();
                out.push_back({*k, src_.substr(start, 1), loc});
            } else {
                bad_char(loc);
            }
        }
    }

private:
    static std::optional<Tok> single(char c)
    {
        switch (c) {
        case '{': return Tok::LBrace;
        case '}': return Tok::RBrace;
        case ':': return Tok::Colon;
        case '(': return Tok::LParen;
        case ')': return Tok::RParen;
        case '.': return Tok::Dot;
        case '*': return Tok::Star;
        default: return std::nullopt;
        }
    }

    char peek(std::size_t ahead) const
    {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    void advance()
    {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else if ((static_cast<unsigned char>(src_[pos_]) & 0xC0) != 0x80) {
            ++col_;
        }
        ++pos_;
    }

    void skip_trivia()
    {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
                advance();
            } else if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n')
                    advance();
            } else {
                break;
            }
        }
    }

    // A run of unexpected bytes yields a single diagnostic.
    void bad_char(SourceLoc loc)
    {
        const std::size_t start = pos_;
        advance();
        while (pos_ < src_.size() && (static_cast<unsigned char>(src_[pos_]) & 0xC0) == 0x80)
            advance();
        diags_.push_back({Severity::Error, loc.line, loc.column, "syntax_error",
                          "unexpected character '" + std::string(src_.substr(start, pos_ - start)) + "'"});
    }

    std::string_view src_;
    std::vector<Diagnostic>& diags_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

struct TooManyErrors {};

class Parser {
public:
    Parser(std::vector<Token> tokens, std::vector<Diagnostic>& diags)
        : toks_(std::move(tokens)), diags_(diags)
    {
        for (const auto& d : diags_)
            if (d.is_error())
                ++errors_;
    }

    ErdModel run()
    {
        ErdModel model;
        try {
            check_limit();
            while (cur().kind != Tok::End) {
                if (is_word("entity")) {
                    parse_entity(model);
                } else if (is_word("rel")) {
                    parse_rel(model);
                } else {
                    error(cur(), "expected 'entity' or 'rel', found " + describe(cur()));
                    skip_to_declaration();
                }
            }
        } catch (const TooManyErrors&) {
        }
        if (model.entities.empty() && errors_ == 0) {
            diags_.push_back({Severity::Warning, 0, 0, "no_entities", "no entities"});
        }
        return model;
    }

private:
    struct Recover {};

    const Token& cur() const { return toks_[pos_]; }
    const Token& next() const { return toks_[pos_ + 1 < toks_.size() ? pos_ + 1 : pos_]; }

    void bump()
    {
        if (cur().kind != Tok::End)
            ++pos_;
    }

    bool is_word(std::string_view w) const
    {
        return cur().kind == Tok::Ident && cur().text == w;
    }

    void check_limit()
    {
        if (errors_ >= kMaxParseErrors)
            throw TooManyErrors{};
    }

    void error(const Token& at, std::string msg)
    {
        diags_.push_back({Severity::Error, at.loc.line, at.loc.column, "syntax_error", std::move(msg)});
        ++errors_;
        check_limit();
    }

    [[noreturn]] void fail(const Token& at, std::string msg)
    {
        error(at, std::move(msg));
        throw Recover{};
    }

    const Token& expect(Tok kind, std::string_view what)
    {
        if (cur().kind != kind)
            fail(cur(), "expected " + std::string(what) + ", found " + describe(cur()));
        const Token& t = cur();
        bump();
        return t;
    }

    void skip_to_declaration()
    {
        bump();
        while (cur().kind != Tok::End && !is_word("entity") && !is_word("rel"))
            bump();
    }

    // Inside an entity body: stop before '}' or before the next `name :`.
    void skip_to_attribute()
    {
        while (cur().kind != Tok::End && cur().kind != Tok::RBrace
               && !(cur().kind == Tok::Ident && next().kind == Tok::Colon))
            bump();
    }

    void parse_entity(ErdModel& model)
    {
        const Token kw = cur();
        bump();
        Entity entity;
        entity.loc = kw.loc;
        try {
            entity.name = std::string(expect(Tok::Ident, "entity name").text);
            expect(Tok::LBrace, "'{'");
        } catch (const Recover&) {
            // Swallow a following body, if any, so its attributes do not
            // surface as top-level garbage.
            while (cur().kind != Tok::End && cur().kind != Tok::RBrace && !is_word("entity") && !is_word("rel"))
                bump();
            if (cur().kind == Tok::RBrace)
                bump();
            return;
        }

        while (true) {
            if (cur().kind == Tok::RBrace) {
                bump();
                break;
            }
            if (cur().kind == Tok::End) {
                error(cur(), "expected '}' to close entity '" + entity.name + "' opened at line "
                                 + std::to_string(kw.loc.line));
                break;
            }
            if (cur().kind == Tok::Ident && next().kind == Tok::Colon) {
                try {
                    entity.attributes.push_back(parse_attribute());
                } catch (const Recover&) {
                    if (cur().kind == Tok::Ident && next().kind == Tok::Colon)
                        continue;
                    bump();
                    skip_to_attribute();
                }
                continue;
            }
            if (is_word("entity") || is_word("rel")) {
                error(cur(), "expected '}' to close entity '" + entity.name + "' before " + describe(cur()));
                break;
            }
            error(cur(), "expected attribute declaration 'name: TYPE', found " + describe(cur()));
            bump();
            skip_to_attribute();
        }
        model.entities.push_back(std::move(entity));
    }

    Attribute parse_attribute()
    {
        Attribute attr;
        const Token& name = expect(Tok::Ident, "attribute name");
        attr.name = std::string(name.text);
        attr.loc = name.loc;
        expect(Tok::Colon, "':'");
        attr.type = parse_type();

        while (cur().kind == Tok::Ident && next().kind != Tok::Colon) {
            const Token& m = cur();
            if (m.text == "pk") {
                bump();
                attr.is_pk = true;
            } else if (m.text == "notnull") {
                bump();
                attr.not_null = true;
            } else if (m.text == "ref") {
                bump();
                if (attr.ref)
                    fail(m, "duplicate 'ref' modifier on attribute '" + attr.name + "'");
                expect(Tok::LParen, "'(' after 'ref'");
                ColumnRef ref;
                ref.entity = std::string(expect(Tok::Ident, "referenced entity name").text);
                expect(Tok::Dot, "'.' in ref(Entity.attribute)");
                ref.attribute = std::string(expect(Tok::Ident, "referenced attribute name").text);
                expect(Tok::RParen, "')'");
                attr.ref = std::move(ref);
            } else if (m.text == "entity" || m.text == "rel") {
                break;
            } else {
                fail(m, "unknown modifier '" + std::string(m.text) + "' (expected pk, notnull or ref)");
            }
        }
        if (cur().kind != Tok::RBrace && cur().kind != Tok::Ident && cur().kind != Tok::End)
            fail(cur(), "unexpected " + describe(cur()) + " after attribute '" + attr.name + "'");
        return attr;
    }

    SqlType parse_type()
    {
        const Token& t = cur();
        if (t.kind != Tok::Ident)
            fail(t, "expected type, found " + describe(t));
        bump();
        if (t.text == "INTEGER")
            return {BaseType::Integer, 0};
        if (t.text == "DECIMAL")
            return {BaseType::Decimal, 0};
        if (t.text == "DATE")
            return {BaseType::Date, 0};
        if (t.text == "BOOLEAN")
            return {BaseType::Boolean, 0};
        if (t.text == "TEXT")
            return {BaseType::Text, 0};
        if (t.text == "VARCHAR") {
            if (cur().kind != Tok::LParen)
                fail(t, "VARCHAR requires exactly one length argument: VARCHAR(n)");
            bump();
            const Token& n = cur();
            if (n.kind != Tok::Integer)
                fail(n, "VARCHAR requires exactly one length argument: VARCHAR(n)");
            bump();
            std::uint32_t len = 0;
            const auto [p, ec] = std::from_chars(n.text.data(), n.text.data() + n.text.size(), len);
            if (ec != std::errc{} || len == 0)
                fail(n, "VARCHAR length must be between 1 and " + std::to_string(std::numeric_limits<std::uint32_t>::max()));
            if (cur().kind != Tok::RParen)
                fail(cur(), "VARCHAR requires exactly one length argument: VARCHAR(n)");
            bump();
            return {BaseType::Varchar, len};
        }
        fail(t, "unknown type '" + std::string(t.text)
                    + "' (expected INTEGER, DECIMAL, DATE, BOOLEAN, TEXT or VARCHAR(n))");
    }

    Cardinality parse_card()
    {
        const Token& t = cur();
        auto bad = [&] { fail(t, "bad cardinality (expected 1, 0..1, 1..* or 0..*)"); };
        if (t.kind != Tok::Integer || (t.text != "0" && t.text != "1"))
            bad();
        bump();
        if (cur().kind != Tok::DotDot) {
            if (t.text == "0")
                bad();
            return Cardinality::One;
        }
        bump();
        if (cur().kind == Tok::Star) {
            bump();
            return t.text == "0" ? Cardinality::ZeroOrMany : Cardinality::OneOrMany;
        }
        if (cur().kind == Tok::Integer && cur().text == "1" && t.text == "0") {
            bump();
            return Cardinality::ZeroOrOne;
        }
        bad();
        return Cardinality::One;
    }

    void parse_rel(ErdModel& model)
    {
        const Token kw = cur();
        bump();
        try {
            Relationship rel;
            rel.loc = kw.loc;
            rel.left = std::string(expect(Tok::Ident, "entity name after 'rel'").text);
            rel.left_card = parse_card();
            expect(Tok::DashDash, "'--'");
            rel.right_card = parse_card();
            rel.right = std::string(expect(Tok::Ident, "entity name").text);
            model.relationships.push_back(std::move(rel));
        } catch (const Recover&) {
            while (cur().kind != Tok::End && !is_word("entity") && !is_word("rel"))
                bump();
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::vector<Diagnostic>& diags_;
    std::size_t errors_ = 0;
};

} // namespace

ParseResult parse_erd(std::string_view source)
{
    ParseResult result;
    auto tokens = Lexer(source, result.diagnostics).run();
    result.model = Parser(std::move(tokens), result.diagnostics).run();
    // Lexer and parser diagnostics interleave by position; the lexer can also
    // overshoot the cap on pathological input.
    std::stable_sort(result.diagnostics.begin(), result.diagnostics.end(),
                     [](const Diagnostic& a, const Diagnostic& b) {
                         return std::tie(a.line, a.column) < std::tie(b.line, b.column);
                     });
    std::size_t errors = 0;
    std::vector<Diagnostic> capped;
    for (auto& d : result.diagnostics) {
        if (d.is_error() && errors++ >= kMaxParseErrors)
            continue;
        capped.push_back(std::move(d));
    }
    result.diagnostics = std::move(capped);
    return result;
}

} // namespace eduassist::erd
