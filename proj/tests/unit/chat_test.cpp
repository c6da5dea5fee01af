#include <doctest.h>

#include "../support/stub_server.hpp"
#include "eduassist/chat/conversation.hpp"
#include "eduassist/chat/dataset.hpp"
#include "eduassist/chat/prompt_index.hpp"
#include "eduassist/chat/provider.hpp"
#include "eduassist/text.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

using namespace eduassist;
using namespace eduassist::chat;
using namespace std::chrono_literals;

namespace {

std::vector<FinetunePair> pairs_of(std::initializer_list<std::pair<const char*, const char*>> items)
{
    std::vector<FinetunePair> out;
    for (auto [p, c] : items)
        out.push_back({p, c, out.size() + 1});
    return out;
}

// Dense TF-IDF cosine computed from scratch: the reference for retrieval.
struct DenseOracle {
    std::vector<std::string> terms;
    std::vector<double> idf;
    std::vector<std::vector<double>> docs;

    explicit DenseOracle(const std::vector<FinetunePair>& pairs)
    {
        std::set<std::string> all;
        std::vector<std::vector<std::string>> toks;
        for (const auto& p : pairs) {
            toks.push_back(text::tokenize(p.prompt));
            all.insert(toks.back().begin(), toks.back().end());
        }
        terms.assign(all.begin(), all.end());
        for (const auto& t : terms) {
            int df = 0;
            for (const auto& d : toks)
                df += std::find(d.begin(), d.end(), t) != d.end();
            idf.push_back(std::log(double(pairs.size()) / df));
        }
        for (const auto& d : toks)
            docs.push_back(weights(d));
    }

    std::vector<double> weights(const std::vector<std::string>& toks) const
    {
        std::vector<double> v(terms.size(), 0.0);
        for (std::size_t k = 0; k < terms.size(); ++k)
            v[k] = double(std::count(toks.begin(), toks.end(), terms[k])) * idf[k];
        return v;
    }

    static double cos(const std::vector<double>& a, const std::vector<double>& b)
    {
        double ab = 0, aa = 0, bb = 0;
        for (std::size_t k = 0; k < a.size(); ++k) {
            ab += a[k] * b[k];
            aa += a[k] * a[k];
            bb += b[k] * b[k];
        }
        return (aa == 0 || bb == 0) ? 0.0 : ab / std::sqrt(aa * bb);
    }

    // Index of the best nonzero document, or -1.
    int argmax(const std::string& question) const
    {
        const auto q = weights(text::tokenize(question));
        int best = -1;
        double best_sim = -1;
        for (std::size_t i = 0; i < docs.size(); ++i) {
            if (cos(docs[i], docs[i]) == 0)
                continue;
            const double s = cos(q, docs[i]);
            if (s > best_sim + 1e-12) {
                best = int(i);
                best_sim = s;
            }
        }
        return best;
    }
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ProviderConfig remote_cfg(const std::string& url, ProviderKind kind = ProviderKind::RemoteText)
{
    ProviderConfig cfg;
    cfg.kind = kind;
    cfg.endpoint_url = url;
    cfg.api_key = "sk-test";
    cfg.model_name = "course-model";
    cfg.timeout = 2s;
    return cfg;
}

Conversation words_conv(std::size_t budget, std::initializer_list<std::size_t> counts)
{
    std::vector<Turn> turns;
    bool user = true;
    for (auto n : counts) {
        std::string t;
        for (std::size_t i = 0; i < n; ++i)
            t += (i ? " w" : "w") + std::to_string(i);
        turns.push_back({user ? Role::User : Role::Assistant, t, Timestamp{}});
        user = !user;
    }
    return Conversation::from_turns("c", budget, std::move(turns));
}

} // namespace

TEST_CASE("dataset: the documented format line")
{
    const auto r = parse_finetune_dataset(R"({"prompt": "<prompt text>", "completion": "<ideal generated text>"})");
    REQUIRE(r.pairs.size() == 1);
    CHECK(r.pairs[0] == FinetunePair{"<prompt text>", "<ideal generated text>", 1});
    CHECK(r.diagnostics.empty());
}

TEST_CASE("dataset: missing field")
{
    try {
        parse_finetune_dataset(R"({"prompt": "q"})");
        FAIL("expected EmptyDataset");
    } catch (const EmptyDataset& e) {
        REQUIRE(e.diagnostics().size() == 1);
        CHECK(e.diagnostics()[0].line == 1);
        CHECK(e.diagnostics()[0].message == "missing field completion");
    }
    CHECK_THROWS_AS(parse_finetune_dataset(""), EmptyDataset);
}

TEST_CASE("dataset: duplicate prompts warn and keep both")
{
    const auto r = parse_finetune_dataset("{\"prompt\": \"q\", \"completion\": \"a\"}\n"
                                          "{\"prompt\": \"q\", \"completion\": \"b\"}\n");
    REQUIRE(r.pairs.size() == 2);
    CHECK(r.pairs[0].completion == "a");
    CHECK(r.pairs[1].completion == "b");
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].severity == Severity::Warning);
    CHECK(r.diagnostics[0].code == "duplicate_prompt");
    CHECK(r.diagnostics[0].line == 2);
}

TEST_CASE("dataset: malformed lines are skipped with one diagnostic each")
{
    const auto r = parse_finetune_dataset("{\"prompt\": \"ok\", \"completion\": \"fine\", \"source\": \"quiz 3\"}\n"
                                          "not json\n"
                                          "[1, 2]\n"
                                          "\n"
                                          "{\"prompt\": 5, \"completion\": \"x\"}\n"
                                          "{\"prompt\": \"  \", \"completion\": \"x\"}\r\n"
                                          "{\"completion\": \"x\"}\n");
    REQUIRE(r.pairs.size() == 1);
    CHECK(r.pairs[0].line_no == 1);
    std::vector<std::pair<std::size_t, Severity>> where;
    for (const auto& d : r.diagnostics)
        where.emplace_back(d.line, d.severity);
    CHECK(where == std::vector<std::pair<std::size_t, Severity>>{{1, Severity::Warning},
                                                                   {2, Severity::Error},
                                                                   {3, Severity::Error},
                                                                   {5, Severity::Error},
                                                                   {6, Severity::Error},
                                                                   {7, Severity::Error}});
    CHECK(r.diagnostics[5].message == "missing field prompt");
}

TEST_CASE("dataset: serialize then parse is a fixed point")
{
    std::mt19937 rng(1);
    const std::string alphabet = "abc xyz\"\\\t/\xC3\xA9\xE2\x82\xAC{}";
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<FinetunePair> pairs;
        const auto n = std::uniform_int_distribution<int>(1, 8)(rng);
        for (int i = 0; i < n; ++i) {
            auto gen = [&] {
                std::string s = "p";
                const auto len = std::uniform_int_distribution<int>(0, 12)(rng);
                for (int k = 0; k < len; ++k) {
                    // pick whole UTF-8 sequences only
                    const auto c = std::uniform_int_distribution<int>(0, 10)(rng);
                    static const char* pieces[] = {"a", "b", " ", "\"", "\\", "\t", "/", "\xC3\xA9", "\xE2\x82\xAC", "{", "}"};
                    s += pieces[c];
                }
                return s;
            };
            pairs.push_back({gen(), gen(), std::size_t(i + 1)});
        }
        const auto text = serialize_finetune_dataset(pairs);
        const auto parsed = parse_finetune_dataset(text);
        CHECK(parsed.pairs == pairs);
        CHECK(serialize_finetune_dataset(parsed.pairs) == text);
    }
    (void)alphabet;
}

TEST_CASE("index: single document collapses idf")
{
    const PromptIndex idx(pairs_of({{"hello hello", "hi"}}));
    CHECK(idx.vocabulary() == std::map<std::string, std::size_t>{{"hello", 0}});
    CHECK(idx.idf()[0] == 0.0);
    CHECK(idx.vectors()[0].empty());
    CHECK_THROWS_AS(PromptIndex({}), std::invalid_argument);
}

TEST_CASE("index: hand-computed two-document weights")
{
    const PromptIndex idx(pairs_of({{"a b", "1"}, {"a c", "2"}}));
    const auto& voc = idx.vocabulary();
    CHECK(idx.idf()[voc.at("a")] == 0.0);
    CHECK(idx.idf()[voc.at("b")] == doctest::Approx(std::log(2.0)));
    CHECK(idx.idf()[voc.at("c")] == doctest::Approx(std::log(2.0)));
    REQUIRE(idx.vectors()[0].size() == 1);
    CHECK(idx.vectors()[0][0].first == voc.at("b"));
    CHECK(idx.vectors()[0][0].second == doctest::Approx(1.0));
    REQUIRE(idx.vectors()[1].size() == 1);
    CHECK(idx.vectors()[1][0].first == voc.at("c"));
}

TEST_CASE("index: disjoint vocabularies are orthogonal; norms and symmetry")
{
    const PromptIndex idx(pairs_of({{"alpha beta", "1"}, {"gamma delta", "2"}, {"alpha gamma epsilon", "3"}}));
    CHECK(cosine(idx.vectors()[0], idx.vectors()[1]) == 0.0);
    for (const auto& v : idx.vectors()) {
        if (v.empty())
            continue;
        CHECK(norm(v) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(cosine(v, v) == doctest::Approx(1.0).epsilon(1e-9));
    }
    for (const auto& a : idx.vectors())
        for (const auto& b : idx.vectors())
            CHECK(cosine(a, b) == cosine(b, a));
}

TEST_CASE("mock: exact match, fallback and brute-force argmax")
{
    const PromptIndex two(pairs_of({{"what is a primary key", "pk answer"}, {"what is a foreign key", "fk answer"}}));
    const auto c = mock_complete(two, "what is a primary key");
    CHECK(c.text == "pk answer");
    CHECK(c.similarity == doctest::Approx(1.0));
    CHECK(c.source_line == 1);

    CHECK(mock_complete(two, "lunch menu today").text == kFallbackAnswer);
    CHECK_THROWS_AS(mock_complete(two, "   "), std::invalid_argument);

    const auto three = pairs_of({{"normal form definition", "A"},
                                 {"foreign key definition", "B"},
                                 {"normal form example table", "C"}});
    const PromptIndex idx(three);
    const DenseOracle oracle(three);
    for (const char* q : {"definition of normal form", "example of a foreign key", "table example", "key"}) {
        CAPTURE(q);
        const int best = oracle.argmax(q);
        REQUIRE(best >= 0);
        CHECK(mock_complete(idx, q, 0.0).text == three[std::size_t(best)].completion);
    }
}

TEST_CASE("mock: ties go to the lowest line number; zero vectors never win")
{
    // Identical prompts share a vector; both lines duplicate "a" so idf(a)=0.
    auto pairs = pairs_of({{"x y", "first"}, {"x y", "second"}, {"z", "third"}});
    std::swap(pairs[0], pairs[1]); // index order differs from line order
    const PromptIndex idx(pairs);
    CHECK(mock_complete(idx, "x", 0.0).text == "first");

    // Every prompt shares every term: all vectors zero, so fallback fires.
    const PromptIndex flat(pairs_of({{"same words", "1"}, {"same words", "2"}}));
    CHECK(mock_complete(flat, "same words", 0.0).text == kFallbackAnswer);
}

TEST_CASE("mock: threshold")
{
    const PromptIndex idx(pairs_of({{"alpha beta gamma", "1"}, {"delta", "2"}}));
    const auto weak = mock_complete(idx, "alpha delta delta delta delta", 0.0);
    CHECK(weak.text == "2");
    CHECK(mock_complete(idx, "alpha delta delta delta delta", 0.99).text == kFallbackAnswer);
}

TEST_CASE("mock: every unique prompt retrieves itself on the course dataset")
{
    const auto pairs =
        parse_finetune_dataset(read_file(std::string(EDUASSIST_DATA_DIR) + "/examples/course_qa.jsonl")).pairs;
    REQUIRE(pairs.size() == 20);
    const PromptIndex idx(pairs);
    for (const auto& p : pairs) {
        const auto c = mock_complete(idx, p.prompt, 0.0);
        CHECK(c.text == p.completion);
        CHECK(c.similarity == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("truncate_history")
{
    CHECK(truncate_history(Conversation("e", 5)).empty());

    const auto kept = truncate_history(words_conv(5, {4, 3, 2}));
    REQUIRE(kept.turns().size() == 2);
    CHECK(kept.turns()[0].words() == 3);
    CHECK(kept.turns()[1].words() == 2);

    const auto big = truncate_history(words_conv(5, {100}));
    REQUIRE(big.turns().size() == 1);
    CHECK(big.turns()[0].words() == 100);

    // Trailing assistant turn: the latest user turn is still retained.
    const auto tail = truncate_history(words_conv(5, {1, 9}));
    CHECK(tail.turns().size() == 2);
    CHECK(truncate_history(words_conv(5, {1, 9, 4})).turns().size() == 1);
}

TEST_CASE("truncate_history is idempotent and within budget unless forced")
{
    std::mt19937 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Turn> turns;
        const auto n = std::uniform_int_distribution<int>(0, 8)(rng);
        for (int i = 0; i < n; ++i) {
            const auto words = std::uniform_int_distribution<int>(0, 6)(rng);
            std::string t;
            for (int k = 0; k < words; ++k)
                t += "w ";
            turns.push_back({i % 2 == 0 ? Role::User : Role::Assistant, t, Timestamp{}});
        }
        const auto budget = std::size_t(std::uniform_int_distribution<int>(1, 12)(rng));
        const auto conv = Conversation::from_turns("p", budget, turns);
        const auto once = truncate_history(conv);
        CHECK(truncate_history(once) == once);
        // Retained turns are a suffix of the original.
        const auto& kept = once.turns();
        CHECK(std::equal(kept.begin(), kept.end(), turns.end() - std::ptrdiff_t(kept.size())));
        if (once.total_words() > budget) {
            REQUIRE_FALSE(kept.empty());
            CHECK(kept.front().role == Role::User);
        }
    }
}

TEST_CASE("conversation alternation and timestamps")
{
    Conversation c("id", 10);
    c.append(Role::User, "hi");
    CHECK_THROWS_AS(c.append(Role::User, "again"), std::logic_error);
    c.append(Role::Assistant, "hello");
    CHECK(c.turns().size() == 2);
    CHECK_THROWS_AS(Conversation("x", 0), std::invalid_argument);

    const Timestamp t(std::chrono::milliseconds(1714555800250));
    CHECK(format_timestamp(t) == "2024-05-01T09:30:00.250Z");
    CHECK(parse_timestamp("2024-05-01T09:30:00.250Z") == t);
    CHECK_FALSE(parse_timestamp("2024-05-01 09:30"));
    CHECK_FALSE(parse_timestamp("2024-05-01T09:30:00.250Zjunk"));
}

TEST_CASE("provider config validation")
{
    ProviderConfig mock;
    CHECK_NOTHROW(mock.validate());
    mock.similarity_threshold = 1.5;
    CHECK_THROWS_AS(mock.validate(), std::invalid_argument);

    ProviderConfig remote;
    remote.kind = ProviderKind::RemoteText;
    CHECK_THROWS_AS(remote.validate(), std::invalid_argument);
    remote.endpoint_url = "http://x";
    CHECK_THROWS_AS(remote.validate(), std::invalid_argument);
    remote.api_key = "k";
    CHECK_NOTHROW(remote.validate());

    ProviderConfig stray;
    stray.api_key = "k";
    CHECK_THROWS_AS(stray.validate(), std::invalid_argument);

    CHECK(parse_provider_kind("remote_image") == ProviderKind::RemoteImage);
    CHECK_THROWS_AS(parse_provider_kind("bard"), std::invalid_argument);
}

TEST_CASE("base64 and media types")
{
    CHECK(base64_encode("") == "");
    CHECK(base64_encode("f") == "Zg==");
    CHECK(base64_encode("fo") == "Zm8=");
    CHECK(base64_encode("foo") == "Zm9v");
    CHECK(base64_encode("foobar") == "Zm9vYmFy");
    CHECK(base64_encode(std::string("\x00\xFF\x10", 3)) == "AP8Q");

    CHECK(normalize_image_media_type("image/PNG") == "image/png");
    CHECK(normalize_image_media_type("image/jpg") == "image/jpeg");
    CHECK(normalize_image_media_type("image/jpeg; charset=binary") == "image/jpeg");
    CHECK_FALSE(normalize_image_media_type("image/bmp"));
    CHECK(sniff_image_media_type(std::string("\x89PNG\r\n\x1a\n....", 12)) == "image/png");
    CHECK(sniff_image_media_type("\xFF\xD8\xFF\xE0") == "image/jpeg");
    CHECK_FALSE(sniff_image_media_type("BM...."));
}

TEST_CASE("request bodies follow the wire contract")
{
    auto cfg = remote_cfg("http://unused");
    Conversation conv("c", 100);
    conv.append(Role::User, "first question");
    conv.append(Role::Assistant, "first answer");
    const auto body = build_text_request(cfg, conv, "second question");
    CHECK(body["model"] == "course-model");
    REQUIRE(body["messages"].size() == 3);
    CHECK(body["messages"][0] == nlohmann::json{{"role", "user"}, {"content", "first question"}});
    CHECK(body["messages"][1]["role"] == "assistant");
    CHECK(body["messages"][2] == nlohmann::json{{"role", "user"}, {"content", "second question"}});

    // Budget pressure drops the oldest turns but never the question.
    const auto tight = build_text_request(cfg, Conversation::from_turns("c", 2, conv.turns()), "second question");
    REQUIRE(tight["messages"].size() == 1);
    CHECK(tight["messages"][0]["content"] == "second question");

    const auto img = build_image_request(cfg, {"abc", "image/png"}, "describe");
    REQUIRE(img["messages"].size() == 1);
    const auto& content = img["messages"][0]["content"];
    REQUIRE(content.size() == 2);
    CHECK(content[0] == nlohmann::json{{"type", "text"}, {"text", "describe"}});
    CHECK(content[1] == nlohmann::json{{"type", "image"}, {"media_type", "image/png"}, {"data", "YWJj"}});
}

TEST_CASE("parse_completion_response")
{
    CHECK(parse_completion_response(testing::canned_completion("hi")) == "hi");
    for (const char* bad : {"", "{}", "{\"choices\": []}", "{\"choices\": [{\"message\": {\"content\": 3}}]}", "<html>"}) {
        try {
            parse_completion_response(bad);
            FAIL("expected ProviderError");
        } catch (const ProviderError& e) {
            CHECK(e.kind() == ProviderErrorKind::MalformedResponse);
        }
    }
}

TEST_CASE("remote_complete against a stub server")
{
    std::string seen_auth;
    nlohmann::json seen_body;
    testing::StubServer stub([&](httplib::Server& s) {
        s.Post("/v1/chat", [&](const httplib::Request& req, httplib::Response& res) {
            seen_auth = req.get_header_value("Authorization");
            seen_body = nlohmann::json::parse(req.body);
            res.set_content(testing::canned_completion("canned reply"), "application/json");
        });
        s.Post("/401", [](const httplib::Request&, httplib::Response& res) { res.status = 401; });
        s.Post("/403", [](const httplib::Request&, httplib::Response& res) { res.status = 403; });
        s.Post("/429", [](const httplib::Request&, httplib::Response& res) {
            res.status = 429;
            res.set_header("Retry-After", "17");
        });
        s.Post("/500", [](const httplib::Request&, httplib::Response& res) { res.status = 500; });
        s.Post("/garbage", [](const httplib::Request&, httplib::Response& res) {
            res.set_content("not json", "text/plain");
        });
        s.Post("/slow", [](const httplib::Request&, httplib::Response& res) {
            std::this_thread::sleep_for(1500ms);
            res.set_content(testing::canned_completion("late"), "application/json");
        });
    });

    Conversation conv("c");
    const auto c = remote_complete(remote_cfg(stub.url()), conv, "question?");
    CHECK(c.text == "canned reply");
    CHECK(seen_auth == "Bearer sk-test");
    CHECK(seen_body["messages"].back()["content"] == "question?");

    auto expect_kind = [&](const std::string& path, ProviderErrorKind kind, std::chrono::milliseconds timeout = 2s) {
        auto cfg = remote_cfg(stub.url(path));
        cfg.timeout = timeout;
        try {
            remote_complete(cfg, conv, "q");
            FAIL("expected ProviderError for " << path);
            return ProviderError(kind, "");
        } catch (const ProviderError& e) {
            CHECK(e.kind() == kind);
            return e;
        }
    };
    expect_kind("/401", ProviderErrorKind::AuthFailure);
    expect_kind("/403", ProviderErrorKind::AuthFailure);
    const auto limited = expect_kind("/429", ProviderErrorKind::RateLimited);
    CHECK(limited.retry_after() == "17");
    expect_kind("/500", ProviderErrorKind::UpstreamError);
    expect_kind("/garbage", ProviderErrorKind::MalformedResponse);
    expect_kind("/slow", ProviderErrorKind::Timeout, 300ms);

    auto dead = remote_cfg("http://127.0.0.1:1/v1/chat");
    try {
        remote_complete(dead, conv, "q");
        FAIL("expected ProviderError");
    } catch (const ProviderError& e) {
        CHECK(e.kind() == ProviderErrorKind::Unreachable);
    }

    CHECK_THROWS_AS(remote_complete(remote_cfg(stub.url(), ProviderKind::RemoteImage), conv, "q"), std::invalid_argument);
}

TEST_CASE("describe_image against a stub server")
{
    std::atomic<int> calls{0};
    testing::StubServer stub([&](httplib::Server& s) {
        s.Post("/v1/chat", [&](const httplib::Request& req, httplib::Response& res) {
            ++calls;
            const auto body = nlohmann::json::parse(req.body);
            const auto& content = body["messages"][0]["content"];
            const auto q = content[0]["text"].get<std::string>();
            res.set_content(testing::canned_completion("question length " + std::to_string(q.size()) + ", "
                                                       + content[1]["media_type"].get<std::string>()),
                            "application/json");
        });
    });
    const auto cfg = remote_cfg(stub.url(), ProviderKind::RemoteImage);

    const auto c = describe_image(cfg, {"\x89PNG....", "image/png"}, "what does this diagram show?");
    CHECK(c.text == "question length 28, image/png");
    CHECK(calls == 1);

    try {
        describe_image(cfg, {std::string(11 * 1024 * 1024, 'x'), "image/png"}, "q");
        FAIL("expected PayloadTooLarge");
    } catch (const ProviderError& e) {
        CHECK(e.kind() == ProviderErrorKind::PayloadTooLarge);
    }
    try {
        describe_image(cfg, {"BM..", "image/bmp"}, "q");
        FAIL("expected UnsupportedMediaType");
    } catch (const ProviderError& e) {
        CHECK(e.kind() == ProviderErrorKind::UnsupportedMediaType);
    }
    CHECK(calls == 1);
}
