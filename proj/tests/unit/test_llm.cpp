#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

#include <atomic>
#include <cstdlib>
#include <thread>

#include "doctest.h"
#include "intentrepair/error.hpp"
#include "intentrepair/llm/backends.hpp"
#include "intentrepair/llm/gateway.hpp"
#include "intentrepair/llm/transcript.hpp"
#include "intentrepair/util/digest.hpp"
#include "intentrepair/util/text.hpp"
#include "support/support.hpp"

using namespace intentrepair;
using namespace intentrepair::llm;

namespace {

Conversation convo(const std::string& user) {
    Conversation c;
    c.system("sys");
    c.user(user);
    return c;
}

/// Fails with a transport error a fixed number of times, then answers.
class FlakyBackend : public Backend {
public:
    explicit FlakyBackend(int failures, ErrorKind kind = ErrorKind::Transport) : failures_(failures), kind_(kind) {}
    ChatResponse complete(const Conversation&) override {
        ++calls;
        if (calls <= failures_) throw Error(kind_, "boom");
        return {{Role::Assistant, "ok"}, {3, 4}};
    }
    std::string name() const override { return "flaky"; }
    int calls = 0;

private:
    int failures_;
    ErrorKind kind_;
};

RetryPolicy fast_retry(int attempts) { return {attempts, std::chrono::milliseconds(0)}; }

}  // namespace

TEST_CASE("sha256 matches known vectors") {
    CHECK(text::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(text::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("request digest ignores incidental whitespace but not content or params") {
    auto a = convo("Locate   the\nfaults");
    auto b = convo("Locate the faults ");
    CHECK(request_digest(a) == request_digest(b));
    CHECK(request_digest(a) != request_digest(convo("Locate the fault")));
    auto c = b;
    c.params.temperature = 0.5;
    CHECK(request_digest(c) != request_digest(b));
    auto d = b;
    d.messages[0].role = Role::User;
    CHECK(request_digest(d) != request_digest(b));
}

TEST_CASE("conversation validation") {
    Conversation c;
    CHECK_THROWS_AS(c.validate(), Error);
    c.system("s").user("u").assistant("a").user("u2");
    CHECK_NOTHROW(c.validate());
    CHECK(c.last_user() == "u2");
    Conversation bad;
    bad.user("u").user("again");
    CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("structured blocks are extracted from prose") {
    const auto j = extract_structured("Sure.\n```intent\n{\"description\": \"x\"}\n```\nmore", "intent");
    CHECK(j["description"] == "x");
    // The first block with the right tag wins; other tags are skipped.
    const auto k = extract_structured("```tests\n{\"a\":1}\n```\n```intent json\n{\"b\":2}\n```", "intent");
    CHECK(k["b"] == 2);
    CHECK_THROWS_AS(extract_structured("no block here", "intent"), ParseError);
    CHECK_THROWS_AS(extract_structured("```intent\n{bad json}\n```", "intent"), ParseError);
    CHECK_THROWS_AS(extract_structured("```intent\n{\"a\":1}\n", "intent"), ParseError);
    try {
        extract_structured("raw text", "tests");
    } catch (const ParseError& e) {
        CHECK(e.raw() == "raw text");
    }
}

TEST_CASE("complete_structured nudges once after a malformed answer") {
    MockBackend mock;
    mock.add(support::rule({"question"}, "no block"));
    mock.add(support::rule({"Respond only in the required format"}, support::fenced("faults", "{\"ok\": true}")));
    Gateway g(mock);
    auto c = convo("question");
    const auto j = complete_structured(g, c, "faults", "reason");
    CHECK(j["ok"] == true);
    CHECK(c.messages.size() == 5);
    CHECK(g.tokens().calls == 2);

    MockBackend never;
    never.reply("still no block", 0);
    Gateway g2(never);
    auto c2 = convo("question");
    CHECK_THROWS_AS(complete_structured(g2, c2, "faults", "reason"), ParseError);
    CHECK(never.calls() == 2);
}

TEST_CASE("mock script parsing") {
    const auto rules = MockBackend::parse_script(
        "preamble is ignored\n"
        "=== rule\n"
        "match: alpha\n"
        "match: beta\n"
        "context: gamma\n"
        "times: 2\n"
        "usage: 12 3\n"
        "---\n"
        "line one\n"
        "\n"
        "line three\n"
        "\n\n"
        "=== rule\n"
        "---\n"
        "fallback\n");
    REQUIRE(rules.size() == 2);
    CHECK(rules[0].match == std::vector<std::string>{"alpha", "beta"});
    CHECK(rules[0].context == std::vector<std::string>{"gamma"});
    CHECK(rules[0].times == 2);
    CHECK(rules[0].usage == TokenUsage{12, 3});
    CHECK(rules[0].response == "line one\n\nline three");
    CHECK(rules[1].match.empty());
    CHECK(rules[1].times == 1);
    CHECK(rules[1].response == "fallback");
}

TEST_CASE("mock rules match the last user message, context anywhere, in declaration order") {
    MockBackend mock(MockBackend::parse_script("=== rule\nmatch: second\ncontext: first\n---\nA\n"
                                               "=== rule\nmatch: second\ntimes: 0\n---\nB\n"));
    auto c = convo("first");
    c.assistant("x").user("second");
    CHECK(mock.complete(c).message.content == "A");
    CHECK(mock.complete(c).message.content == "B");
    CHECK(mock.complete(c).message.content == "B");
    // "first" only in an earlier message does not satisfy a match.
    MockBackend strict(MockBackend::parse_script("=== rule\nmatch: first\n---\nA\n"));
    CHECK_THROWS_AS(strict.complete(c), Error);
}

TEST_CASE("transcript lines round-trip and replay serves duplicates first in, first out") {
    support::TempDir dir("transcript");
    const auto path = (dir.path() / "t.jsonl").string();
    auto c = convo("same request");
    {
        TranscriptWriter w(path);
        for (int i = 1; i <= 3; ++i) {
            TranscriptEntry e;
            e.request = c;
            e.request_digest = request_digest(c);
            e.response = {Role::Assistant, "answer " + std::to_string(i)};
            e.usage = {i, i};
            e.sequence_number = 4 - i;  // written out of order on purpose
            w.append(e);
        }
    }
    const auto entries = read_transcript(path);
    REQUIRE(entries.size() == 3);
    CHECK(parse_json_line(to_json_line(entries[0])) == entries[0]);

    ReplayBackend replay(entries);
    CHECK(replay.complete(c).message.content == "answer 3");
    CHECK(replay.complete(c).message.content == "answer 2");
    CHECK(replay.complete(c).message.content == "answer 1");
    CHECK(replay.remaining() == 0);
    try {
        replay.complete(c);
        FAIL("expected a replay miss");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ReplayMiss);
    }
}

TEST_CASE("gateway retries transport errors only") {
    FlakyBackend flaky(2);
    Gateway g(flaky, fast_retry(3));
    CHECK(g.complete(convo("q"), "reason").message.content == "ok");
    CHECK(flaky.calls == 3);

    FlakyBackend dead(5);
    Gateway g2(dead, fast_retry(3));
    try {
        g2.complete(convo("q"), "reason");
        FAIL("expected a gateway error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Gateway);
    }
    CHECK(dead.calls == 3);

    FlakyBackend rejected(1, ErrorKind::Gateway);
    Gateway g3(rejected, fast_retry(3));
    CHECK_THROWS_AS(g3.complete(convo("q"), "reason"), Error);
    CHECK(rejected.calls == 1);
}

TEST_CASE("gateway accounts tokens per agent and enforces the budget after the crossing call") {
    MockBackend mock;
    mock.reply("a", 0, {400, 100});
    Gateway g(mock, fast_retry(1), 1000);
    g.complete(convo("1"), "reason");
    g.complete(convo("2"), "test");
    try {
        g.complete(convo("3"), "test");
        FAIL("expected budget exhaustion");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BudgetExhausted);
    }
    const auto t = g.tokens();
    CHECK(t.calls == 3);
    CHECK(t.total == TokenUsage{1200, 300});
    CHECK(t.per_agent.at("reason") == TokenUsage{400, 100});
    CHECK(t.per_agent.at("test") == TokenUsage{800, 200});
    // The crossing call is still recorded.
    CHECK(g.entries().size() == 3);
    CHECK(g.entries().back().sequence_number == 3);
}

TEST_CASE("gateway mirrors exchanges into the recorder") {
    support::TempDir dir("rec");
    const auto path = (dir.path() / "r.jsonl").string();
    MockBackend mock;
    mock.reply("a", 0, {1, 1});
    {
        TranscriptWriter w(path);
        Gateway g(mock, {}, std::nullopt, &w);
        g.complete(convo("x"), "reason");
        g.complete(convo("y"), "reason");
    }
    const auto entries = read_transcript(path);
    REQUIRE(entries.size() == 2);
    CHECK(entries[1].request.last_user() == "y");
    CHECK(entries[1].request_digest == request_digest(convo("y")));
}

TEST_CASE("live backend speaks chat-completions over HTTP") {
    httplib::Server server;
    std::atomic<int> status{200};
    std::string seen_auth;
    std::string seen_body;
    server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
        seen_auth = req.get_header_value("Authorization");
        seen_body = req.body;
        res.status = status.load();
        res.set_content(R"({"choices":[{"message":{"role":"assistant","content":"hi"}}],)"
                        R"("usage":{"prompt_tokens":7,"completion_tokens":2}})",
                        "application/json");
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    ::setenv("INTENTREPAIR_TEST_KEY", "sekret", 1);
    LiveConfig cfg;
    cfg.endpoint = "http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions";
    cfg.api_key_env = "INTENTREPAIR_TEST_KEY";
    cfg.timeout_seconds = 5;
    LiveBackend live(cfg);

    auto c = convo("hello");
    c.params.model = "m";
    const auto r = live.complete(c);
    CHECK(r.message.content == "hi");
    CHECK(r.usage == TokenUsage{7, 2});
    CHECK(seen_auth == "Bearer sekret");
    const auto body = nlohmann::json::parse(seen_body);
    CHECK(body["model"] == "m");
    CHECK(body["messages"].size() == 2);
    CHECK(body["messages"][1]["role"] == "user");

    status = 429;
    try {
        live.complete(c);
        FAIL("expected a transport error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Transport);
    }
    status = 400;
    try {
        live.complete(c);
        FAIL("expected a gateway error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Gateway);
    }
    server.stop();
    thread.join();

    LiveConfig closed = cfg;
    closed.endpoint = "http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions";
    closed.timeout_seconds = 1;
    try {
        LiveBackend(closed).complete(c);
        FAIL("expected a transport error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Transport);
    }
    CHECK_THROWS_AS(LiveBackend::parse_response("{\"choices\": []}"), Error);
}
