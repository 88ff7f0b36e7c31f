#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "support/generators.hpp"

using namespace mutinv;

namespace {

std::vector<std::string> dump_lines(const ExploreResult& r, const ExploreOptions& opts) {
    std::ostringstream out;
    write_dump(out, r, opts);
    std::vector<std::string> lines;
    std::istringstream in(out.str());
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

DumpData parse_lines(const std::vector<std::string>& lines) {
    std::string joined;
    for (const std::string& l : lines) joined += l + "\n";
    std::istringstream in(joined);
    return parse_dump(in);
}

}  // namespace

TEST_CASE("integer tokens parse strictly") {
    CHECK(parse_int_token("123") == 123);
    CHECK(parse_int_token("-04") == -4);
    CHECK(parse_int_token("+7") == 7);
    CHECK(parse_int_token("9223372036854775808") == Int("9223372036854775808"));
    CHECK_THROWS_AS(parse_int_token(""), ParseError);
    CHECK_THROWS_AS(parse_int_token("+"), ParseError);
    CHECK_THROWS_AS(parse_int_token("1.5"), ParseError);
    CHECK_THROWS_AS(parse_int_token("--2"), ParseError);
    CHECK_THROWS_AS(parse_int_token("0x10"), ParseError);
}

TEST_CASE("json integers widen to strings beyond 64 bits") {
    CHECK(json_from_int(Int(INT64_MAX)).is_number_integer());
    CHECK(json_from_int(Int(INT64_MIN)).is_number_integer());
    nlohmann::json wide = json_from_int(Int(INT64_MAX) + 1);
    REQUIRE(wide.is_string());
    CHECK(int_from_json(wide, "t") == Int(INT64_MAX) + 1);
    CHECK(int_from_json(nlohmann::json(-5), "t") == -5);
    CHECK(int_from_json(nlohmann::json(std::uint64_t(18446744073709551615ull)), "t") ==
          Int("18446744073709551615"));
    CHECK_THROWS_AS(int_from_json(nlohmann::json(1.5), "t"), ParseError);
    CHECK_THROWS_AS(int_from_json(nlohmann::json(nullptr), "t"), ParseError);
}

TEST_CASE("text matrices round trip and parse strictly") {
    IntMatrix b = parse_matrix_text("2\n0 1\n-1 0\n");
    CHECK(b(0, 1) == 1);
    CHECK(b(1, 0) == -1);
    CHECK(format_matrix_text(b) == "2\n0 1\n-1 0\n");
    CHECK(parse_matrix_text("  2  0 1 -1 0  ") == b);

    CHECK_THROWS_AS(parse_matrix_text(""), ParseError);
    CHECK_THROWS_AS(parse_matrix_text("0"), ParseError);
    CHECK_THROWS_AS(parse_matrix_text("10001"), ParseError);
    CHECK_THROWS_AS(parse_matrix_text("2\n0 1 -1"), ParseError);
    CHECK_THROWS_AS(parse_matrix_text("2\n0 1 -1 0 junk"), ParseError);
    CHECK_THROWS_AS(parse_matrix_text("2\n0 one -1 0"), ParseError);
}

TEST_CASE("json matrices carry an optional symmetrizer") {
    MatrixFile f = parse_matrix_json(
        R"({"n":3,"entries":[[0,2,0],[-1,0,3],[0,-2,0]],"symmetrizer":[1,2,3]})");
    CHECK(f.entries(0, 1) == 2);
    REQUIRE(f.symmetrizer.has_value());
    CHECK(*f.symmetrizer == std::vector<Int>{Int(1), Int(2), Int(3)});

    CHECK_THROWS_AS(parse_matrix_json(R"([1,2])"), ParseError);
    CHECK_THROWS_AS(parse_matrix_json(R"({"entries":[[0]]})"), ParseError);
    CHECK_THROWS_AS(parse_matrix_json(R"({"n":1,"entries":[[0]],"extra":1})"), ParseError);
    CHECK_THROWS_AS(parse_matrix_json(R"({"n":2,"entries":[[0,1]]})"), ParseError);
    CHECK_THROWS_AS(parse_matrix_json(R"({"n":1,"entries":[[0.5]]})"), ParseError);
    CHECK_THROWS_AS(parse_matrix_json(R"({"n":2,"entries":[[0,1],[-1,0]],"symmetrizer":[1]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_matrix_json(R"({"n":2,"entries":[[0,1],[-1,0]],"symmetrizer":[0,1]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_matrix_json("{"), ParseError);
}

TEST_CASE("entries beyond 64 bits survive a json round trip") {
    std::string big = "9223372036854775808";
    MatrixFile f = parse_matrix_json(R"({"n":2,"entries":[[0,")" + big + R"("],[-1,0]]})");
    CHECK(f.entries(0, 1) == Int(big));
    nlohmann::json rows = json_of_entries(f.entries);
    CHECK(rows[0][1].is_string());
    CHECK(entries_from_json(rows, 2) == f.entries);
}

TEST_CASE("format sniffing picks json only for objects") {
    MatrixFile a = parse_matrix_auto("2\n0 1\n-1 0\n");
    CHECK_FALSE(a.symmetrizer.has_value());
    MatrixFile b = parse_matrix_auto(R"(   {"n":1,"entries":[[0]]})");
    CHECK(b.entries.size() == 1);
}

TEST_CASE("exchange matrices serialize with their minimal symmetrizer") {
    nlohmann::json j = json_of_matrix(testsupport::fam(1, 1, 1));
    CHECK(j["n"] == 3);
    CHECK(j["symmetrizer"] == nlohmann::json::array({1, 2, 3}));
    MatrixFile back = parse_matrix_json(j.dump());
    CHECK(back.entries == testsupport::fam(1, 1, 1).matrix());
}

TEST_CASE("mutation sequences are one based text") {
    MutationSequence seq = parse_mutation_sequence("2,1,3", 3);
    CHECK(seq == MutationSequence{1, 0, 2});
    CHECK(format_mutation_sequence(seq) == "2,1,3");
    CHECK(parse_mutation_sequence("", 3).empty());
    CHECK(parse_mutation_sequence(" 2 , 1 ", 3) == MutationSequence{1, 0});
    CHECK_THROWS_AS(parse_mutation_sequence("0", 3), ParseError);
    CHECK_THROWS_AS(parse_mutation_sequence("4", 3), IndexOutOfRangeError);
    CHECK_THROWS_AS(parse_mutation_sequence("1,,2", 3), ParseError);
    CHECK_THROWS_AS(parse_mutation_sequence("x", 3), ParseError);
}

TEST_CASE("permutations are one based image lists") {
    Permutation p = parse_permutation("2,3,1", 3);
    CHECK(p.images() == std::vector<std::size_t>{1, 2, 0});
    CHECK(format_permutation(p) == "2,3,1");
    CHECK_THROWS_AS(parse_permutation("2,3", 3), InvalidPermutationError);
    CHECK_THROWS_AS(parse_permutation("1,1,3", 3), InvalidPermutationError);
    CHECK_THROWS_AS(parse_permutation("0,1,2", 3), ParseError);
}

TEST_CASE("delta values round trip through json") {
    DeltaValue d = delta(testsupport::fam(1, 1, 1));
    nlohmann::json j = json_of_delta(d);
    CHECK(j["det"] == "-2");
    CHECK(delta_from_json(j) == d);
    j["det"] = -2;  // numbers are refused to keep dets lossless
    CHECK_THROWS_AS(delta_from_json(j), ParseError);
    CHECK_THROWS_AS(delta_from_json(nlohmann::json{{"residue", 2}}), ParseError);
}

TEST_CASE("class dumps round trip") {
    ExchangeMatrix seed = testsupport::fam(1, 1, 1);
    ExploreOptions opts{.max_depth = 3, .max_nodes = 400};
    ExploreResult r = explore(seed, opts);
    std::vector<std::string> lines = dump_lines(r, opts);
    REQUIRE(lines.size() == r.members.size() + 2);

    DumpData d = parse_lines(lines);
    CHECK(d.seed == seed);
    CHECK(d.has_trailer);
    CHECK(d.expanded == r.expanded);
    CHECK(d.complete == r.report.complete);
    CHECK(d.budgets.max_depth == 3);
    CHECK(d.budgets.max_nodes == 400);
    CHECK(d.budgets.magnitude_limit == opts.magnitude_limit);
    REQUIRE(d.members.size() == r.members.size());
    for (std::size_t i = 0; i < d.members.size(); ++i) {
        CHECK(d.members[i].canonical == r.members[i].canonical);
        CHECK(d.members[i].depth == r.members[i].depth);
        CHECK(d.members[i].delta_residue == r.members[i].delta_residue);
        CHECK(d.members[i].delta_prime_residue == r.members[i].delta_prime_residue);
    }
}

TEST_CASE("a dump without its trailer is salvaged") {
    ExchangeMatrix seed = testsupport::fam(1, 1, 1);
    ExploreOptions opts{.max_depth = 2, .max_nodes = 400};
    ExploreResult r = explore(seed, opts);
    std::vector<std::string> lines = dump_lines(r, opts);
    lines.pop_back();
    DumpData d = parse_lines(lines);
    CHECK_FALSE(d.has_trailer);
    CHECK(d.expanded == 0);
    CHECK(d.members.size() == r.members.size());
}

TEST_CASE("structurally damaged dumps are rejected") {
    ExchangeMatrix seed = testsupport::fam(1, 1, 1);
    ExploreOptions opts{.max_depth = 2, .max_nodes = 400};
    ExploreResult r = explore(seed, opts);
    std::vector<std::string> base = dump_lines(r, opts);

    SECTION("missing header") {
        std::vector<std::string> lines(base.begin() + 1, base.end());
        CHECK_THROWS_AS(parse_lines(lines), ParseError);
    }
    SECTION("broken json on a member line") {
        auto lines = base;
        lines[1] = lines[1].substr(0, lines[1].size() / 2);
        CHECK_THROWS_AS(parse_lines(lines), ParseError);
    }
    SECTION("unsupported version") {
        auto lines = base;
        nlohmann::json h = nlohmann::json::parse(lines[0]);
        h["version"] = kDumpVersion + 1;
        lines[0] = h.dump();
        CHECK_THROWS_AS(parse_lines(lines), ParseError);
    }
    SECTION("foreign format marker") {
        auto lines = base;
        nlohmann::json h = nlohmann::json::parse(lines[0]);
        h["format"] = "something-else";
        lines[0] = h.dump();
        CHECK_THROWS_AS(parse_lines(lines), ParseError);
    }
    SECTION("unknown record kind") {
        auto lines = base;
        nlohmann::json m = nlohmann::json::parse(lines[1]);
        m["kind"] = "mystery";
        lines[1] = m.dump();
        CHECK_THROWS_AS(parse_lines(lines), ParseError);
    }
    SECTION("member that is not an exchange matrix") {
        auto lines = base;
        nlohmann::json m = nlohmann::json::parse(lines[1]);
        m["canonical"][0][0] = 5;  // nonzero diagonal
        lines[1] = m.dump();
        CHECK_THROWS_AS(parse_lines(lines), ParseError);
    }
    SECTION("content after the trailer") {
        auto lines = base;
        lines.push_back(lines[1]);
        CHECK_THROWS_AS(parse_lines(lines), ParseError);
    }
}
