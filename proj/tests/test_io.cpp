#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "hlouvain/io.hpp"
#include "testutil.hpp"

using namespace hlouvain;

namespace {

HypergraphFile parse_text(const std::string& text) {
    std::istringstream in(text);
    return parse_hypergraph(in, "test");
}

}  // namespace

TEST_CASE("hyperedge lines parse tokens, weights, comments and blanks") {
    HypergraphFile parsed = parse_text(
        "# social triads\n"
        "\n"
        "a,b,c\n"
        "  b , d ; 2.5\n"
        "a,d\n");
    CHECK(parsed.tokens == std::vector<std::string>{"a", "b", "c", "d"});
    CHECK(parsed.dropped_edges == 0);
    const Hypergraph& h = parsed.graph;
    REQUIRE(h.edge_count() == 3);
    CHECK(h.edges()[0].members == std::vector<NodeId>{0, 1, 2});
    CHECK(h.edges()[0].weight == 1.0);
    CHECK(h.edges()[1].members == std::vector<NodeId>{1, 3});
    CHECK(h.edges()[1].weight == 2.5);
    CHECK(h.edges()[2].members == std::vector<NodeId>{0, 3});
    CHECK(h.total_edge_weight() == doctest::Approx(4.5));
}

TEST_CASE("single-node lines are dropped but counted") {
    HypergraphFile parsed = parse_text(
        "solo\n"
        "a,b\n"
        "another;3\n");
    CHECK(parsed.dropped_edges == 2);
    CHECK(parsed.graph.edge_count() == 1);
    // tokens seen only on dropped lines still claim node slots (degree 0)
    CHECK(parsed.tokens == std::vector<std::string>{"solo", "a", "b", "another"});
    CHECK(parsed.graph.degree(0) == 0.0);
}

TEST_CASE("malformed hyperedge lines raise errors naming source and line") {
    CHECK_THROWS_WITH_AS(parse_text("a,b;\n"), "test:1: missing weight after ';'", ParseError);
    CHECK_THROWS_WITH_AS(parse_text("a,b;x\n"), "test:1: invalid weight", ParseError);
    CHECK_THROWS_WITH_AS(parse_text("a,b;2.5kg\n"), "test:1: invalid weight", ParseError);
    CHECK_THROWS_WITH_AS(parse_text("a,b;0\n"), "test:1: weight must be positive", ParseError);
    CHECK_THROWS_WITH_AS(parse_text("a,b;-1\n"), "test:1: weight must be positive", ParseError);
    CHECK_THROWS_WITH_AS(parse_text("# c\na,,b\n"), "test:2: empty node token", ParseError);
    CHECK_THROWS_WITH_AS(parse_text("a,b,\n"), "test:1: empty node token", ParseError);
    CHECK_THROWS_WITH_AS(parse_text("a,b,a\n"),
                         "test:1: repeated node token within one hyperedge", ParseError);
    CHECK_THROWS_WITH_AS(parse_text("# only comments\n"), "test: no hyperedges of size >= 2",
                         ParseError);
    CHECK_THROWS_WITH_AS(parse_text("solo\n"), "test: no hyperedges of size >= 2", ParseError);
}

TEST_CASE("hypergraphs survive a write/parse round trip") {
    HypergraphFile original = parse_text(
        "alpha,beta,gamma;1.5\n"
        "beta,delta\n"
        "alpha,delta,beta,gamma;0.25\n");
    std::ostringstream out;
    write_hypergraph(out, original.graph, original.tokens);
    // members are stored sorted by node id (= first-appearance order here)
    CHECK(out.str() ==
          "alpha,beta,gamma;1.5\n"
          "beta,delta\n"
          "alpha,beta,gamma,delta;0.25\n");

    HypergraphFile reparsed = parse_text(out.str());
    CHECK(reparsed.tokens == original.tokens);
    REQUIRE(reparsed.graph.edge_count() == original.graph.edge_count());
    for (std::size_t i = 0; i < original.graph.edge_count(); ++i) {
        CHECK(reparsed.graph.edges()[i].members == original.graph.edges()[i].members);
        CHECK(reparsed.graph.edges()[i].weight == original.graph.edges()[i].weight);
    }

    std::vector<std::string> short_tokens = {"x"};
    CHECK_THROWS_AS(write_hypergraph(out, original.graph, short_tokens), std::invalid_argument);
}

TEST_CASE("partitions are written sorted by token with first-appearance ids") {
    std::vector<std::string> tokens = {"node2", "node10", "node1"};
    std::vector<CommunityId> assignment = {7, 7, 3};
    std::ostringstream out;
    write_partition(out, tokens, assignment);
    // lexicographic order: node1, node10, node2; ids relabeled from that order
    CHECK(out.str() ==
          "node1,0\n"
          "node10,1\n"
          "node2,1\n");
    CHECK_THROWS_AS(write_partition(out, tokens, {0, 1}), std::invalid_argument);
}

TEST_CASE("partition files parse into sorted token/community rows") {
    std::istringstream in(
        "# clustering\n"
        "b,1\n"
        "a,0\n"
        "c;x,1\n");
    PartitionFile parsed = parse_partition(in, "part");
    CHECK(parsed.tokens == std::vector<std::string>{"a", "b", "c;x"});
    CHECK(parsed.communities == std::vector<CommunityId>{0, 1, 1});
}

TEST_CASE("malformed partition files raise errors") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return parse_partition(in, "part");
    };
    CHECK_THROWS_WITH_AS(parse("a\n"), "part:1: expected 'token,community_id'", ParseError);
    CHECK_THROWS_WITH_AS(parse("a,\n"), "part:1: invalid community id", ParseError);
    CHECK_THROWS_WITH_AS(parse("a,x\n"), "part:1: invalid community id", ParseError);
    CHECK_THROWS_WITH_AS(parse("a,-2\n"), "part:1: invalid community id", ParseError);
    CHECK_THROWS_WITH_AS(parse(",3\n"), "part:1: empty node token", ParseError);
    CHECK_THROWS_WITH_AS(parse("a,1\na,2\n"), "part: duplicate token 'a'", ParseError);
    CHECK_THROWS_WITH_AS(parse("# nothing\n"), "part: empty partition file", ParseError);
}

TEST_CASE("align_partition reorders rows to the hypergraph token order") {
    std::istringstream in(
        "w,4\n"
        "y,9\n"
        "x,4\n");
    PartitionFile parsed = parse_partition(in, "part");
    std::vector<CommunityId> aligned = align_partition(parsed, {"y", "w", "x"});
    CHECK(aligned == std::vector<CommunityId>{9, 4, 4});

    CHECK_THROWS_AS(align_partition(parsed, {"y", "w"}), ParseError);
    CHECK_THROWS_AS(align_partition(parsed, {"y", "w", "z"}), ParseError);
}

TEST_CASE("partition write/parse round trip preserves the grouping") {
    std::vector<std::string> tokens = {"n1", "n2", "n3", "n4"};
    std::vector<CommunityId> assignment = {5, 2, 5, 8};
    std::ostringstream out;
    write_partition(out, tokens, assignment);
    std::istringstream in(out.str());
    PartitionFile parsed = parse_partition(in, "round");
    std::vector<CommunityId> aligned = align_partition(parsed, tokens);
    // same grouping up to relabeling
    CHECK(testutil::same_partition(aligned, assignment));
}
