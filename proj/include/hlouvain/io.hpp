// io.hpp - text formats for hypergraphs and partitions
#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "hlouvain/hypergraph.hpp"

namespace hlouvain {

// Malformed input; the message carries the source name and line number.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct HypergraphFile {
    Hypergraph graph;
    std::vector<std::string> tokens;  // node index -> token, first-appearance order
    std::size_t dropped_edges = 0;    // size-1 lines skipped during ingestion
};

// One hyperedge per line: comma-separated node tokens, optionally ';' and a
// decimal weight (default 1). Blank lines and lines starting with '#' are
// skipped. Tokens may not repeat within a line (the format describes simple
// hypergraphs; multisets only arise internally from contraction).
HypergraphFile parse_hypergraph(std::istream& in, const std::string& source_name);
HypergraphFile read_hypergraph_file(const std::string& path);

void write_hypergraph(std::ostream& out, const Hypergraph& h,
                      const std::vector<std::string>& tokens);
void write_hypergraph_file(const std::string& path, const Hypergraph& h,
                           const std::vector<std::string>& tokens);

struct PartitionFile {
    std::vector<std::string> tokens;        // sorted lexicographically
    std::vector<CommunityId> communities;   // parallel to tokens
};

// Lines "token,community_id", written sorted by token with community ids
// relabeled in order of first appearance.
void write_partition(std::ostream& out, const std::vector<std::string>& tokens,
                     const std::vector<CommunityId>& assignment);
void write_partition_file(const std::string& path, const std::vector<std::string>& tokens,
                          const std::vector<CommunityId>& assignment);

PartitionFile parse_partition(std::istream& in, const std::string& source_name);
PartitionFile read_partition_file(const std::string& path);

// Reorders a parsed partition to the given token order; throws ParseError if
// the token sets differ.
std::vector<CommunityId> align_partition(const PartitionFile& parsed,
                                         const std::vector<std::string>& tokens);

}  // namespace hlouvain
