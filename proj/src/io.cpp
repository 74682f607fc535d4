#include "hlouvain/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "hlouvain/partition.hpp"

namespace hlouvain {

namespace {

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
    throw ParseError(source + ":" + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t' || text.front() == '\r')) {
        text.remove_prefix(1);
    }
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
        text.remove_suffix(1);
    }
    return text;
}

std::string format_weight(double w) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", w);
    return buf;
}

}  // namespace

HypergraphFile parse_hypergraph(std::istream& in, const std::string& source_name) {
    std::vector<std::string> tokens;
    std::unordered_map<std::string, NodeId> index;
    std::vector<Hyperedge> edges;
    std::size_t dropped = 0;

    auto node_of = [&](std::string_view token) {
        auto it = index.find(std::string(token));
        if (it != index.end()) {
            return it->second;
        }
        NodeId id = static_cast<NodeId>(tokens.size());
        tokens.emplace_back(token);
        index.emplace(tokens.back(), id);
        return id;
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = trim(line);
        if (view.empty() || view.front() == '#') {
            continue;
        }
        double weight = 1.0;
        std::size_t semi = view.find(';');
        if (semi != std::string_view::npos) {
            std::string_view weight_text = trim(view.substr(semi + 1));
            view = trim(view.substr(0, semi));
            if (weight_text.empty()) {
                fail(source_name, line_no, "missing weight after ';'");
            }
            const char* begin = weight_text.data();
            const char* end = begin + weight_text.size();
            auto [ptr, ec] = std::from_chars(begin, end, weight);
            if (ec != std::errc{} || ptr != end) {
                fail(source_name, line_no, "invalid weight");
            }
            if (!(weight > 0.0)) {
                fail(source_name, line_no, "weight must be positive");
            }
        }

        Hyperedge edge;
        edge.weight = weight;
        std::size_t start = 0;
        while (start <= view.size()) {
            std::size_t comma = view.find(',', start);
            std::string_view token = comma == std::string_view::npos
                                         ? view.substr(start)
                                         : view.substr(start, comma - start);
            token = trim(token);
            if (token.empty()) {
                fail(source_name, line_no, "empty node token");
            }
            edge.members.push_back(node_of(token));
            if (comma == std::string_view::npos) {
                break;
            }
            start = comma + 1;
        }

        std::vector<NodeId> sorted = edge.members;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            fail(source_name, line_no, "repeated node token within one hyperedge");
        }
        if (edge.size() < 2) {
            ++dropped;
            continue;
        }
        edges.push_back(std::move(edge));
    }
    if (edges.empty()) {
        throw ParseError(source_name + ": no hyperedges of size >= 2");
    }
    return HypergraphFile{Hypergraph(tokens.size(), std::move(edges)), std::move(tokens),
                          dropped};
}

HypergraphFile read_hypergraph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path + ": cannot open file");
    }
    return parse_hypergraph(in, path);
}

void write_hypergraph(std::ostream& out, const Hypergraph& h,
                      const std::vector<std::string>& tokens) {
    if (tokens.size() != h.node_count()) {
        throw std::invalid_argument("write_hypergraph: token table size mismatch");
    }
    for (const auto& e : h.edges()) {
        for (std::size_t i = 0; i < e.members.size(); ++i) {
            if (i > 0) {
                out << ',';
            }
            out << tokens[e.members[i]];
        }
        if (e.weight != 1.0) {
            out << ';' << format_weight(e.weight);
        }
        out << '\n';
    }
}

void write_hypergraph_file(const std::string& path, const Hypergraph& h,
                           const std::vector<std::string>& tokens) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error(path + ": cannot open for writing");
    }
    write_hypergraph(out, h, tokens);
}

void write_partition(std::ostream& out, const std::vector<std::string>& tokens,
                     const std::vector<CommunityId>& assignment) {
    if (tokens.size() != assignment.size()) {
        throw std::invalid_argument("write_partition: token table size mismatch");
    }
    std::vector<std::size_t> order(tokens.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return tokens[a] < tokens[b]; });
    std::vector<CommunityId> sorted_ids(tokens.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        sorted_ids[i] = assignment[order[i]];
    }
    sorted_ids = canonical_labels(sorted_ids);
    for (std::size_t i = 0; i < order.size(); ++i) {
        out << tokens[order[i]] << ',' << sorted_ids[i] << '\n';
    }
}

void write_partition_file(const std::string& path, const std::vector<std::string>& tokens,
                          const std::vector<CommunityId>& assignment) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error(path + ": cannot open for writing");
    }
    write_partition(out, tokens, assignment);
}

PartitionFile parse_partition(std::istream& in, const std::string& source_name) {
    std::vector<std::pair<std::string, CommunityId>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = trim(line);
        if (view.empty() || view.front() == '#') {
            continue;
        }
        std::size_t comma = view.rfind(',');
        if (comma == std::string_view::npos) {
            fail(source_name, line_no, "expected 'token,community_id'");
        }
        std::string_view token = trim(view.substr(0, comma));
        std::string_view id_text = trim(view.substr(comma + 1));
        if (token.empty()) {
            fail(source_name, line_no, "empty node token");
        }
        CommunityId id = 0;
        const char* begin = id_text.data();
        const char* end = begin + id_text.size();
        auto [ptr, ec] = std::from_chars(begin, end, id);
        if (id_text.empty() || ec != std::errc{} || ptr != end) {
            fail(source_name, line_no, "invalid community id");
        }
        rows.emplace_back(std::string(token), id);
    }
    if (rows.empty()) {
        throw ParseError(source_name + ": empty partition file");
    }
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].first == rows[i - 1].first) {
            throw ParseError(source_name + ": duplicate token '" + rows[i].first + "'");
        }
    }
    PartitionFile parsed;
    parsed.tokens.reserve(rows.size());
    parsed.communities.reserve(rows.size());
    for (auto& [token, id] : rows) {
        parsed.tokens.push_back(std::move(token));
        parsed.communities.push_back(id);
    }
    return parsed;
}

PartitionFile read_partition_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path + ": cannot open file");
    }
    return parse_partition(in, path);
}

std::vector<CommunityId> align_partition(const PartitionFile& parsed,
                                         const std::vector<std::string>& tokens) {
    if (parsed.tokens.size() != tokens.size()) {
        throw ParseError("partition does not cover the same node set as the hypergraph");
    }
    std::unordered_map<std::string_view, CommunityId> by_token;
    by_token.reserve(parsed.tokens.size());
    for (std::size_t i = 0; i < parsed.tokens.size(); ++i) {
        by_token.emplace(parsed.tokens[i], parsed.communities[i]);
    }
    std::vector<CommunityId> out(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        auto it = by_token.find(tokens[i]);
        if (it == by_token.end()) {
            throw ParseError("partition is missing node '" + tokens[i] + "'");
        }
        out[i] = it->second;
    }
    return out;
}

}  // namespace hlouvain
