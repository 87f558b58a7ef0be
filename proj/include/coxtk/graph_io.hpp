// graph_io.hpp - text formats for graphs
//
// Edge-list format:    line 1 "n m", then m lines "u v" with 0 <= u < v < n.
// Matrix alternative:  line 1 "n", then n rows of n space-separated 0/1,
//                      symmetric with zero diagonal.
// Lines starting with '#' are comments.  Duplicate or loop edges are errors.
#ifndef COXTK_GRAPH_IO_HPP
#define COXTK_GRAPH_IO_HPP

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "coxtk/graph.hpp"

namespace coxtk {

namespace io_detail {

// Pulls the next non-comment, non-blank line; returns false at EOF.
inline bool next_content_line(std::istream& in, std::string& line, int& line_no) {
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos) continue;
        if (line[pos] == '#') continue;
        return true;
    }
    return false;
}

inline std::vector<long> parse_ints(const std::string& line, int line_no) {
    std::istringstream ss(line);
    std::vector<long> out;
    long x;
    while (ss >> x) out.push_back(x);
    std::string rest;
    if (ss.clear(), ss >> rest)
        throw FormatError("unexpected token '" + rest + "'", line_no);
    return out;
}

}  // namespace io_detail

inline Graph read_graph(std::istream& in) {
    using io_detail::next_content_line;
    using io_detail::parse_ints;

    std::string line;
    int line_no = 0;
    if (!next_content_line(in, line, line_no)) throw FormatError("empty graph file");
    auto header = parse_ints(line, line_no);

    if (header.size() == 2) {  // edge list
        long n = header[0], m = header[1];
        if (n < 0 || m < 0) throw FormatError("negative header value", line_no);
        Graph g(static_cast<int>(n));
        for (long e = 0; e < m; ++e) {
            if (!next_content_line(in, line, line_no))
                throw FormatError("expected " + std::to_string(m) + " edges, got " + std::to_string(e),
                                  line_no);
            auto uv = parse_ints(line, line_no);
            if (uv.size() != 2) throw FormatError("expected 'u v'", line_no);
            long u = uv[0], v = uv[1];
            if (!(0 <= u && u < v && v < n))
                throw FormatError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                      ") violates 0 <= u < v < n",
                                  line_no);
            if (g.adjacent(static_cast<int>(u), static_cast<int>(v)))
                throw FormatError("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")",
                                  line_no);
            g.add_edge(static_cast<int>(u), static_cast<int>(v));
        }
        if (next_content_line(in, line, line_no)) throw FormatError("trailing content", line_no);
        return g;
    }

    if (header.size() == 1) {  // adjacency matrix
        long n = header[0];
        if (n < 0) throw FormatError("negative vertex count", line_no);
        std::vector<std::vector<long>> rows;
        for (long r = 0; r < n; ++r) {
            if (!next_content_line(in, line, line_no))
                throw FormatError("expected " + std::to_string(n) + " matrix rows, got " +
                                      std::to_string(r),
                                  line_no);
            auto row = parse_ints(line, line_no);
            if (static_cast<long>(row.size()) != n)
                throw FormatError("row " + std::to_string(r) + " has " + std::to_string(row.size()) +
                                      " entries, expected " + std::to_string(n),
                                  line_no);
            for (long c = 0; c < n; ++c)
                if (row[c] != 0 && row[c] != 1)
                    throw FormatError("matrix entry (" + std::to_string(r) + "," + std::to_string(c) +
                                          ") must be 0 or 1",
                                      line_no);
            rows.push_back(std::move(row));
        }
        if (next_content_line(in, line, line_no)) throw FormatError("trailing content", line_no);
        Graph g(static_cast<int>(n));
        for (long r = 0; r < n; ++r) {
            if (rows[r][r] != 0) throw FormatError("nonzero diagonal at row " + std::to_string(r));
            for (long c = r + 1; c < n; ++c) {
                if (rows[r][c] != rows[c][r])
                    throw FormatError("matrix not symmetric at (" + std::to_string(r) + "," +
                                      std::to_string(c) + ")");
                if (rows[r][c] == 1) g.add_edge(static_cast<int>(r), static_cast<int>(c));
            }
        }
        return g;
    }

    throw FormatError("header must be 'n m' (edge list) or 'n' (matrix)", line_no);
}

inline Graph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    return read_graph(in);
}

inline void write_graph(std::ostream& out, const Graph& g) {
    auto es = g.edges();
    out << g.size() << ' ' << es.size() << '\n';
    for (auto [u, v] : es) out << u << ' ' << v << '\n';
}

}  // namespace coxtk

#endif
