#pragma once

#include <trifree/graph.hh>

#include <iosfwd>
#include <string>

namespace trifree
{
    /// Edge-list text: a header line "n m" followed by m lines "u v" (0-based).
    /// '#' starts a comment running to the end of the line.
    auto read_edge_list(std::istream & in) -> Graph;
    auto read_edge_list_file(const std::string & path) -> Graph;

    /// Writes the header and the edges in increasing (u, v) order, u < v.
    void write_edge_list(std::ostream & out, const Graph & g);
    void write_edge_list_file(const std::string & path, const Graph & g);
}
