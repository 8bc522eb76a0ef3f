#include <trifree/error.hh>
#include <trifree/graph_io.hh>
#include <trifree/text.hh>

#include <fstream>
#include <sstream>

using std::istream;
using std::ostream;
using std::size_t;
using std::string;
using std::to_string;

namespace trifree
{
    auto read_edge_list(istream & in) -> Graph
    {
        LineReader reader(in);
        auto header = reader.next_tokens();
        if (! header)
            throw ParseError(reader.line(), "missing header 'n m'");
        if (header->size() != 2)
            throw ParseError(reader.line(), "header must be 'n m'");
        auto n = parse_unsigned(header->at(0), reader.line());
        auto m = parse_unsigned(header->at(1), reader.line());
        if (n > Graph::max_vertices)
            throw ParseError(reader.line(), "vertex count " + to_string(n) + " exceeds the dense limit");

        Graph g(n);
        for (size_t i = 0; i < m; ++i) {
            auto tokens = reader.next_tokens();
            if (! tokens)
                throw ParseError(reader.line(), "expected " + to_string(m) + " edges, found " + to_string(i));
            if (tokens->size() != 2)
                throw ParseError(reader.line(), "edge line must be 'u v'");
            auto u = parse_unsigned(tokens->at(0), reader.line());
            auto v = parse_unsigned(tokens->at(1), reader.line());
            if (u >= n || v >= n)
                throw ParseError(reader.line(), "vertex out of range");
            if (u == v)
                throw ParseError(reader.line(), "loop at vertex " + to_string(u));
            if (! g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v)))
                throw ParseError(reader.line(), "duplicate edge " + to_string(u) + " " + to_string(v));
        }
        if (reader.next_tokens())
            throw ParseError(reader.line(), "trailing content after " + to_string(m) + " edges");
        return g;
    }

    auto read_edge_list_file(const string & path) -> Graph
    {
        std::ifstream in(path);
        if (! in)
            throw Error(ErrorKind::invalid_argument, "cannot open " + path);
        return read_edge_list(in);
    }

    void write_edge_list(ostream & out, const Graph & g)
    {
        out << g.size() << ' ' << g.edge_count() << '\n';
        for (auto & e : g.edges())
            out << e.u << ' ' << e.v << '\n';
    }

    void write_edge_list_file(const string & path, const Graph & g)
    {
        std::ofstream out(path);
        if (! out)
            throw Error(ErrorKind::invalid_argument, "cannot write " + path);
        write_edge_list(out, g);
    }
}
