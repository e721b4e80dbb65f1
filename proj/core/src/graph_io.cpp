#include "metgraph/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "metgraph/error.hpp"

namespace metgraph {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream stream(line);
    std::string tok;
    while (stream >> tok) {
        if (tok[0] == '#') break;
        tokens.push_back(tok);
    }
    return tokens;
}

[[noreturn]] void fail(const std::string& source, std::size_t line_no, const std::string& what) {
    throw Error(source + ":" + std::to_string(line_no) + ": " + what);
}

}  // namespace

MetrizedGraph parse_graph(std::istream& in, const std::string& source_name) {
    MetrizedGraph graph;
    bool explicit_vertices = false;
    std::string line;
    std::size_t line_no = 0;

    auto endpoint = [&](const std::string& label, std::size_t ln) -> std::size_t {
        if (auto idx = graph.find_vertex(label)) return *idx;
        if (explicit_vertices)
            fail(source_name, ln, "edge endpoint '" + label + "' was not declared by a vertex line");
        return graph.ensure_vertex(label);
    };

    while (std::getline(in, line)) {
        ++line_no;
        std::vector<std::string> tokens = tokenize(line);
        if (tokens.empty()) continue;
        if (tokens[0] == "vertex") {
            if (tokens.size() != 2) fail(source_name, line_no, "expected: vertex <label>");
            if (graph.find_vertex(tokens[1]))
                fail(source_name, line_no, "duplicate vertex label '" + tokens[1] + "'");
            explicit_vertices = true;
            graph.add_vertex(tokens[1]);
        } else if (tokens[0] == "edge") {
            if (tokens.size() != 4)
                fail(source_name, line_no, "expected: edge <label_u> <label_v> <length>");
            Rational length;
            try {
                length = parse_rational(tokens[3]);
            } catch (const Error& e) {
                fail(source_name, line_no, e.what());
            }
            if (length <= 0)
                fail(source_name, line_no, "non-positive length " + tokens[3]);
            std::size_t u = endpoint(tokens[1], line_no);
            std::size_t v = endpoint(tokens[2], line_no);
            graph.add_edge(u, v, std::move(length));
        } else {
            fail(source_name, line_no, "unknown directive '" + tokens[0] + "'");
        }
    }
    if (graph.vertex_count() == 0) throw Error(source_name + ": no vertices");
    return graph;
}

MetrizedGraph load_graph(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw Error("cannot open '" + path + "'");
    return parse_graph(file, path);
}

std::string serialize_graph(const MetrizedGraph& graph) {
    std::ostringstream out;
    for (std::size_t i = 0; i < graph.vertex_count(); ++i)
        out << "vertex " << graph.vertex_label(i) << "\n";
    for (const Edge& e : graph.edges())
        out << "edge " << graph.vertex_label(e.u) << " " << graph.vertex_label(e.v) << " "
            << to_fraction_string(e.length) << "\n";
    return out.str();
}

}  // namespace metgraph
