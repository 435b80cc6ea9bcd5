#include "wrcm/graph_io.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace wrcm {

namespace {

void append_real(std::string& out, double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    out.append(buf, res.ptr);
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    throw std::runtime_error("Error: line " + std::to_string(line) + ": " + what);
}

struct Cursor {
    const std::string& s;
    std::size_t pos = 0;
    std::size_t line;

    bool at_end() const { return pos >= s.size(); }
    void expect_space() {
        if (at_end() || s[pos] != ' ') fail(line, "expected a single space");
        ++pos;
    }
    std::string_view token() {
        const std::size_t start = pos;
        while (pos < s.size() && s[pos] != ' ') ++pos;
        if (pos == start) fail(line, "missing field");
        return std::string_view(s).substr(start, pos - start);
    }
    double real() {
        const auto tok = token();
        double x = 0.0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), x);
        if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
            fail(line, "bad real number '" + std::string(tok) + "'");
        return x;
    }
    std::uint64_t natural() {
        const auto tok = token();
        std::uint64_t x = 0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), x);
        if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
            fail(line, "bad integer '" + std::string(tok) + "'");
        return x;
    }
    // strips "key=" and leaves the cursor on the value
    void key(const char* name) {
        const std::string want = std::string(name) + "=";
        if (s.compare(pos, want.size(), want) != 0)
            fail(line, "expected '" + want + "'");
        pos += want.size();
    }
};

}  // namespace

std::string format_graph(const Graph& graph) {
    const ModelParams& p = graph.params;
    std::string out = "wrcm 1 d=";
    out += std::to_string(graph.points.d);
    out += " beta=";
    append_real(out, p.beta);
    out += " gamma=";
    append_real(out, p.gamma);
    out += " delta=";
    append_real(out, p.delta);
    out += " kernel=";
    out += to_string(p.kernel);
    out += " profile=";
    out += to_string(p.profile);
    out += " side=";
    append_real(out, graph.points.window.side);
    out += " geometry=";
    out += to_string(graph.points.window.geometry);
    out += " seed=";
    out += std::to_string(graph.points.seed);
    out += '\n';
    for (std::uint32_t v = 0; v < graph.size(); ++v) {
        out += "v ";
        out += std::to_string(v);
        const double* pos = graph.points.position(v);
        for (int k = 0; k < graph.points.d; ++k) {
            out += ' ';
            append_real(out, pos[k]);
        }
        out += ' ';
        append_real(out, graph.points.mark[v]);
        out += '\n';
    }
    for (const Edge& e : graph.edges) {
        out += "e ";
        out += std::to_string(e.first);
        out += ' ';
        out += std::to_string(e.second);
        out += '\n';
    }
    return out;
}

Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;

    if (!std::getline(in, line)) fail(1, "empty input");
    ++lineno;
    Cursor h{line, 0, lineno};
    if (h.token() != "wrcm") fail(lineno, "not a wrcm graph file");
    h.expect_space();
    if (h.natural() != 1) fail(lineno, "unsupported format version");
    h.expect_space();
    ModelParams params;
    h.key("d");
    const std::uint64_t d64 = h.natural();
    if (d64 < 1 || d64 > 3) fail(lineno, "d out of range");
    params.d = static_cast<int>(d64);
    h.expect_space();
    h.key("beta");
    params.beta = h.real();
    h.expect_space();
    h.key("gamma");
    params.gamma = h.real();
    h.expect_space();
    h.key("delta");
    params.delta = h.real();
    h.expect_space();
    h.key("kernel");
    params.kernel = kernel_from_string(std::string(h.token()));
    h.expect_space();
    h.key("profile");
    params.profile = profile_from_string(std::string(h.token()));
    h.expect_space();
    h.key("side");
    params.window.side = h.real();
    h.expect_space();
    h.key("geometry");
    params.window.geometry = geometry_from_string(std::string(h.token()));
    h.expect_space();
    h.key("seed");
    params.seed = h.natural();
    if (!h.at_end()) fail(lineno, "trailing characters after header");

    MarkedPointSet points;
    points.d = params.d;
    points.window = params.window;
    points.seed = params.seed;
    std::vector<Edge> edges;
    bool in_edges = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) fail(lineno, "blank line");
        Cursor c{line, 0, lineno};
        const auto kind = c.token();
        if (kind == "v") {
            if (in_edges) fail(lineno, "vertex after edge lines");
            c.expect_space();
            const std::uint64_t id = c.natural();
            if (id != points.size()) fail(lineno, "vertex ids must be consecutive");
            for (int k = 0; k < points.d; ++k) {
                c.expect_space();
                points.pos.push_back(c.real());
            }
            c.expect_space();
            const double mark = c.real();
            if (!(mark > 0.0 && mark < 1.0)) fail(lineno, "mark outside (0,1)");
            points.mark.push_back(mark);
        } else if (kind == "e") {
            in_edges = true;
            c.expect_space();
            const std::uint64_t i = c.natural();
            c.expect_space();
            const std::uint64_t j = c.natural();
            if (j >= points.size()) fail(lineno, "edge endpoint out of range");
            if (i >= j) fail(lineno, "edges must satisfy i < j");
            const Edge e{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)};
            if (!edges.empty() && !(edges.back() < e))
                fail(lineno, "edges must be strictly ascending");
            edges.push_back(e);
        } else {
            fail(lineno, "unknown line type '" + std::string(kind) + "'");
        }
        if (!c.at_end()) fail(lineno, "trailing characters");
    }

    // the palm vertex is the one pinned exactly at the origin; sampled
    // positions are never exactly zero
    for (std::uint32_t v = 0; v < points.size(); ++v) {
        bool at_origin = true;
        for (int k = 0; k < points.d; ++k)
            if (points.position(v)[k] != 0.0) at_origin = false;
        if (at_origin) {
            if (points.palm)
                throw std::runtime_error(
                    "Error: two vertices at the origin; palm is ambiguous");
            points.palm = v;
        }
    }

    Graph graph = make_graph(std::move(points), std::move(edges));
    graph.params = params;
    return graph;
}

void write_graph(const Graph& graph, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("Error: cannot open " + path + " for writing");
    const std::string text = format_graph(graph);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("Error: failed writing " + path);
}

Graph read_graph(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("Error: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str());
}

}  // namespace wrcm
