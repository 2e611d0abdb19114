#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pfact/colouring.hpp"
#include "pfact/error.hpp"
#include "pfact/graph.hpp"

namespace pfact {

// ---------------------------------------------------------------------------
// graph6

namespace detail {

inline void graph6_size(std::string& out, int n)
{
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else if (n <= 258047) {
        out.push_back(126);
        for (int shift = 12; shift >= 0; shift -= 6)
            out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
    } else {
        out.push_back(126);
        out.push_back(126);
        for (int shift = 30; shift >= 0; shift -= 6)
            out.push_back(static_cast<char>(((static_cast<long long>(n) >> shift) & 63) + 63));
    }
}

}  // namespace detail

inline std::string write_graph6(const Graph& g)
{
    std::string out;
    int n = g.order();
    detail::graph6_size(out, n);
    int bits = 0, acc = 0;
    for (Vertex j = 1; j < n; ++j)
        for (Vertex i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
            if (++bits == 6) {
                out.push_back(static_cast<char>(acc + 63));
                bits = acc = 0;
            }
        }
    if (bits) {
        acc <<= (6 - bits);
        out.push_back(static_cast<char>(acc + 63));
    }
    return out;
}

/// Parses one graph6 record (optionally preceded by the >>graph6<< header).
/// Errors carry the byte offset within `text`.
inline Graph read_graph6(std::string_view text)
{
    std::size_t pos = 0;
    constexpr std::string_view header = ">>graph6<<";
    if (text.substr(0, header.size()) == header)
        pos = header.size();
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r'))
        text.remove_suffix(1);
    if (pos >= text.size())
        throw parse_error("empty graph6 input", pos);
    auto value = [&](std::size_t p) {
        if (p >= text.size())
            throw parse_error("truncated graph6 size field", p);
        int c = static_cast<unsigned char>(text[p]);
        if (c < 63 || c > 126)
            throw parse_error("invalid graph6 character", p);
        return c - 63;
    };
    long long n = 0;
    if (value(pos) < 63) {
        n = value(pos);
        pos += 1;
    } else if (value(pos + 1) < 63) {
        for (int i = 1; i <= 3; ++i)
            n = (n << 6) | value(pos + i);
        pos += 4;
    } else {
        for (int i = 2; i <= 7; ++i)
            n = (n << 6) | value(pos + i);
        pos += 8;
    }
    if (n > 100000)
        throw parse_error("graph6 order too large", pos);
    long long pairs = n * (n - 1) / 2;
    std::size_t need = static_cast<std::size_t>((pairs + 5) / 6);
    if (text.size() - pos < need)
        throw parse_error("truncated graph6 adjacency data", text.size());
    if (text.size() - pos > need)
        throw parse_error("trailing bytes after graph6 record", pos + need);
    std::vector<std::pair<Vertex, Vertex>> edges;
    long long k = 0;
    for (Vertex j = 1; j < n; ++j)
        for (Vertex i = 0; i < j; ++i, ++k) {
            std::size_t p = pos + static_cast<std::size_t>(k / 6);
            int bit = 5 - static_cast<int>(k % 6);
            if ((value(p) >> bit) & 1)
                edges.emplace_back(i, j);
        }
    if (need) {
        int used = static_cast<int>(pairs - (need - 1) * 6);
        int pad_mask = (1 << (6 - used)) - 1;
        if (value(pos + need - 1) & pad_mask)
            throw parse_error("nonzero graph6 padding bits", pos + need - 1);
    }
    return Graph(static_cast<int>(n), std::move(edges));
}

/// One graph per nonempty line.
inline std::vector<Graph> read_graph6_lines(std::string_view text)
{
    std::vector<Graph> out;
    std::size_t start = 0;
    constexpr std::string_view header = ">>graph6<<";
    if (text.substr(0, header.size()) == header)
        start = header.size();
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (!line.empty()) {
            try {
                out.push_back(read_graph6(line));
            } catch (const parse_error& e) {
                throw parse_error(std::string("graph6 record: ") + e.what(), start + e.position());
            }
        }
        start = end + 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// planar_code

struct PlaneGraph {
    Graph graph;
    RotationSystem rotation;
};

inline constexpr std::string_view planar_code_header = ">>planar_code<<";

/// Parses a planar_code stream: header, then per graph one byte n followed by
/// each vertex's neighbours (1-based) in rotation order, each list ended by 0.
inline std::vector<PlaneGraph> read_planar_code(std::string_view bytes)
{
    if (bytes.substr(0, planar_code_header.size()) != planar_code_header)
        throw parse_error("missing >>planar_code<< header", 0);
    std::size_t pos = planar_code_header.size();
    std::vector<PlaneGraph> out;
    while (pos < bytes.size()) {
        std::size_t record = pos;
        int n = static_cast<unsigned char>(bytes[pos++]);
        if (n == 0)
            throw parse_error("planar_code records with 256 or more vertices are not supported", record);
        std::vector<std::vector<Vertex>> rot(n);
        std::vector<std::pair<Vertex, Vertex>> pairs;
        for (Vertex v = 0; v < n; ++v) {
            while (true) {
                if (pos >= bytes.size())
                    throw parse_error("truncated planar_code record", pos);
                int w = static_cast<unsigned char>(bytes[pos]);
                if (w == 0) {
                    ++pos;
                    break;
                }
                if (w > n)
                    throw parse_error("planar_code neighbour out of range", pos);
                if (w - 1 == v)
                    throw parse_error("planar_code loop", pos);
                if (std::find(rot[v].begin(), rot[v].end(), w - 1) != rot[v].end())
                    throw parse_error("planar_code repeated neighbour", pos);
                rot[v].push_back(w - 1);
                if (v < w - 1)
                    pairs.emplace_back(v, w - 1);
                ++pos;
            }
        }
        for (Vertex v = 0; v < n; ++v)
            for (Vertex w : rot[v])
                if (std::find(rot[w].begin(), rot[w].end(), v) == rot[w].end())
                    throw parse_error("asymmetric planar_code adjacency between " + std::to_string(v + 1) + " and " +
                                          std::to_string(w + 1),
                                      record);
        PlaneGraph pg;
        pg.graph = Graph(n, std::move(pairs));
        pg.rotation = rotation_from_neighbours(pg.graph, rot, true);
        try {
            validate_rotation(pg.graph, pg.rotation);
        } catch (const error& e) {
            throw parse_error(e.what(), record);
        }
        out.push_back(std::move(pg));
    }
    return out;
}

inline std::string write_planar_code(const std::vector<PlaneGraph>& graphs)
{
    std::string out(planar_code_header);
    for (auto& pg : graphs) {
        if (pg.graph.order() >= 256 || pg.graph.order() == 0)
            throw error("planar_code writer supports 1..255 vertices");
        out.push_back(static_cast<char>(pg.graph.order()));
        for (auto& nb : rotation_neighbours(pg.graph, pg.rotation)) {
            for (Vertex w : nb)
                out.push_back(static_cast<char>(w + 1));
            out.push_back(0);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// CEL: coloured edge list
//
//   # comment
//   v <n>
//   e <u> <w> [colour]
//   rot <v> <neighbour> ...      cyclic neighbour order at v
//   col <name> <colour> ...      extra colouring, one colour per edge in EdgeId order
//   expect <name> <k>            claimed perfect-pair count ("main" names the e-line colouring)
//   fragment <a> <b> <c> <d>     distinguished vertices of a divorce fragment

struct CelDocument {
    std::vector<std::string> comments;
    std::shared_ptr<const Graph> graph;
    std::optional<RotationSystem> rotation;
    std::optional<EdgeColouring> colouring;
    std::vector<std::pair<std::string, EdgeColouring>> named;
    std::vector<std::pair<std::string, int>> expectations;
    std::optional<std::array<Vertex, 4>> fragment;

    /// "main" for the e-line colouring, otherwise a named one.
    const EdgeColouring& colouring_named(const std::string& name) const
    {
        if (name == "main") {
            if (!colouring)
                throw error("document has no main colouring");
            return *colouring;
        }
        for (auto& [n, c] : named)
            if (n == name)
                return c;
        throw error("no colouring named " + name);
    }

    /// Every stored colouring, main first.
    std::vector<std::pair<std::string, EdgeColouring>> all_colourings() const
    {
        std::vector<std::pair<std::string, EdgeColouring>> out;
        if (colouring)
            out.emplace_back("main", *colouring);
        for (auto& p : named)
            out.push_back(p);
        return out;
    }
};

namespace detail {

inline std::vector<std::string> split_words(const std::string& line)
{
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string w;
    while (in >> w)
        out.push_back(w);
    return out;
}

inline long long parse_int(const std::string& word, std::size_t line)
{
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(word, &used);
    } catch (const std::exception&) {
        throw parse_error("expected an integer, got '" + word + "'", line);
    }
    if (used != word.size())
        throw parse_error("expected an integer, got '" + word + "'", line);
    return v;
}

}  // namespace detail

/// Parses CEL text; errors report the 1-based line number.
inline CelDocument read_cel(std::string_view text)
{
    CelDocument doc;
    std::optional<int> n;
    struct pending_edge {
        Vertex u, w;
        int colour;
        std::size_t line;
    };
    std::vector<pending_edge> edges;
    std::vector<std::pair<std::vector<std::string>, std::size_t>> rot_lines, col_lines;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        std::string line(text.substr(start, end - start));
        start = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (!line.empty() && line[0] == '#') {
            doc.comments.push_back(line);
            continue;
        }
        auto words = detail::split_words(line);
        if (words.empty())
            continue;
        const std::string& kind = words[0];
        if (kind == "v") {
            if (words.size() != 2)
                throw parse_error("malformed v line", line_no);
            if (n)
                throw parse_error("repeated v line", line_no);
            long long value = detail::parse_int(words[1], line_no);
            if (value < 0 || value > 1000000)
                throw parse_error("vertex count out of range", line_no);
            n = static_cast<int>(value);
        } else if (kind == "e") {
            if (!n)
                throw parse_error("edge before v line", line_no);
            if (words.size() != 3 && words.size() != 4)
                throw parse_error("malformed e line", line_no);
            long long u = detail::parse_int(words[1], line_no), w = detail::parse_int(words[2], line_no);
            if (u < 0 || w < 0 || u >= *n || w >= *n)
                throw parse_error("edge endpoint out of range", line_no);
            if (u == w)
                throw parse_error("loop", line_no);
            int c = 0;
            if (words.size() == 4) {
                long long cv = detail::parse_int(words[3], line_no);
                if (cv < 1 || cv > max_colours)
                    throw parse_error("colour out of range", line_no);
                c = static_cast<int>(cv);
            }
            edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(w), c, line_no});
        } else if (kind == "rot") {
            rot_lines.emplace_back(words, line_no);
        } else if (kind == "col") {
            col_lines.emplace_back(words, line_no);
        } else if (kind == "expect") {
            if (words.size() != 3)
                throw parse_error("malformed expect line", line_no);
            doc.expectations.emplace_back(words[1], static_cast<int>(detail::parse_int(words[2], line_no)));
        } else if (kind == "fragment") {
            if (words.size() != 5 || !n)
                throw parse_error("malformed fragment line", line_no);
            std::array<Vertex, 4> f{};
            for (int i = 0; i < 4; ++i) {
                long long v = detail::parse_int(words[i + 1], line_no);
                if (v < 0 || v >= *n)
                    throw parse_error("fragment vertex out of range", line_no);
                f[i] = static_cast<Vertex>(v);
            }
            doc.fragment = f;
        } else {
            throw parse_error("unknown directive '" + kind + "'", line_no);
        }
    }
    if (!n)
        throw parse_error("missing v line", line_no);

    // duplicates are reported at the later line
    {
        std::vector<std::pair<std::pair<Vertex, Vertex>, std::size_t>> keys;
        for (auto& e : edges)
            keys.push_back({{std::min(e.u, e.w), std::max(e.u, e.w)}, e.line});
        std::sort(keys.begin(), keys.end());
        for (std::size_t i = 1; i < keys.size(); ++i)
            if (keys[i].first == keys[i - 1].first)
                throw parse_error("duplicate edge", keys[i].second);
    }
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (auto& e : edges)
        pairs.emplace_back(e.u, e.w);
    auto g = std::make_shared<const Graph>(*n, pairs);
    doc.graph = g;

    std::size_t coloured = std::count_if(edges.begin(), edges.end(), [](auto& e) { return e.colour > 0; });
    if (coloured && coloured != edges.size())
        throw parse_error("some edges lack a colour", edges.front().line);
    if (coloured) {
        std::vector<Colour> colours(g->size());
        std::vector<std::size_t> line_of(g->size());
        for (auto& e : edges) {
            EdgeId id = g->edge_id(e.u, e.w);
            colours[id] = static_cast<Colour>(e.colour);
            line_of[id] = e.line;
        }
        for (Vertex v = 0; v < g->order(); ++v) {
            unsigned seen = 0;
            for (EdgeId e : g->incident(v)) {
                unsigned bit = 1u << colours[e];
                if (seen & bit)
                    throw parse_error("colour clash at vertex " + std::to_string(v), line_of[e]);
                seen |= bit;
            }
        }
        int d = g->regularity() > 0 ? std::max<int>(g->regularity(), *std::max_element(colours.begin(), colours.end()))
                                    : *std::max_element(colours.begin(), colours.end());
        doc.colouring = EdgeColouring(g, std::move(colours), d);
    }

    if (!rot_lines.empty()) {
        std::vector<std::vector<Vertex>> nbrs(g->order());
        std::vector<char> given(g->order(), 0);
        for (auto& [words, ln] : rot_lines) {
            if (words.size() < 2)
                throw parse_error("malformed rot line", ln);
            long long v = detail::parse_int(words[1], ln);
            if (v < 0 || v >= g->order())
                throw parse_error("dangling rotation reference", ln);
            if (given[v])
                throw parse_error("repeated rot line", ln);
            given[v] = 1;
            for (std::size_t i = 2; i < words.size(); ++i) {
                long long w = detail::parse_int(words[i], ln);
                if (w < 0 || w >= g->order() || !g->adjacent(static_cast<Vertex>(v), static_cast<Vertex>(w)))
                    throw parse_error("dangling rotation reference", ln);
                nbrs[v].push_back(static_cast<Vertex>(w));
            }
        }
        RotationSystem r = rotation_from_neighbours(*g, nbrs, true);
        try {
            check_rotation_consistent(*g, r);
        } catch (const error& e) {
            throw parse_error(e.what(), rot_lines.front().second);
        }
        doc.rotation = std::move(r);
    }

    for (auto& [words, ln] : col_lines) {
        if (words.size() != static_cast<std::size_t>(g->size()) + 2)
            throw parse_error("col line needs one colour per edge", ln);
        std::vector<Colour> colours;
        for (std::size_t i = 2; i < words.size(); ++i) {
            long long c = detail::parse_int(words[i], ln);
            if (c < 1 || c > max_colours)
                throw parse_error("colour out of range", ln);
            colours.push_back(static_cast<Colour>(c));
        }
        int d = std::max<int>(g->regularity(), *std::max_element(colours.begin(), colours.end()));
        EdgeColouring col(g, std::move(colours), d);
        if (!col.is_proper())
            throw parse_error("colour clash in colouring " + words[1], ln);
        doc.named.emplace_back(words[1], std::move(col));
    }
    return doc;
}

inline std::string write_cel(const CelDocument& doc)
{
    if (!doc.graph)
        throw error("document without a graph");
    const Graph& g = *doc.graph;
    std::ostringstream out;
    for (auto& c : doc.comments)
        out << c << '\n';
    out << "v " << g.order() << '\n';
    for (EdgeId e = 0; e < g.size(); ++e) {
        out << "e " << g.edge(e).u << ' ' << g.edge(e).v;
        if (doc.colouring)
            out << ' ' << int(doc.colouring->colour(e));
        out << '\n';
    }
    if (doc.rotation) {
        auto nbrs = rotation_neighbours(g, *doc.rotation);
        for (Vertex v = 0; v < g.order(); ++v) {
            out << "rot " << v;
            for (Vertex w : nbrs[v])
                out << ' ' << w;
            out << '\n';
        }
    }
    for (auto& [name, col] : doc.named) {
        out << "col " << name;
        for (Colour c : col.colours())
            out << ' ' << int(c);
        out << '\n';
    }
    for (auto& [name, k] : doc.expectations)
        out << "expect " << name << ' ' << k << '\n';
    if (doc.fragment) {
        auto& f = *doc.fragment;
        out << "fragment " << f[0] << ' ' << f[1] << ' ' << f[2] << ' ' << f[3] << '\n';
    }
    return out.str();
}

inline std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw error("cannot open " + path.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline void write_file(const std::filesystem::path& path, std::string_view data)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw error("cannot write " + path.string());
    out << data;
}

inline CelDocument load_cel(const std::filesystem::path& path)
{
    try {
        return read_cel(read_file(path));
    } catch (const parse_error& e) {
        throw parse_error(path.string() + ": " + e.what(), e.position());
    }
}

/// A corpus file together with the result of its load-time checks.
struct CorpusEntry {
    std::string name;
    CelDocument doc;
    std::vector<std::string> provenance;  ///< the file's comment lines
};

/// Loads and self-verifies a corpus file: stored colourings proper, embedding
/// passes the Euler check, claimed perfect-pair counts match.
inline CorpusEntry load_corpus_entry(const std::filesystem::path& path)
{
    CorpusEntry entry;
    entry.name = path.stem().string();
    entry.doc = load_cel(path);
    entry.provenance = entry.doc.comments;
    const Graph& g = *entry.doc.graph;
    if (entry.doc.rotation)
        validate_rotation(g, *entry.doc.rotation);
    for (auto& [name, col] : entry.doc.all_colourings())
        if (!col.is_proper())
            throw error(entry.name + ": colouring " + name + " is not proper");
    for (auto& [name, k] : entry.doc.expectations) {
        const EdgeColouring& col = entry.doc.colouring_named(name);
        int got = perfect_pairs(col).k;
        if (got != k)
            throw error(entry.name + ": colouring " + name + " has " + std::to_string(got) +
                        " perfect pairs, file claims " + std::to_string(k));
    }
    return entry;
}

inline std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& dir)
{
    std::vector<std::filesystem::path> out;
    for (auto& item : std::filesystem::directory_iterator(dir))
        if (item.is_regular_file() && item.path().extension() == ".cel")
            out.push_back(item.path());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace pfact
