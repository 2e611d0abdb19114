#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pfact/analysis.hpp"
#include "pfact/constructions.hpp"
#include "pfact/enumerate.hpp"
#include "pfact/factorisation.hpp"
#include "pfact/io.hpp"
#include "pfact/kempe.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace pfact;

namespace {

enum exit_code { ok = 0, property_false = 1, failure = 2, inconclusive = 3 };

struct global_options {
    int jobs = 1;
    std::string format = "json";
    std::string out;
};

/// A graph file: CEL, graph6 (.g6) or planar_code (.pc, first record).
CelDocument load_input(const std::string& path)
{
    auto ext = fs::path(path).extension().string();
    if (ext == ".g6") {
        CelDocument doc;
        auto graphs = read_graph6_lines(read_file(path));
        if (graphs.empty())
            throw error(path + ": no graph");
        doc.graph = std::make_shared<const Graph>(std::move(graphs.front()));
        return doc;
    }
    if (ext == ".pc") {
        CelDocument doc;
        auto graphs = read_planar_code(read_file(path));
        if (graphs.empty())
            throw error(path + ": no graph");
        doc.graph = std::make_shared<const Graph>(std::move(graphs.front().graph));
        doc.rotation = std::move(graphs.front().rotation);
        return doc;
    }
    return load_cel(path);
}

std::vector<int> parse_list(const std::string& s)
{
    std::vector<int> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw error("expected a comma separated list of integers, got '" + s + "'");
        }
    }
    return out;
}

/// "u-v" names an edge by its ends, a bare integer by its id.
EdgeId parse_edge(const Graph& g, const std::string& s)
{
    auto dash = s.find('-');
    try {
        if (dash == std::string::npos)
            return std::stoi(s);
        Vertex u = std::stoi(s.substr(0, dash)), v = std::stoi(s.substr(dash + 1));
        if (auto e = g.find_edge(u, v))
            return *e;
        throw error("no edge " + s);
    } catch (const std::invalid_argument&) {
        throw error("cannot read edge '" + s + "'");
    }
}

json profile_json(const PerfectPairProfile& p)
{
    json pairs = json::array();
    for (int i = 1; i <= p.d; ++i)
        for (int j = i + 1; j <= p.d; ++j)
            pairs.push_back({{"pair", {i, j}}, {"cycles", p.cycle_count(i, j)}});
    return {{"k", p.k}, {"pairs", pairs}};
}

json colours_json(const EdgeColouring& c)
{
    json a = json::array();
    for (Colour x : c.colours())
        a.push_back(int(x));
    return a;
}

std::string text_value(const json& v)
{
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_array() && std::all_of(v.begin(), v.end(), [](auto& x) { return x.is_primitive(); })) {
        std::string s;
        for (auto& x : v)
            s += (s.empty() ? "" : " ") + text_value(x);
        return s;
    }
    return v.dump();
}

void emit(const global_options& g, const json& report)
{
    std::string body;
    if (g.format == "json") {
        body = report.dump() + "\n";
    } else {
        for (auto& [key, value] : report.items())
            body += key + ": " + text_value(value) + "\n";
    }
    if (g.out.empty())
        std::cout << body;
    else
        write_file(g.out, body);
}

EnumerationOptions enum_options(const global_options& g)
{
    EnumerationOptions o;
    o.jobs = g.jobs;
    return o;
}

int status_exit(EnumerationStatus s)
{
    switch (s) {
    case EnumerationStatus::complete:
    case EnumerationStatus::stopped: return ok;
    case EnumerationStatus::no_colouring: return property_false;
    default: return failure;
    }
}

// ---------------------------------------------------------------------------

int run_colourings(const global_options& g, const std::string& file, std::size_t limit)
{
    auto doc = load_input(file);
    auto list = enumerate_factorisations(*doc.graph, enum_options(g), limit);
    json cols = json::array();
    for (auto& c : list.colourings)
        cols.push_back({{"k", perfect_pairs(c).k}, {"colours", colours_json(c)}});
    emit(g, {{"file", file}, {"status", to_string(list.status)}, {"count", list.colourings.size()}, {"colourings", cols}});
    return status_exit(list.status);
}

int run_spectrum(const global_options& g, const std::string& file)
{
    auto doc = load_input(file);
    auto rep = spectrum(*doc.graph, enum_options(g));
    json counts = json::object();
    for (auto& [k, n] : rep.counts)
        counts[std::to_string(k)] = n;
    json stored = json::array();
    bool stored_ok = true;
    std::map<std::string, int> expected(doc.expectations.begin(), doc.expectations.end());
    for (auto& [name, col] : doc.all_colourings()) {
        int k = perfect_pairs(col).k;
        json item{{"name", name}, {"k", k}};
        if (auto it = expected.find(name); it != expected.end()) {
            item["expected"] = it->second;
            stored_ok = stored_ok && it->second == k;
        }
        stored.push_back(item);
    }
    emit(g, {{"file", file},
             {"status", to_string(rep.status)},
             {"total", rep.total},
             {"spectrum", rep.spectrum()},
             {"counts", counts},
             {"stored", stored}});
    int code = status_exit(rep.status);
    return code == ok && !stored_ok ? property_false : code;
}

int run_kempe(const global_options& g, const std::string& file, std::size_t cap)
{
    auto doc = load_input(file);
    auto p = kempe_classes(*doc.graph, enum_options(g), cap);
    json rep{{"file", file}, {"status", p.status == KempeStatus::complete ? "complete"
                                        : p.status == KempeStatus::over_cap ? "over-cap"
                                        : p.status == KempeStatus::no_colouring ? "no-colouring"
                                                                                : "not-enumerable"}};
    if (p.status == KempeStatus::complete) {
        rep["colourings"] = p.colourings.size();
        rep["classes"] = p.class_count();
        rep["class_sizes"] = p.class_sizes;
    }
    emit(g, rep);
    switch (p.status) {
    case KempeStatus::complete: return ok;
    case KempeStatus::over_cap: return inconclusive;
    case KempeStatus::no_colouring: return property_false;
    default: return failure;
    }
}

// a file without a main colouring falls back to its first 1-factorisation
EdgeColouring pick_colouring(const CelDocument& doc, const std::string& name, const std::string& file)
{
    if (name == "main" && !doc.colouring) {
        auto list = enumerate_factorisations(*doc.graph, {}, 1);
        if (list.colourings.empty())
            throw error(file + ": no colouring stored and none exists");
        return list.colourings.front();
    }
    try {
        return doc.colouring_named(name);
    } catch (const error&) {
        throw error(file + ": no colouring named " + name);
    }
}

int run_marry(const global_options& g, const std::string& gf, Vertex x, const std::string& hf, Vertex y,
              const std::string& gcol, const std::string& hcol, const std::string& write)
{
    auto gd = load_input(gf), hd = load_input(hf);
    const RotationSystem* gr = gd.rotation ? &*gd.rotation : nullptr;
    const RotationSystem* hr = hd.rotation ? &*hd.rotation : nullptr;
    auto m = marriage(pick_colouring(gd, gcol, gf), x, pick_colouring(hd, hcol, hf), y, gr, hr);
    if (!write.empty()) {
        CelDocument out;
        out.graph = m.graph;
        out.colouring = m.colouring;
        out.rotation = m.rotation;
        write_file(write, write_cel(out));
    }
    bool agree = m.predicted.perfect == m.recounted.perfect && m.predicted.cycles == m.recounted.cycles;
    std::vector<int> perm(m.permutation.begin() + 1, m.permutation.end());
    emit(g, {{"order", m.graph->order()},
             {"embedded", m.rotation.has_value()},
             {"permutation", perm},
             {"predicted", profile_json(m.predicted)},
             {"recounted", profile_json(m.recounted)},
             {"agree", agree}});
    return agree ? ok : property_false;
}

int run_divorce(const global_options& g, const std::string& file, const std::string& write)
{
    auto doc = load_input(file);
    if (!doc.fragment)
        throw error(file + ": no fragment line");
    auto& f = *doc.fragment;
    Fragment fr{pick_colouring(doc, "main", file), f[0], f[1], f[2], f[3], doc.rotation};
    auto rep = suitability_check(fr);
    json conds = json::array();
    for (auto& c : rep.conditions)
        conds.push_back({{"condition", c.label},
                         {"colours", {int(c.first), int(c.second)}},
                         {"holds", c.holds},
                         {"witness", c.witness},
                         {"certificate", c.certificate}});
    json out{{"file", file},
             {"embedding", rep.embedding_verified ? "verified" : "embedding not verified"},
             {"suitable", rep.suitable()},
             {"conditions", conds}};
    if (!rep.suitable()) {
        emit(g, out);
        return property_false;
    }
    auto d = divorce(fr);
    if (!write.empty()) {
        CelDocument w;
        w.graph = d.graph;
        w.colouring = d.colouring;
        write_file(write, write_cel(w));
    }
    out["order"] = d.graph->order();
    out["quintic"] = d.graph->is_regular(5);
    out["profile"] = profile_json(d.profile);
    out["involution"] = d.involution;
    emit(g, out);
    return d.profile.all_perfect() ? ok : property_false;
}

int run_glue(const global_options& g, const std::string& file, const std::string& colouring,
             const std::string& triangle, std::size_t budget)
{
    auto doc = load_input(file);
    auto t = parse_list(triangle);
    if (t.size() != 3)
        throw error("a triangle needs three vertices");
    auto r = triangle_glue(pick_colouring(doc, colouring, file), {t[0], t[1], t[2]}, budget);
    emit(g, {{"order", r.graph->order()},
             {"triangle", r.v},
             {"outside", r.x},
             {"profile", profile_json(r.profile)},
             {"perfectly_hamiltonian", r.profile.all_perfect()}});
    return r.profile.all_perfect() ? ok : property_false;
}

int run_chain(const global_options& g, const std::string& seed, const std::string& edges, int k, std::size_t limit,
              bool check)
{
    auto doc = load_input(seed);
    const Graph& s = *doc.graph;
    auto comma = edges.find(',');
    if (comma == std::string::npos)
        throw error("--edges needs two edges e,e'");
    EdgeId e = parse_edge(s, edges.substr(0, comma)), ep = parse_edge(s, edges.substr(comma + 1));
    auto chain = charonian_chain(s, e, ep, k);
    std::size_t h = hamiltonian_pair_census(s, e, ep);
    std::set<std::vector<Colour>> distinct;
    std::size_t with_pair = 0;
    std::size_t built = chain_colourings(
        chain, s,
        [&](const EdgeColouring& c) {
            distinct.insert(c.canonical().colours());
            with_pair += perfect_pairs(c).k >= 1;
            return true;
        },
        limit);
    json out{{"order", chain.graph->order()},
             {"copies", k},
             {"h", h},
             {"built", built},
             {"distinct", distinct.size()},
             {"with_perfect_pair", with_pair}};
    int code = with_pair == built ? ok : property_false;
    if (check) {
        auto r = is_charonian(*chain.graph);
        out["charonian"] = to_string(r.verdict);
        if (r.verdict == Verdict::no)
            code = property_false;
    }
    emit(g, out);
    return code;
}

int run_blocks(const global_options& g, const std::string& seq, const std::string& write)
{
    auto b = block_chain(parse_block_sequence(seq));
    if (!write.empty()) {
        CelDocument w;
        w.graph = b.graph;
        w.colouring = b.colouring;
        write_file(write, write_cel(w));
    }
    auto p = perfect_pairs(b.colouring);
    emit(g, {{"sequence", seq},
             {"order", b.graph->order()},
             {"profile", profile_json(p)},
             {"perfectly_hamiltonian", p.all_perfect()}});
    return p.all_perfect() ? ok : property_false;
}

int run_substitute(const global_options& g, const std::string& hf, const std::string& factors, const std::string& gf,
                   Vertex v, bool connectivity)
{
    auto hd = load_input(hf), gd = load_input(gf);
    auto f = parse_list(factors);
    if (f.size() != 2)
        throw error("expected two colour classes f1,f2");
    EdgeColouring hc;
    if (hd.colouring) {
        hc = *hd.colouring;
    } else {
        auto c = three_edge_colour_cubic(*hd.graph);
        if (!c)
            throw error(hf + ": cubic host has no 3-edge-colouring (" + to_string(c.failure) + ")");
        hc = *c.colouring;
    }
    auto out = vertex_substitution(*hd.graph, hc.colour_class(static_cast<Colour>(f[0])),
                                   hc.colour_class(static_cast<Colour>(f[1])), *gd.graph, v);
    json rep{{"order", out->order()}, {"quintic", out->is_regular(5)}, {"connected", is_connected(*out)}};
    if (connectivity)
        rep["connectivity"] = vertex_connectivity(*out);
    emit(g, rep);
    return ok;
}

int run_charonian(const global_options& g, const std::string& file, bool strong, bool all, std::size_t budget)
{
    auto doc = load_input(file);
    auto r = (strong || all) ? is_strongly_charonian(*doc.graph, budget, all) : is_charonian(*doc.graph, budget);
    json out{{"file", file},
             {"mode", all ? "all-2-factors" : strong ? "strong" : "charonian"},
             {"verdict", to_string(r.verdict)},
             {"cycles_checked", r.cycles_checked},
             {"factors_checked", r.factors_checked}};
    if (r.counterexample) {
        out["counterexample"] = *r.counterexample;
        out["bridge"] = {doc.graph->edge(*r.bridge).u, doc.graph->edge(*r.bridge).v};
    }
    emit(g, out);
    switch (r.verdict) {
    case Verdict::yes: return ok;
    case Verdict::no: return property_false;
    default: return inconclusive;
    }
}

int run_stats(const global_options& g, const std::string& file)
{
    auto doc = load_input(file);
    const Graph& gr = *doc.graph;
    json out{{"file", file}, {"n", gr.order()}, {"m", gr.size()}, {"regularity", gr.regularity()}};
    out["connectivity"] = vertex_connectivity(gr);
    out["bridges"] = bridges(gr).size();
    try {
        out["essential_edge_connectivity"] = essential_edge_connectivity(gr);
    } catch (const error&) {
        out["essential_edge_connectivity"] = nullptr;
    }
    bool bounds = true;
    if (doc.rotation && gr.is_regular(5) && doc.rotation->planar) {
        auto e = euler_stats(gr, *doc.rotation);
        out["faces"] = e.faces;
        out["f3"] = e.f3;
        out["f3_bound"] = e.f3_bound;
        out["s"] = e.s;
        out["s_bound"] = e.s_bound;
        out["diamonds"] = e.diamonds;
        out["diamond_bound"] = e.diamond_bound;
        bounds = e.f3_bound && e.s_bound && e.diamond_bound;
    } else if (doc.rotation) {
        validate_rotation(gr, *doc.rotation);
        out["faces"] = face_vector(gr, *doc.rotation);
    }
    emit(g, out);
    return bounds ? ok : property_false;
}

int run_verify_corpus(const global_options& g, const std::string& dir)
{
    json files = json::array();
    bool all_ok = true;
    for (auto& path : corpus_files(dir)) {
        json item{{"file", path.filename().string()}};
        try {
            auto entry = load_corpus_entry(path);
            item["n"] = entry.doc.graph->order();
            item["m"] = entry.doc.graph->size();
            item["embedded"] = entry.doc.rotation.has_value();
            item["colourings"] = entry.doc.all_colourings().size();
            item["ok"] = true;
        } catch (const error& e) {
            item["ok"] = false;
            item["error"] = e.what();
            all_ok = false;
        }
        files.push_back(item);
    }
    emit(g, {{"directory", dir}, {"files", files}, {"ok", all_ok}});
    return all_ok ? ok : property_false;
}

int run_census(const global_options& g, const std::string& file, const std::string& property, std::size_t budget)
{
    CensusProperty p;
    if (property == "ph")
        p = CensusProperty::perfectly_hamiltonian;
    else if (property == "charonian")
        p = CensusProperty::charonian;
    else
        throw error("unknown property '" + property + "'");
    std::vector<Graph> graphs;
    for (auto& pg : read_planar_code(read_file(file)))
        graphs.push_back(std::move(pg.graph));
    auto rows = census(graphs, p, enum_options(g), budget);
    json out = json::array();
    bool any_inconclusive = false;
    for (auto& r : rows) {
        out.push_back({{"n", r.order}, {"graphs", r.graphs}, {"with_property", r.with_property},
                       {"inconclusive", r.inconclusive}});
        any_inconclusive = any_inconclusive || r.inconclusive;
    }
    emit(g, {{"file", file}, {"property", property}, {"rows", out}});
    return any_inconclusive ? inconclusive : ok;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Perfect pairs, 1-factorisations and hamiltonian structure of regular graphs"};
    app.require_subcommand(1);
    global_options g;
    app.add_option("--jobs", g.jobs, "worker threads for enumeration")->check(CLI::PositiveNumber);
    app.add_option("--format", g.format, "report format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--out", g.out, "write the report to a file");

    std::string file, file2, list, name1 = "main", name2 = "main", write, property;
    int v1 = 0, v2 = 0, k = 1;
    std::size_t limit = 0, cap = 10'000'000, budget = 0;
    bool strong = false, all = false, check = false, connectivity = false;
    int code = ok;

    auto* colourings = app.add_subcommand("colourings", "list all 1-factorisations up to colour permutation");
    colourings->add_option("file", file)->required();
    colourings->add_option("--limit", limit, "stop after N colourings");
    colourings->callback([&] { code = run_colourings(g, file, limit); });

    auto* spec = app.add_subcommand("spectrum", "perfect-pair counts over all 1-factorisations");
    spec->add_option("file", file)->required();
    spec->callback([&] { code = run_spectrum(g, file); });

    auto* kempe = app.add_subcommand("kempe", "edge-Kempe equivalence classes");
    kempe->add_option("file", file)->required();
    kempe->add_option("--cap", cap, "refuse graphs with more colourings than this");
    kempe->callback([&] { code = run_kempe(g, file, cap); });

    auto* marry = app.add_subcommand("marry", "marriage of two coloured graphs at x and y");
    marry->add_option("G", file)->required();
    marry->add_option("x", v1)->required();
    marry->add_option("H", file2)->required();
    marry->add_option("y", v2)->required();
    marry->add_option("--g-colouring", name1, "colouring of g (default main)");
    marry->add_option("--h-colouring", name2, "colouring of h (default main)");
    marry->add_option("--write", write, "write the result as CEL");
    marry->callback([&] { code = run_marry(g, file, v1, file2, v2, name1, name2, write); });

    auto* div = app.add_subcommand("divorce", "check a fragment and glue it to its recoloured copy");
    div->add_option("fragment", file)->required();
    div->add_option("--write", write, "write the result as CEL");
    div->callback([&] { code = run_divorce(g, file, write); });

    auto* glue = app.add_subcommand("glue", "join two copies of a graph across a deleted triangle");
    glue->add_option("G", file)->required();
    glue->add_option("colouring", name1)->required();
    glue->add_option("triangle", list, "three vertices a,b,c")->required();
    glue->add_option("--budget", limit, "colourings to try when the given one does not fit");
    glue->callback([&] { code = run_glue(g, file, name1, list, limit ? limit : 100000); });

    auto* chain = app.add_subcommand("chain", "chain k copies of a graph minus an edge");
    chain->add_option("--seed", file)->required();
    chain->add_option("--edges", list, "e,e' as edge ids or u-v pairs")->required();
    chain->add_option("-k", k, "number of copies")->required()->check(CLI::PositiveNumber);
    chain->add_option("--limit", limit, "build at most N colourings");
    chain->add_flag("--check-charonian", check, "sweep the result's hamiltonian cycles");
    chain->callback([&] { code = run_chain(g, file, list, k, limit, check); });

    auto* blocks = app.add_subcommand("blocks", "chain of A/B blocks closed by two caps");
    blocks->add_option("seq", list, "e.g. ABBA")->required();
    blocks->add_option("--write", write, "write the result as CEL");
    blocks->callback([&] { code = run_blocks(g, list, write); });

    auto* sub = app.add_subcommand("substitute", "replace each vertex of a cubic graph by a quintic piece");
    sub->add_option("H", file)->required();
    sub->add_option("factors", list, "two colour classes of h's 3-edge-colouring, e.g. 1,2")->required();
    sub->add_option("G", file2)->required();
    sub->add_option("v", v1)->required();
    sub->add_flag("--connectivity", connectivity, "also compute vertex connectivity");
    sub->callback([&] { code = run_substitute(g, file, list, file2, v1, connectivity); });

    auto* ch = app.add_subcommand("charonian", "hamiltonian cycle removal leaves no bridge");
    ch->add_option("file", file)->required();
    auto* st = ch->add_flag("--strong", strong, "also sweep {4, n-4} 2-factors");
    ch->add_flag("--all-2-factors", all, "sweep every 2-factor")->excludes(st);
    ch->add_option("--budget", budget, "cap on cycles and factors examined");
    ch->callback([&] { code = run_charonian(g, file, strong, all, budget); });

    auto* stats = app.add_subcommand("stats", "face statistics and connectivity");
    stats->add_option("file", file)->required();
    stats->callback([&] { code = run_stats(g, file); });

    auto* verify = app.add_subcommand("verify-corpus", "load and self-check every CEL file in a directory");
    verify->add_option("dir", file)->required();
    verify->callback([&] { code = run_verify_corpus(g, file); });

    auto* cen = app.add_subcommand("census", "count graphs with a property in a planar_code stream");
    cen->add_option("file", file)->required();
    cen->add_option("--property", property)->required()->check(CLI::IsMember({"ph", "charonian"}));
    cen->add_option("--budget", budget, "cap on hamiltonian cycles per graph");
    cen->callback([&] { code = run_census(g, file, property, budget); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return failure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return failure;
    }
    return code;
}
