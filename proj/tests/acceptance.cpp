// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "pfact/analysis.hpp"
#include "pfact/constructions.hpp"
#include "pfact/factorisation.hpp"
#include "pfact/kempe.hpp"
#include "support.hpp"

using namespace pfact;
using test_support::load;
using test_support::to_small;

namespace {

// runtime budgets in seconds; zero means no explicit budget
constexpr double platonic_budget = 300;
constexpr double twenty_vertex_budget = 3600;
constexpr double charonian_budget = 1800;
constexpr double blocks_budget = 1800;

constexpr std::size_t marriage_samples = 20;
constexpr std::size_t parity_cuts = 1000;

struct outcome {
    bool pass = true;
    std::ostringstream detail;

    void check(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail << "[failed: " << what << "] ";
        }
    }
};

int failures = 0;

void criterion(int id, const std::string& title, double budget, const std::function<void(outcome&)>& body)
{
    outcome o;
    auto start = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail << "[exception: " << e.what() << "] ";
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (budget > 0 && secs > budget)
        o.check(false, "runtime over budget");
    failures += !o.pass;
    std::ostringstream t;
    t.precision(1);
    t << std::fixed << secs;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (id < 10 ? " " : "") << id << "  " << title << "  ("
              << o.detail.str() << t.str() << "s)" << std::endl;
}

std::string join(const std::vector<int>& v)
{
    std::ostringstream s;
    s << "{";
    for (std::size_t i = 0; i < v.size(); ++i)
        s << (i ? "," : "") << v[i];
    s << "}";
    return s.str();
}

std::vector<int> range(int lo, int hi)
{
    std::vector<int> out;
    for (int k = lo; k <= hi; ++k)
        out.push_back(k);
    return out;
}

std::vector<Graph> planar_code_file(const std::string& name)
{
    std::vector<Graph> out;
    for (auto& pg : read_planar_code(read_file(test_support::data(name))))
        out.push_back(std::move(pg.graph));
    return out;
}

int oracle_k(const EdgeColouring& col)
{
    std::vector<int> c(col.colours().begin(), col.colours().end());
    return oracle::perfect_pairs(to_small(col.graph()), c, col.colour_count());
}

std::vector<CelDocument> corpus_docs()
{
    std::vector<CelDocument> out;
    for (auto& path : corpus_files(PFACT_CORPUS_DIR))
        out.push_back(load_corpus_entry(path).doc);
    return out;
}

void platonic(outcome& o)
{
    struct expectation {
        const char* name;
        std::size_t colourings;  // 0 when not pinned
        std::vector<int> spectrum;
        int classes;
    };
    std::vector<expectation> rows{{"tetrahedron", 1, {3}, 1},
                                  {"cube", 4, {0, 2}, 1},
                                  {"octahedron", 2, {6}, 2},
                                  {"dodecahedron", 10, {3}, 10},
                                  {"icosahedron", 0, {0, 2, 3, 4, 5, 6, 7, 8}, 2}};
    for (auto& row : rows) {
        auto doc = load(row.name);
        const Graph& g = *doc.graph;
        auto sp = spectrum(g);
        auto kc = kempe_classes(g);
        o.check(sp.status == EnumerationStatus::complete, std::string(row.name) + " enumeration incomplete");
        if (row.colourings)
            o.check(sp.total == row.colourings, std::string(row.name) + " colouring count");
        o.check(sp.spectrum() == row.spectrum, std::string(row.name) + " spectrum");
        o.check(kc.status == KempeStatus::complete && kc.class_count() == row.classes,
                std::string(row.name) + " kempe classes");
        o.detail << row.name << ": colourings " << sp.total << ", spectrum " << join(sp.spectrum()) << ", classes "
                 << kc.class_count() << "; ";
    }
}

void complete_six(outcome& o)
{
    Graph k6 = complete_graph(6);
    auto list = enumerate_factorisations(k6);
    auto brute = oracle::colourings_up_to_permutation(to_small(k6), 5);
    std::set<std::vector<int>> mine;
    for (auto& c : list.colourings) {
        mine.insert(oracle::first_occurrence(std::vector<int>(c.colours().begin(), c.colours().end())));
        o.check(perfect_pairs(c).k == 10 && oracle_k(c) == 10, "a colouring with k != 10");
    }
    o.check(list.colourings.size() == 6, "colouring count");
    o.check(mine == brute, "enumeration differs from brute force");
    int classes = kempe_classes(k6).class_count();
    o.check(classes == 6, "kempe classes");
    o.detail << list.colourings.size() << " colourings (brute force " << brute.size() << "), all k=10, " << classes
             << " classes; ";
}

void twenty_vertex(outcome& o)
{
    auto doc = load("quintic20");
    int verified = 0;
    std::map<std::string, int> expected(doc.expectations.begin(), doc.expectations.end());
    for (auto& [name, col] : doc.all_colourings()) {
        auto it = expected.find(name);
        bool ok = it != expected.end() && perfect_pairs(col).k == it->second && oracle_k(col) == it->second;
        o.check(ok, "stored colouring " + name);
        verified += ok;
    }
    o.check(verified == 11, "expected 11 stored colourings");
    EnumerationOptions opt;
    opt.jobs = std::max(1u, std::thread::hardware_concurrency());
    auto sp = spectrum(*doc.graph, opt);
    o.check(sp.status == EnumerationStatus::complete, "enumeration incomplete");
    o.check(sp.spectrum() == range(0, 10), "spectrum");
    o.detail << verified << "/11 stored colourings re-verify; spectrum " << join(sp.spectrum()) << " over "
             << sp.total << " 1-factorisations; ";
}

void plantri_census(outcome& o)
{
    for (int n : {12, 14, 16}) {
        auto gs = planar_code_file("quintic_n" + std::to_string(n) + ".pc");
        std::size_t four_connected = 0, ph = 0;
        for (auto& g : gs) {
            if (vertex_connectivity(g) < 4)
                continue;
            ++four_connected;
            ph += is_perfectly_hamiltonian(g).perfectly_hamiltonian;
        }
        o.check(ph == 0, "a perfectly hamiltonian graph on " + std::to_string(n) + " vertices");
        o.detail << "n=" << n << ": " << ph << "/" << four_connected << "; ";
    }
    auto gs = planar_code_file("quintic_n20.pc");
    std::size_t ph = 0;
    for (auto& g : gs) {
        auto r = is_perfectly_hamiltonian(g);
        o.check(r.status == EnumerationStatus::complete || r.status == EnumerationStatus::stopped, "n=20 status");
        if (r.perfectly_hamiltonian) {
            ++ph;
            o.check(is_isomorphic(g, *load("quintic20").graph).isomorphic, "n=20 witness is not the corpus graph");
        }
    }
    o.check(gs.size() == 6 && ph == 1, "n=20 row");
    o.detail << "n=20: " << ph << "/" << gs.size() << " (plantri data shipped under tests/data); ";
}

void marriages(outcome& o)
{
    std::vector<EdgeColouring> perfect, any;
    std::vector<const RotationSystem*> perfect_rot, any_rot;
    auto docs = corpus_docs();
    for (auto& doc : docs) {
        if (doc.fragment || !doc.graph->is_regular(5))
            continue;
        const RotationSystem* rot = doc.rotation ? &*doc.rotation : nullptr;
        for (auto& [name, col] : doc.all_colourings()) {
            any.push_back(col);
            any_rot.push_back(rot);
            if (perfect_pairs(col).all_perfect()) {
                perfect.push_back(col);
                perfect_rot.push_back(rot);
            }
        }
    }
    o.check(!perfect.empty() && !any.empty(), "no corpus colourings");
    std::mt19937_64 rng(5);
    std::size_t agree = 0;
    for (std::size_t t = 0; t < marriage_samples; ++t) {
        std::size_t gi = rng() % perfect.size(), hi = rng() % any.size();
        const auto& g = perfect[gi];
        const auto& h = any[hi];
        Vertex x = static_cast<Vertex>(rng() % g.graph().order());
        Vertex y = static_cast<Vertex>(rng() % h.graph().order());
        auto m = marriage(g, x, h, y, perfect_rot[gi], any_rot[hi]);
        int kh = perfect_pairs(h).k;
        bool ok = m.recounted.k == kh && oracle_k(m.colouring) == kh && m.colouring.is_one_factorisation();
        agree += ok;
    }
    o.check(agree == marriage_samples, "recounted k differs from k of the second graph");
    o.detail << agree << "/" << marriage_samples << " sampled marriages keep k of the second graph; ";
}

void divorce_fragment(outcome& o)
{
    auto doc = load("fragment15");
    auto& f = doc.fragment.value();
    Fragment fr{doc.colouring.value(), f[0], f[1], f[2], f[3], doc.rotation};
    auto rep = suitability_check(fr);
    int holding = 0;
    for (auto& c : rep.conditions)
        holding += c.holds;
    o.check(rep.conditions.size() == 10 && holding == 10, "suitability conditions");
    auto d = divorce(fr);
    int n = doc.graph->order();
    o.check(d.graph->is_regular(5), "output not quintic");
    o.check(d.graph->order() == 2 * n - 4, "output order");
    o.check(d.profile.all_perfect() && oracle_k(d.colouring) == 10, "not all pairs hamiltonian");
    o.detail << holding << "/10 conditions hold" << (rep.embedding_verified ? " (embedding verified)" : "")
             << "; divorce has order " << d.graph->order() << " = 2*" << n << "-4, k=" << d.profile.k << "; ";
}

void charonian(outcome& o)
{
    auto doc = load("icosahedron");
    const Graph& g = *doc.graph;
    auto strong = is_strongly_charonian(g);
    o.check(strong.verdict == Verdict::yes, "icosahedron not strongly charonian");
    auto all = is_strongly_charonian(g, 0, true);
    o.check(all.verdict == Verdict::yes, "a 2-factor leaves a bridge");
    EdgeId e = 0, ep = g.incident(g.edge(0).v)[1];
    std::size_t h = hamiltonian_pair_census(g, e, ep);
    auto chain = charonian_chain(g, e, ep, 2);
    auto chain_verdict = is_charonian(*chain.graph);
    o.check(chain_verdict.verdict == Verdict::yes, "two-copy chain not charonian");
    std::set<std::vector<Colour>> distinct;
    std::size_t bad = 0;
    chain_colourings(chain, g, [&](const EdgeColouring& col) {
        if (col.is_one_factorisation() && perfect_pairs(col).k >= 1)
            distinct.insert(col.canonical().colours());
        else
            ++bad;
        return true;
    });
    o.check(bad == 0, "a chain colouring failed verification");
    o.check(h > 0 && distinct.size() >= h * h, "fewer than h^2 colourings");
    o.detail << "strong sweep " << strong.cycles_checked << " cycles + " << strong.factors_checked
             << " {4,n-4} factors, all-2-factor sweep " << all.factors_checked << " factors; chain order "
             << chain.graph->order() << " charonian over " << chain_verdict.cycles_checked << " cycles, "
             << distinct.size() << " distinct colourings with k>=1 vs h^2=" << h * h << "; ";
}

void kempe_invariants(outcome& o)
{
    std::size_t colourings = 0, switches = 0, hamiltonian = 0, singletons = 0;
    for (auto& doc : corpus_docs()) {
        if (doc.fragment)
            continue;
        for (auto& [name, col] : doc.all_colourings()) {
            ++colourings;
            int d = col.colour_count(), n = col.graph().order();
            auto profile = perfect_pairs(col);
            auto canon = col.canonical();
            bool isolated = true;
            for (Colour i = 1; i <= d; ++i)
                for (Colour j = i + 1; j <= d; ++j)
                    for (auto& cyc : bichromatic_components(col, i, j)) {
                        auto once = kempe_switch(col, cyc);
                        ++switches;
                        o.check(once.is_proper() && kempe_switch(once, cyc) == col, "involution");
                        if (static_cast<int>(cyc.size()) == n) {
                            ++hamiltonian;
                            o.check(perfect_pairs(once).k == profile.k, "hamiltonian switch changed k");
                        }
                        isolated = isolated && once.canonical() == canon;
                    }
            if (profile.all_perfect()) {
                o.check(isolated, "all-perfect colouring " + name + " is not a singleton class");
                ++singletons;
            }
        }
    }
    o.detail << colourings << " colourings, " << switches << " switches (" << hamiltonian
             << " along hamiltonian cycles), " << singletons << " all-perfect colourings isolated; ";
}

std::size_t chain_classes(int k)
{
    std::vector<std::shared_ptr<const Graph>> reps;
    for (int mask = 0; mask < (1 << k); ++mask) {
        std::string s;
        for (int i = 0; i < k; ++i)
            s += mask >> i & 1 ? 'B' : 'A';
        auto g = block_chain(parse_block_sequence(s)).graph;
        bool fresh = true;
        for (auto& r : reps)
            fresh = fresh && !is_isomorphic(*r, *g).isomorphic;
        if (fresh)
            reps.push_back(g);
    }
    return reps.size();
}

// pendant paths of different lengths on the two caps; the marked graphs are
// isomorphic iff some automorphism exchanges the caps
bool swaps_caps(const Graph& closure)
{
    int n = closure.order();
    auto marked = [&](Vertex one, Vertex two) {
        auto e = closure.edge_pairs();
        e.emplace_back(one, n);
        e.emplace_back(two, n + 1);
        e.emplace_back(n + 1, n + 2);
        return Graph(n + 3, e);
    };
    return is_isomorphic(marked(0, n - 1), marked(n - 1, 0)).isomorphic;
}

void orders_and_blocks(outcome& o)
{
    int verified = 0;
    for (int n = 22; n <= 36; n += 2) {
        auto doc = load("order" + std::to_string(n));
        bool ok = doc.graph->order() == n && doc.graph->is_regular(5) && doc.colouring &&
                  doc.colouring->is_one_factorisation() && perfect_pairs(*doc.colouring).all_perfect() &&
                  oracle_k(*doc.colouring) == 10;
        o.check(ok, "order" + std::to_string(n));
        verified += ok;
    }
    o.detail << verified << "/8 order graphs perfectly hamiltonian; ";

    auto a22 = load("block_a22"), b22 = load("block_b22");
    o.check(!is_isomorphic(*a22.graph, *b22.graph).isomorphic, "A and B closures isomorphic");
    auto a = block_chain({Block::A}), b = block_chain({Block::B});
    o.check(is_isomorphic(*a.graph, *a22.graph).isomorphic, "chain [A] vs closure");
    o.check(is_isomorphic(*b.graph, *b22.graph).isomorphic, "chain [B] vs closure");
    int ea = essential_edge_connectivity(*a.graph), eb = essential_edge_connectivity(*b.graph);
    o.check(ea == 8 && eb == 8, "essential edge-connectivity");
    o.detail << "A!~B, single-block chains match the closures, essential edge-connectivity " << ea << "/" << eb
             << "; ";

    std::vector<std::shared_ptr<const Graph>> reps;
    bool all_ph = true;
    for (auto s : {"AA", "AB", "BA", "BB"}) {
        auto c = block_chain(parse_block_sequence(s));
        all_ph = all_ph && perfect_pairs(c.colouring).all_perfect() && oracle_k(c.colouring) == 10;
        bool fresh = true;
        for (auto& r : reps)
            fresh = fresh && !is_isomorphic(*r, *c.graph).isomorphic;
        if (fresh)
            reps.push_back(c.graph);
    }
    o.check(all_ph, "a length-2 chain is not perfectly hamiltonian");
    o.check(reps.size() == 3, "length-2 chains give " + std::to_string(reps.size()) + " classes, expected 3");
    o.detail << "length-2 chains: " << reps.size() << " isomorphism classes, all perfectly hamiltonian; ";

    // diagnostics for the class count: length 3, and whether a block can be turned around
    o.detail << "length-3 chains: " << chain_classes(3) << " classes; cap-swapping automorphism of the closures: A "
             << (swaps_caps(*a.graph) ? "yes" : "no") << ", B " << (swaps_caps(*b.graph) ? "yes" : "no") << "; ";
}

void euler_diamond(outcome& o)
{
    int checked = 0;
    for (auto& doc : corpus_docs()) {
        if (!doc.rotation || doc.fragment || !doc.graph->is_regular(5))
            continue;
        auto e = euler_stats(*doc.graph, *doc.rotation);
        o.check(e.f3_bound && e.s_bound && e.diamond_bound, "bound on a " + std::to_string(e.n) + "-vertex graph");
        ++checked;
    }
    auto ico = load("icosahedron");
    auto e = euler_stats(*ico.graph, *ico.rotation);
    o.check(2 * e.diamonds == static_cast<std::size_t>(e.s) && e.diamonds == 30, "icosahedron not tight");
    o.detail << checked << " embedded quintic graphs satisfy all three bounds; icosahedron diamonds " << e.diamonds
             << " = s/2 = " << e.s / 2 << "; ";
}

void bounded(outcome& o)
{
    auto ico = load("icosahedron");
    auto r = bounded_factorisation(*ico.graph, *ico.rotation);
    o.check(r.colouring.is_one_factorisation(), "not a 1-factorisation");
    o.check(r.profile.k <= 9 && oracle_k(r.colouring) == r.profile.k, "k above 9");
    o.detail << "k=" << r.profile.k << " (recounted independently); ";
}

void parity(outcome& o)
{
    std::size_t colourings = 0, cuts = 0, violations = 0;
    std::mt19937_64 rng(12);
    for (auto& doc : corpus_docs()) {
        if (doc.fragment)
            continue;
        for (auto& [name, col] : doc.all_colourings()) {
            ++colourings;
            const Graph& g = col.graph();
            std::bernoulli_distribution coin(0.5);
            for (std::size_t t = 0; t < parity_cuts;) {
                std::vector<Vertex> side;
                for (Vertex v = 0; v < g.order(); ++v)
                    if (coin(rng))
                        side.push_back(v);
                if (side.empty() || static_cast<int>(side.size()) == g.order())
                    continue;
                violations += parity_check(col, edge_cut(g, side)).violations.size();
                ++cuts;
                ++t;
            }
        }
    }
    o.check(violations == 0, "parity violations");
    o.detail << cuts << " random cuts over " << colourings << " colourings, " << violations << " violations; ";

    std::size_t graphs = 0, exact = 0, seven = 0;
    for (auto& doc : corpus_docs()) {
        if (doc.fragment || !doc.colouring || !doc.graph->is_regular(5) ||
            !perfect_pairs(*doc.colouring).all_perfect())
            continue;
        ++graphs;
        auto r = verify_ph_connectivity(*doc.colouring, parity_cuts, 1, doc.rotation ? &*doc.rotation : nullptr);
        o.check(r.passed(), "connectivity structure");
        exact += r.exact_cuts;
        seven += r.seven_cuts;
        if (auto it = r.profiles.find(7); it != r.profiles.end())
            for (auto& p : it->second)
                o.check(p == std::vector<int>{1, 1, 1, 1, 3}, "7-cut profile");
    }
    o.detail << graphs << " perfectly hamiltonian quintic graphs, " << exact << " bonds of size <= 7 enumerated";
    if (seven == 0)
        o.detail << ", no 7-edge cuts exist (exhaustive via the dual) so the (1,1,1,1,3) clause is vacuous; ";
    else
        o.detail << ", " << seven << " 7-edge cuts all with profile (1,1,1,1,3); ";
}

void not_at_desk_scale(outcome& o)
{
    auto grin = load("grinberg46");
    const Graph& h = *grin.graph;
    std::size_t cycles = count_hamiltonian_cycles(h);
    o.check(cycles == 0, "grinberg graph has a hamiltonian cycle");
    auto c3 = three_edge_colour_cubic(h);
    o.check(c3.colouring.has_value(), "no 3-edge-colouring");
    auto ico = load("icosahedron");
    auto sub = vertex_substitution(h, c3.colouring->colour_class(1), c3.colouring->colour_class(2), *ico.graph, 0);
    int kappa = vertex_connectivity(*sub);
    o.check(sub->is_regular(5) && is_connected(*sub), "substitution not quintic and connected");
    o.check(kappa == 5, "substitution not 5-connected");
    o.detail << "stated out of reach: the zero-perfect-pair claim at 484 vertices, census rows beyond the "
                "shipped orders, the charonian census on 24/28 vertices; substitute: 46-vertex non-hamiltonian "
                "cubic host (" << cycles << " hamiltonian cycles), H(G) has " << sub->order()
             << " vertices, quintic, connected, vertex connectivity " << kappa << "; ";
}

}  // namespace

int main()
{
    criterion(1, "platonic suite", platonic_budget, platonic);
    criterion(2, "complete graph on six vertices", 0, complete_six);
    criterion(3, "twenty-vertex spectrum 0..10", twenty_vertex_budget, twenty_vertex);
    criterion(4, "plantri census of quintic polyhedra", 0, plantri_census);
    criterion(5, "marriage keeps k", 0, marriages);
    criterion(6, "divorce of the 15-vertex fragment", 0, divorce_fragment);
    criterion(7, "charonian icosahedron and chains", charonian_budget, charonian);
    criterion(8, "kempe invariants on the corpus", 0, kempe_invariants);
    criterion(9, "order graphs and block chains", blocks_budget, orders_and_blocks);
    criterion(10, "euler and diamond bounds", 0, euler_diamond);
    criterion(11, "bounded factorisation of the icosahedron", 0, bounded);
    criterion(12, "parity of perfect pairs across cuts", 0, parity);
    criterion(13, "desk-scale substitutes", 0, not_at_desk_scale);
    std::cout << (failures ? std::to_string(failures) + " criterion(s) failed" : "all criteria passed") << std::endl;
    return failures ? 1 : 0;
}
