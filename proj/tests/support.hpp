#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "oracles.hpp"
#include "pfact/graph.hpp"
#include "pfact/io.hpp"

namespace test_support {

inline std::filesystem::path corpus(const std::string& name) { return std::filesystem::path(PFACT_CORPUS_DIR) / name; }
inline std::filesystem::path data(const std::string& name) { return std::filesystem::path(PFACT_DATA_DIR) / name; }

inline pfact::CelDocument load(const std::string& name) { return pfact::load_cel(corpus(name + ".cel")); }

inline pfact::Graph to_graph(const oracle::small_graph& g) { return pfact::Graph(g.n, g.edges); }

inline oracle::small_graph to_small(const pfact::Graph& g) { return oracle::make(g.order(), g.edge_pairs()); }

}  // namespace test_support
