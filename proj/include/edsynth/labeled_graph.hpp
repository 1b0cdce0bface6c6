#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace edsynth
{

/// Rooted graph with string-labelled edges and a tag per node; the common
/// shape used to compare structures that live in different modules.
struct LabeledGraph
{
    std::vector<std::string> tags;
    std::vector<std::vector<std::pair<std::string, std::size_t>>> out;
    std::optional<std::size_t> initial;

    std::size_t add_node(std::string tag);
    void add_edge(std::size_t from, std::string label, std::size_t to);
};

/// Canonical breadth-first comparison of the reachable parts. Both graphs must
/// be label-deterministic; throws std::invalid_argument otherwise.
bool graphs_isomorphic(const LabeledGraph& a, const LabeledGraph& b);

/// Strong bisimilarity of the two roots, respecting node tags.
bool graphs_bisimilar(const LabeledGraph& a, const LabeledGraph& b);

}  // namespace edsynth
