#include "edsynth/labeled_graph.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace edsynth
{

std::size_t LabeledGraph::add_node(std::string tag)
{
    tags.push_back(std::move(tag));
    out.emplace_back();
    return tags.size() - 1;
}

void LabeledGraph::add_edge(std::size_t from, std::string label, std::size_t to)
{
    out.at(from).emplace_back(std::move(label), to);
}

namespace
{

struct Canonical
{
    std::vector<std::string> tags;
    std::vector<std::vector<std::pair<std::string, std::size_t>>> rows;

    bool operator==(const Canonical&) const = default;
};

Canonical canonical(const LabeledGraph& g)
{
    Canonical c;
    if (!g.initial)
        return c;
    std::vector<long> number(g.tags.size(), -1);
    std::vector<std::size_t> visit{*g.initial};
    number[*g.initial] = 0;
    for (std::size_t i = 0; i < visit.size(); ++i) {
        auto edges = g.out[visit[i]];
        std::sort(edges.begin(), edges.end());
        for (std::size_t j = 1; j < edges.size(); ++j)
            if (edges[j].first == edges[j - 1].first)
                throw std::invalid_argument("graph is not label-deterministic at '" + g.tags[visit[i]] + "'");
        std::vector<std::pair<std::string, std::size_t>> row;
        for (const auto& [label, target] : edges) {
            if (number[target] < 0) {
                number[target] = static_cast<long>(visit.size());
                visit.push_back(target);
            }
            row.emplace_back(label, static_cast<std::size_t>(number[target]));
        }
        c.tags.push_back(g.tags[visit[i]]);
        c.rows.push_back(std::move(row));
    }
    return c;
}

}  // namespace

bool graphs_isomorphic(const LabeledGraph& a, const LabeledGraph& b)
{
    return canonical(a) == canonical(b);
}

bool graphs_bisimilar(const LabeledGraph& a, const LabeledGraph& b)
{
    if (!a.initial || !b.initial)
        return !a.initial && !b.initial;

    // Disjoint union with interned labels.
    const std::size_t offset = a.tags.size();
    const std::size_t n = offset + b.tags.size();
    std::map<std::string, std::size_t> label_ids;
    std::map<std::string, std::size_t> tag_ids;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out(n);
    std::vector<std::size_t> block(n);
    auto load = [&](const LabeledGraph& g, std::size_t base) {
        for (std::size_t s = 0; s < g.tags.size(); ++s) {
            block[base + s] = tag_ids.emplace(g.tags[s], tag_ids.size()).first->second;
            for (const auto& [label, target] : g.out[s])
                out[base + s].emplace_back(label_ids.emplace(label, label_ids.size()).first->second, base + target);
        }
    };
    load(a, 0);
    load(b, offset);

    std::size_t count = tag_ids.size();
    while (true) {
        std::map<std::pair<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>>, std::size_t> ids;
        std::vector<std::size_t> next(n);
        for (std::size_t s = 0; s < n; ++s) {
            std::vector<std::pair<std::size_t, std::size_t>> sig;
            for (const auto& [label, target] : out[s])
                sig.emplace_back(label, block[target]);
            std::sort(sig.begin(), sig.end());
            sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
            next[s] = ids.emplace(std::make_pair(block[s], std::move(sig)), ids.size()).first->second;
        }
        block = std::move(next);
        if (ids.size() == count)
            break;
        count = ids.size();
    }
    return block[*a.initial] == block[offset + *b.initial];
}

}  // namespace edsynth
