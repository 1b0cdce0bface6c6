#include "edsynth/abstraction.hpp"

#include <algorithm>
#include <map>

namespace edsynth
{

namespace
{

// Label used for the empty-string move in saturated graphs.
constexpr EventIndex kEpsilon = kTau;

using LabeledGraph = std::vector<std::vector<Edge>>;

// Signature refinement: a state's new block is determined by its current block
// and the set of (label, target block) pairs it can reach.
Partition refine(const LabeledGraph& graph, std::vector<std::size_t> labels)
{
    std::size_t count = Partition::from_labels(labels).size();
    while (true) {
        std::map<std::pair<std::size_t, std::vector<std::pair<EventIndex, std::size_t>>>, std::size_t> ids;
        std::vector<std::size_t> next(labels.size());
        for (std::size_t s = 0; s < graph.size(); ++s) {
            std::vector<std::pair<EventIndex, std::size_t>> sig;
            for (const auto& edge : graph[s])
                sig.emplace_back(edge.event, labels[edge.target]);
            std::sort(sig.begin(), sig.end());
            sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
            auto [it, fresh] = ids.emplace(std::make_pair(labels[s], std::move(sig)), ids.size());
            next[s] = it->second;
        }
        labels = std::move(next);
        if (ids.size() == count)
            break;
        count = ids.size();
    }
    return Partition::from_labels(labels);
}

LabeledGraph strong_graph(const Automaton& a)
{
    LabeledGraph g(a.num_states());
    for (StateIndex s = 0; s < a.num_states(); ++s)
        g[s].assign(a.out(s).begin(), a.out(s).end());
    return g;
}

std::vector<std::size_t> secret_split(const Automaton& a)
{
    std::vector<std::size_t> labels(a.num_states());
    for (StateIndex s = 0; s < a.num_states(); ++s)
        labels[s] = a.state(s).secret ? 1 : 0;
    return labels;
}

}  // namespace

Partition opaque_observation_equivalence_partition(const Automaton& a)
{
    const std::size_t n = a.num_states();
    std::vector<StateSet> closure(n);
    for (StateIndex s = 0; s < n; ++s)
        closure[s] = unobservable_reach(a, {s});

    LabeledGraph saturated(n);
    for (StateIndex s = 0; s < n; ++s) {
        for (auto t : closure[s])
            saturated[s].push_back({kEpsilon, t});
        for (EventIndex e = 0; e < a.num_events(); ++e) {
            StateSet mid;
            for (auto t : closure[s])
                for (auto u : a.successors(t, e))
                    mid.push_back(u);
            std::sort(mid.begin(), mid.end());
            mid.erase(std::unique(mid.begin(), mid.end()), mid.end());
            for (auto u : unobservable_reach(a, mid))
                saturated[s].push_back({e, u});
        }
    }
    return refine(saturated, secret_split(a));
}

Partition bisimulation_partition(const Automaton& a)
{
    return refine(strong_graph(a), std::vector<std::size_t>(a.num_states(), 0));
}

Partition opaque_bisimulation_partition(const Observer& o)
{
    return refine(strong_graph(o.automaton), secret_split(o.automaton));
}

Observer quotient_observer(const Observer& o, const Partition& p)
{
    Observer q;
    q.automaton = quotient(o.automaton, p);
    for (const auto& block : p.blocks) {
        StateSet members;
        for (auto s : block)
            members.insert(members.end(), o.estimates[s].begin(), o.estimates[s].end());
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        q.estimates.push_back(std::move(members));
    }
    return q;
}

AbstractionBundle abstract_component(const Automaton& g)
{
    AbstractionBundle bundle;
    bundle.abstracted = trim_reachable(quotient(g, opaque_observation_equivalence_partition(g)));
    const Observer det = determinize(bundle.abstracted);
    bundle.h_ob = quotient_observer(det, opaque_bisimulation_partition(det));
    bundle.h_b = quotient_observer(det, bisimulation_partition(det.automaton));
    bundle.h_obd = desired_observer(bundle.h_ob);
    return bundle;
}

}  // namespace edsynth
