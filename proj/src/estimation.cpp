#include "edsynth/estimation.hpp"

#include <algorithm>
#include <map>

namespace edsynth
{

StateSet unobservable_reach(const Automaton& a, const StateSet& states)
{
    std::vector<bool> seen(a.num_states(), false);
    StateSet stack;
    for (auto s : states)
        if (!seen.at(s)) {
            seen[s] = true;
            stack.push_back(s);
        }
    StateSet result;
    while (!stack.empty()) {
        auto s = stack.back();
        stack.pop_back();
        result.push_back(s);
        for (auto t : a.successors(s, kTau))
            if (!seen[t]) {
                seen[t] = true;
                stack.push_back(t);
            }
    }
    std::sort(result.begin(), result.end());
    return result;
}

namespace
{

std::string estimate_name(const Automaton& a, const StateSet& members)
{
    std::vector<std::string> names;
    for (auto s : members)
        names.push_back(a.state(s).name);
    std::sort(names.begin(), names.end());
    std::string out = "{";
    for (std::size_t i = 0; i < names.size(); ++i)
        out += (i ? "," : "") + names[i];
    return out + "}";
}

}  // namespace

Observer determinize(const Automaton& a)
{
    Observer obs;
    obs.automaton.set_name("det(" + a.name() + ")");
    for (const auto& ev : a.events())
        obs.automaton.add_event(ev.name, ev.controllable);
    StateSet start = unobservable_reach(a, a.initial_states());
    if (start.empty())
        return obs;

    std::map<StateSet, StateIndex> index;
    auto intern = [&](StateSet members, bool initial) {
        if (auto it = index.find(members); it != index.end())
            return it->second;
        StateInfo info;
        info.name = estimate_name(a, members);
        info.initial = initial;
        info.secret = true;
        for (auto s : members) {
            info.marked = info.marked || a.state(s).marked;
            info.secret = info.secret && a.state(s).secret;
        }
        StateIndex idx = obs.automaton.add_state(std::move(info));
        index.emplace(members, idx);
        obs.estimates.push_back(std::move(members));
        return idx;
    };

    intern(std::move(start), true);
    for (StateIndex x = 0; x < obs.estimates.size(); ++x) {
        for (EventIndex e = 0; e < a.num_events(); ++e) {
            StateSet next;
            for (auto s : obs.estimates[x])
                for (auto t : a.successors(s, e))
                    next.push_back(t);
            if (next.empty())
                continue;
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            StateIndex y = intern(unobservable_reach(a, next), false);
            obs.automaton.add_transition(x, e, y);
        }
    }
    return obs;
}

Observer desired_observer(const Observer& o)
{
    std::vector<bool> keep(o.automaton.num_states());
    for (StateIndex s = 0; s < keep.size(); ++s)
        keep[s] = !o.automaton.state(s).secret;
    Observer d;
    std::vector<StateIndex> origin;
    d.automaton = restrict_states(o.automaton, keep, &origin);
    d.automaton.set_name("detd(" + o.automaton.name() + ")");
    for (auto s : origin)
        d.estimates.push_back(o.estimates[s]);
    return d;
}

OpacityReport check_current_state_opacity(const Automaton& a)
{
    const Observer obs = determinize(a);
    const Automaton& det = obs.automaton;
    OpacityReport report;
    if (det.empty())
        return report;

    std::vector<EventIndex> order(det.num_events());
    for (EventIndex e = 0; e < order.size(); ++e)
        order[e] = e;
    std::sort(order.begin(), order.end(),
              [&](EventIndex x, EventIndex y) { return det.event(x).name < det.event(y).name; });

    std::vector<std::optional<std::pair<StateIndex, EventIndex>>> parent(det.num_states());
    std::vector<bool> seen(det.num_states(), false);
    std::vector<StateIndex> queue{det.initial_states().front()};
    seen[queue.front()] = true;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const StateIndex x = queue[i];
        if (det.state(x).secret) {
            Word word;
            for (StateIndex cur = x; parent[cur]; cur = parent[cur]->first)
                word.push_back(det.event(parent[cur]->second).name);
            std::reverse(word.begin(), word.end());
            report.opaque = false;
            report.witnesses.push_back({std::move(word), det.state(x).name});
        }
        for (auto e : order)
            if (auto y = det.successor(x, e); y && !seen[*y]) {
                seen[*y] = true;
                parent[*y] = std::make_pair(x, e);
                queue.push_back(*y);
            }
    }
    return report;
}

}  // namespace edsynth
