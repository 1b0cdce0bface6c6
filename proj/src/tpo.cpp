#include "edsynth/tpo.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace edsynth
{

std::string_view to_string(Player p)
{
    switch (p) {
    case Player::Y: return "Y";
    case Player::Z: return "Z";
    case Player::W: return "W";
    }
    return "?";
}

std::string_view to_string(Move m)
{
    switch (m) {
    case Move::yz: return "yz";
    case Move::zz: return "zz";
    case Move::zw1: return "zw1";
    case Move::zw2: return "zw2";
    case Move::wy1: return "wy1";
    case Move::wy2: return "wy2";
    }
    return "?";
}

Tpo::Tpo(Observer desired, Observer observer) : desired_(std::move(desired)), observer_(std::move(observer))
{
    for (const auto& ev : observer_.automaton.events())
        to_desired_.push_back(desired_.automaton.find_event(ev.name));
}

std::optional<StateIndex> Tpo::find(const TpoState& s) const
{
    if (auto it = index_.find(s); it != index_.end())
        return it->second;
    return std::nullopt;
}

StateIndex Tpo::add_state(const TpoState& s)
{
    if (auto found = find(s))
        return *found;
    const auto idx = static_cast<StateIndex>(states_.size());
    states_.push_back(s);
    edges_.emplace_back();
    index_.emplace(s, idx);
    return idx;
}

void Tpo::add_edge(StateIndex from, TpoEdge edge)
{
    edges_.at(from).push_back(edge);
}

std::size_t Tpo::num_edges() const
{
    std::size_t n = 0;
    for (const auto& e : edges_)
        n += e.size();
    return n;
}

std::string Tpo::state_name(StateIndex s) const
{
    const auto& st = states_.at(s);
    std::string name = "(";
    name += st.intruder ? desired_.automaton.state(*st.intruder).name : std::string("∅");
    name += ",";
    name += observer_.automaton.state(st.truth).name;
    name += ")";
    if (st.player != Player::Y) {
        const std::string e(observer_.automaton.event_name(st.event));
        name += "," + e;
        if (st.player == Player::W)
            name += st.erased ? "→ε" : "→" + e;
    }
    if (st.erasures >= 0)
        name += "#" + std::to_string(st.erasures);
    return name;
}

std::string Tpo::edge_label(const TpoEdge& e) const
{
    if (e.move == Move::zw1)
        return "ε";
    std::string name(observer_.automaton.event_name(e.label));
    if (e.move == Move::zw2)
        name += "→ε";
    return name;
}

Tpo build_largest_tpo(const Observer& desired, const Observer& observer)
{
    Tpo t(desired, observer);
    const Automaton& obs = t.observer().automaton;
    const Automaton& obsd = t.desired().automaton;
    if (obs.empty())
        return t;

    TpoState y0;
    y0.truth = obs.initial_states().front();
    if (!obsd.empty())
        y0.intruder = obsd.initial_states().front();
    t.add_state(y0);

    auto intruder_step = [&](const std::optional<StateIndex>& xd, EventIndex e) -> std::optional<StateIndex> {
        if (!xd)
            return std::nullopt;
        auto de = t.desired_event(e);
        if (!de)
            return std::nullopt;
        return obsd.successor(*xd, *de);
    };

    for (StateIndex s = 0; s < t.num_states(); ++s) {
        const TpoState cur = t.state(s);
        switch (cur.player) {
        case Player::Y:
            for (const auto& edge : obs.out(cur.truth)) {
                TpoState z = cur;
                z.player = Player::Z;
                z.event = edge.event;
                t.add_edge(s, {Move::yz, edge.event, t.add_state(z)});
            }
            break;
        case Player::Z: {
            for (EventIndex theta = 0; theta < obs.num_events(); ++theta)
                if (auto xd = intruder_step(cur.intruder, theta)) {
                    TpoState z = cur;
                    z.intruder = xd;
                    t.add_edge(s, {Move::zz, theta, t.add_state(z)});
                }
            const bool truth_moves = obs.successor(cur.truth, cur.event).has_value();
            if (truth_moves && intruder_step(cur.intruder, cur.event)) {
                TpoState w = cur;
                w.player = Player::W;
                t.add_edge(s, {Move::zw1, kTau, t.add_state(w)});
            }
            if (truth_moves) {
                TpoState w = cur;
                w.player = Player::W;
                w.erased = true;
                t.add_edge(s, {Move::zw2, cur.event, t.add_state(w)});
            }
            break;
        }
        case Player::W: {
            auto xf = obs.successor(cur.truth, cur.event);
            if (!xf)
                break;
            TpoState y;
            y.truth = *xf;
            if (cur.erased) {
                y.intruder = cur.intruder;
                t.add_edge(s, {Move::wy2, cur.event, t.add_state(y)});
            } else if (auto xd = intruder_step(cur.intruder, cur.event)) {
                y.intruder = xd;
                t.add_edge(s, {Move::wy1, cur.event, t.add_state(y)});
            }
            break;
        }
        }
    }
    return t;
}

// ---------------------------------------------------------------------------
// Runs

void validate_run(const Run& run)
{
    enum class Phase { rest, pending, passed, erased };
    Phase phase = Phase::rest;
    std::string pending;
    for (std::size_t i = 0; i < run.size(); ++i) {
        const auto& step = run[i];
        const std::string where = "run step " + std::to_string(i) + " (" + std::string(to_string(step.move)) + ")";
        switch (step.move) {
        case Move::yz:
            if (phase != Phase::rest)
                throw InputError(where + ": system event while a decision is pending");
            pending = step.event;
            phase = Phase::pending;
            break;
        case Move::zz:
            if (phase != Phase::pending)
                throw InputError(where + ": insertion outside a decision");
            break;
        case Move::zw1:
        case Move::zw2:
            if (phase != Phase::pending)
                throw InputError(where + ": decision without a pending event");
            if (step.move == Move::zw2 && step.event != pending)
                throw InputError(where + ": erasure of an event that is not pending");
            phase = step.move == Move::zw1 ? Phase::passed : Phase::erased;
            break;
        case Move::wy1:
        case Move::wy2:
            if (phase != (step.move == Move::wy1 ? Phase::passed : Phase::erased))
                throw InputError(where + ": delivery does not match the decision");
            if (step.event != pending)
                throw InputError(where + ": delivered event differs from the pending one");
            phase = Phase::rest;
            break;
        }
    }
}

Word run_string(const Run& run)
{
    validate_run(run);
    Word out;
    for (const auto& step : run)
        if (step.move == Move::zz || step.move == Move::wy1)
            out.push_back(step.event);
    return out;
}

Word edit_projection(const Run& run)
{
    validate_run(run);
    Word out;
    for (const auto& step : run)
        if (step.move == Move::yz)
            out.push_back(step.event);
    return out;
}

bool is_run_of(const Tpo& t, const Run& run)
{
    validate_run(run);
    if (t.empty())
        return run.empty();
    StateIndex cur = 0;
    for (const auto& step : run) {
        bool moved = false;
        for (const auto& edge : t.out(cur)) {
            if (edge.move != step.move)
                continue;
            if (edge.move != Move::zw1 && t.alphabet().event_name(edge.label) != step.event)
                continue;
            cur = edge.target;
            moved = true;
            break;
        }
        if (!moved)
            return false;
    }
    return true;
}

bool check_complete(const Tpo& t, const Automaton& g, std::size_t depth)
{
    for (StateIndex s = 0; s < t.num_states(); ++s)
        if (t.state(s).player != Player::Y && t.out(s).empty())
            return false;

    const Observer det = determinize(g);
    if (det.automaton.empty())
        return true;
    if (t.empty())
        return false;

    // Y states reachable from `ys` by runs whose edit projection is `e`.
    auto advance = [&](const std::set<StateIndex>& ys, std::string_view e) {
        std::set<StateIndex> zs;
        for (auto y : ys)
            for (const auto& edge : t.out(y))
                if (edge.move == Move::yz && t.alphabet().event_name(edge.label) == e)
                    zs.insert(edge.target);
        std::vector<StateIndex> stack(zs.begin(), zs.end());
        while (!stack.empty()) {
            auto z = stack.back();
            stack.pop_back();
            for (const auto& edge : t.out(z))
                if (edge.move == Move::zz && zs.insert(edge.target).second)
                    stack.push_back(edge.target);
        }
        std::set<StateIndex> next;
        for (auto z : zs)
            for (const auto& zw : t.out(z))
                if (zw.move == Move::zw1 || zw.move == Move::zw2)
                    for (const auto& wy : t.out(zw.target))
                        next.insert(wy.target);
        return next;
    };

    using Key = std::pair<StateIndex, std::set<StateIndex>>;
    std::set<Key> seen;
    std::vector<std::pair<Key, std::size_t>> queue{{{det.automaton.initial_states().front(), {0}}, 0}};
    seen.insert(queue.front().first);
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const auto [key, len] = queue[i];
        if (len == depth)
            continue;
        for (const auto& edge : det.automaton.out(key.first)) {
            auto next = advance(key.second, det.automaton.event_name(edge.event));
            if (next.empty())
                return false;
            Key k{edge.target, std::move(next)};
            if (seen.insert(k).second)
                queue.push_back({std::move(k), len + 1});
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Pruning

Tpo prune_to_aes(const Tpo& t, unsigned k)
{
    // Stage 1: annotate with the consecutive-erasure count; exceeding k is not admitted.
    Tpo annotated(t.desired(), t.observer());
    if (t.empty())
        return annotated;
    std::vector<StateIndex> origin;
    {
        TpoState s0 = t.state(0);
        s0.erasures = 0;
        annotated.add_state(s0);
        origin.push_back(0);
        for (StateIndex s = 0; s < annotated.num_states(); ++s) {
            const int count = annotated.state(s).erasures;
            for (const auto& edge : t.out(origin[s])) {
                int next = count;
                if (edge.move == Move::zw2)
                    next = count + 1;
                else if (edge.move == Move::zz || edge.move == Move::zw1)
                    next = 0;
                if (next > static_cast<int>(k))
                    continue;
                TpoState target = t.state(edge.target);
                target.erasures = next;
                const std::size_t before = annotated.num_states();
                StateIndex idx = annotated.add_state(target);
                if (annotated.num_states() > before)
                    origin.push_back(edge.target);
                annotated.add_edge(s, {edge.move, edge.label, idx});
            }
        }
    }

    // Stage 2: remove deadlocks until nothing changes.
    const std::size_t n = annotated.num_states();
    std::vector<bool> alive(n, true);
    bool changed = true;
    while (changed) {
        changed = false;
        // Z states that can still finish their decision through live insertions.
        std::vector<bool> decides(n, false);
        bool grew = true;
        while (grew) {
            grew = false;
            for (StateIndex s = 0; s < n; ++s) {
                if (!alive[s] || decides[s] || annotated.state(s).player != Player::Z)
                    continue;
                for (const auto& edge : annotated.out(s)) {
                    const bool ok = edge.move == Move::zz ? decides[edge.target] : alive[edge.target];
                    if (ok) {
                        decides[s] = true;
                        grew = true;
                        break;
                    }
                }
            }
        }
        for (StateIndex s = 0; s < n; ++s) {
            if (!alive[s])
                continue;
            bool remove = false;
            switch (annotated.state(s).player) {
            case Player::Z:
                remove = !decides[s];
                break;
            case Player::W:
                remove = std::none_of(annotated.out(s).begin(), annotated.out(s).end(),
                                      [&](const TpoEdge& e) { return alive[e.target]; });
                break;
            case Player::Y:
                remove = std::any_of(annotated.out(s).begin(), annotated.out(s).end(),
                                     [&](const TpoEdge& e) { return !alive[e.target]; });
                break;
            }
            if (remove) {
                alive[s] = false;
                changed = true;
            }
        }
    }

    // Stage 3: trim to the reachable live part.
    Tpo result(t.desired(), t.observer());
    if (!alive[0])
        return result;
    std::vector<long> remap(n, -1);
    std::vector<StateIndex> order{0};
    remap[0] = result.add_state(annotated.state(0));
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (const auto& edge : annotated.out(order[i])) {
            if (!alive[edge.target])
                continue;
            if (remap[edge.target] < 0) {
                remap[edge.target] = result.add_state(annotated.state(edge.target));
                order.push_back(edge.target);
            }
            result.add_edge(static_cast<StateIndex>(remap[order[i]]),
                            {edge.move, edge.label, static_cast<StateIndex>(remap[edge.target])});
        }
    }
    return result;
}

LabeledGraph to_labeled_graph(const Tpo& t)
{
    LabeledGraph g;
    for (StateIndex s = 0; s < t.num_states(); ++s)
        g.add_node(std::string(to_string(t.state(s).player)));
    for (StateIndex s = 0; s < t.num_states(); ++s)
        for (const auto& edge : t.out(s))
            g.add_edge(s, std::string(to_string(edge.move)) + ":" + t.edge_label(edge), edge.target);
    if (!t.empty())
        g.initial = 0;
    return g;
}

}  // namespace edsynth
