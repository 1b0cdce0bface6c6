#include "edsynth/runtime.hpp"

#include <algorithm>
#include <map>

namespace edsynth
{

Policy Policy::parse(std::string_view name, std::uint64_t seed)
{
    Policy p;
    p.seed = seed;
    if (name == "pass-through-preferred")
        p.kind = Kind::pass_through_preferred;
    else if (name == "first-lexicographic")
        p.kind = Kind::first_lexicographic;
    else if (name == "seeded-random")
        p.kind = Kind::seeded_random;
    else
        throw InputError("unknown policy '" + std::string(name) + "'");
    return p;
}

Session::Session(const ModularEditStructure& structure, Policy policy)
    : structure_(&structure), policy_(policy), rng_(policy.seed)
{
    if (structure.supervisor.empty())
        throw UnenforceableError("no edit function exists");
    current_ = structure.supervisor.initial_states().front();
    if (policy_.insertion_budget == 0) {
        std::size_t deciding = 0;
        const Automaton& sup = structure.supervisor;
        for (StateIndex s = 0; s < sup.num_states(); ++s)
            if (std::any_of(sup.out(s).begin(), sup.out(s).end(),
                            [&](const Edge& e) { return e.event != kTau && sup.event(e.event).controllable; }))
                ++deciding;
        policy_.insertion_budget = std::max<std::size_t>(1, 2 * deciding);
    }
}

const std::string& Session::current_name() const
{
    return structure_->supervisor.state(current_).name;
}

namespace
{

DecoratedEvent decoded(const Automaton& a, EventIndex e)
{
    return DecoratedEvent::parse(a.event_name(e));
}

// Controllable edges of a state ordered by event name.
std::vector<Edge> decisions_at(const Automaton& a, StateIndex s)
{
    std::vector<Edge> edges;
    for (const auto& e : a.out(s))
        if (e.event != kTau && a.event(e.event).controllable)
            edges.push_back(e);
    std::sort(edges.begin(), edges.end(),
              [&](const Edge& x, const Edge& y) { return a.event(x.event).name < a.event(y.event).name; });
    return edges;
}

}  // namespace

std::vector<EventIndex> Session::pass_through_chain(StateIndex from) const
{
    const Automaton& sup = structure_->supervisor;
    for (auto terminal : {DecoratedEvent::Kind::stop, DecoratedEvent::Kind::erase}) {
        std::map<StateIndex, std::pair<StateIndex, EventIndex>> parent;
        std::vector<StateIndex> queue{from};
        std::set<StateIndex> seen{from};
        for (std::size_t i = 0; i < queue.size(); ++i) {
            const StateIndex s = queue[i];
            for (const auto& edge : decisions_at(sup, s)) {
                if (decoded(sup, edge.event).kind != terminal)
                    continue;
                std::vector<EventIndex> chain{edge.event};
                for (StateIndex cur = s; cur != from; cur = parent.at(cur).first)
                    chain.push_back(parent.at(cur).second);
                std::reverse(chain.begin(), chain.end());
                return chain;
            }
            for (const auto& edge : decisions_at(sup, s))
                if (decoded(sup, edge.event).kind == DecoratedEvent::Kind::insert && seen.insert(edge.target).second) {
                    parent[edge.target] = {s, edge.event};
                    queue.push_back(edge.target);
                }
        }
    }
    throw std::logic_error("supervisor state '" + sup.state(from).name + "' has no way to finish a decision");
}

std::vector<EventIndex> Session::policy_chain(StateIndex from)
{
    if (policy_.kind == Policy::Kind::pass_through_preferred)
        return pass_through_chain(from);
    const Automaton& sup = structure_->supervisor;
    std::vector<EventIndex> chain;
    std::size_t insertions = 0;
    StateIndex cur = from;
    while (true) {
        auto options = decisions_at(sup, cur);
        if (options.empty())
            throw std::logic_error("supervisor state '" + sup.state(cur).name + "' has no decision");
        const Edge pick = policy_.kind == Policy::Kind::first_lexicographic ? options.front()
                                                                           : options[rng_() % options.size()];
        const auto kind = decoded(sup, pick.event).kind;
        if (kind == DecoratedEvent::Kind::insert && ++insertions > policy_.insertion_budget) {
            auto rest = pass_through_chain(cur);
            chain.insert(chain.end(), rest.begin(), rest.end());
            return chain;
        }
        chain.push_back(pick.event);
        cur = pick.target;
        if (kind != DecoratedEvent::Kind::insert)
            return chain;
    }
}

StepResult Session::step(std::string_view event, const std::vector<std::string>& overrides)
{
    const Automaton& sup = structure_->supervisor;
    auto e = sup.find_event(event);
    if (!e || decoded(sup, *e).kind != DecoratedEvent::Kind::system)
        throw InputError("'" + std::string(event) + "' is not a system event of this structure");
    auto next = sup.successor(current_, *e);
    if (!next)
        throw InputError("event '" + std::string(event) + "' is not enabled at " + current_name());

    StateIndex cur = *next;
    StepResult result;
    std::vector<std::string> trace{std::string(event)};
    const std::string context(event);
    bool decided = false;

    auto apply = [&](EventIndex d) {
        const auto ev = decoded(sup, d);
        cur = *sup.successor(cur, d);
        trace.push_back(ev.to_string());
        result.decisions.push_back(ev.to_string());
        if (ev.kind == DecoratedEvent::Kind::insert)
            result.output.push_back(ev.base);
        else
            decided = true;
    };

    for (const auto& raw : overrides) {
        if (decided)
            throw InputError("decision '" + raw + "' follows a stop or erase");
        std::string name = raw;
        if (raw == "stop")
            name = DecoratedEvent::stop(context).to_string();
        else if (raw == "erase")
            name = DecoratedEvent::erase(context).to_string();
        else if (raw.starts_with("ins:") && raw.find('@') == std::string::npos)
            name = DecoratedEvent::insert(raw.substr(4), context).to_string();
        else if (raw.starts_with("insert "))
            name = DecoratedEvent::insert(raw.substr(7), context).to_string();
        auto d = sup.find_event(name);
        if (!d || !decoded(sup, *d).is_decision() || !sup.successor(cur, *d))
            throw InputError("decision '" + name + "' is not permitted at " + sup.state(cur).name);
        apply(*d);
    }
    if (!decided)
        for (auto d : policy_chain(cur))
            apply(d);

    // Deliveries are uncontrollable and fire until every component rests.
    while (!structure_->at_rest.at(cur)) {
        std::optional<Edge> delivery;
        for (const auto& edge : sup.out(cur)) {
            auto kind = decoded(sup, edge.event).kind;
            if (kind == DecoratedEvent::Kind::deliver || kind == DecoratedEvent::Kind::drop) {
                delivery = edge;
                break;
            }
        }
        if (!delivery)
            throw std::logic_error("supervisor state '" + sup.state(cur).name + "' cannot deliver");
        const auto ev = decoded(sup, delivery->event);
        trace.push_back(ev.to_string());
        if (ev.kind == DecoratedEvent::Kind::deliver)
            result.output.push_back(ev.base);
        cur = delivery->target;
    }

    current_ = cur;
    consumed_.emplace_back(event);
    emitted_.insert(emitted_.end(), result.output.begin(), result.output.end());
    trace_.insert(trace_.end(), trace.begin(), trace.end());
    return result;
}

Session open_session(const ModularEditStructure& structure, Policy policy)
{
    return Session(structure, policy);
}

SessionTrace session_trace(const Session& session)
{
    return {session.consumed(), session.emitted(), session.trace()};
}

}  // namespace edsynth
