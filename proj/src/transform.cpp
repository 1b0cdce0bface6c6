#include "edsynth/transform.hpp"

#include <algorithm>
#include <map>

namespace edsynth
{

namespace
{

bool starts_with(std::string_view s, std::string_view prefix)
{
    return s.substr(0, prefix.size()) == prefix;
}

// Splits "a@b" at the last '@'; both halves must be nonempty.
std::optional<std::pair<std::string, std::string>> split_context(std::string_view s)
{
    auto at = s.rfind('@');
    if (at == std::string_view::npos || at == 0 || at + 1 == s.size())
        return std::nullopt;
    return std::make_pair(std::string(s.substr(0, at)), std::string(s.substr(at + 1)));
}

void require_plain(std::string_view name)
{
    if (DecoratedEvent::parse(name).kind != DecoratedEvent::Kind::system || name.find('@') != std::string_view::npos)
        throw InputError("system event '" + std::string(name) + "' clashes with the decorated-event syntax");
}

}  // namespace

std::string DecoratedEvent::to_string() const
{
    switch (kind) {
    case Kind::system: return base;
    case Kind::insert: return "ins:" + base + "@" + context;
    case Kind::stop: return "stop@" + context;
    case Kind::erase: return "erz:" + base + "@" + context;
    case Kind::deliver: return "out:" + base + "@" + context;
    case Kind::drop: return "drop:" + base + "@" + context;
    }
    return base;
}

DecoratedEvent DecoratedEvent::parse(std::string_view name)
{
    if (starts_with(name, "stop@") && name.size() > 5) {
        std::string c(name.substr(5));
        return stop(std::move(c));
    }
    static const std::pair<std::string_view, Kind> prefixes[] = {
        {"ins:", Kind::insert}, {"erz:", Kind::erase}, {"out:", Kind::deliver}, {"drop:", Kind::drop}};
    for (const auto& [prefix, kind] : prefixes) {
        if (!starts_with(name, prefix))
            continue;
        if (auto parts = split_context(name.substr(prefix.size())))
            return {kind, std::move(parts->first), std::move(parts->second)};
    }
    return system(std::string(name));
}

Move DecoratedEvent::move() const
{
    switch (kind) {
    case Kind::system: return Move::yz;
    case Kind::insert: return Move::zz;
    case Kind::stop: return Move::zw1;
    case Kind::erase: return Move::zw2;
    case Kind::deliver: return Move::wy1;
    case Kind::drop: return Move::wy2;
    }
    return Move::yz;
}

std::string EditSymbol::to_string() const
{
    switch (kind) {
    case Kind::event: return event;
    case Kind::epsilon: return "ε";
    case Kind::erasure: return event + "→ε";
    }
    return event;
}

EditSymbol rename(const DecoratedEvent& e)
{
    switch (e.kind) {
    case DecoratedEvent::Kind::stop: return {EditSymbol::Kind::epsilon, {}};
    case DecoratedEvent::Kind::erase: return {EditSymbol::Kind::erasure, e.base};
    default: return {EditSymbol::Kind::event, e.base};
    }
}

std::string move_label(const DecoratedEvent& e)
{
    return std::string(to_string(e.move())) + ":" + rename(e).to_string();
}

TransformedAutomaton transform_monolithic(const Tpo& t)
{
    TransformedAutomaton m{Automaton("T(" + t.observer().automaton.name() + ")"), t};
    Automaton& a = m.automaton;
    const Automaton& sigma = t.alphabet();
    for (const auto& ev : sigma.events()) {
        require_plain(ev.name);
        a.add_event(ev.name, false);
    }
    for (StateIndex s = 0; s < t.num_states(); ++s) {
        StateInfo info;
        info.name = t.state_name(s);
        info.initial = s == 0;
        info.marked = t.state(s).player == Player::Y;
        a.add_state(std::move(info));
    }
    for (StateIndex s = 0; s < t.num_states(); ++s) {
        const std::string context(t.state(s).player == Player::Y ? std::string_view{} : sigma.event_name(t.state(s).event));
        for (const auto& edge : t.out(s)) {
            const std::string label(edge.move == Move::zw1 ? std::string_view{} : sigma.event_name(edge.label));
            DecoratedEvent ev;
            switch (edge.move) {
            case Move::yz: ev = DecoratedEvent::system(label); break;
            case Move::zz: ev = DecoratedEvent::insert(label, context); break;
            case Move::zw1: ev = DecoratedEvent::stop(context); break;
            case Move::zw2: ev = DecoratedEvent::erase(label); break;
            case Move::wy1: ev = DecoratedEvent::deliver(label); break;
            case Move::wy2: ev = DecoratedEvent::drop(label); break;
            }
            EventIndex e = a.add_event(ev.to_string(), ev.controllable());
            a.add_transition(s, e, edge.target);
        }
    }
    // The decision alphabet is complete for every context, enabled or not, so a
    // component that cannot follow a decision on its own events blocks it.
    std::set<std::string> contexts;
    for (StateIndex s = 0; s < t.num_states(); ++s)
        if (t.state(s).player != Player::Y)
            contexts.emplace(sigma.event_name(t.state(s).event));
    for (const auto& c : contexts) {
        for (const auto& ev : sigma.events())
            a.add_event(DecoratedEvent::insert(ev.name, c).to_string(), true);
        a.add_event(DecoratedEvent::stop(c).to_string(), true);
        a.add_event(DecoratedEvent::erase(c).to_string(), true);
        a.add_event(DecoratedEvent::deliver(c).to_string(), false);
        a.add_event(DecoratedEvent::drop(c).to_string(), false);
    }
    return m;
}

std::vector<TransformedAutomaton> transform_modular(const std::vector<Tpo>& tpos,
                                                    const std::vector<std::set<std::string>>& alphabets)
{
    if (tpos.size() != alphabets.size())
        throw InputError("transform_modular: " + std::to_string(tpos.size()) + " observers but " +
                         std::to_string(alphabets.size()) + " alphabets");
    for (std::size_t i = 0; i < tpos.size(); ++i)
        for (const auto& ev : tpos[i].alphabet().events())
            if (!alphabets[i].contains(ev.name))
                throw InputError("transform_modular: event '" + ev.name + "' of component " + std::to_string(i) +
                                 " is missing from its alphabet");

    std::vector<TransformedAutomaton> result;
    for (std::size_t i = 0; i < tpos.size(); ++i) {
        TransformedAutomaton m = transform_monolithic(tpos[i]);
        Automaton& a = m.automaton;
        for (const auto& e : alphabets[i]) {
            require_plain(e);
            a.add_event(e, false);
        }
        for (std::size_t j = 0; j < tpos.size(); ++j) {
            if (j == i)
                continue;
            std::vector<std::string> shared;
            std::set_intersection(alphabets[i].begin(), alphabets[i].end(), alphabets[j].begin(), alphabets[j].end(),
                                  std::back_inserter(shared));
            for (const auto& alpha : alphabets[j]) {
                if (alphabets[i].contains(alpha))
                    continue;
                require_plain(alpha);
                EventIndex loop = a.add_event(alpha, false);
                for (StateIndex s = 0; s < a.num_states(); ++s)
                    if (m.origin(s) == Player::Y)
                        a.add_transition(s, loop, s);
                for (const auto& sigma : shared) {
                    a.add_event(DecoratedEvent::insert(sigma, alpha).to_string(), true);
                    a.add_event(DecoratedEvent{DecoratedEvent::Kind::deliver, sigma, alpha}.to_string(), false);
                    a.add_event(DecoratedEvent{DecoratedEvent::Kind::drop, sigma, alpha}.to_string(), false);
                }
            }
        }
        result.push_back(std::move(m));
    }
    return result;
}

std::set<std::string> augmentation_events(const std::vector<TransformedAutomaton>& components)
{
    std::set<std::string> contexts;
    for (const auto& c : components)
        for (StateIndex s = 0; s < c.source.num_states(); ++s)
            if (c.origin(s) == Player::Z)
                contexts.insert(std::string(c.source.alphabet().event_name(c.source.state(s).event)));
    std::set<std::string> events;
    for (const auto& c : components)
        for (const auto& ev : c.source.alphabet().events())
            for (const auto& ctx : contexts)
                events.insert(DecoratedEvent::insert(ev.name, ctx).to_string());
    return events;
}

SyncProduct augment_missing_insertions(const std::vector<TransformedAutomaton>& components,
                                       std::span<const Automaton* const> extra, const TupleNamer& namer)
{
    const std::size_t n = components.size();
    std::vector<const Automaton*> parts;
    for (const auto& c : components)
        parts.push_back(&c.automaton);
    parts.insert(parts.end(), extra.begin(), extra.end());

    std::set<std::string> symbols;
    for (const auto& c : components)
        for (const auto& ev : c.source.alphabet().events())
            symbols.insert(ev.name);

    auto moves = [&](std::span<const StateIndex> tuple) {
        std::vector<ExtraMove> result;
        if (n < 2)
            return result;
        std::optional<std::string> context;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& st = components[i].source.state(tuple[i]);
            if (st.player == Player::W)
                return result;
            if (st.player == Player::Z) {
                std::string c(components[i].source.alphabet().event_name(st.event));
                if (context && *context != c)
                    return result;
                context = std::move(c);
            }
        }
        if (!context)
            return result;

        for (const auto& sigma : symbols) {
            const std::string name = DecoratedEvent::insert(sigma, *context).to_string();
            std::vector<StateIndex> target(tuple.begin(), tuple.end());
            bool possible = true;
            bool y_moves = false;
            for (std::size_t i = 0; i < n && possible; ++i) {
                const Tpo& t = components[i].source;
                auto local = t.alphabet().find_event(sigma);
                if (!local)
                    continue;
                const auto& st = t.state(tuple[i]);
                if (st.player == Player::Z) {
                    auto e = components[i].automaton.find_event(name);
                    auto next = e ? components[i].automaton.successor(tuple[i], *e) : std::nullopt;
                    possible = next.has_value();
                    if (possible)
                        target[i] = *next;
                    continue;
                }
                auto de = t.desired_event(*local);
                std::optional<StateIndex> xd;
                if (st.intruder && de)
                    xd = t.desired().automaton.successor(*st.intruder, *de);
                if (!xd) {
                    possible = false;
                    continue;
                }
                TpoState moved = st;
                moved.intruder = xd;
                auto found = t.find(moved);
                possible = found.has_value();
                if (possible) {
                    target[i] = *found;
                    y_moves = true;
                }
            }
            if (!possible || !y_moves)
                continue;
            for (std::size_t j = n; j < parts.size() && possible; ++j) {
                auto e = parts[j]->find_event(name);
                if (!e)
                    continue;
                auto next = parts[j]->successor(tuple[j], *e);
                possible = next.has_value();
                if (possible)
                    target[j] = *next;
            }
            if (possible)
                result.push_back({{name, true}, std::move(target)});
        }
        return result;
    };
    return synchronous_product(parts, namer, moves);
}

LabeledGraph decorated_graph(const Automaton& a, const std::function<std::string(StateIndex)>& tag_of)
{
    LabeledGraph g;
    for (StateIndex s = 0; s < a.num_states(); ++s)
        g.add_node(tag_of(s));
    for (StateIndex s = 0; s < a.num_states(); ++s)
        for (const auto& edge : a.out(s))
            g.add_edge(s, edge.event == kTau ? std::string("tau") : move_label(DecoratedEvent::parse(a.event_name(edge.event))),
                       edge.target);
    if (auto init = a.initial_states(); !init.empty())
        g.initial = init.front();
    return g;
}

}  // namespace edsynth
