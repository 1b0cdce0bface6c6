#include "edsynth/constraint.hpp"

#include "edsynth/transform.hpp"

namespace edsynth
{

Automaton build_constraint_automaton(const ConstraintSpec& spec, std::size_t state_budget)
{
    if (spec.decisions.empty())
        throw InputError("constraint needs at least one decision event");
    const std::size_t n = static_cast<std::size_t>(spec.max_erasures) + 2;
    if (n > state_budget)
        throw InputError("constraint with " + std::to_string(spec.max_erasures) + " erasures exceeds the budget of " +
                         std::to_string(state_budget) + " states");

    Automaton k("K");
    for (std::size_t i = 1; i <= n; ++i)
        k.add_state({"x" + std::to_string(i), i == 1, i < n, false});
    for (const auto& name : spec.decisions) {
        const auto ev = DecoratedEvent::parse(name);
        if (!ev.is_decision())
            throw InputError("'" + name + "' is not an insert, stop or erase event");
        const EventIndex e = k.add_event(name, true);
        for (StateIndex i = 0; i + 1 < n; ++i)
            k.add_transition(i, e, ev.kind == DecoratedEvent::Kind::erase ? i + 1 : 0);
    }
    return k;
}

std::set<std::string> decision_events(std::span<const Automaton* const> parts)
{
    std::set<std::string> result;
    for (const auto* a : parts)
        for (const auto& ev : a->events())
            if (DecoratedEvent::parse(ev.name).is_decision())
                result.insert(ev.name);
    return result;
}

}  // namespace edsynth
