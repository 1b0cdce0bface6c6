#include "edsynth/synthesis.hpp"

#include "edsynth/tpo.hpp"

#include <algorithm>

namespace edsynth
{

SyncProduct product_plant(const std::vector<TransformedAutomaton>& components, const Automaton& constraint, bool augment)
{
    std::vector<const Automaton*> parts;
    for (const auto& c : components)
        parts.push_back(&c.automaton);
    parts.push_back(&constraint);
    auto namer = [&](std::span<const StateIndex> tuple) {
        std::string name = "(";
        for (std::size_t i = 0; i < components.size(); ++i)
            name += components[i].automaton.state(tuple[i]).name + "|";
        return name + "K:" + constraint.state(tuple.back()).name + ")";
    };
    SyncProduct product;
    if (augment) {
        const Automaton* extra[] = {&constraint};
        product = augment_missing_insertions(components, extra, namer);
    } else {
        product = synchronous_product(parts, namer);
    }
    product.automaton.set_name("plant");
    return product;
}

SupervisorResult supremal_controllable_nonblocking(const Automaton& plant)
{
    const std::size_t n = plant.num_states();
    std::vector<bool> alive = reachable_states(plant);
    std::vector<std::vector<std::pair<StateIndex, bool>>> pred(n);  // (source, uncontrollable)
    for (StateIndex s = 0; s < n; ++s)
        for (const auto& edge : plant.out(s))
            pred[edge.target].emplace_back(s, edge.event == kTau || !plant.event(edge.event).controllable);

    SupervisorResult result;
    for (std::size_t pass = 1;; ++pass) {
        std::size_t removed = 0;

        std::vector<bool> coreach(n, false);
        std::vector<StateIndex> stack;
        for (StateIndex s = 0; s < n; ++s)
            if (alive[s] && plant.state(s).marked) {
                coreach[s] = true;
                stack.push_back(s);
            }
        while (!stack.empty()) {
            auto s = stack.back();
            stack.pop_back();
            for (auto [p, uncontrollable] : pred[s])
                if (alive[p] && !coreach[p]) {
                    coreach[p] = true;
                    stack.push_back(p);
                }
        }
        std::size_t blocking = 0;
        for (StateIndex s = 0; s < n; ++s)
            if (alive[s] && !coreach[s]) {
                alive[s] = false;
                ++blocking;
                stack.push_back(s);
            }
        result.log.push_back("pass " + std::to_string(pass) + ": removed " + std::to_string(blocking) +
                             " states (blocking)");

        std::size_t uncontrollable = 0;
        while (!stack.empty()) {
            auto s = stack.back();
            stack.pop_back();
            for (auto [p, unc] : pred[s])
                if (unc && alive[p]) {
                    alive[p] = false;
                    ++uncontrollable;
                    stack.push_back(p);
                }
        }
        result.log.push_back("pass " + std::to_string(pass) + ": removed " + std::to_string(uncontrollable) +
                             " states (uncontrollable)");
        removed = blocking + uncontrollable;

        // Re-trim to the part reachable through live states.
        std::vector<bool> reach(n, false);
        for (auto s : plant.initial_states())
            if (alive[s]) {
                reach[s] = true;
                stack.push_back(s);
            }
        while (!stack.empty()) {
            auto s = stack.back();
            stack.pop_back();
            for (const auto& edge : plant.out(s))
                if (alive[edge.target] && !reach[edge.target]) {
                    reach[edge.target] = true;
                    stack.push_back(edge.target);
                }
        }
        alive = std::move(reach);
        if (removed == 0)
            break;
    }
    result.supervisor = restrict_states(plant, alive, &result.plant_state);
    result.supervisor.set_name("supervisor");
    return result;
}

std::vector<std::set<std::string>> system_alphabets(const std::vector<Automaton>& systems)
{
    std::vector<std::set<std::string>> result;
    for (const auto& g : systems) {
        std::set<std::string> names;
        for (const auto& ev : g.events())
            names.insert(ev.name);
        result.push_back(std::move(names));
    }
    return result;
}

ModularEditStructure build_modular_edit_structure(const std::vector<Automaton>& systems, const SynthesisOptions& options)
{
    if (systems.empty())
        throw InputError("synthesis needs at least one component");
    ModularEditStructure m;
    m.max_erasures = options.max_erasures;
    m.alphabets = system_alphabets(systems);

    std::vector<Tpo> tpos;
    for (std::size_t i = 0; i < systems.size(); ++i) {
        AbstractionBundle bundle = abstract_component(systems[i]);
        if (bundle.h_obd.automaton.empty()) {
            m.diagnostic = "opacity unenforceable for component " + std::to_string(i + 1) + " (" + systems[i].name() + ")";
            return m;
        }
        tpos.push_back(build_largest_tpo(bundle.h_obd, bundle.h_b));
    }
    m.components = transform_modular(tpos, m.alphabets);

    std::vector<const Automaton*> parts;
    for (const auto& c : m.components)
        parts.push_back(&c.automaton);
    ConstraintSpec spec{options.max_erasures, decision_events(parts)};
    if (options.augment)
        spec.decisions.merge(augmentation_events(m.components));
    if (spec.decisions.empty()) {
        // No observable event ever occurs, so there is nothing to constrain.
        m.constraint = Automaton("K");
        m.constraint.add_state({"x1", true, true, false});
    } else {
        m.constraint = build_constraint_automaton(spec);
    }

    const SyncProduct plant = product_plant(m.components, m.constraint, options.augment);
    m.plant_states = plant.automaton.num_states();
    SupervisorResult sup = supremal_controllable_nonblocking(plant.automaton);
    m.log = std::move(sup.log);
    m.supervisor = std::move(sup.supervisor);
    for (auto p : sup.plant_state) {
        const auto& tuple = plant.tuples[p];
        std::vector<std::string> names;
        bool rest = true;
        for (std::size_t i = 0; i < m.components.size(); ++i) {
            names.push_back(m.components[i].automaton.state(tuple[i]).name);
            rest = rest && m.components[i].origin(tuple[i]) == Player::Y;
        }
        names.push_back(m.constraint.state(tuple.back()).name);
        m.tuples.push_back(std::move(names));
        m.at_rest.push_back(rest);
    }
    if (m.supervisor.empty())
        m.diagnostic = "no constrained edit function exists";
    return m;
}

ModularEditStructure synthesize_modular_edit_structure(const std::vector<Automaton>& systems,
                                                       const SynthesisOptions& options)
{
    ModularEditStructure m = build_modular_edit_structure(systems, options);
    if (!m.diagnostic.empty())
        throw UnenforceableError(m.diagnostic);
    return m;
}

}  // namespace edsynth
