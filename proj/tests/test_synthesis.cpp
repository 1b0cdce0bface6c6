#include "doctest.h"
#include "fixtures.hpp"

#include "edsynth/constraint.hpp"
#include "edsynth/oracle.hpp"
#include "edsynth/synthesis.hpp"

using namespace edsynth;

namespace
{

std::optional<StateIndex> follow(const Automaton& a, const Word& trace)
{
    auto init = a.initial_states();
    if (init.empty())
        return std::nullopt;
    std::optional<StateIndex> cur = init.front();
    for (const auto& e : trace) {
        auto ev = a.find_event(e);
        if (!ev)
            return std::nullopt;
        cur = a.successor(*cur, *ev);
        if (!cur)
            return std::nullopt;
    }
    return cur;
}

const Word kSelectedPath = {"gamma",     "erz:gamma@gamma", "drop:gamma@gamma", "beta",
                            "stop@beta", "out:beta@beta",   "alpha",            "ins:gamma@alpha",
                            "erz:alpha@alpha", "drop:alpha@alpha"};

Automaton one_state_plant(bool marked)
{
    Automaton p("P");
    p.add_event("u", false);
    p.add_event("c", true);
    p.add_state({"a", true, marked});
    p.add_state({"b", false, true});
    p.add_transition("a", "c", "b");
    p.add_transition("b", "u", "a");
    return p;
}

}  // namespace

TEST_CASE("reference system with one erasure")
{
    const auto rf = fixtures::rf();
    const ModularEditStructure m = synthesize_modular_edit_structure(rf, {1, false});
    REQUIRE_FALSE(m.supervisor.empty());
    CHECK(m.diagnostic.empty());
    CHECK(m.components.size() == 2);
    CHECK(m.constraint.num_states() == 3);
    CHECK(m.tuples.size() == m.supervisor.num_states());
    CHECK(m.at_rest[m.supervisor.initial_states().at(0)]);

    const auto end = follow(m.supervisor, kSelectedPath);
    REQUIRE(end);
    CHECK(m.at_rest[*end]);
    CHECK(m.supervisor.state(*end).marked);

    // the plant contains the same path and blocks after two erasures in a row
    const Automaton k = m.constraint;
    const SyncProduct plant = product_plant(m.components, k);
    CHECK(follow(plant.automaton, kSelectedPath));
    const auto twice = follow(plant.automaton, {"gamma", "erz:gamma@gamma", "drop:gamma@gamma", "beta", "erz:beta@beta"});
    REQUIRE(twice);
    CHECK(plant.automaton.state(*twice).name.ends_with("|K:x3)"));
    CHECK_FALSE(follow(m.supervisor, {"gamma", "erz:gamma@gamma", "drop:gamma@gamma", "beta", "erz:beta@beta"}));

    CHECK(is_subautomaton(m.supervisor, plant.automaton));
    CHECK(m.plant_states == plant.automaton.num_states());
}

TEST_CASE("supervisor is controllable, nonblocking and within the erasure bound")
{
    const auto rf = fixtures::rf();
    for (unsigned k = 0; k <= 2; ++k) {
        const ModularEditStructure m = build_modular_edit_structure(rf, {k, false});
        if (m.supervisor.empty())
            continue;
        const SyncProduct plant = product_plant(m.components, m.constraint);
        const Automaton& s = m.supervisor;
        const auto co = coreachable_states(s);
        CHECK(std::all_of(co.begin(), co.end(), [](bool b) { return b; }));
        for (StateIndex x = 0; x < s.num_states(); ++x) {
            const auto p = plant.automaton.find_state(s.state(x).name);
            REQUIRE(p);
            for (const auto& edge : plant.automaton.out(*p)) {
                if (plant.automaton.event(edge.event).controllable)
                    continue;
                const auto& ename = plant.automaton.event_name(edge.event);
                CHECK_MESSAGE(s.successor(x, *s.find_event(ename)), "uncontrollable " << ename << " disabled");
            }
            CHECK(m.tuples[x].back() != "x" + std::to_string(k + 2));
        }
    }
}

TEST_CASE("supCN")
{
    SUBCASE("already fine")
    {
        const Automaton p = one_state_plant(true);
        const SupervisorResult r = supremal_controllable_nonblocking(p);
        CHECK(r.supervisor.num_states() == 2);
        CHECK(r.supervisor.num_transitions() == 2);
        CHECK(r.log == std::vector<std::string>{"pass 1: removed 0 states (blocking)",
                                                "pass 1: removed 0 states (uncontrollable)"});
    }
    SUBCASE("blocking initial state")
    {
        Automaton p("P");
        p.add_event("c");
        p.add_state({"a", true, false});
        p.add_transition("a", "c", "a");
        CHECK(supremal_controllable_nonblocking(p).supervisor.empty());
    }
    SUBCASE("uncontrollable edge into a dead end")
    {
        Automaton p = one_state_plant(true);
        p.add_state({"dead", false, false});
        p.add_transition("a", "u", "dead");
        const SupervisorResult r = supremal_controllable_nonblocking(p);
        CHECK(r.supervisor.empty());
        CHECK(r.log.front() == "pass 1: removed 1 states (blocking)");
    }
    SUBCASE("controllable edge into a dead end is cut")
    {
        Automaton p = one_state_plant(true);
        p.add_state({"dead", false, false});
        p.add_transition("b", "c", "dead");
        const SupervisorResult r = supremal_controllable_nonblocking(p);
        CHECK(r.supervisor.num_states() == 2);
        CHECK_FALSE(r.supervisor.find_state("dead"));
    }
}

TEST_CASE("an opaque component keeps the identity edit")
{
    Automaton g = fixtures::rf()[0];
    g.set_secret(3, false);
    const ModularEditStructure m = synthesize_modular_edit_structure({g}, {1, false});
    const Automaton& s = m.supervisor;
    for (const auto& w : language_upto(g, 4)) {
        Word trace;
        for (const auto& e : w)
            trace.insert(trace.end(), {e, "stop@" + e, "out:" + e + "@" + e});
        CHECK_MESSAGE(follow(s, trace), format_word(w));
    }
    CHECK(follow(s, {"gamma", "stop@gamma", "out:gamma@gamma", "alpha", "stop@alpha", "out:alpha@alpha"}));
}

TEST_CASE("unenforceable systems")
{
    Automaton g = fixtures::rf()[0];
    for (StateIndex s = 0; s < g.num_states(); ++s)
        g.set_secret(s, true);
    const auto m = build_modular_edit_structure({fixtures::rf()[1], g}, {1, false});
    CHECK(m.supervisor.empty());
    CHECK(m.diagnostic == "opacity unenforceable for component 2 (G1)");
    CHECK_THROWS_AS(synthesize_modular_edit_structure({g}, {1, false}), UnenforceableError);
    CHECK_THROWS_AS(build_modular_edit_structure({}, {1, false}), InputError);

    // secret right after the only event and no way to hide it without erasing
    Automaton h("H");
    h.add_event("a");
    h.add_state({"x", true, true});
    h.add_state({"s", false, true, true});
    h.add_transition("x", "a", "s");
    const auto none = build_modular_edit_structure({h}, {0, false});
    CHECK(none.diagnostic == "no constrained edit function exists");
    CHECK_FALSE(build_modular_edit_structure({h}, {1, false}).supervisor.empty());
}

TEST_CASE("supervisor equals the pruned structure")
{
    for (std::uint64_t seed = 800; seed < 830; ++seed) {
        RandomSpec spec;
        spec.seed = seed;
        spec.max_states = 6;
        const Automaton g = random_system(spec);
        for (unsigned k = 0; k <= 2; ++k)
            CHECK_MESSAGE(check_supervisor_equals_aes(g, k), "seed " << seed << " k " << k);
    }
}

TEST_CASE("synthesis is deterministic")
{
    const auto rf = fixtures::rf();
    const auto a = synthesize_modular_edit_structure(rf, {1, false});
    const auto b = synthesize_modular_edit_structure(rf, {1, false});
    CHECK(a.supervisor.num_states() == b.supervisor.num_states());
    for (StateIndex s = 0; s < a.supervisor.num_states(); ++s) {
        CHECK(a.supervisor.state(s) == b.supervisor.state(s));
        CHECK(std::equal(a.supervisor.out(s).begin(), a.supervisor.out(s).end(), b.supervisor.out(s).begin(),
                         b.supervisor.out(s).end()));
    }
    CHECK(a.log == b.log);
}
