#include "doctest.h"
#include "fixtures.hpp"

#include "edsynth/io.hpp"
#include "edsynth/oracle.hpp"

using namespace edsynth;

TEST_CASE("random generation is seed-deterministic")
{
    RandomSpec spec;
    spec.seed = 42;
    spec.max_states = 7;
    CHECK(serialize_automaton(random_system(spec)) == serialize_automaton(random_system(spec)));
    auto [a1, b1] = random_pair(spec);
    auto [a2, b2] = random_pair(spec);
    CHECK(serialize_automaton(a1) == serialize_automaton(a2));
    CHECK(serialize_automaton(b1) == serialize_automaton(b2));
    spec.seed = 43;
    CHECK(serialize_automaton(random_system(spec)) != serialize_automaton(a1));
}

TEST_CASE("random generation respects its bounds")
{
    SUBCASE("degenerate")
    {
        RandomSpec spec;
        spec.max_states = 1;
        spec.transition_density = 0;
        spec.tau_density = 0;
        const Automaton g = random_system(spec);
        CHECK(g.num_states() == 1);
        CHECK(g.num_transitions() == 0);
        CHECK(g.state(0).initial);
    }
    SUBCASE("no secrets")
    {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            RandomSpec spec;
            spec.seed = seed;
            spec.secret_density = 0;
            CHECK(check_current_state_opacity(random_system(spec)).opaque);
        }
    }
    SUBCASE("size")
    {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            RandomSpec spec;
            spec.seed = seed;
            spec.max_states = 5;
            spec.alphabet_size = 2;
            const Automaton g = random_system(spec);
            CHECK(g.num_states() <= 5);
            CHECK(g.num_events() <= 2);
            CHECK(g.initial_states().size() == 1);
            const auto r = reachable_states(g);
            CHECK(std::all_of(r.begin(), r.end(), [](bool b) { return b; }));
        }
    }
}

TEST_CASE("reference system built in code matches the fixtures")
{
    const auto code = reference_system();
    const auto files = fixtures::rf();
    REQUIRE(code.size() == 2);
    CHECK(serialize_automaton(code[0]) == serialize_automaton(files[0]));
    CHECK(serialize_automaton(code[1]) == serialize_automaton(files[1]));
}

TEST_CASE("observer oracles on the reference system")
{
    const auto rf = fixtures::rf();
    CHECK(check_observer_sync(rf[0], rf[1]));
    CHECK(check_desired_observer_sync(rf[0], rf[1]));
    CHECK(check_abstraction_preserves_observer(rf[0]));
    CHECK(check_abstraction_preserves_desired(rf[1]));
    CHECK(check_tpo_abstraction_equivalence(rf[0]));
    CHECK(check_supervisor_equals_aes(sync_compose(rf[0], rf[1]), 1));

    // a system composed with a copy over a disjoint alphabet
    Automaton copy("C");
    copy.add_event("x");
    copy.add_event("y");
    copy.add_state({"c0", true, true});
    copy.add_state({"c1", false, true});
    copy.add_transition("c0", "x", "c1");
    copy.add_transition("c1", "tau", "c0");
    copy.add_transition("c1", "y", "c1");
    CHECK(check_observer_sync(copy, rf[0]));
    CHECK(check_desired_observer_sync(copy, rf[0]));
}

TEST_CASE("a supervisor that keeps unsafe states is caught")
{
    const auto rf = fixtures::rf();
    ModularEditStructure m = synthesize_modular_edit_structure(rf, {1, false});
    // replace the supervisor by the whole plant
    const SyncProduct plant = product_plant(m.components, m.constraint);
    m.supervisor = plant.automaton;
    m.tuples.clear();
    m.at_rest.clear();
    for (const auto& tuple : plant.tuples) {
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
    const SafetyReport r = check_private_safety(m, rf, 6);
    CHECK(r.violations > 0);
    REQUIRE_FALSE(r.messages.empty());
}

TEST_CASE("suites")
{
    const SuiteResult a = run_suite("desired-sync", 3);
    const SuiteResult b = run_suite("desired-sync", 3);
    CHECK(a.passed);
    CHECK(a.json == b.json);
    REQUIRE(a.lines.size() == 1);
    CHECK(a.lines[0] == "desired-sync: 200/200 PASS");
    CHECK(run_suite("abstraction", 4).json != run_suite("abstraction", 5).json);
    CHECK_THROWS_AS(run_suite("lemmas", 1), InputError);
}
