#include "doctest.h"
#include "fixtures.hpp"

#include "edsynth/oracle.hpp"
#include "edsynth/runtime.hpp"

using namespace edsynth;

namespace
{

const ModularEditStructure& reference_structure()
{
    static const ModularEditStructure m = synthesize_modular_edit_structure(fixtures::rf(), {1, false});
    return m;
}

}  // namespace

TEST_CASE("policy names")
{
    CHECK(Policy::parse("pass-through-preferred").kind == Policy::Kind::pass_through_preferred);
    CHECK(Policy::parse("first-lexicographic").kind == Policy::Kind::first_lexicographic);
    const Policy p = Policy::parse("seeded-random", 9);
    CHECK(p.kind == Policy::Kind::seeded_random);
    CHECK(p.seed == 9);
    CHECK_THROWS_AS(Policy::parse("greedy"), InputError);
}

TEST_CASE("fresh session")
{
    const auto& m = reference_structure();
    const Session s = open_session(m);
    CHECK(s.consumed().empty());
    CHECK(s.emitted().empty());
    CHECK(s.trace().empty());
    CHECK(s.current() == m.supervisor.initial_states().at(0));
    CHECK(m.at_rest[s.current()]);
    const SessionTrace t = session_trace(s);
    CHECK(t.consumed.empty());
    CHECK(t.emitted.empty());
    CHECK(t.trace.empty());

    ModularEditStructure empty;
    CHECK_THROWS_AS(open_session(empty), UnenforceableError);
}

TEST_CASE("selected path by overrides")
{
    Session s = open_session(reference_structure());
    CHECK(s.step("gamma", {"erase"}).output.empty());
    CHECK(s.step("beta", {"stop"}).output == Word{"beta"});
    const StepResult r = s.step("alpha", {"insert gamma", "erase"});
    CHECK(r.output == Word{"gamma"});
    CHECK(r.decisions == std::vector<std::string>{"ins:gamma@alpha", "erz:alpha@alpha"});
    const SessionTrace t = session_trace(s);
    CHECK(t.consumed == Word{"gamma", "beta", "alpha"});
    CHECK(t.emitted == Word{"beta", "gamma"});
    CHECK(t.trace == std::vector<std::string>{"gamma", "erz:gamma@gamma", "drop:gamma@gamma", "beta", "stop@beta",
                                              "out:beta@beta", "alpha", "ins:gamma@alpha", "erz:alpha@alpha",
                                              "drop:alpha@alpha"});
    CHECK(reference_structure().at_rest[s.current()]);
}

TEST_CASE("decorated overrides and partial chains")
{
    Session s = open_session(reference_structure());
    CHECK(s.step("gamma", {"erz:gamma@gamma"}).output.empty());
    Session t = open_session(reference_structure());
    // only the insertion is given; the policy finishes the decision
    const StepResult r = t.step("gamma", {"ins:gamma"});
    REQUIRE_FALSE(r.decisions.empty());
    CHECK(r.decisions.front() == "ins:gamma@gamma");
    CHECK(r.output == Word{"gamma"});
    CHECK(r.decisions.back() == "erz:gamma@gamma");
    CHECK_THROWS_AS(open_session(reference_structure()).step("gamma", {"ins:beta"}), InputError);
}

TEST_CASE("pass-through policy")
{
    Session s = open_session(reference_structure());
    CHECK(s.step("gamma").output == Word{"gamma"});
    CHECK(s.step("beta").output == Word{"beta"});
    // both events seen: alpha would reveal the secret
    const StepResult r = s.step("alpha");
    CHECK(r.output.empty());
    CHECK(s.emitted() == Word{"gamma", "beta"});
}

TEST_CASE("step errors leave the session unchanged")
{
    Session s = open_session(reference_structure());
    const StateIndex before = s.current();
    CHECK_THROWS_AS(s.step("delta"), InputError);
    CHECK_THROWS_AS(s.step("alpha"), InputError);
    CHECK_THROWS_AS(s.step("gamma", {"insert alpha"}), InputError);
    CHECK_THROWS_AS(s.step("gamma", {"stop", "erase"}), InputError);
    CHECK(s.current() == before);
    CHECK(s.consumed().empty());
    CHECK(s.trace().empty());
}

TEST_CASE("policies are deterministic")
{
    const auto& m = reference_structure();
    for (const auto* name : {"pass-through-preferred", "first-lexicographic", "seeded-random"}) {
        Session a = open_session(m, Policy::parse(name, 3));
        Session b = open_session(m, Policy::parse(name, 3));
        for (const auto* e : {"beta", "gamma", "alpha"}) {
            CHECK(a.step(e).output == b.step(e).output);
        }
        CHECK(a.trace() == b.trace());
        CHECK(m.at_rest[a.current()]);
    }
}

TEST_CASE("an opaque system passes through unchanged")
{
    Automaton g = fixtures::rf()[0];
    g.set_secret(3, false);
    const ModularEditStructure m = synthesize_modular_edit_structure({g}, {1, false});
    Session s = open_session(m);
    s.step("gamma");
    s.step("alpha");
    CHECK(s.emitted() == Word{"gamma", "alpha"});
}

TEST_CASE("every policy stays privately safe on the reference system")
{
    const auto& m = reference_structure();
    const auto rf = fixtures::rf();
    const Observer safe = desired_observer(determinize(sync_compose(rf[0], rf[1])));
    const auto words = language_upto(sync_compose(rf[0], rf[1]), 8);
    for (const auto* name : {"pass-through-preferred", "first-lexicographic", "seeded-random"}) {
        for (const auto& w : words) {
            Session s = open_session(m, Policy::parse(name, 11));
            for (const auto& e : w)
                s.step(e);
            CHECK(language_upto(safe.automaton, s.emitted().size()).count(s.emitted()));
            CHECK(m.at_rest[s.current()]);
        }
    }
}

TEST_CASE("private safety report")
{
    const auto rf = fixtures::rf();
    const SafetyReport r = check_private_safety(reference_structure(), rf, 6);
    CHECK_FALSE(r.empty);
    CHECK(r.violations == 0);
    CHECK(r.sequences > 0);

    ModularEditStructure empty;
    CHECK(check_private_safety(empty, rf, 6).empty);
}
