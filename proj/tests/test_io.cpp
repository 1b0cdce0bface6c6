#include "doctest.h"
#include "fixtures.hpp"

#include "edsynth/io.hpp"
#include "edsynth/oracle.hpp"
#include "edsynth/runtime.hpp"

using namespace edsynth;

namespace
{

void check_same(const Automaton& a, const Automaton& b)
{
    CHECK(a.name() == b.name());
    REQUIRE(a.num_events() == b.num_events());
    for (EventIndex e = 0; e < a.num_events(); ++e)
        CHECK(a.event(e) == b.event(e));
    REQUIRE(a.num_states() == b.num_states());
    for (StateIndex s = 0; s < a.num_states(); ++s) {
        CHECK(a.state(s) == b.state(s));
        CHECK(std::equal(a.out(s).begin(), a.out(s).end(), b.out(s).begin(), b.out(s).end()));
    }
}

}  // namespace

TEST_CASE("reading the first fixture")
{
    const Automaton g1 = fixtures::load("rf_g1.json");
    CHECK(g1.name() == "G1");
    CHECK(g1.num_states() == 4);
    CHECK(g1.num_events() == 2);
    CHECK(g1.num_transitions() == 4);
    CHECK(g1.successor(*g1.find_state("q1"), kTau) == g1.find_state("q2"));
    CHECK(g1.state(*g1.find_state("q3")).secret);
}

TEST_CASE("minimal document and defaults")
{
    const Automaton a = parse_automaton(R"({"states": [{"name": "x", "initial": true}]})");
    REQUIRE(a.num_states() == 1);
    CHECK(a.state(0).initial);
    CHECK_FALSE(a.state(0).marked);
    CHECK_FALSE(a.state(0).secret);
    const Automaton b = parse_automaton(R"({"events": [{"name": "e"}], "states": [{"name": "x"}]})");
    CHECK(b.event(0).controllable);
}

TEST_CASE("unobservable events become tau")
{
    const Automaton a = parse_automaton(R"({
        "events": [{"name": "h", "observable": false}, {"name": "o"}],
        "states": [{"name": "x", "initial": true}, {"name": "y"}],
        "transitions": [["x", "h", "y"], ["y", "o", "x"]]})");
    CHECK(a.num_events() == 1);
    CHECK(a.successor(0, kTau) == std::optional<StateIndex>(1));
}

TEST_CASE("parse errors name the offending entry")
{
    auto message = [](const char* text) {
        try {
            parse_automaton(text);
        } catch (const InputError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    const std::string undeclared = message(R"({"events": [{"name": "a"}], "states": [{"name": "x"}],
        "transitions": [["x", "a", "x"], ["x", "b", "x"]]})");
    CHECK(undeclared.find("transitions[1]") != std::string::npos);
    CHECK(undeclared.find("'b'") != std::string::npos);
    CHECK(message(R"({"states": [{"name": "x"}], "transitions": [["x", "tau", "y"]]})").find("transitions[0]") !=
          std::string::npos);
    CHECK(message(R"({"events": [{"name": "tau"}], "states": []})").find("events[0]") != std::string::npos);
    CHECK(message(R"({"events": [{"name": "a"}, {"name": "a"}], "states": []})").find("events[1]") !=
          std::string::npos);
    CHECK(message(R"({"states": [{"name": "x"}, {"name": "x"}]})").find("states[1]") != std::string::npos);
    CHECK(message(R"({"states": [{"name": "x", "marked": "yes"}]})").find("states[0].marked") != std::string::npos);
    CHECK_FALSE(message("{").empty());
    CHECK_FALSE(message("[]").empty());
}

TEST_CASE("automaton round trip")
{
    for (const auto& g : fixtures::rf()) {
        const std::string text = serialize_automaton(g);
        check_same(parse_automaton(text), g);
        CHECK(serialize_automaton(parse_automaton(text)) == text);
    }
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        RandomSpec spec;
        spec.seed = seed;
        spec.tau_density = 0.3;
        const Automaton g = random_system(spec);
        check_same(parse_automaton(serialize_automaton(g)), g);
    }
}

TEST_CASE("structure round trip keeps what the runtime needs")
{
    const auto m = synthesize_modular_edit_structure(fixtures::rf(), {1, false});
    const std::string text = serialize_structure(m);
    const ModularEditStructure back = parse_structure(text);
    check_same(back.supervisor, m.supervisor);
    check_same(back.constraint, m.constraint);
    CHECK(back.tuples == m.tuples);
    CHECK(back.at_rest == m.at_rest);
    CHECK(back.alphabets == m.alphabets);
    CHECK(back.max_erasures == 1);
    CHECK(back.components.empty());

    Session s = open_session(back);
    s.step("gamma", {"erase"});
    s.step("beta", {"stop"});
    s.step("alpha", {"insert gamma", "erase"});
    CHECK(s.emitted() == Word{"beta", "gamma"});

    CHECK_THROWS_AS(parse_structure(R"({"format": "other"})"), InputError);
    CHECK_THROWS_AS(parse_structure(serialize_automaton(m.constraint)), InputError);
}

TEST_CASE("dot export")
{
    const auto rf = fixtures::rf();
    const std::string g = export_dot(rf[0]);
    CHECK(g.starts_with("digraph \"G1\" {"));
    CHECK(g.find("label=\"q3\", shape=circle, peripheries=2") != std::string::npos);
    CHECK(g.find("label=\"tau\"") != std::string::npos);

    const Observer det = determinize(sync_compose(rf[0], rf[1]));
    const Tpo t = build_largest_tpo(desired_observer(det), det);
    const std::string dt = export_dot(t);
    CHECK(dt.find("shape=box") != std::string::npos);
    CHECK(dt.find("shape=ellipse") != std::string::npos);
    CHECK(dt.find("label=\"({(q0,s0)},{(q0,s0)}),gamma→ε\", shape=diamond") != std::string::npos);

    const auto m = synthesize_modular_edit_structure(rf, {1, false});
    const std::string ds = export_dot(m);
    CHECK(ds.starts_with("// removed states: " + std::to_string(m.plant_states - m.supervisor.num_states()) + "\n"));
    CHECK(ds.find("label=\"ins:gamma@alpha\"") != std::string::npos);

    const std::string empty = export_dot(Automaton("E"));
    CHECK(empty == "digraph \"E\" {\n  rankdir=LR;\n}\n");
}

TEST_CASE("tpo document")
{
    const auto rf = fixtures::rf();
    const Observer det = determinize(rf[0]);
    const std::string text = serialize_tpo(build_largest_tpo(desired_observer(det), det));
    CHECK(text.find("\"({q0},{q0})\"") != std::string::npos);
    CHECK(text.find("\"zw2\"") != std::string::npos);
}

TEST_CASE("missing files")
{
    CHECK_THROWS_AS(read_file("/nonexistent/x.json"), InputError);
}
