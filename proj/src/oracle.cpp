#include "edsynth/oracle.hpp"

#include "edsynth/abstraction.hpp"
#include "edsynth/estimation.hpp"
#include "edsynth/runtime.hpp"
#include "edsynth/tpo.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>

#include "json.hpp"

namespace edsynth
{

namespace
{

// Distributions are spelled out so results do not depend on the standard library.
double uniform(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t below(std::mt19937_64& rng, std::size_t n)
{
    return static_cast<std::size_t>(rng() % n);
}

Automaton random_automaton(std::mt19937_64& rng, const std::string& name, const std::vector<std::string>& events,
                           const RandomSpec& spec)
{
    Automaton a(name);
    for (const auto& e : events)
        a.add_event(e, true);
    const std::size_t n = 1 + below(rng, std::max<std::size_t>(1, spec.max_states));
    const std::string prefix = name.empty() ? "x" : std::string(1, static_cast<char>(std::tolower(name[0])));
    for (std::size_t s = 0; s < n; ++s)
        a.add_state({prefix + std::to_string(s), s == 0, true, uniform(rng) < spec.secret_density});
    for (StateIndex s = 0; s < n; ++s) {
        for (EventIndex e = 0; e < events.size(); ++e) {
            if (uniform(rng) < spec.transition_density)
                a.add_transition(s, e, static_cast<StateIndex>(below(rng, n)));
            if (uniform(rng) < spec.transition_density / 4)
                a.add_transition(s, e, static_cast<StateIndex>(below(rng, n)));
        }
        if (uniform(rng) < spec.tau_density)
            a.add_transition(s, kTau, static_cast<StateIndex>(below(rng, n)));
    }
    return trim_reachable(a);
}

LabeledGraph automaton_graph(const Automaton& a)
{
    LabeledGraph g;
    for (StateIndex s = 0; s < a.num_states(); ++s)
        g.add_node(a.state(s).secret ? "S" : "N");
    for (StateIndex s = 0; s < a.num_states(); ++s)
        for (const auto& edge : a.out(s))
            g.add_edge(s, std::string(a.event_name(edge.event)), edge.target);
    if (auto init = a.initial_states(); !init.empty())
        g.initial = init.front();
    return g;
}

Automaton compose_all(const std::vector<Automaton>& systems)
{
    std::vector<const Automaton*> parts;
    for (const auto& g : systems)
        parts.push_back(&g);
    auto product = synchronous_product(parts, [&](std::span<const StateIndex> t) {
        std::string name = "(";
        for (std::size_t i = 0; i < t.size(); ++i)
            name += (i ? "," : "") + systems[i].state(t[i]).name;
        return name + ")";
    });
    return std::move(product.automaton);
}

Tpo monolithic_tpo(const Automaton& g)
{
    const Observer det = determinize(g);
    return build_largest_tpo(desired_observer(det), det);
}

}  // namespace

Automaton random_system(const RandomSpec& spec)
{
    std::mt19937_64 rng(spec.seed);
    std::vector<std::string> events;
    for (std::size_t i = 0; i < spec.alphabet_size; ++i)
        events.push_back("e" + std::to_string(i));
    return random_automaton(rng, "G", events, spec);
}

std::pair<Automaton, Automaton> random_pair(const RandomSpec& spec)
{
    std::mt19937_64 rng(spec.seed);
    std::vector<std::string> pool;
    for (std::size_t i = 0; i < std::max<std::size_t>(1, spec.alphabet_size); ++i)
        pool.push_back(std::string(1, static_cast<char>('a' + i % 26)) + (i >= 26 ? std::to_string(i / 26) : ""));
    auto pick = [&] {
        std::vector<std::string> chosen;
        for (const auto& e : pool)
            if (uniform(rng) < 0.7)
                chosen.push_back(e);
        if (chosen.empty())
            chosen.push_back(pool[below(rng, pool.size())]);
        return chosen;
    };
    auto first_events = pick();
    auto second_events = pick();
    Automaton first = random_automaton(rng, "P", first_events, spec);
    Automaton second = random_automaton(rng, "Q", second_events, spec);
    return {std::move(first), std::move(second)};
}

std::vector<Automaton> reference_system()
{
    auto build = [](const std::string& name, const std::string& p, const std::string& local) {
        Automaton g(name);
        g.add_event(local);
        g.add_event("alpha");
        for (int i = 0; i < 4; ++i)
            g.add_state({p + std::to_string(i), i == 0, true, i == 3});
        g.add_transition(p + "0", local, p + "1");
        g.add_transition(p + "1", "tau", p + "2");
        g.add_transition(p + "1", "alpha", p + "3");
        g.add_transition(p + "2", "alpha", p + "3");
        return g;
    };
    return {build("G1", "q", "gamma"), build("G2", "s", "beta")};
}

bool check_observer_sync(const Automaton& a, const Automaton& b)
{
    const Observer joint = determinize(sync_compose(a, b));
    const Automaton separate = sync_compose(determinize(a).automaton, determinize(b).automaton);
    return deterministic_isomorphic(joint.automaton, separate);
}

bool check_desired_observer_sync(const Automaton& a, const Automaton& b)
{
    const Observer joint = desired_observer(determinize(sync_compose(a, b)));
    const Automaton separate =
        sync_compose(desired_observer(determinize(a)).automaton, desired_observer(determinize(b)).automaton);
    return deterministic_isomorphic(joint.automaton, separate);
}

bool check_abstraction_preserves_observer(const Automaton& g)
{
    const Automaton abstracted = quotient(g, opaque_observation_equivalence_partition(g));
    const Observer det = determinize(g);
    const Observer det_abs = determinize(abstracted);
    return graphs_bisimilar(automaton_graph(det.automaton), automaton_graph(det_abs.automaton)) &&
           graphs_bisimilar(automaton_graph(desired_observer(det).automaton),
                            automaton_graph(desired_observer(det_abs).automaton));
}

bool check_abstraction_preserves_desired(const Automaton& g)
{
    const AbstractionBundle bundle = abstract_component(g);
    return graphs_bisimilar(automaton_graph(desired_observer(determinize(g)).automaton),
                            automaton_graph(bundle.h_obd.automaton));
}

bool check_tpo_abstraction_equivalence(const Automaton& g)
{
    const AbstractionBundle bundle = abstract_component(g);
    const Tpo direct = monolithic_tpo(g);
    const Tpo abstracted = build_largest_tpo(bundle.h_obd, bundle.h_b);
    return graphs_bisimilar(to_labeled_graph(direct), to_labeled_graph(abstracted));
}

bool check_supervisor_equals_aes(const Automaton& g, unsigned k)
{
    const Tpo t = monolithic_tpo(g);
    const TransformedAutomaton m = transform_monolithic(t);

    const Automaton* parts[] = {&m.automaton};
    ConstraintSpec spec{k, decision_events(parts)};
    Automaton constraint("K");
    if (spec.decisions.empty())
        constraint.add_state({"x1", true, true, false});
    else
        constraint = build_constraint_automaton(spec);

    const SyncProduct plant = product_plant({m}, constraint);
    const SupervisorResult sup = supremal_controllable_nonblocking(plant.automaton);
    const LabeledGraph lhs = decorated_graph(sup.supervisor, [&](StateIndex s) {
        return std::string(to_string(m.origin(plant.tuples[sup.plant_state[s]][0])));
    });
    const LabeledGraph rhs = to_labeled_graph(prune_to_aes(t, k));
    return graphs_isomorphic(lhs, rhs);
}

std::optional<bool> check_modular_inclusion(const std::vector<Automaton>& systems, std::size_t depth,
                                            bool abstracted)
{
    std::vector<Tpo> tpos;
    for (const auto& g : systems) {
        if (abstracted) {
            const AbstractionBundle bundle = abstract_component(g);
            tpos.push_back(build_largest_tpo(bundle.h_obd, bundle.h_b));
        } else {
            tpos.push_back(monolithic_tpo(g));
        }
        if (tpos.back().desired().automaton.empty())
            return std::nullopt;
    }
    const auto components = transform_modular(tpos, system_alphabets(systems));
    std::vector<const Automaton*> parts;
    for (const auto& c : components)
        parts.push_back(&c.automaton);
    const SyncProduct product = synchronous_product(parts, [](std::span<const StateIndex> t) {
        std::string name;
        for (auto s : t)
            name += std::to_string(s) + ".";
        return name;
    });
    const Tpo t = monolithic_tpo(compose_all(systems));
    if (product.automaton.empty())
        return true;
    if (t.empty())
        return false;

    std::map<std::pair<StateIndex, StateIndex>, std::size_t> seen;
    std::vector<std::pair<StateIndex, StateIndex>> queue{{product.automaton.initial_states().front(), 0}};
    seen[queue.front()] = 0;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const auto [p, q] = queue[i];
        const std::size_t len = seen[queue[i]];
        if (len >= depth)
            continue;
        for (const auto& edge : product.automaton.out(p)) {
            const std::string label = move_label(DecoratedEvent::parse(product.automaton.event_name(edge.event)));
            std::optional<StateIndex> next;
            for (const auto& te : t.out(q))
                if (std::string(to_string(te.move)) + ":" + t.edge_label(te) == label)
                    next = te.target;
            if (!next)
                return false;
            const std::pair<StateIndex, StateIndex> key{edge.target, *next};
            if (!seen.contains(key)) {
                seen[key] = len + 1;
                queue.push_back(key);
            }
        }
    }
    return true;
}

SafetyReport check_private_safety(const ModularEditStructure& m, const std::vector<Automaton>& systems,
                                  std::size_t depth)
{
    SafetyReport report;
    if (m.supervisor.empty()) {
        report.empty = true;
        return report;
    }
    const Automaton composite = compose_all(systems);
    const Observer truth = determinize(composite);
    const Observer safe = desired_observer(truth);
    const Automaton& sup = m.supervisor;
    const Automaton& tobs = truth.automaton;
    const Automaton& sobs = safe.automaton;

    auto violation = [&](const std::string& what) {
        ++report.violations;
        if (report.messages.size() < 10)
            report.messages.push_back(what);
    };
    if (sobs.empty()) {
        violation("supervisor exists although the safe language is empty");
        return report;
    }
    auto safe_step = [&](std::optional<StateIndex> x, const std::string& e) -> std::optional<StateIndex> {
        auto ev = sobs.find_event(e);
        if (!x || !ev)
            return std::nullopt;
        return sobs.successor(*x, *ev);
    };

    // Exhaustive exploration of every permitted decision chain.
    using Key = std::tuple<StateIndex, StateIndex, StateIndex, unsigned>;
    std::map<Key, std::size_t> explored;  // remaining depth already covered
    std::function<void(StateIndex, StateIndex, StateIndex, unsigned, std::size_t, const Word&)> explore =
        [&](StateIndex s, StateIndex xt, StateIndex xs, unsigned erasures, std::size_t left, const Word& word) {
            ++report.sequences;
            if (left == 0)
                return;
            const Key key{s, xt, xs, erasures};
            if (auto it = explored.find(key); it != explored.end() && it->second >= left)
                return;
            explored[key] = left;
            for (const auto& tedge : tobs.out(xt)) {
                const std::string e(tobs.event_name(tedge.event));
                Word next_word = word;
                next_word.push_back(e);
                auto se = sup.find_event(e);
                auto z = se ? sup.successor(s, *se) : std::nullopt;
                if (!z) {
                    violation("totality: '" + format_word(next_word) + "' is not accepted");
                    continue;
                }
                // Depth-first over decision chains from the Z-side state.
                std::set<std::tuple<StateIndex, StateIndex, unsigned>> visited;
                std::function<void(StateIndex, StateIndex, unsigned)> decide = [&](StateIndex c, StateIndex x,
                                                                                  unsigned n) {
                    if (!visited.emplace(c, x, n).second)
                        return;
                    if (m.at_rest[c]) {
                        explore(c, tedge.target, x, n, left - 1, next_word);
                        return;
                    }
                    bool any = false;
                    for (const auto& edge : sup.out(c)) {
                        const auto ev = DecoratedEvent::parse(sup.event_name(edge.event));
                        any = true;
                        switch (ev.kind) {
                        case DecoratedEvent::Kind::insert:
                            if (auto y = safe_step(x, ev.base))
                                decide(edge.target, *y, 0);
                            else
                                violation("insertion of " + ev.base + " after '" + format_word(next_word) +
                                          "' leaves the safe language");
                            break;
                        case DecoratedEvent::Kind::stop:
                            decide(edge.target, x, 0);
                            break;
                        case DecoratedEvent::Kind::erase:
                            if (n + 1 > m.max_erasures)
                                violation("more than " + std::to_string(m.max_erasures) +
                                          " consecutive erasures after '" + format_word(next_word) + "'");
                            else
                                decide(edge.target, x, n + 1);
                            break;
                        case DecoratedEvent::Kind::deliver:
                            if (auto y = safe_step(x, ev.base))
                                decide(edge.target, *y, n);
                            else
                                violation("delivery of " + ev.base + " after '" + format_word(next_word) +
                                          "' leaves the safe language");
                            break;
                        case DecoratedEvent::Kind::drop:
                            decide(edge.target, x, n);
                            break;
                        case DecoratedEvent::Kind::system:
                            violation("system event inside a decision at " + sup.state(c).name);
                            break;
                        }
                    }
                    if (!any)
                        violation("decision stuck at " + sup.state(c).name);
                };
                decide(*z, xs, erasures);
            }
        };
    explore(sup.initial_states().front(), tobs.initial_states().front(), sobs.initial_states().front(), 0, depth + 1,
            {});

    // Pass-through session replay over every observable string.
    std::function<void(const Session&, StateIndex, std::size_t)> replay = [&](const Session& session, StateIndex xt,
                                                                              std::size_t left) {
        std::optional<StateIndex> x = sobs.initial_states().front();
        for (const auto& e : session.emitted())
            x = safe_step(x, e);
        if (!x)
            violation("pass-through output '" + format_word(session.emitted()) + "' for '" +
                      format_word(session.consumed()) + "' leaves the safe language");
        unsigned run = 0;
        for (const auto& name : session.trace()) {
            const auto ev = DecoratedEvent::parse(name);
            if (ev.kind == DecoratedEvent::Kind::erase && ++run > m.max_erasures)
                violation("pass-through run for '" + format_word(session.consumed()) + "' exceeds the erasure bound");
            else if (ev.kind == DecoratedEvent::Kind::insert || ev.kind == DecoratedEvent::Kind::stop)
                run = 0;
        }
        if (left == 0)
            return;
        for (const auto& tedge : tobs.out(xt)) {
            Session next = session;
            try {
                next.step(tobs.event_name(tedge.event));
            } catch (const std::exception& ex) {
                violation("pass-through session failed on '" + format_word(session.consumed()) + " " +
                          std::string(tobs.event_name(tedge.event)) + "': " + ex.what());
                continue;
            }
            replay(next, tedge.target, left - 1);
        }
    };
    replay(open_session(m, {}), tobs.initial_states().front(), depth);
    return report;
}

// ---------------------------------------------------------------------------
// Suites

namespace
{

struct OracleTally
{
    std::string name;
    std::size_t instances = 0;
    std::size_t passed = 0;
    std::size_t skipped = 0;  ///< draws with nothing to check
    std::size_t expected = 0;
    std::vector<std::uint64_t> failures;
};

RandomSpec spec_for(std::uint64_t seed, std::size_t states, std::size_t events, double tau)
{
    RandomSpec s;
    s.seed = seed;
    s.max_states = states;
    s.alphabet_size = events;
    s.tau_density = tau;
    s.secret_density = 0.25;
    s.transition_density = 0.45;
    return s;
}

void tally(OracleTally& t, std::uint64_t seed, bool ok)
{
    ++t.instances;
    if (ok)
        ++t.passed;
    else
        t.failures.push_back(seed);
}

}  // namespace

SuiteResult run_suite(const std::string& name, std::uint64_t seed)
{
    static const std::vector<std::string> known = {"observer-sync",  "desired-sync",   "abstraction",      "tpo-equivalence",
                                                   "supervisor-aes", "private-safety", "modular-inclusion"};
    std::vector<std::string> selected;
    if (name == "all")
        selected = known;
    else if (std::find(known.begin(), known.end(), name) != known.end())
        selected = {name};
    else
        throw InputError("unknown suite '" + name + "'");

    std::vector<OracleTally> tallies;
    for (const auto& suite : selected) {
        OracleTally t;
        t.name = suite;
        const auto index = static_cast<std::uint64_t>(std::find(known.begin(), known.end(), suite) - known.begin());
        std::mt19937_64 master(seed + (index + 1) * 0x9E3779B97F4A7C15ull);
        if (suite == "observer-sync" || suite == "desired-sync") {
            for (int i = 0; i < 200; ++i) {
                const auto s = master();
                auto [a, b] = random_pair(spec_for(s, 8, 4, 0.3));
                tally(t, s, suite == "observer-sync" ? check_observer_sync(a, b) : check_desired_observer_sync(a, b));
            }
        } else if (suite == "abstraction") {
            for (int i = 0; i < 100; ++i) {
                const auto s = master();
                const Automaton g = random_system(spec_for(s, 10, 3, 0.3));
                tally(t, s, check_abstraction_preserves_observer(g) && check_abstraction_preserves_desired(g));
            }
        } else if (suite == "tpo-equivalence") {
            for (int i = 0; i < 100; ++i) {
                const auto s = master();
                tally(t, s, check_tpo_abstraction_equivalence(random_system(spec_for(s, 8, 3, 0.3))));
            }
        } else if (suite == "supervisor-aes") {
            for (int i = 0; i < 100; ++i) {
                const auto s = master();
                const Automaton g = random_system(spec_for(s, 8, 3, 0.3));
                for (unsigned k = 0; k <= 2; ++k)
                    tally(t, s, check_supervisor_equals_aes(g, k));
            }
        } else if (suite == "private-safety") {
            t.expected = 51;
            auto safety = [](const std::vector<Automaton>& systems, std::size_t depth) -> std::optional<bool> {
                const auto m = build_modular_edit_structure(systems, {1, false});
                const SafetyReport r = check_private_safety(m, systems, depth);
                if (r.empty)
                    return std::nullopt;
                return r.violations == 0;
            };
            tally(t, 0, safety(reference_system(), 8).value_or(false));
            // random pairs are drawn until 50 admit an edit function
            for (int draws = 0; t.instances < 51 && draws < 1000; ++draws) {
                const auto s = master();
                auto [a, b] = random_pair(spec_for(s, 4, 3, 0.25));
                if (auto ok = safety({a, b}, 6))
                    tally(t, s, *ok);
                else
                    ++t.skipped;
            }
        } else if (suite == "modular-inclusion") {
            t.expected = 51;
            auto inclusion = [](const std::vector<Automaton>& systems) -> std::optional<bool> {
                auto direct = check_modular_inclusion(systems, 12, false);
                auto abstracted = check_modular_inclusion(systems, 12, true);
                if (!direct || !abstracted)
                    return std::nullopt;
                return *direct && *abstracted;
            };
            tally(t, 0, inclusion(reference_system()).value_or(false));
            for (int draws = 0; t.instances < 51 && draws < 1000; ++draws) {
                const auto s = master();
                auto [a, b] = random_pair(spec_for(s, 6, 3, 0.25));
                if (auto ok = inclusion({a, b}))
                    tally(t, s, *ok);
                else
                    ++t.skipped;
            }
        }
        tallies.push_back(std::move(t));
    }

    SuiteResult result;
    nlohmann::ordered_json doc;
    doc["suite"] = name;
    doc["seed"] = seed;
    doc["oracles"] = nlohmann::ordered_json::array();
    for (const auto& t : tallies) {
        const bool ok = t.passed == t.instances && t.instances >= t.expected;
        result.passed = result.passed && ok;
        std::string line = t.name + ": " + std::to_string(t.passed) + "/" + std::to_string(t.instances) + " " +
                           (ok ? "PASS" : "FAIL");
        if (t.skipped)
            line += " (" + std::to_string(t.skipped) + " unenforceable draws skipped)";
        result.lines.push_back(std::move(line));
        doc["oracles"].push_back({{"name", t.name},
                                  {"instances", t.instances},
                                  {"passed", t.passed},
                                  {"skipped", t.skipped},
                                  {"failing_seeds", t.failures}});
    }
    doc["passed"] = result.passed;
    result.json = doc.dump(2) + "\n";
    return result;
}

}  // namespace edsynth
