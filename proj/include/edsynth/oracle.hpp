#pragma once

#include "edsynth/automaton.hpp"
#include "edsynth/synthesis.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace edsynth
{

struct RandomSpec
{
    std::uint64_t seed = 0;
    std::size_t max_states = 6;
    std::size_t alphabet_size = 3;
    double tau_density = 0.2;
    double secret_density = 0.25;
    double transition_density = 0.4;
};

/// Seed-deterministic automaton with events e0, e1, ...; state 0 is initial and
/// every state is marked. Reachable part only.
Automaton random_system(const RandomSpec& spec);

/// Two automata drawing their alphabets from a common pool a, b, c, ...
std::pair<Automaton, Automaton> random_pair(const RandomSpec& spec);

/// The two-component reference system used throughout the tests.
std::vector<Automaton> reference_system();

bool check_observer_sync(const Automaton& a, const Automaton& b);
bool check_desired_observer_sync(const Automaton& a, const Automaton& b);

/// det(G) and det(G̃) bisimilar, and so are their desired observers.
bool check_abstraction_preserves_observer(const Automaton& g);
/// det_d(G) bisimilar to the desired observer of the opaque-bisimulation quotient.
bool check_abstraction_preserves_desired(const Automaton& g);

/// The largest TPO built from (det_d(G), det(G)) and from the abstraction admit the same runs.
bool check_tpo_abstraction_equivalence(const Automaton& g);

/// supCN of the transformed TPO with the constraint equals the pruned TPO, modulo renaming.
bool check_supervisor_equals_aes(const Automaton& g, unsigned k);

/// Every product trace of the transformed components maps to a run of the
/// monolithic largest TPO of the composed system. Empty when some component
/// has an empty desired observer, where the pipeline stops before transforming.
std::optional<bool> check_modular_inclusion(const std::vector<Automaton>& systems, std::size_t depth,
                                            bool abstracted);

struct SafetyReport
{
    bool empty = false;
    std::size_t sequences = 0;
    std::size_t violations = 0;
    std::vector<std::string> messages;  ///< first few violations
};

/// Replays every observable string of the composed system up to `depth`, both
/// through a pass-through session and through every decision chain the
/// supervisor allows, checking the edited output against the safe language,
/// the erasure bound and totality.
SafetyReport check_private_safety(const ModularEditStructure& m, const std::vector<Automaton>& systems,
                                  std::size_t depth);

struct SuiteResult
{
    bool passed = true;
    std::vector<std::string> lines;
    std::string json;
};

/// Suites: observer-sync, desired-sync, abstraction, tpo-equivalence,
/// supervisor-aes, private-safety, modular-inclusion, all.
SuiteResult run_suite(const std::string& name, std::uint64_t seed);

}  // namespace edsynth
