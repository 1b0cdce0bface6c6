#pragma once

#include "edsynth/abstraction.hpp"
#include "edsynth/automaton.hpp"
#include "edsynth/constraint.hpp"
#include "edsynth/transform.hpp"

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace edsynth
{

/// Raised when no opacity-enforcing edit function exists.
class UnenforceableError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Product of transformed components and the constraint; the constraint is the
/// last entry of every tuple. States are named "(c1|c2|…|K:xj)".
SyncProduct product_plant(const std::vector<TransformedAutomaton>& components, const Automaton& constraint,
                          bool augment = false);

struct SupervisorResult
{
    Automaton supervisor;
    std::vector<StateIndex> plant_state;  ///< supervisor state -> plant state
    std::vector<std::string> log;
};

/// Largest controllable and nonblocking subautomaton. Each pass removes
/// blocking states, then states with an uncontrollable edge into a removed
/// state, then unreachable states.
SupervisorResult supremal_controllable_nonblocking(const Automaton& plant);

struct ModularEditStructure
{
    std::vector<TransformedAutomaton> components;  ///< empty when loaded from a document
    std::vector<std::set<std::string>> alphabets;  ///< system alphabet of each component
    Automaton constraint;
    Automaton supervisor;
    std::vector<std::vector<std::string>> tuples;  ///< component state names, constraint last
    std::vector<bool> at_rest;                     ///< every component at a Y state
    std::size_t plant_states = 0;
    std::vector<std::string> log;
    unsigned max_erasures = 0;
    std::string diagnostic;  ///< empty unless synthesis failed
};

struct SynthesisOptions
{
    unsigned max_erasures = 1;
    bool augment = false;
};

/// Runs the whole pipeline; failures are reported through `diagnostic` with an
/// empty supervisor.
ModularEditStructure build_modular_edit_structure(const std::vector<Automaton>& systems, const SynthesisOptions& options);

/// As above but throws UnenforceableError on failure.
ModularEditStructure synthesize_modular_edit_structure(const std::vector<Automaton>& systems,
                                                       const SynthesisOptions& options);

/// Alphabet of each system as a set of names.
std::vector<std::set<std::string>> system_alphabets(const std::vector<Automaton>& systems);

}  // namespace edsynth
