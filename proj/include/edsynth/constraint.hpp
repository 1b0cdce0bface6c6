#pragma once

#include "edsynth/automaton.hpp"

#include <set>
#include <string>

namespace edsynth
{

struct ConstraintSpec
{
    unsigned max_erasures = 0;
    /// Decorated decision events (insert, stop, erase) to constrain.
    std::set<std::string> decisions;
};

/// Chain x1..x{k+2}: erasures step forward, insertions and stops return to x1.
/// x{k+2} is unmarked and has no outgoing transitions. Throws InputError when
/// the decision set is empty, holds a non-decision event, or the chain would
/// exceed `state_budget` states.
Automaton build_constraint_automaton(const ConstraintSpec& spec, std::size_t state_budget = 100000);

/// Decision events of the given automata.
std::set<std::string> decision_events(std::span<const Automaton* const> parts);

}  // namespace edsynth
