#pragma once

#include "edsynth/automaton.hpp"

#include <vector>

namespace edsynth
{

/// Sorted, duplicate-free list of states of an underlying automaton.
using StateSet = std::vector<StateIndex>;

/// Smallest superset of `states` closed under tau transitions.
StateSet unobservable_reach(const Automaton& a, const StateSet& states);

/// Deterministic observer; `estimates[s]` holds the members of observer state `s`.
///
/// An observer state is secret iff its estimate is secret-only, and marked iff
/// some member is marked.
struct Observer
{
    Automaton automaton;
    std::vector<StateSet> estimates;
};

/// Subset construction over observable events; estimate names list sorted member names.
Observer determinize(const Automaton& a);

/// Removes secret-only estimates and keeps the accessible part.
Observer desired_observer(const Observer& o);

struct OpacityWitness
{
    Word word;
    std::string estimate;
};

struct OpacityReport
{
    bool opaque = true;
    std::vector<OpacityWitness> witnesses;
};

/// One shortest witness per secret-only estimate, by breadth-first search with
/// events tried in name order.
OpacityReport check_current_state_opacity(const Automaton& a);

}  // namespace edsynth
