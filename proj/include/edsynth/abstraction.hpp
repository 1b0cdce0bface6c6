#pragma once

#include "edsynth/automaton.hpp"
#include "edsynth/estimation.hpp"

namespace edsynth
{

/// Coarsest partition that is stable under weak transitions (single observable
/// events and the empty string, both over the tau closure) and never mixes
/// secret and non-secret states.
Partition opaque_observation_equivalence_partition(const Automaton& a);

/// Coarsest strong bisimulation; tau is treated as an ordinary label.
Partition bisimulation_partition(const Automaton& a);

/// Coarsest strong bisimulation of an observer that keeps secret-only
/// estimates apart from the rest.
Partition opaque_bisimulation_partition(const Observer& o);

/// Quotient of an observer; a block's estimate is the union of its members' estimates.
Observer quotient_observer(const Observer& o, const Partition& p);

struct AbstractionBundle
{
    Automaton abstracted;  ///< quotient by opaque observation equivalence
    Observer h_ob;         ///< observer of `abstracted` modulo opaque bisimulation
    Observer h_b;          ///< observer of `abstracted` modulo bisimulation
    Observer h_obd;        ///< desired observer of `h_ob`
};

AbstractionBundle abstract_component(const Automaton& g);

}  // namespace edsynth
