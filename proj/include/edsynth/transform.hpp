#pragma once

#include "edsynth/automaton.hpp"
#include "edsynth/tpo.hpp"

#include <functional>
#include <set>
#include <string>
#include <vector>

namespace edsynth
{

/// Event of a transformed automaton: a base symbol plus the edit role and context.
///
/// Spellings: system `e`, insert `ins:θ@c`, stop `stop@c`, erase `erz:e@e`,
/// deliver `out:e@e`, deliver-erased `drop:e@e`. For stop events `base` equals
/// the context.
struct DecoratedEvent
{
    enum class Kind { system, insert, stop, erase, deliver, drop };

    Kind kind = Kind::system;
    std::string base;
    std::string context;

    static DecoratedEvent system(std::string e) { return {Kind::system, std::move(e), {}}; }
    static DecoratedEvent insert(std::string theta, std::string c) { return {Kind::insert, std::move(theta), std::move(c)}; }
    static DecoratedEvent stop(std::string c) { return {Kind::stop, c, c}; }
    static DecoratedEvent erase(std::string e) { return {Kind::erase, e, e}; }
    static DecoratedEvent deliver(std::string e) { return {Kind::deliver, e, e}; }
    static DecoratedEvent drop(std::string e) { return {Kind::drop, e, e}; }

    std::string to_string() const;
    /// Names without a recognised decoration are system events.
    static DecoratedEvent parse(std::string_view name);

    /// Insert, stop and erase decisions are controllable.
    bool controllable() const { return kind == Kind::insert || kind == Kind::stop || kind == Kind::erase; }
    bool is_decision() const { return controllable(); }
    /// The TPO move this event encodes.
    Move move() const;

    auto operator<=>(const DecoratedEvent&) const = default;
};

/// Result of renaming: an observable event, ε, or an erasure symbol `e→ε`.
struct EditSymbol
{
    enum class Kind { event, epsilon, erasure };

    Kind kind = Kind::epsilon;
    std::string event;

    std::string to_string() const;
    bool operator==(const EditSymbol&) const = default;
};

EditSymbol rename(const DecoratedEvent& e);

/// "move:symbol" label shared by TPO and transformed-automaton comparisons.
std::string move_label(const DecoratedEvent& e);

/// Deterministic automaton over decorated events whose states mirror a TPO's
/// states index for index. Y states are marked.
struct TransformedAutomaton
{
    Automaton automaton;
    Tpo source;

    Player origin(StateIndex s) const { return source.state(s).player; }
};

TransformedAutomaton transform_monolithic(const Tpo& t);

/// Adds self-loops at Y states for events of other components and enlarges each
/// alphabet with the decorated shared events that carry a foreign local context.
std::vector<TransformedAutomaton> transform_modular(const std::vector<Tpo>& tpos,
                                                    const std::vector<std::set<std::string>>& alphabets);

/// Every insertion event the augmentation below may introduce.
std::set<std::string> augmentation_events(const std::vector<TransformedAutomaton>& components);

/// Product of the components followed by `extra` automata (such as the
/// constraint), extended with insertions the components cannot produce jointly:
/// the components at a Z state insert σ while components at a Y state that know
/// σ advance their desired-observer estimate. Tuples reached this way are
/// explored like any other.
SyncProduct augment_missing_insertions(const std::vector<TransformedAutomaton>& components,
                                       std::span<const Automaton* const> extra, const TupleNamer& namer);

/// Labelled graph of a transformed automaton or any product whose event names
/// are decorated; tags come from `tag_of`.
LabeledGraph decorated_graph(const Automaton& a, const std::function<std::string(StateIndex)>& tag_of);

}  // namespace edsynth
