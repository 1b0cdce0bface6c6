#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace edsynth
{

using StateIndex = std::uint32_t;
using EventIndex = std::uint32_t;

/// Sentinel index for the unobservable event. It is never part of an alphabet.
inline constexpr EventIndex kTau = std::numeric_limits<EventIndex>::max();
inline constexpr std::string_view kTauName = "tau";

/// Malformed or inconsistent input: bad documents, flag conflicts, bad references.
class InputError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A sequence of event names.
using Word = std::vector<std::string>;

/// Joins a word with single spaces; the empty word prints as "ε".
std::string format_word(const Word& word);

struct EventInfo
{
    std::string name;
    bool controllable = true;

    bool operator==(const EventInfo&) const = default;
};

struct StateInfo
{
    std::string name;
    bool initial = false;
    bool marked = false;
    bool secret = false;

    bool operator==(const StateInfo&) const = default;
};

struct Edge
{
    EventIndex event;
    StateIndex target;

    auto operator<=>(const Edge&) const = default;
};

/// Finite automaton with tau transitions and per-state initial/marked/secret flags.
///
/// States and events are addressed by dense indices and carry unique names. The
/// alphabet holds observable events only; tau transitions use `kTau`.
class Automaton
{
public:
    Automaton() = default;
    explicit Automaton(std::string name) : name_(std::move(name)) {}

    const std::string& name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    /// Adds an event or returns the existing one. Re-declaring with a different
    /// controllability flag or declaring "tau" throws InputError.
    EventIndex add_event(const std::string& name, bool controllable = true);
    std::optional<EventIndex> find_event(std::string_view name) const;
    const EventInfo& event(EventIndex e) const { return events_.at(e); }
    std::span<const EventInfo> events() const { return events_; }
    std::size_t num_events() const { return events_.size(); }
    /// Name of an event index, "tau" for kTau.
    std::string_view event_name(EventIndex e) const;

    StateIndex add_state(StateInfo info);
    std::optional<StateIndex> find_state(std::string_view name) const;
    const StateInfo& state(StateIndex s) const { return states_.at(s); }
    std::size_t num_states() const { return states_.size(); }
    void set_initial(StateIndex s, bool value = true) { states_.at(s).initial = value; }
    void set_marked(StateIndex s, bool value = true) { states_.at(s).marked = value; }
    void set_secret(StateIndex s, bool value = true) { states_.at(s).secret = value; }

    void add_transition(StateIndex from, EventIndex event, StateIndex to);
    /// Convenience for tests and fixtures; "tau" is accepted as the event name.
    void add_transition(std::string_view from, std::string_view event, std::string_view to);

    /// Outgoing edges sorted by (event, target); tau edges sort last.
    std::span<const Edge> out(StateIndex s) const { return out_.at(s); }
    std::vector<StateIndex> successors(StateIndex s, EventIndex e) const;
    std::optional<StateIndex> successor(StateIndex s, EventIndex e) const;
    std::size_t num_transitions() const;

    std::vector<StateIndex> initial_states() const;
    bool empty() const { return states_.empty(); }
    bool has_tau() const;
    /// One initial state, no tau, no two equally labelled edges from a state.
    bool is_deterministic() const;

private:
    std::string name_;
    std::vector<EventInfo> events_;
    std::map<std::string, EventIndex, std::less<>> event_index_;
    std::vector<StateInfo> states_;
    std::map<std::string, StateIndex, std::less<>> state_index_;
    std::vector<std::vector<Edge>> out_;
};

/// Equivalence relation over the states of one automaton.
struct Partition
{
    std::vector<std::size_t> block_of;
    std::vector<std::vector<StateIndex>> blocks;

    static Partition identity(std::size_t num_states);
    /// Validates disjointness and coverage of `0..num_states-1`.
    static Partition from_blocks(std::size_t num_states, std::vector<std::vector<StateIndex>> blocks);
    /// Builds blocks from a block id per state; ids are renumbered by first occurrence.
    static Partition from_labels(std::span<const std::size_t> labels);

    std::size_t size() const { return blocks.size(); }
    bool same_block(StateIndex a, StateIndex b) const { return block_of.at(a) == block_of.at(b); }
};

/// Result of an n-ary synchronous product; `tuples[s]` lists the component states of `s`.
struct SyncProduct
{
    Automaton automaton;
    std::vector<std::vector<StateIndex>> tuples;
};

using TupleNamer = std::function<std::string(std::span<const StateIndex>)>;

/// Additional product edge proposed by a caller for a given tuple.
struct ExtraMove
{
    EventInfo event;
    std::vector<StateIndex> target;
};
using ExtraMoves = std::function<std::vector<ExtraMove>(std::span<const StateIndex>)>;

/// Lock-step product of any number of automata, restricted to reachable tuples.
/// Shared events move jointly, private events and tau interleave. A tuple is
/// initial/marked iff all components are and secret iff any component is.
/// `extra`, when set, may add edges that no component rule produces.
SyncProduct synchronous_product(std::span<const Automaton* const> parts, const TupleNamer& namer,
                                const ExtraMoves& extra = {});

Automaton sync_compose(const Automaton& a, const Automaton& b);

Automaton quotient(const Automaton& a, const Partition& p);

/// State identity is by name.
bool is_subautomaton(const Automaton& a, const Automaton& b);

Word project(const Word& word, const std::set<std::string, std::less<>>& keep);
/// Drops every "tau" from a word.
Word project_tau(const Word& word);

/// All tau-abstracted words of length at most `n`.
std::set<Word> language_upto(const Automaton& a, std::size_t n);

/// Compares deterministic automata by canonical breadth-first renumbering
/// (events in name order). Throws InputError on nondeterministic input.
bool deterministic_isomorphic(const Automaton& a, const Automaton& b);

/// Keeps the states flagged in `keep` that are reachable from a kept initial state.
Automaton restrict_states(const Automaton& a, const std::vector<bool>& keep,
                          std::vector<StateIndex>* origin = nullptr);
Automaton trim_reachable(const Automaton& a);

std::vector<bool> reachable_states(const Automaton& a);
/// States from which some marked state is reachable.
std::vector<bool> coreachable_states(const Automaton& a);

}  // namespace edsynth
