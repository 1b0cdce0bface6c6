#pragma once

#include "edsynth/automaton.hpp"
#include "edsynth/estimation.hpp"
#include "edsynth/labeled_graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace edsynth
{

enum class Player { Y, Z, W };
enum class Move { yz, zz, zw1, zw2, wy1, wy2 };

std::string_view to_string(Player p);
std::string_view to_string(Move m);

/// A state of a three-player observer.
///
/// `intruder` indexes the desired observer and is empty only when that observer
/// is empty. `event` is the pending observable event of Z and W states; a W
/// state with `erased` set carries the action `event→ε`. `erasures` is the
/// consecutive-erasure annotation added by pruning (-1 when absent).
struct TpoState
{
    Player player = Player::Y;
    std::optional<StateIndex> intruder;
    StateIndex truth = 0;
    EventIndex event = kTau;
    bool erased = false;
    int erasures = -1;

    auto operator<=>(const TpoState&) const = default;
};

/// `label` is the inserted event for zz, kTau (ε) for zw1 and the pending event otherwise.
struct TpoEdge
{
    Move move;
    EventIndex label;
    StateIndex target;
};

/// Three-player observer over the alphabet of its true-estimate observer.
/// State 0 is the initial Y state unless the structure is empty.
class Tpo
{
public:
    Tpo() = default;
    Tpo(Observer desired, Observer observer);

    const Observer& desired() const { return desired_; }
    const Observer& observer() const { return observer_; }
    /// Event names; indices match the observer's alphabet.
    const Automaton& alphabet() const { return observer_.automaton; }

    std::size_t num_states() const { return states_.size(); }
    bool empty() const { return states_.empty(); }
    const TpoState& state(StateIndex s) const { return states_.at(s); }
    std::span<const TpoEdge> out(StateIndex s) const { return edges_.at(s); }
    std::optional<StateIndex> find(const TpoState& s) const;
    std::size_t num_edges() const;

    std::string state_name(StateIndex s) const;
    /// "ε", "θ", or "e→ε" depending on the move.
    std::string edge_label(const TpoEdge& e) const;

    StateIndex add_state(const TpoState& s);
    void add_edge(StateIndex from, TpoEdge edge);

    /// Translates an observer event index to the desired observer's index.
    std::optional<EventIndex> desired_event(EventIndex e) const { return to_desired_.at(e); }

private:
    Observer desired_;
    Observer observer_;
    std::vector<std::optional<EventIndex>> to_desired_;
    std::vector<TpoState> states_;
    std::vector<std::vector<TpoEdge>> edges_;
    std::map<TpoState, StateIndex> index_;
};

/// Forward exploration from (x_d0, x_f0) adding every admissible transition.
Tpo build_largest_tpo(const Observer& desired, const Observer& observer);

struct RunStep
{
    Move move;
    std::string event;  ///< empty for zw1
};
using Run = std::vector<RunStep>;

/// Edited output of a run: inserted events and delivered events, erasures dropped.
Word run_string(const Run& run);
/// Genuine events of a run.
Word edit_projection(const Run& run);
/// Throws InputError when the steps do not follow yz zz* (zw1 wy1 | zw2 wy2).
void validate_run(const Run& run);
/// True iff the run can be followed from the initial state of `t`.
bool is_run_of(const Tpo& t, const Run& run);

/// No deadlocking Z or W state, and every word of `g` up to `depth` is the edit
/// projection of some run.
bool check_complete(const Tpo& t, const Automaton& g, std::size_t depth);

/// Drops states that would need more than `k` consecutive erasures, then
/// repeatedly removes deadlocking Z and W states and Y states that lead into a
/// removed Z state, then trims. Resulting states carry their erasure count.
Tpo prune_to_aes(const Tpo& t, unsigned k);

/// Labels are "move:symbol" with the symbol as in `edge_label`; tags are the player.
LabeledGraph to_labeled_graph(const Tpo& t);

}  // namespace edsynth
