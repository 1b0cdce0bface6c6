#pragma once

#include "edsynth/synthesis.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace edsynth
{

struct Policy
{
    enum class Kind { pass_through_preferred, first_lexicographic, seeded_random };

    Kind kind = Kind::pass_through_preferred;
    std::uint64_t seed = 0;
    /// Insertions allowed per step before falling back to the pass-through chain;
    /// 0 selects twice the number of decision states.
    std::size_t insertion_budget = 0;

    /// Accepts "pass-through-preferred", "first-lexicographic" and "seeded-random".
    static Policy parse(std::string_view name, std::uint64_t seed = 0);
};

struct StepResult
{
    Word output;
    std::vector<std::string> decisions;
};

struct SessionTrace
{
    Word consumed;
    Word emitted;
    std::vector<std::string> trace;
};

/// Edit function extracted from a modular edit structure, stepped one genuine
/// event at a time. The structure must outlive the session.
class Session
{
public:
    Session(const ModularEditStructure& structure, Policy policy);

    /// Fires `event`, then a decision chain taken from `overrides` and completed
    /// by the policy, then the delivery. Overrides may be decorated names or the
    /// shorthands "stop", "erase" and "ins:θ". On error the session is unchanged.
    StepResult step(std::string_view event, const std::vector<std::string>& overrides = {});

    StateIndex current() const { return current_; }
    const std::string& current_name() const;
    const Word& consumed() const { return consumed_; }
    const Word& emitted() const { return emitted_; }
    const std::vector<std::string>& trace() const { return trace_; }

private:
    std::vector<EventIndex> pass_through_chain(StateIndex from) const;
    std::vector<EventIndex> policy_chain(StateIndex from);

    const ModularEditStructure* structure_;
    Policy policy_;
    std::mt19937_64 rng_;
    StateIndex current_ = 0;
    Word consumed_;
    Word emitted_;
    std::vector<std::string> trace_;
};

Session open_session(const ModularEditStructure& structure, Policy policy = {});
SessionTrace session_trace(const Session& session);

}  // namespace edsynth
