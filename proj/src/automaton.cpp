#include "edsynth/automaton.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <tuple>

namespace edsynth
{

std::string format_word(const Word& word)
{
    if (word.empty())
        return "ε";
    std::string out;
    for (const auto& e : word) {
        if (!out.empty())
            out += ' ';
        out += e;
    }
    return out;
}

EventIndex Automaton::add_event(const std::string& name, bool controllable)
{
    if (name == kTauName)
        throw InputError("event name 'tau' is reserved for the unobservable event");
    if (name.empty())
        throw InputError("event names must be nonempty");
    if (auto it = event_index_.find(name); it != event_index_.end()) {
        if (events_[it->second].controllable != controllable)
            throw InputError("event '" + name + "' declared with conflicting controllability");
        return it->second;
    }
    const auto idx = static_cast<EventIndex>(events_.size());
    events_.push_back({name, controllable});
    event_index_.emplace(name, idx);
    return idx;
}

std::optional<EventIndex> Automaton::find_event(std::string_view name) const
{
    if (auto it = event_index_.find(name); it != event_index_.end())
        return it->second;
    return std::nullopt;
}

std::string_view Automaton::event_name(EventIndex e) const
{
    if (e == kTau)
        return kTauName;
    return events_.at(e).name;
}

StateIndex Automaton::add_state(StateInfo info)
{
    if (info.name.empty())
        throw InputError("state names must be nonempty");
    if (state_index_.contains(info.name))
        throw InputError("duplicate state '" + info.name + "'");
    const auto idx = static_cast<StateIndex>(states_.size());
    state_index_.emplace(info.name, idx);
    states_.push_back(std::move(info));
    out_.emplace_back();
    return idx;
}

std::optional<StateIndex> Automaton::find_state(std::string_view name) const
{
    if (auto it = state_index_.find(name); it != state_index_.end())
        return it->second;
    return std::nullopt;
}

void Automaton::add_transition(StateIndex from, EventIndex event, StateIndex to)
{
    if (from >= states_.size() || to >= states_.size())
        throw InputError("transition endpoint out of range");
    if (event != kTau && event >= events_.size())
        throw InputError("transition label out of range");
    auto& edges = out_[from];
    const Edge edge{event, to};
    auto it = std::lower_bound(edges.begin(), edges.end(), edge);
    if (it == edges.end() || *it != edge)
        edges.insert(it, edge);
}

void Automaton::add_transition(std::string_view from, std::string_view event, std::string_view to)
{
    auto src = find_state(from);
    auto dst = find_state(to);
    if (!src || !dst)
        throw InputError("unknown state in transition " + std::string(from) + " -> " + std::string(to));
    EventIndex e = kTau;
    if (event != kTauName) {
        auto found = find_event(event);
        if (!found)
            throw InputError("unknown event '" + std::string(event) + "'");
        e = *found;
    }
    add_transition(*src, e, *dst);
}

std::vector<StateIndex> Automaton::successors(StateIndex s, EventIndex e) const
{
    std::vector<StateIndex> result;
    const auto& edges = out_.at(s);
    auto it = std::lower_bound(edges.begin(), edges.end(), Edge{e, 0});
    for (; it != edges.end() && it->event == e; ++it)
        result.push_back(it->target);
    return result;
}

std::optional<StateIndex> Automaton::successor(StateIndex s, EventIndex e) const
{
    const auto& edges = out_.at(s);
    auto it = std::lower_bound(edges.begin(), edges.end(), Edge{e, 0});
    if (it != edges.end() && it->event == e)
        return it->target;
    return std::nullopt;
}

std::size_t Automaton::num_transitions() const
{
    std::size_t n = 0;
    for (const auto& edges : out_)
        n += edges.size();
    return n;
}

std::vector<StateIndex> Automaton::initial_states() const
{
    std::vector<StateIndex> result;
    for (StateIndex s = 0; s < states_.size(); ++s)
        if (states_[s].initial)
            result.push_back(s);
    return result;
}

bool Automaton::has_tau() const
{
    for (const auto& edges : out_)
        if (!edges.empty() && edges.back().event == kTau)
            return true;
    return false;
}

bool Automaton::is_deterministic() const
{
    if (initial_states().size() != 1)
        return false;
    for (const auto& edges : out_) {
        for (std::size_t i = 0; i < edges.size(); ++i) {
            if (edges[i].event == kTau)
                return false;
            if (i > 0 && edges[i - 1].event == edges[i].event)
                return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Partition

Partition Partition::identity(std::size_t num_states)
{
    Partition p;
    p.block_of.resize(num_states);
    for (std::size_t s = 0; s < num_states; ++s) {
        p.block_of[s] = s;
        p.blocks.push_back({static_cast<StateIndex>(s)});
    }
    return p;
}

Partition Partition::from_blocks(std::size_t num_states, std::vector<std::vector<StateIndex>> blocks)
{
    Partition p;
    p.block_of.assign(num_states, std::numeric_limits<std::size_t>::max());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].empty())
            throw InputError("partition contains an empty block");
        std::sort(blocks[b].begin(), blocks[b].end());
        for (auto s : blocks[b]) {
            if (s >= num_states)
                throw InputError("partition refers to an unknown state");
            if (p.block_of[s] != std::numeric_limits<std::size_t>::max())
                throw InputError("partition blocks are not disjoint");
            p.block_of[s] = b;
        }
    }
    for (auto b : p.block_of)
        if (b == std::numeric_limits<std::size_t>::max())
            throw InputError("partition does not cover every state");
    p.blocks = std::move(blocks);
    return p;
}

Partition Partition::from_labels(std::span<const std::size_t> labels)
{
    Partition p;
    std::map<std::size_t, std::size_t> renumber;
    p.block_of.resize(labels.size());
    for (std::size_t s = 0; s < labels.size(); ++s) {
        auto [it, fresh] = renumber.emplace(labels[s], renumber.size());
        if (fresh)
            p.blocks.emplace_back();
        p.block_of[s] = it->second;
        p.blocks[it->second].push_back(static_cast<StateIndex>(s));
    }
    return p;
}

// ---------------------------------------------------------------------------
// Composition

SyncProduct synchronous_product(std::span<const Automaton* const> parts, const TupleNamer& namer,
                                const ExtraMoves& extra)
{
    SyncProduct result;
    Automaton& prod = result.automaton;
    const std::size_t n = parts.size();

    // Global alphabet and per-part local index of each global event.
    std::vector<std::vector<std::optional<EventIndex>>> local;  // [global][part]
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& ev : parts[i]->events()) {
            auto g = prod.find_event(ev.name);
            if (g && prod.event(*g).controllable != ev.controllable)
                throw InputError("event '" + ev.name + "' has conflicting controllability across components");
            EventIndex gi = prod.add_event(ev.name, ev.controllable);
            if (gi >= local.size())
                local.resize(gi + 1, std::vector<std::optional<EventIndex>>(n));
            local[gi][i] = *parts[i]->find_event(ev.name);
        }
    }
    std::vector<std::vector<EventIndex>> to_global(n);
    for (std::size_t i = 0; i < n; ++i) {
        to_global[i].resize(parts[i]->num_events());
        for (EventIndex g = 0; g < local.size(); ++g)
            if (local[g][i])
                to_global[i][*local[g][i]] = g;
    }

    std::map<std::vector<StateIndex>, StateIndex> index;
    std::deque<StateIndex> queue;
    auto intern = [&](std::vector<StateIndex> tuple, bool initial) {
        if (auto it = index.find(tuple); it != index.end())
            return it->second;
        StateInfo info;
        info.name = namer(tuple);
        info.initial = initial;
        info.marked = true;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& st = parts[i]->state(tuple[i]);
            info.marked = info.marked && st.marked;
            info.secret = info.secret || st.secret;
        }
        StateIndex s = prod.add_state(std::move(info));
        index.emplace(tuple, s);
        result.tuples.push_back(std::move(tuple));
        queue.push_back(s);
        return s;
    };

    // Cartesian product of initial states.
    {
        std::vector<std::vector<StateIndex>> inits(n);
        for (std::size_t i = 0; i < n; ++i) {
            inits[i] = parts[i]->initial_states();
            if (inits[i].empty())
                return result;
        }
        std::vector<std::size_t> pos(n, 0);
        while (true) {
            std::vector<StateIndex> tuple(n);
            for (std::size_t i = 0; i < n; ++i)
                tuple[i] = inits[i][pos[i]];
            intern(std::move(tuple), true);
            std::size_t i = 0;
            while (i < n && ++pos[i] == inits[i].size())
                pos[i++] = 0;
            if (i == n)
                break;
        }
    }

    while (!queue.empty()) {
        const StateIndex s = queue.front();
        queue.pop_front();
        const std::vector<StateIndex> tuple = result.tuples[s];

        // Candidate global events: those on some component edge.
        std::set<EventIndex> candidates;
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& edge : parts[i]->out(tuple[i]))
                if (edge.event != kTau)
                    candidates.insert(to_global[i][edge.event]);

        for (EventIndex g : candidates) {
            std::vector<std::vector<StateIndex>> options(n);
            bool enabled = true;
            for (std::size_t i = 0; i < n && enabled; ++i) {
                if (local[g][i]) {
                    options[i] = parts[i]->successors(tuple[i], *local[g][i]);
                    enabled = !options[i].empty();
                } else {
                    options[i] = {tuple[i]};
                }
            }
            if (!enabled)
                continue;
            std::vector<std::size_t> pos(n, 0);
            while (true) {
                std::vector<StateIndex> next(n);
                for (std::size_t i = 0; i < n; ++i)
                    next[i] = options[i][pos[i]];
                StateIndex t = intern(std::move(next), false);
                prod.add_transition(s, g, t);
                std::size_t i = 0;
                while (i < n && ++pos[i] == options[i].size())
                    pos[i++] = 0;
                if (i == n)
                    break;
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (StateIndex y : parts[i]->successors(tuple[i], kTau)) {
                std::vector<StateIndex> next = tuple;
                next[i] = y;
                StateIndex t = intern(std::move(next), false);
                prod.add_transition(s, kTau, t);
            }
        }
        if (extra) {
            for (auto& move : extra(tuple)) {
                EventIndex g = prod.add_event(move.event.name, move.event.controllable);
                StateIndex t = intern(std::move(move.target), false);
                prod.add_transition(s, g, t);
            }
        }
    }
    return result;
}

Automaton sync_compose(const Automaton& a, const Automaton& b)
{
    const Automaton* parts[] = {&a, &b};
    auto product = synchronous_product(parts, [&](std::span<const StateIndex> t) {
        return "(" + a.state(t[0]).name + "," + b.state(t[1]).name + ")";
    });
    product.automaton.set_name(a.name() + "||" + b.name());
    return std::move(product.automaton);
}

// ---------------------------------------------------------------------------
// Quotient and comparison

Automaton quotient(const Automaton& a, const Partition& p)
{
    if (p.block_of.size() != a.num_states())
        throw InputError("partition does not cover the automaton's states");
    Automaton q(a.name());
    for (const auto& ev : a.events())
        q.add_event(ev.name, ev.controllable);
    for (const auto& block : p.blocks) {
        StateInfo info;
        if (block.size() == 1) {
            info.name = a.state(block.front()).name;
        } else {
            info.name = "[";
            for (std::size_t i = 0; i < block.size(); ++i)
                info.name += (i ? "," : "") + a.state(block[i]).name;
            info.name += "]";
        }
        for (auto s : block) {
            const auto& st = a.state(s);
            info.initial = info.initial || st.initial;
            info.marked = info.marked || st.marked;
            info.secret = info.secret || st.secret;
        }
        q.add_state(std::move(info));
    }
    for (StateIndex s = 0; s < a.num_states(); ++s)
        for (const auto& edge : a.out(s))
            q.add_transition(static_cast<StateIndex>(p.block_of[s]), edge.event,
                             static_cast<StateIndex>(p.block_of[edge.target]));
    return q;
}

bool is_subautomaton(const Automaton& a, const Automaton& b)
{
    for (StateIndex s = 0; s < a.num_states(); ++s) {
        const auto& sa = a.state(s);
        auto t = b.find_state(sa.name);
        if (!t)
            return false;
        const auto& sb = b.state(*t);
        if ((sa.initial && !sb.initial) || (sa.marked && !sb.marked))
            return false;
        for (const auto& edge : a.out(s)) {
            EventIndex e = kTau;
            if (edge.event != kTau) {
                auto found = b.find_event(a.event_name(edge.event));
                if (!found)
                    return false;
                e = *found;
            }
            auto target = b.find_state(a.state(edge.target).name);
            if (!target)
                return false;
            auto succ = b.successors(*t, e);
            if (std::find(succ.begin(), succ.end(), *target) == succ.end())
                return false;
        }
    }
    return true;
}

Word project(const Word& word, const std::set<std::string, std::less<>>& keep)
{
    Word out;
    for (const auto& e : word)
        if (keep.contains(e))
            out.push_back(e);
    return out;
}

Word project_tau(const Word& word)
{
    Word out;
    for (const auto& e : word)
        if (e != kTauName)
            out.push_back(e);
    return out;
}

namespace
{

std::vector<StateIndex> tau_closure(const Automaton& a, std::vector<StateIndex> states)
{
    std::vector<bool> seen(a.num_states(), false);
    std::vector<StateIndex> stack;
    for (auto s : states)
        if (!seen[s]) {
            seen[s] = true;
            stack.push_back(s);
        }
    std::vector<StateIndex> result;
    while (!stack.empty()) {
        auto s = stack.back();
        stack.pop_back();
        result.push_back(s);
        for (auto t : a.successors(s, kTau))
            if (!seen[t]) {
                seen[t] = true;
                stack.push_back(t);
            }
    }
    std::sort(result.begin(), result.end());
    return result;
}

}  // namespace

std::set<Word> language_upto(const Automaton& a, std::size_t n)
{
    std::set<Word> result;
    auto start = tau_closure(a, a.initial_states());
    if (start.empty())
        return result;
    std::vector<std::pair<Word, std::vector<StateIndex>>> layer{{Word{}, start}};
    result.insert(Word{});
    for (std::size_t len = 0; len < n && !layer.empty(); ++len) {
        std::vector<std::pair<Word, std::vector<StateIndex>>> next;
        for (const auto& [word, states] : layer) {
            for (EventIndex e = 0; e < a.num_events(); ++e) {
                std::vector<StateIndex> succ;
                for (auto s : states)
                    for (auto t : a.successors(s, e))
                        succ.push_back(t);
                if (succ.empty())
                    continue;
                Word w = word;
                w.push_back(a.event(e).name);
                result.insert(w);
                next.emplace_back(std::move(w), tau_closure(a, std::move(succ)));
            }
        }
        layer = std::move(next);
    }
    return result;
}

namespace
{

struct CanonicalForm
{
    std::vector<std::string> alphabet;
    std::vector<std::tuple<bool, bool>> flags;
    std::vector<std::vector<long>> table;

    bool operator==(const CanonicalForm&) const = default;
};

CanonicalForm canonical_form(const Automaton& a)
{
    if (!a.empty() && !a.is_deterministic())
        throw InputError("deterministic_isomorphic requires deterministic automata");
    CanonicalForm form;
    std::vector<EventIndex> order(a.num_events());
    for (EventIndex e = 0; e < a.num_events(); ++e)
        order[e] = e;
    std::sort(order.begin(), order.end(),
              [&](EventIndex x, EventIndex y) { return a.event(x).name < a.event(y).name; });
    for (auto e : order)
        form.alphabet.push_back(a.event(e).name);
    if (a.empty())
        return form;
    std::vector<long> number(a.num_states(), -1);
    std::vector<StateIndex> visit{a.initial_states().front()};
    number[visit.front()] = 0;
    for (std::size_t i = 0; i < visit.size(); ++i) {
        const StateIndex s = visit[i];
        form.flags.emplace_back(a.state(s).marked, a.state(s).secret);
        std::vector<long> row;
        for (auto e : order) {
            auto t = a.successor(s, e);
            if (!t) {
                row.push_back(-1);
                continue;
            }
            if (number[*t] < 0) {
                number[*t] = static_cast<long>(visit.size());
                visit.push_back(*t);
            }
            row.push_back(number[*t]);
        }
        form.table.push_back(std::move(row));
    }
    return form;
}

}  // namespace

bool deterministic_isomorphic(const Automaton& a, const Automaton& b)
{
    return canonical_form(a) == canonical_form(b);
}

std::vector<bool> reachable_states(const Automaton& a)
{
    std::vector<bool> seen(a.num_states(), false);
    std::vector<StateIndex> stack = a.initial_states();
    for (auto s : stack)
        seen[s] = true;
    while (!stack.empty()) {
        auto s = stack.back();
        stack.pop_back();
        for (const auto& edge : a.out(s))
            if (!seen[edge.target]) {
                seen[edge.target] = true;
                stack.push_back(edge.target);
            }
    }
    return seen;
}

std::vector<bool> coreachable_states(const Automaton& a)
{
    std::vector<std::vector<StateIndex>> pred(a.num_states());
    for (StateIndex s = 0; s < a.num_states(); ++s)
        for (const auto& edge : a.out(s))
            pred[edge.target].push_back(s);
    std::vector<bool> seen(a.num_states(), false);
    std::vector<StateIndex> stack;
    for (StateIndex s = 0; s < a.num_states(); ++s)
        if (a.state(s).marked) {
            seen[s] = true;
            stack.push_back(s);
        }
    while (!stack.empty()) {
        auto s = stack.back();
        stack.pop_back();
        for (auto p : pred[s])
            if (!seen[p]) {
                seen[p] = true;
                stack.push_back(p);
            }
    }
    return seen;
}

Automaton restrict_states(const Automaton& a, const std::vector<bool>& keep, std::vector<StateIndex>* origin)
{
    // Reachability through kept states only.
    std::vector<bool> seen(a.num_states(), false);
    std::vector<StateIndex> order;
    for (auto s : a.initial_states())
        if (keep[s] && !seen[s]) {
            seen[s] = true;
            order.push_back(s);
        }
    for (std::size_t i = 0; i < order.size(); ++i)
        for (const auto& edge : a.out(order[i]))
            if (keep[edge.target] && !seen[edge.target]) {
                seen[edge.target] = true;
                order.push_back(edge.target);
            }

    Automaton r(a.name());
    for (const auto& ev : a.events())
        r.add_event(ev.name, ev.controllable);
    std::vector<StateIndex> remap(a.num_states(), 0);
    std::vector<StateIndex> kept;
    for (StateIndex s = 0; s < a.num_states(); ++s)
        if (seen[s]) {
            remap[s] = r.add_state(a.state(s));
            kept.push_back(s);
        }
    for (auto s : kept)
        for (const auto& edge : a.out(s))
            if (seen[edge.target])
                r.add_transition(remap[s], edge.event, remap[edge.target]);
    if (origin)
        *origin = std::move(kept);
    return r;
}

Automaton trim_reachable(const Automaton& a)
{
    return restrict_states(a, std::vector<bool>(a.num_states(), true));
}

}  // namespace edsynth
