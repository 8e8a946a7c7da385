#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "interkernel/denotational.hpp"
#include "interkernel/term.hpp"
#include "interkernel/trace.hpp"

namespace interkernel {

struct PruneResult {
    Interaction pruned;
    /// The whole term had to go; `pruned` is then the empty interaction.
    bool eliminated = false;

    friend bool operator==(const PruneResult&, const PruneResult&) = default;
};

/// One transition `source --action--> next`, executing the frontier action at `position`.
struct Step {
    Action action;
    Position position;
    Interaction next;
};

/// Frontier positions: minimal action positions over every ordering of `i`.
/// Derived directly from `orderings(i)`.
std::vector<Position> frontier(const Interaction& i);

/// Same set as `frontier`, computed by a single structural walk. Used on the
/// hot paths (steps, sigma_o, trace analysis), where enumerating orderings is
/// exponential in the number of alternatives.
std::vector<Position> frontier_structural(const Interaction& i);

/// True iff `p` belongs to the frontier of `i`, checked along the path only.
bool in_frontier(const Interaction& i, const Position& p);

/// Whether the empty trace belongs to the semantics of `i`.
bool exp_eps(const Interaction& i) noexcept;

/// Removes the branching choices of `i` that host actions on `lifeline`.
PruneResult prune(const Interaction& i, std::string_view lifeline);

/// chi(i, p): the continuation after executing the frontier action at `p`.
/// Throws NotInFrontier when `p` is not a frontier position.
Interaction execute(const Interaction& i, const Position& p);

/// One step per frontier position, in canonical position order.
std::vector<Step> steps(const Interaction& i);

/// Bounded operational semantics. A step crossing k loop nodes consumes k
/// units of a budget of `max_unfolds` shared by the whole derivation.
/// Throws ResourceLimit once more than `trace_cap` traces are produced.
TraceSet sigma_o(const Interaction& i, std::size_t max_unfolds, std::size_t trace_cap = kNoTraceCap);

}  // namespace interkernel
