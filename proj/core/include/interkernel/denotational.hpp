#pragma once

#include <cstddef>
#include <limits>
#include <set>
#include <utility>
#include <vector>

#include "interkernel/term.hpp"
#include "interkernel/trace.hpp"

namespace interkernel {

/// A set of action positions `e` together with precedence pairs `o`.
/// A pair (p, q) in `o` means the action at p occurs before the one at q.
/// Both members are kept sorted.
struct Ordering {
    std::vector<Position> e;
    std::vector<std::pair<Position, Position>> o;

    friend bool operator==(const Ordering&, const Ordering&) = default;
    friend auto operator<=>(const Ordering&, const Ordering&) = default;
};

/// How the empty interaction contributes orderings.
///
/// `Repaired` gives ord(0) = {(empty, empty)}, so that sigma(0) = {eps}.
/// `Literal` keeps ord(0) = {} as written in the original definition, which
/// annihilates any strict/seq/par with an empty child. Only meant for comparison.
enum class EmptyOrdering { Repaired, Literal };

constexpr std::size_t kNoTraceCap = std::numeric_limits<std::size_t>::max();

/// ord(i), sorted. Loops contribute 1.ord(body) plus the empty ordering.
std::vector<Ordering> orderings(const Interaction& i, EmptyOrdering mode = EmptyOrdering::Repaired);

/// sem(i, e, o): every trace listing each action of `ordering.e` once without
/// contradicting `ordering.o`.
TraceSet linearizations(const Interaction& i, const Ordering& ordering);

/// sigma(i) for a loop-free term. Throws ContainsLoop otherwise.
TraceSet sigma_basic(const Interaction& i, EmptyOrdering mode = EmptyOrdering::Repaired);

/// Every term reachable from `i` by one instantiation of one loop.
std::set<Interaction> unfold_once(const Interaction& i);

/// Upsilon(i, n): results of exactly `n` single-loop instantiations.
std::set<Interaction> unfoldings(const Interaction& i, std::size_t n);

/// Replaces every loop subterm by the empty interaction.
Interaction flatten(const Interaction& i);

/// Union over n <= max_unfolds and i' in Upsilon(i, n) of sigma(flatten(i')).
/// Throws ResourceLimit once more than `trace_cap` traces are produced.
TraceSet sigma_u(const Interaction& i, std::size_t max_unfolds, std::size_t trace_cap = kNoTraceCap,
                 EmptyOrdering mode = EmptyOrdering::Repaired);

}  // namespace interkernel
