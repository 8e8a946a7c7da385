#pragma once

#include <compare>
#include <set>
#include <string>
#include <vector>

#include "interkernel/term.hpp"

namespace interkernel {

/// A finite sequence of actions; the empty trace is epsilon.
struct Trace {
    std::vector<Action> actions;

    Trace() = default;
    Trace(std::initializer_list<Action> acts) : actions(acts) {}
    explicit Trace(std::vector<Action> acts) : actions(std::move(acts)) {}

    bool empty() const noexcept { return actions.empty(); }
    std::size_t size() const noexcept { return actions.size(); }
    const Action& operator[](std::size_t k) const { return actions[k]; }

    /// The first `n` actions.
    Trace prefix(std::size_t n) const;
    bool is_prefix_of(const Trace& other) const noexcept;

    friend bool operator==(const Trace&, const Trace&) = default;
    friend auto operator<=>(const Trace&, const Trace&) = default;
};

/// Canonically sorted, deduplicated set of traces.
using TraceSet = std::set<Trace>;

}  // namespace interkernel
