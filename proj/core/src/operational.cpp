#include "interkernel/operational.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "interkernel/errors.hpp"

namespace interkernel {

namespace {

using K = Interaction::Kind;

// Some ordering of `i` avoids `lifeline` entirely; equivalently prune does not eliminate.
bool can_avoid(const Interaction& i, std::string_view lifeline) noexcept {
    switch (i.kind()) {
        case K::Empty: return true;
        case K::Act: return i.action().lifeline != lifeline;
        case K::Alt: return can_avoid(i.left(), lifeline) || can_avoid(i.right(), lifeline);
        case K::Strict:
        case K::Seq:
        case K::Par: return can_avoid(i.left(), lifeline) && can_avoid(i.right(), lifeline);
        default: return true;  // loops may be skipped
    }
}

struct FrontierEntry {
    Position position;
    const Action* action;
    std::size_t loops;
};

void frontier_walk(const Interaction& i, const Position& here, std::size_t loops, std::vector<FrontierEntry>& out) {
    switch (i.kind()) {
        case K::Empty:
            return;
        case K::Act:
            out.push_back({here, &i.action(), loops});
            return;
        case K::LoopStrict:
        case K::LoopSeq:
        case K::LoopPar:
            frontier_walk(i.body(), here.child(1), loops + 1, out);
            return;
        case K::Alt:
        case K::Par:
            frontier_walk(i.left(), here.child(1), loops, out);
            frontier_walk(i.right(), here.child(2), loops, out);
            return;
        case K::Strict:
            frontier_walk(i.left(), here.child(1), loops, out);
            if (exp_eps(i.left())) frontier_walk(i.right(), here.child(2), loops, out);
            return;
        case K::Seq: {
            frontier_walk(i.left(), here.child(1), loops, out);
            const std::size_t first = out.size();
            frontier_walk(i.right(), here.child(2), loops, out);
            // keep right-hand candidates whose lifeline the left side can avoid
            auto keep = std::remove_if(out.begin() + static_cast<std::ptrdiff_t>(first), out.end(),
                                       [&](const FrontierEntry& f) { return !can_avoid(i.left(), f.action->lifeline); });
            out.erase(keep, out.end());
            return;
        }
    }
}

std::vector<FrontierEntry> frontier_entries(const Interaction& i) {
    std::vector<FrontierEntry> out;
    frontier_walk(i, Position(), 0, out);
    return out;
}

Interaction chi(const Interaction& i, const Position& p, std::size_t k, const std::string& lifeline) {
    if (k == p.size()) return Interaction();
    const int d = p[k];
    if (i.is_loop()) {
        return Interaction::binary(loop_operator(i.kind()), chi(i.body(), p, k + 1, lifeline), i);
    }
    if (d == 1) {
        if (i.kind() == K::Alt) return chi(i.left(), p, k + 1, lifeline);
        return Interaction::binary(i.kind(), chi(i.left(), p, k + 1, lifeline), i.right());
    }
    switch (i.kind()) {
        case K::Seq: {
            PruneResult pr = prune(i.left(), lifeline);
            if (pr.eliminated) {
                throw std::logic_error("execute: left neighbour of a frontier action could not be pruned");
            }
            return Interaction::seq(std::move(pr.pruned), chi(i.right(), p, k + 1, lifeline));
        }
        case K::Strict:
        case K::Alt:
            return chi(i.right(), p, k + 1, lifeline);
        case K::Par:
            return Interaction::par(i.left(), chi(i.right(), p, k + 1, lifeline));
        default:
            throw std::logic_error("execute: malformed path");
    }
}

using SuffixSet = std::shared_ptr<const TraceSet>;

struct StateKey {
    Interaction term;
    std::size_t budget;
    friend bool operator==(const StateKey&, const StateKey&) = default;
};

struct StateKeyHash {
    std::size_t operator()(const StateKey& k) const noexcept { return k.term.hash() * 31 + k.budget; }
};

class OperationalExplorer {
public:
    explicit OperationalExplorer(std::size_t cap) : cap_(cap) {}

    SuffixSet explore(const Interaction& i, std::size_t budget) {
        StateKey key{i, budget};
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        auto result = std::make_shared<TraceSet>();
        if (exp_eps(i)) result->insert(Trace());
        for (const auto& f : frontier_entries(i)) {
            if (f.loops > budget) continue;
            SuffixSet rest = explore(execute_unchecked(i, f), budget - f.loops);
            for (const auto& t : *rest) {
                std::vector<Action> acts;
                acts.reserve(t.size() + 1);
                acts.push_back(*f.action);
                acts.insert(acts.end(), t.actions.begin(), t.actions.end());
                result->insert(Trace(std::move(acts)));
            }
            if (result->size() > cap_) throw ResourceLimit("trace set exceeds cap of " + std::to_string(cap_));
        }
        memo_.emplace(std::move(key), result);
        return result;
    }

private:
    static Interaction execute_unchecked(const Interaction& i, const FrontierEntry& f) {
        return chi(i, f.position, 0, f.action->lifeline);
    }

    std::size_t cap_;
    std::unordered_map<StateKey, SuffixSet, StateKeyHash> memo_;
};

}  // namespace

std::vector<Position> frontier(const Interaction& i) {
    std::vector<Position> out;
    for (const auto& ord : orderings(i)) {
        for (const auto& p : ord.e) {
            const bool minimal = std::none_of(ord.o.begin(), ord.o.end(), [&](const auto& pair) { return pair.second == p; });
            if (minimal) out.push_back(p);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Position> frontier_structural(const Interaction& i) {
    std::vector<Position> out;
    for (auto& f : frontier_entries(i)) out.push_back(std::move(f.position));
    return out;  // pre-order walk: already canonical
}

bool in_frontier(const Interaction& i, const Position& p) {
    const Interaction* target;
    try {
        target = &subterm_at(i, p);
    } catch (const PositionOutOfRange&) {
        return false;
    }
    if (!target->is_action()) return false;
    const std::string& lifeline = target->action().lifeline;
    const Interaction* cur = &i;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] == 2) {
            if (cur->kind() == K::Strict && !exp_eps(cur->left())) return false;
            if (cur->kind() == K::Seq && !can_avoid(cur->left(), lifeline)) return false;
        }
        cur = &cur->child(p[k]);
    }
    return true;
}

bool exp_eps(const Interaction& i) noexcept {
    switch (i.kind()) {
        case K::Empty: return true;
        case K::Act: return false;
        case K::Alt: return exp_eps(i.left()) || exp_eps(i.right());
        case K::Strict:
        case K::Seq:
        case K::Par: return exp_eps(i.left()) && exp_eps(i.right());
        default: return true;
    }
}

PruneResult prune(const Interaction& i, std::string_view lifeline) {
    switch (i.kind()) {
        case K::Empty:
            return {Interaction(), false};
        case K::Act:
            if (i.action().lifeline == lifeline) return {Interaction(), true};
            return {i, false};
        case K::Strict:
        case K::Seq:
        case K::Par: {
            PruneResult l = prune(i.left(), lifeline);
            if (l.eliminated) return {Interaction(), true};
            PruneResult r = prune(i.right(), lifeline);
            if (r.eliminated) return {Interaction(), true};
            return {Interaction::binary(i.kind(), std::move(l.pruned), std::move(r.pruned)), false};
        }
        case K::Alt: {
            PruneResult l = prune(i.left(), lifeline);
            PruneResult r = prune(i.right(), lifeline);
            if (l.eliminated && r.eliminated) return {Interaction(), true};
            if (l.eliminated) return {std::move(r.pruned), false};
            if (r.eliminated) return {std::move(l.pruned), false};
            return {Interaction::alt(std::move(l.pruned), std::move(r.pruned)), false};
        }
        default: {
            PruneResult b = prune(i.body(), lifeline);
            if (b.eliminated) return {Interaction(), false};
            return {Interaction::loop(i.kind(), std::move(b.pruned)), false};
        }
    }
}

Interaction execute(const Interaction& i, const Position& p) {
    if (!in_frontier(i, p)) {
        throw NotInFrontier("position '" + p.to_string() + "' is not in the frontier");
    }
    return chi(i, p, 0, subterm_at(i, p).action().lifeline);
}

std::vector<Step> steps(const Interaction& i) {
    std::vector<Step> out;
    for (const auto& f : frontier_entries(i)) {
        out.push_back(Step{*f.action, f.position, chi(i, f.position, 0, f.action->lifeline)});
    }
    return out;
}

TraceSet sigma_o(const Interaction& i, std::size_t max_unfolds, std::size_t trace_cap) {
    OperationalExplorer explorer(trace_cap);
    return *explorer.explore(i, max_unfolds);
}

}  // namespace interkernel
