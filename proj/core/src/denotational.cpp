#include "interkernel/denotational.hpp"

#include <algorithm>
#include <string>

#include "interkernel/errors.hpp"

namespace interkernel {

namespace {

// An ordering under construction: each action position carries its lifeline
// so the seq clause can compare lifelines without re-walking the term.
struct PendingOrdering {
    std::vector<std::pair<Position, const std::string*>> e;
    std::vector<std::pair<Position, Position>> o;
};

PendingOrdering prefixed(const PendingOrdering& src, int digit) {
    PendingOrdering out;
    out.e.reserve(src.e.size());
    out.o.reserve(src.o.size());
    for (const auto& [p, l] : src.e) out.e.emplace_back(p.prefixed(digit), l);
    for (const auto& [p, q] : src.o) out.o.emplace_back(p.prefixed(digit), q.prefixed(digit));
    return out;
}

std::vector<PendingOrdering> ord_rec(const Interaction& i, EmptyOrdering mode) {
    using K = Interaction::Kind;
    switch (i.kind()) {
        case K::Empty:
            if (mode == EmptyOrdering::Literal) return {};
            return {PendingOrdering{}};
        case K::Act:
            return {PendingOrdering{{{Position(), &i.action().lifeline}}, {}}};
        case K::LoopStrict:
        case K::LoopSeq:
        case K::LoopPar: {
            std::vector<PendingOrdering> out;
            for (const auto& sub : ord_rec(i.body(), mode)) out.push_back(prefixed(sub, 1));
            out.emplace_back();
            return out;
        }
        case K::Alt: {
            std::vector<PendingOrdering> out;
            for (const auto& sub : ord_rec(i.left(), mode)) out.push_back(prefixed(sub, 1));
            for (const auto& sub : ord_rec(i.right(), mode)) out.push_back(prefixed(sub, 2));
            return out;
        }
        case K::Strict:
        case K::Seq:
        case K::Par: {
            std::vector<PendingOrdering> lefts, rights;
            for (const auto& sub : ord_rec(i.left(), mode)) lefts.push_back(prefixed(sub, 1));
            for (const auto& sub : ord_rec(i.right(), mode)) rights.push_back(prefixed(sub, 2));
            std::vector<PendingOrdering> out;
            out.reserve(lefts.size() * rights.size());
            for (const auto& l : lefts) {
                for (const auto& r : rights) {
                    PendingOrdering c;
                    c.e = l.e;
                    c.e.insert(c.e.end(), r.e.begin(), r.e.end());
                    c.o = l.o;
                    c.o.insert(c.o.end(), r.o.begin(), r.o.end());
                    if (i.kind() != K::Par) {
                        for (const auto& [p1, l1] : l.e) {
                            for (const auto& [p2, l2] : r.e) {
                                if (i.kind() == K::Strict || *l1 == *l2) c.o.emplace_back(p1, p2);
                            }
                        }
                    }
                    out.push_back(std::move(c));
                }
            }
            return out;
        }
    }
    return {};
}

class LinearizationBuilder {
public:
    LinearizationBuilder(const Interaction& i, const Ordering& ordering, TraceSet& out, std::size_t cap)
        : out_(out), cap_(cap) {
        const std::size_t n = ordering.e.size();
        acts_.reserve(n);
        for (const auto& p : ordering.e) acts_.push_back(&subterm_at(i, p).action());
        successors_.resize(n);
        pending_.assign(n, 0);
        auto index_of = [&](const Position& p) {
            return static_cast<std::size_t>(
                std::lower_bound(ordering.e.begin(), ordering.e.end(), p) - ordering.e.begin());
        };
        for (const auto& [before, after] : ordering.o) {
            const std::size_t b = index_of(before), a = index_of(after);
            successors_[b].push_back(a);
            ++pending_[a];
        }
        used_.assign(n, false);
    }

    void run() { extend(); }

private:
    // Repeatedly extract a minimal element, backtracking over the choice.
    void extend() {
        if (current_.size() == acts_.size()) {
            std::vector<Action> acts;
            acts.reserve(current_.size());
            for (std::size_t k : current_) acts.push_back(*acts_[k]);
            out_.insert(Trace(std::move(acts)));
            if (out_.size() > cap_) throw ResourceLimit("trace set exceeds cap of " + std::to_string(cap_));
            return;
        }
        for (std::size_t k = 0; k < acts_.size(); ++k) {
            if (used_[k] || pending_[k] != 0) continue;
            used_[k] = true;
            current_.push_back(k);
            for (std::size_t s : successors_[k]) --pending_[s];
            extend();
            for (std::size_t s : successors_[k]) ++pending_[s];
            current_.pop_back();
            used_[k] = false;
        }
    }

    TraceSet& out_;
    std::size_t cap_;
    std::vector<const Action*> acts_;
    std::vector<std::vector<std::size_t>> successors_;
    std::vector<std::size_t> pending_;
    std::vector<bool> used_;
    std::vector<std::size_t> current_;
};

void add_linearizations(const Interaction& i, const Ordering& ordering, TraceSet& out, std::size_t cap) {
    LinearizationBuilder(i, ordering, out, cap).run();
}

}  // namespace

std::vector<Ordering> orderings(const Interaction& i, EmptyOrdering mode) {
    std::vector<Ordering> out;
    for (auto& pending : ord_rec(i, mode)) {
        Ordering ord;
        ord.e.reserve(pending.e.size());
        for (auto& [p, l] : pending.e) ord.e.push_back(std::move(p));
        ord.o = std::move(pending.o);
        std::sort(ord.e.begin(), ord.e.end());
        std::sort(ord.o.begin(), ord.o.end());
        ord.o.erase(std::unique(ord.o.begin(), ord.o.end()), ord.o.end());
        out.push_back(std::move(ord));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

TraceSet linearizations(const Interaction& i, const Ordering& ordering) {
    TraceSet out;
    add_linearizations(i, ordering, out, kNoTraceCap);
    return out;
}

TraceSet sigma_basic(const Interaction& i, EmptyOrdering mode) {
    if (i.contains_loop()) throw ContainsLoop("sigma_basic requires a loop-free interaction");
    TraceSet out;
    for (const auto& ord : orderings(i, mode)) add_linearizations(i, ord, out, kNoTraceCap);
    return out;
}

std::set<Interaction> unfold_once(const Interaction& i) {
    std::set<Interaction> out;
    for (const auto& p : loop_positions(i)) {
        const Interaction& loop = subterm_at(i, p);
        out.insert(replace_at(i, p, Interaction::binary(loop_operator(loop.kind()), loop.body(), loop)));
    }
    return out;
}

std::set<Interaction> unfoldings(const Interaction& i, std::size_t n) {
    std::set<Interaction> level{i};
    for (std::size_t k = 0; k < n && !level.empty(); ++k) {
        std::set<Interaction> next;
        for (const auto& t : level) next.merge(unfold_once(t));
        level = std::move(next);
    }
    return level;
}

Interaction flatten(const Interaction& i) {
    if (!i.contains_loop()) return i;
    if (i.is_loop()) return Interaction();
    return Interaction::binary(i.kind(), flatten(i.left()), flatten(i.right()));
}

TraceSet sigma_u(const Interaction& i, std::size_t max_unfolds, std::size_t trace_cap, EmptyOrdering mode) {
    std::set<Interaction> flattened;
    std::set<Interaction> level{i};
    for (std::size_t n = 0; n <= max_unfolds && !level.empty(); ++n) {
        for (const auto& t : level) flattened.insert(flatten(t));
        if (n == max_unfolds) break;
        std::set<Interaction> next;
        for (const auto& t : level) next.merge(unfold_once(t));
        level = std::move(next);
    }
    TraceSet out;
    for (const auto& f : flattened) {
        for (const auto& ord : orderings(f, mode)) add_linearizations(f, ord, out, trace_cap);
    }
    return out;
}

}  // namespace interkernel
