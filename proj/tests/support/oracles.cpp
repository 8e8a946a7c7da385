#include "oracles.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace oracle {

using interkernel::Action;
using K = Interaction::Kind;

TraceSet brute_linearizations(const Interaction& i, const interkernel::Ordering& ordering) {
    std::vector<std::size_t> idx(ordering.e.size());
    std::iota(idx.begin(), idx.end(), 0);
    TraceSet out;
    do {
        auto rank = [&](const interkernel::Position& p) {
            for (std::size_t k = 0; k < idx.size(); ++k) {
                if (ordering.e[idx[k]] == p) return k;
            }
            throw std::logic_error("pair outside e");
        };
        bool ok = true;
        for (const auto& [a, b] : ordering.o) ok = ok && rank(a) < rank(b);
        if (!ok) continue;
        Trace t;
        for (auto k : idx) t.actions.push_back(interkernel::subterm_at(i, ordering.e[k]).action());
        out.insert(t);
    } while (std::next_permutation(idx.begin(), idx.end()));
    return out;
}

namespace {

void interleave(const Trace& t1, std::size_t a, const Trace& t2, std::size_t b, Trace& acc, bool weak,
                TraceSet& out) {
    if (a == t1.size() && b == t2.size()) {
        out.insert(acc);
        return;
    }
    if (a < t1.size()) {
        acc.actions.push_back(t1[a]);
        interleave(t1, a + 1, t2, b, acc, weak, out);
        acc.actions.pop_back();
    }
    if (b < t2.size()) {
        bool blocked = false;
        if (weak) {
            for (std::size_t k = a; k < t1.size(); ++k) blocked = blocked || t1[k].lifeline == t2[b].lifeline;
        }
        if (!blocked) {
            acc.actions.push_back(t2[b]);
            interleave(t1, a, t2, b + 1, acc, weak, out);
            acc.actions.pop_back();
        }
    }
}

TraceSet combine(K op, const Trace& t1, const Trace& t2) {
    switch (op) {
        case K::Strict:
        case K::LoopStrict: {
            Trace t = t1;
            t.actions.insert(t.actions.end(), t2.actions.begin(), t2.actions.end());
            return {t};
        }
        case K::Seq:
        case K::LoopSeq: return weak_interleavings(t1, t2);
        case K::Par:
        case K::LoopPar: return shuffle(t1, t2);
        default: throw std::logic_error("not a composition operator");
    }
}

using Costed = std::map<Trace, std::size_t>;

void offer(Costed& m, const Trace& t, std::size_t c) {
    auto [it, fresh] = m.emplace(t, c);
    if (!fresh) it->second = std::min(it->second, c);
}

Costed compose(K op, const Costed& left, const Costed& right, std::size_t extra, std::size_t budget) {
    Costed out;
    for (const auto& [t1, c1] : left) {
        for (const auto& [t2, c2] : right) {
            const std::size_t c = c1 + c2 + extra;
            if (c > budget) continue;
            for (const auto& t : combine(op, t1, t2)) offer(out, t, c);
        }
    }
    return out;
}

}  // namespace

TraceSet shuffle(const Trace& t1, const Trace& t2) {
    TraceSet out;
    Trace acc;
    interleave(t1, 0, t2, 0, acc, false, out);
    return out;
}

TraceSet weak_interleavings(const Trace& t1, const Trace& t2) {
    TraceSet out;
    Trace acc;
    interleave(t1, 0, t2, 0, acc, true, out);
    return out;
}

std::map<Trace, std::size_t> costed_semantics(const Interaction& i, std::size_t budget) {
    switch (i.kind()) {
        case K::Empty: return {{Trace{}, 0}};
        case K::Act: return {{Trace{i.action()}, 0}};
        case K::Alt: {
            Costed out = costed_semantics(i.left(), budget);
            for (const auto& [t, c] : costed_semantics(i.right(), budget)) offer(out, t, c);
            return out;
        }
        case K::Strict:
        case K::Seq:
        case K::Par:
            return compose(i.kind(), costed_semantics(i.left(), budget), costed_semantics(i.right(), budget), 0,
                           budget);
        default: {
            // an instance costs one unit plus whatever its body consumes
            if (budget == 0) return {{Trace{}, 0}};
            const Costed body = costed_semantics(i.body(), budget - 1);
            Costed reach = {{Trace{}, 0}};
            for (std::size_t round = 0; round < budget; ++round) {
                Costed next = compose(i.kind(), body, reach, 1, budget);
                bool changed = false;
                for (const auto& [t, c] : next) {
                    auto it = reach.find(t);
                    if (it == reach.end() || c < it->second) changed = true;
                    offer(reach, t, c);
                }
                if (!changed) break;
            }
            return reach;
        }
    }
}

TraceSet semantics(const Interaction& i, std::size_t budget) {
    TraceSet out;
    for (const auto& [t, c] : costed_semantics(i, budget)) out.insert(t);
    return out;
}

Interaction random_term(interkernel::Rng& rng, const interkernel::Signature& sig, std::size_t max_depth,
                        bool allow_loops) {
    const auto acts = sig.actions();
    if (max_depth <= 1 || rng.below(4) == 0) {
        const auto k = rng.below(acts.size() + 1);
        return k == acts.size() ? Interaction() : Interaction::action(acts[k]);
    }
    static const K binaries[] = {K::Strict, K::Seq, K::Alt, K::Par};
    static const K loops[] = {K::LoopStrict, K::LoopSeq, K::LoopPar};
    const auto pick = rng.below(allow_loops ? 7 : 4);
    if (pick < 4) {
        Interaction l = random_term(rng, sig, max_depth - 1, allow_loops);
        Interaction r = random_term(rng, sig, max_depth - 1, allow_loops);
        return Interaction::binary(binaries[pick], l, r);
    }
    return Interaction::loop(loops[pick - 4], random_term(rng, sig, max_depth - 1, allow_loops));
}

std::vector<Interaction> all_terms(std::size_t n_lifelines, std::size_t n_messages, std::size_t depth) {
    const auto sig = interkernel::Signature::generic(n_lifelines, n_messages);
    std::vector<Interaction> terms{Interaction()};
    for (const auto& a : sig.actions()) terms.push_back(Interaction::action(a));
    for (std::size_t d = 2; d <= depth; ++d) {
        std::vector<Interaction> level;
        for (K op : {K::Strict, K::Seq, K::Alt, K::Par}) {
            for (const auto& l : terms) {
                for (const auto& r : terms) {
                    if (l.depth() == d - 1 || r.depth() == d - 1) level.push_back(Interaction::binary(op, l, r));
                }
            }
        }
        for (K op : {K::LoopStrict, K::LoopSeq, K::LoopPar}) {
            for (const auto& b : terms) {
                if (b.depth() == d - 1) level.push_back(Interaction::loop(op, b));
            }
        }
        terms.insert(terms.end(), level.begin(), level.end());
    }
    return terms;
}

std::size_t loop_nesting(const Interaction& i) {
    if (i.is_empty() || i.is_action()) return 0;
    std::size_t n = loop_nesting(i.left());
    if (i.is_binary()) n = std::max(n, loop_nesting(i.right()));
    return i.is_loop() ? n + 1 : n;
}

}  // namespace oracle
