#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "interkernel/harness.hpp"

namespace interkernel {

using K = Interaction::Kind;

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below(0)");
    // reject the top partial block so every residue is equally likely
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % n;
}

std::set<Interaction::Kind> EnumSpec::all_kinds() {
    return {K::Empty, K::Act, K::Strict, K::Seq, K::Alt, K::Par, K::LoopStrict, K::LoopSeq, K::LoopPar};
}

namespace {

__extension__ using u128 = unsigned __int128;

std::uint64_t checked(u128 v) {
    if (v > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("interaction count exceeds 64 bits");
    return static_cast<std::uint64_t>(v);
}

struct KindSplit {
    std::vector<K> binaries;
    std::vector<K> loops;
};

KindSplit split_kinds(const std::set<K>& kinds) {
    KindSplit out;
    for (K k : {K::Strict, K::Seq, K::Alt, K::Par}) {
        if (kinds.count(k)) out.binaries.push_back(k);
    }
    for (K k : {K::LoopStrict, K::LoopSeq, K::LoopPar}) {
        if (kinds.count(k)) out.loops.push_back(k);
    }
    return out;
}

}  // namespace

std::vector<std::uint64_t> count_by_depth(const EnumSpec& spec) {
    if (spec.n_lifelines < 1 || spec.n_messages < 1 || spec.depth < 1) {
        throw std::invalid_argument("EnumSpec requires n_l, n_m, depth >= 1");
    }
    const KindSplit split = split_kinds(spec.kinds);
    const u128 binaries = split.binaries.size();
    const u128 loops = split.loops.size();

    std::vector<std::uint64_t> a;
    u128 leaves = spec.kinds.count(K::Empty) ? 1 : 0;
    if (spec.kinds.count(K::Act)) leaves += 2 * static_cast<u128>(spec.n_lifelines) * spec.n_messages;
    a.push_back(checked(leaves));

    u128 s_prev = 0;           // S(d-2)
    u128 s_cur = a.front();    // S(d-1)
    for (std::size_t d = 2; d <= spec.depth; ++d) {
        const u128 pairs = s_cur * s_cur - s_prev * s_prev;
        const std::uint64_t next = checked(binaries * pairs + loops * a.back());
        a.push_back(next);
        s_prev = s_cur;
        s_cur += next;
        checked(s_cur);
    }
    return a;
}

Enumerator::Enumerator(EnumSpec spec) : spec_(std::move(spec)) {
    const auto counts = count_by_depth(spec_);
    const KindSplit split = split_kinds(spec_.kinds);
    binaries_ = split.binaries;
    loops_ = split.loops;

    per_depth_.assign(spec_.depth + 1, 0);
    cumulative_.assign(spec_.depth + 1, 0);
    for (std::size_t d = 1; d <= spec_.depth; ++d) {
        per_depth_[d] = counts[d - 1];
        cumulative_[d] = cumulative_[d - 1] + per_depth_[d];
    }
    total_ = cumulative_[spec_.depth];

    // depth 1
    const Signature sig = spec_.signature();
    if (spec_.depth > 1) {
        if (spec_.kinds.count(K::Empty)) shallow_.emplace_back();
        if (spec_.kinds.count(K::Act)) {
            for (auto& act : sig.actions()) shallow_.push_back(Interaction::action(std::move(act)));
        }
        for (std::size_t d = 2; d < spec_.depth; ++d) {
            for (std::uint64_t k = 0; k < per_depth_[d]; ++k) shallow_.push_back(compose(d, k));
        }
    }
}

Interaction Enumerator::nth_at_depth(std::size_t d, std::uint64_t index) const {
    if (d == 1) {
        if (d < spec_.depth) return shallow_[index];
        if (spec_.kinds.count(K::Empty)) {
            if (index == 0) return Interaction();
            --index;
        }
        auto acts = spec_.signature().actions();
        return Interaction::action(acts.at(index));
    }
    if (d < spec_.depth) return shallow_[cumulative_[d - 1] + index];
    return compose(d, index);
}

Interaction Enumerator::compose(std::size_t d, std::uint64_t index) const {
    const std::uint64_t level = per_depth_[d - 1];   // a(d-1)
    const std::uint64_t upto = cumulative_[d - 1];   // S(d-1)
    const std::uint64_t below = cumulative_[d - 2];  // S(d-2)
    const std::uint64_t level_start = below;         // index of first depth-(d-1) term in shallow_
    const std::uint64_t block = upto * upto - below * below;

    for (K kind : binaries_) {
        if (index < block) {
            // left at depth d-1, right anything shallower than d
            if (index < level * upto) {
                const std::uint64_t l = index / upto, r = index % upto;
                return Interaction::binary(kind, shallow_[level_start + l], shallow_[r]);
            }
            // left strictly shallower than d-1, right at depth d-1
            index -= level * upto;
            const std::uint64_t l = index / level, r = index % level;
            return Interaction::binary(kind, shallow_[l], shallow_[level_start + r]);
        }
        index -= block;
    }
    for (K kind : loops_) {
        if (index < level) return Interaction::loop(kind, shallow_[level_start + index]);
        index -= level;
    }
    throw std::out_of_range("enumeration index out of range");
}

Interaction Enumerator::nth(std::uint64_t index) const {
    if (index >= total_) throw std::out_of_range("enumeration index out of range");
    for (std::size_t d = 1; d <= spec_.depth; ++d) {
        if (index < cumulative_[d]) return nth_at_depth(d, index - cumulative_[d - 1]);
    }
    throw std::out_of_range("enumeration index out of range");
}

void Enumerator::for_each(const std::function<bool(const Interaction&)>& visit) const {
    for (std::uint64_t k = 0; k < total_; ++k) {
        if (!visit(nth(k))) return;
    }
}

std::vector<Interaction> sample_interactions(const Enumerator& en, std::size_t count, std::uint64_t seed) {
    std::vector<Interaction> out;
    const std::uint64_t n = en.size();
    if (count >= n) {
        en.for_each([&](const Interaction& i) {
            out.push_back(i);
            return true;
        });
        return out;
    }
    // Floyd's algorithm: `count` distinct indices
    Rng rng(seed);
    std::unordered_set<std::uint64_t> chosen;
    for (std::uint64_t j = n - count; j < n; ++j) {
        const std::uint64_t t = rng.below(j + 1);
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    std::vector<std::uint64_t> indices(chosen.begin(), chosen.end());
    std::sort(indices.begin(), indices.end());
    out.reserve(indices.size());
    for (auto k : indices) out.push_back(en.nth(k));
    return out;
}

}  // namespace interkernel
