#include "interkernel/analysis.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "interkernel/dsl.hpp"
#include "interkernel/errors.hpp"
#include "interkernel/operational.hpp"

namespace interkernel {

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::Out: return "Out";
        case Verdict::TooLong: return "TooLong";
        case Verdict::TooShort: return "TooShort";
        case Verdict::Covered: return "Covered";
    }
    return "?";
}

Verdict parse_verdict(std::string_view text) {
    for (Verdict v : {Verdict::Out, Verdict::TooLong, Verdict::TooShort, Verdict::Covered}) {
        if (to_string(v) == text) return v;
    }
    throw std::invalid_argument("unknown verdict '" + std::string(text) + "'");
}

Verdict verdict_max(std::span<const Verdict> vs) {
    if (vs.empty()) throw std::invalid_argument("verdict_max of an empty set");
    return *std::max_element(vs.begin(), vs.end());
}

namespace {

struct Outcome {
    Verdict verdict;
    std::vector<WitnessStep> path;  // reversed: deepest step first
};

class Analyzer {
public:
    explicit Analyzer(const Trace& t) : trace_(t), seen_(t.size() + 1) {}

    Outcome run(const Interaction& i, std::size_t k) {
        // Interleavings that commute reach the same residual term. A repeat
        // visit cannot improve on the branch that first reached it, so only
        // the verdict is kept.
        auto& seen = seen_[k];
        if (auto it = seen.find(i); it != seen.end()) return {it->second, {}};
        Outcome out = explore(i, k);
        seen.emplace(i, out.verdict);
        return out;
    }

    std::size_t explored() const noexcept { return explored_; }

private:
    Outcome explore(const Interaction& i, std::size_t k) {
        ++explored_;
        const bool accepts_eps = exp_eps(i);
        if (k == trace_.size()) return {accepts_eps ? Verdict::Covered : Verdict::TooShort, {}};

        Outcome best{accepts_eps ? Verdict::TooLong : Verdict::Out, {}};
        for (const auto& p : frontier_structural(i)) {
            const Interaction& leaf = subterm_at(i, p);
            if (leaf.action() != trace_[k]) continue;
            Interaction next = execute(i, p);
            Outcome sub = run(next, k + 1);
            if (sub.verdict > best.verdict) {
                sub.path.push_back(WitnessStep{p, std::move(next)});
                best = std::move(sub);
                if (best.verdict == Verdict::Covered) break;
            }
        }
        return best;
    }

    const Trace& trace_;
    std::vector<std::unordered_map<Interaction, Verdict, InteractionHash>> seen_;
    std::size_t explored_ = 0;
};

}  // namespace

AnalysisReport analyze(const Interaction& i, const Trace& t) {
    Analyzer analyzer(t);
    Outcome out = analyzer.run(i, 0);
    AnalysisReport report;
    report.verdict = out.verdict;
    report.explored_nodes = analyzer.explored();
    if (out.verdict != Verdict::Out) {
        std::reverse(out.path.begin(), out.path.end());
        report.witness = std::move(out.path);
    }
    return report;
}

AnalysisReport analyze(const Interaction& i, const Trace& t, const Signature& sig) {
    check_signature(i, sig);
    check_signature(t, sig);
    return analyze(i, t);
}

}  // namespace interkernel
