#include <algorithm>
#include <map>
#include <ostream>
#include <unordered_set>

#include <json.hpp>

#include "interkernel/dsl.hpp"
#include "interkernel/errors.hpp"
#include "interkernel/harness.hpp"
#include "interkernel/operational.hpp"

namespace interkernel {

std::string_view to_string(MutantCategory c) noexcept {
    switch (c) {
        case MutantCategory::Accepted: return "accepted";
        case MutantCategory::SingleAction: return "single-action";
        case MutantCategory::Prefix: return "prefix";
        case MutantCategory::Addition: return "addition";
        case MutantCategory::Replacement: return "replacement";
    }
    return "?";
}

Verdict classify_against(const TraceSet& accepted, const Trace& t) {
    auto it = accepted.lower_bound(t);
    if (it != accepted.end() && *it == t) return Verdict::Covered;
    // extensions of t sort immediately after t
    if (it != accepted.end() && t.is_prefix_of(*it)) return Verdict::TooShort;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (accepted.count(t.prefix(k))) return Verdict::TooLong;
    }
    return Verdict::Out;
}

Verdict classify_expected(const Interaction& i, const Trace& t, std::size_t bound) {
    return classify_against(sigma_o(i, bound), t);
}

namespace {

std::vector<Trace> pick_distinct(const TraceSet& pool, std::size_t samples, Rng& rng) {
    std::vector<Trace> all(pool.begin(), pool.end());
    if (all.size() <= samples) return all;
    std::unordered_set<std::size_t> chosen;
    for (std::size_t j = all.size() - samples; j < all.size(); ++j) {
        const auto t = static_cast<std::size_t>(rng.below(j + 1));
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    std::vector<std::size_t> idx(chosen.begin(), chosen.end());
    std::sort(idx.begin(), idx.end());
    std::vector<Trace> out;
    for (auto k : idx) out.push_back(all[k]);
    return out;
}

Trace with_action(const Trace& t, const Action& a) {
    Trace out = t;
    out.actions.push_back(a);
    return out;
}

}  // namespace

std::vector<MutantBatch> generate_mutants(const Interaction& i, const Signature& sig, std::size_t bound,
                                          std::size_t samples, std::uint64_t seed, const MutantConfig& config) {
    if (samples == 0) throw std::invalid_argument("generate_mutants: samples must be >= 1");
    const TraceSet accepted = sigma_o(i, bound);
    if (accepted.empty()) throw EmptySemantics("no accepted trace within " + std::to_string(bound) + " unfoldings");

    Rng rng(seed);
    const std::vector<Action> alphabet = sig.actions();
    std::vector<MutantBatch> batches;

    MutantBatch singles;
    singles.category = MutantCategory::SingleAction;
    for (const auto& a : alphabet) singles.mutants.push_back(Trace{a});
    batches.push_back(std::move(singles));

    for (const auto& origin : pick_distinct(accepted, samples, rng)) {
        batches.push_back(MutantBatch{origin, MutantCategory::Accepted, {origin}, {}});

        MutantBatch prefixes{origin, MutantCategory::Prefix, {}, {}};
        for (std::size_t k = 0; k < origin.size(); ++k) prefixes.mutants.push_back(origin.prefix(k));
        batches.push_back(std::move(prefixes));

        MutantBatch additions{origin, MutantCategory::Addition, {}, {}};
        for (std::size_t k = 0; k < config.additions; ++k) {
            additions.mutants.push_back(with_action(origin, alphabet[rng.below(alphabet.size())]));
        }
        batches.push_back(std::move(additions));

        MutantBatch replacements{origin, MutantCategory::Replacement, {}, {}};
        if (!origin.empty() && alphabet.size() > 1) {
            for (std::size_t k = 0; k < config.replacements; ++k) {
                const std::size_t len = 1 + rng.below(origin.size());
                Trace m = origin.prefix(len);
                // draw among the other actions
                std::size_t pick = rng.below(alphabet.size() - 1);
                if (alphabet[pick] == m.actions.back()) pick = alphabet.size() - 1;
                m.actions.back() = alphabet[pick];
                replacements.mutants.push_back(std::move(m));
            }
        }
        batches.push_back(std::move(replacements));
    }

    std::size_t longest = 0;
    for (const auto& b : batches) {
        for (const auto& m : b.mutants) longest = std::max(longest, m.size());
    }
    const TraceSet oracle = sigma_o(i, std::max(bound, longest + config.horizon));
    for (auto& b : batches) {
        for (const auto& m : b.mutants) b.expected.push_back(classify_against(oracle, m));
    }
    return batches;
}

namespace {

struct ModelResult {
    std::map<std::tuple<MutantCategory, Verdict, Verdict>, std::size_t> table;
    std::vector<Mismatch> mismatches;
    std::vector<Mismatch> membership_mismatches;
    std::size_t membership_checked = 0;
    std::size_t traces = 0;
    bool skipped = false;
};

ModelResult run_model(const Interaction& model, const Signature& sig, const ConcordanceConfig& config,
                      std::uint64_t seed) {
    ModelResult r;
    std::vector<MutantBatch> batches;
    try {
        batches = generate_mutants(model, sig, config.bound, config.samples, seed, config.mutants);
    } catch (const EmptySemantics&) {
        r.skipped = true;
        return r;
    }
    std::map<std::size_t, TraceSet> by_length;
    for (const auto& b : batches) {
        for (std::size_t k = 0; k < b.mutants.size(); ++k) {
            const Trace& t = b.mutants[k];
            const Verdict obtained = analyze(model, t).verdict;
            ++r.traces;
            ++r.table[{b.category, b.expected[k], obtained}];
            if (obtained != b.expected[k]) r.mismatches.push_back({model, t, b.category, b.expected[k], obtained});
            if (config.check_membership) {
                auto it = by_length.find(t.size());
                if (it == by_length.end()) it = by_length.emplace(t.size(), sigma_o(model, t.size())).first;
                const bool member = it->second.count(t) > 0;
                ++r.membership_checked;
                if (member != (obtained == Verdict::Covered)) {
                    r.membership_mismatches.push_back(
                        {model, t, b.category, member ? Verdict::Covered : Verdict::Out, obtained});
                }
            }
        }
    }
    return r;
}

}  // namespace

ConcordanceReport concordance(const std::vector<Interaction>& models, const Signature& sig,
                              const ConcordanceConfig& config) {
    Rng master(config.seed);
    std::vector<std::uint64_t> seeds(models.size());
    for (auto& s : seeds) s = master.next();

    std::vector<ModelResult> results(models.size());
    parallel_for(models.size(), config.jobs,
                 [&](std::size_t k) { results[k] = run_model(models[k], sig, config, seeds[k]); });

    ConcordanceReport report;
    report.models = models.size();
    for (auto& r : results) {
        for (const auto& [key, n] : r.table) report.table[key] += n;
        report.mismatches.insert(report.mismatches.end(), r.mismatches.begin(), r.mismatches.end());
        report.membership_mismatches.insert(report.membership_mismatches.end(), r.membership_mismatches.begin(),
                                            r.membership_mismatches.end());
        report.membership_checked += r.membership_checked;
        report.traces += r.traces;
        if (r.skipped) ++report.skipped_models;
    }
    return report;
}

void write_concordance_tsv(std::ostream& out, const ConcordanceReport& report) {
    std::vector<std::pair<MutantCategory, Verdict>> columns;
    for (const auto& [key, n] : report.table) {
        std::pair<MutantCategory, Verdict> col{std::get<0>(key), std::get<1>(key)};
        if (std::find(columns.begin(), columns.end(), col) == columns.end()) columns.push_back(col);
    }
    out << "obtained";
    for (const auto& [cat, expected] : columns) out << '\t' << to_string(cat) << ':' << to_string(expected);
    out << "\ttotal\n";
    for (Verdict obtained : {Verdict::Covered, Verdict::TooShort, Verdict::TooLong, Verdict::Out}) {
        out << to_string(obtained);
        std::size_t total = 0;
        for (const auto& [cat, expected] : columns) {
            auto it = report.table.find({cat, expected, obtained});
            const std::size_t n = it == report.table.end() ? 0 : it->second;
            total += n;
            out << '\t' << n;
        }
        out << '\t' << total << '\n';
    }
}

void write_mismatches_jsonl(std::ostream& out, const std::vector<Mismatch>& mismatches) {
    for (const auto& m : mismatches) {
        nlohmann::json j{{"model", print_interaction(m.model)},
                         {"trace", print_trace(m.trace)},
                         {"category", std::string(to_string(m.category))},
                         {"expected", std::string(to_string(m.expected))},
                         {"obtained", std::string(to_string(m.obtained))}};
        out << j.dump() << '\n';
    }
}

}  // namespace interkernel
