#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "interkernel/analysis.hpp"
#include "interkernel/denotational.hpp"
#include "interkernel/term.hpp"
#include "interkernel/trace.hpp"

namespace interkernel {

// ---------------------------------------------------------------------------
// Randomness

/// All harness randomness flows from one 64-bit seed through std::mt19937_64.
/// Bounded draws use rejection sampling on the raw 64-bit output (not
/// std::uniform_int_distribution) so streams are identical across standard
/// library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, n). `n` must be positive.
    std::uint64_t below(std::uint64_t n);

private:
    std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// Enumeration

struct EnumSpec {
    std::size_t n_lifelines = 1;
    std::size_t n_messages = 1;
    std::size_t depth = 1;
    /// Node kinds to build terms from; Empty and Act control the leaves.
    std::set<Interaction::Kind> kinds = all_kinds();

    static std::set<Interaction::Kind> all_kinds();
    Signature signature() const { return Signature::generic(n_lifelines, n_messages); }
};

/// Number of interactions of each exact depth 1..spec.depth, from the closed-form
/// recurrence. Throws std::overflow_error if a count leaves 64 bits.
std::vector<std::uint64_t> count_by_depth(const EnumSpec& spec);

/// Deterministic enumeration of every interaction of depth <= spec.depth,
/// shallower terms first. Terms of depth < spec.depth are materialized; the
/// deepest level is generated on demand.
class Enumerator {
public:
    explicit Enumerator(EnumSpec spec);

    const EnumSpec& spec() const noexcept { return spec_; }
    std::uint64_t size() const noexcept { return total_; }

    /// The term at `index` in enumeration order, without enumerating the rest.
    Interaction nth(std::uint64_t index) const;

    /// Calls `visit` on each term in order; stops early when it returns false.
    void for_each(const std::function<bool(const Interaction&)>& visit) const;

private:
    Interaction nth_at_depth(std::size_t d, std::uint64_t index) const;
    // Builds the index-th term of depth d >= 2 from the materialized shallower levels.
    Interaction compose(std::size_t d, std::uint64_t index) const;

    EnumSpec spec_;
    std::vector<Interaction> shallow_;            // depth < spec.depth, in order
    std::vector<std::uint64_t> cumulative_;       // cumulative_[d] = S(d)
    std::vector<std::uint64_t> per_depth_;        // per_depth_[d] = a(d)
    std::vector<Interaction::Kind> binaries_;
    std::vector<Interaction::Kind> loops_;
    std::uint64_t total_ = 0;
};

// ---------------------------------------------------------------------------
// Back-to-back comparison of the two semantics

constexpr std::size_t kDefaultTraceCap = 1'000'000;

struct DiffOutcome {
    Interaction interaction;
    std::size_t bound = 0;
    bool equal = false;
    TraceSet only_u;
    TraceSet only_o;
};

/// Computes sigma_u and sigma_o at `bound` and reports their differences.
/// Throws ResourceLimit when either side exceeds `trace_cap` traces.
DiffOutcome diff_semantics(const Interaction& i, std::size_t bound, std::size_t trace_cap = kDefaultTraceCap);

struct BackToBackSummary {
    std::size_t checked = 0;
    std::size_t resource_limited = 0;
    std::vector<DiffOutcome> mismatches;
};

/// Runs diff_semantics over `terms` using `jobs` worker threads.
BackToBackSummary back_to_back(const std::vector<Interaction>& terms, std::size_t bound, std::size_t jobs = 1,
                               std::size_t trace_cap = kDefaultTraceCap);

/// `count` distinct terms drawn uniformly from the enumeration (all of them
/// when count >= size), in enumeration order.
std::vector<Interaction> sample_interactions(const Enumerator& en, std::size_t count, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Mutants and the verdict oracle

enum class MutantCategory : std::uint8_t { Accepted, SingleAction, Prefix, Addition, Replacement };

std::string_view to_string(MutantCategory c) noexcept;

struct MutantBatch {
    Trace origin;
    MutantCategory category = MutantCategory::Accepted;
    std::vector<Trace> mutants;
    std::vector<Verdict> expected;

    friend bool operator==(const MutantBatch&, const MutantBatch&) = default;
};

struct MutantConfig {
    std::size_t additions = 5;
    std::size_t replacements = 5;
    /// Extra loop budget granted to the oracle beyond the longest mutant.
    std::size_t horizon = 1;
};

/// Expected verdict of `t` read off a set of accepted traces: Covered if `t` is
/// in it, TooShort if it strictly prefixes a member, TooLong if a strict prefix
/// of `t` is a member, Out otherwise.
Verdict classify_against(const TraceSet& accepted, const Trace& t);

/// classify_against(sigma_o(i, bound), t). Exact when bound >= |t|.
Verdict classify_expected(const Interaction& i, const Trace& t, std::size_t bound);

/// Samples `samples` accepted traces of sigma_o(i, bound) and derives the
/// single-action, prefix, addition and replacement batches from them.
/// Throws EmptySemantics when nothing is accepted at this bound.
std::vector<MutantBatch> generate_mutants(const Interaction& i, const Signature& sig, std::size_t bound,
                                          std::size_t samples, std::uint64_t seed, const MutantConfig& config = {});

struct ConcordanceConfig {
    std::size_t bound = 3;
    std::size_t samples = 5;
    MutantConfig mutants;
    std::uint64_t seed = 0;
    std::size_t jobs = 1;
    /// Also check Covered <=> membership in sigma_o(i, |t|).
    bool check_membership = true;
};

struct Mismatch {
    Interaction model;
    Trace trace;
    MutantCategory category;
    Verdict expected;
    Verdict obtained;
};

struct ConcordanceReport {
    /// (category, expected, obtained) -> count
    std::map<std::tuple<MutantCategory, Verdict, Verdict>, std::size_t> table;
    std::vector<Mismatch> mismatches;
    std::size_t membership_checked = 0;
    std::vector<Mismatch> membership_mismatches;
    std::size_t models = 0;
    std::size_t traces = 0;
    std::size_t skipped_models = 0;
};

ConcordanceReport concordance(const std::vector<Interaction>& models, const Signature& sig,
                              const ConcordanceConfig& config);

/// Rows are obtained verdicts, columns are (category, expected verdict).
void write_concordance_tsv(std::ostream& out, const ConcordanceReport& report);
/// One JSON object per mismatch: model, trace, category, expected, obtained.
void write_mismatches_jsonl(std::ostream& out, const std::vector<Mismatch>& mismatches);

// ---------------------------------------------------------------------------
// Performance study

struct BenchRecord {
    std::size_t trace_index = 0;
    std::size_t length = 0;
    Verdict verdict = Verdict::Out;
    std::size_t explored_nodes = 0;
    double seconds = 0.0;
};

/// Analyzes every trace and each of its prefixes (lengths 0..|t|).
std::vector<BenchRecord> bench_trace_analysis(const Interaction& model, const std::vector<Trace>& traces);
void write_bench_tsv(std::ostream& out, const std::vector<BenchRecord>& records);

/// Accepted traces interleaving `instances` activations of the first loopPar of
/// `model`. Each trace is a uniformly random maximal run of the step relation
/// over the term with that loop instantiated `instances` times (other loops
/// skipped). Throws EmptySemantics if `model` has no loopPar.
std::vector<Trace> generate_concurrent_traces(const Interaction& model, std::size_t instances, std::size_t count,
                                              std::uint64_t seed);

/// Approximate MQTT-style session: a strict connect phase, then any number of
/// concurrent instances of five request/response exchanges, then a strict
/// disconnect phase.
Interaction mqtt_model();

// ---------------------------------------------------------------------------

/// Runs fn(0..n-1) on `jobs` threads. Callers write results by index so the
/// outcome does not depend on scheduling.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn);

}  // namespace interkernel
