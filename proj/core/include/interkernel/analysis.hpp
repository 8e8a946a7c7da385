#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "interkernel/term.hpp"
#include "interkernel/trace.hpp"

namespace interkernel {

/// Verdicts, totally ordered Out < TooLong < TooShort < Covered.
enum class Verdict : std::uint8_t { Out = 0, TooLong = 1, TooShort = 2, Covered = 3 };

/// "Covered", "TooShort", "TooLong" or "Out".
std::string_view to_string(Verdict v) noexcept;
Verdict parse_verdict(std::string_view text);

/// Maximum under the verdict order. `vs` must not be empty.
Verdict verdict_max(std::span<const Verdict> vs);

struct WitnessStep {
    Position position;
    Interaction next;
};

struct AnalysisReport {
    Verdict verdict = Verdict::Out;
    /// Number of recursive analysis calls made.
    std::size_t explored_nodes = 0;
    /// The first derivation reaching `verdict`, in canonical position order.
    /// Absent exactly when the verdict is Out.
    std::optional<std::vector<WitnessStep>> witness;
};

/// Decides whether `t` is accepted by `i` (Covered), is a strict prefix of an
/// accepted trace (TooShort), extends an accepted trace (TooLong) or neither (Out).
/// Actions are matched by exact equality.
AnalysisReport analyze(const Interaction& i, const Trace& t);

/// As above, after checking `i` and `t` against `sig` (SignatureError otherwise).
AnalysisReport analyze(const Interaction& i, const Trace& t, const Signature& sig);

}  // namespace interkernel
