#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace interkernel {

enum class Direction : std::uint8_t { Emit, Receive };

constexpr char direction_symbol(Direction d) noexcept { return d == Direction::Emit ? '!' : '?'; }

/// A communication action `l!m` (emission) or `l?m` (reception).
///
/// Actions order as their printed tokens compare, so trace sets sort the
/// same way their textual form does.
struct Action {
    std::string lifeline;
    Direction direction = Direction::Emit;
    std::string message;

    std::string to_string() const;

    friend bool operator==(const Action&, const Action&) = default;
    friend std::strong_ordering operator<=>(const Action& a, const Action& b) noexcept;
};

/// The lifeline an action occurs on.
inline const std::string& lifeline_of(const Action& act) noexcept { return act.lifeline; }

/// Returns true if `s` matches `[a-zA-Z][a-zA-Z0-9_]*`.
bool is_identifier(std::string_view s) noexcept;

/// A pair of ordered identifier sets (lifelines, messages).
class Signature {
public:
    /// Throws SignatureError on an empty set, a duplicate or a malformed identifier.
    Signature(std::vector<std::string> lifelines, std::vector<std::string> messages);

    /// Lifelines a, b, c, ... and messages m (when n_m == 1) or m1..mN.
    static Signature generic(std::size_t n_lifelines, std::size_t n_messages);

    const std::vector<std::string>& lifelines() const noexcept { return lifelines_; }
    const std::vector<std::string>& messages() const noexcept { return messages_; }

    bool has_lifeline(std::string_view l) const noexcept;
    bool has_message(std::string_view m) const noexcept;
    bool admits(const Action& act) const noexcept;

    /// Act(L,M): every action over the signature, lifeline-major then `!` before `?`.
    std::vector<Action> actions() const;

    friend bool operator==(const Signature&, const Signature&) = default;

private:
    std::vector<std::string> lifelines_;
    std::vector<std::string> messages_;
};

/// Dewey address of a subterm: a word over {1,2}. The empty word is the root.
///
/// Positions compare as their digit strings do, which puts a prefix before
/// its extensions (eps < 1 < 11 < 12 < 2).
class Position {
public:
    Position() = default;

    /// Parses a digit string; "eps" is accepted as an alias for the root.
    static Position parse(std::string_view text);

    bool is_root() const noexcept { return digits_.empty(); }
    std::size_t size() const noexcept { return digits_.size(); }
    int front() const noexcept { return digits_.front() - '0'; }
    int operator[](std::size_t k) const noexcept { return digits_[k] - '0'; }

    /// The position without its first digit.
    Position tail() const { return Position(digits_.substr(1)); }
    Position child(int digit) const { return Position(digits_ + static_cast<char>('0' + digit)); }
    Position prefixed(int digit) const { return Position(static_cast<char>('0' + digit) + digits_); }
    bool is_prefix_of(const Position& other) const noexcept;

    const std::string& digits() const noexcept { return digits_; }
    std::string to_string() const { return digits_; }

    friend bool operator==(const Position&, const Position&) = default;
    friend auto operator<=>(const Position&, const Position&) = default;

private:
    explicit Position(std::string digits) : digits_(std::move(digits)) {}
    std::string digits_;
};

/// An interaction term. Immutable value; copies are cheap and share structure.
class Interaction {
public:
    enum class Kind : std::uint8_t { Empty, Act, Strict, Seq, Alt, Par, LoopStrict, LoopSeq, LoopPar };

    /// The empty interaction.
    Interaction() = default;

    static Interaction action(Action act);
    static Interaction action(std::string lifeline, Direction d, std::string message);
    static Interaction binary(Kind kind, Interaction left, Interaction right);
    static Interaction loop(Kind kind, Interaction body);

    static Interaction strict(Interaction l, Interaction r) { return binary(Kind::Strict, std::move(l), std::move(r)); }
    static Interaction seq(Interaction l, Interaction r) { return binary(Kind::Seq, std::move(l), std::move(r)); }
    static Interaction alt(Interaction l, Interaction r) { return binary(Kind::Alt, std::move(l), std::move(r)); }
    static Interaction par(Interaction l, Interaction r) { return binary(Kind::Par, std::move(l), std::move(r)); }
    static Interaction loop_strict(Interaction b) { return loop(Kind::LoopStrict, std::move(b)); }
    static Interaction loop_seq(Interaction b) { return loop(Kind::LoopSeq, std::move(b)); }
    static Interaction loop_par(Interaction b) { return loop(Kind::LoopPar, std::move(b)); }

    Kind kind() const noexcept;
    bool is_empty() const noexcept { return kind() == Kind::Empty; }
    bool is_action() const noexcept { return kind() == Kind::Act; }
    bool is_binary() const noexcept;
    bool is_loop() const noexcept;
    bool is_leaf() const noexcept { return is_empty() || is_action(); }

    const Action& action() const;
    const Interaction& left() const;
    const Interaction& right() const;
    const Interaction& body() const { return left(); }
    /// Child 1 or 2.
    const Interaction& child(int digit) const { return digit == 1 ? left() : right(); }

    /// Leaves have depth 1.
    std::size_t depth() const noexcept;
    std::size_t node_count() const noexcept;
    std::size_t action_count() const noexcept;
    bool contains_loop() const noexcept;
    std::size_t hash() const noexcept;

    friend bool operator==(const Interaction& a, const Interaction& b) noexcept;
    friend std::strong_ordering operator<=>(const Interaction& a, const Interaction& b) noexcept;

private:
    struct Node;
    explicit Interaction(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// The binary operator a loop instantiates its body with.
Interaction::Kind loop_operator(Interaction::Kind loop_kind);
const char* kind_name(Interaction::Kind kind) noexcept;

/// All positions of `i`, in canonical (pre-order) order.
std::vector<Position> positions(const Interaction& i);

/// Throws PositionOutOfRange when `p` does not address a node of `i`.
const Interaction& subterm_at(const Interaction& i, const Position& p);

/// `i` with the subterm at `p` replaced by `s`.
Interaction replace_at(const Interaction& i, const Position& p, Interaction s);

std::set<Interaction> subterms(const Interaction& i);

/// Positions of loop nodes, canonical order.
std::vector<Position> loop_positions(const Interaction& i);

/// Number of loop nodes at strict prefixes of `p`, i.e. the loops a descent to `p` crosses.
std::size_t loops_on_path(const Interaction& i, const Position& p);

struct InteractionHash {
    std::size_t operator()(const Interaction& i) const noexcept { return i.hash(); }
};

// ---------------------------------------------------------------------------

struct Interaction::Node {
    Kind kind;
    Action act;
    Interaction left;
    Interaction right;
    std::size_t depth;
    std::size_t nodes;
    std::size_t actions;
    bool has_loop;
    std::size_t hash;
};

inline Interaction::Kind Interaction::kind() const noexcept { return node_ ? node_->kind : Kind::Empty; }

inline bool Interaction::is_binary() const noexcept {
    const Kind k = kind();
    return k == Kind::Strict || k == Kind::Seq || k == Kind::Alt || k == Kind::Par;
}

inline bool Interaction::is_loop() const noexcept {
    const Kind k = kind();
    return k == Kind::LoopStrict || k == Kind::LoopSeq || k == Kind::LoopPar;
}

inline std::size_t Interaction::depth() const noexcept { return node_ ? node_->depth : 1; }
inline std::size_t Interaction::node_count() const noexcept { return node_ ? node_->nodes : 1; }
inline std::size_t Interaction::action_count() const noexcept { return node_ ? node_->actions : 0; }
inline bool Interaction::contains_loop() const noexcept { return node_ && node_->has_loop; }
inline std::size_t Interaction::hash() const noexcept { return node_ ? node_->hash : 0x9e3779b9u; }

}  // namespace interkernel
