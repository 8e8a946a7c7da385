#include "interkernel/term.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

#include "interkernel/errors.hpp"

namespace interkernel {

namespace {

std::size_t mix(std::size_t seed, std::size_t value) noexcept {
    return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

// Character `k` of the printed token lifeline+symbol+message; -1 past the end.
int token_char(const Action& a, std::size_t k) noexcept {
    if (k < a.lifeline.size()) return static_cast<unsigned char>(a.lifeline[k]);
    if (k == a.lifeline.size()) return direction_symbol(a.direction);
    k -= a.lifeline.size() + 1;
    if (k < a.message.size()) return static_cast<unsigned char>(a.message[k]);
    return -1;
}

}  // namespace

std::string Action::to_string() const {
    std::string out;
    out.reserve(lifeline.size() + message.size() + 1);
    out += lifeline;
    out += direction_symbol(direction);
    out += message;
    return out;
}

std::strong_ordering operator<=>(const Action& a, const Action& b) noexcept {
    for (std::size_t k = 0;; ++k) {
        const int ca = token_char(a, k);
        const int cb = token_char(b, k);
        if (ca != cb) return ca <=> cb;
        if (ca < 0) return std::strong_ordering::equal;
    }
}

bool is_identifier(std::string_view s) noexcept {
    if (s.empty()) return false;
    auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!alpha(s.front())) return false;
    return std::all_of(s.begin() + 1, s.end(), [&](char c) { return alpha(c) || digit(c) || c == '_'; });
}

Signature::Signature(std::vector<std::string> lifelines, std::vector<std::string> messages)
    : lifelines_(std::move(lifelines)), messages_(std::move(messages)) {
    auto check = [](const std::vector<std::string>& ids, const char* what) {
        if (ids.empty()) throw SignatureError(std::string("signature has no ") + what);
        std::unordered_set<std::string> seen;
        for (const auto& id : ids) {
            if (!is_identifier(id)) throw SignatureError("malformed identifier '" + id + "'");
            if (!seen.insert(id).second) throw SignatureError("duplicate identifier '" + id + "'");
        }
    };
    check(lifelines_, "lifelines");
    check(messages_, "messages");
}

Signature Signature::generic(std::size_t n_lifelines, std::size_t n_messages) {
    std::vector<std::string> ls, ms;
    for (std::size_t k = 0; k < n_lifelines; ++k) {
        ls.push_back(k < 26 ? std::string(1, static_cast<char>('a' + k)) : "l" + std::to_string(k + 1));
    }
    if (n_messages == 1) {
        ms.emplace_back("m");
    } else {
        for (std::size_t k = 0; k < n_messages; ++k) ms.push_back("m" + std::to_string(k + 1));
    }
    return Signature(std::move(ls), std::move(ms));
}

bool Signature::has_lifeline(std::string_view l) const noexcept {
    return std::find(lifelines_.begin(), lifelines_.end(), l) != lifelines_.end();
}

bool Signature::has_message(std::string_view m) const noexcept {
    return std::find(messages_.begin(), messages_.end(), m) != messages_.end();
}

bool Signature::admits(const Action& act) const noexcept {
    return has_lifeline(act.lifeline) && has_message(act.message);
}

std::vector<Action> Signature::actions() const {
    std::vector<Action> out;
    for (const auto& l : lifelines_) {
        for (Direction d : {Direction::Emit, Direction::Receive}) {
            for (const auto& m : messages_) out.push_back(Action{l, d, m});
        }
    }
    return out;
}

Position Position::parse(std::string_view text) {
    if (text == "eps") return Position();
    for (std::size_t k = 0; k < text.size(); ++k) {
        if (text[k] != '1' && text[k] != '2') {
            throw ParseError(k, "position digit 1 or 2", std::string("'") + text[k] + "'");
        }
    }
    return Position(std::string(text));
}

bool Position::is_prefix_of(const Position& other) const noexcept {
    return other.digits_.size() >= digits_.size() &&
           other.digits_.compare(0, digits_.size(), digits_) == 0;
}

Interaction Interaction::action(Action act) {
    const std::size_t h = mix(mix(std::hash<std::string>{}(act.lifeline), static_cast<std::size_t>(act.direction)),
                              std::hash<std::string>{}(act.message));
    return Interaction(std::make_shared<const Node>(
        Node{Kind::Act, std::move(act), Interaction(), Interaction(), 1, 1, 1, false, h}));
}

Interaction Interaction::action(std::string lifeline, Direction d, std::string message) {
    return action(Action{std::move(lifeline), d, std::move(message)});
}

Interaction Interaction::binary(Kind kind, Interaction left, Interaction right) {
    if (kind != Kind::Strict && kind != Kind::Seq && kind != Kind::Alt && kind != Kind::Par) {
        throw std::invalid_argument("Interaction::binary: not a binary operator");
    }
    const std::size_t depth = 1 + std::max(left.depth(), right.depth());
    const std::size_t nodes = 1 + left.node_count() + right.node_count();
    const std::size_t actions = left.action_count() + right.action_count();
    const bool has_loop = left.contains_loop() || right.contains_loop();
    const std::size_t h = mix(mix(static_cast<std::size_t>(kind) * 0x100000001b3ULL, left.hash()), right.hash());
    return Interaction(std::make_shared<const Node>(
        Node{kind, Action{}, std::move(left), std::move(right), depth, nodes, actions, has_loop, h}));
}

Interaction Interaction::loop(Kind kind, Interaction body) {
    if (kind != Kind::LoopStrict && kind != Kind::LoopSeq && kind != Kind::LoopPar) {
        throw std::invalid_argument("Interaction::loop: not a loop operator");
    }
    const std::size_t depth = 1 + body.depth();
    const std::size_t nodes = 1 + body.node_count();
    const std::size_t actions = body.action_count();
    const std::size_t h = mix(static_cast<std::size_t>(kind) * 0x100000001b3ULL, body.hash());
    return Interaction(std::make_shared<const Node>(
        Node{kind, Action{}, std::move(body), Interaction(), depth, nodes, actions, true, h}));
}

const Action& Interaction::action() const {
    if (!is_action()) throw std::logic_error("Interaction::action on a non-action term");
    return node_->act;
}

const Interaction& Interaction::left() const {
    if (is_leaf()) throw std::logic_error("Interaction::left on a leaf");
    return node_->left;
}

const Interaction& Interaction::right() const {
    if (!is_binary()) throw std::logic_error("Interaction::right on a non-binary term");
    return node_->right;
}

bool operator==(const Interaction& a, const Interaction& b) noexcept {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind() || a.hash() != b.hash() || a.node_count() != b.node_count()) return false;
    switch (a.kind()) {
        case Interaction::Kind::Empty:
            return true;
        case Interaction::Kind::Act:
            return a.node_->act == b.node_->act;
        default:
            return a.node_->left == b.node_->left && a.node_->right == b.node_->right;
    }
}

std::strong_ordering operator<=>(const Interaction& a, const Interaction& b) noexcept {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (auto c = a.kind() <=> b.kind(); c != 0) return c;
    switch (a.kind()) {
        case Interaction::Kind::Empty:
            return std::strong_ordering::equal;
        case Interaction::Kind::Act:
            return a.node_->act <=> b.node_->act;
        default:
            if (auto c = a.node_->left <=> b.node_->left; c != 0) return c;
            return a.node_->right <=> b.node_->right;
    }
}

Interaction::Kind loop_operator(Interaction::Kind loop_kind) {
    switch (loop_kind) {
        case Interaction::Kind::LoopStrict: return Interaction::Kind::Strict;
        case Interaction::Kind::LoopSeq: return Interaction::Kind::Seq;
        case Interaction::Kind::LoopPar: return Interaction::Kind::Par;
        default: throw std::invalid_argument("loop_operator: not a loop kind");
    }
}

const char* kind_name(Interaction::Kind kind) noexcept {
    switch (kind) {
        case Interaction::Kind::Empty: return "0";
        case Interaction::Kind::Act: return "act";
        case Interaction::Kind::Strict: return "strict";
        case Interaction::Kind::Seq: return "seq";
        case Interaction::Kind::Alt: return "alt";
        case Interaction::Kind::Par: return "par";
        case Interaction::Kind::LoopStrict: return "loopStrict";
        case Interaction::Kind::LoopSeq: return "loopSeq";
        case Interaction::Kind::LoopPar: return "loopPar";
    }
    return "?";
}

namespace {

void collect_positions(const Interaction& i, const Position& here, std::vector<Position>& out) {
    out.push_back(here);
    if (i.is_leaf()) return;
    collect_positions(i.left(), here.child(1), out);
    if (i.is_binary()) collect_positions(i.right(), here.child(2), out);
}

void collect_loops(const Interaction& i, const Position& here, std::vector<Position>& out) {
    if (!i.contains_loop()) return;
    if (i.is_loop()) out.push_back(here);
    collect_loops(i.left(), here.child(1), out);
    if (i.is_binary()) collect_loops(i.right(), here.child(2), out);
}

void collect_subterms(const Interaction& i, std::set<Interaction>& out) {
    if (!out.insert(i).second) return;  // an equal subterm's subterms are already in
    if (i.is_leaf()) return;
    collect_subterms(i.left(), out);
    if (i.is_binary()) collect_subterms(i.right(), out);
}

Interaction replace_rec(const Interaction& i, const Position& p, std::size_t k, Interaction s) {
    if (k == p.size()) return s;
    const int d = p[k];
    if (i.is_leaf() || (d == 2 && !i.is_binary())) {
        throw PositionOutOfRange("position " + p.to_string() + " is not a position of the term");
    }
    if (i.is_loop()) return Interaction::loop(i.kind(), replace_rec(i.body(), p, k + 1, std::move(s)));
    if (d == 1) return Interaction::binary(i.kind(), replace_rec(i.left(), p, k + 1, std::move(s)), i.right());
    return Interaction::binary(i.kind(), i.left(), replace_rec(i.right(), p, k + 1, std::move(s)));
}

}  // namespace

std::vector<Position> positions(const Interaction& i) {
    std::vector<Position> out;
    out.reserve(i.node_count());
    collect_positions(i, Position(), out);
    return out;
}

const Interaction& subterm_at(const Interaction& i, const Position& p) {
    const Interaction* cur = &i;
    for (std::size_t k = 0; k < p.size(); ++k) {
        const int d = p[k];
        if (cur->is_leaf() || (d == 2 && !cur->is_binary())) {
            throw PositionOutOfRange("position " + p.to_string() + " is not a position of the term");
        }
        cur = &cur->child(d);
    }
    return *cur;
}

Interaction replace_at(const Interaction& i, const Position& p, Interaction s) {
    return replace_rec(i, p, 0, std::move(s));
}

std::set<Interaction> subterms(const Interaction& i) {
    std::set<Interaction> out;
    collect_subterms(i, out);
    return out;
}

std::vector<Position> loop_positions(const Interaction& i) {
    std::vector<Position> out;
    collect_loops(i, Position(), out);
    return out;
}

std::size_t loops_on_path(const Interaction& i, const Position& p) {
    std::size_t count = 0;
    const Interaction* cur = &i;
    for (std::size_t k = 0; k < p.size(); ++k) {
        const int d = p[k];
        if (cur->is_leaf() || (d == 2 && !cur->is_binary())) {
            throw PositionOutOfRange("position " + p.to_string() + " is not a position of the term");
        }
        if (cur->is_loop()) ++count;
        cur = &cur->child(d);
    }
    return count;
}

}  // namespace interkernel
