#include <algorithm>
#include "interkernel/dsl.hpp"

#include <fstream>
#include <istream>

#include "interkernel/errors.hpp"

namespace interkernel {

Trace Trace::prefix(std::size_t n) const {
    return Trace(std::vector<Action>(actions.begin(), actions.begin() + static_cast<std::ptrdiff_t>(std::min(n, size()))));
}

bool Trace::is_prefix_of(const Trace& other) const noexcept {
    return size() <= other.size() && std::equal(actions.begin(), actions.end(), other.actions.begin());
}

namespace {

bool ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9') || c == '_'; }
bool space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Interaction interaction() {
        skip();
        if (peek() == '0') {
            ++pos_;
            if (pos_ < text_.size() && ident_char(text_[pos_])) fail("'0' or identifier");
            return Interaction();
        }
        const std::size_t start = pos_;
        const std::string id = ident("interaction");
        skip();
        const char c = peek();
        if (c == '!' || c == '?') return Interaction::action(action_tail(id));
        if (c != '(') fail("'(', '!' or '?'");
        const auto kind = operator_kind(id, start);
        ++pos_;
        Interaction first = interaction();
        if (kind == Interaction::Kind::LoopStrict || kind == Interaction::Kind::LoopSeq ||
            kind == Interaction::Kind::LoopPar) {
            expect(')');
            return Interaction::loop(kind, std::move(first));
        }
        expect(',');
        Interaction second = interaction();
        expect(')');
        return Interaction::binary(kind, std::move(first), std::move(second));
    }

    Action action() {
        skip();
        const std::string id = ident("lifeline identifier");
        skip();
        return action_tail(id);
    }

    Trace trace() {
        Trace t;
        skip();
        if (at_end()) return t;
        t.actions.push_back(action());
        skip();
        while (peek() == '.') {
            ++pos_;
            t.actions.push_back(action());
            skip();
        }
        return t;
    }

    void finish() {
        skip();
        if (!at_end()) fail("end of input");
    }

private:
    Action action_tail(const std::string& lifeline) {
        const char c = peek();
        if (c != '!' && c != '?') fail("'!' or '?'");
        ++pos_;
        skip();
        std::string msg = ident("message identifier");
        return Action{lifeline, c == '!' ? Direction::Emit : Direction::Receive, std::move(msg)};
    }

    Interaction::Kind operator_kind(const std::string& id, std::size_t start) {
        using K = Interaction::Kind;
        if (id == "strict") return K::Strict;
        if (id == "seq") return K::Seq;
        if (id == "alt") return K::Alt;
        if (id == "par") return K::Par;
        if (id == "loopStrict") return K::LoopStrict;
        if (id == "loopSeq") return K::LoopSeq;
        if (id == "loopPar") return K::LoopPar;
        throw ParseError(start, "operator name", "'" + id + "'");
    }

    std::string ident(const char* what) {
        if (at_end() || !ident_start(text_[pos_])) fail(what);
        const std::size_t start = pos_;
        while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    void expect(char c) {
        skip();
        if (peek() != c) fail(std::string("'") + c + "'");
        ++pos_;
    }

    void skip() {
        while (pos_ < text_.size() && space(text_[pos_])) ++pos_;
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    [[noreturn]] void fail(const std::string& expected) const {
        std::string found = at_end() ? "end of input" : std::string("'") + text_[pos_] + "'";
        throw ParseError(pos_, expected, found);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

void print_rec(const Interaction& i, std::string& out) {
    switch (i.kind()) {
        case Interaction::Kind::Empty:
            out += '0';
            return;
        case Interaction::Kind::Act:
            out += i.action().to_string();
            return;
        default:
            break;
    }
    out += kind_name(i.kind());
    out += '(';
    print_rec(i.left(), out);
    if (i.is_binary()) {
        out += ',';
        print_rec(i.right(), out);
    }
    out += ')';
}

void collect_ids(const Interaction& i, std::vector<std::string>& ls, std::vector<std::string>& ms) {
    if (i.is_empty()) return;
    if (i.is_action()) {
        const Action& a = i.action();
        if (std::find(ls.begin(), ls.end(), a.lifeline) == ls.end()) ls.push_back(a.lifeline);
        if (std::find(ms.begin(), ms.end(), a.message) == ms.end()) ms.push_back(a.message);
        return;
    }
    collect_ids(i.left(), ls, ms);
    if (i.is_binary()) collect_ids(i.right(), ls, ms);
}

void check_action(const Action& a, const Signature& sig) {
    if (!sig.has_lifeline(a.lifeline)) throw SignatureError("unknown lifeline '" + a.lifeline + "' in " + a.to_string());
    if (!sig.has_message(a.message)) throw SignatureError("unknown message '" + a.message + "' in " + a.to_string());
}

}  // namespace

Interaction parse_interaction(std::string_view text) {
    Parser p(text);
    Interaction i = p.interaction();
    p.finish();
    return i;
}

Interaction parse_interaction(std::string_view text, const Signature& sig) {
    Interaction i = parse_interaction(text);
    check_signature(i, sig);
    return i;
}

std::string print_interaction(const Interaction& i) {
    std::string out;
    print_rec(i, out);
    return out;
}

Signature infer_signature(const Interaction& i) {
    std::vector<std::string> ls, ms;
    collect_ids(i, ls, ms);
    std::sort(ls.begin(), ls.end());
    std::sort(ms.begin(), ms.end());
    if (ls.empty()) ls.emplace_back("a");
    if (ms.empty()) ms.emplace_back("m");
    return Signature(std::move(ls), std::move(ms));
}

void check_signature(const Interaction& i, const Signature& sig) {
    if (i.is_empty()) return;
    if (i.is_action()) {
        check_action(i.action(), sig);
        return;
    }
    check_signature(i.left(), sig);
    if (i.is_binary()) check_signature(i.right(), sig);
}

void check_signature(const Trace& t, const Signature& sig) {
    for (const auto& a : t.actions) check_action(a, sig);
}

Action parse_action(std::string_view text) {
    Parser p(text);
    Action a = p.action();
    p.finish();
    return a;
}

Trace parse_trace(std::string_view text) {
    Parser p(text);
    Trace t = p.trace();
    p.finish();
    return t;
}

Trace parse_trace(std::string_view text, const Signature& sig) {
    Trace t = parse_trace(text);
    check_signature(t, sig);
    return t;
}

std::string print_trace(const Trace& t) {
    std::string out;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (k) out += '.';
        out += t[k].to_string();
    }
    return out;
}

std::vector<Trace> read_traces(std::istream& in) {
    std::vector<Trace> out;
    std::string line;
    while (std::getline(in, line)) {
        std::string_view v(line);
        while (!v.empty() && space(v.front())) v.remove_prefix(1);
        while (!v.empty() && space(v.back())) v.remove_suffix(1);
        if (v.empty() || v.front() == '#') continue;
        if (v == "eps") {
            out.emplace_back();
            continue;
        }
        out.push_back(parse_trace(v));
    }
    return out;
}

std::vector<Trace> read_traces_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open trace file '" + path + "'");
    return read_traces(in);
}

}  // namespace interkernel
