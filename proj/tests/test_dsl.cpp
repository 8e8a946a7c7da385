#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "interkernel/errors.hpp"
#include "interkernel/harness.hpp"

using namespace interkernel;
using namespace helpers;

namespace {

// Grammar-valid text with random spacing.
std::string random_text(Rng& rng, std::size_t depth) {
    static const char* lifelines[] = {"a", "b"};
    static const char* messages[] = {"m1", "m2"};
    static const char* binops[] = {"strict", "seq", "alt", "par"};
    static const char* loops[] = {"loopStrict", "loopSeq", "loopPar"};
    auto sp = [&] { return std::string(rng.below(3) == 0 ? " " : ""); };
    if (depth <= 1 || rng.below(3) == 0) {
        if (rng.below(5) == 0) return sp() + "0" + sp();
        return sp() + lifelines[rng.below(2)] + (rng.below(2) ? "!" : "?") + messages[rng.below(2)] + sp();
    }
    if (rng.below(3) == 0) return sp() + loops[rng.below(3)] + sp() + "(" + random_text(rng, depth - 1) + ")" + sp();
    return sp() + binops[rng.below(4)] + "(" + random_text(rng, depth - 1) + "," + random_text(rng, depth - 1) + ")" +
           sp();
}

}  // namespace

TEST_SUITE("dsl") {
    TEST_CASE("parse interactions") {
        const auto i = parse_interaction("seq(alt(a!m1,b?m2),a!m3)");
        CHECK(i.kind() == Interaction::Kind::Seq);
        CHECK(i.left().kind() == Interaction::Kind::Alt);
        CHECK(i.left().right().action() == Action{"b", Direction::Receive, "m2"});
        CHECK(parse_interaction("0").is_empty());
        CHECK(parse_interaction("loopSeq(strict(a!m,b?m))") ==
              Interaction::loop_seq(Interaction::strict(I("a!m"), I("b?m"))));
        CHECK(parse_interaction("  seq ( a!m ,\n\tb?m )  ") == I("seq(a!m,b?m)"));
    }

    TEST_CASE("print is canonical") {
        CHECK(print_interaction(Interaction::seq(I("a!m"), Interaction())) == "seq(a!m,0)");
        CHECK(print_interaction(Interaction::loop_par(I("a!m1"))) == "loopPar(a!m1)");
        CHECK(print_interaction(I(" strict( a!m , loopStrict( b?m ) )")) == "strict(a!m,loopStrict(b?m))");
    }

    TEST_CASE("parse errors carry offset and tokens") {
        try {
            parse_interaction("seq(a!m;b?m)");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.offset() == 7);
            CHECK(e.expected().find(",") != std::string::npos);
        }
        CHECK_THROWS_AS(parse_interaction(""), ParseError);
        CHECK_THROWS_AS(parse_interaction("seq(a!m)"), ParseError);
        CHECK_THROWS_AS(parse_interaction("loop(a!m)"), ParseError);
        CHECK_THROWS_AS(parse_interaction("a!m b?m"), ParseError);
        CHECK_THROWS_AS(parse_interaction("a!"), ParseError);
        CHECK_THROWS_AS(parse_interaction("a.b!m"), ParseError);
        try {
            parse_interaction("a!m)");
        } catch (const ParseError& e) {
            CHECK(e.offset() == 3);
        }
        try {
            parse_interaction("par(a!m,");
        } catch (const ParseError& e) {
            CHECK(e.offset() == 8);
        }
    }

    TEST_CASE("signature checking") {
        const Signature sig({"a", "b"}, {"m1", "m2"});
        CHECK_NOTHROW(parse_interaction("alt(a!m1,b?m2)", sig));
        CHECK_THROWS_AS(parse_interaction("alt(a!m1,c?m2)", sig), SignatureError);
        CHECK_THROWS_AS(parse_interaction("alt(a!m1,b?m3)", sig), SignatureError);
        CHECK_THROWS_AS(parse_trace("a!m1.b?m3", sig), SignatureError);
        const auto inferred = infer_signature(I("seq(b!y,a?x)"));
        CHECK(inferred.lifelines() == std::vector<std::string>{"a", "b"});
        CHECK(inferred.messages() == std::vector<std::string>{"x", "y"});
        CHECK(infer_signature(I("0")).lifelines() == std::vector<std::string>{"a"});
    }

    TEST_CASE("traces") {
        CHECK(parse_trace("a!m1.a!m3").actions == std::vector<Action>{parse_action("a!m1"), parse_action("a!m3")});
        CHECK(parse_trace("").empty());
        CHECK(parse_trace("a!m.a!m.b?m.b?m").size() == 4);
        CHECK(print_trace(parse_trace(" a!m . b?m ")) == "a!m.b?m");
        CHECK(print_trace(Trace{}) == "");
        CHECK_THROWS_AS(parse_trace("a!m..b?m"), ParseError);
        CHECK_THROWS_AS(parse_trace("a!m."), ParseError);
    }

    TEST_CASE("trace files skip comments and blank lines") {
        std::istringstream in("# header\na!m.b?m\n\neps\n  b?m  \n# end\n");
        const auto ts = read_traces(in);
        REQUIRE(ts.size() == 3);
        CHECK(ts[0] == T("a!m.b?m"));
        CHECK(ts[1].empty());
        CHECK(ts[2] == T("b?m"));
    }

    TEST_CASE("positions serialize as digit strings") {
        CHECK(print_position(P("12")) == "12");
        CHECK(print_position(P("eps")) == "");
        CHECK(P("") == P("eps"));
        CHECK_THROWS(P("13"));
    }

    TEST_CASE("trace order follows printed tokens") {
        CHECK(T("a!m") < T("a?m"));
        CHECK(T("a!m") < T("a!m.a!m"));
        CHECK(T("a?m") < T("b!m"));
        CHECK(T("a!m1") < T("a!m2"));
    }

    TEST_CASE("fuzz: random grammar-valid text parses and round-trips") {
        Rng rng(2024);
        std::size_t tried = 0;
        while (tried < 3000) {
            const std::string text = random_text(rng, 6);
            if (text.size() > 40) continue;
            ++tried;
            INFO(text);
            Interaction i;
            REQUIRE_NOTHROW(i = parse_interaction(text, Signature({"a", "b"}, {"m1", "m2"})));
            const std::string printed = print_interaction(i);
            CHECK(parse_interaction(printed) == i);
            CHECK(print_interaction(parse_interaction(printed)) == printed);
        }
    }
}
