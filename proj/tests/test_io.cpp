#include <doctest.h>

#include "support.hpp"
#include "wta/error.hpp"
#include "wta/io.hpp"

using namespace wta;
using namespace wta::testing;

namespace {

std::size_t error_line(const std::string& text) {
  try {
    parse_automaton(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

const char* kHeader =
    "semifield: rational\n"
    "ranks: a:0 g:1 s:2\n"
    "states: p q\n"
    "final: p\n"
    "transitions:\n";

}  // namespace

TEST_CASE("the fixture parses and prints canonically") {
  std::string text = read_text_file(WTA_TEST_DATA "/example.wta");
  Wta m = parse_automaton(text);
  std::string once = print_automaton(m);
  CHECK(print_automaton(parse_automaton(once)) == once);
  CHECK(parse_automaton(once) == m);
  CHECK(once.find("sigma(q_b, q_1) -> q_2 : 4\n") != std::string::npos);
  CHECK(once.rfind("semifield: rational\nranks: alpha:0 beta:0 gamma:1 sigma:2\n", 0) == 0);
}

TEST_CASE("a single transition line") {
  Wta m = parse_automaton(std::string(kHeader) + "a -> q : 1\ns(q, q) -> p : -3/4 # comment\n");
  CHECK(m.num_transitions() == 2);
  CHECK(m.weight(1) == Weight::from_fraction(SemifieldKind::kRational, -3, 4));
  CHECK(m.alphabet().name(m.symbol(1)) == "s");
}

TEST_CASE("errors point at the offending line") {
  std::string h = kHeader;
  CHECK(error_line(h + "a -> q : 0\n") == 6);              // zero weight
  CHECK(error_line(h + "a -> q : 1\nb -> q : 1\n") == 7);  // unknown symbol
  CHECK(error_line(h + "a -> r : 1\n") == 6);              // unknown state
  CHECK(error_line(h + "g(p, q) -> q : 1\n") == 6);        // rank mismatch
  CHECK(error_line(h + "a -> q : 1\na -> q : 2\n") == 7);  // duplicate
  CHECK(error_line(h + "a -> q : 1/0\n") == 6);
  CHECK(error_line(h + "a -> q 1\n") == 6);
  CHECK(error_line(h + "a -> q : 1 extra\n") == 6);
  CHECK(error_line("semifield: tropical\n") == 1);
  CHECK(error_line("ranks: a:0\n") == 1);
  CHECK(error_line("semifield: viterbi\nranks: a:0\nstates: p\nfinal: p\ntransitions:\na -> p : -1\n") == 6);
  CHECK(error_line("semifield: boolean\nranks: a:0\nstates: p\nfinal: p\ntransitions:\na -> p : 2\n") == 6);
  CHECK(error_line("semifield: rational\nranks: a:0 a:1\n") == 2);
  CHECK(error_line("semifield: rational\nranks: a:0\nstates: p p\n") == 3);
  CHECK(error_line("semifield: rational\nranks: a:0\nstates: a\n") == 3);
  CHECK(error_line("semifield: rational\nranks: a:0\nstates: p\nfinal: q\n") == 4);
  CHECK(error_line("semifield: rational\nranks: a:0\nstates: p\nfinal:\n") == 4);
  CHECK(error_line("semifield: rational\n\n# only comments\nranks: a:x\n") == 4);
}

TEST_CASE("nondeterminism is accepted") {
  Wta m = parse_automaton(std::string(kHeader) + "a -> q : 1\na -> p : 2\n");
  CHECK_FALSE(m.is_deterministic());
}

TEST_CASE("empty sections") {
  Wta m = parse_automaton("semifield: boolean\nranks:\nstates:\nfinal:\ntransitions:\n");
  CHECK(m.num_states() == 0);
  CHECK(print_automaton(m) == "semifield: boolean\nranks:\nstates:\nfinal:\ntransitions:\n");
}

TEST_CASE("random automata round-trip") {
  Rng rng(71);
  std::size_t cases = 0;
  for (int i = 0; i < 10000; ++i, ++cases) {
    WtaShape shape;
    shape.states = i % 6;
    shape.density = 0.3;
    shape.deterministic = i % 3 != 0;
    shape.kind = static_cast<SemifieldKind>(i % 3);
    Wta m = random_wta(rng, shape);
    std::string text = print_automaton(m);
    Wta back = parse_automaton(text);
    REQUIRE(back == m);
    CHECK(print_automaton(back) == text);
  }
  CHECK(cases >= 10000);
}

TEST_CASE("weights files") {
  Wta m = parse_automaton(std::string(kHeader) + "a -> q : 1\ng(q) -> p : 2\n");
  PushWeights l = parse_push_weights("q 3/2 # scale q\n", m);
  CHECK(l[*m.find_state("q")] == Weight::from_fraction(SemifieldKind::kRational, 3, 2));
  CHECK(l[*m.find_state("p")].is_one());
  CHECK_THROWS_AS(parse_push_weights("p 2\n", m), ParseError);
  CHECK_THROWS_AS(parse_push_weights("q 0\n", m), ParseError);
  CHECK_THROWS_AS(parse_push_weights("r 1\n", m), ParseError);
  CHECK_THROWS_AS(parse_push_weights("q 1\nq 2\n", m), ParseError);
}
