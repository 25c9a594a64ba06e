#include <gtest/gtest.h>

#include <json.hpp>

#include "cli.hpp"
#include "fink/fink.hpp"

namespace fink::cli {
namespace {

std::string data(const char* name) {
  return std::string(FINK_EXAMPLES_DIR) + "/" + name;
}

Outcome fink(std::vector<std::string> args) { return run(args); }

TEST(Member, WitnessForS2) {
  const auto out = fink({"member", "--k", "2", "--seq", data("P.seq"),
                         "--block", "0:2,1:1,3:1"});
  EXPECT_EQ(out.exit_code, 0);
  EXPECT_EQ(out.out, "yes 0^0 + 1^1 + 2^1\n");
  EXPECT_EQ(out.err, "");
}

TEST(Member, NegativeExitsTwo) {
  const auto out =
      fink({"member", "--k", "2", "--seq", data("P.seq"), "--block", "1:1"});
  EXPECT_EQ(out.exit_code, 2);
  EXPECT_EQ(out.out, "no\n");
}

TEST(Member, StarredAcceptsTetrisImages) {
  const auto out = fink({"member", "--seq", data("P.seq"), "--block",
                         "k=2|0:1,3:1", "--starred"});
  EXPECT_EQ(out.exit_code, 0);
  EXPECT_EQ(out.out, "yes 0^1 + 2^1\n");
}

TEST(Small, CertificateAtHorizon) {
  const auto out = fink({"small", "--P", "example13_P", "--Q", "example13_Q",
                         "--k", "2", "--n", "1", "--horizon", "9"});
  EXPECT_EQ(out.exit_code, 0);
  EXPECT_EQ(out.out, "empty_at_horizon\n");

  const auto self = fink({"small", "--P", "example13_P", "--Q", "evens",
                          "--k", "2", "--n", "0", "--horizon", "8"});
  EXPECT_EQ(self.exit_code, 2);
  EXPECT_EQ(self.out, "nonempty k=2|0:2 0^0 | 0^0\n");
}

TEST(Eval, RendersLiteral) {
  const auto out =
      fink({"eval", "--seq", data("P.seq"), "--witness", "0^0 + 2^1"});
  EXPECT_EQ(out.exit_code, 0);
  EXPECT_EQ(out.out, "k=2|0:2,3:1\n");
}

TEST(Span, ListsElementsWithWitnesses) {
  const auto out = fink({"span", "--seq", data("Q.seq")});
  EXPECT_EQ(out.exit_code, 0);
  const auto starred = fink({"span", "--seq", data("Q.seq"), "--starred"});
  // Every listed line re-parses and its witness evaluates to the value.
  const auto seq = load_sequence(data("Q.seq"));
  std::istringstream lines(starred.out);
  std::string line;
  std::size_t count = 0;
  bool saw_empty = false;
  while (std::getline(lines, line)) {
    if (line == "k=2|-") {
      saw_empty = true;
      continue;
    }
    const auto space = line.find(' ');
    const auto value = parse_block(line.substr(0, space));
    const auto witness = parse_combination(line.substr(space + 1), 2, true);
    EXPECT_EQ(evaluate(seq, witness), value) << line;
    ++count;
  }
  EXPECT_TRUE(saw_empty);
  EXPECT_EQ(count, enumerate_span(seq, true).elements.size());
  EXPECT_LT(std::count(out.out.begin(), out.out.end(), '\n'),
            std::count(starred.out.begin(), starred.out.end(), '\n'));
}

TEST(Intersect, ExplicitPrefixes) {
  const auto out =
      fink({"intersect", "--P", data("P.seq"), "--Q", data("Q.seq")});
  EXPECT_EQ(out.exit_code, 0);
  EXPECT_EQ(out.out,
            "k=2|0:2 0^0 | 0^0\n"
            "k=2|0:2,1:1 0^0 + 1^1 | 0^0 + 1^1\n"
            "k=2|0:2,1:1,3:1 0^0 + 1^1 + 2^1 | 0^0 + 1^1 + 2^1\n"
            "k=2|0:2,3:1 0^0 + 2^1 | 0^0 + 2^1\n");
  const auto shared = fink({"intersect", "--P", "example13_P", "--Q", "evens",
                          "--k", "2", "--horizon", "1"});
  EXPECT_EQ(shared.out, "k=2|0:2 0^0 | 0^0\n");
  const auto disjoint = fink({"intersect", "--P", "kind=periodic shift=2 k=2 base=1:2",
                              "--Q", "evens", "--k", "2", "--horizon", "8"});
  EXPECT_EQ(disjoint.exit_code, 2);
  EXPECT_EQ(disjoint.out, "none\n");
}

TEST(Valuation, SequenceAndIntersection) {
  EXPECT_EQ(fink({"valuation", "--seq", data("P.seq")}).out,
            "F=3 elements=3\n");
  EXPECT_EQ(fink({"valuation", "--P", data("P.seq"), "--Q",
                  data("evens.stream"), "--horizon", "8"})
                .out,
            "F=0 elements=1\n");
  EXPECT_EQ(fink({"valuation", "--P", "kind=periodic shift=2 k=2 base=1:2",
                  "--Q", "evens", "--k", "2", "--horizon", "8"})
                .out,
            "F=bottom elements=0\n");
}

TEST(Graph, DumpAndIntertwined) {
  const std::vector<std::string> pair{"--P", data("P.seq"), "--Q",
                                      data("Q.seq")};
  auto args = std::vector<std::string>{"graph"};
  args.insert(args.end(), pair.begin(), pair.end());
  args.insert(args.end(), {"--block", "0:2,1:1"});
  EXPECT_EQ(fink(args).out, "L0 - R0\nL1 - R1\n");

  args[0] = "intertwined";
  const auto no = fink(args);
  EXPECT_EQ(no.exit_code, 2);
  EXPECT_EQ(no.out, "no\n");

  args.back() = "0:2";
  const auto yes = fink(args);
  EXPECT_EQ(yes.exit_code, 0);
  EXPECT_EQ(yes.out, "yes\n");

  args.back() = "1:2";
  EXPECT_EQ(fink(args).exit_code, 2);
}

TEST(Extract, AndSplit) {
  EXPECT_EQ(fink({"extract", "--P", data("P.seq"), "--Q", data("Q.seq")}).out,
            "k=2|0:2 N=1 splits=0 0^0 | 0^0\n");
  EXPECT_EQ(fink({"split", "--P", data("P.seq"), "--Q", data("Q.seq"), "--p",
                  "0:2", "--q", "0:2,1:1"})
                .out,
            "stacked=k=2|0:2,1:1 lower=k=2|- upper=k=2|1:1\n");
}

TEST(Diag, TraceLines) {
  const auto out =
      fink({"diag", "--k", "2", "--horizon", "21", "--member", "example13_P",
            "--member", "example13_Q", "--member", "evens"});
  EXPECT_EQ(out.exit_code, 0);
  EXPECT_EQ(out.out,
            "step=0 q=k=2|0:2 J=- checks=[]\n"
            "step=1 q=k=2|3:2,4:1 J=1 checks=[0:0->0]\n"
            "step=2 q=k=2|8:2 J=3 checks=[0:0->0,1:3->3]\n");
}

TEST(Diag, NotAlmostDisjointIsAnError) {
  const auto out = fink({"diag", "--k", "2", "--horizon", "9", "--member",
                         "example13_P", "--member", "example13_P"});
  EXPECT_EQ(out.exit_code, 1);
  EXPECT_EQ(out.out, "");
  EXPECT_EQ(out.err.rfind("error: NotAlmostDisjoint: ", 0), 0u) << out.err;
}

TEST(Errors, CodesOnStderr) {
  const auto parse = fink({"span", "--seq", data("bad.seq")});
  EXPECT_EQ(parse.exit_code, 1);
  EXPECT_EQ(parse.err.rfind("error: ParseError at line 4, column 3: ", 0), 0u)
      << parse.err;

  const auto level =
      fink({"member", "--k", "3", "--seq", data("P.seq"), "--block", "1:1"});
  EXPECT_EQ(level.exit_code, 1);
  EXPECT_EQ(level.err.rfind("error: MismatchedLevel: ", 0), 0u);

  const auto cap = fink({"intersect", "--P", "evens", "--Q", "evens", "--k",
                         "2", "--horizon", "40", "--cap", "10"});
  EXPECT_EQ(cap.exit_code, 1);
  EXPECT_EQ(cap.err.rfind("error: EnumerationCapExceeded: ", 0), 0u);

  const auto horizon = fink({"intersect", "--P", "evens", "--Q", "evens",
                             "--k", "2"});
  EXPECT_EQ(horizon.exit_code, 1);
  EXPECT_EQ(horizon.err.rfind("error: InvalidArgument: ", 0), 0u);

  const auto builtin = fink({"small", "--P", "evens", "--Q", "evens",
                             "--horizon", "4"});
  EXPECT_EQ(builtin.exit_code, 1);

  EXPECT_EQ(fink({}).exit_code, 1);
  EXPECT_EQ(fink({"member", "--seq", data("P.seq")}).exit_code, 1);
  EXPECT_EQ(fink({"nonsense"}).exit_code, 1);
  EXPECT_EQ(fink({"--help"}).exit_code, 0);
}

TEST(Json, StableKeys) {
  const auto out = fink({"member", "--seq", data("P.seq"), "--block",
                         "0:2,1:1,3:1", "--format", "json"});
  EXPECT_EQ(out.out,
            "{\"block\":\"k=2|0:2,1:1,3:1\",\"member\":true,"
            "\"witness\":\"0^0 + 1^1 + 2^1\"}\n");
  const auto small =
      nlohmann::json::parse(fink({"small", "--P", "example13_P", "--Q",
                                  "example13_Q", "--k", "2", "--horizon", "9",
                                  "--format", "json"})
                                .out);
  EXPECT_EQ(small["verdict"], "empty_at_horizon");
  EXPECT_EQ(small["certificate"], "small? n=1 H=9 verdict=empty_at_horizon");
  const auto diag = nlohmann::json::parse(
      fink({"diag", "--k", "2", "--horizon", "21", "--member", "example13_P",
            "--member", "example13_Q", "--format", "json"})
          .out);
  ASSERT_EQ(diag["steps"].size(), 2u);
  EXPECT_TRUE(diag["steps"][0]["J"].is_null());
  EXPECT_EQ(diag["steps"][1]["checks"][0]["member"], 0);
}

TEST(Determinism, RepeatedRunsAreByteIdentical) {
  const std::vector<std::vector<std::string>> commands{
      {"span", "--seq", data("Q.seq"), "--starred"},
      {"intersect", "--P", "example13_P", "--Q", "example13_Q", "--k", "2",
       "--horizon", "9"},
      {"diag", "--k", "2", "--horizon", "21", "--member", "example13_P",
       "--member", "example13_Q", "--member", "evens", "--cycles", "2"},
      {"small", "--P", "example13_P", "--Q", "evens", "--k", "2",
       "--horizon", "8", "--format", "json"}};
  for (const auto& args : commands) {
    const auto a = fink(args);
    const auto b = fink(args);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.exit_code, b.exit_code);
    ASSERT_FALSE(a.out.empty());
    EXPECT_EQ(a.out.back(), '\n');
  }
}

}  // namespace
}  // namespace fink::cli
