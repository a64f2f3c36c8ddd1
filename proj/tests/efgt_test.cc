// Copyright 2026 The efce-dynamics Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "efce/builtin_games.hpp"
#include "efce/efgt.hpp"
#include "efce/errors.hpp"

namespace efce {
namespace {

constexpr const char* kFig1 = R"(# two-player example
game example
players 2
root A
decision A player 1 infoset A { 1 -> R ; 2 -> S }
decision R player 2 infoset R { left -> B ; right -> C }
decision B player 1 infoset B { 3 -> z3 ; 4 -> z4 }
decision C player 1 infoset C { 5 -> z5 ; 6 -> z6 }
decision S player 2 infoset S { left -> d1 ; right -> d2 }
decision d1 player 1 infoset D { 7 -> z7a ; 8 -> z8a }
decision d2 player 1 infoset D { 7 -> z7b ; 8 -> z8b }
leaf z3 { 1 -1 }
leaf z4 { 0 0 }
leaf z5 { -1 1 }
leaf z6 { 0.5 -0.5 }
leaf z7a { 1 0 }
leaf z8a { 0 1 }
leaf z7b { 2 2 }
leaf z8b { -2 -2 }
)";

TEST(ParseGame, Fig1Document) {
  const GameTree g = parse_game(kFig1);
  EXPECT_EQ(g.name(), "example");
  EXPECT_EQ(g.treeplex(0).num_infosets(), 4);
  EXPECT_EQ(g.treeplex(1).num_infosets(), 2);
  EXPECT_EQ(g.treeplex(0).num_sequences() - 1, 8);
  EXPECT_EQ(g.terminals().size(), 8u);
  EXPECT_EQ(g.node(g.root()).name, "A");
}

TEST(ParseGame, SingleLeaf) {
  const GameTree g = parse_game("players 1; root z; leaf z {0}");
  EXPECT_EQ(g.treeplex(0).num_sequences(), 1);
  EXPECT_EQ(g.treeplex(0).num_infosets(), 0);
  ASSERT_EQ(g.terminals().size(), 1u);
  EXPECT_EQ(g.node(g.terminals()[0]).name, "z");
  EXPECT_EQ(g.terminal_sequence(0, 0), kEmptySequence);
}

TEST(ParseGame, ChanceNode) {
  const GameTree g = parse_game(
      "players 1\nroot c\nchance c { h=0.25 -> x ; t=0.75 -> y }\n"
      "decision x player 1 infoset j { a -> z1 ; b -> z2 }\n"
      "decision y player 1 infoset j { a -> z3 ; b -> z4 }\n"
      "leaf z1 {1} leaf z2 {2} leaf z3 {3} leaf z4 {-4}\n");
  EXPECT_EQ(g.treeplex(0).num_infosets(), 1);
  EXPECT_DOUBLE_EQ(g.chance_reach(g.terminal_index(5)), 0.75);
  EXPECT_DOUBLE_EQ(g.payoff_range(0), 7.0);
}

TEST(ParseGame, PerfectRecallViolation) {
  // x and y share an infoset but player 1 chose differently to reach them.
  const char* doc =
      "players 1\nroot r\n"
      "decision r player 1 infoset j0 { a -> x ; b -> y }\n"
      "decision x player 1 infoset j1 { c -> z1 ; d -> z2 }\n"
      "decision y player 1 infoset j1 { c -> z3 ; d -> z4 }\n"
      "leaf z1 {0} leaf z2 {0} leaf z3 {0} leaf z4 {0}\n";
  try {
    parse_game(doc);
    FAIL() << "expected a perfect recall error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("perfect recall"), std::string::npos);
  }
}

TEST(ParseGame, AbsentMindednessIsRejected) {
  const char* doc =
      "players 1\nroot r\n"
      "decision r player 1 infoset j { a -> x ; b -> z1 }\n"
      "decision x player 1 infoset j { a -> z2 ; b -> z3 }\n"
      "leaf z1 {0} leaf z2 {0} leaf z3 {0}\n";
  EXPECT_THROW(parse_game(doc), ValidationError);
}

TEST(ParseGame, SyntaxErrorReportsPosition) {
  try {
    parse_game("players 1\nroot z\nleaf z { 0 \n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4);
  }
  try {
    parse_game("players 1\nroot r\ndecision r player 1 infoset j { a z }\nleaf z {0}\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.column(), 35);
  }
  EXPECT_THROW(parse_game("players x\n"), ParseError);
  EXPECT_THROW(parse_game("frobnicate\n"), ParseError);
  EXPECT_THROW(parse_game("players 1\nleaf z {1}\n"), ParseError);
}

TEST(ParseGame, ReferenceErrors) {
  EXPECT_THROW(parse_game("players 1\nroot r\ndecision r player 1 infoset j { a -> q }\n"),
               ParseError);
  EXPECT_THROW(parse_game("players 1\nroot z\nleaf z {0}\nleaf z {1}\n"), ParseError);
  EXPECT_THROW(parse_game("players 1\nroot z\nleaf z {0 1}\n"), ParseError);
  EXPECT_THROW(parse_game("players 1\nroot r\ndecision r player 2 infoset j { a -> z }\nleaf z {0}\n"),
               ParseError);
}

TEST(ParseGame, TopologyErrors) {
  // Two parents.
  EXPECT_THROW(parse_game("players 1\nroot r\ndecision r player 1 infoset j { a -> z ; b -> z }\n"
                          "leaf z {0}\n"),
               ValidationError);
  // Unreachable node.
  EXPECT_THROW(parse_game("players 1\nroot z\nleaf z {0}\nleaf w {0}\n"), ValidationError);
  // Cycle detached from the root.
  EXPECT_THROW(parse_game("players 1\nroot z\nleaf z {0}\n"
                          "decision p player 1 infoset j { a -> q }\n"
                          "decision q player 1 infoset k { a -> p }\n"),
               ValidationError);
}

TEST(ParseGame, InfosetActionMismatch) {
  EXPECT_THROW(parse_game("players 2\nroot c\nchance c { h=0.5 -> x ; t=0.5 -> y }\n"
                          "decision x player 1 infoset j { a -> z1 ; b -> z2 }\n"
                          "decision y player 1 infoset j { a -> z3 ; c -> z4 }\n"
                          "leaf z1 {0 0} leaf z2 {0 0} leaf z3 {0 0} leaf z4 {0 0}\n"),
               ValidationError);
}

TEST(ParseGame, ChanceProbabilities) {
  const std::string head = "players 1\nroot c\nchance c { h=";
  const std::string tail = " -> z1 ; t=0.5 -> z2 }\nleaf z1 {0} leaf z2 {0}\n";
  EXPECT_NO_THROW(parse_game(head + "0.5000000000001" + tail));
  EXPECT_THROW(parse_game(head + "0.4" + tail), ValidationError);
  EXPECT_THROW(parse_game("players 1\nroot c\nchance c { h=0 -> z1 ; t=1 -> z2 }\n"
                          "leaf z1 {0} leaf z2 {0}\n"),
               ValidationError);
  EXPECT_THROW(parse_game("players 1\nroot c\nchance c { h=-0.5 -> z1 ; t=1.5 -> z2 }\n"
                          "leaf z1 {0} leaf z2 {0}\n"),
               ValidationError);
}

TEST(ParseGame, RoundTrip) {
  std::vector<GameTree> games{parse_game(kFig1), fig1_game(11), kuhn3_game()};
  for (std::uint64_t s = 0; s < 25; ++s) {
    games.push_back(random_tree_game({.depth = 4, .branching = 3, .players = 3, .seed = s}));
  }
  for (const GameTree& g : games) {
    const std::string text = serialize_game(g);
    const GameTree back = parse_game(text);
    EXPECT_TRUE(back.same_structure(g)) << g.name();
    EXPECT_EQ(serialize_game(back), text);
  }
}

}  // namespace
}  // namespace efce
