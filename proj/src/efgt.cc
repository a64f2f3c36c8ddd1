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

#include "efce/efgt.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "efce/errors.hpp"

namespace efce {
namespace {

struct Token {
  enum Kind { kWord, kLBrace, kRBrace, kSemi, kArrow, kEquals, kEnd } kind;
  std::string text;
  int line;
  int column;
};

bool is_word_char(char c) {
  return !(c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '{' || c == '}' ||
           c == ';' || c == '=' || c == '#');
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t m = 0; m < k; ++m, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    const int l = line;
    const int k = col;
    switch (c) {
      case '{':
        out.push_back({Token::kLBrace, "{", l, k});
        advance(1);
        continue;
      case '}':
        out.push_back({Token::kRBrace, "}", l, k});
        advance(1);
        continue;
      case ';':
        out.push_back({Token::kSemi, ";", l, k});
        advance(1);
        continue;
      case '=':
        out.push_back({Token::kEquals, "=", l, k});
        advance(1);
        continue;
      default:
        break;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      out.push_back({Token::kArrow, "->", l, k});
      advance(2);
      continue;
    }
    std::size_t end = i;
    while (end < text.size() && is_word_char(text[end]) &&
           !(text[end] == '-' && end + 1 < text.size() && text[end + 1] == '>')) {
      ++end;
    }
    out.push_back({Token::kWord, std::string(text.substr(i, end - i)), l, k});
    advance(end - i);
  }
  out.push_back({Token::kEnd, "end of input", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(lex(text)) {}

  GameTree parse() {
    std::optional<Token> root_ref;
    while (peek().kind != Token::kEnd) {
      if (peek().kind == Token::kSemi) {
        ++pos_;
        continue;
      }
      const Token kw = expect_word("a statement keyword");
      if (kw.text == "game") {
        name_ = expect_word("game name").text;
      } else if (kw.text == "players") {
        const Token t = expect_word("player count");
        num_players_ = parse_int(t);
        if (num_players_ < 1) throw ParseError("player count must be positive", t.line, t.column);
      } else if (kw.text == "root") {
        root_ref = expect_word("root node id");
      } else if (kw.text == "chance") {
        parse_chance(kw);
      } else if (kw.text == "decision") {
        parse_decision(kw);
      } else if (kw.text == "leaf") {
        parse_leaf(kw);
      } else {
        throw ParseError("unknown statement '" + kw.text + "'", kw.line, kw.column);
      }
    }
    const Token& end = tokens_.back();
    if (num_players_ < 1) throw ParseError("missing 'players' statement", end.line, end.column);
    if (!root_ref) throw ParseError("missing 'root' statement", end.line, end.column);
    const int root = resolve(*root_ref);
    for (std::size_t id = 0; id < nodes_.size(); ++id) {
      for (const Token& ref : child_refs_[id]) nodes_[id].children.push_back(resolve(ref));
      if (nodes_[id].kind == NodeKind::kDecision && nodes_[id].player >= num_players_) {
        const Token& t = player_tokens_[id];
        throw ParseError("player " + t.text + " out of range", t.line, t.column);
      }
      if (nodes_[id].kind == NodeKind::kTerminal &&
          static_cast<int>(nodes_[id].payoffs.size()) != num_players_) {
        throw ParseError("leaf '" + nodes_[id].name + "' needs " + std::to_string(num_players_) +
                             " payoffs",
                         nodes_[id].source_line, 1);
      }
    }
    return GameTree::from_nodes(name_, num_players_, root, std::move(nodes_));
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  Token next() {
    Token t = tokens_[pos_];
    if (t.kind != Token::kEnd) ++pos_;
    return t;
  }

  Token expect(Token::Kind kind, const char* what) {
    Token t = next();
    if (t.kind != kind) {
      throw ParseError(std::string("expected ") + what + ", found '" + t.text + "'", t.line,
                       t.column);
    }
    return t;
  }

  Token expect_word(const char* what) { return expect(Token::kWord, what); }

  static double parse_double(const Token& t) {
    double v = 0.0;
    const char* b = t.text.data();
    const char* e = b + t.text.size();
    if (*b == '+') ++b;
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e) {
      throw ParseError("invalid number '" + t.text + "'", t.line, t.column);
    }
    return v;
  }

  static int parse_int(const Token& t) {
    int v = 0;
    const char* b = t.text.data();
    const char* e = b + t.text.size();
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e) {
      throw ParseError("invalid integer '" + t.text + "'", t.line, t.column);
    }
    return v;
  }

  int declare(const Token& kw, const Token& id) {
    auto [it, inserted] = ids_.try_emplace(id.text, static_cast<int>(nodes_.size()));
    if (!inserted) throw ParseError("duplicate node id '" + id.text + "'", id.line, id.column);
    nodes_.emplace_back();
    nodes_.back().name = id.text;
    nodes_.back().source_line = kw.line;
    child_refs_.emplace_back();
    player_tokens_.push_back(kw);
    return it->second;
  }

  int resolve(const Token& ref) const {
    auto it = ids_.find(ref.text);
    if (it == ids_.end()) {
      throw ParseError("reference to undefined node '" + ref.text + "'", ref.line, ref.column);
    }
    return it->second;
  }

  bool close_or_separator() {
    if (peek().kind == Token::kSemi) ++pos_;
    if (peek().kind == Token::kRBrace) {
      ++pos_;
      return true;
    }
    return false;
  }

  void parse_chance(const Token& kw) {
    const int id = declare(kw, expect_word("node id"));
    nodes_[id].kind = NodeKind::kChance;
    expect(Token::kLBrace, "'{'");
    if (close_or_separator()) return;
    while (true) {
      nodes_[id].actions.push_back(expect_word("chance outcome").text);
      expect(Token::kEquals, "'='");
      nodes_[id].probabilities.push_back(parse_double(expect_word("probability")));
      expect(Token::kArrow, "'->'");
      child_refs_[id].push_back(expect_word("child id"));
      if (close_or_separator()) return;
      if (peek().kind != Token::kWord) expect(Token::kSemi, "';' or '}'");
    }
  }

  void parse_decision(const Token& kw) {
    const int id = declare(kw, expect_word("node id"));
    Node& node = nodes_[id];
    node.kind = NodeKind::kDecision;
    const Token p = expect_word("'player'");
    if (p.text != "player") throw ParseError("expected 'player'", p.line, p.column);
    const Token who = expect_word("player number");
    node.player = parse_int(who) - 1;
    if (node.player < 0) throw ParseError("players are numbered from 1", who.line, who.column);
    player_tokens_[id] = who;
    const Token s = expect_word("'infoset'");
    if (s.text != "infoset") throw ParseError("expected 'infoset'", s.line, s.column);
    node.infoset_label = expect_word("infoset label").text;
    expect(Token::kLBrace, "'{'");
    if (close_or_separator()) return;
    while (true) {
      nodes_[id].actions.push_back(expect_word("action").text);
      expect(Token::kArrow, "'->'");
      child_refs_[id].push_back(expect_word("child id"));
      if (close_or_separator()) return;
      if (peek().kind != Token::kWord) expect(Token::kSemi, "';' or '}'");
    }
  }

  void parse_leaf(const Token& kw) {
    const int id = declare(kw, expect_word("node id"));
    nodes_[id].kind = NodeKind::kTerminal;
    expect(Token::kLBrace, "'{'");
    while (peek().kind == Token::kWord) nodes_[id].payoffs.push_back(parse_double(next()));
    expect(Token::kRBrace, "payoff or '}'");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::string name_ = "game";
  int num_players_ = 0;
  std::vector<Node> nodes_;
  std::vector<std::vector<Token>> child_refs_;
  std::vector<Token> player_tokens_;
  std::unordered_map<std::string, int> ids_;
};

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

GameTree parse_game(std::string_view text) { return Parser(text).parse(); }

GameTree load_game(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_game(buf.str());
}

std::string serialize_game(const GameTree& game) {
  std::ostringstream out;
  out << "game " << game.name() << "\n";
  out << "players " << game.num_players() << "\n";
  out << "root " << game.node(game.root()).name << "\n";
  for (const Node& node : game.nodes()) {
    switch (node.kind) {
      case NodeKind::kChance:
        out << "chance " << node.name << " {";
        for (std::size_t a = 0; a < node.actions.size(); ++a) {
          out << (a ? " ; " : " ") << node.actions[a] << "=" << number(node.probabilities[a])
              << " -> " << game.node(node.children[a]).name;
        }
        out << " }\n";
        break;
      case NodeKind::kDecision:
        out << "decision " << node.name << " player " << node.player + 1 << " infoset "
            << node.infoset_label << " {";
        for (std::size_t a = 0; a < node.actions.size(); ++a) {
          out << (a ? " ; " : " ") << node.actions[a] << " -> " << game.node(node.children[a]).name;
        }
        out << " }\n";
        break;
      case NodeKind::kTerminal:
        out << "leaf " << node.name << " {";
        for (double u : node.payoffs) out << " " << number(u);
        out << " }\n";
        break;
    }
  }
  return out.str();
}

}  // namespace efce
