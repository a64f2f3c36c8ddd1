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

#pragma once

#include <string>
#include <string_view>

#include "efce/game.hpp"

namespace efce {

// Parses an EFGT document:
//
//   game <name>
//   players <n>
//   root <node-id>
//   chance <node-id> { <action>=<prob> -> <child-id> ; ... }
//   decision <node-id> player <i> infoset <label> { <action> -> <child-id> ; ... }
//   leaf <node-id> { <u1> ... <un> }
//
// `#` starts a comment. Players are numbered from 1 in the document.
// Throws ParseError for lexical and reference errors, ValidationError for
// structural ones.
GameTree parse_game(std::string_view text);

// Reads and parses a file; IO failures throw efce::Error.
GameTree load_game(const std::string& path);

// Inverse of parse_game up to comments and whitespace; numbers are written
// with 17 significant digits so the round trip is exact.
std::string serialize_game(const GameTree& game);

}  // namespace efce
