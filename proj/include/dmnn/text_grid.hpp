/*
 *   Copyright 2026 The dmnn Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include "dmnn/lattice.hpp"

#include <string>
#include <vector>

namespace dmnn {

// Sets are drawn as character grids over the bounding box of W ∪ {o}:
//
//   '1'  window point in the set      'O'  origin, in the set
//   '0'  window point not in the set  'o'  origin, in W but not in the set
//   '.'  cell outside the window      '+'  origin, outside W
//
// The origin marker anchors the coordinates when a grid is read back.

std::vector<std::string> set_to_grid(PixelSet const& s, Window const& w);
std::vector<std::string> window_to_grid(Window const& w);

struct ParsedGrid {
	PixelSet members;  // '1' and 'O' cells
	PixelSet in_window; // every cell except '.' and '+'
};

/// Throws ParseError (with the offending row/column) on unknown characters,
/// ragged rows, or a missing/duplicated origin marker.
ParsedGrid parse_grid(std::vector<std::string> const& rows);

/// Parses a set drawn over `w`; the drawn window must be exactly `w`.
PixelSet parse_set_grid(std::vector<std::string> const& rows, Window const& w);
Window parse_window_grid(std::vector<std::string> const& rows);

/// Splits a block of text into rows, dropping blank lines and surrounding spaces.
std::vector<std::string> split_rows(std::string const& text);

std::string format_set(PixelSet const& s, Window const& w);
std::string format_interval(Interval const& i);
/// Window grid followed by each interval as labeled "A:" / "B:" grids.
std::string format_collection(IntervalCollection const& c);

} // namespace dmnn
