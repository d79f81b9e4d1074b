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
#include "dmnn/text_grid.hpp"

#include "dmnn/errors.hpp"

#include <algorithm>
#include <sstream>

namespace dmnn {

namespace {

std::pair<Point, Point> drawing_box(Window const& w)
{
	auto [lo, hi] = w.support().with(origin).bounds();
	return {lo, hi};
}

std::vector<std::string> draw(Window const& w, auto&& cell)
{
	auto const [lo, hi] = drawing_box(w);
	std::vector<std::string> rows;
	for (int y = lo.y; y <= hi.y; ++y) {
		std::string row;
		for (int x = lo.x; x <= hi.x; ++x)
			row.push_back(cell(Point{x, y}));
		rows.push_back(std::move(row));
	}
	return rows;
}

} // namespace

std::vector<std::string> set_to_grid(PixelSet const& s, Window const& w)
{
	if (!w.contains(s))
		throw DomainError("set_to_grid: set is not contained in the window");
	return draw(w, [&](Point p) {
		bool const in_w = w.contains(p);
		bool const in_s = s.contains(p);
		if (p == origin)
			return in_s ? 'O' : (in_w ? 'o' : '+');
		return in_s ? '1' : (in_w ? '0' : '.');
	});
}

std::vector<std::string> window_to_grid(Window const& w)
{
	return set_to_grid(w.support(), w);
}

ParsedGrid parse_grid(std::vector<std::string> const& rows)
{
	if (rows.empty())
		throw ParseError("grid: no rows");
	std::size_t const width = rows.front().size();
	std::optional<Point> anchor;
	for (std::size_t r = 0; r < rows.size(); ++r) {
		if (rows[r].size() != width)
			throw ParseError("grid: row " + std::to_string(r + 1) + " has length " +
			                 std::to_string(rows[r].size()) + ", expected " + std::to_string(width));
		for (std::size_t c = 0; c < width; ++c) {
			char const ch = rows[r][c];
			if (ch == 'o' || ch == 'O' || ch == '+') {
				if (anchor)
					throw ParseError("grid: more than one origin marker (row " + std::to_string(r + 1) + ")");
				anchor = Point{static_cast<int>(c), static_cast<int>(r)};
			} else if (ch != '0' && ch != '1' && ch != '.') {
				throw ParseError("grid: unexpected character '" + std::string(1, ch) + "' at row " +
				                 std::to_string(r + 1) + ", column " + std::to_string(c + 1));
			}
		}
	}
	if (!anchor)
		throw ParseError("grid: missing origin marker ('o', 'O' or '+')");

	std::vector<Point> members, cells;
	for (std::size_t r = 0; r < rows.size(); ++r)
		for (std::size_t c = 0; c < width; ++c) {
			Point const p{static_cast<int>(c) - anchor->x, static_cast<int>(r) - anchor->y};
			char const ch = rows[r][c];
			if (ch == '1' || ch == 'O')
				members.push_back(p);
			if (ch != '.' && ch != '+')
				cells.push_back(p);
		}
	return {PixelSet(std::move(members)), PixelSet(std::move(cells))};
}

PixelSet parse_set_grid(std::vector<std::string> const& rows, Window const& w)
{
	ParsedGrid g = parse_grid(rows);
	if (!(g.in_window == w.support()))
		throw ParseError("grid: drawn window does not match the expected window");
	return std::move(g.members);
}

Window parse_window_grid(std::vector<std::string> const& rows)
{
	return Window(parse_grid(rows).members);
}

std::vector<std::string> split_rows(std::string const& text)
{
	std::vector<std::string> rows;
	std::istringstream in(text);
	std::string line;
	while (std::getline(in, line)) {
		auto const b = line.find_first_not_of(" \t\r");
		if (b == std::string::npos)
			continue;
		auto const e = line.find_last_not_of(" \t\r");
		rows.push_back(line.substr(b, e - b + 1));
	}
	return rows;
}

namespace {

std::string join(std::vector<std::string> const& rows)
{
	std::string s;
	for (auto const& r : rows) {
		s += r;
		s += '\n';
	}
	return s;
}

} // namespace

std::string format_set(PixelSet const& s, Window const& w)
{
	return join(set_to_grid(s, w));
}

std::string format_interval(Interval const& i)
{
	return "A:\n" + format_set(i.left(), i.window()) + "B:\n" + format_set(i.right(), i.window());
}

std::string format_collection(IntervalCollection const& c)
{
	std::ostringstream out;
	out << "window (" << c.window().size() << " points):\n" << join(window_to_grid(c.window()));
	out << "basis (" << c.size() << " intervals):\n";
	std::size_t k = 0;
	for (auto const& i : c.intervals())
		out << "interval " << ++k << ":\n" << format_interval(i);
	return out.str();
}

} // namespace dmnn
