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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

namespace dmnn {

/// A point of the integer plane; also used as an offset relative to the
/// origin o = (0,0).
struct Point {
	int x = 0;
	int y = 0;

	friend constexpr bool operator==(Point, Point) = default;

	// Row-major: by y, then by x.
	friend constexpr std::strong_ordering operator<=>(Point a, Point b)
	{
		if (auto c = a.y <=> b.y; c != 0)
			return c;
		return a.x <=> b.x;
	}

	friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
	friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
	friend constexpr Point operator-(Point a) { return {-a.x, -a.y}; }
};

inline constexpr Point origin{0, 0};

std::ostream& operator<<(std::ostream& os, Point p);

/// Finite subset of the plane, kept sorted in row-major order without
/// duplicates.
class PixelSet {
public:
	PixelSet() = default;
	PixelSet(std::initializer_list<Point> points);
	explicit PixelSet(std::vector<Point> points);

	/// Centered d x d square {-(d-1)/2, ..., (d-1)/2}^2; d must be odd.
	static PixelSet centered_square(int d);
	/// Axis-aligned box [x0, x0 + w) x [y0, y0 + h).
	static PixelSet box(int x0, int y0, int w, int h);

	std::size_t size() const { return m_points.size(); }
	bool empty() const { return m_points.empty(); }
	bool contains(Point p) const;
	bool is_subset_of(PixelSet const& other) const;

	std::span<Point const> points() const { return m_points; }
	auto begin() const { return m_points.begin(); }
	auto end() const { return m_points.end(); }
	Point operator[](std::size_t i) const { return m_points[i]; }

	/// Position of p in the canonical order, if present.
	std::optional<std::size_t> index_of(Point p) const;

	PixelSet translated(Point h) const;
	/// Pointwise negation X^t.
	PixelSet transposed() const;

	PixelSet with(Point p) const;
	PixelSet without(Point p) const;

	/// Bounding box as (min corner, max corner); both are `origin` when empty.
	std::pair<Point, Point> bounds() const;

	friend bool operator==(PixelSet const&, PixelSet const&) = default;
	friend std::strong_ordering operator<=>(PixelSet const& a, PixelSet const& b);

private:
	std::vector<Point> m_points;
};

PixelSet set_union(PixelSet const& a, PixelSet const& b);
PixelSet set_intersection(PixelSet const& a, PixelSet const& b);
PixelSet set_difference(PixelSet const& a, PixelSet const& b);
/// Minkowski addition A (+) B = { a + b }.
PixelSet minkowski_sum(PixelSet const& a, PixelSet const& b);

std::ostream& operator<<(std::ostream& os, PixelSet const& s);

/// Bit mask of a subset of a window, bit i standing for the i-th window
/// point in canonical order.
using Mask = std::uint64_t;

/// Finite set of offsets through which an operator reads its input.
class Window {
public:
	/// Largest window whose subsets can be encoded in a Mask.
	static constexpr std::size_t max_points = 64;

	Window() = default;
	explicit Window(PixelSet support);

	static Window centered_square(int d) { return Window(PixelSet::centered_square(d)); }

	PixelSet const& support() const { return m_support; }
	std::size_t size() const { return m_support.size(); }
	bool contains(Point p) const { return m_support.contains(p); }
	bool contains(PixelSet const& s) const { return s.is_subset_of(m_support); }

	Mask full_mask() const;
	/// Throws DomainError when s is not inside the window.
	Mask mask_of(PixelSet const& s) const;
	PixelSet set_of(Mask m) const;

	Window transposed() const { return Window(m_support.transposed()); }
	Window translated(Point h) const { return Window(m_support.translated(h)); }

	friend bool operator==(Window const&, Window const&) = default;

private:
	PixelSet m_support;
};

/// Minkowski sum of two windows.
Window operator+(Window const& a, Window const& b);

} // namespace dmnn
