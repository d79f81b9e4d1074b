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
#include "dmnn/geometry.hpp"

#include "dmnn/errors.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace dmnn {

std::ostream& operator<<(std::ostream& os, Point p)
{
	return os << '(' << p.x << ',' << p.y << ')';
}

namespace {

void normalize(std::vector<Point>& v)
{
	std::sort(v.begin(), v.end());
	v.erase(std::unique(v.begin(), v.end()), v.end());
}

} // namespace

PixelSet::PixelSet(std::initializer_list<Point> points)
: m_points(points)
{
	normalize(m_points);
}

PixelSet::PixelSet(std::vector<Point> points)
: m_points(std::move(points))
{
	normalize(m_points);
}

PixelSet PixelSet::centered_square(int d)
{
	if (d < 1 || d % 2 == 0)
		throw DomainError("window side must be odd and positive, got " + std::to_string(d));
	int const r = (d - 1) / 2;
	return box(-r, -r, d, d);
}

PixelSet PixelSet::box(int x0, int y0, int w, int h)
{
	std::vector<Point> pts;
	pts.reserve(static_cast<std::size_t>(std::max(w, 0) * std::max(h, 0)));
	for (int y = y0; y < y0 + h; ++y)
		for (int x = x0; x < x0 + w; ++x)
			pts.push_back({x, y});
	PixelSet s;
	s.m_points = std::move(pts); // already row-major
	return s;
}

bool PixelSet::contains(Point p) const
{
	return std::binary_search(m_points.begin(), m_points.end(), p);
}

bool PixelSet::is_subset_of(PixelSet const& other) const
{
	return std::includes(other.m_points.begin(), other.m_points.end(),
	                     m_points.begin(), m_points.end());
}

std::optional<std::size_t> PixelSet::index_of(Point p) const
{
	auto it = std::lower_bound(m_points.begin(), m_points.end(), p);
	if (it == m_points.end() || *it != p)
		return std::nullopt;
	return static_cast<std::size_t>(it - m_points.begin());
}

PixelSet PixelSet::translated(Point h) const
{
	PixelSet s;
	s.m_points.reserve(m_points.size());
	for (Point p : m_points)
		s.m_points.push_back(p + h); // translation preserves the order
	return s;
}

PixelSet PixelSet::transposed() const
{
	PixelSet s;
	s.m_points.assign(m_points.rbegin(), m_points.rend());
	for (Point& p : s.m_points)
		p = -p;
	return s;
}

PixelSet PixelSet::with(Point p) const
{
	PixelSet s = *this;
	auto it = std::lower_bound(s.m_points.begin(), s.m_points.end(), p);
	if (it == s.m_points.end() || *it != p)
		s.m_points.insert(it, p);
	return s;
}

PixelSet PixelSet::without(Point p) const
{
	PixelSet s = *this;
	auto it = std::lower_bound(s.m_points.begin(), s.m_points.end(), p);
	if (it != s.m_points.end() && *it == p)
		s.m_points.erase(it);
	return s;
}

std::pair<Point, Point> PixelSet::bounds() const
{
	if (m_points.empty())
		return {origin, origin};
	Point lo = m_points.front(), hi = m_points.front();
	for (Point p : m_points) {
		lo.x = std::min(lo.x, p.x);
		lo.y = std::min(lo.y, p.y);
		hi.x = std::max(hi.x, p.x);
		hi.y = std::max(hi.y, p.y);
	}
	return {lo, hi};
}

std::strong_ordering operator<=>(PixelSet const& a, PixelSet const& b)
{
	return std::lexicographical_compare_three_way(a.m_points.begin(), a.m_points.end(),
	                                              b.m_points.begin(), b.m_points.end());
}

PixelSet set_union(PixelSet const& a, PixelSet const& b)
{
	std::vector<Point> out;
	out.reserve(a.size() + b.size());
	std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
	return PixelSet(std::move(out));
}

PixelSet set_intersection(PixelSet const& a, PixelSet const& b)
{
	std::vector<Point> out;
	std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
	return PixelSet(std::move(out));
}

PixelSet set_difference(PixelSet const& a, PixelSet const& b)
{
	std::vector<Point> out;
	std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
	return PixelSet(std::move(out));
}

PixelSet minkowski_sum(PixelSet const& a, PixelSet const& b)
{
	std::vector<Point> out;
	out.reserve(a.size() * b.size());
	for (Point p : a)
		for (Point q : b)
			out.push_back(p + q);
	return PixelSet(std::move(out));
}

std::ostream& operator<<(std::ostream& os, PixelSet const& s)
{
	os << '{';
	bool first = true;
	for (Point p : s) {
		if (!first)
			os << ',';
		os << p;
		first = false;
	}
	return os << '}';
}

Window::Window(PixelSet support)
: m_support(std::move(support))
{}

Mask Window::full_mask() const
{
	if (size() > max_points)
		throw WindowCapExceeded(size(), max_points);
	return size() == 64 ? ~Mask{0} : ((Mask{1} << size()) - 1);
}

Mask Window::mask_of(PixelSet const& s) const
{
	if (size() > max_points)
		throw WindowCapExceeded(size(), max_points);
	Mask m = 0;
	auto it = m_support.begin();
	std::size_t i = 0;
	for (Point p : s) {
		while (it != m_support.end() && *it < p) {
			++it;
			++i;
		}
		if (it == m_support.end() || *it != p)
			throw DomainError("set is not contained in the window");
		m |= Mask{1} << i;
	}
	return m;
}

PixelSet Window::set_of(Mask m) const
{
	std::vector<Point> pts;
	pts.reserve(static_cast<std::size_t>(std::popcount(m)));
	while (m) {
		int const i = std::countr_zero(m);
		pts.push_back(m_support[static_cast<std::size_t>(i)]);
		m &= m - 1;
	}
	return PixelSet(std::move(pts));
}

Window operator+(Window const& a, Window const& b)
{
	return Window(minkowski_sum(a.support(), b.support()));
}

} // namespace dmnn
