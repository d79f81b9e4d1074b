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
#include "dmnn/lattice.hpp"

#include "dmnn/errors.hpp"

#include <algorithm>
#include <bit>

namespace dmnn {

// ---------------------------------------------------------------- Interval

Interval::Interval(PixelSet left, PixelSet right, Window window)
: m_left(std::move(left)), m_right(std::move(right)), m_window(std::move(window))
{
	if (!m_left.is_subset_of(m_right))
		throw InvalidInterval("invalid interval: left extremity is not contained in the right one");
	if (!m_window.contains(m_right))
		throw InvalidInterval("invalid interval: right extremity is not contained in the window");
}

Interval Interval::upper(PixelSet left, Window window)
{
	PixelSet right = window.support();
	return Interval(std::move(left), std::move(right), std::move(window));
}

Interval Interval::full(Window window)
{
	return upper(PixelSet{}, std::move(window));
}

bool Interval::is_subinterval_of(Interval const& other) const
{
	return other.m_left.is_subset_of(m_left) && m_right.is_subset_of(other.m_right);
}

bool interval_contains(Interval const& i, PixelSet const& x)
{
	if (!i.window().contains(x))
		throw DomainError("interval_contains: set is not contained in the window");
	return i.left().is_subset_of(x) && x.is_subset_of(i.right());
}

// --------------------------------------------------------------- BooleanFn

BooleanFn::BooleanFn(Window window, std::size_t cap)
: m_window(std::move(window))
{
	if (m_window.size() > cap)
		throw WindowCapExceeded(m_window.size(), cap);
	m_bits.assign(std::max<std::size_t>(1, table_size() / 64), 0);
}

BooleanFn BooleanFn::constant(Window window, bool value, std::size_t cap)
{
	BooleanFn f(std::move(window), cap);
	if (value) {
		std::fill(f.m_bits.begin(), f.m_bits.end(), ~std::uint64_t{0});
		f.trim();
	}
	return f;
}

void BooleanFn::trim()
{
	if (table_size() < 64)
		m_bits[0] &= (std::uint64_t{1} << table_size()) - 1;
}

std::size_t BooleanFn::count() const
{
	std::size_t n = 0;
	for (auto w : m_bits)
		n += static_cast<std::size_t>(std::popcount(w));
	return n;
}

BooleanFn BooleanFn::operator~() const
{
	BooleanFn f = *this;
	for (auto& w : f.m_bits)
		w = ~w;
	f.trim();
	return f;
}

BooleanFn& BooleanFn::operator&=(BooleanFn const& o)
{
	if (!(m_window == o.m_window))
		throw WindowMismatch("boolean functions are defined on different windows");
	for (std::size_t i = 0; i < m_bits.size(); ++i)
		m_bits[i] &= o.m_bits[i];
	return *this;
}

BooleanFn& BooleanFn::operator|=(BooleanFn const& o)
{
	if (!(m_window == o.m_window))
		throw WindowMismatch("boolean functions are defined on different windows");
	for (std::size_t i = 0; i < m_bits.size(); ++i)
		m_bits[i] |= o.m_bits[i];
	return *this;
}

// ------------------------------------------------------ IntervalCollection

IntervalCollection::IntervalCollection(Window window, std::vector<MaskInterval> antichain)
: m_window(std::move(window)), m_items(std::move(antichain))
{
	std::sort(m_items.begin(), m_items.end());
	m_items.erase(std::unique(m_items.begin(), m_items.end()), m_items.end());
}

IntervalCollection IntervalCollection::top(Window window)
{
	Mask const full = window.full_mask();
	return IntervalCollection(std::move(window), {MaskInterval{0, full}});
}

namespace {

// Keeps the elements not strictly contained in another one.
std::vector<MaskInterval> prune_to_antichain(std::vector<MaskInterval> items)
{
	std::sort(items.begin(), items.end());
	items.erase(std::unique(items.begin(), items.end()), items.end());
	std::vector<MaskInterval> out;
	out.reserve(items.size());
	for (std::size_t i = 0; i < items.size(); ++i) {
		bool dominated = false;
		for (std::size_t j = 0; j < items.size() && !dominated; ++j)
			dominated = j != i && items[i].is_subinterval_of(items[j]);
		if (!dominated)
			out.push_back(items[i]);
	}
	return out;
}

} // namespace

IntervalCollection IntervalCollection::from_intervals(Window window,
                                                      std::vector<Interval> const& intervals)
{
	std::vector<MaskInterval> items;
	items.reserve(intervals.size());
	for (auto const& i : intervals) {
		if (!(i.window() == window))
			throw WindowMismatch("interval window differs from the collection window");
		items.push_back({window.mask_of(i.left()), window.mask_of(i.right())});
	}
	return IntervalCollection(std::move(window), prune_to_antichain(std::move(items)));
}

std::vector<Interval> IntervalCollection::intervals() const
{
	std::vector<Interval> out;
	out.reserve(m_items.size());
	for (auto m : m_items)
		out.emplace_back(m_window.set_of(m.left), m_window.set_of(m.right), m_window);
	return out;
}

bool IntervalCollection::contains(Mask x) const
{
	return std::any_of(m_items.begin(), m_items.end(),
	                   [x](MaskInterval i) { return i.contains(x); });
}

// ------------------------------------------------------ maximal intervals

IntervalCollection maximal_intervals(BooleanFn const& kernel)
{
	Window const& w = kernel.window();
	Mask const full = w.full_mask();

	std::vector<MaskInterval> items{{0, full}};
	std::vector<MaskInterval> kept, fresh;

	std::size_t const n = kernel.table_size();
	for (Mask z = 0; z < n; ++z) {
		if (kernel.at(z))
			continue;
		kept.clear();
		fresh.clear();
		for (MaskInterval it : items) {
			if (!it.contains(z)) {
				kept.push_back(it);
				continue;
			}
			// Sub-intervals of [A,B] avoiding Z: force in a point of B \ Z,
			// or force out a point of Z \ A.
			for (Mask rest = it.right & ~z; rest; rest &= rest - 1)
				fresh.push_back({it.left | (rest & -rest), it.right});
			for (Mask rest = z & ~it.left; rest; rest &= rest - 1)
				fresh.push_back({it.left, it.right & ~(rest & -rest)});
		}
		if (fresh.empty()) {
			items.swap(kept);
			continue;
		}
		std::sort(fresh.begin(), fresh.end());
		fresh.erase(std::unique(fresh.begin(), fresh.end()), fresh.end());
		// Kept intervals form an antichain and cannot lie inside a fresh one
		// (fresh ones are sub-intervals of removed members), so only the
		// fresh ones need pruning.
		items.swap(kept);
		std::size_t const n_kept = items.size();
		for (std::size_t i = 0; i < fresh.size(); ++i) {
			MaskInterval const f = fresh[i];
			bool dominated = false;
			for (std::size_t j = 0; j < n_kept && !dominated; ++j)
				dominated = f.is_subinterval_of(items[j]);
			for (std::size_t j = 0; j < fresh.size() && !dominated; ++j)
				dominated = j != i && f.is_subinterval_of(fresh[j]);
			if (!dominated)
				items.push_back(f);
		}
	}
	return IntervalCollection(w, std::move(items));
}

IntervalCollection boolean_to_collection(BooleanFn const& f)
{
	return maximal_intervals(f);
}

BooleanFn collection_to_boolean(IntervalCollection const& x, std::size_t cap)
{
	BooleanFn f(x.window(), cap);
	for (MaskInterval i : x.masks()) {
		// Enumerate A | s for every submask s of B \ A.
		Mask const free = i.right & ~i.left;
		Mask s = 0;
		do {
			f.set(i.left | s, true);
			s = (s - free) & free;
		} while (s != 0);
	}
	return f;
}

namespace {

void require_same_window(IntervalCollection const& x, IntervalCollection const& y)
{
	if (!(x.window() == y.window()))
		throw WindowMismatch("interval collections are defined on different windows");
}

} // namespace

IntervalCollection collection_inf(IntervalCollection const& x, IntervalCollection const& y,
                                  std::size_t cap)
{
	require_same_window(x, y);
	BooleanFn f = collection_to_boolean(x, cap);
	f &= collection_to_boolean(y, cap);
	return maximal_intervals(f);
}

IntervalCollection collection_sup(IntervalCollection const& x, IntervalCollection const& y,
                                  std::size_t cap)
{
	require_same_window(x, y);
	BooleanFn f = collection_to_boolean(x, cap);
	f |= collection_to_boolean(y, cap);
	return maximal_intervals(f);
}

IntervalCollection collection_complement(IntervalCollection const& x, std::size_t cap)
{
	return maximal_intervals(~collection_to_boolean(x, cap));
}

BooleanFn dual_boolean(BooleanFn const& f)
{
	BooleanFn out(f.window(), f.window().size());
	Mask const full = f.window().full_mask();
	for (Mask x = 0; x < f.table_size(); ++x)
		out.set(x, !f.at(full & ~x));
	return out;
}

IntervalCollection rewindow(IntervalCollection const& b, Window const& wider)
{
	if (!wider.contains(b.window().support()))
		throw WindowMismatch("rewindow: target window does not contain the source window");
	if (wider == b.window())
		return b;
	PixelSet const extra = set_difference(wider.support(), b.window().support());
	Mask const extra_mask = wider.mask_of(extra);
	std::vector<MaskInterval> items;
	items.reserve(b.size());
	for (MaskInterval i : b.masks()) {
		Mask const a = wider.mask_of(b.window().set_of(i.left));
		Mask const r = wider.mask_of(b.window().set_of(i.right));
		items.push_back({a, r | extra_mask});
	}
	return IntervalCollection(wider, std::move(items));
}

IntervalCollection translate(IntervalCollection const& b, Point h)
{
	// Translation preserves the canonical order, so masks are unchanged.
	return IntervalCollection(b.window().translated(h),
	                          std::vector<MaskInterval>(b.masks().begin(), b.masks().end()));
}

// ------------------------------------------------------------ neighbors

std::vector<PixelSet> set_neighbors(PixelSet const& a, Window const& w)
{
	if (!w.contains(a))
		throw DomainError("set_neighbors: set is not contained in the window");
	std::vector<PixelSet> out;
	out.reserve(w.size());
	for (Point p : w.support())
		out.push_back(a.contains(p) ? a.without(p) : a.with(p));
	return out;
}

std::vector<Interval> interval_neighbors(Interval const& i)
{
	PixelSet const& a = i.left();
	PixelSet const& b = i.right();
	Window const& w = i.window();
	PixelSet const free = set_difference(b, a);
	PixelSet const outside = set_difference(w.support(), b);

	std::vector<Interval> out;
	out.reserve(interval_neighbor_count(i));
	for (Point p : a)
		out.emplace_back(a.without(p), b, w);
	for (Point p : free)
		out.emplace_back(a.with(p), b, w);
	for (Point p : free)
		out.emplace_back(a, b.without(p), w);
	for (Point p : outside)
		out.emplace_back(a, b.with(p), w);
	return out;
}

std::size_t interval_neighbor_count(Interval const& i)
{
	std::size_t const free = i.width();
	return i.left().size() + 2 * free + (i.window().size() - i.right().size());
}

} // namespace dmnn
