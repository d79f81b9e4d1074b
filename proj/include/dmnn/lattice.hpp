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

#include "dmnn/geometry.hpp"

#include <cstdint>
#include <vector>

namespace dmnn {

/// Default bound on |W| for truth-table representations (2^|W| bits).
inline constexpr std::size_t default_table_cap = 24;

/// Closed interval [A,B] = { X in P(W) : A <= X <= B } with A <= B <= W.
/// Degenerate pairs (A not inside B) are rejected at construction.
class Interval {
public:
	Interval(PixelSet left, PixelSet right, Window window);

	/// [A, W]: the basis interval of an erosion by A; [{o}, W] is the
	/// identity's basis interval.
	static Interval upper(PixelSet left, Window window);
	static Interval full(Window window);

	PixelSet const& left() const { return m_left; }
	PixelSet const& right() const { return m_right; }
	Window const& window() const { return m_window; }

	/// Number of free points |B \ A|.
	std::size_t width() const { return m_right.size() - m_left.size(); }

	/// Interval inclusion [A,B] <= [A',B'] iff A' <= A and B <= B'.
	bool is_subinterval_of(Interval const& other) const;

	friend bool operator==(Interval const& a, Interval const& b)
	{
		return a.m_left == b.m_left && a.m_right == b.m_right && a.m_window == b.m_window;
	}

private:
	PixelSet m_left;
	PixelSet m_right;
	Window m_window;
};

/// A <= X <= B. Throws DomainError when x is not inside the window.
bool interval_contains(Interval const& i, PixelSet const& x);

/// Interval encoded as a pair of window masks.
struct MaskInterval {
	Mask left = 0;
	Mask right = 0;

	bool contains(Mask x) const { return (left & ~x) == 0 && (x & ~right) == 0; }
	bool is_subinterval_of(MaskInterval o) const
	{
		return (o.left & ~left) == 0 && (right & ~o.right) == 0;
	}
	friend auto operator<=>(MaskInterval, MaskInterval) = default;
};

/// Truth table of a Boolean function on P(W); entry X is indexed by the
/// mask of X in canonical window order.
class BooleanFn {
public:
	/// All-zero function. Throws WindowCapExceeded when |W| > cap.
	explicit BooleanFn(Window window, std::size_t cap = default_table_cap);

	static BooleanFn constant(Window window, bool value, std::size_t cap = default_table_cap);

	Window const& window() const { return m_window; }
	std::size_t table_size() const { return std::size_t{1} << m_window.size(); }

	bool at(Mask x) const { return (m_bits[x >> 6] >> (x & 63)) & 1u; }
	void set(Mask x, bool v)
	{
		std::uint64_t const bit = std::uint64_t{1} << (x & 63);
		if (v)
			m_bits[x >> 6] |= bit;
		else
			m_bits[x >> 6] &= ~bit;
	}
	bool operator()(PixelSet const& x) const { return at(m_window.mask_of(x)); }

	std::size_t count() const;

	BooleanFn operator~() const;
	BooleanFn& operator&=(BooleanFn const& o);
	BooleanFn& operator|=(BooleanFn const& o);

	friend bool operator==(BooleanFn const&, BooleanFn const&) = default;

private:
	void trim();

	Window m_window;
	std::vector<std::uint64_t> m_bits;
};

/// Antichain of maximal intervals over one window: an element of the
/// lattice of maximal-interval collections. Intervals are kept sorted, so
/// equal collections compare equal.
class IntervalCollection {
public:
	explicit IntervalCollection(Window window) : m_window(std::move(window)) {}
	/// Takes intervals that already form an antichain; the order is normalized.
	IntervalCollection(Window window, std::vector<MaskInterval> antichain);

	/// Collection {[∅, W]} (greatest element).
	static IntervalCollection top(Window window);
	/// Empty collection (least element).
	static IntervalCollection bottom(Window window) { return IntervalCollection(std::move(window)); }
	/// Maximal intervals of an arbitrary list of intervals (prunes contained ones).
	static IntervalCollection from_intervals(Window window, std::vector<Interval> const& intervals);

	Window const& window() const { return m_window; }
	std::span<MaskInterval const> masks() const { return m_items; }
	std::size_t size() const { return m_items.size(); }
	bool empty() const { return m_items.empty(); }

	std::vector<Interval> intervals() const;
	bool contains(Mask x) const;

	friend bool operator==(IntervalCollection const&, IntervalCollection const&) = default;

private:
	Window m_window;
	std::vector<MaskInterval> m_items;
};

/// M(X): maximal intervals contained in the kernel {X : f(X) = 1}, by
/// successive splitting of [∅, W] around each element outside the kernel.
IntervalCollection maximal_intervals(BooleanFn const& kernel);

IntervalCollection boolean_to_collection(BooleanFn const& f);
BooleanFn collection_to_boolean(IntervalCollection const& x, std::size_t cap = default_table_cap);

/// Lattice operations M(X ∩ Y), M(X ∪ Y) and M(X^c), computed through the
/// truth tables of the operands. Both operands must share the window.
IntervalCollection collection_inf(IntervalCollection const& x, IntervalCollection const& y,
                                  std::size_t cap = default_table_cap);
IntervalCollection collection_sup(IntervalCollection const& x, IntervalCollection const& y,
                                  std::size_t cap = default_table_cap);
IntervalCollection collection_complement(IntervalCollection const& x,
                                         std::size_t cap = default_table_cap);

/// f*(X) = 1 - f(W \ X).
BooleanFn dual_boolean(BooleanFn const& f);

/// Re-expresses a collection over a larger window: each [A,B] becomes
/// [A, B ∪ (W' \ W)]. Throws WindowMismatch unless W' contains W.
IntervalCollection rewindow(IntervalCollection const& b, Window const& wider);

/// Adds h to the window and to both extremities of every interval.
IntervalCollection translate(IntervalCollection const& b, Point h);

/// Sets at distance one from `a` in P(W): one point added or removed.
std::vector<PixelSet> set_neighbors(PixelSet const& a, Window const& w);

/// Intervals at distance one from `i` in the interval poset. Generated in
/// the order: shrink A, grow A, shrink B, grow B (points in canonical order).
std::vector<Interval> interval_neighbors(Interval const& i);

/// |A| + 2|B \ A| + |W \ B|.
std::size_t interval_neighbor_count(Interval const& i);

} // namespace dmnn
