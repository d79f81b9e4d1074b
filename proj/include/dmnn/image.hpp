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
#include <span>
#include <vector>

namespace dmnn {

/// Binary image on a finite frame F = [0,width) x [0,height). Pixels outside
/// F read as background. Rows are packed into 64-bit words, pixel x of a row
/// at bit (x % 64) of word (x / 64); bits past `width` are always zero.
class BinaryImage {
public:
	using Word = std::uint64_t;

	BinaryImage() = default;
	/// All-background image. Throws DomainError unless width, height > 0.
	BinaryImage(int width, int height);

	static BinaryImage full(int width, int height);
	/// Image holding the points of `s` that fall inside the frame.
	static BinaryImage from_points(int width, int height, PixelSet const& s);

	int width() const { return m_width; }
	int height() const { return m_height; }
	std::size_t words_per_row() const { return m_stride; }
	std::size_t pixel_count() const { return static_cast<std::size_t>(m_width) * static_cast<std::size_t>(m_height); }

	bool in_frame(Point p) const { return p.x >= 0 && p.y >= 0 && p.x < m_width && p.y < m_height; }
	/// Value at p; false outside the frame.
	bool get(Point p) const
	{
		if (!in_frame(p))
			return false;
		auto const x = static_cast<std::size_t>(p.x);
		return (row(p.y)[x >> 6] >> (x & 63)) & 1u;
	}
	/// Sets a frame pixel; throws DomainError outside the frame.
	void set(Point p, bool v);

	std::span<Word> row(int y) { return {m_bits.data() + static_cast<std::size_t>(y) * m_stride, m_stride}; }
	std::span<Word const> row(int y) const { return {m_bits.data() + static_cast<std::size_t>(y) * m_stride, m_stride}; }

	/// 64 consecutive pixels of row y starting at column x0 (bit i is pixel
	/// x0 + i). Any coordinate outside the frame reads as 0.
	Word read_word(int y, int x0) const;

	/// Mask of the valid bits of the last word of a row.
	Word tail_mask() const { return m_tail; }

	std::size_t count() const;
	bool empty() const { return count() == 0; }
	PixelSet points() const;
	bool same_frame(BinaryImage const& o) const { return m_width == o.m_width && m_height == o.m_height; }
	bool is_subset_of(BinaryImage const& o) const;

	BinaryImage& operator&=(BinaryImage const& o);
	BinaryImage& operator|=(BinaryImage const& o);
	BinaryImage& operator^=(BinaryImage const& o);
	friend BinaryImage operator&(BinaryImage a, BinaryImage const& b) { return a &= b; }
	friend BinaryImage operator|(BinaryImage a, BinaryImage const& b) { return a |= b; }
	friend BinaryImage operator^(BinaryImage a, BinaryImage const& b) { return a ^= b; }

	/// Clears the padding bits; kernels call this after writing whole words.
	void trim();

	friend bool operator==(BinaryImage const&, BinaryImage const&) = default;

private:
	void require_same_frame(BinaryImage const& o) const;

	int m_width = 0;
	int m_height = 0;
	std::size_t m_stride = 0;
	Word m_tail = 0;
	std::vector<Word> m_bits;
};

/// |X ∩ Y| and |X ∆ Y| without materializing the result.
std::size_t intersection_count(BinaryImage const& x, BinaryImage const& y);
std::size_t union_count(BinaryImage const& x, BinaryImage const& y);
std::size_t difference_count(BinaryImage const& x, BinaryImage const& y);

} // namespace dmnn
