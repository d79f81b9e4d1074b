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
#include "dmnn/image.hpp"

#include "dmnn/errors.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace dmnn {

BinaryImage::BinaryImage(int width, int height)
: m_width(width), m_height(height)
{
	if (width <= 0 || height <= 0)
		throw DomainError("image frame must be non-empty, got " + std::to_string(width) + "x" +
		                  std::to_string(height));
	m_stride = (static_cast<std::size_t>(width) + 63) / 64;
	int const rem = width % 64;
	m_tail = rem == 0 ? ~Word{0} : ((Word{1} << rem) - 1);
	m_bits.assign(m_stride * static_cast<std::size_t>(height), 0);
}

BinaryImage BinaryImage::full(int width, int height)
{
	BinaryImage img(width, height);
	std::fill(img.m_bits.begin(), img.m_bits.end(), ~Word{0});
	img.trim();
	return img;
}

BinaryImage BinaryImage::from_points(int width, int height, PixelSet const& s)
{
	BinaryImage img(width, height);
	for (Point p : s)
		if (img.in_frame(p))
			img.set(p, true);
	return img;
}

void BinaryImage::set(Point p, bool v)
{
	if (!in_frame(p))
		throw DomainError("pixel outside the image frame");
	auto const x = static_cast<std::size_t>(p.x);
	Word const bit = Word{1} << (x & 63);
	Word& w = row(p.y)[x >> 6];
	w = v ? (w | bit) : (w & ~bit);
}

BinaryImage::Word BinaryImage::read_word(int y, int x0) const
{
	if (y < 0 || y >= m_height)
		return 0;
	auto const r = row(y);
	auto word_at = [&](long k) -> Word {
		return (k >= 0 && k < static_cast<long>(m_stride)) ? r[static_cast<std::size_t>(k)] : 0;
	};
	// Floor division so negative offsets land in the right word.
	long const k = x0 >= 0 ? x0 / 64 : -((-static_cast<long>(x0) + 63) / 64);
	int const s = static_cast<int>(x0 - k * 64);
	Word const lo = word_at(k);
	if (s == 0)
		return lo;
	return (lo >> s) | (word_at(k + 1) << (64 - s));
}

void BinaryImage::trim()
{
	if (m_tail == ~Word{0})
		return;
	for (int y = 0; y < m_height; ++y)
		row(y)[m_stride - 1] &= m_tail;
}

std::size_t BinaryImage::count() const
{
	std::size_t n = 0;
	for (Word w : m_bits)
		n += static_cast<std::size_t>(std::popcount(w));
	return n;
}

PixelSet BinaryImage::points() const
{
	std::vector<Point> pts;
	for (int y = 0; y < m_height; ++y) {
		auto const r = row(y);
		for (std::size_t k = 0; k < m_stride; ++k)
			for (Word w = r[k]; w; w &= w - 1)
				pts.push_back({static_cast<int>(k * 64) + std::countr_zero(w), y});
	}
	return PixelSet(std::move(pts));
}

void BinaryImage::require_same_frame(BinaryImage const& o) const
{
	if (!same_frame(o))
		throw DomainError("image frames differ: " + std::to_string(m_width) + "x" + std::to_string(m_height) +
		                  " vs " + std::to_string(o.m_width) + "x" + std::to_string(o.m_height));
}

bool BinaryImage::is_subset_of(BinaryImage const& o) const
{
	require_same_frame(o);
	for (std::size_t i = 0; i < m_bits.size(); ++i)
		if (m_bits[i] & ~o.m_bits[i])
			return false;
	return true;
}

BinaryImage& BinaryImage::operator&=(BinaryImage const& o)
{
	require_same_frame(o);
	for (std::size_t i = 0; i < m_bits.size(); ++i)
		m_bits[i] &= o.m_bits[i];
	return *this;
}

BinaryImage& BinaryImage::operator|=(BinaryImage const& o)
{
	require_same_frame(o);
	for (std::size_t i = 0; i < m_bits.size(); ++i)
		m_bits[i] |= o.m_bits[i];
	return *this;
}

BinaryImage& BinaryImage::operator^=(BinaryImage const& o)
{
	require_same_frame(o);
	for (std::size_t i = 0; i < m_bits.size(); ++i)
		m_bits[i] ^= o.m_bits[i];
	return *this;
}

namespace {

template <class Op>
std::size_t pair_count(BinaryImage const& x, BinaryImage const& y, Op op)
{
	if (!x.same_frame(y))
		throw DomainError("image frames differ");
	std::size_t n = 0;
	for (int r = 0; r < x.height(); ++r) {
		auto const a = x.row(r);
		auto const b = y.row(r);
		for (std::size_t k = 0; k < a.size(); ++k)
			n += static_cast<std::size_t>(std::popcount(op(a[k], b[k])));
	}
	return n;
}

} // namespace

std::size_t intersection_count(BinaryImage const& x, BinaryImage const& y)
{
	return pair_count(x, y, [](auto a, auto b) { return a & b; });
}

std::size_t union_count(BinaryImage const& x, BinaryImage const& y)
{
	return pair_count(x, y, [](auto a, auto b) { return a | b; });
}

std::size_t difference_count(BinaryImage const& x, BinaryImage const& y)
{
	return pair_count(x, y, [](auto a, auto b) { return a ^ b; });
}

} // namespace dmnn
