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
#include "dmnn/morphology.hpp"

#include <vector>

namespace dmnn {

namespace {

using Word = BinaryImage::Word;

// Below this many words a frame is processed on the calling thread.
constexpr std::size_t parallel_threshold = 4096;

// Builds an image of x's frame whose word (y, k) is fn(y, 64k).
template <class Fn>
BinaryImage map_words(BinaryImage const& x, Fn fn)
{
	BinaryImage out(x.width(), x.height());
	int const h = x.height();
	std::size_t const stride = x.words_per_row();
	bool const large = stride * static_cast<std::size_t>(h) >= parallel_threshold;
#pragma omp parallel for schedule(static) if (large)
	for (int y = 0; y < h; ++y) {
		auto r = out.row(y);
		for (std::size_t k = 0; k < stride; ++k)
			r[k] = fn(y, static_cast<int>(k * 64));
	}
	out.trim();
	return out;
}

std::vector<Point> offsets(PixelSet const& s)
{
	return {s.begin(), s.end()};
}

} // namespace

BinaryImage translate(BinaryImage const& x, Point h)
{
	return map_words(x, [&](int y, int x0) { return x.read_word(y - h.y, x0 - h.x); });
}

BinaryImage complement(BinaryImage const& x)
{
	return map_words(x, [&](int y, int x0) { return ~x.row(y)[static_cast<std::size_t>(x0 / 64)]; });
}

BinaryImage dilate(BinaryImage const& x, StructElem const& b)
{
	auto const off = offsets(b);
	return map_words(x, [&](int y, int x0) {
		Word acc = 0;
		for (Point p : off)
			acc |= x.read_word(y - p.y, x0 - p.x);
		return acc;
	});
}

BinaryImage erode(BinaryImage const& x, StructElem const& b)
{
	auto const off = offsets(b);
	return map_words(x, [&](int y, int x0) {
		Word acc = ~Word{0};
		for (Point p : off) {
			acc &= x.read_word(y + p.y, x0 + p.x);
			if (!acc)
				break;
		}
		return acc;
	});
}

BinaryImage open(BinaryImage const& x, StructElem const& b)
{
	return dilate(erode(x, b), b);
}

BinaryImage close(BinaryImage const& x, StructElem const& b)
{
	return erode(dilate(x, b), b);
}

BinaryImage asf_layer(BinaryImage const& x, StructElem const& b)
{
	return close(open(x, b), b);
}

BinaryImage sup_generating(BinaryImage const& x, Interval const& i)
{
	auto const hits = offsets(i.left());
	auto const misses = offsets(set_difference(i.window().support(), i.right()));
	return map_words(x, [&](int y, int x0) {
		Word acc = ~Word{0};
		for (Point p : hits)
			acc &= x.read_word(y + p.y, x0 + p.x);
		for (Point p : misses) {
			if (!acc)
				break;
			acc &= ~x.read_word(y + p.y, x0 + p.x);
		}
		return acc;
	});
}

BinaryImage inf_generating(BinaryImage const& x, Interval const& i)
{
	auto const hits = offsets(i.left());
	auto const misses = offsets(set_difference(i.window().support(), i.right()));
	return map_words(x, [&](int y, int x0) {
		Word any = 0;
		for (Point p : hits)
			any |= x.read_word(y - p.y, x0 - p.x);
		Word all = ~Word{0};
		for (Point p : misses)
			all &= x.read_word(y - p.y, x0 - p.x);
		return any | ~all;
	});
}

BinaryImage apply_boolean_fn(BinaryImage const& x, BooleanFn const& f)
{
	auto const off = offsets(f.window().support());
	std::size_t const n = off.size();
	return map_words(x, [&](int y, int x0) {
		Word gathered[Window::max_points];
		for (std::size_t i = 0; i < n; ++i)
			gathered[i] = x.read_word(y + off[i].y, x0 + off[i].x);
		// Transpose: pixel t's window mask collects bit t of every gathered word.
		Word out = 0;
		for (int t = 0; t < 64; ++t) {
			Mask m = 0;
			for (std::size_t i = 0; i < n; ++i)
				m |= ((gathered[i] >> t) & 1u) << i;
			out |= static_cast<Word>(f.at(m)) << t;
		}
		return out;
	});
}

} // namespace dmnn
