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

namespace dmnn::reference {

namespace {

template <class Pred>
BinaryImage build(BinaryImage const& x, Pred pred)
{
	BinaryImage out(x.width(), x.height());
	for (int y = 0; y < x.height(); ++y)
		for (int c = 0; c < x.width(); ++c)
			if (pred(Point{c, y}))
				out.set({c, y}, true);
	return out;
}

} // namespace

BinaryImage translate(BinaryImage const& x, Point h)
{
	return build(x, [&](Point p) { return x.get(p - h); });
}

BinaryImage complement(BinaryImage const& x)
{
	return build(x, [&](Point p) { return !x.get(p); });
}

BinaryImage dilate(BinaryImage const& x, StructElem const& b)
{
	return build(x, [&](Point h) {
		for (Point q : b)
			if (x.get(h - q))
				return true;
		return false;
	});
}

BinaryImage erode(BinaryImage const& x, StructElem const& b)
{
	return build(x, [&](Point h) {
		for (Point q : b)
			if (!x.get(h + q))
				return false;
		return true;
	});
}

BinaryImage open(BinaryImage const& x, StructElem const& b)
{
	return reference::dilate(reference::erode(x, b), b);
}

BinaryImage close(BinaryImage const& x, StructElem const& b)
{
	return reference::erode(reference::dilate(x, b), b);
}

BinaryImage asf_layer(BinaryImage const& x, StructElem const& b)
{
	return reference::close(reference::open(x, b), b);
}

BinaryImage sup_generating(BinaryImage const& x, Interval const& i)
{
	return build(x, [&](Point h) {
		std::vector<Point> view;
		for (Point w : i.window().support())
			if (x.get(h + w))
				view.push_back(w);
		return interval_contains(i, PixelSet(std::move(view)));
	});
}

BinaryImage inf_generating(BinaryImage const& x, Interval const& i)
{
	PixelSet const at = i.left().transposed();
	PixelSet const miss_t = set_difference(i.window().support(), i.right()).transposed();
	return build(x, [&](Point h) {
		// (X - h) ∩ A^t ≠ ∅
		for (Point p : at)
			if (x.get(p + h))
				return true;
		// (X - h)^c ∩ (W \ B)^t ≠ ∅
		for (Point p : miss_t)
			if (!x.get(p + h))
				return true;
		return false;
	});
}

BinaryImage apply_boolean_fn(BinaryImage const& x, BooleanFn const& f)
{
	Window const& w = f.window();
	return build(x, [&](Point h) {
		std::vector<Point> view;
		for (Point p : w.support())
			if (x.get(h + p))
				view.push_back(p);
		return f(PixelSet(std::move(view)));
	});
}

} // namespace dmnn::reference
