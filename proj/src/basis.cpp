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
#include "dmnn/mcg.hpp"

namespace dmnn {

namespace {

void check_cap(Window const& w, std::size_t cap)
{
	if (w.size() > cap)
		throw WindowCapExceeded(w.size(), cap);
}

} // namespace

// The kernel of X -> [a in ψ(X)] is the kernel of ψ translated by a, so
// ε_A ψ is the infimum of the translated bases and δ_B ψ the supremum of
// the bases translated by -b.

IntervalCollection erosion_basis(IntervalCollection const& b, StructElem const& a,
                                 Window const& target, std::size_t cap)
{
	check_cap(target, cap);
	BooleanFn f = BooleanFn::constant(target, true, cap);
	for (Point p : a)
		f &= collection_to_boolean(rewindow(translate(b, p), target), cap);
	return maximal_intervals(f);
}

IntervalCollection dilation_basis(IntervalCollection const& b, StructElem const& se,
                                  Window const& target, std::size_t cap)
{
	check_cap(target, cap);
	BooleanFn f(target, cap);
	for (Point p : se)
		f |= collection_to_boolean(rewindow(translate(b, -p), target), cap);
	return maximal_intervals(f);
}

IntervalCollection basis_of(Mcg const& g, std::size_t cap)
{
	auto const windows = vertex_windows(g);
	std::vector<IntervalCollection> basis(g.size(), IntervalCollection(Window{}));

	for (std::size_t v : g.order()) {
		Vertex const& vx = g.vertex(v);
		Window const& wv = windows[v];
		check_cap(wv, cap);
		auto const in = g.inputs(v);

		switch (vx.kind) {
		case VertexKind::Input:
			// Identity on {o}: the single interval [{o}, {o}].
			basis[v] = IntervalCollection(wv, {MaskInterval{1, 1}});
			break;
		case VertexKind::Output:
			basis[v] = basis[in.front()];
			break;
		case VertexKind::Sup:
		case VertexKind::Inf: {
			bool const is_sup = vx.kind == VertexKind::Sup;
			BooleanFn f = BooleanFn::constant(wv, !is_sup, cap);
			for (std::size_t u : in) {
				BooleanFn const fu = collection_to_boolean(rewindow(basis[u], wv), cap);
				if (is_sup)
					f |= fu;
				else
					f &= fu;
			}
			basis[v] = maximal_intervals(f);
			break;
		}
		case VertexKind::Complement:
			basis[v] = collection_complement(basis[in.front()], cap);
			break;
		case VertexKind::ConstEmpty:
			basis[v] = IntervalCollection::bottom(wv);
			break;
		case VertexKind::Erosion:
			basis[v] = erosion_basis(basis[in.front()], vx.se, wv, cap);
			break;
		case VertexKind::Dilation:
			basis[v] = dilation_basis(basis[in.front()], vx.se, wv, cap);
			break;
		case VertexKind::Opening:
		case VertexKind::Closing:
		case VertexKind::Asf: {
			IntervalCollection b = basis[in.front()];
			auto const erode_step = [&] {
				b = erosion_basis(b, vx.se, b.window() + vx.base, cap);
			};
			auto const dilate_step = [&] {
				b = dilation_basis(b, vx.se, b.window() + vx.base.transposed(), cap);
			};
			if (vx.kind != VertexKind::Closing) { // opening first
				erode_step();
				dilate_step();
			}
			if (vx.kind != VertexKind::Opening) { // then closing
				dilate_step();
				erode_step();
			}
			basis[v] = rewindow(b, wv);
			break;
		}
		case VertexKind::SupGen: {
			// λ_[A,B] ψ = ε_A ψ ∩ ν δ_{(W \ B)^t} ψ
			Interval const& i = *vx.interval;
			IntervalCollection const& b = basis[in.front()];
			PixelSet const miss = set_difference(i.window().support(), i.right()).transposed();
			BooleanFn f = collection_to_boolean(erosion_basis(b, i.left(), wv, cap), cap);
			f &= ~collection_to_boolean(dilation_basis(b, miss, wv, cap), cap);
			basis[v] = maximal_intervals(f);
			break;
		}
		case VertexKind::InfGen: {
			// μ_[A,B] ψ = δ_A ψ ∪ ν ε_{(W \ B)^t} ψ
			Interval const& i = *vx.interval;
			IntervalCollection const& b = basis[in.front()];
			PixelSet const miss = set_difference(i.window().support(), i.right()).transposed();
			BooleanFn f = collection_to_boolean(dilation_basis(b, i.left(), wv, cap), cap);
			f |= ~collection_to_boolean(erosion_basis(b, miss, wv, cap), cap);
			basis[v] = maximal_intervals(f);
			break;
		}
		}
	}
	return basis[g.output_vertex()];
}

} // namespace dmnn
