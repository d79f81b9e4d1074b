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

#include "dmnn/image.hpp"
#include "dmnn/lattice.hpp"

namespace dmnn {

/// Structuring element: a finite set of offsets relative to the origin.
/// May be empty.
using StructElem = PixelSet;

// Bit-parallel operators. Each output row is computed from word-shifted
// input rows; rows are distributed over OpenMP threads for large frames.
// All operators read 0 outside the frame, and complements are taken
// relative to the frame.

/// Pixel p is set iff p - h is set in x.
BinaryImage translate(BinaryImage const& x, Point h);
BinaryImage complement(BinaryImage const& x);

/// h is set iff h - b is set for some b in B. Dilation by ∅ is empty.
BinaryImage dilate(BinaryImage const& x, StructElem const& b);
/// h is set iff h + b is set for every b in B. Erosion by ∅ is the full frame.
BinaryImage erode(BinaryImage const& x, StructElem const& b);

BinaryImage open(BinaryImage const& x, StructElem const& b);
BinaryImage close(BinaryImage const& x, StructElem const& b);
/// One alternating-filter layer: close(open(x, b), b).
BinaryImage asf_layer(BinaryImage const& x, StructElem const& b);

/// λ_[A,B](X) = ε_A(X) ∩ ν δ_{(W \ B)^t}(X), fused into one pass: h is set
/// iff every h + a (a in A) is set and no h + w (w in W \ B) is.
BinaryImage sup_generating(BinaryImage const& x, Interval const& i);
/// μ_[A,B](X) = δ_A(X) ∪ ν ε_{(W \ B)^t}(X), the dual of λ over W^t.
BinaryImage inf_generating(BinaryImage const& x, Interval const& i);

/// Slides the window of f over every frame pixel and looks up f on the
/// window content.
BinaryImage apply_boolean_fn(BinaryImage const& x, BooleanFn const& f);

namespace reference {

// Direct per-pixel transcriptions of the set definitions. Slow; kept as
// test oracles and benchmark baselines.

BinaryImage translate(BinaryImage const& x, Point h);
BinaryImage complement(BinaryImage const& x);
BinaryImage dilate(BinaryImage const& x, StructElem const& b);
BinaryImage erode(BinaryImage const& x, StructElem const& b);
BinaryImage open(BinaryImage const& x, StructElem const& b);
BinaryImage close(BinaryImage const& x, StructElem const& b);
BinaryImage asf_layer(BinaryImage const& x, StructElem const& b);
/// { h : A ⊆ (X - h) ∩ W ⊆ B }.
BinaryImage sup_generating(BinaryImage const& x, Interval const& i);
/// { h : (X - h) ∩ A^t ≠ ∅ or (X - h)^c ∩ (W \ B)^t ≠ ∅ }.
BinaryImage inf_generating(BinaryImage const& x, Interval const& i);
BinaryImage apply_boolean_fn(BinaryImage const& x, BooleanFn const& f);

} // namespace reference

} // namespace dmnn
