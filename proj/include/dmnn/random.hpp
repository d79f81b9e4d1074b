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

#include <cstdint>
#include <random>
#include <vector>

namespace dmnn {

using Rng = std::mt19937_64;

// The standard distributions are implementation-defined; these helpers are
// not, so seeded runs agree across toolchains.

/// Uniform integer in [0, n), n > 0, by rejection sampling.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n)
{
	std::uint64_t const limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
	std::uint64_t r;
	do
		r = rng();
	while (r >= limit);
	return r % n;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng)
{
	return static_cast<double>(rng() >> 11) * 0x1p-53;
}

/// Independent stream derived from a seed and a stream label (splitmix64).
inline Rng derive_rng(std::uint64_t seed, std::uint64_t stream)
{
	std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
	z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
	z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
	return Rng(z ^ (z >> 31));
}

template <class T>
void shuffle(std::vector<T>& v, Rng& rng)
{
	for (std::size_t i = v.size(); i > 1; --i)
		std::swap(v[i - 1], v[uniform_below(rng, i)]);
}

} // namespace dmnn
