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

#include "dmnn/random.hpp"
#include "dmnn/training.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace dmnn {

/// Parses a P1 (ASCII) or P4 (binary) PBM; 1 is foreground. Throws
/// DataError naming the byte offset of the first problem.
BinaryImage parse_pbm(std::string const& bytes);
std::string format_pbm(BinaryImage const& img, bool binary = true);
BinaryImage read_pbm(std::filesystem::path const& path);
void write_pbm(BinaryImage const& img, std::filesystem::path const& path, bool binary = true);

/// 4-connected cross {o, (±1,0), (0,±1)}.
StructElem cross();

/// Internal boundary x \ ε_se(x).
BinaryImage boundary_target(BinaryImage const& x, StructElem const& se = cross());

/// Flips every pixel independently with probability `rate` in [0, 0.5).
BinaryImage add_noise(BinaryImage const& x, double rate, Rng& rng);

enum class ShapeKind { Blobs, Digits };
std::string_view to_string(ShapeKind k);
ShapeKind shape_from_string(std::string_view s);

struct CorpusSpec {
	std::size_t count = 10;
	int width = 56;
	int height = 56;
	double noise_rate = 0.05;
	ShapeKind shape = ShapeKind::Digits;
	std::uint64_t seed = 0;
};

/// Throws ConfigError for a zero count, an empty frame or a rate outside
/// [0, 0.5).
void check_corpus_spec(CorpusSpec const& spec);

/// Clean shape: a random union of rectangles and discs (Blobs), or the
/// digit `index % 10` in a scaled 5x7 font at a random position (Digits).
BinaryImage render_shape(ShapeKind kind, int width, int height, std::size_t index, Rng& rng);

/// Seed of the i-th pair of a corpus.
std::uint64_t pair_seed(std::uint64_t corpus_seed, std::size_t i);
/// Pair i: clean shape from pair_seed(spec.seed, i); target is its boundary,
/// input the clean shape with noise.
SamplePair generate_pair(CorpusSpec const& spec, std::size_t i);
std::vector<SamplePair> gen_corpus(CorpusSpec const& spec);

/// Writes input_NNN.pbm / target_NNN.pbm pairs and manifest.json
/// {"spec": ..., "files": [{"input", "target", "seed"}, ...]}.
std::vector<SamplePair> write_corpus(CorpusSpec const& spec, std::filesystem::path const& dir);
/// Reads the pairs listed in dir/manifest.json. Throws DataError when the
/// directory, manifest or any listed image is missing or malformed.
std::vector<SamplePair> load_corpus(std::filesystem::path const& dir);

} // namespace dmnn
