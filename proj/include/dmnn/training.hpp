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

#include "dmnn/architecture.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <string>
#include <vector>

namespace dmnn {

/// Loss values are exact fractions of pixel counts, so ties are exact.
using Rational = boost::multiprecision::cpp_rational;

double to_double(Rational const& r);
/// "p/q" (or "p" when q = 1).
std::string to_string(Rational const& r);

struct SamplePair {
	BinaryImage input;
	BinaryImage target;
};

enum class Algorithm { Lda, Slda };
enum class LossKind { Absolute, Iou };

std::string_view to_string(Algorithm a);
std::string_view to_string(LossKind l);
/// Throw ConfigError on unknown names.
Algorithm algorithm_from_string(std::string_view s);
LossKind loss_from_string(std::string_view s);

struct TrainConfig {
	Algorithm algorithm = Algorithm::Slda;
	std::size_t epochs = 1;
	std::size_t batch_size = 1;
	std::size_t neighbors = 1; // sampled per batch (SLDA only)
	LossKind loss = LossKind::Iou;
	std::uint64_t seed = 0;
	/// Keep every visited point in TrainReport::path.
	bool record_path = false;
};

/// Throws ConfigError unless epochs >= 1, 1 <= b <= N and n >= 1.
void check_config(TrainConfig const& cfg, std::size_t sample_size);

/// |Y ∆ ψ(X)| / |F|.
Rational absolute_loss(BinaryImage const& prediction, BinaryImage const& target);
/// 1 - |Y ∩ ψ(X)| / |Y ∪ ψ(X)|; 0 when the union is empty.
Rational iou_loss(BinaryImage const& prediction, BinaryImage const& target);
Rational pair_loss(LossKind kind, BinaryImage const& prediction, BinaryImage const& target);

Rational loss_absolute(BinaryImage const& x, BinaryImage const& y, Mcg const& g);
Rational loss_iou(BinaryImage const& x, BinaryImage const& y, Mcg const& g);

/// Mean pair loss over the sample. Throws DomainError on an empty sample
/// or frame mismatch.
Rational mean_loss(ArchitectureSpec const& a, ParamVector const& p, std::vector<SamplePair> const& sample,
                   LossKind loss);

struct EpochLog {
	std::size_t epoch = 0;
	Rational current; // full-sample loss of the current point
	Rational best;    // best loss so far
	double time_ms = 0;
};

struct TrainReport {
	ParamVector best_params;
	Rational best_loss;
	Rational initial_loss;
	std::vector<EpochLog> log;
	/// Epoch at which best_params was reached (0: the initial point).
	std::size_t epoch_of_best = 0;
	std::size_t moves = 0;
	/// Epochs in which the path returned to the point visited two moves
	/// earlier.
	std::vector<std::size_t> periodic_epochs;
	std::vector<ParamVector> path; // only with TrainConfig::record_path
};

using EpochCallback = std::function<void(EpochLog const&)>;

/// Full-neighborhood descent: every epoch moves to a minimizer of the
/// sample loss over N(C), breaking ties uniformly with a seeded draw.
TrainReport lda_train(ArchitectureSpec const& a, ParamVector const& init, std::vector<SamplePair> const& sample,
                      TrainConfig const& cfg, EpochCallback on_epoch = {});

/// Stochastic descent: every epoch shuffles the sample into batches of b
/// and, per batch, moves to the best of n sampled neighbors on that batch.
/// The best point is checked on the full sample at the end of each epoch.
TrainReport slda_train(ArchitectureSpec const& a, ParamVector const& init, std::vector<SamplePair> const& sample,
                       TrainConfig const& cfg, EpochCallback on_epoch = {});

/// Dispatches on cfg.algorithm.
TrainReport train(ArchitectureSpec const& a, ParamVector const& init, std::vector<SamplePair> const& sample,
                  TrainConfig const& cfg, EpochCallback on_epoch = {});

} // namespace dmnn
