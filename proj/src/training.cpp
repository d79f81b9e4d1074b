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
#include "dmnn/training.hpp"

#include <chrono>

namespace dmnn {

double to_double(Rational const& r)
{
	return r.convert_to<double>();
}

std::string to_string(Rational const& r)
{
	return r.str();
}

std::string_view to_string(Algorithm a)
{
	return a == Algorithm::Lda ? "lda" : "slda";
}

std::string_view to_string(LossKind l)
{
	return l == LossKind::Absolute ? "absolute" : "iou";
}

Algorithm algorithm_from_string(std::string_view s)
{
	if (s == "lda")
		return Algorithm::Lda;
	if (s == "slda")
		return Algorithm::Slda;
	throw ConfigError("unknown algorithm \"" + std::string(s) + "\" (expected lda or slda)");
}

LossKind loss_from_string(std::string_view s)
{
	if (s == "absolute")
		return LossKind::Absolute;
	if (s == "iou")
		return LossKind::Iou;
	throw ConfigError("unknown loss \"" + std::string(s) + "\" (expected absolute or iou)");
}

void check_config(TrainConfig const& cfg, std::size_t sample_size)
{
	if (sample_size == 0)
		throw ConfigError("training sample is empty");
	if (cfg.epochs < 1)
		throw ConfigError("epochs must be at least 1");
	if (cfg.batch_size < 1 || cfg.batch_size > sample_size)
		throw ConfigError("batch size must lie in [1, " + std::to_string(sample_size) + "], got " +
		                  std::to_string(cfg.batch_size));
	if (cfg.neighbors < 1)
		throw ConfigError("neighbors must be at least 1");
}

namespace {

Rational fraction(std::size_t num, std::size_t den)
{
	Rational r(static_cast<unsigned long long>(num));
	r /= static_cast<unsigned long long>(den);
	return r;
}

void require_same_frame(BinaryImage const& a, BinaryImage const& b)
{
	if (!a.same_frame(b))
		throw DomainError("prediction and target frames differ");
}

} // namespace

Rational absolute_loss(BinaryImage const& prediction, BinaryImage const& target)
{
	require_same_frame(prediction, target);
	return fraction(difference_count(prediction, target), target.pixel_count());
}

Rational iou_loss(BinaryImage const& prediction, BinaryImage const& target)
{
	require_same_frame(prediction, target);
	std::size_t const u = union_count(prediction, target);
	if (u == 0)
		return Rational(0);
	return Rational(1) - fraction(intersection_count(prediction, target), u);
}

Rational pair_loss(LossKind kind, BinaryImage const& prediction, BinaryImage const& target)
{
	return kind == LossKind::Absolute ? absolute_loss(prediction, target) : iou_loss(prediction, target);
}

Rational loss_absolute(BinaryImage const& x, BinaryImage const& y, Mcg const& g)
{
	return absolute_loss(evaluate(g, x), y);
}

Rational loss_iou(BinaryImage const& x, BinaryImage const& y, Mcg const& g)
{
	return iou_loss(evaluate(g, x), y);
}

Rational mean_loss(ArchitectureSpec const& a, ParamVector const& p, std::vector<SamplePair> const& sample,
                   LossKind loss)
{
	if (sample.empty())
		throw DomainError("mean loss of an empty sample");
	check_params(a, p);
	std::vector<Rational> per(sample.size());
	auto const n = static_cast<std::ptrdiff_t>(sample.size());
#pragma omp parallel for schedule(dynamic)
	for (std::ptrdiff_t j = 0; j < n; ++j) {
		auto const& s = sample[static_cast<std::size_t>(j)];
		per[static_cast<std::size_t>(j)] = pair_loss(loss, apply_params(a, p, s.input), s.target);
	}
	Rational sum = 0;
	for (auto const& r : per) // fixed order
		sum += r;
	return sum / static_cast<unsigned long long>(sample.size());
}

namespace {

enum Stream : std::uint64_t { batch_stream = 1, neighbor_stream = 2, tie_stream = 3 };

// Layer outputs of the current point on a subset of the sample, so a
// candidate that changes layer l only recomputes layers l, l+1, ...
// Combiner layers also keep each operator's output, so changing one
// interval recomputes a single operator of that layer.
class PointCache {
public:
	PointCache(ArchitectureSpec const& a, ParamVector const& p, std::vector<SamplePair> const& sample,
	           std::vector<std::size_t> indices)
	: m_arch(a), m_params(p), m_sample(sample), m_indices(std::move(indices))
	{
		std::size_t const m = m_indices.size();
		m_outs.resize(m);
		m_parts.resize(m);
		auto const n = static_cast<std::ptrdiff_t>(m);
#pragma omp parallel for schedule(dynamic)
		for (std::ptrdiff_t jj = 0; jj < n; ++jj) {
			auto const j = static_cast<std::size_t>(jj);
			BinaryImage y = m_sample[m_indices[j]].input;
			m_parts[j].resize(a.layers.size());
			for (std::size_t l = 0; l < a.layers.size(); ++l) {
				auto const& layer = a.layers[l];
				if (layer.is_combiner()) {
					for (auto const& c : p.layers[l])
						m_parts[j][l].push_back(operator_output(layer, std::get<Interval>(c), y));
					y = combine(layer, m_parts[j][l], std::nullopt, nullptr);
				} else {
					y = apply_layer(layer, p.layers[l], y);
				}
				m_outs[j].push_back(y);
			}
		}
	}

	/// Mean loss over the cached pairs of the point reached by `m`.
	Rational loss(Move const& m, LossKind kind) const
	{
		auto const& layer = m_arch.layers[m.layer];
		Coord const changed = coord_neighbor(m_params.layers[m.layer][m.coord], layer.window(), m.index);
		Rational sum = 0;
		for (std::size_t j = 0; j < m_indices.size(); ++j) {
			auto const& pair = m_sample[m_indices[j]];
			BinaryImage const& x = m.layer == 0 ? pair.input : m_outs[j][m.layer - 1];
			BinaryImage y;
			if (layer.is_combiner()) {
				BinaryImage const part = operator_output(layer, std::get<Interval>(changed), x);
				y = combine(layer, m_parts[j][m.layer], m.coord, &part);
			} else {
				y = apply_layer(layer, {changed}, x);
			}
			for (std::size_t l = m.layer + 1; l < m_arch.layers.size(); ++l)
				y = apply_layer(m_arch.layers[l], m_params.layers[l], y);
			sum += pair_loss(kind, y, pair.target);
		}
		return sum / static_cast<unsigned long long>(m_indices.size());
	}

private:
	static BinaryImage operator_output(LayerSpec const& layer, Interval const& i, BinaryImage const& x)
	{
		return layer.kind == LayerKind::SupGenSup ? sup_generating(x, i) : inf_generating(x, i);
	}

	// Folds the operator outputs in coordinate order, substituting `replacement`
	// for coordinate `skip` when given.
	static BinaryImage combine(LayerSpec const& layer, std::vector<BinaryImage> const& parts,
	                           std::optional<std::size_t> skip, BinaryImage const* replacement)
	{
		bool const sup = layer.kind == LayerKind::SupGenSup;
		BinaryImage acc;
		for (std::size_t c = 0; c < parts.size(); ++c) {
			BinaryImage const& part = (skip && *skip == c) ? *replacement : parts[c];
			if (c == 0)
				acc = part;
			else if (sup)
				acc |= part;
			else
				acc &= part;
		}
		return acc;
	}

	ArchitectureSpec const& m_arch;
	ParamVector const& m_params;
	std::vector<SamplePair> const& m_sample;
	std::vector<std::size_t> m_indices;
	std::vector<std::vector<BinaryImage>> m_outs;
	std::vector<std::vector<std::vector<BinaryImage>>> m_parts;
};

struct Choice {
	Move move;
	Rational loss;
};

// Evaluates every candidate (in parallel), then takes the minimum in
// candidate order; ties are broken by a uniform draw from `tie_rng`, which
// is consumed only when there is more than one minimizer.
Choice best_candidate(PointCache const& cache, std::vector<Move> const& moves, LossKind kind, Rng& tie_rng)
{
	std::vector<Rational> losses(moves.size());
	auto const n = static_cast<std::ptrdiff_t>(moves.size());
#pragma omp parallel for schedule(dynamic)
	for (std::ptrdiff_t i = 0; i < n; ++i)
		losses[static_cast<std::size_t>(i)] = cache.loss(moves[static_cast<std::size_t>(i)], kind);

	Rational const* best = &losses.front();
	for (auto const& l : losses)
		if (l < *best)
			best = &l;
	std::vector<std::size_t> ties;
	for (std::size_t i = 0; i < losses.size(); ++i)
		if (losses[i] == *best)
			ties.push_back(i);
	std::size_t const pick = ties.size() == 1 ? ties.front() : ties[uniform_below(tie_rng, ties.size())];
	return {moves[pick], losses[pick]};
}

std::vector<std::size_t> iota_indices(std::size_t n)
{
	std::vector<std::size_t> v(n);
	for (std::size_t i = 0; i < n; ++i)
		v[i] = i;
	return v;
}

class Trainer {
public:
	Trainer(ArchitectureSpec const& a, ParamVector const& init, std::vector<SamplePair> const& sample,
	        TrainConfig const& cfg, EpochCallback on_epoch)
	: m_arch(a), m_sample(sample), m_cfg(cfg), m_on_epoch(std::move(on_epoch)), m_current(init),
	  m_batch_rng(derive_rng(cfg.seed, batch_stream)), m_neighbor_rng(derive_rng(cfg.seed, neighbor_stream)),
	  m_tie_rng(derive_rng(cfg.seed, tie_stream)), m_start(std::chrono::steady_clock::now())
	{
		check_architecture(a);
		check_params(a, init);
		check_config(cfg, sample.size());
		if (neighbor_count(a, init) == 0)
			throw ConfigError("architecture has no trainable parameters");
		for (auto const& s : sample)
			if (!s.input.same_frame(s.target))
				throw DomainError("sample pair with different input and target frames");
		m_report.initial_loss = mean_loss(a, init, sample, cfg.loss);
		m_report.best_loss = m_report.initial_loss;
		m_report.best_params = init;
		if (cfg.record_path)
			m_report.path.push_back(init);
	}

	TrainReport run()
	{
		for (std::size_t e = 1; e <= m_cfg.epochs; ++e) {
			Rational current = m_cfg.algorithm == Algorithm::Lda ? lda_epoch(e) : slda_epoch(e);
			finish_epoch(e, std::move(current));
		}
		return std::move(m_report);
	}

private:
	Rational lda_epoch(std::size_t e)
	{
		PointCache const cache(m_arch, m_current, m_sample, iota_indices(m_sample.size()));
		Choice const c = best_candidate(cache, all_moves(m_arch, m_current), m_cfg.loss, m_tie_rng);
		move_to(c.move, e);
		return c.loss;
	}

	Rational slda_epoch(std::size_t e)
	{
		std::vector<std::size_t> order = iota_indices(m_sample.size());
		shuffle(order, m_batch_rng);
		for (std::size_t first = 0; first < order.size(); first += m_cfg.batch_size) {
			std::size_t const last = std::min(order.size(), first + m_cfg.batch_size);
			std::vector<std::size_t> batch(order.begin() + static_cast<std::ptrdiff_t>(first),
			                               order.begin() + static_cast<std::ptrdiff_t>(last));
			PointCache const cache(m_arch, m_current, m_sample, std::move(batch));
			auto const moves = sample_moves(m_arch, m_current, m_cfg.neighbors, m_neighbor_rng);
			Choice const c = best_candidate(cache, moves, m_cfg.loss, m_tie_rng);
			move_to(c.move, e);
		}
		return mean_loss(m_arch, m_current, m_sample, m_cfg.loss);
	}

	void move_to(Move const& m, std::size_t epoch)
	{
		ParamVector next = apply_move(m_arch, m_current, m);
		if (m_two_back && *m_two_back == next &&
		    (m_report.periodic_epochs.empty() || m_report.periodic_epochs.back() != epoch))
			m_report.periodic_epochs.push_back(epoch);
		m_two_back = std::move(m_current);
		m_current = std::move(next);
		++m_report.moves;
		if (m_cfg.record_path)
			m_report.path.push_back(m_current);
	}

	void finish_epoch(std::size_t e, Rational current)
	{
		if (current < m_report.best_loss) {
			m_report.best_loss = current;
			m_report.best_params = m_current;
			m_report.epoch_of_best = e;
		}
		std::chrono::duration<double, std::milli> const elapsed = std::chrono::steady_clock::now() - m_start;
		m_report.log.push_back({e, std::move(current), m_report.best_loss, elapsed.count()});
		if (m_on_epoch)
			m_on_epoch(m_report.log.back());
	}

	ArchitectureSpec const& m_arch;
	std::vector<SamplePair> const& m_sample;
	TrainConfig m_cfg;
	EpochCallback m_on_epoch;
	ParamVector m_current;
	std::optional<ParamVector> m_two_back;
	Rng m_batch_rng;
	Rng m_neighbor_rng;
	Rng m_tie_rng;
	std::chrono::steady_clock::time_point m_start;
	TrainReport m_report;
};

} // namespace

TrainReport lda_train(ArchitectureSpec const& a, ParamVector const& init, std::vector<SamplePair> const& sample,
                      TrainConfig const& cfg, EpochCallback on_epoch)
{
	if (cfg.algorithm != Algorithm::Lda)
		throw ConfigError("lda_train called with algorithm " + std::string(to_string(cfg.algorithm)));
	return Trainer(a, init, sample, cfg, std::move(on_epoch)).run();
}

TrainReport slda_train(ArchitectureSpec const& a, ParamVector const& init, std::vector<SamplePair> const& sample,
                       TrainConfig const& cfg, EpochCallback on_epoch)
{
	if (cfg.algorithm != Algorithm::Slda)
		throw ConfigError("slda_train called with algorithm " + std::string(to_string(cfg.algorithm)));
	return Trainer(a, init, sample, cfg, std::move(on_epoch)).run();
}

TrainReport train(ArchitectureSpec const& a, ParamVector const& init, std::vector<SamplePair> const& sample,
                  TrainConfig const& cfg, EpochCallback on_epoch)
{
	return cfg.algorithm == Algorithm::Lda ? lda_train(a, init, sample, cfg, std::move(on_epoch))
	                                       : slda_train(a, init, sample, cfg, std::move(on_epoch));
}

} // namespace dmnn
