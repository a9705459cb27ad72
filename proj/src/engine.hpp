// Copyright 2026 The mirex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// In-process map/combine/reduce executor.
//
// Worker threads pull whole shards from a shared counter and map every
// document of a shard in order. Each worker buffers its emitted values per
// key and runs the job's combiner over a key's buffer whenever it grows past
// combine_threshold, and once more over every key when the worker finishes.
// The buffers of all workers are then grouped by key (the shuffle), the
// values of each key are sorted by the job's total order, and keys are
// reduced in ascending order. Because the reducer never sees scheduling
// order, output is identical for any worker count or shard assignment as
// long as the combiner is sound.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "corpus.hpp"
#include "error.hpp"

namespace mirex::engine {

template <class Key, class Value, class Hash = std::hash<Key>>
class Emitter {
  public:
    using Combine = std::function<std::vector<Value>(const Key&, std::vector<Value>)>;

    Emitter(const Combine* combine, std::size_t threshold) : combine_(combine), threshold_(threshold) {}

    void emit(Key key, Value value) {
        ++emitted_;
        auto it = buffer_.try_emplace(std::move(key)).first;
        it->second.push_back(std::move(value));
        if (combine_ != nullptr && it->second.size() > threshold_) {
            it->second = (*combine_)(it->first, std::move(it->second));
        }
    }

    std::uint64_t emitted() const noexcept { return emitted_; }

    /// Final local combine; runs once per key.
    void finish() {
        if (combine_ == nullptr) return;
        for (auto& [key, values] : buffer_) values = (*combine_)(key, std::move(values));
    }

    std::unordered_map<Key, std::vector<Value>, Hash>& buffer() { return buffer_; }

  private:
    const Combine* combine_;
    std::size_t threshold_;
    std::unordered_map<Key, std::vector<Value>, Hash> buffer_;
    std::uint64_t emitted_ = 0;
};

template <class Key, class Value, class Output, class Hash = std::hash<Key>>
struct Job {
    using key_type = Key;
    using value_type = Value;
    using output_type = Output;
    using emitter_type = Emitter<Key, Value, Hash>;

    /// Called once per document; may emit any number of (key, value) pairs.
    std::function<void(const Document&, emitter_type&)> map;
    /// Optional local aggregation; must not change what reduce produces.
    typename emitter_type::Combine combine;
    /// Receives every value of one key, sorted by value_less.
    std::function<void(const Key&, std::vector<Value>, std::vector<Output>&)> reduce;
    /// Strict total order on values; equivalent values must be identical.
    std::function<bool(const Value&, const Value&)> value_less;
    std::size_t combine_threshold = 4096;
};

template <class Key>
struct ShuffleStats {
    std::uint64_t records_emitted_by_maps = 0;
    std::uint64_t records_after_combine = 0;
    std::map<Key, std::uint64_t> per_key_after_combine;

    std::uint64_t max_per_key() const {
        std::uint64_t m = 0;
        for (const auto& [k, n] : per_key_after_combine) m = std::max(m, n);
        return m;
    }
};

struct RunOptions {
    std::size_t worker_count = 1;
    bool use_combiner = true;
};

template <class Output, class Key>
struct JobResult {
    std::vector<Output> output;
    ShuffleStats<Key> shuffle;
};

namespace detail {

// Runs body(i) for i in [0, count) on up to worker_count threads; the first
// exception thrown stops the remaining work and is rethrown to the caller.
template <class Body>
void parallel_for(std::size_t count, std::size_t worker_count, Body&& body) {
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed = true;
            }
        }
    };
    std::size_t threads = std::min(worker_count, count);
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace detail

template <class Key, class Value, class Output, class Hash>
JobResult<Output, Key> run_job(const Job<Key, Value, Output, Hash>& job, const Corpus& shards,
                               const RunOptions& options) {
    if (options.worker_count < 1) fail(ErrorKind::config, "worker_count must be positive");
    if (!job.map || !job.reduce || !job.value_less) fail(ErrorKind::config, "job is missing map, reduce or order");

    using JobEmitter = Emitter<Key, Value, Hash>;
    const auto* combine = (options.use_combiner && job.combine) ? &job.combine : nullptr;
    const std::size_t workers = options.worker_count;

    // Map phase. Each worker owns one emitter; shards are claimed dynamically.
    std::vector<JobEmitter> emitters;
    emitters.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) emitters.emplace_back(combine, std::max<std::size_t>(1, job.combine_threshold));

    {
        std::atomic<std::size_t> next{0};
        std::atomic<bool> failed{false};
        std::exception_ptr error;
        std::mutex error_mutex;
        auto work = [&](std::size_t w) {
            JobEmitter& emitter = emitters[w];
            while (!failed.load(std::memory_order_relaxed)) {
                std::size_t s = next.fetch_add(1);
                if (s >= shards.size()) break;
                const CorpusShard& shard = shards[s];
                for (const Document& doc : shard.records) {
                    try {
                        job.map(doc, emitter);
                    } catch (const std::exception& e) {
                        std::lock_guard lock(error_mutex);
                        if (!error) {
                            error = std::make_exception_ptr(
                                Error(ErrorKind::job, "map failed on doc '" + doc.doc_id + "' in shard " +
                                                          std::to_string(shard.shard_index) + ": " + e.what()));
                        }
                        failed = true;
                        return;
                    }
                }
            }
            try {
                emitter.finish();
            } catch (const std::exception& e) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::make_exception_ptr(Error(ErrorKind::job, std::string("combine failed: ") + e.what()));
                failed = true;
            }
        };
        if (workers == 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
            for (auto& t : pool) t.join();
        }
        if (error) std::rethrow_exception(error);
    }

    // Shuffle: group by key in ascending key order.
    JobResult<Output, Key> result;
    std::map<Key, std::vector<Value>> grouped;
    for (auto& emitter : emitters) {
        result.shuffle.records_emitted_by_maps += emitter.emitted();
        for (auto& [key, values] : emitter.buffer()) {
            result.shuffle.records_after_combine += values.size();
            result.shuffle.per_key_after_combine[key] += values.size();
            auto& slot = grouped[key];
            if (slot.empty()) {
                slot = std::move(values);
            } else {
                slot.insert(slot.end(), std::make_move_iterator(values.begin()),
                            std::make_move_iterator(values.end()));
            }
        }
        emitter.buffer().clear();
    }

    // Reduce phase. Keys are independent; per-key outputs are concatenated in
    // key order afterwards.
    std::vector<std::pair<const Key*, std::vector<Value>*>> keys;
    keys.reserve(grouped.size());
    for (auto& [key, values] : grouped) keys.emplace_back(&key, &values);
    std::vector<std::vector<Output>> outputs(keys.size());
    detail::parallel_for(keys.size(), workers, [&](std::size_t i) {
        auto& values = *keys[i].second;
        std::sort(values.begin(), values.end(), job.value_less);
        job.reduce(*keys[i].first, std::move(values), outputs[i]);
    });

    std::size_t total = 0;
    for (const auto& o : outputs) total += o.size();
    result.output.reserve(total);
    for (auto& o : outputs) {
        result.output.insert(result.output.end(), std::make_move_iterator(o.begin()), std::make_move_iterator(o.end()));
    }
    return result;
}

/// True iff the job's final output is the same with and without its combiner.
template <class Key, class Value, class Output, class Hash>
bool verify_combiner(const Job<Key, Value, Output, Hash>& job, const Corpus& shards, std::size_t worker_count = 2) {
    if (!job.combine) fail(ErrorKind::config, "job has no combiner to verify");
    auto with = run_job(job, shards, RunOptions{worker_count, true});
    auto without = run_job(job, shards, RunOptions{worker_count, false});
    return with.output == without.output;
}

}  // namespace mirex::engine
