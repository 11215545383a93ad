#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace musielak {

/// Pairwise (tree) summation with a fixed split rule. The result depends only
/// on the sequence of values, never on how it was produced.
double pairwise_sum(std::span<const double> values);

/// Runs body(begin, end, worker) over a static partition of [0, count) into
/// contiguous chunks, one chunk per worker. Workers must write to disjoint
/// output slots; any reduction happens afterwards in fixed order.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t, std::size_t, unsigned)>& body);

/// Number of workers actually used for `threads` (0 means hardware concurrency).
unsigned resolve_threads(unsigned threads);

}  // namespace musielak
