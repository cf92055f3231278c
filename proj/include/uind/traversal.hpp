#pragma once

// Depth-first walk of the bit-request tree of a Machine.  The tree branches
// only where the machine asks for another program bit, so every leaf is a
// minimal program for whatever happened on it.
//
// A visitor provides:
//   std::size_t stop_length(const Machine&)       output length to pause at
//   bool on_output(const Machine&, BitPath, std::size_t previous_length)
//                                                 false closes the branch
//   void on_halt(const Machine&, BitPath)
//   bool expand(const Machine&, BitPath)          false prunes before branching

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <mutex>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include "uind/refmachine.hpp"

namespace uind {

using BitPath = std::span<const std::uint8_t>;

struct ExecPolicy {
  int threads = 1;
  // Merge partial results in subtree order rather than completion order.
  bool reproducible_reduction = true;
  friend bool operator==(const ExecPolicy&, const ExecPolicy&) = default;
};

// Subtrees rooted at this depth are the unit of parallel work.  The value is
// fixed so results never depend on the thread count.
inline constexpr std::size_t kPartitionBits = 9;

namespace detail {

struct Subtree {
  Machine machine;
  std::vector<std::uint8_t> path;
};

template <class Visitor>
void walk(Machine machine, std::vector<std::uint8_t>& path, std::size_t max_bits,
          Visitor& visitor, std::size_t split_at = 0, std::vector<Subtree>* frontier = nullptr) {
  for (;;) {
    const std::size_t before = machine.output().size();
    auto event = machine.run(path, visitor.stop_length(machine));
    switch (event) {
      case Machine::Event::OutputReached:
        if (!visitor.on_output(machine, path, before)) return;
        continue;
      case Machine::Event::Halted:
        visitor.on_halt(machine, path);
        return;
      case Machine::Event::BudgetExhausted:
      case Machine::Event::WorkspaceOverflow:
        return;
      case Machine::Event::NeedBit:
        break;
    }
    if (path.size() >= max_bits || machine.spent()) return;
    if (!visitor.expand(machine, path)) return;
    if (frontier != nullptr && path.size() == split_at) {
      frontier->push_back({std::move(machine), path});
      return;
    }
    path.push_back(0);
    walk(machine, path, max_bits, visitor, split_at, frontier);
    path.back() = 1;
    walk(std::move(machine), path, max_bits, visitor, split_at, frontier);
    path.pop_back();
    return;
  }
}

template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  std::size_t workers = threads < 1 ? 1 : static_cast<std::size_t>(threads);
  if (workers > n) workers = n;
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  }
}

}  // namespace detail

template <class Visitor>
void walk_tree(const Machine& root, std::size_t max_bits, Visitor& visitor) {
  std::vector<std::uint8_t> path;
  path.reserve(max_bits + 1);
  detail::walk(root, path, max_bits, visitor);
}

// Walks the tree as one shallow pass plus independent subtrees rooted at
// depth kPartitionBits.  `make()` builds an empty visitor for each piece and
// `merge(into, from)` folds a finished piece into the result.  With
// reproducible_reduction the fold runs in subtree order, so the result is
// identical for any thread count.
template <class Visitor, class Make, class Merge>
Visitor walk_partitioned(const Machine& root, std::size_t max_bits, const ExecPolicy& policy,
                         Make&& make, Merge&& merge) {
  Visitor result = make();
  std::vector<detail::Subtree> frontier;
  {
    std::vector<std::uint8_t> path;
    path.reserve(max_bits + 1);
    detail::walk(root, path, max_bits, result, kPartitionBits, &frontier);
  }
  if (frontier.empty()) return result;

  if (policy.reproducible_reduction) {
    std::vector<Visitor> parts;
    parts.reserve(frontier.size());
    for (std::size_t i = 0; i < frontier.size(); ++i) parts.push_back(make());
    detail::parallel_for(frontier.size(), policy.threads, [&](std::size_t i) {
      auto& sub = frontier[i];
      sub.path.reserve(max_bits + 1);
      detail::walk(std::move(sub.machine), sub.path, max_bits, parts[i]);
    });
    for (auto& part : parts) merge(result, std::move(part));
  } else {
    std::mutex lock;
    detail::parallel_for(frontier.size(), policy.threads, [&](std::size_t i) {
      Visitor part = make();
      auto& sub = frontier[i];
      sub.path.reserve(max_bits + 1);
      detail::walk(std::move(sub.machine), sub.path, max_bits, part);
      std::scoped_lock guard(lock);
      merge(result, std::move(part));
    });
  }
  return result;
}

}  // namespace uind
