#include "sgforest/explore.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <exception>
#include <mutex>
#include <thread>

#include "sgforest/errors.hpp"

namespace sgforest {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("64-bit counter overflow");
  return out;
}

void check_depth(const TrimPolicy& policy, int depth) {
  policy.check();
  if (depth < 0 || depth > kMaxGenusBound) {
    throw ConfigError("exploration depth must be in [0, " + std::to_string(kMaxGenusBound) + "], got " +
                      std::to_string(depth));
  }
  const bool trimming = policy.denominator || policy.left_size_rule || policy.special_rule;
  if (trimming && depth > policy.genus_bound) {
    throw ConfigError("exploration depth " + std::to_string(depth) + " exceeds the trim genus bound " +
                      std::to_string(policy.genus_bound));
  }
}

// Capacity of every state built for a run to `depth`.
int state_bound(int depth) { return std::max(depth, 1); }

class Walker {
 public:
  Walker(const TrimPolicy& policy, int depth)
      : policy_(policy), depth_(depth), counts_(static_cast<std::size_t>(depth) + 1, 0) {}

  void visit(const SemigroupState& s) {
    auto& slot = counts_[static_cast<std::size_t>(s.genus())];
    if (++slot == 0) throw OverflowError("64-bit counter overflow at genus " + std::to_string(s.genus()));
    if (s.wilf_number() < 0) violations_.push_back(s.gaps());
  }

  void check_cut(const SemigroupState& s) {
    if (trim::check_when_cut(s, policy_) && s.wilf_number() < 0) violations_.push_back(s.gaps());
  }

  void walk(const SemigroupState& start) {
    visit(start);
    if (start.genus() >= depth_) return;
    stack_.clear();
    stack_.push_back(start);
    while (!stack_.empty()) {
      const SemigroupState node = stack_.back();
      stack_.pop_back();
      const bool leaves = node.genus() + 1 == depth_;
      const int d = policy_.denominator.value_or(0);
      int rank = 0;
      node.for_each_right_primitive_until([&](int a) {
        if (d != 0 && trim::cut_left_primitive_of_child(node, a, rank, d)) return false;
        ++rank;
        if (leaves) {
          scratch_.assign_child_unchecked(node, a);
          if (trim::retain(scratch_, policy_)) {
            visit(scratch_);
          } else {
            check_cut(scratch_);
          }
          return true;
        }
        SemigroupState& slot = stack_.emplace_back();
        slot.assign_child_unchecked(node, a);
        if (trim::retain(slot, policy_)) {
          visit(slot);
        } else {
          check_cut(slot);
          stack_.pop_back();
        }
        return true;
      });
    }
  }

  ExplorationReport take_report() {
    ExplorationReport r = ExplorationReport::empty(depth_, policy_.descriptor());
    r.counts = counts_;
    for (auto c : counts_) r.nodes_visited = checked_add(r.nodes_visited, c);
    r.violations = std::move(violations_);
    std::sort(r.violations.begin(), r.violations.end());
    return r;
  }

 private:
  const TrimPolicy& policy_;
  int depth_;
  std::vector<std::uint64_t> counts_;
  std::vector<GapSet> violations_;
  std::vector<SemigroupState> stack_;
  SemigroupState scratch_;
};

// Shared state of one multi-worker run. Completed task reports are merged
// under `mutex_`, so a checkpoint snapshot always reflects whole tasks.
class TaskQueue {
 public:
  TaskQueue(const TrimPolicy& policy, int depth, std::vector<SemigroupState> tasks, ExplorationReport initial,
            const ExploreOptions& options)
      : policy_(policy),
        depth_(depth),
        tasks_(std::move(tasks)),
        options_(options),
        accumulated_(std::move(initial)),
        done_(tasks_.size(), false) {
    limit_ = std::min(tasks_.size(), options.stop_after_tasks.value_or(tasks_.size()));
  }

  ExploreOutcome run() {
    const int workers = std::max(1, options_.workers);
    if (workers == 1 && !options_.checkpoint_path) {
      work();
    } else {
      std::vector<std::jthread> threads;
      threads.reserve(static_cast<std::size_t>(workers));
      for (int i = 0; i < workers; ++i) threads.emplace_back([this] { work(); });
      if (options_.checkpoint_path) {
        std::unique_lock lock(mutex_);
        while (finished_ < workers) {
          if (!all_done_.wait_for(lock, options_.checkpoint_interval, [&] { return finished_ == workers; })) {
            save_checkpoint(*options_.checkpoint_path, pending_locked(), accumulated_);
          }
        }
      }
      threads.clear();
    }
    if (error_) std::rethrow_exception(error_);
    ExploreOutcome out{std::move(accumulated_), pending_locked()};
    if (options_.checkpoint_path) save_checkpoint(*options_.checkpoint_path, out.pending, out.report);
    return out;
  }

 private:
  void work() {
    while (!failed_.load(std::memory_order_relaxed)) {
      const std::size_t i = next_.fetch_add(1, std::memory_order_relaxed);
      if (i >= limit_) break;
      try {
        Walker task_walker(policy_, depth_);
        task_walker.walk(tasks_[i]);
        const ExplorationReport r = task_walker.take_report();
        std::lock_guard lock(mutex_);
        merge_into(accumulated_, r);
        done_[i] = true;
      } catch (const std::exception& e) {
        std::lock_guard lock(mutex_);
        if (!error_) {
          error_ = std::make_exception_ptr(
              Error("task " + tasks_[i].gaps().to_string() + " failed: " + e.what()));
        }
        failed_ = true;
      }
    }
    std::lock_guard lock(mutex_);
    ++finished_;
    all_done_.notify_all();
  }

  std::vector<GapSet> pending_locked() const {
    std::vector<GapSet> pending;
    for (std::size_t i = 0; i < tasks_.size(); ++i) {
      if (!done_[i]) pending.push_back(tasks_[i].gaps());
    }
    return pending;
  }

  const TrimPolicy& policy_;
  int depth_;
  std::vector<SemigroupState> tasks_;
  const ExploreOptions& options_;
  std::size_t limit_ = 0;

  std::atomic<std::size_t> next_{0};
  std::atomic<bool> failed_{false};
  std::mutex mutex_;
  std::condition_variable all_done_;
  int finished_ = 0;
  ExplorationReport accumulated_;
  std::vector<bool> done_;
  std::exception_ptr error_;
};

}  // namespace

ExplorationReport ExplorationReport::empty(int depth, std::string policy_descriptor) {
  ExplorationReport r;
  r.genus_bound = depth;
  r.policy_descriptor = std::move(policy_descriptor);
  r.counts.assign(static_cast<std::size_t>(depth) + 1, 0);
  return r;
}

void merge_into(ExplorationReport& into, const ExplorationReport& from) {
  if (into.genus_bound != from.genus_bound || into.policy_descriptor != from.policy_descriptor ||
      into.counts.size() != from.counts.size()) {
    throw ContractViolation("cannot merge reports of different runs: '" + into.policy_descriptor + "' depth " +
                            std::to_string(into.genus_bound) + " vs '" + from.policy_descriptor + "' depth " +
                            std::to_string(from.genus_bound));
  }
  for (std::size_t g = 0; g < into.counts.size(); ++g) into.counts[g] = checked_add(into.counts[g], from.counts[g]);
  into.nodes_visited = checked_add(into.nodes_visited, from.nodes_visited);
  if (!from.violations.empty()) {
    into.violations.insert(into.violations.end(), from.violations.begin(), from.violations.end());
    std::sort(into.violations.begin(), into.violations.end());
  }
}

ExplorationReport merge(const ExplorationReport& a, const ExplorationReport& b) {
  ExplorationReport out = a;
  merge_into(out, b);
  return out;
}

ExplorationReport explore_seq(const SemigroupState& start, const TrimPolicy& policy, int depth) {
  check_depth(policy, depth);
  if (start.genus() > depth) throw ContractViolation("start genus exceeds exploration depth");
  if (start.genus_bound() < depth) throw ContractViolation("start state's genus bound is below the exploration depth");
  if (!trim::retain(start, policy)) throw ContractViolation("start state " + start.gaps().to_string() + " is cut by the policy");
  Walker walker(policy, depth);
  walker.walk(start);
  return walker.take_report();
}

Frontier split_frontier(const TrimPolicy& policy, int depth, int frontier_genus) {
  check_depth(policy, depth);
  if (frontier_genus < 0 || frontier_genus > depth) {
    throw ConfigError("frontier genus must be in [0, " + std::to_string(depth) + "], got " +
                      std::to_string(frontier_genus));
  }
  Frontier f{{root(state_bound(depth))}, ExplorationReport::empty(depth, policy.descriptor())};
  for (int g = 0; g < frontier_genus; ++g) {
    std::vector<SemigroupState> next;
    for (const auto& s : f.nodes) {
      f.prefix.counts[static_cast<std::size_t>(g)] = checked_add(f.prefix.counts[static_cast<std::size_t>(g)], 1);
      if (s.wilf_number() < 0) f.prefix.violations.push_back(s.gaps());
      s.for_each_right_primitive([&](int a) {
        SemigroupState c;
        c.assign_child_unchecked(s, a);
        if (trim::retain(c, policy)) {
          next.push_back(c);
        } else if (trim::check_when_cut(c, policy) && c.wilf_number() < 0) {
          f.prefix.violations.push_back(c.gaps());
        }
      });
    }
    f.nodes = std::move(next);
  }
  for (auto c : f.prefix.counts) f.prefix.nodes_visited = checked_add(f.prefix.nodes_visited, c);
  std::sort(f.prefix.violations.begin(), f.prefix.violations.end());
  return f;
}

ExploreOutcome run_exploration(const TrimPolicy& policy, int depth, const ExploreOptions& options) {
  check_depth(policy, depth);
  if (options.workers < 1) throw ConfigError("workers must be >= 1");
  const int g0 = options.frontier_genus.value_or(std::min(depth, kDefaultFrontierGenus));
  Frontier frontier = split_frontier(policy, depth, g0);
  TaskQueue queue(policy, depth, std::move(frontier.nodes), std::move(frontier.prefix), options);
  return queue.run();
}

ExploreOutcome resume_exploration(const Checkpoint& checkpoint, const TrimPolicy& policy, int depth,
                                  const ExploreOptions& options) {
  check_depth(policy, depth);
  if (options.workers < 1) throw ConfigError("workers must be >= 1");
  if (checkpoint.policy_descriptor != policy.descriptor()) {
    throw LoadError(2, "checkpoint policy '" + checkpoint.policy_descriptor + "' does not match '" +
                           policy.descriptor() + "'");
  }
  if (checkpoint.partial.genus_bound != depth) {
    throw LoadError(3, "checkpoint depth " + std::to_string(checkpoint.partial.genus_bound) +
                           " does not match requested depth " + std::to_string(depth));
  }
  std::vector<SemigroupState> tasks;
  tasks.reserve(checkpoint.pending.size());
  for (const auto& gaps : checkpoint.pending) {
    SemigroupState s = from_gaps(gaps, state_bound(depth));
    if (!trim::retain(s, policy)) throw LoadError(0, "pending root " + gaps.to_string() + " is cut by the policy");
    tasks.push_back(s);
  }
  TaskQueue queue(policy, depth, std::move(tasks), checkpoint.partial, options);
  return queue.run();
}

ExplorationReport explore_parallel(const TrimPolicy& policy, int depth, int workers, int frontier_genus) {
  ExploreOptions options;
  options.workers = workers;
  options.frontier_genus = frontier_genus;
  return run_exploration(policy, depth, options).report;
}

}  // namespace sgforest
