#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "limitid/errors.hpp"
#include "limitid/lazy_sequence.hpp"

namespace limitid {

enum class ListKind { ce, co_ce };

// Base index `base_index` (1-based) is a bad object from stage `stage` on.
struct Elimination {
  std::size_t base_index = 0;
  std::size_t stage = 0;

  friend bool operator==(const Elimination&, const Elimination&) = default;
};

// Computable enumeration of bad objects, consumed lazily in stage order.
class EliminationStream {
 public:
  using Producer = std::function<std::optional<Elimination>()>;

  EliminationStream() : items_(std::vector<Elimination>{}) {}
  explicit EliminationStream(std::vector<Elimination> items) : items_(sorted(std::move(items))) {}
  explicit EliminationStream(Producer producer) : items_(std::move(producer)) {}

  bool empty_stream() const { return items_.get(0) == nullptr; }

  // True iff `base_index` was enumerated at some stage <= `stage`.
  bool eliminated(std::size_t base_index, std::size_t stage) const {
    std::lock_guard lock(mutex_);
    while (const Elimination* e = items_.get(cursor_)) {
      if (e->stage > stage) break;
      if (e->stage < last_stage_) fail(Errc::InvalidArgument, "elimination stream must be stage-ordered");
      last_stage_ = e->stage;
      first_stage_.try_emplace(e->base_index, e->stage);
      ++cursor_;
    }
    auto it = first_stage_.find(base_index);
    return it != first_stage_.end() && it->second <= stage;
  }

 private:
  static std::vector<Elimination> sorted(std::vector<Elimination> items) {
    std::stable_sort(items.begin(), items.end(),
                     [](const Elimination& a, const Elimination& b) { return a.stage < b.stage; });
    return items;
  }

  LazySequence<Elimination> items_;
  mutable std::mutex mutex_;
  mutable std::size_t cursor_ = 0;
  mutable std::size_t last_stage_ = 0;
  mutable std::map<std::size_t, std::size_t> first_stage_;
};

template <class P>
struct ListEntry {
  P program;
  std::size_t origin = 0;    // 1-based index in the underlying (non-repeated) base list
  std::size_t position = 0;  // 1-based position in this list's base
};

// A lazy, possibly infinite, stage-dependent list of hypothesis programs.
// view(t, k) is the first k base items not eliminated by stage t. Immutable
// and cheap to copy; the base and the elimination stream are shared.
template <class P>
class HypothesisList {
 public:
  using Entry = ListEntry<P>;
  using Producer = std::function<std::optional<P>()>;

  static HypothesisList finite(std::vector<P> items, ListKind kind = ListKind::ce,
                               std::vector<Elimination> eliminations = {}) {
    check_kind(kind, eliminations.empty());
    std::vector<Entry> entries;
    entries.reserve(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) entries.push_back(Entry{std::move(items[i]), i + 1, i + 1});
    auto state = std::make_shared<State>(std::move(entries),
                                         std::make_shared<EliminationStream>(std::move(eliminations)), kind);
    return HypothesisList(std::move(state));
  }

  static HypothesisList lazy(Producer producer, ListKind kind = ListKind::ce,
                             EliminationStream::Producer eliminations = {}) {
    auto stream = eliminations ? std::make_shared<EliminationStream>(std::move(eliminations))
                               : std::make_shared<EliminationStream>();
    check_kind(kind, stream->empty_stream());
    auto counter = std::make_shared<std::size_t>(0);
    typename LazySequence<Entry>::Producer wrap = [producer = std::move(producer), counter]() -> std::optional<Entry> {
      auto p = producer();
      if (!p) return std::nullopt;
      ++*counter;
      return Entry{std::move(*p), *counter, *counter};
    };
    return HypothesisList(std::make_shared<State>(std::move(wrap), std::move(stream), kind));
  }

  ListKind kind() const noexcept { return state_->kind; }

  // 1-based position in the base; nullopt past the end of a finite base.
  const Entry* base_entry(std::size_t position) const {
    if (position == 0) return nullptr;
    return state_->base.get(position - 1);
  }

  bool eliminated(std::size_t origin, std::size_t stage) const {
    return state_->eliminations->eliminated(origin, stage);
  }

  // Visits survivors at `stage` in base order until `visit` returns false or
  // `k` items were visited. Returns the number visited.
  template <class Visit>
  std::size_t for_each_survivor(std::size_t stage, std::size_t k, Visit&& visit) const {
    if (k == 0) return 0;
    if (state_->precheck) state_->precheck(stage);
    std::size_t seen = 0;
    for (std::size_t pos = 0;; ++pos) {
      const Entry* e = state_->base.get(pos);
      if (e == nullptr) break;
      if (eliminated(e->origin, stage)) continue;
      ++seen;
      if (!visit(*e, seen) || seen == k) break;
    }
    return seen;
  }

  // Up to k survivors; shorter only when a finite base runs out.
  std::vector<Entry> view_upto(std::size_t stage, std::size_t k) const {
    std::vector<Entry> out;
    for_each_survivor(stage, k, [&](const Entry& e, std::size_t) {
      out.push_back(e);
      return true;
    });
    return out;
  }

  // Exactly k survivors; throws BaseExhausted when a finite base has fewer.
  std::vector<Entry> view(std::size_t stage, std::size_t k) const {
    auto out = view_upto(stage, k);
    if (out.size() < k)
      fail(Errc::BaseExhausted, "only " + std::to_string(out.size()) + " survivors at stage " +
                                    std::to_string(stage) + ", wanted " + std::to_string(k));
    return out;
  }

  template <class Q>
  friend HypothesisList<Q> repeat_infinitely(const HypothesisList<Q>& list);

 private:
  struct State {
    template <class Base>
    State(Base&& b, std::shared_ptr<EliminationStream> e, ListKind k)
        : base(std::forward<Base>(b)), eliminations(std::move(e)), kind(k) {}

    LazySequence<Entry> base;
    std::shared_ptr<EliminationStream> eliminations;
    ListKind kind;
    std::function<void(std::size_t)> precheck;
  };

  explicit HypothesisList(std::shared_ptr<State> state) : state_(std::move(state)) {}

  static void check_kind(ListKind kind, bool no_eliminations) {
    if (kind == ListKind::ce && !no_eliminations)
      fail(Errc::InvalidArgument, "a c.e. list has an empty elimination stream");
  }

  std::shared_ptr<State> state_;
};

// Output position p carries base item i for the p-th pair (i, r) in the
// diagonal order (1,1), (1,2), (2,1), (1,3), (2,2), (3,1), ...; pairs whose i
// lies past the end of a finite base are skipped. Every base item therefore
// occurs at infinitely many positions, and eliminating it removes all copies.
template <class P>
HypothesisList<P> repeat_infinitely(const HypothesisList<P>& list) {
  using Entry = ListEntry<P>;
  if (list.base_entry(1) == nullptr) fail(Errc::EmptyList, "cannot repeat an empty list");
  struct Cursor {
    std::size_t block = 1;  // i + r = block + 1
    std::size_t i = 0;
    std::size_t position = 0;
  };
  auto cursor = std::make_shared<Cursor>();
  typename LazySequence<Entry>::Producer producer = [list, cursor]() -> std::optional<Entry> {
    while (true) {
      ++cursor->i;
      if (cursor->i > cursor->block) {
        ++cursor->block;
        cursor->i = 1;
      }
      const Entry* src = list.base_entry(cursor->i);
      if (src == nullptr) {
        // Finite base exhausted for this block; jump to the next one.
        cursor->i = cursor->block;
        continue;
      }
      ++cursor->position;
      return Entry{src->program, src->origin, cursor->position};
    }
  };
  auto state = std::make_shared<typename HypothesisList<P>::State>(std::move(producer),
                                                                   list.state_->eliminations, list.kind());
  state->precheck = [list](std::size_t stage) {
    if (list.view_upto(stage, 1).empty()) fail(Errc::BaseExhausted, "every base item is eliminated");
  };
  return HypothesisList<P>(std::move(state));
}

}  // namespace limitid
