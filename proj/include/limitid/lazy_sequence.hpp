#pragma once

#include <deque>
#include <functional>
#include <mutex>
#include <optional>
#include <vector>

namespace limitid {

// Memoized, possibly infinite sequence fed by a sequential producer. Each
// element is produced exactly once, under a lock, so concurrent readers all
// observe the same values. Returned pointers stay valid for the life of the
// sequence (deque growth never relocates elements).
template <class T>
class LazySequence {
 public:
  using Producer = std::function<std::optional<T>()>;

  explicit LazySequence(Producer producer) : producer_(std::move(producer)) {}

  explicit LazySequence(std::vector<T> items) : items_(items.begin(), items.end()), done_(true) {}

  LazySequence(const LazySequence&) = delete;
  LazySequence& operator=(const LazySequence&) = delete;

  // 0-based; nullptr once the producer has ended before `index`.
  const T* get(std::size_t index) const {
    std::lock_guard lock(mutex_);
    while (items_.size() <= index) {
      if (done_) return nullptr;
      auto next = producer_();
      if (!next) {
        done_ = true;
        producer_ = {};
        return nullptr;
      }
      items_.push_back(std::move(*next));
    }
    return &items_[index];
  }

  // Number of elements produced so far.
  std::size_t materialized() const {
    std::lock_guard lock(mutex_);
    return items_.size();
  }

 private:
  mutable std::mutex mutex_;
  mutable std::deque<T> items_;
  mutable Producer producer_;
  mutable bool done_ = false;
};

}  // namespace limitid
