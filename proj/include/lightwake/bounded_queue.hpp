#pragma once

#include <condition_variable>
#include <cstddef>
#include <deque>
#include <exception>
#include <mutex>
#include <optional>

namespace lightwake {

// Ordered single-producer/single-consumer hand-off. push() blocks while the
// queue is full; close() wakes both sides. A close carrying an exception makes
// the consumer rethrow it once the remaining items are drained.
template <typename T>
class BoundedQueue {
 public:
  explicit BoundedQueue(std::size_t capacity) : capacity_(capacity == 0 ? 1 : capacity) {}

  // Returns false if the queue was closed before the item could be queued.
  bool push(T item) {
    std::unique_lock lock(mu_);
    not_full_.wait(lock, [&] { return closed_ || items_.size() < capacity_; });
    if (closed_) return false;
    items_.push_back(std::move(item));
    not_empty_.notify_one();
    return true;
  }

  // Blocks until an item is available or the queue is closed and drained.
  std::optional<T> pop() {
    std::unique_lock lock(mu_);
    not_empty_.wait(lock, [&] { return closed_ || !items_.empty(); });
    if (!items_.empty()) {
      T item = std::move(items_.front());
      items_.pop_front();
      not_full_.notify_one();
      return item;
    }
    if (error_) std::rethrow_exception(std::exchange(error_, nullptr));
    return std::nullopt;
  }

  void close(std::exception_ptr error = nullptr) {
    std::lock_guard lock(mu_);
    if (closed_) return;
    closed_ = true;
    error_ = std::move(error);
    not_empty_.notify_all();
    not_full_.notify_all();
  }

  // Drops queued items; used when the consumer stops early.
  void close_and_clear() {
    std::lock_guard lock(mu_);
    closed_ = true;
    items_.clear();
    error_ = nullptr;
    not_empty_.notify_all();
    not_full_.notify_all();
  }

 private:
  std::mutex mu_;
  std::condition_variable not_full_;
  std::condition_variable not_empty_;
  std::deque<T> items_;
  std::size_t capacity_;
  bool closed_ = false;
  std::exception_ptr error_;
};

}  // namespace lightwake
