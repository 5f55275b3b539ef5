// gain_queue.hpp - addressable max-heap of vertices keyed by move gain
#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "dahp/types.hpp"

namespace dahp {

// Ordered by higher gain first, then by smaller vertex id.
class GainQueue {
 public:
  GainQueue() = default;
  explicit GainQueue(std::size_t numVertices) { resize(numVertices); }

  void resize(std::size_t numVertices) {
    clear();
    position_.assign(numVertices, kAbsent);
  }

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  bool contains(VertexId v) const { return v < position_.size() && position_[v] != kAbsent; }

  VertexId topVertex() const { return heap_.front().vertex; }
  Weight topGain() const { return heap_.front().gain; }
  Weight gain(VertexId v) const { return heap_[position_[v]].gain; }

  void insert(VertexId v, Weight gain) {
    position_[v] = heap_.size();
    heap_.push_back({gain, v});
    siftUp(heap_.size() - 1);
  }

  void update(VertexId v, Weight gain) {
    const std::size_t i = position_[v];
    const Weight old = heap_[i].gain;
    heap_[i].gain = gain;
    if (gain > old) {
      siftUp(i);
    } else {
      siftDown(i);
    }
  }

  void insertOrUpdate(VertexId v, Weight gain) {
    if (contains(v)) {
      update(v, gain);
    } else {
      insert(v, gain);
    }
  }

  void remove(VertexId v) {
    const std::size_t i = position_[v];
    position_[v] = kAbsent;
    if (i + 1 == heap_.size()) {
      heap_.pop_back();
      return;
    }
    const VertexId moved = heap_.back().vertex;
    place(i, heap_.back());
    heap_.pop_back();
    siftUp(i);
    siftDown(position_[moved]);
  }

  VertexId pop() {
    const VertexId v = heap_.front().vertex;
    remove(v);
    return v;
  }

  void clear() {
    for (const Entry& entry : heap_) position_[entry.vertex] = kAbsent;
    heap_.clear();
  }

 private:
  static constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);

  struct Entry {
    Weight gain;
    VertexId vertex;
  };

  static bool before(const Entry& a, const Entry& b) {
    return a.gain > b.gain || (a.gain == b.gain && a.vertex < b.vertex);
  }

  void place(std::size_t i, Entry entry) {
    heap_[i] = entry;
    position_[entry.vertex] = i;
  }

  void siftUp(std::size_t i) {
    Entry entry = heap_[i];
    while (i > 0) {
      const std::size_t parent = (i - 1) / 2;
      if (!before(entry, heap_[parent])) break;
      place(i, heap_[parent]);
      i = parent;
    }
    place(i, entry);
  }

  void siftDown(std::size_t i) {
    Entry entry = heap_[i];
    const std::size_t n = heap_.size();
    while (true) {
      std::size_t child = 2 * i + 1;
      if (child >= n) break;
      if (child + 1 < n && before(heap_[child + 1], heap_[child])) ++child;
      if (!before(heap_[child], entry)) break;
      place(i, heap_[child]);
      i = child;
    }
    place(i, entry);
  }

  std::vector<Entry> heap_;
  std::vector<std::size_t> position_;
};

}  // namespace dahp
