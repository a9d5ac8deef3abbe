// Copyright 2026 The pathforest Authors
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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "opf/errors.hpp"

namespace opf {

inline constexpr int kNil = -1;

enum class HeapPolicy { min, max };

/// White: never inserted. Gray: currently in the heap. Black: extracted.
enum class HeapColor : std::uint8_t { white, gray, black };

/// Indexed binary heap over node ids 0..n-1 keyed by cost, with the tri-state
/// coloring the conquest loops rely on. Equal costs always extract the lower
/// node id first, which pins the training order on every platform.
class CostHeap {
public:
    CostHeap(int n_nodes, HeapPolicy policy)
        : policy_(policy),
          costs_(static_cast<std::size_t>(n_nodes), 0.0),
          colors_(static_cast<std::size_t>(n_nodes), HeapColor::white),
          pos_(static_cast<std::size_t>(n_nodes), kNil) {
        slots_.reserve(static_cast<std::size_t>(n_nodes));
    }

    int size() const { return static_cast<int>(slots_.size()); }
    bool empty() const { return slots_.empty(); }
    int capacity() const { return static_cast<int>(costs_.size()); }

    HeapColor color(int node) const { return colors_[static_cast<std::size_t>(node)]; }
    double cost(int node) const { return costs_[static_cast<std::size_t>(node)]; }

    /// Node at the top of the heap. Requires a non-empty heap.
    int peek() const {
        if (slots_.empty()) throw EmptyHeapError("peek on empty heap");
        return slots_.front();
    }

    void insert(int node, double cost) {
        check_node(node);
        if (colors_[node] == HeapColor::gray)
            throw InvalidStateError("insert of node " + std::to_string(node) +
                                    " already in the heap; use update");
        costs_[node] = cost;
        colors_[node] = HeapColor::gray;
        pos_[node] = static_cast<int>(slots_.size());
        slots_.push_back(node);
        sift_up(pos_[node]);
    }

    void update(int node, double cost) {
        check_node(node);
        if (colors_[node] != HeapColor::gray)
            throw InvalidStateError("update of node " + std::to_string(node) +
                                    " not in the heap");
        costs_[node] = cost;
        const int slot = pos_[node];
        sift_up(slot);
        sift_down(pos_[node]);
    }

    /// Removes and returns the extreme-cost node under the policy.
    int extract() {
        if (slots_.empty()) throw EmptyHeapError("extract from empty heap");
        const int top = slots_.front();
        swap_slots(0, static_cast<int>(slots_.size()) - 1);
        slots_.pop_back();
        pos_[top] = kNil;
        colors_[top] = HeapColor::black;
        if (!slots_.empty()) sift_down(0);
        return top;
    }

private:
    void check_node(int node) const {
        if (node < 0 || node >= capacity())
            throw ValueError("heap node index " + std::to_string(node) + " out of range");
    }

    // Strict ordering: policy on cost first, then lower node id.
    bool precedes(int a, int b) const {
        if (costs_[a] != costs_[b])
            return policy_ == HeapPolicy::min ? costs_[a] < costs_[b] : costs_[a] > costs_[b];
        return a < b;
    }

    void swap_slots(int i, int j) {
        std::swap(slots_[i], slots_[j]);
        pos_[slots_[i]] = i;
        pos_[slots_[j]] = j;
    }

    void sift_up(int slot) {
        while (slot > 0) {
            const int parent = (slot - 1) / 2;
            if (!precedes(slots_[slot], slots_[parent])) break;
            swap_slots(slot, parent);
            slot = parent;
        }
    }

    void sift_down(int slot) {
        const int n = static_cast<int>(slots_.size());
        while (true) {
            int best = slot;
            const int left = 2 * slot + 1;
            const int right = left + 1;
            if (left < n && precedes(slots_[left], slots_[best])) best = left;
            if (right < n && precedes(slots_[right], slots_[best])) best = right;
            if (best == slot) break;
            swap_slots(slot, best);
            slot = best;
        }
    }

    HeapPolicy policy_;
    std::vector<double> costs_;
    std::vector<HeapColor> colors_;
    std::vector<int> pos_;   // node -> heap slot, kNil when not gray
    std::vector<int> slots_; // heap slot -> node
};

} // namespace opf
