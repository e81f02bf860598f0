#ifndef TWFOCK_PARTITIONS_HPP
#define TWFOCK_PARTITIONS_HPP

#include <cstdint>
#include <iterator>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "twfock/series.hpp"

namespace twfock {

// Strict: distinct positive parts.  OddStrict: distinct odd positive parts.
enum class PartitionKind { Strict, OddStrict };

std::string_view to_string(PartitionKind kind);
// Accepts "strict", "odd-strict" (also "sp", "osp").
PartitionKind parse_partition_kind(std::string_view name);

bool part_allowed(PartitionKind kind, int part);

// A strictly decreasing list of positive parts.
class Partition {
 public:
  Partition() = default;
  // Throws std::invalid_argument unless `parts` is valid for `kind`.
  Partition(std::vector<int> parts, PartitionKind kind);

  std::span<const int> parts() const { return parts_; }
  int weight() const { return weight_; }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  // lambda_k for k >= 1, zero past the last part.
  int part(int k) const {
    return k >= 1 && k <= length() ? parts_[static_cast<std::size_t>(k - 1)] : 0;
  }

  // Comma-separated parts; the empty partition prints as "".
  std::string to_string() const;

  bool operator==(const Partition&) const = default;

 private:
  friend class PartitionStream;
  std::vector<int> parts_;
  int weight_ = 0;
};

bool is_valid_partition(std::span<const int> parts, PartitionKind kind);

// Every partition of `kind` with weight <= max_weight, exactly once: by
// increasing weight, lexicographically descending within a weight, starting
// with the empty partition.  Holds one partition at a time.
class PartitionStream {
 public:
  PartitionStream(PartitionKind kind, int max_weight);

  // Advance to the next partition; false once the stream is exhausted.
  // The first call yields the empty partition.
  bool next();
  const Partition& current() const { return current_; }
  PartitionKind kind() const { return kind_; }
  int max_weight() const { return max_weight_; }

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Partition;
    using difference_type = std::ptrdiff_t;
    using pointer = const Partition*;
    using reference = const Partition&;

    iterator() = default;
    explicit iterator(PartitionStream* s) : stream_(s) {}
    reference operator*() const { return stream_->current(); }
    pointer operator->() const { return &stream_->current(); }
    iterator& operator++() {
      if (!stream_->next()) stream_ = nullptr;
      return *this;
    }
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& a, const iterator& b) { return a.stream_ == b.stream_; }

   private:
    PartitionStream* stream_ = nullptr;
  };

  // Single pass: begin() restarts nothing and consumes the first element.
  iterator begin();
  iterator end() { return iterator(); }

 private:
  bool feasible(int max_part, int remainder) const;
  void fill_greedy(int remainder, int max_part);

  PartitionKind kind_;
  int max_weight_;
  int weight_ = -1;
  Partition current_;
  // feasible_[m * (W + 1) + r]: r is a sum of distinct allowed parts <= m.
  std::vector<char> feasible_;
};

// counts[n] = number of partitions of `kind` with weight n, 0 <= n <= W.
std::vector<std::uint64_t> count_table(PartitionKind kind, int max_weight);

// Largest possible length of a partition of `kind` with weight <= W.
int max_length(PartitionKind kind, int max_weight);

// sum_k (t^{lambda_k} - t^{-lambda_k}) in `var`.  For odd strict partitions
// `var` is the hat variable t^(1/2).  Out-of-band monomials are dropped.
Series eigen_poly(const Partition& lambda, std::string_view var, const TruncationProfile& profile);

}  // namespace twfock

#endif  // TWFOCK_PARTITIONS_HPP
