#include "twfock/partitions.hpp"

#include <stdexcept>

namespace twfock {

std::string_view to_string(PartitionKind kind) {
  return kind == PartitionKind::Strict ? "strict" : "odd-strict";
}

PartitionKind parse_partition_kind(std::string_view name) {
  if (name == "strict" || name == "sp") return PartitionKind::Strict;
  if (name == "odd-strict" || name == "osp" || name == "odd_strict") return PartitionKind::OddStrict;
  throw std::invalid_argument("unknown partition kind '" + std::string(name) + "'");
}

bool part_allowed(PartitionKind kind, int part) {
  return part > 0 && (kind == PartitionKind::Strict || part % 2 == 1);
}

bool is_valid_partition(std::span<const int> parts, PartitionKind kind) {
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!part_allowed(kind, parts[i])) return false;
    if (i + 1 < parts.size() && parts[i] <= parts[i + 1]) return false;
  }
  return true;
}

Partition::Partition(std::vector<int> parts, PartitionKind kind) : parts_(std::move(parts)) {
  if (!is_valid_partition(parts_, kind)) {
    throw std::invalid_argument("not a " + std::string(twfock::to_string(kind)) +
                                " partition: (" + to_string() + ")");
  }
  for (int p : parts_) weight_ += p;
}

std::string Partition::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(parts_[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------

PartitionStream::PartitionStream(PartitionKind kind, int max_weight)
    : kind_(kind), max_weight_(max_weight) {
  if (max_weight < 0) throw std::invalid_argument("max_weight must be >= 0");
  const auto n = static_cast<std::size_t>(max_weight + 1);
  feasible_.assign(n * n, 0);
  feasible_[0] = 1;
  for (int m = 1; m <= max_weight; ++m) {
    for (int r = 0; r <= max_weight; ++r) {
      bool ok = feasible(m - 1, r);
      if (!ok && part_allowed(kind, m) && r >= m) ok = feasible(m - 1, r - m);
      feasible_[static_cast<std::size_t>(m) * n + static_cast<std::size_t>(r)] = ok;
    }
  }
}

bool PartitionStream::feasible(int max_part, int remainder) const {
  if (remainder == 0) return true;
  if (max_part <= 0 || remainder < 0) return false;
  const auto n = static_cast<std::size_t>(max_weight_ + 1);
  return feasible_[static_cast<std::size_t>(max_part) * n + static_cast<std::size_t>(remainder)];
}

void PartitionStream::fill_greedy(int remainder, int max_part) {
  while (remainder > 0) {
    int v = std::min(max_part, remainder);
    while (!(part_allowed(kind_, v) && feasible(v - 1, remainder - v))) --v;
    current_.parts_.push_back(v);
    remainder -= v;
    max_part = v - 1;
  }
}

bool PartitionStream::next() {
  if (weight_ < 0) {
    weight_ = 0;
    current_ = Partition();
    return true;
  }
  auto& p = current_.parts_;
  int suffix = 0;
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    const auto ui = static_cast<std::size_t>(i);
    suffix += p[ui];
    for (int v = p[ui] - 1; v >= 1; --v) {
      if (part_allowed(kind_, v) && feasible(v - 1, suffix - v)) {
        p.resize(ui);
        p.push_back(v);
        fill_greedy(suffix - v, v - 1);
        return true;
      }
    }
  }
  for (int w = weight_ + 1; w <= max_weight_; ++w) {
    if (feasible(w, w)) {
      weight_ = w;
      p.clear();
      current_.weight_ = w;
      fill_greedy(w, w);
      return true;
    }
  }
  weight_ = max_weight_ + 1;
  return false;
}

PartitionStream::iterator PartitionStream::begin() {
  return next() ? iterator(this) : iterator();
}

// ---------------------------------------------------------------------------

std::vector<std::uint64_t> count_table(PartitionKind kind, int max_weight) {
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(max_weight + 1), 0);
  for (const Partition& p : PartitionStream(kind, max_weight)) {
    ++counts[static_cast<std::size_t>(p.weight())];
  }
  return counts;
}

int max_length(PartitionKind kind, int max_weight) {
  int len = 0;
  // Minimal weights: 1+2+...+l or 1+3+...+(2l-1).
  while (true) {
    const int next = len + 1;
    const int min_weight = kind == PartitionKind::Strict ? next * (next + 1) / 2 : next * next;
    if (min_weight > max_weight) return len;
    len = next;
  }
}

Series eigen_poly(const Partition& lambda, std::string_view var, const TruncationProfile& profile) {
  const std::size_t idx = profile.index_of(var);
  Series out(profile);
  ExponentKey k{};
  for (int p : lambda.parts()) {
    k.t[idx] = p;
    out.add_term(k, 1);
    k.t[idx] = -p;
    out.add_term(k, -1);
  }
  return out;
}

}  // namespace twfock
