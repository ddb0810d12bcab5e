#pragma once

// Partition-indexed subspaces of A_m and the lambda-substitution that
// restricts a polynomial to one of them.

#include "msym/bounds.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace msym {

class Partition {
 public:
  explicit Partition(std::vector<std::size_t> parts);

  const std::vector<std::size_t>& parts() const { return parts_; }
  std::size_t length() const { return parts_.size(); }
  std::size_t total() const;

  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<std::size_t> parts_;
};

std::string to_string(const Partition& p);

// Partitions of n into exactly ell parts, decreasing lexicographic order.
class PartitionStream {
 public:
  PartitionStream(std::size_t n, std::size_t ell);
  std::optional<Partition> next();

 private:
  std::size_t n_;
  std::size_t ell_;
  std::vector<std::size_t> current_;
  bool started_ = false;
  bool done_ = false;
};

// All partitions of n with 1..m parts, by length, each length in stream order.
class SubspaceStream {
 public:
  SubspaceStream(std::size_t n, std::size_t m);
  std::optional<Partition> next();

 private:
  std::size_t n_;
  std::size_t m_;
  std::size_t ell_ = 1;
  PartitionStream inner_;
};

std::vector<Partition> enumerate_partitions(std::size_t n, std::size_t ell);
std::vector<Partition> enumerate_subspaces_up_to(std::size_t n, std::size_t m);

struct ReducedInstance {
  Partition lam{std::vector<std::size_t>{1}};
  Polynomial q{Shape{}};
  std::string provenance;
};

// Row i of f goes to the block holding it (first lam_1 rows to block 1, ...).
std::vector<std::size_t> block_assignment(const Partition& lam);

ReducedInstance restrict(const Polynomial& f, const Partition& lam, std::string provenance = {});

// Restriction under an arbitrary assignment of rows to blocks.
Polynomial restrict_with_assignment(const Polynomial& f, std::span<const std::size_t> row_to_block,
                                    std::size_t blocks);

// Restricts one polynomial repeatedly. For k-symmetric inputs the power-sum
// form is computed once and each restriction substitutes weighted power sums.
class Reducer {
 public:
  explicit Reducer(Polynomial f, std::string provenance = {});

  const Polynomial& source() const { return f_; }
  bool symmetric() const { return form_.has_value(); }
  const std::optional<PowerSumExpr>& power_sum_form() const { return form_; }

  ReducedInstance operator()(const Partition& lam) const;

 private:
  Polynomial f_;
  std::string provenance_;
  std::optional<PowerSumExpr> form_;
};

// Lazily yields restrict(f, lam) for every lam with at most m parts.
class ReductionPlan {
 public:
  ReductionPlan(const Reducer& reducer, std::size_t m);
  ReductionPlan(const Reducer& reducer, const KappaBound& bound) : ReductionPlan(reducer, bound.value) {}

  std::optional<ReducedInstance> next();
  Integer total() const;

 private:
  const Reducer* reducer_;
  std::size_t m_;
  SubspaceStream stream_;
};

// Repeats row c of y (shape ell x cols) lam_c times.
template <typename T>
std::vector<T> expand_point(std::span<const T> y, const Partition& lam, std::size_t cols) {
  if (y.size() != lam.length() * cols) throw ShapeError("point does not match partition");
  std::vector<T> x;
  x.reserve(lam.total() * cols);
  for (std::size_t c = 0; c < lam.length(); ++c) {
    for (std::size_t rep = 0; rep < lam.parts()[c]; ++rep) {
      x.insert(x.end(), y.begin() + c * cols, y.begin() + (c + 1) * cols);
    }
  }
  return x;
}

std::string serialize(const ReducedInstance& r);
ReducedInstance parse_reduced_instance(std::string_view text);

}  // namespace msym
