#include "msym/reduce.hpp"

#include <numeric>
#include <sstream>

namespace msym {

Partition::Partition(std::vector<std::size_t> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw PreconditionError("partition must have at least one part");
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] == 0) throw PreconditionError("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1]) throw PreconditionError("partition parts must be nonincreasing");
  }
}

std::size_t Partition::total() const { return std::accumulate(parts_.begin(), parts_.end(), std::size_t{0}); }

std::string to_string(const Partition& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.length(); ++i) {
    if (i) s += ",";
    s += std::to_string(p.parts()[i]);
  }
  return s + ")";
}

PartitionStream::PartitionStream(std::size_t n, std::size_t ell) : n_(n), ell_(ell) {
  if (ell < 1 || ell > n) throw PreconditionError("need 1 <= ell <= n");
}

std::optional<Partition> PartitionStream::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    current_.assign(ell_, 1);
    current_[0] = n_ - ell_ + 1;
    return Partition(current_);
  }
  // Rightmost part that can drop by one with the tail refilled greedily.
  std::size_t suffix = 0;
  for (std::size_t i = ell_; i-- > 0;) {
    suffix += current_[i];
    const std::size_t v = current_[i] - 1;
    const std::size_t slots = ell_ - 1 - i;
    if (v < 1 || slots == 0) continue;
    const std::size_t rest = suffix - v;
    if (rest < slots || rest > slots * v) continue;
    current_[i] = v;
    std::size_t remaining = rest;
    for (std::size_t j = i + 1; j < ell_; ++j) {
      std::size_t after = ell_ - 1 - j;
      current_[j] = std::min(v, remaining - after);
      remaining -= current_[j];
    }
    return Partition(current_);
  }
  done_ = true;
  return std::nullopt;
}

SubspaceStream::SubspaceStream(std::size_t n, std::size_t m) : n_(n), m_(m), inner_(n, 1) {
  if (m < 1 || m > n) throw PreconditionError("need 1 <= m <= n");
}

std::optional<Partition> SubspaceStream::next() {
  for (;;) {
    if (auto p = inner_.next()) return p;
    if (ell_ == m_) return std::nullopt;
    ++ell_;
    inner_ = PartitionStream(n_, ell_);
  }
}

std::vector<Partition> enumerate_partitions(std::size_t n, std::size_t ell) {
  std::vector<Partition> out;
  PartitionStream s(n, ell);
  while (auto p = s.next()) out.push_back(std::move(*p));
  return out;
}

std::vector<Partition> enumerate_subspaces_up_to(std::size_t n, std::size_t m) {
  std::vector<Partition> out;
  SubspaceStream s(n, m);
  while (auto p = s.next()) out.push_back(std::move(*p));
  return out;
}

std::vector<std::size_t> block_assignment(const Partition& lam) {
  std::vector<std::size_t> map;
  for (std::size_t c = 0; c < lam.length(); ++c) map.insert(map.end(), lam.parts()[c], c);
  return map;
}

Polynomial restrict_with_assignment(const Polynomial& f, std::span<const std::size_t> row_to_block,
                                    std::size_t blocks) {
  if (row_to_block.size() != f.shape().rows) throw ShapeError("assignment length differs from n");
  return relabel_rows(f, row_to_block, Shape{blocks, f.shape().cols});
}

ReducedInstance restrict(const Polynomial& f, const Partition& lam, std::string provenance) {
  if (lam.total() != f.shape().rows) {
    throw ShapeError("partition of " + std::to_string(lam.total()) + " does not match n=" +
                     std::to_string(f.shape().rows));
  }
  auto map = block_assignment(lam);
  return {lam, restrict_with_assignment(f, map, lam.length()), std::move(provenance)};
}

Reducer::Reducer(Polynomial f, std::string provenance) : f_(std::move(f)), provenance_(std::move(provenance)) {
  if (is_k_symmetric(f_)) form_ = rewrite_in_power_sums(f_, Weights::ones(f_.shape().cols));
}

ReducedInstance Reducer::operator()(const Partition& lam) const {
  if (!form_) return restrict(f_, lam, provenance_);
  if (lam.total() != f_.shape().rows) throw ShapeError("partition does not match n");
  Polynomial q = substitute_weighted(*form_, lam.parts());
  return {lam, std::move(q), provenance_};
}

ReductionPlan::ReductionPlan(const Reducer& reducer, std::size_t m)
    : reducer_(&reducer), m_(std::min(m, reducer.source().shape().rows)), stream_(reducer.source().shape().rows, m_) {}

std::optional<ReducedInstance> ReductionPlan::next() {
  auto lam = stream_.next();
  if (!lam) return std::nullopt;
  return (*reducer_)(*lam);
}

Integer ReductionPlan::total() const {
  Integer t = 0;
  for (std::size_t ell = 1; ell <= m_; ++ell) t += count_partitions(reducer_->source().shape().rows, ell);
  return t;
}

std::string serialize(const ReducedInstance& r) {
  std::string out = "lambda = " + to_string(r.lam) + "\n";
  if (!r.provenance.empty()) out += "# source: " + r.provenance + "\n";
  return out + serialize(r.q);
}

ReducedInstance parse_reduced_instance(std::string_view text) {
  auto eol = text.find('\n');
  std::string_view head = text.substr(0, eol);
  const std::string_view prefix = "lambda = (";
  if (head.substr(0, prefix.size()) != prefix || head.back() != ')') {
    throw std::invalid_argument("expected header 'lambda = (...)'");
  }
  std::vector<std::size_t> parts;
  std::istringstream in(std::string(head.substr(prefix.size(), head.size() - prefix.size() - 1)));
  for (std::string p; std::getline(in, p, ',');) parts.push_back(std::stoul(p));
  std::string provenance;
  std::string_view rest = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
  const std::string_view src = "# source: ";
  if (rest.substr(0, src.size()) == src) {
    auto e2 = rest.find('\n');
    provenance = std::string(rest.substr(src.size(), e2 - src.size()));
  }
  return {Partition(std::move(parts)), parse_polynomial(rest), std::move(provenance)};
}

}  // namespace msym
