#include "msym/multisym.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>

namespace msym {

std::string to_string(const ExponentTuple& alpha) {
  std::string s = "(";
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    if (j) s += ",";
    s += std::to_string(alpha[j]);
  }
  return s + ")";
}

bool is_zero_tuple(const ExponentTuple& alpha) {
  return std::all_of(alpha.begin(), alpha.end(), [](auto a) { return a == 0; });
}

Weights::Weights(std::vector<std::uint32_t> w) : w_(std::move(w)) {
  if (w_.empty()) throw PreconditionError("weight vector must be nonempty");
  for (auto x : w_) {
    if (x < 1) throw PreconditionError("weights must be positive integers");
  }
}

std::uint32_t Weights::max() const { return *std::max_element(w_.begin(), w_.end()); }
std::uint32_t Weights::min() const { return *std::min_element(w_.begin(), w_.end()); }

std::uint64_t Weights::dot(const ExponentTuple& alpha) const {
  if (alpha.size() != w_.size()) throw ShapeError("weight and exponent lengths differ");
  std::uint64_t s = 0;
  for (std::size_t j = 0; j < w_.size(); ++j) s += std::uint64_t{w_[j]} * alpha[j];
  return s;
}

std::string to_string(const Weights& w) { return to_string(ExponentTuple(w.values())); }

std::string to_string(const ExponentProfile& e) {
  std::string s = "{";
  bool first = true;
  for (const auto& p : e.points) {
    if (!first) s += ",";
    s += to_string(p);
    first = false;
  }
  return s + "}";
}

std::vector<ExponentTuple> orbit_type(const Monomial& m, const Shape& shape) {
  std::vector<ExponentTuple> rows;
  std::size_t current = shape.rows;  // sentinel
  for (const auto& f : m.factors()) {
    std::size_t row = f.var / shape.cols;
    if (row != current) {
      rows.emplace_back(shape.cols, 0);
      current = row;
    }
    rows.back()[f.var % shape.cols] = f.exp;
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

Polynomial apply_row_permutation(const Polynomial& f, std::span<const std::size_t> perm) {
  return relabel_rows(f, perm, f.shape());
}

namespace {

std::vector<std::vector<std::size_t>> row_generators(std::size_t n) {
  std::vector<std::vector<std::size_t>> gens;
  if (n < 2) return gens;
  std::vector<std::size_t> swap(n);
  std::iota(swap.begin(), swap.end(), 0);
  std::swap(swap[0], swap[1]);
  gens.push_back(swap);
  if (n > 2) {
    std::vector<std::size_t> cycle(n);
    for (std::size_t i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
    gens.push_back(cycle);
  }
  return gens;
}

}  // namespace

Polynomial symmetrize(const Polynomial& f) {
  auto gens = row_generators(f.shape().rows);
  if (gens.empty() || f.is_constant()) return f;
  std::set<Polynomial> seen{f};
  std::deque<const Polynomial*> queue{&*seen.begin()};
  while (!queue.empty()) {
    const Polynomial* g = queue.front();
    queue.pop_front();
    for (const auto& perm : gens) {
      auto [it, inserted] = seen.insert(apply_row_permutation(*g, perm));
      if (inserted) queue.push_back(&*it);
    }
  }
  std::vector<Term> terms;
  for (const auto& g : seen) terms.insert(terms.end(), g.terms().begin(), g.terms().end());
  return Polynomial::from_terms(f.shape(), std::move(terms));
}

bool is_k_symmetric(const Polynomial& f) {
  for (const auto& perm : row_generators(f.shape().rows)) {
    if (!(apply_row_permutation(f, perm) == f)) return false;
  }
  return true;
}

Polynomial power_sum(const ExponentTuple& alpha, Shape shape) {
  if (alpha.size() != shape.cols) throw ShapeError("exponent tuple length must equal k");
  if (is_zero_tuple(alpha)) throw PreconditionError("power sum index must be nonzero");
  std::vector<Term> terms;
  for (std::size_t i = 0; i < shape.rows; ++i) {
    std::vector<Monomial::Factor> factors;
    for (std::size_t j = 0; j < shape.cols; ++j) {
      if (alpha[j] > 0) factors.push_back({static_cast<std::uint32_t>(i * shape.cols + j), alpha[j]});
    }
    terms.push_back({Monomial::from_factors(std::move(factors)), 1});
  }
  return Polynomial::from_terms(shape, std::move(terms));
}

Polynomial monomial_function(std::span<const ExponentTuple> alphas, Shape shape) {
  if (alphas.size() > shape.rows) {
    throw PreconditionError("monomial function needs at most n exponent tuples");
  }
  std::vector<Monomial::Factor> factors;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (alphas[i].size() != shape.cols) throw ShapeError("exponent tuple length must equal k");
    if (is_zero_tuple(alphas[i])) throw PreconditionError("monomial function tuples must be nonzero");
    for (std::size_t j = 0; j < shape.cols; ++j) {
      factors.push_back({static_cast<std::uint32_t>(i * shape.cols + j), alphas[i][j]});
    }
  }
  Polynomial seed = Polynomial::from_terms(shape, {{Monomial::from_factors(std::move(factors)), 1}});
  return symmetrize(seed);
}

ExponentProfile exponent_profile(const Polynomial& f) {
  ExponentProfile e;
  e.k = f.shape().cols;
  for (const auto& t : f.terms()) {
    ExponentTuple alpha(e.k, 0);
    for (const auto& fac : t.mono.factors()) alpha[fac.var % e.k] += fac.exp;
    e.points.insert(std::move(alpha));
  }
  return e;
}

Degree weighted_degree(const ExponentProfile& e, const Weights& w) {
  if (w.size() != e.k) throw ShapeError("weights length must equal k");
  Degree d;
  for (const auto& alpha : e.points) d = std::max(d, Degree(static_cast<long>(w.dot(alpha))));
  return d;
}

Degree weighted_degree(const Polynomial& f, const Weights& w) {
  return weighted_degree(exponent_profile(f), w);
}

// ---------------------------------------------------------------------------
// PowerSumExpr

namespace {

std::uint32_t monomial_degree(const PowerSumExpr::Monomial& m) {
  std::uint32_t d = 0;
  for (const auto& f : m) d += f.exp;
  return d;
}

PowerSumExpr::Monomial multiply(const PowerSumExpr::Monomial& a, const PowerSumExpr::Monomial& b) {
  PowerSumExpr::Monomial out;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->alpha == j->alpha) {
      out.push_back({i->alpha, i->exp + j->exp});
      ++i;
      ++j;
    } else if (i->alpha < j->alpha) {
      out.push_back(*i++);
    } else {
      out.push_back(*j++);
    }
  }
  out.insert(out.end(), i, a.end());
  out.insert(out.end(), j, b.end());
  return out;
}

}  // namespace

bool PowerSumExpr::Order::operator()(const Monomial& a, const Monomial& b) const {
  auto da = monomial_degree(a);
  auto db = monomial_degree(b);
  if (da != db) return da > db;
  auto n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].alpha != b[i].alpha) return a[i].alpha > b[i].alpha;
    if (a[i].exp != b[i].exp) return a[i].exp > b[i].exp;
  }
  return a.size() < b.size();
}

PowerSumExpr PowerSumExpr::constant(std::size_t k, const Rational& c) {
  PowerSumExpr e(k);
  e.add_term({}, c);
  return e;
}

PowerSumExpr PowerSumExpr::generator(const ExponentTuple& alpha) {
  if (is_zero_tuple(alpha)) throw PreconditionError("power sum index must be nonzero");
  PowerSumExpr e(alpha.size());
  e.add_term({{alpha, 1}}, 1);
  return e;
}

void PowerSumExpr::add_term(Monomial mono, const Rational& c) {
  if (c == 0) return;
  for (const auto& f : mono) {
    if (f.alpha.size() != k_) throw ShapeError("power sum index length must equal k");
  }
  auto [it, inserted] = terms_.try_emplace(std::move(mono), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

std::set<ExponentTuple> PowerSumExpr::indices() const {
  std::set<ExponentTuple> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& f : m) out.insert(f.alpha);
  }
  return out;
}

std::uint32_t PowerSumExpr::max_degree() const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, monomial_degree(m));
  return d;
}

PowerSumExpr PowerSumExpr::operator-() const {
  PowerSumExpr e = *this;
  for (auto& [m, c] : e.terms_) c = -c;
  return e;
}

PowerSumExpr& PowerSumExpr::operator+=(const PowerSumExpr& other) {
  if (other.k_ != k_) throw ShapeError("power sum expressions over different k");
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

PowerSumExpr& PowerSumExpr::operator-=(const PowerSumExpr& other) {
  if (other.k_ != k_) throw ShapeError("power sum expressions over different k");
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

PowerSumExpr& PowerSumExpr::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& [m, x] : terms_) x *= c;
  }
  return *this;
}

PowerSumExpr operator*(const PowerSumExpr& a, const PowerSumExpr& b) {
  if (a.k_ != b.k_) throw ShapeError("power sum expressions over different k");
  PowerSumExpr out(a.k_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(multiply(ma, mb), ca * cb);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rewriting

namespace {

class MonomialFunctionTable {
 public:
  explicit MonomialFunctionTable(std::size_t k) : k_(k) {}

  const PowerSumExpr& get(const std::vector<ExponentTuple>& mu) {
    if (auto it = memo_.find(mu); it != memo_.end()) return it->second;
    PowerSumExpr value = compute(mu);
    return memo_.emplace(mu, std::move(value)).first->second;
  }

 private:
  PowerSumExpr compute(const std::vector<ExponentTuple>& mu) {
    if (mu.empty()) return PowerSumExpr::constant(k_, 1);
    if (mu.size() == 1) return PowerSumExpr::generator(mu.front());
    // Eliminate the largest tuple a0: p_{a0} m_nu = c m_mu + sum_beta t_beta m_{mu'}.
    const ExponentTuple a0 = mu.back();
    std::vector<ExponentTuple> nu(mu.begin(), mu.end() - 1);
    auto c = static_cast<long>(std::count(mu.begin(), mu.end(), a0));
    PowerSumExpr result = PowerSumExpr::generator(a0) * get(nu);
    for (std::size_t i = 0; i < nu.size(); ++i) {
      if (i > 0 && nu[i] == nu[i - 1]) continue;  // distinct beta only
      std::vector<ExponentTuple> merged = nu;
      for (std::size_t j = 0; j < k_; ++j) merged[i][j] += a0[j];
      ExponentTuple beta_plus = merged[i];
      std::sort(merged.begin(), merged.end());
      auto t = static_cast<long>(std::count(merged.begin(), merged.end(), beta_plus));
      result -= Rational(t) * get(merged);
    }
    result *= Rational(1, c);
    return result;
  }

  std::size_t k_;
  std::map<std::vector<ExponentTuple>, PowerSumExpr> memo_;
};

}  // namespace

PowerSumExpr monomial_function_in_power_sums(std::vector<ExponentTuple> mu, std::size_t k) {
  for (const auto& a : mu) {
    if (a.size() != k) throw ShapeError("exponent tuple length must equal k");
    if (is_zero_tuple(a)) throw PreconditionError("monomial function tuples must be nonzero");
  }
  std::sort(mu.begin(), mu.end());
  MonomialFunctionTable table(k);
  return table.get(mu);
}

PowerSumExpr rewrite_in_power_sums(const Polynomial& f, const Weights& w) {
  const auto& shape = f.shape();
  if (w.size() != shape.cols) throw ShapeError("weights length must equal k");
  if (!is_k_symmetric(f)) throw PreconditionError("polynomial is not k-symmetric");
  // f = sum_mu c_mu m_mu where c_mu is the common coefficient on the orbit mu.
  std::map<std::vector<ExponentTuple>, Rational> coefficients;
  for (const auto& t : f.terms()) {
    auto mu = orbit_type(t.mono, shape);
    if (mu.size() > shape.rows) throw PreconditionError("orbit type longer than n");
    coefficients.try_emplace(std::move(mu), t.coeff);
  }
  MonomialFunctionTable table(shape.cols);
  PowerSumExpr F(shape.cols);
  for (const auto& [mu, c] : coefficients) {
    PowerSumExpr part = table.get(mu);
    part *= c;
    F += part;
  }
  return F;
}

namespace {

// Caches powers of the substituted generators.
class GeneratorPowers {
 public:
  GeneratorPowers(Shape shape, std::function<Polynomial(const ExponentTuple&)> make)
      : shape_(shape), make_(std::move(make)) {}

  const Polynomial& get(const ExponentTuple& alpha, std::uint32_t e) {
    auto key = std::make_pair(alpha, e);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    Polynomial value = e == 1 ? make_(alpha) : get(alpha, e - 1) * get(alpha, 1);
    return cache_.emplace(std::move(key), std::move(value)).first->second;
  }

 private:
  Shape shape_;
  std::function<Polynomial(const ExponentTuple&)> make_;
  std::map<std::pair<ExponentTuple, std::uint32_t>, Polynomial> cache_;
};

Polynomial substitute_with(const PowerSumExpr& F, Shape shape, GeneratorPowers& powers) {
  // one sort at the end instead of a merge per term
  std::vector<Term> all;
  for (const auto& [mono, c] : F.terms()) {
    Polynomial term = Polynomial::constant(shape, c);
    for (const auto& fac : mono) term = term * powers.get(fac.alpha, fac.exp);
    for (const auto& t : term.terms()) all.push_back(t);
  }
  return Polynomial::from_terms(shape, std::move(all));
}

}  // namespace

Polynomial substitute(const PowerSumExpr& F, Shape shape) {
  if (F.k() != shape.cols) throw ShapeError("expression k differs from shape k");
  GeneratorPowers powers(shape, [shape](const ExponentTuple& a) { return power_sum(a, shape); });
  return substitute_with(F, shape, powers);
}

Polynomial substitute_weighted(const PowerSumExpr& F, std::span<const std::size_t> multiplicities) {
  if (multiplicities.empty()) throw ShapeError("need at least one row block");
  Shape shape{multiplicities.size(), F.k()};
  std::vector<std::size_t> mult(multiplicities.begin(), multiplicities.end());
  GeneratorPowers powers(shape, [shape, mult](const ExponentTuple& a) {
    std::vector<Term> terms;
    for (std::size_t c = 0; c < shape.rows; ++c) {
      std::vector<Monomial::Factor> factors;
      for (std::size_t j = 0; j < shape.cols; ++j) {
        if (a[j] > 0) factors.push_back({static_cast<std::uint32_t>(c * shape.cols + j), a[j]});
      }
      terms.push_back({Monomial::from_factors(std::move(factors)), Rational(mult[c])});
    }
    return Polynomial::from_terms(shape, std::move(terms));
  });
  return substitute_with(F, shape, powers);
}

std::string serialize(const PowerSumExpr& F) {
  std::ostringstream os;
  os << "psexpr k=" << F.k() << "\n";
  if (F.is_zero()) {
    os << "0\n";
    return os.str();
  }
  for (const auto& [mono, c] : F.terms()) {
    os << c.get_str();
    for (const auto& fac : mono) {
      os << " P[";
      for (std::size_t j = 0; j < fac.alpha.size(); ++j) os << (j ? "," : "") << fac.alpha[j];
      os << "]";
      if (fac.exp != 1) os << "^" << fac.exp;
    }
    os << "\n";
  }
  return os.str();
}

PowerSumExpr parse_power_sum_expr(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<PowerSumExpr> F;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    for (std::string tok; ls >> tok;) tokens.push_back(tok);
    auto fail = [&](const std::string& msg) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + msg);
    };
    if (!F) {
      if (tokens.size() != 2 || tokens[0] != "psexpr" || tokens[1].rfind("k=", 0) != 0) {
        fail("expected header 'psexpr k=<k>'");
      }
      F.emplace(std::stoul(tokens[1].substr(2)));
      continue;
    }
    Rational c = parse_rational(tokens[0]);
    PowerSumExpr::Monomial mono;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      const auto& tok = tokens[i];
      auto close = tok.find(']');
      if (tok.rfind("P[", 0) != 0 || close == std::string::npos) fail("malformed token '" + tok + "'");
      ExponentTuple alpha;
      std::istringstream parts(tok.substr(2, close - 2));
      for (std::string p; std::getline(parts, p, ',');) alpha.push_back(std::stoul(p));
      std::uint32_t e = 1;
      if (close + 1 < tok.size()) {
        if (tok[close + 1] != '^') fail("malformed exponent in '" + tok + "'");
        e = static_cast<std::uint32_t>(std::stoul(tok.substr(close + 2)));
      }
      if (alpha.size() != F->k()) fail("index length differs from k");
      mono.push_back({alpha, e});
    }
    std::sort(mono.begin(), mono.end(), [](const auto& a, const auto& b) { return a.alpha < b.alpha; });
    PowerSumExpr::Monomial merged;
    for (auto& fac : mono) {
      if (!merged.empty() && merged.back().alpha == fac.alpha) {
        merged.back().exp += fac.exp;
      } else {
        merged.push_back(fac);
      }
    }
    F->add_term(std::move(merged), c);
  }
  if (!F) throw std::invalid_argument("missing psexpr header");
  return *F;
}

std::vector<Polynomial> power_sum_gradient_factor(const PowerSumCombination& u, std::size_t k,
                                                  const Weights& w, long d) {
  if (w.size() != k) throw ShapeError("weights length must equal k");
  Shape row_shape{1, k};
  std::vector<std::vector<Term>> parts(k);
  for (const auto& [alpha, c] : u) {
    if (alpha.size() != k) throw ShapeError("exponent tuple length must equal k");
    if (static_cast<long>(w.dot(alpha)) > d) {
      throw PreconditionError("index " + to_string(alpha) + " outside N_d");
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (alpha[j] == 0) continue;
      std::vector<Monomial::Factor> factors;
      for (std::size_t jj = 0; jj < k; ++jj) {
        auto e = alpha[jj] - (jj == j ? 1U : 0U);
        if (e > 0) factors.push_back({static_cast<std::uint32_t>(jj), e});
      }
      parts[j].push_back({Monomial::from_factors(std::move(factors)), c * alpha[j]});
    }
  }
  std::vector<Polynomial> out;
  out.reserve(k);
  for (auto& p : parts) out.push_back(Polynomial::from_terms(row_shape, std::move(p)));
  return out;
}

PowerSumCombination as_combination(const PowerSumExpr& F) {
  PowerSumCombination u;
  for (const auto& [mono, c] : F.terms()) {
    if (mono.empty()) continue;  // constants have zero derivative
    if (mono.size() != 1 || mono.front().exp != 1) {
      throw PreconditionError("expression is not a linear combination of power sums");
    }
    u[mono.front().alpha] += c;
  }
  return u;
}

}  // namespace msym
