#include "msym/poly.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace msym {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  std::size_t start = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  std::size_t slash = s.find('/');
  auto digits = [&](std::size_t from, std::size_t to) {
    if (from >= to) return false;
    return std::all_of(s.begin() + static_cast<long>(from), s.begin() + static_cast<long>(to),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  bool ok = slash == std::string::npos ? digits(start, s.size())
                                       : digits(start, slash) && digits(slash + 1, s.size());
  if (!ok) throw std::invalid_argument("malformed rational literal '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational literal '" + s + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

std::size_t flat_index(const Shape& shape, const VarIndex& v) {
  if (v.row < 1 || v.row > shape.rows || v.col < 1 || v.col > shape.cols) {
    throw ShapeError("variable x[" + std::to_string(v.row) + "," + std::to_string(v.col) +
                     "] outside shape n=" + std::to_string(shape.rows) +
                     " k=" + std::to_string(shape.cols));
  }
  return (v.row - 1) * shape.cols + (v.col - 1);
}

VarIndex var_index(const Shape& shape, std::size_t flat) {
  return VarIndex{flat / shape.cols + 1, flat % shape.cols + 1};
}

std::string Degree::to_string() const {
  return is_finite() ? std::to_string(*value_) : std::string("-inf");
}

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::variable(std::uint32_t var, std::uint32_t exp) {
  Monomial m;
  if (exp > 0) m.factors_.push_back({var, exp});
  m.degree_ = exp;
  return m;
}

Monomial Monomial::from_factors(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const Factor& a, const Factor& b) { return a.var < b.var; });
  Monomial m;
  for (const auto& f : factors) {
    if (f.exp == 0) continue;
    if (!m.factors_.empty() && m.factors_.back().var == f.var) {
      m.factors_.back().exp += f.exp;
    } else {
      m.factors_.push_back(f);
    }
    m.degree_ += f.exp;
  }
  return m;
}

std::uint32_t Monomial::exponent(std::uint32_t var) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), var,
                             [](const Factor& f, std::uint32_t v) { return f.var < v; });
  return (it != factors_.end() && it->var == var) ? it->exp : 0;
}


Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.factors_.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() && b != other.factors_.end()) {
    if (a->var == b->var) {
      out.factors_.push_back({a->var, a->exp + b->exp});
      ++a;
      ++b;
    } else if (a->var < b->var) {
      out.factors_.push_back(*a++);
    } else {
      out.factors_.push_back(*b++);
    }
  }
  out.factors_.insert(out.factors_.end(), a, factors_.end());
  out.factors_.insert(out.factors_.end(), b, other.factors_.end());
  out.degree_ = degree_ + other.degree_;
  return out;
}

int canonical_compare(const Monomial& a, const Monomial& b) {
  auto da = a.total_degree();
  auto db = b.total_degree();
  if (da != db) return da > db ? -1 : 1;
  auto fa = a.factors();
  auto fb = b.factors();
  std::size_t i = 0;
  std::size_t j = 0;
  // Lexicographic on the dense exponent vector: the first coordinate where
  // the vectors differ decides, the larger exponent first.
  while (i < fa.size() && j < fb.size()) {
    if (fa[i].var == fb[j].var) {
      if (fa[i].exp != fb[j].exp) return fa[i].exp > fb[j].exp ? -1 : 1;
      ++i;
      ++j;
    } else {
      return fa[i].var < fb[j].var ? -1 : 1;
    }
  }
  if (i < fa.size()) return -1;
  if (j < fb.size()) return 1;
  return 0;
}

// ---------------------------------------------------------------------------
// Polynomial

void Polynomial::check_shape(const Shape& shape) {
  if (shape.rows == 0 || shape.cols == 0) throw ShapeError("shape dimensions must be positive");
}

Polynomial Polynomial::constant(Shape shape, const Rational& c) {
  Polynomial p(shape);
  if (c != 0) p.terms_.push_back({Monomial{}, c});
  return p;
}

Polynomial Polynomial::variable(Shape shape, VarIndex v) {
  Polynomial p(shape);
  p.terms_.push_back({Monomial::variable(static_cast<std::uint32_t>(flat_index(shape, v))), 1});
  return p;
}

Polynomial Polynomial::from_terms(Shape shape, std::vector<Term> terms) {
  Polynomial p(shape);
  auto nvars = shape.variables();
  for (auto& t : terms) {
    for (const auto& f : t.mono.factors()) {
      if (f.var >= nvars) throw ShapeError("monomial variable outside polynomial shape");
    }
    t.coeff.canonicalize();
  }
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return canonical_compare(a.mono, b.mono) < 0;
  });
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().mono.is_one());
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& x) {
    return canonical_compare(t.mono, x) < 0;
  });
  return (it != terms_.end() && it->mono == m) ? it->coeff : Rational(0);
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.coeff *= c;
  }
  return *this;
}

namespace {

void require_same_shape(const Polynomial& f, const Polynomial& g) {
  if (!(f.shape() == g.shape())) throw ShapeError("polynomial shapes differ");
}

Polynomial merge(const Polynomial& f, const Polynomial& g, bool subtract) {
  require_same_shape(f, g);
  std::vector<Term> out;
  out.reserve(f.size() + g.size());
  auto a = f.terms().begin();
  auto b = g.terms().begin();
  auto push_b = [&](const Term& t) {
    out.push_back(subtract ? Term{t.mono, -t.coeff} : t);
  };
  while (a != f.terms().end() && b != g.terms().end()) {
    int c = canonical_compare(a->mono, b->mono);
    if (c < 0) {
      out.push_back(*a++);
    } else if (c > 0) {
      push_b(*b++);
    } else {
      Rational s = subtract ? Rational(a->coeff - b->coeff) : Rational(a->coeff + b->coeff);
      if (s != 0) out.push_back({a->mono, std::move(s)});
      ++a;
      ++b;
    }
  }
  for (; a != f.terms().end(); ++a) out.push_back(*a);
  for (; b != g.terms().end(); ++b) push_b(*b);
  // Already canonical; from_terms re-sorts cheaply on sorted input.
  return Polynomial::from_terms(f.shape(), std::move(out));
}

}  // namespace

Polynomial operator+(const Polynomial& f, const Polynomial& g) { return merge(f, g, false); }
Polynomial operator-(const Polynomial& f, const Polynomial& g) { return merge(f, g, true); }

Polynomial operator*(const Polynomial& f, const Polynomial& g) {
  require_same_shape(f, g);
  std::vector<Term> out;
  out.reserve(f.size() * g.size());
  for (const auto& s : f.terms()) {
    for (const auto& t : g.terms()) {
      out.push_back({s.mono * t.mono, s.coeff * t.coeff});
    }
  }
  return Polynomial::from_terms(f.shape(), std::move(out));
}

Polynomial operator*(const Rational& c, Polynomial f) {
  f *= c;
  return f;
}

bool operator==(const Polynomial& f, const Polynomial& g) {
  if (!(f.shape_ == g.shape_) || f.terms_.size() != g.terms_.size()) return false;
  for (std::size_t i = 0; i < f.terms_.size(); ++i) {
    if (!(f.terms_[i].mono == g.terms_[i].mono) || f.terms_[i].coeff != g.terms_[i].coeff) {
      return false;
    }
  }
  return true;
}

bool operator<(const Polynomial& f, const Polynomial& g) {
  auto n = std::min(f.terms_.size(), g.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = canonical_compare(f.terms_[i].mono, g.terms_[i].mono);
    if (c != 0) return c < 0;
    int q = cmp(f.terms_[i].coeff, g.terms_[i].coeff);
    if (q != 0) return q < 0;
  }
  return f.terms_.size() < g.terms_.size();
}

Polynomial add(const Polynomial& f, const Polynomial& g) { return f + g; }
Polynomial mul(const Polynomial& f, const Polynomial& g) { return f * g; }

Polynomial pow(const Polynomial& f, std::uint32_t e) {
  Polynomial result = Polynomial::constant(f.shape(), 1);
  Polynomial base = f;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

Polynomial partial(const Polynomial& f, VarIndex v) {
  auto var = static_cast<std::uint32_t>(flat_index(f.shape(), v));
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    auto e = t.mono.exponent(var);
    if (e == 0) continue;
    std::vector<Monomial::Factor> factors(t.mono.factors().begin(), t.mono.factors().end());
    for (auto& fac : factors) {
      if (fac.var == var) fac.exp -= 1;
    }
    out.push_back({Monomial::from_factors(std::move(factors)), t.coeff * e});
  }
  return Polynomial::from_terms(f.shape(), std::move(out));
}

Rational evaluate(const Polynomial& f, std::span<const Rational> x) {
  if (x.size() != f.shape().variables()) throw ShapeError("evaluation point has wrong size");
  Rational sum = 0;
  Rational prod;
  Rational p;
  for (const auto& t : f.terms()) {
    prod = t.coeff;
    for (const auto& fac : t.mono.factors()) {
      mpz_pow_ui(p.get_num_mpz_t(), x[fac.var].get_num_mpz_t(), fac.exp);
      mpz_pow_ui(p.get_den_mpz_t(), x[fac.var].get_den_mpz_t(), fac.exp);
      prod *= p;
    }
    sum += prod;
  }
  return sum;
}

double evaluate(const Polynomial& f, std::span<const double> x) {
  if (x.size() != f.shape().variables()) throw ShapeError("evaluation point has wrong size");
  double sum = 0.0;
  for (const auto& t : f.terms()) {
    double prod = t.coeff.get_d();
    for (const auto& fac : t.mono.factors()) {
      double b = x[fac.var];
      for (std::uint32_t e = 0; e < fac.exp; ++e) prod *= b;
    }
    sum += prod;
  }
  return sum;
}

Degree degree(const Polynomial& f) {
  if (f.is_zero()) return Degree::minus_infinity();
  // Canonical order is graded, so the first term has maximal degree.
  return Degree(static_cast<long>(f.terms().front().mono.total_degree()));
}

Polynomial relabel_rows(const Polynomial& f, std::span<const std::size_t> row_map, Shape target,
                        std::size_t col_offset) {
  const auto& src = f.shape();
  if (row_map.size() != src.rows) throw ShapeError("row map length differs from row count");
  if (src.cols + col_offset > target.cols) throw ShapeError("column offset exceeds target shape");
  for (auto r : row_map) {
    if (r >= target.rows) throw ShapeError("row map image outside target shape");
  }
  std::vector<Term> out;
  out.reserve(f.size());
  std::vector<Monomial::Factor> factors;
  for (const auto& t : f.terms()) {
    factors.clear();
    for (const auto& fac : t.mono.factors()) {
      std::size_t row = fac.var / src.cols;
      std::size_t col = fac.var % src.cols;
      auto var = static_cast<std::uint32_t>(row_map[row] * target.cols + col + col_offset);
      factors.push_back({var, fac.exp});
    }
    out.push_back({Monomial::from_factors(factors), t.coeff});
  }
  return Polynomial::from_terms(target, std::move(out));
}

// ---------------------------------------------------------------------------
// Text format

std::string serialize(const Polynomial& f) {
  std::ostringstream os;
  const auto& shape = f.shape();
  os << "poly n=" << shape.rows << " k=" << shape.cols << "\n";
  if (f.is_zero()) {
    os << "0\n";
    return os.str();
  }
  for (const auto& t : f.terms()) {
    os << t.coeff.get_str();
    for (const auto& fac : t.mono.factors()) {
      auto v = var_index(shape, fac.var);
      os << " x[" << v.row << "," << v.col << "]";
      if (fac.exp != 1) os << "^" << fac.exp;
    }
    os << "\n";
  }
  return os.str();
}

namespace {

std::size_t parse_size(std::string_view s, const std::string& what) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("malformed " + what + " '" + std::string(s) + "'");
  }
  return v;
}

std::size_t parse_header_field(const std::string& token, const std::string& key) {
  if (token.rfind(key + "=", 0) != 0) {
    throw std::invalid_argument("expected '" + key + "=' in polynomial header");
  }
  return parse_size(std::string_view(token).substr(key.size() + 1), key);
}

}  // namespace

Polynomial parse_polynomial(std::string_view text) {
  std::optional<Shape> shape;
  std::vector<Term> terms;
  std::vector<std::string_view> tokens;
  bool saw_zero = false;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;
    tokens.clear();
    for (std::size_t i = first; i < line.size();) {
      auto end = line.find_first_of(" \t\r", i);
      if (end == std::string_view::npos) end = line.size();
      tokens.push_back(line.substr(i, end - i));
      i = line.find_first_not_of(" \t\r", end);
      if (i == std::string_view::npos) break;
    }
    auto fail = [&](const std::string& msg) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + msg);
    };
    if (!shape) {
      if (tokens.size() != 3 || tokens[0] != "poly") fail("expected header 'poly n=<n> k=<k>'");
      shape = Shape{parse_header_field(std::string(tokens[1]), "n"), parse_header_field(std::string(tokens[2]), "k")};
      if (shape->rows == 0 || shape->cols == 0) fail("shape dimensions must be positive");
      continue;
    }
    Rational c;
    try {
      c = parse_rational(tokens[0]);
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
    if (tokens.size() == 1 && c == 0) {
      saw_zero = true;
      continue;
    }
    std::vector<Monomial::Factor> factors;
    factors.reserve(tokens.size() - 1);
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      std::string_view tok = tokens[i];
      auto close = tok.find(']');
      auto comma = tok.find(',');
      if (tok.substr(0, 2) != "x[" || close == std::string_view::npos || comma == std::string_view::npos ||
          comma > close) {
        fail("malformed variable token '" + std::string(tok) + "'");
      }
      VarIndex v{parse_size(tok.substr(2, comma - 2), "row"),
                 parse_size(tok.substr(comma + 1, close - comma - 1), "column")};
      std::uint32_t e = 1;
      if (close + 1 < tok.size()) {
        if (tok[close + 1] != '^') fail("malformed exponent in '" + std::string(tok) + "'");
        e = static_cast<std::uint32_t>(parse_size(tok.substr(close + 2), "exponent"));
      }
      try {
        factors.push_back({static_cast<std::uint32_t>(flat_index(*shape, v)), e});
      } catch (const ShapeError& err) {
        fail(err.what());
      }
    }
    terms.push_back({Monomial::from_factors(std::move(factors)), std::move(c)});
  }
  if (!shape) throw std::invalid_argument("missing polynomial header");
  if (saw_zero && !terms.empty()) throw std::invalid_argument("zero line mixed with terms");
  return Polynomial::from_terms(*shape, std::move(terms));
}

}  // namespace msym
