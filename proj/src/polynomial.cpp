#include "homotope/polynomial.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "homotope/errors.hpp"
#include "homotope/linalg.hpp"

namespace homotope {

Polynomial::Polynomial(const FieldSpec& field, Vector coeffs) : field_(field), c_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::linear(const Scalar& root) {
  FieldSpec f = root.field();
  return Polynomial(f, {-root, Scalar::one(f)});
}

Polynomial Polynomial::monomial(const FieldSpec& field, std::size_t degree) {
  Vector c = zero_vector(field, degree + 1);
  c[degree] = Scalar::one(field);
  return Polynomial(field, std::move(c));
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Scalar Polynomial::operator()(const Scalar& x) const {
  Scalar acc = Scalar::zero(field_);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  Scalar inv = leading().inverse();
  return Polynomial(field_, scaled(inv, c_));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  Vector c = zero_vector(a.field_, std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return Polynomial(a.field_, std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  Vector c = zero_vector(a.field_, std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
  return Polynomial(a.field_, std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial(a.field_);
  Vector c = zero_vector(a.field_, a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j].add_product(a.c_[i], b.c_[j]);
  }
  return Polynomial(a.field_, std::move(c));
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long i = degree(); i >= 0; --i) {
    const Scalar& c = c_[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || !c.is_one()) os << "(" << c << ")";
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

PolyDivision divide(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error("polynomial division by zero");
  const FieldSpec& f = a.field();
  if (a.degree() < b.degree()) return {Polynomial(f), a};
  Vector rem = a.coeffs();
  const std::size_t db = static_cast<std::size_t>(b.degree());
  Vector quot = zero_vector(f, rem.size() - db);
  Scalar inv = b.leading().inverse();
  for (std::size_t i = rem.size(); i-- > db;) {
    if (rem[i].is_zero()) continue;
    Scalar q = rem[i] * inv;
    quot[i - db] = q;
    for (std::size_t j = 0; j <= db; ++j) rem[i - db + j].sub_product(q, b.coeffs()[j]);
  }
  rem.resize(db);
  return {Polynomial(f, std::move(quot)), Polynomial(f, std::move(rem))};
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = divide(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

namespace {

std::vector<mpz_class> divisors(mpz_class n) {
  if (n < 0) n = -n;
  std::vector<std::pair<mpz_class, unsigned>> factors;
  for (mpz_class d = 2; d * d <= n; ++d) {
    unsigned e = 0;
    while (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
      n /= d;
      ++e;
    }
    if (e) factors.emplace_back(d, e);
  }
  if (n > 1) factors.emplace_back(n, 1);
  std::vector<mpz_class> out{1};
  for (const auto& [p, e] : factors) {
    std::size_t existing = out.size();
    mpz_class pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < existing; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Integer coefficients with content 1.
std::vector<mpz_class> primitive_integer(const Polynomial& p) {
  mpz_class l = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.rational().get_den_mpz_t());
  std::vector<mpz_class> z;
  mpz_class g = 0;
  for (const auto& c : p.coeffs()) {
    mpq_class v = c.rational() * l;
    z.push_back(v.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.back().get_mpz_t());
  }
  if (g != 0 && g != 1) {
    for (auto& v : z) v /= g;
  }
  return z;
}

std::vector<Scalar> rational_roots_with_multiplicity(Polynomial p) {
  const FieldSpec f = p.field();
  std::vector<Scalar> roots;
  while (p.degree() >= 1 && p.coeff(0).is_zero()) {
    roots.push_back(Scalar::zero(f));
    p = divide(p, Polynomial::monomial(f, 1)).quotient;
  }
  if (p.degree() < 1) return roots;
  auto z = primitive_integer(p);
  auto num = divisors(z.front());
  auto den = divisors(z.back());
  std::vector<mpq_class> cands;
  for (const auto& a : num) {
    for (const auto& b : den) {
      mpq_class q(a, b);
      q.canonicalize();
      cands.push_back(q);
      cands.push_back(-q);
    }
  }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  for (const auto& q : cands) {
    Scalar r = Scalar::from_rational(q);
    while (p.degree() >= 1 && p(r).is_zero()) {
      roots.push_back(r);
      p = divide(p, Polynomial::linear(r)).quotient;
    }
    if (p.degree() < 1) break;
  }
  return roots;
}

Polynomial powmod(Polynomial base, mpz_class e, const Polynomial& mod) {
  const FieldSpec f = base.field();
  Polynomial result(f, {Scalar::one(f)});
  base = divide(base, mod).remainder;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = divide(result * base, mod).remainder;
    base = divide(base * base, mod).remainder;
    e >>= 1;
  }
  return result;
}

std::vector<Scalar> prime_field_distinct_roots(const Polynomial& p) {
  const FieldSpec f = p.field();
  const std::uint64_t q = f.characteristic();
  std::vector<Scalar> roots;
  if (p.degree() < 1) return roots;
  if (q <= 65536) {
    for (std::uint64_t r = 0; r < q; ++r) {
      Scalar s(f, static_cast<long>(r));
      if (p(s).is_zero()) roots.push_back(s);
    }
    return roots;
  }
  Polynomial x = Polynomial::monomial(f, 1);
  Polynomial xp = powmod(x, mpz_class(std::to_string(q)), p);
  Polynomial g = gcd(p, xp - x);
  std::mt19937_64 rng(0x5eed);
  std::function<void(const Polynomial&)> split = [&](const Polynomial& h) {
    if (h.degree() < 1) return;
    if (h.degree() == 1) {
      roots.push_back(-h.monic().coeff(0));
      return;
    }
    for (;;) {
      Scalar a(f, static_cast<long>(rng() % q));
      Polynomial t = powmod(Polynomial(f, {a, Scalar::one(f)}), mpz_class(std::to_string((q - 1) / 2)), h);
      Polynomial d = gcd(h, t - Polynomial(f, {Scalar::one(f)}));
      if (d.degree() >= 1 && d.degree() < h.degree()) {
        split(d);
        split(divide(h, d).quotient);
        return;
      }
    }
  };
  split(g);
  std::sort(roots.begin(), roots.end(), [](const Scalar& a, const Scalar& b) { return a.residue() < b.residue(); });
  return roots;
}

}  // namespace

std::optional<std::vector<Scalar>> split_roots(const Polynomial& p) {
  if (p.is_zero()) throw Error("roots of the zero polynomial");
  std::vector<Scalar> roots;
  if (p.field().is_rational()) {
    roots = rational_roots_with_multiplicity(p);
  } else {
    Polynomial rest = p;
    for (const auto& r : prime_field_distinct_roots(p)) {
      while (rest.degree() >= 1 && rest(r).is_zero()) {
        roots.push_back(r);
        rest = divide(rest, Polynomial::linear(r)).quotient;
      }
    }
  }
  if (static_cast<long>(roots.size()) != p.degree()) return std::nullopt;
  return roots;
}

std::vector<Scalar> field_roots(const Polynomial& p) {
  if (p.is_zero()) throw Error("roots of the zero polynomial");
  std::vector<Scalar> roots =
      p.field().is_rational() ? rational_roots_with_multiplicity(p) : prime_field_distinct_roots(p);
  std::vector<Scalar> out;
  for (const auto& r : roots) {
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  }
  return out;
}

std::optional<Scalar> square_root(const Scalar& x) {
  const FieldSpec f = x.field();
  if (x.is_zero()) return x;
  if (f.is_rational()) {
    const mpq_class& q = x.rational();
    if (q < 0) return std::nullopt;
    if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return std::nullopt;
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
    return Scalar(f, n, d);
  }
  const std::uint64_t p = f.characteristic();
  const std::uint64_t a = x.residue();
  if (p == 2) return x;
  if (detail::powmod(a, (p - 1) / 2, p) != 1) return std::nullopt;
  // Tonelli-Shanks
  std::uint64_t q = p - 1, s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  std::uint64_t z = 2;
  while (detail::powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  std::uint64_t m = s, c = detail::powmod(z, q, p), t = detail::powmod(a, q, p), r = detail::powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    std::uint64_t i = 0, tt = t;
    while (tt != 1) {
      tt = detail::mulmod(tt, tt, p);
      ++i;
    }
    std::uint64_t b = c;
    for (std::uint64_t j = 0; j + 1 < m - i; ++j) b = detail::mulmod(b, b, p);
    m = i;
    c = detail::mulmod(b, b, p);
    t = detail::mulmod(t, c, p);
    r = detail::mulmod(r, b, p);
  }
  Scalar out = Scalar::zero(f);
  out += Scalar(f, mpz_class(std::to_string(r)), mpz_class(1));
  return out;
}

Scalar determinant(const Matrix& m) {
  if (!m.is_square()) throw DimensionMismatch("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix a = m;
  Scalar det = Scalar::one(m.field());
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t r = c; r < n; ++r) {
      if (!a(r, c).is_zero()) {
        piv = r;
        break;
      }
    }
    if (piv == n) return Scalar::zero(m.field());
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    Scalar inv = a(c, c).inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c).is_zero()) continue;
      Scalar f = a(r, c) * inv;
      for (std::size_t j = c; j < n; ++j) a(r, j).sub_product(f, a(c, j));
    }
  }
  return det;
}

Polynomial characteristic_polynomial(const Matrix& m) {
  if (!m.is_square()) throw DimensionMismatch("characteristic polynomial of a non-square matrix");
  const std::size_t n = m.rows();
  const FieldSpec f = m.field();
  if (f.is_prime_field() && f.characteristic() <= n) {
    throw Error("characteristic polynomial by interpolation needs more than n field elements");
  }
  Matrix vander(f, n + 1, n + 1);
  Vector values;
  for (std::size_t k = 0; k <= n; ++k) {
    Scalar x(f, static_cast<long>(k));
    Scalar pw = Scalar::one(f);
    for (std::size_t j = 0; j <= n; ++j) {
      vander(k, j) = pw;
      pw *= x;
    }
    Matrix shifted = x * Matrix::identity(f, n) - m;
    values.push_back(determinant(shifted));
  }
  auto coeffs = solve(vander, values);
  if (!coeffs) throw VerificationFailure("Vandermonde system unexpectedly singular");
  return Polynomial(f, *coeffs);
}

}  // namespace homotope
