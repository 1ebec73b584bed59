#include "homotope/scalar.hpp"

#include <charconv>
#include <ostream>

#include "homotope/errors.hpp"

namespace homotope {

namespace detail {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) result = mulmod(result, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return result;
}

}  // namespace detail

namespace {

constexpr std::uint64_t kMaxPrime = std::uint64_t{1} << 62;

std::uint64_t reduce_mpz(const mpz_class& z, std::uint64_t p) {
  mpz_class m;
  mpz_fdiv_r_ui(m.get_mpz_t(), z.get_mpz_t(), p);
  return m.get_ui();
}

}  // namespace

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (p < 2 || p >= kMaxPrime) throw Error("prime field characteristic out of range: " + std::to_string(p));
  mpz_class z(std::to_string(p));
  if (mpz_probab_prime_p(z.get_mpz_t(), 40) == 0) throw Error("not a prime: " + std::to_string(p));
  FieldSpec f;
  f.p_ = p;
  return f;
}

FieldSpec FieldSpec::parse(std::string_view text) {
  if (text == "rationals" || text == "Q" || text == "q") return rationals();
  if (text.starts_with("fp:")) text.remove_prefix(3);
  std::uint64_t p = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), p);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError("bad field descriptor: '" + std::string(text) + "'");
  }
  return prime(p);
}

std::string FieldSpec::to_string() const {
  return p_ == 0 ? std::string("rationals") : "fp:" + std::to_string(p_);
}

Scalar::Scalar(const FieldSpec& field, long value) : p_(field.characteristic()) {
  if (p_ == 0) {
    q_ = value;
  } else {
    __int128 m = static_cast<__int128>(value) % static_cast<__int128>(p_);
    if (m < 0) m += p_;
    r_ = static_cast<std::uint64_t>(m);
  }
}

Scalar::Scalar(const FieldSpec& field, const mpz_class& num, const mpz_class& den) : p_(field.characteristic()) {
  if (den == 0) throw Error("zero denominator");
  if (p_ == 0) {
    q_ = mpq_class(num, den);
    q_.canonicalize();
  } else {
    std::uint64_t d = reduce_mpz(den, p_);
    if (d == 0) throw Error("denominator divisible by the characteristic");
    r_ = detail::mulmod(reduce_mpz(num, p_), detail::powmod(d, p_ - 2, p_), p_);
  }
}

Scalar Scalar::from_rational(const mpq_class& q) {
  Scalar s;
  s.q_ = q;
  s.q_.canonicalize();
  return s;
}

Scalar Scalar::parse(const FieldSpec& field, std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  auto parse_int = [&](std::string_view s) {
    s = trim(s);
    std::string str(s);
    if (str.empty()) throw ParseError("empty integer in scalar literal");
    std::size_t start = (str[0] == '-' || str[0] == '+') ? 1 : 0;
    if (start == str.size()) throw ParseError("malformed scalar literal: '" + std::string(text) + "'");
    for (std::size_t i = start; i < str.size(); ++i) {
      if (str[i] < '0' || str[i] > '9') throw ParseError("malformed scalar literal: '" + std::string(text) + "'");
    }
    if (str[0] == '+') str.erase(0, 1);
    return mpz_class(str);
  };
  auto slash = text.find('/');
  mpz_class num = parse_int(text.substr(0, slash));
  mpz_class den = slash == std::string_view::npos ? mpz_class(1) : parse_int(text.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator in scalar literal: '" + std::string(text) + "'");
  return Scalar(field, num, den);
}

FieldSpec Scalar::field() const {
  FieldSpec f;
  f.p_ = p_;
  return f;
}

bool Scalar::is_one() const { return p_ == 0 ? q_ == 1 : r_ == 1; }

void Scalar::check_same(const Scalar& o) const {
  if (p_ != o.p_) throw FieldMismatch("scalars from different fields");
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw NotInvertible("division by zero");
  Scalar s = *this;
  if (p_ == 0) {
    s.q_ = 1 / q_;
  } else {
    s.r_ = detail::powmod(r_, p_ - 2, p_);
  }
  return s;
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  if (p_ == 0) {
    s.q_ = -q_;
  } else if (r_ != 0) {
    s.r_ = p_ - r_;
  }
  return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same(o);
  if (p_ == 0) {
    q_ += o.q_;
  } else {
    r_ += o.r_;
    if (r_ >= p_) r_ -= p_;
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same(o);
  if (p_ == 0) {
    q_ -= o.q_;
  } else {
    r_ = r_ >= o.r_ ? r_ - o.r_ : r_ + p_ - o.r_;
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same(o);
  if (p_ == 0) {
    q_ *= o.q_;
  } else {
    r_ = detail::mulmod(r_, o.r_, p_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_same(o);
  if (o.is_zero()) throw NotInvertible("division by zero");
  if (p_ == 0) {
    q_ /= o.q_;
  } else {
    r_ = detail::mulmod(r_, detail::powmod(o.r_, p_ - 2, p_), p_);
  }
  return *this;
}

void Scalar::add_product(const Scalar& a, const Scalar& b) {
  check_same(a);
  check_same(b);
  if (p_ == 0) {
    thread_local mpq_class tmp;
    mpq_mul(tmp.get_mpq_t(), a.q_.get_mpq_t(), b.q_.get_mpq_t());
    mpq_add(q_.get_mpq_t(), q_.get_mpq_t(), tmp.get_mpq_t());
  } else {
    r_ += detail::mulmod(a.r_, b.r_, p_);
    if (r_ >= p_) r_ -= p_;
  }
}

void Scalar::sub_product(const Scalar& a, const Scalar& b) {
  check_same(a);
  check_same(b);
  if (p_ == 0) {
    thread_local mpq_class tmp;
    mpq_mul(tmp.get_mpq_t(), a.q_.get_mpq_t(), b.q_.get_mpq_t());
    mpq_sub(q_.get_mpq_t(), q_.get_mpq_t(), tmp.get_mpq_t());
  } else {
    std::uint64_t t = detail::mulmod(a.r_, b.r_, p_);
    r_ = r_ >= t ? r_ - t : r_ + p_ - t;
  }
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.p_ != b.p_) return false;
  return a.p_ == 0 ? a.q_ == b.q_ : a.r_ == b.r_;
}

std::string Scalar::to_string() const {
  if (p_ != 0) return std::to_string(r_);
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

Vector zero_vector(const FieldSpec& field, std::size_t n) { return Vector(n, Scalar::zero(field)); }

Vector unit_vector(const FieldSpec& field, std::size_t n, std::size_t i) {
  Vector v = zero_vector(field, n);
  v.at(i) = Scalar::one(field);
  return v;
}

bool is_zero(const Vector& v) {
  for (const auto& s : v) {
    if (!s.is_zero()) return false;
  }
  return true;
}

void axpy(Vector& y, const Scalar& a, const Vector& x) {
  if (y.size() != x.size()) throw DimensionMismatch("axpy: length mismatch");
  if (a.is_zero()) return;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i].is_zero()) y[i].add_product(a, x[i]);
  }
}

Vector scaled(const Scalar& a, Vector x) {
  for (auto& s : x) s *= a;
  return x;
}

Vector operator+(Vector a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector sum: length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

Vector operator-(Vector a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector difference: length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

}  // namespace homotope
