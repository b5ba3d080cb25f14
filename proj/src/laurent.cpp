#include "freering/laurent.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "freering/error.hpp"
#include "freering/linalg.hpp"

namespace freering {

bool GradedLex::operator()(const Exponents& a, const Exponents& b) const noexcept {
  const long da = std::accumulate(a.begin(), a.end(), 0L);
  const long db = std::accumulate(b.begin(), b.end(), 0L);
  if (da != db) return da < db;
  return a < b;
}

LaurentPoly::LaurentPoly(int nvars) : nvars_(nvars) {
  if (nvars < 1) throw Error(ErrorKind::Precondition, "number of variables must be positive");
}

LaurentPoly LaurentPoly::constant(int nvars, const Rational& c) {
  LaurentPoly p(nvars);
  p.add_term(Exponents(static_cast<std::size_t>(nvars), 0), c);
  return p;
}

LaurentPoly LaurentPoly::monomial(Exponents exps, const Rational& c) {
  LaurentPoly p(static_cast<int>(exps.size()));
  p.add_term(exps, c);
  return p;
}

LaurentPoly LaurentPoly::variable(int i, int nvars) {
  if (i < 1 || i > nvars) throw Error(ErrorKind::GeneratorOutOfRange, "variable index out of range");
  Exponents e(static_cast<std::size_t>(nvars), 0);
  e[static_cast<std::size_t>(i - 1)] = 1;
  return monomial(std::move(e));
}

bool LaurentPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](long x) { return x == 0; });
}

Rational LaurentPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void LaurentPoly::add_term(const Exponents& e, const Rational& c) {
  if (static_cast<int>(e.size()) != nvars_) {
    throw Error(ErrorKind::RankMismatch, "exponent vector length does not match nvars");
  }
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Exponents LaurentPoly::min_exponents() const {
  Exponents out(static_cast<std::size_t>(nvars_), 0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < e.size(); ++i) out[i] = first ? e[i] : std::min(out[i], e[i]);
    first = false;
  }
  return out;
}

Exponents LaurentPoly::max_exponents() const {
  Exponents out(static_cast<std::size_t>(nvars_), 0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < e.size(); ++i) out[i] = first ? e[i] : std::max(out[i], e[i]);
    first = false;
  }
  return out;
}

LaurentPoly LaurentPoly::pow(long k) const {
  if (k < 0) {
    if (!is_monomial()) throw Error(ErrorKind::NotInvertible, "only monomials are units");
    const auto& [e, c] = *terms_.begin();
    Exponents inv = e;
    for (auto& x : inv) x = -x;
    return LaurentPoly::monomial(inv, 1 / c).pow(-k);
  }
  LaurentPoly result = constant(nvars_, 1);
  LaurentPoly base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

static void check_nvars(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.nvars() != b.nvars()) {
    throw Error(ErrorKind::RankMismatch, "Laurent polynomials have different numbers of variables");
  }
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
  check_nvars(a, b);
  LaurentPoly out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, c);
  return out;
}

LaurentPoly operator-(const LaurentPoly& a) {
  LaurentPoly out = a;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  check_nvars(a, b);
  LaurentPoly out(a.nvars_);
  Exponents e(static_cast<std::size_t>(a.nvars_));
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

LaurentPoly operator*(const Rational& s, const LaurentPoly& a) {
  LaurentPoly out(a.nvars_);
  if (s == 0) return out;
  for (const auto& [e, c] : a.terms_) out.terms_.emplace(e, s * c);
  return out;
}

namespace {

LaurentPoly shift(const LaurentPoly& p, const Exponents& by, long sign) {
  LaurentPoly out(p.nvars());
  Exponents e;
  for (const auto& [ex, c] : p.terms()) {
    e = ex;
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += sign * by[i];
    out.add_term(e, c);
  }
  return out;
}

}  // namespace

std::optional<LaurentPoly> divides_exact(const LaurentPoly& d, const LaurentPoly& f) {
  if (d.is_zero()) throw Error(ErrorKind::ZeroDivisor, "division by the zero polynomial");
  check_nvars(d, f);
  if (f.is_zero()) return LaurentPoly(f.nvars());
  // Move both into the polynomial ring. Every variable has a zero exponent
  // somewhere in the shifted divisor, so no variable divides it and
  // divisibility of the shifted polynomials is equivalent to the original.
  const Exponents dmin = d.min_exponents();
  const Exponents fmin = f.min_exponents();
  const LaurentPoly dp = shift(d, dmin, -1);
  LaurentPoly rem = shift(f, fmin, -1);
  const auto& [dlead_exp, dlead_coef] = *dp.terms().rbegin();

  LaurentPoly q(f.nvars());
  Exponents t(dlead_exp.size());
  while (!rem.is_zero()) {
    const auto [lead_exp, lead_coef] = *rem.terms().rbegin();
    for (std::size_t i = 0; i < t.size(); ++i) {
      t[i] = lead_exp[i] - dlead_exp[i];
      // A multiple of dp always has a leading term divisible by dp's.
      if (t[i] < 0) return std::nullopt;
    }
    const Rational c = lead_coef / dlead_coef;
    q.add_term(t, c);
    rem = rem - LaurentPoly::monomial(t, c) * dp;
  }
  Exponents adjust(fmin.size());
  for (std::size_t i = 0; i < adjust.size(); ++i) adjust[i] = fmin[i] - dmin[i];
  return shift(q, adjust, 1);
}

bool binomial_irreducible(long m, long n) {
  if (m == 0 && n == 0) throw Error(ErrorKind::Precondition, "1 - X1^0 X2^0 is zero");
  return std::gcd(m < 0 ? -m : m, n < 0 ? -n : n) == 1;
}

bool substitution_is_injective(long m, long n) {
  if (m < 1 || n < 1) throw Error(ErrorKind::Precondition, "exponents must be positive");
  std::set<long> seen;
  for (long i = 0; i < m; ++i) {
    for (long j = 0; j < n; ++j) {
      if (!seen.insert(m * j - n * i).second) return false;
    }
  }
  return true;
}

std::optional<std::pair<LaurentPoly, LaurentPoly>> binomial_factorization(long m, long n) {
  if (m == 0 && n == 0) throw Error(ErrorKind::Precondition, "1 - X1^0 X2^0 is zero");
  const long d = std::gcd(m < 0 ? -m : m, n < 0 ? -n : n);
  if (d <= 1) return std::nullopt;
  const LaurentPoly g = LaurentPoly::monomial({m / d, n / d});
  LaurentPoly first = LaurentPoly::constant(2, 1) - g;
  LaurentPoly second(2);
  LaurentPoly power = LaurentPoly::constant(2, 1);
  for (long k = 0; k < d; ++k) {
    second = second + power;
    power = power * g;
  }
  return std::make_pair(std::move(first), std::move(second));
}

void check_kp_base(const LaurentPoly& P) {
  if (P.nvars() != 1) throw Error(ErrorKind::Precondition, "P must be a polynomial in one variable");
  if (P.size() < 3) {
    throw Error(ErrorKind::Precondition, "P must be a sum of at least three monomials");
  }
}

std::optional<std::vector<Rational>> in_KP(const LaurentPoly& Q, const LaurentPoly& P) {
  check_kp_base(P);
  if (Q.nvars() != 1) throw Error(ErrorKind::Precondition, "Q must be a polynomial in one variable");
  if (Q.is_zero()) return std::vector<Rational>{0};
  const long lowP = P.min_exponents()[0];
  const long highP = P.max_exponents()[0];
  // The top (or bottom) exponent of P^N is reached only by P^N, so it pins N.
  long N = 0;
  if (highP > 0) {
    N = std::max(0L, Q.max_exponents()[0] / highP);
  } else {
    N = std::max(0L, Q.min_exponents()[0] / lowP);
  }

  std::vector<LaurentPoly> powers;
  powers.push_back(LaurentPoly::constant(1, 1));
  for (long i = 1; i <= N; ++i) powers.push_back(powers.back() * P);

  std::map<long, std::size_t> row_of;
  auto row_index = [&](long e) {
    auto [it, inserted] = row_of.try_emplace(e, row_of.size());
    return it->second;
  };
  for (const auto& [e, c] : Q.terms()) row_index(e[0]);
  for (const auto& p : powers) {
    for (const auto& [e, c] : p.terms()) row_index(e[0]);
  }
  std::vector<SparseRow> rows(row_of.size());
  std::vector<Rational> rhs(row_of.size(), Rational(0));
  for (std::size_t i = 0; i < powers.size(); ++i) {
    for (const auto& [e, c] : powers[i].terms()) rows[row_of[e[0]]].emplace_back(i, c);
  }
  for (const auto& [e, c] : Q.terms()) rhs[row_of[e[0]]] = c;
  auto sol = solve_linear(rows, rhs, powers.size());
  if (!sol) return std::nullopt;
  auto coeffs = std::move(sol->values);
  while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
  return coeffs;
}

namespace {

using UPoly = std::vector<Rational>;  // index = degree

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

UPoly poly_mod(UPoly a, const UPoly& d) {
  trim(a);
  const std::size_t e = d.size() - 1;
  while (a.size() > e) {
    const Rational f = a.back() / d.back();
    const std::size_t off = a.size() - 1 - e;
    for (std::size_t i = 0; i <= e; ++i) a[off + i] -= f * d[i];
    trim(a);
  }
  return a;
}

UPoly poly_mul_mod(const UPoly& a, const UPoly& b, const UPoly& d) {
  if (a.empty() || b.empty()) return {};
  UPoly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return poly_mod(std::move(out), d);
}

UPoly poly_pow_mod(UPoly base, long k, const UPoly& d) {
  UPoly result = poly_mod(UPoly{Rational(1)}, d);
  base = poly_mod(std::move(base), d);
  while (k > 0) {
    if (k & 1) result = poly_mul_mod(result, base, d);
    k >>= 1;
    if (k > 0) base = poly_mul_mod(base, base, d);
  }
  return result;
}

// Dense coefficients of p * X^{-min exponent}.
UPoly to_upoly(const LaurentPoly& p, long& low) {
  low = p.min_exponents()[0];
  UPoly out(static_cast<std::size_t>(p.max_exponents()[0] - low + 1), Rational(0));
  for (const auto& [e, c] : p.terms()) out[static_cast<std::size_t>(e[0] - low)] = c;
  return out;
}

}  // namespace

std::optional<Rational> psi_beta(const LaurentPoly& Q, const LaurentPoly& P, const Rational& alpha) {
  check_kp_base(P);
  if (Q.nvars() != 1) throw Error(ErrorKind::Precondition, "Q must be a polynomial in one variable");
  if (Q.is_zero()) return Rational(0);
  // Work in K[X, X^-1] / (P - alpha) = K[X] / (D), D the shifted P - alpha.
  // D(0) != 0, so X is invertible there and every class has a unique
  // representative of degree < deg D; beta exists iff Q's is constant.
  long dlow = 0;
  const UPoly D = to_upoly(P - LaurentPoly::constant(1, alpha), dlow);
  long qlow = 0;
  const UPoly Q0 = to_upoly(Q, qlow);
  UPoly r = poly_mod(Q0, D);
  if (qlow > 0) {
    r = poly_mul_mod(r, poly_pow_mod(UPoly{Rational(0), Rational(1)}, qlow, D), D);
  } else if (qlow < 0) {
    // X * (D - D(0)) / X = D - D(0) == -D(0), so X^{-1} == -((D - D(0)) / X) / D(0).
    UPoly xinv(D.begin() + 1, D.end());
    for (auto& c : xinv) c = -c / D[0];
    r = poly_mul_mod(r, poly_pow_mod(xinv, -qlow, D), D);
  }
  trim(r);
  if (r.size() > 1) return std::nullopt;
  return r.empty() ? Rational(0) : r[0];
}

PsiResult psi_check(const LaurentPoly& Q, const LaurentPoly& P, const std::vector<Rational>& samples) {
  check_kp_base(P);
  for (const auto& alpha : samples) {
    if (!psi_beta(Q, P, alpha)) return {false, alpha};
  }
  return {true, std::nullopt};
}

std::optional<LineCoordinates> in_K_g(const LaurentPoly& Q, const Exponents& g) {
  if (static_cast<int>(g.size()) != Q.nvars()) {
    throw Error(ErrorKind::RankMismatch, "g has the wrong number of coordinates");
  }
  auto pivot = std::find_if(g.begin(), g.end(), [](long x) { return x != 0; });
  if (pivot == g.end()) throw Error(ErrorKind::Precondition, "g must be a nonzero exponent vector");
  const std::size_t j = static_cast<std::size_t>(pivot - g.begin());
  std::map<long, Rational> coords;
  long window = 0;
  for (const auto& [e, c] : Q.terms()) {
    if (e[j] % g[j] != 0) return std::nullopt;
    const long k = e[j] / g[j];
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (e[i] != k * g[i]) return std::nullopt;
    }
    coords[k] = c;
    window = std::max(window, k < 0 ? -k : k);
  }
  LineCoordinates out;
  out.window = window;
  out.coefficients.assign(static_cast<std::size_t>(2 * window + 1), Rational(0));
  for (const auto& [k, c] : coords) out.coefficients[static_cast<std::size_t>(k + window)] = c;
  return out;
}

bool powers_predicate(const LaurentPoly& x, const LaurentPoly& g) {
  if (!g.is_monomial() || g.is_constant()) {
    throw Error(ErrorKind::Precondition, "g must be a non-constant monomial");
  }
  check_nvars(x, g);
  if (!x.is_monomial() || x.is_constant()) return false;
  const LaurentPoly one = LaurentPoly::constant(x.nvars(), 1);
  return divides_exact(g - one, x - one).has_value();
}

TupleCode tuple_encode(const std::vector<Rational>& alphas, const LaurentPoly& P) {
  check_kp_base(P);
  if (alphas.empty()) throw Error(ErrorKind::Precondition, "tuple must be nonempty");
  LaurentPoly value(1);
  LaurentPoly power = LaurentPoly::constant(1, 1);
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (i > 0) power = power * P;
    value = value + alphas[i] * power;
  }
  return {std::move(value), std::move(power), P};
}

std::vector<Rational> tuple_decode(const TupleCode& code) {
  const LaurentPoly& P = code.base;
  check_kp_base(P);
  if (code.marker.nvars() != 1 || code.marker.is_zero()) {
    throw Error(ErrorKind::MarkerNotPower, "marker is not a power of the base");
  }
  const long spanP = P.max_exponents()[0] - P.min_exponents()[0];
  const long spanM = code.marker.max_exponents()[0] - code.marker.min_exponents()[0];
  if (spanM % spanP != 0 || P.pow(spanM / spanP) != code.marker) {
    throw Error(ErrorKind::MarkerNotPower, "marker is not a power of the base");
  }
  const auto n = static_cast<std::size_t>(spanM / spanP);
  auto coeffs = in_KP(code.value, P);
  if (!coeffs) throw Error(ErrorKind::NotInKP, "value is not a polynomial in the base");
  if (coeffs->size() > n + 1) {
    throw Error(ErrorKind::NotInKP, "value has higher degree in the base than the marker");
  }
  coeffs->resize(n + 1, Rational(0));
  return *coeffs;
}

TupleCode nu_transport(const TupleCode& code, const LaurentPoly& Q) {
  check_kp_base(Q);
  return tuple_encode(tuple_decode(code), Q);
}

std::string to_string(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    const Rational mag = abs(c);
    if (first) {
      if (c < 0) out += '-';
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += 'x' + std::to_string(i + 1);
      if (e[i] != 1) mono += '^' + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += mono;
    } else {
      out += mag.get_str() + '*' + mono;
    }
  }
  return out;
}

}  // namespace freering
