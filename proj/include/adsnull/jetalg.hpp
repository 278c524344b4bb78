#pragma once

#include <adsnull/errors.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace adsnull {

using Rational = boost::multiprecision::cpp_rational;

/// Exact element a + b*sqrt(2) of Q(sqrt 2).
struct QSqrt2 {
  Rational a, b;

  QSqrt2() = default;
  QSqrt2(int v) : a(v), b(0) {}
  QSqrt2(Rational x, Rational y = 0) : a(std::move(x)), b(std::move(y)) {}
  static QSqrt2 sqrt2(Rational k = 1) { return {0, std::move(k)}; }

  bool is_zero() const { return a == 0 && b == 0; }
  QSqrt2 operator-() const { return {-a, -b}; }
  QSqrt2& operator+=(const QSqrt2& o) { a += o.a; b += o.b; return *this; }
  QSqrt2& operator-=(const QSqrt2& o) { a -= o.a; b -= o.b; return *this; }
  friend QSqrt2 operator+(QSqrt2 x, const QSqrt2& y) { return x += y; }
  friend QSqrt2 operator-(QSqrt2 x, const QSqrt2& y) { return x -= y; }
  friend QSqrt2 operator*(const QSqrt2& x, const QSqrt2& y) {
    return {x.a * y.a + 2 * x.b * y.b, x.a * y.b + x.b * y.a};
  }
  friend QSqrt2 operator/(const QSqrt2& x, const Rational& k) { return {x.a / k, x.b / k}; }
  friend bool operator==(const QSqrt2& x, const QSqrt2& y) { return x.a == y.a && x.b == y.b; }
  double to_double() const {
    return a.convert_to<double>() + 1.4142135623730950488 * b.convert_to<double>();
  }
};

inline bool is_zero(const Rational& r) { return r == 0; }
inline bool is_zero(const QSqrt2& r) { return r.is_zero(); }
inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(const QSqrt2& r) { return r.to_double(); }

/// Exponent vector: entry i is the power of u_(i); no trailing zeros.
using Monomial = std::vector<unsigned>;

inline unsigned exponent(const Monomial& m, std::size_t i) { return i < m.size() ? m[i] : 0; }

inline void trim(Monomial& m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
}

inline unsigned degree(const Monomial& m) {
  unsigned d = 0;
  for (auto e : m) d += e;
  return d;
}

/// Print order: higher jet variables first, then higher powers; constants last.
struct MonomialOrder {
  bool operator()(const Monomial& x, const Monomial& y) const {
    std::size_t n = std::max(x.size(), y.size());
    for (std::size_t i = n; i-- > 0;) {
      unsigned ex = exponent(x, i), ey = exponent(y, i);
      if (ex != ey) return ex > ey;
    }
    return false;
  }
};

inline Monomial operator*(const Monomial& x, const Monomial& y) {
  Monomial r(std::max(x.size(), y.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = exponent(x, i) + exponent(y, i);
  return r;
}

/// Polynomial in the jet variables u, u_(1), u_(2), ... with coefficients in C.
template <class C>
class BasicJetPoly {
public:
  using Terms = std::map<Monomial, C, MonomialOrder>;

  BasicJetPoly() = default;
  BasicJetPoly(int c) { add(Monomial{}, C(c)); }
  BasicJetPoly(const C& c) { add(Monomial{}, c); }

  /// The jet variable u_(i).
  static BasicJetPoly var(std::size_t i, unsigned power = 1) {
    Monomial m(i + 1, 0);
    m[i] = power;
    BasicJetPoly p;
    if (power == 0) m.clear();
    p.add(m, C(1));
    return p;
  }
  static BasicJetPoly term(const C& c, Monomial m) {
    BasicJetPoly p;
    trim(m);
    p.add(m, c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Highest jet index present; -1 for constants.
  int order() const {
    int o = -1;
    for (const auto& [m, c] : terms_) o = std::max(o, static_cast<int>(m.size()) - 1);
    return o;
  }

  void add(const Monomial& m, const C& c) {
    if (adsnull::is_zero(c)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
      return;
    }
    it->second += c;
    if (adsnull::is_zero(it->second)) terms_.erase(it);
  }

  BasicJetPoly& operator+=(const BasicJetPoly& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  BasicJetPoly& operator-=(const BasicJetPoly& o) {
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  BasicJetPoly operator-() const {
    BasicJetPoly r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }
  friend BasicJetPoly operator+(BasicJetPoly x, const BasicJetPoly& y) { return x += y; }
  friend BasicJetPoly operator-(BasicJetPoly x, const BasicJetPoly& y) { return x -= y; }
  friend BasicJetPoly operator*(const BasicJetPoly& x, const BasicJetPoly& y) {
    BasicJetPoly r;
    for (const auto& [mx, cx] : x.terms_)
      for (const auto& [my, cy] : y.terms_) r.add(mx * my, cx * cy);
    return r;
  }
  friend BasicJetPoly operator*(const C& k, const BasicJetPoly& x) {
    BasicJetPoly r;
    for (const auto& [m, c] : x.terms_) r.add(m, k * c);
    return r;
  }
  friend bool operator==(const BasicJetPoly& x, const BasicJetPoly& y) {
    return x.terms_ == y.terms_;
  }

private:
  Terms terms_;
};

using JetPoly = BasicJetPoly<Rational>;
using SurdJetPoly = BasicJetPoly<QSqrt2>;

inline JetPoly u(std::size_t i = 0) { return JetPoly::var(i); }

/// Lift a rational polynomial to Q(sqrt 2) coefficients, optionally scaled.
inline SurdJetPoly lift(const JetPoly& p, const QSqrt2& k = QSqrt2(1)) {
  SurdJetPoly r;
  for (const auto& [m, c] : p.terms()) r.add(m, k * QSqrt2(c));
  return r;
}

template <class C>
BasicJetPoly<C> partial(const BasicJetPoly<C>& p, std::size_t i) {
  BasicJetPoly<C> r;
  for (const auto& [m, c] : p.terms()) {
    unsigned e = exponent(m, i);
    if (e == 0) continue;
    Monomial n = m;
    n[i] -= 1;
    trim(n);
    r.add(n, C(static_cast<int>(e)) * c);
  }
  return r;
}

/// Total derivative D = sum_i u_(i+1) d/du_(i).
template <class C>
BasicJetPoly<C> total_derivative(const BasicJetPoly<C>& p) {
  BasicJetPoly<C> r;
  for (const auto& [m, c] : p.terms()) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      unsigned e = m[i];
      if (e == 0) continue;
      Monomial n = m;
      n[i] -= 1;
      if (n.size() < i + 2) n.resize(i + 2, 0);
      n[i + 1] += 1;
      trim(n);
      r.add(n, C(static_cast<int>(e)) * c);
    }
  }
  return r;
}

template <class C>
BasicJetPoly<C> total_derivative(const BasicJetPoly<C>& p, int times) {
  BasicJetPoly<C> r = p;
  for (int k = 0; k < times; ++k) r = total_derivative(r);
  return r;
}

/// Variational derivative E(p) = sum_i (-1)^i D^i(dp/du_(i)).
template <class C>
BasicJetPoly<C> euler(const BasicJetPoly<C>& p) {
  BasicJetPoly<C> r;
  for (int i = 0; i <= p.order(); ++i) {
    auto t = total_derivative(partial(p, i), i);
    if (i % 2) r -= t;
    else r += t;
  }
  return r;
}

/// D^3 p - 4 u D p - 2 u_(1) p.
inline JetPoly script_D(const JetPoly& p) {
  JetPoly dp = total_derivative(p);
  return total_derivative(dp, 2) - JetPoly(4) * u() * dp - JetPoly(2) * u(1) * p;
}

/// D^{-1}(p) normalized to vanish at the zero jet, by leading-jet-variable
/// reduction; certified by applying D.
inline JetPoly primitive(const JetPoly& p) {
  if (!euler(p).is_zero()) throw NotATotalDivergence("E(p) != 0");
  JetPoly q, r = p;
  while (!r.is_zero()) {
    int k = r.order();
    if (k <= 0) throw NotATotalDivergence("order-zero remainder");
    JetPoly A;
    for (const auto& [m, c] : r.terms()) {
      unsigned e = exponent(m, k);
      if (e >= 2) throw NotATotalDivergence("nonlinear in the top jet variable");
      if (e == 1) {
        Monomial n = m;
        n[k] = 0;
        trim(n);
        A.add(n, c);
      }
    }
    JetPoly Q1;
    for (const auto& [m, c] : A.terms()) {
      Monomial n = m;
      if (n.size() < static_cast<std::size_t>(k)) n.resize(k, 0);
      unsigned e = n[k - 1];
      n[k - 1] += 1;
      Q1.add(n, c / Rational(e + 1));
    }
    q += Q1;
    r -= total_derivative(Q1);
  }
  if (!(total_derivative(q) == p)) throw NotATotalDivergence("primitive failed certification");
  return q;
}

namespace detail {
template <class T>
struct Memo {
  std::mutex lock;
  std::vector<T> items;
};
}  // namespace detail

/// Lenard sequence p_0 = 1, p_1 = u, p_n = D^{-1}(script_D(p_{n-1})).
inline JetPoly lenard_p(int n) {
  if (n < 0) throw DomainError("lenard_p needs n >= 0");
  static detail::Memo<JetPoly> memo;
  std::lock_guard<std::mutex> g(memo.lock);
  if (memo.items.empty()) memo.items = {JetPoly(1), u()};
  while (static_cast<int>(memo.items.size()) <= n)
    memo.items.push_back(primitive(script_D(memo.items.back())));
  return memo.items[n];
}

/// Spatial part of the n-th KdV equation, D(p_{n+1}).
inline JetPoly kdv_rhs(int n) { return total_derivative(lenard_p(n + 1)); }

/// h_n = int_0^1 p_n(eps u) u d eps.
inline JetPoly hamiltonian_density(int n) {
  if (n < 1) throw DomainError("hamiltonian_density needs n >= 1");
  JetPoly r, pn = lenard_p(n);
  for (const auto& [m, c] : pn.terms()) {
    Monomial mm = m * Monomial{1};
    r.add(mm, c / Rational(degree(m) + 1));
  }
  return r;
}

struct LienCoefficients {
  JetPoly r, q, a, b;
};

/// r_n, q_n and a_n = r_n + q_n, b_n = r_n - q_n.
inline LienCoefficients lien_coefficients(int n) {
  if (n < 0) throw DomainError("lien_coefficients needs n >= 0");
  static detail::Memo<LienCoefficients> memo;
  std::lock_guard<std::mutex> g(memo.lock);
  if (memo.items.empty()) {
    memo.items.push_back({JetPoly(2), JetPoly(2), JetPoly(4), JetPoly()});
    JetPoly r1 = JetPoly(2) * u() - JetPoly(4), q1 = JetPoly(2) * u() + JetPoly(4);
    memo.items.push_back({r1, q1, r1 + q1, r1 - q1});
  }
  while (static_cast<int>(memo.items.size()) <= n) {
    int k = static_cast<int>(memo.items.size());
    JetPoly pk = JetPoly(2) * lenard_p(k);
    const auto& prev = memo.items.back();
    JetPoly r = pk + JetPoly(4) * prev.r, q = pk - JetPoly(4) * prev.q;
    memo.items.push_back({r, q, r + q, r - q});
  }
  return memo.items[n];
}

/// Coefficients (c_T, c_N, c_B) of the n-th LIEN flow d_t gamma = c_T T + c_N N + c_B B.
struct LienFlow {
  SurdJetPoly T, N, B;
};

inline LienFlow lien_flow(int n) {
  auto c = lien_coefficients(n);
  QSqrt2 inv_sqrt2(0, Rational(1, 2));
  return {lift(c.a + u() * c.b - JetPoly(Rational(1, 2)) * total_derivative(c.b, 2), inv_sqrt2),
          lift(JetPoly(Rational(1, 2)) * total_derivative(c.b)), lift(c.b, inv_sqrt2)};
}

template <class C>
struct MatrixJetPoly {
  std::size_t rows = 0, cols = 0;
  std::vector<BasicJetPoly<C>> entries;

  MatrixJetPoly() = default;
  MatrixJetPoly(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}

  BasicJetPoly<C>& operator()(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  const BasicJetPoly<C>& operator()(std::size_t i, std::size_t j) const {
    return entries[i * cols + j];
  }
  bool is_zero() const {
    return std::all_of(entries.begin(), entries.end(), [](const auto& p) { return p.is_zero(); });
  }
  friend MatrixJetPoly operator*(const MatrixJetPoly& x, const MatrixJetPoly& y) {
    MatrixJetPoly r(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
      for (std::size_t j = 0; j < y.cols; ++j)
        for (std::size_t k = 0; k < x.cols; ++k) r(i, j) += x(i, k) * y(k, j);
    return r;
  }
  friend MatrixJetPoly operator-(const MatrixJetPoly& x, const MatrixJetPoly& y) {
    MatrixJetPoly r = x;
    for (std::size_t i = 0; i < r.entries.size(); ++i) r.entries[i] -= y.entries[i];
    return r;
  }
  friend MatrixJetPoly operator+(const MatrixJetPoly& x, const MatrixJetPoly& y) {
    MatrixJetPoly r = x;
    for (std::size_t i = 0; i < r.entries.size(); ++i) r.entries[i] += y.entries[i];
    return r;
  }
};

template <class C>
MatrixJetPoly<C> total_derivative(const MatrixJetPoly<C>& x) {
  MatrixJetPoly<C> r = x;
  for (auto& e : r.entries) e = total_derivative(e);
  return r;
}

template <class C>
MatrixJetPoly<C> commutator(const MatrixJetPoly<C>& x, const MatrixJetPoly<C>& y) {
  return x * y - y * x;
}

/// Cartan Gram matrix g of R^{2,2} in the basis P1..P4.
inline MatrixJetPoly<QSqrt2> cartan_gram() {
  MatrixJetPoly<QSqrt2> g(4, 4);
  g(0, 0) = SurdJetPoly(-1);
  g(1, 3) = SurdJetPoly(1);
  g(2, 2) = SurdJetPoly(1);
  g(3, 1) = SurdJetPoly(1);
  return g;
}

/// X^t g + g X, zero for g-valued matrices.
inline MatrixJetPoly<QSqrt2> algebra_defect(const MatrixJetPoly<QSqrt2>& X) {
  MatrixJetPoly<QSqrt2> Xt(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) Xt(i, j) = X(j, i);
  auto g = cartan_gram();
  return Xt * g + g * X;
}

struct LienMatrices {
  MatrixJetPoly<QSqrt2> K, P;
};

/// The g-valued matrices of the n-th LIEN flow.  Signs of x^3_2 and x^2_3 and
/// the (4,4) entry are the ones for which the zero-curvature identity holds.
inline LienMatrices lien_matrix_polys(int n) {
  auto c = lien_coefficients(n);
  const QSqrt2 s2 = QSqrt2::sqrt2(), is2(0, Rational(1, 2));
  const JetPoly half(Rational(1, 2));
  SurdJetPoly x21 = lift(c.a + u() * c.b - half * total_derivative(c.b, 2), is2);
  SurdJetPoly x31 = lift(half * total_derivative(c.b));
  SurdJetPoly x41 = lift(c.b, is2);
  SurdJetPoly x22 = lift(-(half * total_derivative(c.a)));
  SurdJetPoly x32 = lift(c.a, is2);
  SurdJetPoly x23 = lift(c.b + u() * c.a - half * total_derivative(c.a, 2), is2);

  LienMatrices m{MatrixJetPoly<QSqrt2>(4, 4), MatrixJetPoly<QSqrt2>(4, 4)};
  auto& K = m.K;
  K(0, 3) = SurdJetPoly(s2);
  K(1, 0) = SurdJetPoly(s2);
  K(1, 2) = lift(u(), s2);
  K(2, 1) = SurdJetPoly(s2);
  K(2, 3) = lift(u(), -s2);
  K(3, 2) = SurdJetPoly(-s2);

  auto& P = m.P;
  P(0, 1) = x41;
  P(0, 2) = x31;
  P(0, 3) = x21;
  P(1, 0) = x21;
  P(1, 1) = x22;
  P(1, 2) = x23;
  P(2, 0) = x31;
  P(2, 1) = x32;
  P(2, 3) = -x23;
  P(3, 0) = x41;
  P(3, 2) = -x32;
  P(3, 3) = -x22;
  return m;
}

/// d_t K - D P_n - [K, P_n] with d_t u = -kdv_rhs(n).
inline MatrixJetPoly<QSqrt2> zero_curvature_check(int n, int max_n = 3) {
  if (n < 0 || n > max_n) throw DomainError("zero_curvature_check: n outside configured range");
  auto m = lien_matrix_polys(n);
  MatrixJetPoly<QSqrt2> Kt(4, 4);
  JetPoly ut = -kdv_rhs(n);
  const QSqrt2 s2 = QSqrt2::sqrt2();
  Kt(1, 2) = lift(ut, s2);
  Kt(2, 3) = lift(ut, -s2);
  return Kt - total_derivative(m.P) - commutator(m.K, m.P);
}

struct LaxPair {
  MatrixJetPoly<Rational> K, P;
};

/// K = [[0, u + l], [1, 0]], P = [[-u1, -u2 + 2u^2 - 2 l u - 4 l^2], [2u - 4 l, u1]].
inline LaxPair lax_pair_2x2(const Rational& lambda) {
  LaxPair lp{MatrixJetPoly<Rational>(2, 2), MatrixJetPoly<Rational>(2, 2)};
  JetPoly l(lambda);
  lp.K(0, 1) = u() + l;
  lp.K(1, 0) = JetPoly(1);
  lp.P(0, 0) = -u(1);
  lp.P(0, 1) = -u(2) + JetPoly(2) * u() * u() - JetPoly(2) * l * u() - JetPoly(4) * l * l;
  lp.P(1, 0) = JetPoly(2) * u() - JetPoly(4) * l;
  lp.P(1, 1) = u(1);
  return lp;
}

/// Zero-curvature defect of the Lax pair without the d_t K term: the matrix
/// -(D P + [K, P]); adding [[0, u_t], [0, 0]] gives the full defect.
inline MatrixJetPoly<Rational> lax_defect_spatial(const Rational& lambda) {
  auto lp = lax_pair_2x2(lambda);
  MatrixJetPoly<Rational> z(2, 2);
  return z - (total_derivative(lp.P) + commutator(lp.K, lp.P));
}

/// Numeric value of p at jet = (u, u1, u2, ...).
template <class C>
double evaluate(const BasicJetPoly<C>& p, const std::vector<double>& jet) {
  if (static_cast<int>(jet.size()) < p.order() + 1)
    throw InsufficientJet("jet shorter than order + 1");
  double total = 0;
  for (const auto& [m, c] : p.terms()) {
    double t = to_double(c);
    for (std::size_t i = 0; i < m.size(); ++i)
      for (unsigned e = 0; e < m[i]; ++e) t *= jet[i];
    total += t;
  }
  return total;
}

// ------------------------------------------------------------------- printing

inline std::string rational_string(const Rational& r) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(r);
  if (boost::multiprecision::denominator(r) != 1) os << '/' << boost::multiprecision::denominator(r);
  return os.str();
}

inline std::string monomial_string(const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += i == 0 ? "u" : "u" + std::to_string(i);
    if (m[i] > 1) s += '^' + std::to_string(m[i]);
  }
  return s;
}

/// Stable text form, e.g. "u2 - 3*u^2".
inline std::string to_string(const JetPoly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    bool neg = c < 0;
    Rational a = neg ? Rational(-c) : c;
    if (first) s += neg ? "-" : "";
    else s += neg ? " - " : " + ";
    std::string mono = monomial_string(m);
    if (mono.empty()) s += rational_string(a);
    else if (a == 1) s += mono;
    else s += rational_string(a) + "*" + mono;
    first = false;
  }
  return s;
}

inline std::string to_string(const QSqrt2& q) {
  if (q.b == 0) return rational_string(q.a);
  std::string r = q.b == 1 ? "sqrt2" : q.b == -1 ? "-sqrt2" : rational_string(q.b) + "*sqrt2";
  if (q.a == 0) return r;
  return "(" + rational_string(q.a) + " + " + r + ")";
}

inline std::string to_string(const SurdJetPoly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (const auto& [m, c] : p.terms()) {
    bool pure = c.a == 0 || c.b == 0;
    bool neg = pure && (c.a < 0 || c.b < 0);
    QSqrt2 mag = neg ? -c : c;
    std::string mono = monomial_string(m);
    std::string coef = to_string(mag);
    std::string t = mono.empty() ? coef : (coef == "1" ? mono : coef + "*" + mono);
    if (s.empty()) s = neg ? "-" + t : t;
    else s += (neg ? " - " : " + ") + t;
  }
  return s;
}

inline std::ostream& operator<<(std::ostream& os, const JetPoly& p) { return os << to_string(p); }

}  // namespace adsnull
