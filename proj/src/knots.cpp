#include "knotvol/knots.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>

namespace knotvol {

KnotSpec KnotSpec::torus(int a, int b) {
  if (a <= 1 || b <= 1) throw DomainError("torus knot needs a > 1 and b > 1");
  if (std::gcd(a, b) != 1) throw DomainError("torus knot needs coprime a and b");
  return {KnotKind::torus, a, b};
}

namespace {

int parse_int(std::string_view text) {
  int value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty())
    throw DomainError("not an integer: '" + std::string(text) + "'");
  return value;
}

}  // namespace

KnotSpec KnotSpec::parse(std::string_view text) {
  if (text == "unknot") return unknot();
  if (text == "fig8") return figure_eight();
  constexpr std::string_view prefix = "torus:";
  if (text.starts_with(prefix)) {
    const auto rest = text.substr(prefix.size());
    const auto comma = rest.find(',');
    if (comma == std::string_view::npos) throw DomainError("torus spec must be torus:A,B");
    return torus(parse_int(rest.substr(0, comma)), parse_int(rest.substr(comma + 1)));
  }
  throw DomainError("unknown knot spec '" + std::string(text) + "' (expected unknot, fig8 or torus:A,B)");
}

std::string KnotSpec::to_string() const {
  switch (kind) {
    case KnotKind::unknot: return "unknot";
    case KnotKind::figure_eight: return "fig8";
    case KnotKind::torus: return "torus:" + std::to_string(a) + "," + std::to_string(b);
  }
  return "?";
}

// ---------------------------------------------------------------------------

UnivariatePolynomial::UnivariatePolynomial(std::map<int, long long> coeffs) {
  for (auto [e, c] : coeffs)
    if (c != 0) coeffs_[e] = c;
}

UnivariatePolynomial UnivariatePolynomial::constant(long long c) { return monomial(c, 0); }

UnivariatePolynomial UnivariatePolynomial::monomial(long long c, int exponent) {
  return UnivariatePolynomial({{exponent, c}});
}

long long UnivariatePolynomial::coefficient(int exponent) const {
  auto it = coeffs_.find(exponent);
  return it == coeffs_.end() ? 0 : it->second;
}

int UnivariatePolynomial::min_exponent() const {
  if (is_zero()) throw DomainError("zero polynomial has no exponents");
  return coeffs_.begin()->first;
}

int UnivariatePolynomial::max_exponent() const {
  if (is_zero()) throw DomainError("zero polynomial has no exponents");
  return coeffs_.rbegin()->first;
}

cplx UnivariatePolynomial::operator()(cplx t) const {
  if (is_zero()) return 0.0;
  // Horner from the top exponent down to the bottom one, then shift.
  cplx acc = 0.0;
  for (int e = max_exponent(); e >= min_exponent(); --e) acc = acc * t + static_cast<double>(coefficient(e));
  return acc * std::pow(t, min_exponent());
}

long long UnivariatePolynomial::operator()(long long t) const {
  if (t != 1 && t != -1) throw DomainError("integer evaluation supports t = +-1 only");
  long long sum = 0;
  for (auto [e, c] : coeffs_) sum += (t == -1 && e % 2 != 0) ? -c : c;
  return sum;
}

UnivariatePolynomial operator+(const UnivariatePolynomial& x, const UnivariatePolynomial& y) {
  auto out = x.coeffs_;
  for (auto [e, c] : y.coeffs_) out[e] += c;
  return UnivariatePolynomial(std::move(out));
}

UnivariatePolynomial operator-(const UnivariatePolynomial& x, const UnivariatePolynomial& y) {
  auto out = x.coeffs_;
  for (auto [e, c] : y.coeffs_) out[e] -= c;
  return UnivariatePolynomial(std::move(out));
}

UnivariatePolynomial operator*(const UnivariatePolynomial& x, const UnivariatePolynomial& y) {
  std::map<int, long long> out;
  for (auto [ex, cx] : x.coeffs_)
    for (auto [ey, cy] : y.coeffs_) out[ex + ey] += cx * cy;
  return UnivariatePolynomial(std::move(out));
}

std::string UnivariatePolynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    auto [e, c] = *it;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    const long long mag = c < 0 ? -c : c;
    if (mag != 1 || e == 0) os << mag;
    if (e != 0) os << "t";
    if (e != 0 && e != 1) os << "^" << e;
    first = false;
  }
  return os.str();
}

PolynomialDivision divide(const UnivariatePolynomial& num, const UnivariatePolynomial& den) {
  if (den.is_zero()) throw DomainError("polynomial division by zero");
  const int dtop = den.max_exponent();
  const long long lead = den.coefficient(dtop);
  if (lead != 1 && lead != -1) throw DomainError("divisor must have leading coefficient +-1");

  UnivariatePolynomial rem = num;
  std::map<int, long long> quot;
  while (!rem.is_zero() && rem.max_exponent() >= dtop) {
    const int shift = rem.max_exponent() - dtop;
    const long long factor = rem.coefficient(rem.max_exponent()) * lead;
    quot[shift] += factor;
    rem = rem - UnivariatePolynomial::monomial(factor, shift) * den;
  }
  return {UnivariatePolynomial(std::move(quot)), rem};
}

UnivariatePolynomial alexander(const KnotSpec& knot) {
  using P = UnivariatePolynomial;
  switch (knot.kind) {
    case KnotKind::unknot: return P::constant(1);
    case KnotKind::figure_eight: return P({{2, -1}, {1, 3}, {0, -1}});
    case KnotKind::torus: {
      const auto t_pow_minus_one = [](int n) { return P({{n, 1}, {0, -1}}); };
      const P num = t_pow_minus_one(knot.a * knot.b) * t_pow_minus_one(1);
      const P den = t_pow_minus_one(knot.a) * t_pow_minus_one(knot.b);
      auto [quotient, remainder] = divide(num, den);
      if (!remainder.is_zero()) throw NumericalError("torus Alexander division left a remainder");
      return quotient;
    }
  }
  throw DomainError("unknown knot kind");
}

cplx alexander_symmetric(const KnotSpec& knot, cplx t) {
  const auto delta = alexander(knot);
  const int span = delta.max_exponent() + delta.min_exponent();
  if (span % 2 != 0) throw DomainError("Alexander polynomial of odd span");
  const double sign = static_cast<double>(delta(1LL));
  return sign * delta(t) * std::pow(t, -span / 2);
}

std::vector<cplx> alexander_roots(const KnotSpec& knot) {
  if (knot.kind == KnotKind::unknot) return {};
  const auto delta = alexander(knot);
  const int lo = delta.min_exponent();
  const int n = delta.max_exponent() - lo;
  if (n == 0) return {};

  const double lead = static_cast<double>(delta.coefficient(lo + n));
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -static_cast<double>(delta.coefficient(lo + i)) / lead;

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  std::vector<cplx> roots;
  for (Eigen::Index i = 0; i < n; ++i) {
    cplx z = solver.eigenvalues()(i);
    for (int iter = 0; iter < 4; ++iter) {
      cplx p = 0.0, dp = 0.0;
      for (int e = lo + n; e >= lo; --e) {
        dp = dp * z + p;
        p = p * z + static_cast<double>(delta.coefficient(e));
      }
      if (dp == cplx(0.0)) break;
      z -= p / dp;
    }
    roots.push_back(z);
  }
  std::sort(roots.begin(), roots.end(), [](cplx x, cplx y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return roots;
}

// ---------------------------------------------------------------------------

BivariatePolynomial::BivariatePolynomial(std::map<Key, long long> terms) {
  for (auto [k, c] : terms) {
    if (k.first < 0 || k.second < 0) throw DomainError("negative exponent in bivariate polynomial");
    if (c != 0) terms_[k] = c;
  }
}

BivariatePolynomial BivariatePolynomial::constant(long long c) { return monomial(c, 0, 0); }

BivariatePolynomial BivariatePolynomial::monomial(long long c, int l_exp, int m_exp) {
  return BivariatePolynomial({{{l_exp, m_exp}, c}});
}

BivariatePolynomial operator+(const BivariatePolynomial& x, const BivariatePolynomial& y) {
  auto out = x.terms_;
  for (auto [k, c] : y.terms_) out[k] += c;
  return BivariatePolynomial(std::move(out));
}

BivariatePolynomial operator-(const BivariatePolynomial& x, const BivariatePolynomial& y) {
  auto out = x.terms_;
  for (auto [k, c] : y.terms_) out[k] -= c;
  return BivariatePolynomial(std::move(out));
}

BivariatePolynomial operator*(const BivariatePolynomial& x, const BivariatePolynomial& y) {
  std::map<BivariatePolynomial::Key, long long> out;
  for (auto [kx, cx] : x.terms_)
    for (auto [ky, cy] : y.terms_) out[{kx.first + ky.first, kx.second + ky.second}] += cx * cy;
  return BivariatePolynomial(std::move(out));
}

std::string BivariatePolynomial::to_text() const {
  std::ostringstream os;
  for (auto [k, c] : terms_) os << c << ' ' << k.first << ' ' << k.second << '\n';
  return os.str();
}

BivariatePolynomial BivariatePolynomial::from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::map<Key, long long> terms;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    long long c = 0;
    int l = 0, m = 0;
    std::string extra;
    if (!(fields >> c >> l >> m) || (fields >> extra))
      throw DomainError("bad polynomial term on line " + std::to_string(line_no));
    terms[{l, m}] += c;
  }
  return BivariatePolynomial(std::move(terms));
}

cplx eval_bivariate(const BivariatePolynomial& p, cplx L, cplx M) {
  if (p.is_zero()) return 0.0;
  int l_max = 0, m_max = 0;
  for (const auto& [k, c] : p.terms()) {
    l_max = std::max(l_max, k.first);
    m_max = std::max(m_max, k.second);
  }
  std::vector<std::vector<double>> dense(l_max + 1, std::vector<double>(m_max + 1, 0.0));
  for (const auto& [k, c] : p.terms()) dense[k.first][k.second] = static_cast<double>(c);

  cplx acc = 0.0;
  for (int l = l_max; l >= 0; --l) {
    cplx row = 0.0;
    for (int m = m_max; m >= 0; --m) row = row * M + dense[l][m];
    acc = acc * L + row;
  }
  return acc;
}

BivariatePolynomial APolynomial::full(std::size_t i) const {
  if (candidates.empty()) return abelian;
  return abelian * candidates.at(i);
}

APolynomial a_polynomial(const KnotSpec& knot) {
  using B = BivariatePolynomial;
  APolynomial out;
  out.abelian = B::monomial(1, 1, 0) - B::constant(1);

  switch (knot.kind) {
    case KnotKind::unknot: break;
    case KnotKind::figure_eight:
      out.candidates.push_back(B({{{2, 4}, 1},
                                  {{1, 8}, -1},
                                  {{1, 6}, 1},
                                  {{1, 4}, 2},
                                  {{1, 2}, 1},
                                  {{1, 0}, -1},
                                  {{0, 4}, 1}}));
      out.candidate_names.push_back("nonabelian");
      break;
    case KnotKind::torus: {
      const int ab = knot.a * knot.b;
      // Irreducible representations send the longitude to eps * M^{-ab}; eps = +1
      // needs both a and b at least 3.
      std::vector<long long> signs = {-1};
      if (knot.a >= 3 && knot.b >= 3) signs.push_back(1);
      B inverse = B::constant(1), direct = B::constant(1);
      for (long long eps : signs) {
        inverse = inverse * (B::monomial(1, 1, ab) - B::constant(eps));
        direct = direct * (B::monomial(1, 1, 0) - B::monomial(eps, 0, ab));
      }
      out.candidates = {inverse, direct};
      out.candidate_names = {"L*M^ab=eps", "L=eps*M^ab"};
      break;
    }
  }
  return out;
}

}  // namespace knotvol
