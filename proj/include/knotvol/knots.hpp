#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "knotvol/numerics.hpp"

namespace knotvol {

enum class KnotKind { unknot, figure_eight, torus };

struct KnotSpec {
  KnotKind kind = KnotKind::unknot;
  int a = 0;
  int b = 0;

  static KnotSpec unknot() { return {}; }
  static KnotSpec figure_eight() { return {KnotKind::figure_eight, 0, 0}; }
  // Throws DomainError unless a, b > 1 and gcd(a, b) = 1.
  static KnotSpec torus(int a, int b);

  // Grammar: "unknot", "fig8", "torus:A,B".
  static KnotSpec parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const KnotSpec&, const KnotSpec&) = default;
};

// Laurent polynomial with integer coefficients; zero coefficients are never stored.
class UnivariatePolynomial {
 public:
  UnivariatePolynomial() = default;
  explicit UnivariatePolynomial(std::map<int, long long> coeffs);
  static UnivariatePolynomial constant(long long c);
  static UnivariatePolynomial monomial(long long c, int exponent);

  const std::map<int, long long>& coefficients() const { return coeffs_; }
  long long coefficient(int exponent) const;
  bool is_zero() const { return coeffs_.empty(); }
  int min_exponent() const;
  int max_exponent() const;

  cplx operator()(cplx t) const;
  long long operator()(long long t) const;  // only for t = +-1

  friend UnivariatePolynomial operator+(const UnivariatePolynomial& x, const UnivariatePolynomial& y);
  friend UnivariatePolynomial operator-(const UnivariatePolynomial& x, const UnivariatePolynomial& y);
  friend UnivariatePolynomial operator*(const UnivariatePolynomial& x, const UnivariatePolynomial& y);
  friend bool operator==(const UnivariatePolynomial&, const UnivariatePolynomial&) = default;

  std::string to_string() const;

 private:
  std::map<int, long long> coeffs_;
};

struct PolynomialDivision {
  UnivariatePolynomial quotient;
  UnivariatePolynomial remainder;
};

// Long division by a divisor whose leading coefficient is +-1, so the result stays integral.
PolynomialDivision divide(const UnivariatePolynomial& num, const UnivariatePolynomial& den);

UnivariatePolynomial alexander(const KnotSpec& knot);

// t^{-d/2} Delta(t) with Delta normalized so that Delta(1) = 1; symmetric under t -> 1/t.
cplx alexander_symmetric(const KnotSpec& knot, cplx t);

// All complex roots, polished by Newton's method. Empty for the unknot.
std::vector<cplx> alexander_roots(const KnotSpec& knot);

// Integer polynomial in (L, M) with non-negative exponents.
class BivariatePolynomial {
 public:
  using Key = std::pair<int, int>;  // (L exponent, M exponent)

  BivariatePolynomial() = default;
  explicit BivariatePolynomial(std::map<Key, long long> terms);
  static BivariatePolynomial constant(long long c);
  static BivariatePolynomial monomial(long long c, int l_exp, int m_exp);

  const std::map<Key, long long>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  friend BivariatePolynomial operator+(const BivariatePolynomial& x, const BivariatePolynomial& y);
  friend BivariatePolynomial operator-(const BivariatePolynomial& x, const BivariatePolynomial& y);
  friend BivariatePolynomial operator*(const BivariatePolynomial& x, const BivariatePolynomial& y);
  friend bool operator==(const BivariatePolynomial&, const BivariatePolynomial&) = default;

  // One "coeff L_exp M_exp" triple per line.
  std::string to_text() const;
  static BivariatePolynomial from_text(std::string_view text);

 private:
  std::map<Key, long long> terms_;
};

// Horner in L with Horner-in-M coefficients.
cplx eval_bivariate(const BivariatePolynomial& p, cplx L, cplx M);

struct APolynomial {
  BivariatePolynomial abelian;                  // L - 1
  std::vector<BivariatePolynomial> candidates;  // nonabelian factor, one per convention
  std::vector<std::string> candidate_names;

  // abelian * candidates[i], or just the abelian factor when there is no candidate.
  BivariatePolynomial full(std::size_t i = 0) const;
};

APolynomial a_polynomial(const KnotSpec& knot);

}  // namespace knotvol
