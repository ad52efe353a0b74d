#include <cmath>

#include "efie/errors.hpp"
#include "efie/polynomial.hpp"

namespace efie {

Poly2::Poly2(int degree) : degree_(degree), c_((degree + 1) * (degree + 2) / 2, 0.0) {}

Poly2 Poly2::constant(double c) {
  Poly2 p(0);
  p.c_[0] = c;
  return p;
}

Poly2 Poly2::u() { return affine(0.0, 1.0, 0.0); }
Poly2 Poly2::v() { return affine(0.0, 0.0, 1.0); }

Poly2 Poly2::affine(double c0, double cu, double cv) {
  Poly2 p(1);
  p.coeff(0, 0) = c0;
  p.coeff(1, 0) = cu;
  p.coeff(0, 1) = cv;
  return p;
}

double Poly2::coeff(int a, int b) const {
  if (a < 0 || b < 0 || a + b > degree_) return 0.0;
  return c_[index(a, b)];
}

double& Poly2::coeff(int a, int b) { return c_[index(a, b)]; }

double Poly2::operator()(const Vec2& x) const {
  double sum = 0.0;
  double ua = 1.0;
  for (int a = 0; a <= degree_; ++a) {
    double term = 0.0, vb = 1.0;
    for (int b = 0; a + b <= degree_; ++b) {
      term += c_[index(a, b)] * vb;
      vb *= x[1];
    }
    sum += term * ua;
    ua *= x[0];
  }
  return sum;
}

Poly2 Poly2::du() const {
  Poly2 d(std::max(degree_ - 1, 0));
  for (int a = 1; a <= degree_; ++a)
    for (int b = 0; a + b <= degree_; ++b) d.coeff(a - 1, b) = a * coeff(a, b);
  return d;
}

Poly2 Poly2::dv() const {
  Poly2 d(std::max(degree_ - 1, 0));
  for (int a = 0; a <= degree_; ++a)
    for (int b = 1; a + b <= degree_; ++b) d.coeff(a, b - 1) = b * coeff(a, b);
  return d;
}

double Poly2::integral() const {
  double s = 0.0;
  for (int a = 0; a <= degree_; ++a)
    for (int b = 0; a + b <= degree_; ++b) s += coeff(a, b) * reference_monomial_integral(a, b);
  return s;
}

Poly2& Poly2::operator+=(const Poly2& other) {
  if (other.degree_ > degree_) {
    Poly2 grown(other.degree_);
    for (int a = 0; a <= degree_; ++a)
      for (int b = 0; a + b <= degree_; ++b) grown.coeff(a, b) = coeff(a, b);
    *this = std::move(grown);
  }
  for (int a = 0; a <= other.degree_; ++a)
    for (int b = 0; a + b <= other.degree_; ++b) coeff(a, b) += other.coeff(a, b);
  return *this;
}

Poly2& Poly2::operator*=(double s) {
  for (double& c : c_) c *= s;
  return *this;
}

Poly2 operator*(const Poly2& x, const Poly2& y) {
  Poly2 r(x.degree_ + y.degree_);
  for (int a = 0; a <= x.degree_; ++a)
    for (int b = 0; a + b <= x.degree_; ++b) {
      const double cx = x.coeff(a, b);
      if (cx == 0.0) continue;
      for (int c = 0; c <= y.degree_; ++c)
        for (int d = 0; c + d <= y.degree_; ++d) r.coeff(a + c, b + d) += cx * y.coeff(c, d);
    }
  return r;
}

double reference_monomial_integral(int a, int b) {
  return std::tgamma(a + 1.0) * std::tgamma(b + 1.0) / std::tgamma(a + b + 3.0);
}

namespace {
double inner(const Poly2& p, const Poly2& q) { return (p * q).integral(); }
}  // namespace

std::vector<Poly2> orthonormal_polynomials(int degree) {
  std::vector<Poly2> basis;
  for (int d = 0; d <= degree; ++d) {
    for (int b = 0; b <= d; ++b) {
      Poly2 m(d);
      m.coeff(d - b, b) = 1.0;
      // Two passes of modified Gram-Schmidt.
      for (int pass = 0; pass < 2; ++pass)
        for (const Poly2& q : basis) m = m - inner(m, q) * q;
      m *= 1.0 / std::sqrt(inner(m, m));
      basis.push_back(std::move(m));
    }
  }
  return basis;
}

Poly2 silvester(int n, int i, const Poly2& x) {
  Poly2 r = Poly2::constant(1.0);
  for (int k = 0; k < i; ++k) r = r * (double(n) * x + Poly2::constant(-double(k)));
  double fact = 1.0;
  for (int k = 2; k <= i; ++k) fact *= k;
  return (1.0 / fact) * r;
}

Poly2 shifted_silvester(int n, int i, const Poly2& x) {
  if (i == 0) return Poly2::constant(1.0);
  return silvester(n, i - 1, x + Poly2::constant(-1.0 / n));
}

Poly2 barycentric(int i) {
  switch (i) {
    case 0:
      return Poly2::affine(1.0, -1.0, -1.0);
    case 1:
      return Poly2::u();
    case 2:
      return Poly2::v();
    default:
      throw BasisError("barycentric index out of range");
  }
}

}  // namespace efie
